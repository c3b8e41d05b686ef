//! The 126 Leech roots cutting out the faces of the restricted chamber D'.
//!
//! A face root is a Leech root that spans a rank-7 root lattice together
//! with the A6 chain; the possible types are A6+A1, A7, D7 and E7 with
//! counts 28, 14, 28, 56. Each family has a closed combinatorial form over
//! octads and points, enumerated here and re-validated one candidate at a
//! time: Leech membership, the rank-7 Gram shape, and the attachment node.
//!
//! The projection `r'` of a face root to the dual of S_X has a type-constant
//! norm (-2, -8/7, -4/7, -2/7) and w'-pairing (1, 4, 6, 7); `7 r'` is an
//! integral class of S_X and serves as the exact face key everywhere.

use std::collections::HashMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Signed;

use crate::golay::{GolayCode, Point, PointSet};
use crate::leech::{k0_points, nu, LeechVector};
use crate::lorentzian::{ii_inner, LeechRoot};
use crate::ns_embed::{NsLattice, NS_RANK};
use crate::{inconsistent, Result};

/// Face types, ordered as in the classification table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceType {
    A6A1,
    A7,
    D7,
    E7,
}

impl FaceType {
    pub const ALL: [FaceType; 4] = [FaceType::A6A1, FaceType::A7, FaceType::D7, FaceType::E7];

    pub fn name(self) -> &'static str {
        match self {
            FaceType::A6A1 => "A6A1",
            FaceType::A7 => "A7",
            FaceType::D7 => "D7",
            FaceType::E7 => "E7",
        }
    }

    pub fn parse(s: &str) -> Option<FaceType> {
        match s {
            "A6A1" => Some(FaceType::A6A1),
            "A7" => Some(FaceType::A7),
            "D7" => Some(FaceType::D7),
            "E7" => Some(FaceType::E7),
            _ => None,
        }
    }

    /// Expected `(<r', r'>, <w', r'>)` for the type.
    pub fn projection_profile(self) -> (BigRational, BigInt) {
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        match self {
            FaceType::A6A1 => (rat(-2, 1), BigInt::from(1)),
            FaceType::A7 => (rat(-8, 7), BigInt::from(4)),
            FaceType::D7 => (rat(-4, 7), BigInt::from(6)),
            FaceType::E7 => (rat(-2, 7), BigInt::from(7)),
        }
    }

    /// Expected profile size (curves met with multiplicity 1); `None` for
    /// the curve type itself.
    pub fn profile_size(self) -> Option<usize> {
        match self {
            FaceType::A6A1 => None,
            FaceType::A7 => Some(4),
            FaceType::D7 => Some(6),
            FaceType::E7 => Some(7),
        }
    }

    /// Height decrease per unit of scaled pairing: `2 <w',r'> / -<r',r'>`
    /// divided by 7 (the scaling of `s = 7 <v, r'>`).
    pub fn descent_factor(self) -> i64 {
        match self {
            FaceType::A6A1 => 1,
            FaceType::A7 => 1,
            FaceType::D7 => 3,
            FaceType::E7 => 7,
        }
    }
}

impl fmt::Display for FaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Stable identifier of a face: type plus 1-based index within the type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceId {
    pub rtype: FaceType,
    pub index: usize,
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.rtype, self.index)
    }
}

impl FaceId {
    pub fn parse(s: &str) -> Option<FaceId> {
        let (t, i) = s.rsplit_once('-')?;
        let rtype = FaceType::parse(t)?;
        let index: usize = i.parse().ok()?;
        (index >= 1).then_some(FaceId { rtype, index })
    }
}

/// A classified face root of D'.
#[derive(Debug, Clone)]
pub struct FaceRoot {
    pub id: FaceId,
    pub root: LeechRoot,
    pub rtype: FaceType,
    /// Chain index (0..6 for y,z,x,p,q,t) of the unique chain node the root
    /// pairs 1 with; `None` for the orthogonal A6+A1 family.
    pub attach: Option<usize>,
    /// Projection to the rational span of S_X, in basis coordinates.
    pub projection: Vec<BigRational>,
    /// `7 * projection`: an integral class of S_X.
    pub proj7: Vec<BigInt>,
    /// Gram times `proj7`; `dot(v, gproj) = 7 <v, r'>` for integral `v`.
    pub gproj: Vec<BigInt>,
    /// 0-based curve indices met with pairing 1.
    pub profile: Vec<usize>,
}

impl FaceRoot {
    /// `7 <v, r'>` for an integral basis-coordinate vector.
    pub fn scaled_pairing(&self, v: &[BigInt]) -> BigInt {
        self.gproj.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

/// Shape of the rank-7 diagram spanned by the chain plus one candidate.
fn classify_extended_gram(
    chain_pairings: &[i64; 6],
    norm: i64,
) -> Option<(FaceType, Option<usize>)> {
    if norm != -2 || chain_pairings.iter().any(|&p| p != 0 && p != 1) {
        return None;
    }
    let attached: Vec<usize> = (0..6).filter(|&i| chain_pairings[i] == 1).collect();
    match attached.as_slice() {
        [] => Some((FaceType::A6A1, None)),
        // Chain order y-z-x-p-q-t: ends give A7, next-to-ends D7, middle E7.
        [0] | [5] => Some((FaceType::A7, Some(attached[0]))),
        [1] | [4] => Some((FaceType::D7, Some(attached[0]))),
        [2] | [3] => Some((FaceType::E7, Some(attached[0]))),
        _ => None,
    }
}

/// The face list: A6+A1 block first (aligned with curve numbering), then
/// A7, D7, E7 in deterministic order.
#[derive(Debug, Clone)]
pub struct FaceSet {
    faces: Vec<FaceRoot>,
    type_start: [usize; 4],
    by_proj7: HashMap<Vec<BigInt>, usize>,
}

fn point(i: u8) -> Point {
    Point::from_field(i).expect("field element")
}

/// Candidate lambda families for the non-curve faces, as raw coordinate
/// tuples. Each entry is (expected type, expected attach index, lambda).
fn candidate_lambdas(code: &GolayCode) -> Vec<(FaceType, usize, [i64; 24])> {
    let k0 = k0_points();
    let inf = Point::INFINITY;
    let zero = point(0);
    let one = point(1);
    let omega = nu(PointSet::OMEGA);
    let mut out = Vec::new();

    for oct in code.octads() {
        let pts = oct.points();
        let meet = pts.intersection(k0).len();
        let doubled = {
            let mut xi = [0i64; 24];
            for p in pts.sorted_points() {
                xi[p.rank()] = 2;
            }
            xi
        };
        // A7 at t: doubled octad, inf,0,1 in K, |K n K0| = 4.
        if pts.contains(inf) && pts.contains(zero) && pts.contains(one) && meet == 4 {
            out.push((FaceType::A7, 5, doubled));
        }
        // E7 at p: doubled octad, inf,0 in K, 1 not in K, |K n K0| = 2.
        if pts.contains(inf) && pts.contains(zero) && !pts.contains(one) && meet == 2 {
            out.push((FaceType::E7, 3, doubled));
        }
        // A7 at y: nu_Omega - 2 nu_K + 4 nu_inf, inf,1 in K, 0 not in K,
        // K n K0 empty.
        if pts.contains(inf) && pts.contains(one) && !pts.contains(zero) && meet == 0 {
            let mut xi = omega;
            for p in pts.sorted_points() {
                xi[p.rank()] -= 2;
            }
            xi[inf.rank()] += 4;
            out.push((FaceType::A7, 0, xi));
        }
        // E7 at x: nu_Omega - 2 nu_K + 4 nu_0, 0,1 in K, inf not in K,
        // |K n K0| = 2.
        if pts.contains(zero) && pts.contains(one) && !pts.contains(inf) && meet == 2 {
            let mut xi = omega;
            for p in pts.sorted_points() {
                xi[p.rank()] -= 2;
            }
            xi[zero.rank()] += 4;
            out.push((FaceType::E7, 2, xi));
        }
        // D7 at z: nu_Omega - 2 nu_K + 4 nu_inf + 4 nu_0 + 4 nu_k2 with
        // inf,0,1,k2 in K and K n K0 = {0, k2}.
        if pts.contains(inf) && pts.contains(zero) && pts.contains(one) {
            let overlap = pts.intersection(k0);
            if overlap.len() == 2 && overlap.contains(zero) {
                let k2 = overlap
                    .sorted_points()
                    .into_iter()
                    .find(|&p| p != zero)
                    .expect("two-point overlap");
                let mut xi = omega;
                for p in pts.sorted_points() {
                    xi[p.rank()] -= 2;
                }
                xi[inf.rank()] += 4;
                xi[zero.rank()] += 4;
                xi[k2.rank()] += 4;
                out.push((FaceType::D7, 1, xi));
            }
        }
    }
    // D7 at q: nu_Omega - 4 nu_k for k outside K0 u {inf, 1}. The point 0
    // is excluded through K0.
    for rank in 0..24 {
        let p = Point::from_rank(rank);
        if p == inf || p == one || k0.contains(p) {
            continue;
        }
        let mut xi = omega;
        xi[rank] -= 4;
        out.push((FaceType::D7, 4, xi));
    }
    out
}

/// (lambda tuple, validated root, attachment) collected per type.
type Candidates = Vec<(Vec<i64>, LeechRoot, Option<usize>)>;

impl FaceSet {
    pub fn enumerate(code: &GolayCode, ns: &NsLattice) -> Result<FaceSet> {
        // Curve faces first, aligned with vertex numbering.
        let mut grouped: [Candidates; 4] = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
        for root in ns.curve_roots() {
            grouped[0].push((root.lambda().coords().to_vec(), *root, None));
        }

        for (expected_type, expected_attach, xi) in candidate_lambdas(code) {
            let lambda = LeechVector::new(code, xi).map_err(|_| {
                crate::Error::Inconsistency(format!(
                    "candidate lambda for {expected_type} fails Leech membership"
                ))
            })?;
            let root = LeechRoot::from_lambda(lambda);
            let mut pairings = [0i64; 6];
            for (k, c) in ns.chain().roots().iter().enumerate() {
                pairings[k] = ii_inner(root.vector(), c.vector());
            }
            let Some((rtype, attach)) =
                classify_extended_gram(&pairings, root.vector().norm())
            else {
                return inconsistent(format!(
                    "candidate for {expected_type} has chain pairings {pairings:?}"
                ));
            };
            if rtype != expected_type || attach != Some(expected_attach) {
                return inconsistent(format!(
                    "candidate family mismatch: expected {expected_type} at node \
                     {expected_attach}, classified as {rtype} at {attach:?}"
                ));
            }
            let slot = match rtype {
                FaceType::A6A1 => 0,
                FaceType::A7 => 1,
                FaceType::D7 => 2,
                FaceType::E7 => 3,
            };
            grouped[slot].push((xi.to_vec(), root, attach));
        }

        // Deterministic order within each non-curve type: by lambda tuple.
        for block in grouped.iter_mut().skip(1) {
            block.sort_by(|a, b| a.0.cmp(&b.0));
        }

        let expected_counts = [28usize, 14, 28, 56];
        for (block, (&expected, ty)) in grouped
            .iter()
            .zip(expected_counts.iter().zip(FaceType::ALL))
        {
            if block.len() != expected {
                return inconsistent(format!(
                    "{ty} family has {} members, expected {expected}",
                    block.len()
                ));
            }
        }
        // Sub-case counts: 7+7 for A7, 14+14 for D7, 28+28 for E7.
        for (slot, (ty, subcases)) in [
            (1usize, (FaceType::A7, [(0usize, 7usize), (5, 7)])),
            (2, (FaceType::D7, [(1, 14), (4, 14)])),
            (3, (FaceType::E7, [(2, 28), (3, 28)])),
        ] {
            for (node, expected) in subcases {
                let n = grouped[slot]
                    .iter()
                    .filter(|(_, _, a)| *a == Some(node))
                    .count();
                if n != expected {
                    return inconsistent(format!(
                        "{ty} sub-family at chain node {node} has {n} members, expected {expected}"
                    ));
                }
            }
        }

        let mut faces = Vec::with_capacity(126);
        let mut type_start = [0usize; 4];
        let mut by_proj7 = HashMap::new();
        for (slot, rtype) in FaceType::ALL.iter().enumerate() {
            type_start[slot] = faces.len();
            for (index_in_type, (_, root, attach)) in grouped[slot].iter().enumerate() {
                let projection = ns.project(root.vector());
                let seven = BigRational::from_integer(BigInt::from(7));
                let proj7: Vec<BigInt> = projection
                    .iter()
                    .map(|x| {
                        let scaled = x * &seven;
                        assert!(scaled.is_integer(), "7 r' must be integral");
                        scaled.to_integer()
                    })
                    .collect();
                let gproj = ns.gram().matrix().mul_vec(&proj7);

                let (expected_norm, expected_pairing) = rtype.projection_profile();
                let norm = ns.inner_rat(&projection, &projection);
                if norm != expected_norm {
                    return inconsistent(format!(
                        "{rtype} projection norm {norm}, expected {expected_norm}"
                    ));
                }
                let w_pairing: BigInt = gproj
                    .iter()
                    .zip(ns.w_prime())
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>();
                if w_pairing != BigInt::from(7) * &expected_pairing {
                    return inconsistent(format!(
                        "{rtype} w'-pairing {w_pairing}/7, expected {expected_pairing}"
                    ));
                }

                // Profile: curves met with pairing 1; all pairings must be
                // 0 or 1 except the self-pairing of a curve face.
                let mut profile = Vec::new();
                for (ci, c) in ns.curve_roots().iter().enumerate() {
                    let pairing = ii_inner(root.vector(), c.vector());
                    match pairing {
                        0 => {}
                        1 => profile.push(ci),
                        -2 if *rtype == FaceType::A6A1 && c == root => {}
                        _ => {
                            return inconsistent(format!(
                                "face root pairs {pairing} with curve {}",
                                ci + 1
                            ))
                        }
                    }
                }
                if let Some(size) = rtype.profile_size() {
                    if profile.len() != size {
                        return inconsistent(format!(
                            "{rtype} profile has {} curves, expected {size}",
                            profile.len()
                        ));
                    }
                }

                let id = FaceId {
                    rtype: *rtype,
                    index: index_in_type + 1,
                };
                let face_index = faces.len();
                if by_proj7.insert(proj7.clone(), face_index).is_some() {
                    return inconsistent(format!(
                        "face {id} shares its projection with an earlier face"
                    ));
                }
                faces.push(FaceRoot {
                    id,
                    root: *root,
                    rtype: *rtype,
                    attach: *attach,
                    projection,
                    proj7,
                    gproj,
                    profile,
                });
            }
        }

        Ok(FaceSet {
            faces,
            type_start,
            by_proj7,
        })
    }

    pub fn faces(&self) -> &[FaceRoot] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn get(&self, id: FaceId) -> Option<&FaceRoot> {
        self.index_of(id).map(|i| &self.faces[i])
    }

    pub fn index_of(&self, id: FaceId) -> Option<usize> {
        let slot = FaceType::ALL.iter().position(|t| *t == id.rtype)?;
        let start = self.type_start[slot];
        let len = self.of_type(id.rtype).len();
        (id.index >= 1 && id.index <= len).then(|| start + id.index - 1)
    }

    pub fn of_type(&self, t: FaceType) -> &[FaceRoot] {
        let slot = FaceType::ALL.iter().position(|x| *x == t).expect("known type");
        let start = self.type_start[slot];
        let end = if slot + 1 < 4 {
            self.type_start[slot + 1]
        } else {
            self.faces.len()
        };
        &self.faces[start..end]
    }

    /// Face index with the given integral projection key `7 r'`.
    pub fn face_by_proj7(&self, key: &[BigInt]) -> Option<usize> {
        self.by_proj7.get(key).copied()
    }

    /// Multiset of pairwise Coxeter-graph distances within a profile,
    /// as (distance, count) pairs.
    pub fn edge_distance_stats(&self, face: &FaceRoot, ns: &NsLattice) -> Vec<(usize, usize)> {
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        for (a, &u) in face.profile.iter().enumerate() {
            for &v in &face.profile[a + 1..] {
                *counts.entry(ns.graph().distance(u, v)).or_default() += 1;
            }
        }
        counts.into_iter().collect()
    }

    /// Closure membership test for D': positive norm, positive height, and
    /// nonnegative pairing with every face projection.
    pub fn chamber_test(&self, ns: &NsLattice, v: &[BigRational]) -> bool {
        if v.len() != NS_RANK {
            return false;
        }
        if !ns.inner_rat(v, v).is_positive() {
            return false;
        }
        let w: Vec<BigRational> = ns
            .w_prime()
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        if !ns.inner_rat(v, &w).is_positive() {
            return false;
        }
        self.faces.iter().all(|f| {
            let pairing = ns.inner_rat(v, &f.projection);
            !pairing.is_negative()
        })
    }
}

/// Number of non-curve faces (those carrying inversion involutions).
pub const NUM_INVOLUTION_FACES: usize = 98;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Model;
    use crate::ns_embed::NUM_CURVES;

    fn model() -> &'static Model {
        Model::shared()
    }

    #[test]
    fn family_counts_and_subcases() {
        let faces = model().faces();
        assert_eq!(faces.len(), 126);
        assert_eq!(faces.of_type(FaceType::A6A1).len(), 28);
        assert_eq!(faces.of_type(FaceType::A7).len(), 14);
        assert_eq!(faces.of_type(FaceType::D7).len(), 28);
        assert_eq!(faces.of_type(FaceType::E7).len(), 56);
        let count_attach = |t: FaceType, node: usize| {
            faces
                .of_type(t)
                .iter()
                .filter(|f| f.attach == Some(node))
                .count()
        };
        assert_eq!(count_attach(FaceType::A7, 0), 7); // at y
        assert_eq!(count_attach(FaceType::A7, 5), 7); // at t
        assert_eq!(count_attach(FaceType::D7, 1), 14); // at z
        assert_eq!(count_attach(FaceType::D7, 4), 14); // at q
        assert_eq!(count_attach(FaceType::E7, 2), 28); // at x
        assert_eq!(count_attach(FaceType::E7, 3), 28); // at p
    }

    #[test]
    fn a6a1_faces_are_the_curve_roots() {
        let m = model();
        let curves = m.ns().curve_roots();
        for (i, f) in m.faces().of_type(FaceType::A6A1).iter().enumerate() {
            assert_eq!(&f.root, &curves[i]);
            assert_eq!(f.id.index, i + 1);
        }
    }

    fn face_with_lambda(xi: &[i64; 24]) -> FaceRoot {
        model()
            .faces()
            .faces()
            .iter()
            .find(|f| f.root.lambda().coords() == xi)
            .expect("face with given lambda")
            .clone()
    }

    fn doubled_octad_lambda(points: &[i64]) -> [i64; 24] {
        let mut xi = [0i64; 24];
        for &pt in points {
            let p = if pt < 0 {
                Point::INFINITY
            } else {
                Point::from_field(pt as u8).unwrap()
            };
            xi[p.rank()] = 2;
        }
        xi
    }

    #[test]
    fn printed_a7_profile() {
        // K = {inf 0 1 2 3 5 14 17} meets exactly curves 23, 24, 25, 28.
        let xi = doubled_octad_lambda(&[-1, 0, 1, 2, 3, 5, 14, 17]);
        let face = face_with_lambda(&xi);
        assert_eq!(face.rtype, FaceType::A7);
        let profile_1based: Vec<usize> = face.profile.iter().map(|i| i + 1).collect();
        assert_eq!(profile_1based, vec![23, 24, 25, 28]);
        // All six pairs at edge distance 4.
        let stats = model().faces().edge_distance_stats(&face, model().ns());
        assert_eq!(stats, vec![(4, 6)]);
    }

    #[test]
    fn printed_d7_profile() {
        // k = 6 gives the profile {2, 5, 11, 14, 16, 23}.
        let mut xi = [1i64; 24];
        xi[Point::from_field(6).unwrap().rank()] -= 4;
        let face = face_with_lambda(&xi);
        assert_eq!(face.rtype, FaceType::D7);
        let profile_1based: Vec<usize> = face.profile.iter().map(|i| i + 1).collect();
        assert_eq!(profile_1based, vec![2, 5, 11, 14, 16, 23]);
        let stats = model().faces().edge_distance_stats(&face, model().ns());
        assert_eq!(stats, vec![(3, 12), (4, 3)]);
    }

    #[test]
    fn printed_e7_profile() {
        // K = {inf 0 3 13 14 16 19 21} meets 5, 6, 8, 11, 24, 25, 27.
        let xi = doubled_octad_lambda(&[-1, 0, 3, 13, 14, 16, 19, 21]);
        let face = face_with_lambda(&xi);
        assert_eq!(face.rtype, FaceType::E7);
        let profile_1based: Vec<usize> = face.profile.iter().map(|i| i + 1).collect();
        assert_eq!(profile_1based, vec![5, 6, 8, 11, 24, 25, 27]);
    }

    #[test]
    fn distance_multisets_hold_for_every_face() {
        let m = model();
        for f in m.faces().of_type(FaceType::A7) {
            assert_eq!(m.faces().edge_distance_stats(f, m.ns()), vec![(4, 6)]);
        }
        for f in m.faces().of_type(FaceType::D7) {
            assert_eq!(m.faces().edge_distance_stats(f, m.ns()), vec![(3, 12), (4, 3)]);
        }
    }

    #[test]
    fn every_vertex_lies_in_exactly_two_a7_profiles() {
        let m = model();
        let mut counts = [0usize; NUM_CURVES];
        for f in m.faces().of_type(FaceType::A7) {
            for &v in &f.profile {
                counts[v] += 1;
            }
        }
        assert!(counts.iter().all(|&c| c == 2), "{counts:?}");
    }

    #[test]
    fn chamber_membership_of_weyl_projection() {
        let m = model();
        let w: Vec<BigRational> = m
            .ns()
            .w_prime()
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        assert!(m.faces().chamber_test(m.ns(), &w));
        let minus_w: Vec<BigRational> = w.iter().map(|x| -x).collect();
        assert!(!m.faces().chamber_test(m.ns(), &minus_w));
        // Reflecting w' in an E7 face projection leaves the chamber.
        let e7 = &m.faces().of_type(FaceType::E7)[0];
        let reflected = crate::lattice::reflect(
            &w,
            &e7.projection,
            m.ns().gram(),
        )
        .unwrap();
        assert!(!m.faces().chamber_test(m.ns(), &reflected));
    }

    #[test]
    fn pair_formula_exhaustive_over_face_and_curve_roots() {
        // ii_inner and the lambda-difference closed form agree on all pairs;
        // leech_root_pair asserts the identity internally.
        let m = model();
        let faces = m.faces().faces();
        for i in 0..faces.len() {
            for j in i..faces.len() {
                crate::lorentzian::leech_root_pair(&faces[i].root, &faces[j].root);
            }
        }
    }

    #[test]
    fn face_ids_roundtrip() {
        let m = model();
        for f in m.faces().faces() {
            let parsed = FaceId::parse(&f.id.to_string()).unwrap();
            assert_eq!(m.faces().index_of(parsed), m.faces().index_of(f.id));
        }
        assert!(FaceId::parse("F8-1").is_none());
        assert!(FaceId::parse("E7-0").is_none());
    }
}
