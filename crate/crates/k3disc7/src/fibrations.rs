//! Elliptic fibrations attached to the non-curve faces and their inversion
//! involutions.
//!
//! For a face of type E7 the 21 curves orthogonal to its root split into an
//! induced 18-cycle (an affine A17 diagram, the I18 fiber) and 3 sections;
//! for D7, into an affine E6 plus an induced 12-cycle plus 3 sections; for
//! A7, into an induced 8-cycle plus two affine D5 diagrams plus 4 sections.
//! The marked vertex sum of each diagram is the isotropic fiber class F,
//! and all diagrams of one fibration share it.
//!
//! The inversion involution of the fibration is the unique linear map that
//! fixes F and the zero section, permutes each fiber root lattice by its
//! opposition involution, and negates the essential line spanned by the
//! face projection. It is integral, Gram-preserving, and acts on the plane
//! spanned by w' and the projection r' as the reflection in r'.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::faces::{FaceRoot, FaceSet, FaceType, NUM_INVOLUTION_FACES};
use crate::lattice::{IntMat, RatMat, RootKind};
use crate::ns_embed::{CoxeterGraph, NsLattice, NS_RANK, NUM_CURVES};
use crate::{inconsistent, invalid, Result};

/// Shape of an affine Dynkin diagram found in the Coxeter graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffineKind {
    /// Affine A_n: an induced cycle on n+1 vertices.
    Cycle(usize),
    /// Affine D5: two joined centers, each carrying two tips.
    DTilde5,
    /// Affine E6: a center with three arms of length two.
    ETilde6,
}

impl AffineKind {
    pub fn label(&self) -> String {
        match self {
            AffineKind::Cycle(n) => format!("A~{n}"),
            AffineKind::DTilde5 => "D~5".to_string(),
            AffineKind::ETilde6 => "E~6".to_string(),
        }
    }
}

/// An affine diagram with its multiplicity marks.
///
/// Vertex order is structural: cycle order for affine A, `[a b c1 c2 e f]`
/// for affine D5 (tips a,b on c1; e,f on c2), `[c m1 t1 m2 t2 m3 t3]` for
/// affine E6 (arms m_i - t_i hanging off the center c).
#[derive(Debug, Clone)]
pub struct AffineDiagram {
    pub kind: AffineKind,
    pub vertices: Vec<usize>,
    pub marks: Vec<i64>,
}

impl AffineDiagram {
    fn cycle(vertices: Vec<usize>) -> AffineDiagram {
        let n = vertices.len();
        AffineDiagram {
            kind: AffineKind::Cycle(n - 1),
            marks: vec![1; n],
            vertices,
        }
    }

    fn d_tilde5(vertices: Vec<usize>) -> AffineDiagram {
        AffineDiagram {
            kind: AffineKind::DTilde5,
            marks: vec![1, 1, 2, 2, 1, 1],
            vertices,
        }
    }

    fn e_tilde6(vertices: Vec<usize>) -> AffineDiagram {
        AffineDiagram {
            kind: AffineKind::ETilde6,
            marks: vec![3, 2, 1, 2, 1, 2, 1],
            vertices,
        }
    }

    pub fn sorted_vertices(&self) -> Vec<usize> {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v
    }
}

/// Marked vertex sum of a diagram: the fiber class in basis coordinates.
pub fn fiber_class(ns: &NsLattice, d: &AffineDiagram) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(); NS_RANK];
    for (&v, &mark) in d.vertices.iter().zip(&d.marks) {
        for (acc, x) in f.iter_mut().zip(&ns.curves()[v]) {
            *acc += BigInt::from(mark) * x;
        }
    }
    f
}

/// All induced cycles of the given length inside a vertex subset, each
/// reported once, in cycle order starting at its smallest vertex.
fn induced_cycles(graph: &CoxeterGraph, verts: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut inset = [false; NUM_CURVES];
    for &v in verts {
        inset[v] = true;
    }
    let mut found = Vec::new();
    let mut path = Vec::with_capacity(len);
    let mut used = [false; NUM_CURVES];

    fn recurse(
        graph: &CoxeterGraph,
        inset: &[bool; NUM_CURVES],
        len: usize,
        path: &mut Vec<usize>,
        used: &mut [bool; NUM_CURVES],
        found: &mut Vec<Vec<usize>>,
    ) {
        if path.len() == len {
            if graph.adjacent(*path.last().unwrap(), path[0]) && path[1] < path[len - 1] {
                found.push(path.clone());
            }
            return;
        }
        let k = path.len();
        let start = path[0];
        let tail = *path.last().unwrap();
        let closing = k == len - 1;
        for v in start + 1..NUM_CURVES {
            if !inset[v] || used[v] || !graph.adjacent(tail, v) {
                continue;
            }
            // Induced: no chords back into the path. The start vertex only
            // admits the closing edge.
            let mut ok = true;
            for (i, &u) in path[..k - 1].iter().enumerate() {
                if graph.adjacent(u, v) && !(closing && i == 0) {
                    ok = false;
                    break;
                }
            }
            if closing && !graph.adjacent(start, v) {
                ok = false;
            }
            if !ok {
                continue;
            }
            path.push(v);
            used[v] = true;
            recurse(graph, inset, len, path, used, found);
            used[v] = false;
            path.pop();
        }
    }

    for &s in verts {
        path.push(s);
        used[s] = true;
        recurse(graph, &inset, len, &mut path, &mut used, &mut found);
        used[s] = false;
        path.pop();
    }
    found.sort();
    found
}

/// All affine E6 diagrams induced in a vertex subset, canonically labeled
/// `[c m1 t1 m2 t2 m3 t3]` with arms ordered by middle vertex.
fn find_e6_tilde(graph: &CoxeterGraph, verts: &[usize]) -> Vec<AffineDiagram> {
    let inset: Vec<bool> = {
        let mut s = vec![false; NUM_CURVES];
        for &v in verts {
            s[v] = true;
        }
        s
    };
    let nbrs = |v: usize| -> Vec<usize> {
        graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| inset[u])
            .collect()
    };
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &c in verts {
        let cn = nbrs(c);
        if cn.len() < 3 {
            continue;
        }
        for a in 0..cn.len() {
            for b in a + 1..cn.len() {
                for d in b + 1..cn.len() {
                    let mids = [cn[a], cn[b], cn[d]];
                    let tip_choices: Vec<Vec<usize>> = mids
                        .iter()
                        .map(|&m| nbrs(m).into_iter().filter(|&t| t != c).collect())
                        .collect();
                    for &t1 in &tip_choices[0] {
                        for &t2 in &tip_choices[1] {
                            for &t3 in &tip_choices[2] {
                                let vs = vec![c, mids[0], t1, mids[1], t2, mids[2], t3];
                                let mut sorted = vs.clone();
                                sorted.sort_unstable();
                                sorted.dedup();
                                if sorted.len() != 7 {
                                    continue;
                                }
                                if !shape_is_induced_e6(graph, &vs) {
                                    continue;
                                }
                                if seen.insert(sorted) {
                                    out.push(AffineDiagram::e_tilde6(vs));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|d| d.sorted_vertices());
    out
}

fn shape_is_induced_e6(graph: &CoxeterGraph, vs: &[usize]) -> bool {
    // vs = [c, m1, t1, m2, t2, m3, t3]; required edges c-mi and mi-ti only.
    let edge = |a: usize, b: usize| graph.adjacent(vs[a], vs[b]);
    let expected = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)];
    for i in 0..7 {
        for j in (i + 1)..7 {
            let want = expected.contains(&(i, j)) || expected.contains(&(j, i));
            if edge(i, j) != want {
                return false;
            }
        }
    }
    true
}

/// All affine D5 diagrams induced in a vertex subset, canonically labeled
/// `[a b c1 c2 e f]` with `c1 < c2`, `a < b`, `e < f`.
fn find_d5_tilde(graph: &CoxeterGraph, verts: &[usize]) -> Vec<AffineDiagram> {
    let inset: Vec<bool> = {
        let mut s = vec![false; NUM_CURVES];
        for &v in verts {
            s[v] = true;
        }
        s
    };
    let nbrs = |v: usize| -> Vec<usize> {
        graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| inset[u])
            .collect()
    };
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &c1 in verts {
        for &c2 in nbrs(c1).iter().filter(|&&c2| c2 > c1) {
            let side1: Vec<usize> = nbrs(c1).into_iter().filter(|&v| v != c2).collect();
            let side2: Vec<usize> = nbrs(c2).into_iter().filter(|&v| v != c1).collect();
            for i in 0..side1.len() {
                for j in i + 1..side1.len() {
                    for k in 0..side2.len() {
                        for l in k + 1..side2.len() {
                            let vs = vec![side1[i], side1[j], c1, c2, side2[k], side2[l]];
                            let mut sorted = vs.clone();
                            sorted.sort_unstable();
                            sorted.dedup();
                            if sorted.len() != 6 {
                                continue;
                            }
                            if !shape_is_induced_d5(graph, &vs) {
                                continue;
                            }
                            if seen.insert(sorted) {
                                out.push(AffineDiagram::d_tilde5(vs));
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|d| d.sorted_vertices());
    out
}

fn shape_is_induced_d5(graph: &CoxeterGraph, vs: &[usize]) -> bool {
    // vs = [a, b, c1, c2, e, f]; required edges a-c1, b-c1, c1-c2, c2-e, c2-f.
    let edge = |a: usize, b: usize| graph.adjacent(vs[a], vs[b]);
    let expected = [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)];
    for i in 0..6 {
        for j in (i + 1)..6 {
            let want = expected.contains(&(i, j)) || expected.contains(&(j, i));
            if edge(i, j) != want {
                return false;
            }
        }
    }
    true
}

fn no_edges_between(graph: &CoxeterGraph, a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&u| b.iter().all(|&v| !graph.adjacent(u, v)))
}

/// An elliptic fibration model attached to one face.
#[derive(Debug, Clone)]
pub struct FibrationModel {
    /// Global index of the owning face in the face list.
    pub face_index: usize,
    pub rtype: FaceType,
    pub diagrams: Vec<AffineDiagram>,
    /// Sorted curve indices of the sections.
    pub sections: Vec<usize>,
    pub zero_section: usize,
    /// Fiber class in basis coordinates (common to all diagrams).
    pub fiber_class: Vec<BigInt>,
    /// Per diagram: vertices minus the component met by the zero section.
    pub theta: Vec<Vec<usize>>,
}

/// Detect the fibration for a non-curve face.
pub fn detect_fibration(
    ns: &NsLattice,
    faces: &FaceSet,
    face_index: usize,
) -> Result<FibrationModel> {
    let face = &faces.faces()[face_index];
    if face.rtype == FaceType::A6A1 {
        return invalid("curve faces carry no elliptic fibration");
    }
    let graph = ns.graph();
    let orth: Vec<usize> = (0..NUM_CURVES)
        .filter(|v| !face.profile.contains(v))
        .collect();

    let diagrams: Vec<AffineDiagram> = match face.rtype {
        FaceType::E7 => {
            let cycles = induced_cycles(graph, &orth, 18);
            if cycles.len() != 1 {
                return inconsistent(format!(
                    "face {}: found {} induced 18-cycles, expected 1",
                    face.id,
                    cycles.len()
                ));
            }
            vec![AffineDiagram::cycle(cycles.into_iter().next().unwrap())]
        }
        FaceType::D7 => {
            let e6s = find_e6_tilde(graph, &orth);
            if e6s.len() != 4 {
                return inconsistent(format!(
                    "face {}: found {} affine E6 diagrams, expected 4",
                    face.id,
                    e6s.len()
                ));
            }
            let e6 = e6s.into_iter().next().unwrap();
            let f_e6 = fiber_class(ns, &e6);
            let rest: Vec<usize> = orth
                .iter()
                .copied()
                .filter(|v| !e6.vertices.contains(v))
                .collect();
            let candidates: Vec<Vec<usize>> = induced_cycles(graph, &rest, 12)
                .into_iter()
                .filter(|c| no_edges_between(graph, c, &e6.vertices))
                .filter(|c| fiber_class(ns, &AffineDiagram::cycle(c.clone())) == f_e6)
                .collect();
            if candidates.len() != 1 {
                return inconsistent(format!(
                    "face {}: {} compatible induced 12-cycles, expected 1",
                    face.id,
                    candidates.len()
                ));
            }
            vec![
                e6,
                AffineDiagram::cycle(candidates.into_iter().next().unwrap()),
            ]
        }
        FaceType::A7 => {
            let mut decomps: Vec<(Vec<usize>, AffineDiagram, AffineDiagram)> = Vec::new();
            let mut seen = std::collections::BTreeSet::new();
            for cycle in induced_cycles(graph, &orth, 8) {
                let f_cycle = fiber_class(ns, &AffineDiagram::cycle(cycle.clone()));
                let rest: Vec<usize> = orth
                    .iter()
                    .copied()
                    .filter(|v| !cycle.contains(v))
                    .collect();
                let d5s: Vec<AffineDiagram> = find_d5_tilde(graph, &rest)
                    .into_iter()
                    .filter(|d| no_edges_between(graph, &d.vertices, &cycle))
                    .filter(|d| fiber_class(ns, d) == f_cycle)
                    .collect();
                for i in 0..d5s.len() {
                    for j in i + 1..d5s.len() {
                        let (a, b) = (&d5s[i], &d5s[j]);
                        if a.vertices.iter().any(|v| b.vertices.contains(v)) {
                            continue;
                        }
                        if !no_edges_between(graph, &a.vertices, &b.vertices) {
                            continue;
                        }
                        let key = (
                            {
                                let mut c = cycle.clone();
                                c.sort_unstable();
                                c
                            },
                            a.sorted_vertices(),
                            b.sorted_vertices(),
                        );
                        if seen.insert(key) {
                            decomps.push((cycle.clone(), a.clone(), b.clone()));
                        }
                    }
                }
            }
            if decomps.len() != 3 {
                return inconsistent(format!(
                    "face {}: {} cycle+2xD5 decompositions, expected 3",
                    face.id,
                    decomps.len()
                ));
            }
            decomps.sort_by_key(|(c, a, _)| {
                let mut cs = c.clone();
                cs.sort_unstable();
                (cs, a.sorted_vertices())
            });
            let (cycle, d5a, d5b) = decomps.into_iter().next().unwrap();
            vec![AffineDiagram::cycle(cycle), d5a, d5b]
        }
        FaceType::A6A1 => unreachable!(),
    };

    // Fiber classes of all diagrams must agree and be isotropic.
    let f = fiber_class(ns, &diagrams[0]);
    for d in &diagrams[1..] {
        if fiber_class(ns, d) != f {
            return inconsistent(format!(
                "face {}: fiber classes of the diagrams disagree",
                face.id
            ));
        }
    }
    if !ns.inner_int(&f, &f).is_zero() {
        return inconsistent(format!("face {}: fiber class is not isotropic", face.id));
    }
    for d in &diagrams {
        for &v in &d.vertices {
            if !ns.inner_int(&f, &ns.curves()[v]).is_zero() {
                return inconsistent(format!(
                    "face {}: fiber class meets a fiber component",
                    face.id
                ));
            }
        }
    }

    let diagram_verts: Vec<usize> = diagrams.iter().flat_map(|d| d.vertices.clone()).collect();
    let mut sections: Vec<usize> = orth
        .iter()
        .copied()
        .filter(|v| !diagram_verts.contains(v))
        .collect();
    sections.sort_unstable();
    let expected_sections = match face.rtype {
        FaceType::A7 => 4,
        _ => 3,
    };
    if sections.len() != expected_sections {
        return inconsistent(format!(
            "face {}: {} sections, expected {expected_sections}",
            face.id,
            sections.len()
        ));
    }
    for &s in &sections {
        if ns.inner_int(&f, &ns.curves()[s]) != BigInt::one() {
            return inconsistent(format!(
                "face {}: section {} does not meet the fiber once",
                face.id,
                s + 1
            ));
        }
    }
    let zero_section = sections[0];

    let theta = thetas_for_zero_section(graph, &diagrams, zero_section, face)?;

    Ok(FibrationModel {
        face_index,
        rtype: face.rtype,
        diagrams,
        sections,
        zero_section,
        fiber_class: f,
        theta,
    })
}

fn thetas_for_zero_section(
    graph: &CoxeterGraph,
    diagrams: &[AffineDiagram],
    zero_section: usize,
    face: &FaceRoot,
) -> Result<Vec<Vec<usize>>> {
    let mut theta = Vec::with_capacity(diagrams.len());
    for d in diagrams {
        let met: Vec<usize> = d
            .vertices
            .iter()
            .copied()
            .filter(|&v| graph.adjacent(zero_section, v))
            .collect();
        if met.len() != 1 {
            return inconsistent(format!(
                "face {}: zero section meets {} components of a fiber",
                face.id,
                met.len()
            ));
        }
        let o_comp = met[0];
        let mark = d.marks[d.vertices.iter().position(|&v| v == o_comp).unwrap()];
        if mark != 1 {
            return inconsistent(format!(
                "face {}: zero section meets a multiplicity-{mark} component",
                face.id
            ));
        }
        theta.push(
            d.vertices
                .iter()
                .copied()
                .filter(|&v| v != o_comp)
                .collect(),
        );
    }
    Ok(theta)
}

/// Opposition involution of an irreducible root lattice on its standard
/// simple-root labels (0-based): chain reversal for A_n (n > 1), fork-tip
/// swap for odd D_n, the diagram flip for E6, identity otherwise.
pub fn opposition(kind: RootKind, n: usize) -> Result<Vec<usize>> {
    let valid = match kind {
        RootKind::A => n >= 1,
        RootKind::D => n >= 4,
        RootKind::E => (6..=8).contains(&n),
    };
    if !valid {
        return invalid(format!("no root lattice {kind:?}{n}"));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    match kind {
        RootKind::A => {
            for (i, p) in perm.iter_mut().enumerate() {
                *p = n - 1 - i;
            }
        }
        RootKind::D => {
            if n % 2 == 1 {
                perm.swap(n - 2, n - 1);
            }
        }
        RootKind::E => {
            if n == 6 {
                // Chain e0..e4 with e5 on e2: the flip reverses the chain.
                perm = vec![4, 3, 2, 1, 0, 5];
            }
        }
    }
    Ok(perm)
}

/// Opposition involution acting on a concrete fiber root lattice, returned
/// as images aligned with `theta`'s order.
fn opposition_on_theta(graph: &CoxeterGraph, theta: &[usize]) -> Result<Vec<usize>> {
    let deg = |v: usize| -> usize {
        theta
            .iter()
            .filter(|&&u| u != v && graph.adjacent(u, v))
            .count()
    };
    let trivalent: Vec<usize> = theta.iter().copied().filter(|&v| deg(v) == 3).collect();
    let image_map: std::collections::HashMap<usize, usize> = match trivalent.as_slice() {
        [] => {
            // A path (type A): walk from the smaller endpoint and reverse.
            let ends: Vec<usize> = theta.iter().copied().filter(|&v| deg(v) <= 1).collect();
            if theta.len() == 1 {
                return Ok(theta.to_vec());
            }
            if ends.len() != 2 {
                return inconsistent("fiber lattice is not a path or fork");
            }
            let start = *ends.iter().min().unwrap();
            let mut order = vec![start];
            let mut prev = usize::MAX;
            let mut cur = start;
            while order.len() < theta.len() {
                let next = theta
                    .iter()
                    .copied()
                    .find(|&v| v != prev && v != cur && graph.adjacent(cur, v))
                    .ok_or_else(|| crate::Error::Inconsistency("broken path".into()))?;
                order.push(next);
                prev = cur;
                cur = next;
            }
            let opp = opposition(RootKind::A, theta.len())?;
            order
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, order[opp[i]]))
                .collect()
        }
        [center] => {
            // Branches from the trivalent node, shortest first.
            let center = *center;
            let mut branches: Vec<Vec<usize>> = Vec::new();
            for &nb in theta.iter().filter(|&&v| graph.adjacent(center, v)) {
                let mut branch = vec![nb];
                let mut prev = center;
                let mut cur = nb;
                loop {
                    let next = theta
                        .iter()
                        .copied()
                        .find(|&v| v != prev && v != cur && graph.adjacent(cur, v));
                    match next {
                        Some(v) => {
                            branch.push(v);
                            prev = cur;
                            cur = v;
                        }
                        None => break,
                    }
                }
                branches.push(branch);
            }
            branches.sort_by_key(|b| (b.len(), b[0]));
            if branches.len() != 3 {
                return inconsistent("trivalent fiber vertex without three branches");
            }
            let lens: Vec<usize> = branches.iter().map(Vec::len).collect();
            let mut map: std::collections::HashMap<usize, usize> =
                std::collections::HashMap::from([(center, center)]);
            match (lens[0], lens[1], lens[2]) {
                (1, 1, _) => {
                    // Type D: odd rank swaps the two tips.
                    let n = theta.len();
                    if n % 2 == 1 {
                        map.insert(branches[0][0], branches[1][0]);
                        map.insert(branches[1][0], branches[0][0]);
                    } else {
                        map.insert(branches[0][0], branches[0][0]);
                        map.insert(branches[1][0], branches[1][0]);
                    }
                    for &v in &branches[2] {
                        map.insert(v, v);
                    }
                }
                (1, 2, 2) => {
                    // E6: swap the two long arms pointwise.
                    map.insert(branches[0][0], branches[0][0]);
                    for k in 0..2 {
                        map.insert(branches[1][k], branches[2][k]);
                        map.insert(branches[2][k], branches[1][k]);
                    }
                }
                (1, 2, 3) => {
                    // E7: trivial.
                    for b in &branches {
                        for &v in b {
                            map.insert(v, v);
                        }
                    }
                }
                _ => {
                    return inconsistent(format!(
                        "unrecognized fiber diagram with branch lengths {lens:?}"
                    ))
                }
            }
            map
        }
        _ => return inconsistent("fiber lattice has more than one trivalent vertex"),
    };
    theta
        .iter()
        .map(|v| {
            image_map.get(v).copied().ok_or_else(|| {
                crate::Error::Inconsistency("opposition image missing a vertex".into())
            })
        })
        .collect()
}

/// The inversion involution of a fibration as an integral isometry of S_X.
pub fn inversion_isometry(
    ns: &NsLattice,
    faces: &FaceSet,
    model: &FibrationModel,
) -> Result<IntMat> {
    let face = &faces.faces()[model.face_index];
    let graph = ns.graph();

    // Spanning set: F, O, theta vertices, and the essential generator 7 r'.
    let mut columns: Vec<Vec<BigInt>> = vec![
        model.fiber_class.clone(),
        ns.curves()[model.zero_section].clone(),
    ];
    let mut images: Vec<Vec<BigInt>> = columns.clone();
    for theta in &model.theta {
        let sigma = opposition_on_theta(graph, theta)?;
        for (&v, &img) in theta.iter().zip(&sigma) {
            columns.push(ns.curves()[v].clone());
            images.push(ns.curves()[img].clone());
        }
    }
    columns.push(face.proj7.clone());
    images.push(face.proj7.iter().map(|x| -x).collect());

    if columns.len() != NS_RANK {
        return inconsistent(format!(
            "face {}: trivial+essential span has {} vectors, expected {NS_RANK}",
            face.id,
            columns.len()
        ));
    }

    // Solve M * V = W columnwise.
    let v_mat = RatMat::from_rows(
        (0..NS_RANK)
            .map(|r| {
                columns
                    .iter()
                    .map(|c| BigRational::from_integer(c[r].clone()))
                    .collect()
            })
            .collect(),
    );
    let w_mat = RatMat::from_rows(
        (0..NS_RANK)
            .map(|r| {
                images
                    .iter()
                    .map(|c| BigRational::from_integer(c[r].clone()))
                    .collect()
            })
            .collect(),
    );
    let v_inv = crate::lattice::rat_inverse(&v_mat).ok_or_else(|| {
        crate::Error::Inconsistency(format!(
            "face {}: trivial+essential vectors are dependent",
            face.id
        ))
    })?;
    let m_rat = w_mat.mul(&v_inv);
    let m = m_rat.to_integer().ok_or_else(|| {
        crate::Error::Inconsistency(format!(
            "face {}: inversion involution is not integral",
            face.id
        ))
    })?;

    // Involution, isometry, and the two reflection identities.
    if m.mul(&m) != IntMat::identity(NS_RANK) {
        return inconsistent(format!("face {}: inversion is not an involution", face.id));
    }
    let gram = ns.gram().matrix();
    if &m.transpose().mul(gram).mul(&m) != gram {
        return inconsistent(format!("face {}: inversion is not an isometry", face.id));
    }
    let neg_proj: Vec<BigInt> = face.proj7.iter().map(|x| -x).collect();
    if m.mul_vec(&face.proj7) != neg_proj {
        return inconsistent(format!("face {}: inversion does not negate r'", face.id));
    }
    let c = BigInt::from(face.rtype.descent_factor());
    let reflected_w: Vec<BigInt> = ns
        .w_prime()
        .iter()
        .zip(&face.proj7)
        .map(|(w, p)| w + &c * p)
        .collect();
    if m.mul_vec(ns.w_prime()) != reflected_w {
        return inconsistent(format!(
            "face {}: inversion does not reflect w' in the face",
            face.id
        ));
    }
    Ok(m)
}

/// Build the inversion isometry with a caller-chosen zero section; used to
/// confirm the reflection identities are independent of the choice.
pub fn inversion_with_zero_section(
    ns: &NsLattice,
    faces: &FaceSet,
    base: &FibrationModel,
    zero_section: usize,
) -> Result<IntMat> {
    if !base.sections.contains(&zero_section) {
        return invalid("chosen zero section is not a section of the fibration");
    }
    let face = &faces.faces()[base.face_index];
    let theta = thetas_for_zero_section(ns.graph(), &base.diagrams, zero_section, face)?;
    let model = FibrationModel {
        zero_section,
        theta,
        ..base.clone()
    };
    inversion_isometry(ns, faces, &model)
}

/// All 98 fibration models and inversion involutions, in global face order.
#[derive(Debug, Clone)]
pub struct InversionSet {
    models: Vec<FibrationModel>,
    inversions: Vec<IntMat>,
    first_face: usize,
}

impl InversionSet {
    pub fn build(ns: &NsLattice, faces: &FaceSet) -> Result<InversionSet> {
        let first_face = faces.of_type(FaceType::A6A1).len();
        let mut models = Vec::with_capacity(NUM_INVOLUTION_FACES);
        let mut inversions = Vec::with_capacity(NUM_INVOLUTION_FACES);
        for face_index in first_face..faces.len() {
            let model = detect_fibration(ns, faces, face_index)?;
            let inv = inversion_isometry(ns, faces, &model)?;
            models.push(model);
            inversions.push(inv);
        }
        Ok(InversionSet {
            models,
            inversions,
            first_face,
        })
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    /// Slot for a global face index, if that face carries an involution.
    pub fn slot_of_face(&self, face_index: usize) -> Option<usize> {
        (face_index >= self.first_face && face_index < self.first_face + self.models.len())
            .then(|| face_index - self.first_face)
    }

    pub fn face_of_slot(&self, slot: usize) -> usize {
        self.first_face + slot
    }

    pub fn model(&self, slot: usize) -> &FibrationModel {
        &self.models[slot]
    }

    pub fn inversion(&self, slot: usize) -> &IntMat {
        &self.inversions[slot]
    }

    pub fn models(&self) -> &[FibrationModel] {
        &self.models
    }
}
