//! The automorphism group of the Coxeter graph and its lift to isometries
//! of S_X.
//!
//! A backtracking search over a BFS vertex order finds all 336 adjacency-
//! preserving permutations (the group is PGL2(7)). Because the 28 curve
//! classes span S_X over the integers, every graph automorphism lifts to a
//! unique integral Gram-preserving isometry fixing w'; the lift is solved
//! from 20 independent curve columns once and reused.

use std::collections::{HashMap, HashSet, VecDeque};

use num::bigint::BigInt;
use num::traits::Zero;
use num::Integer;

use crate::faces::{FaceSet, FaceType};
use crate::lattice::{det, rat_inverse, IntMat};
use crate::ns_embed::{CoxeterGraph, NsLattice, NS_RANK, NUM_CURVES};
use crate::{inconsistent, Result};

/// An adjacency-preserving permutation of the 28 graph vertices (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphAutomorphism {
    pub perm: [u8; NUM_CURVES],
}

impl GraphAutomorphism {
    pub fn identity() -> GraphAutomorphism {
        let mut perm = [0u8; NUM_CURVES];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i as u8;
        }
        GraphAutomorphism { perm }
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v] as usize
    }

    /// `(self . other)(v) = self(other(v))`.
    pub fn compose(&self, other: &GraphAutomorphism) -> GraphAutomorphism {
        let mut perm = [0u8; NUM_CURVES];
        for v in 0..NUM_CURVES {
            perm[v] = self.perm[other.perm[v] as usize];
        }
        GraphAutomorphism { perm }
    }

    pub fn inverse(&self) -> GraphAutomorphism {
        let mut perm = [0u8; NUM_CURVES];
        for v in 0..NUM_CURVES {
            perm[self.perm[v] as usize] = v as u8;
        }
        GraphAutomorphism { perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    /// Multiplicative order as a permutation.
    pub fn order(&self) -> usize {
        self.cycles_with_fixed()
            .into_iter()
            .map(|c| c.len())
            .fold(1, |acc, l| acc.lcm(&l))
    }

    fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; NUM_CURVES];
        let mut cycles = Vec::new();
        for start in 0..NUM_CURVES {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.apply(start);
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Non-trivial cycles on 1-based vertex labels.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.into_iter().map(|v| v + 1).collect())
            .collect()
    }

    /// Cycle notation on 1-based labels, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }

    /// Rebuild from 1-based disjoint cycles.
    pub fn from_cycles(cycles: &[Vec<usize>]) -> Result<GraphAutomorphism> {
        let mut perm = GraphAutomorphism::identity().perm;
        let mut touched = [false; NUM_CURVES];
        for cycle in cycles {
            for (k, &v) in cycle.iter().enumerate() {
                if !(1..=NUM_CURVES).contains(&v) {
                    return crate::invalid(format!("vertex {v} out of range 1..=28"));
                }
                if touched[v - 1] {
                    return crate::invalid(format!("vertex {v} repeated across cycles"));
                }
                touched[v - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                perm[v - 1] = (next - 1) as u8;
            }
        }
        Ok(GraphAutomorphism { perm })
    }
}

/// Backtracking enumeration of all graph automorphisms.
fn search_automorphisms(graph: &CoxeterGraph) -> Vec<GraphAutomorphism> {
    // BFS order: every later vertex has an earlier neighbor to anchor on.
    let mut order = Vec::with_capacity(NUM_CURVES);
    let mut anchor: Vec<Option<usize>> = vec![None; NUM_CURVES];
    let mut seen = [false; NUM_CURVES];
    let mut queue = VecDeque::new();
    seen[0] = true;
    queue.push_back(0usize);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in graph.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                anchor[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    assert_eq!(order.len(), NUM_CURVES, "graph must be connected");

    let mut found = Vec::new();
    let mut image = [usize::MAX; NUM_CURVES];
    let mut used = [false; NUM_CURVES];

    fn consistent(
        graph: &CoxeterGraph,
        order: &[usize],
        image: &[usize; NUM_CURVES],
        depth: usize,
        candidate: usize,
    ) -> bool {
        let v = order[depth];
        for &u in order[..depth].iter() {
            if graph.adjacent(u, v) != graph.adjacent(image[u], candidate) {
                return false;
            }
        }
        true
    }

    fn recurse(
        graph: &CoxeterGraph,
        order: &[usize],
        anchor: &[Option<usize>],
        image: &mut [usize; NUM_CURVES],
        used: &mut [bool; NUM_CURVES],
        depth: usize,
        found: &mut Vec<GraphAutomorphism>,
    ) {
        if depth == NUM_CURVES {
            let mut perm = [0u8; NUM_CURVES];
            for v in 0..NUM_CURVES {
                perm[v] = image[v] as u8;
            }
            found.push(GraphAutomorphism { perm });
            return;
        }
        let v = order[depth];
        let candidates: Vec<usize> = match anchor[v] {
            Some(a) => graph.neighbors(image[a]).to_vec(),
            None => (0..NUM_CURVES).collect(),
        };
        for c in candidates {
            if !used[c] && consistent(graph, order, image, depth, c) {
                image[v] = c;
                used[c] = true;
                recurse(graph, order, anchor, image, used, depth + 1, found);
                used[c] = false;
                image[v] = usize::MAX;
            }
        }
    }

    recurse(
        graph, &order, &anchor, &mut image, &mut used, 0, &mut found,
    );
    found.sort_by_key(|g| g.perm);
    found
}

/// The graph automorphism group with its lifted isometries.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    elements: Vec<GraphAutomorphism>,
    lifts: Vec<IntMat>,
    index_by_perm: HashMap<[u8; NUM_CURVES], usize>,
    generators: Vec<usize>,
}

impl SymmetryGroup {
    pub fn compute(ns: &NsLattice) -> Result<SymmetryGroup> {
        let elements = search_automorphisms(ns.graph());
        if elements.len() != 336 {
            return inconsistent(format!(
                "graph automorphism group has order {}, expected 336",
                elements.len()
            ));
        }

        // 20 independent curve columns picked once, left to right.
        let curves = ns.curves();
        let mut selected: Vec<usize> = Vec::with_capacity(NS_RANK);
        {
            let mut work: Vec<Vec<num::BigRational>> = Vec::new();
            for (i, c) in curves.iter().enumerate() {
                let mut row: Vec<num::BigRational> = c
                    .iter()
                    .map(|x| num::BigRational::from_integer(x.clone()))
                    .collect();
                for prev in &work {
                    let lead = prev
                        .iter()
                        .position(|x| !x.is_zero())
                        .expect("stored rows are nonzero");
                    if !row[lead].is_zero() {
                        let factor = &row[lead] / &prev[lead];
                        for (r, p) in row.iter_mut().zip(prev) {
                            *r -= &factor * p;
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    work.push(row);
                    selected.push(i);
                    if selected.len() == NS_RANK {
                        break;
                    }
                }
            }
        }
        if selected.len() != NS_RANK {
            return inconsistent("curve classes do not span S_X");
        }

        let col_matrix = |idx: &[usize]| -> IntMat {
            let rows: Vec<Vec<BigInt>> = (0..NS_RANK)
                .map(|r| idx.iter().map(|&i| curves[i][r].clone()).collect())
                .collect();
            IntMat::from_rows(rows)
        };
        let a = col_matrix(&selected);
        let a_det = det(&a);
        // a^-1 = n / det with integral n.
        let n = rat_inverse(&a.to_rational()).expect("selected curves are independent");
        let mut n_int = IntMat::zeros(NS_RANK, NS_RANK);
        for i in 0..NS_RANK {
            for j in 0..NS_RANK {
                let scaled = &n[(i, j)] * num::BigRational::from_integer(a_det.clone());
                assert!(scaled.is_integer());
                n_int[(i, j)] = scaled.to_integer();
            }
        }

        let gram = ns.gram().matrix();
        let w = ns.w_prime();
        let mut lifts = Vec::with_capacity(elements.len());
        for g in &elements {
            let images: Vec<usize> = selected.iter().map(|&i| g.apply(i)).collect();
            let b = col_matrix(&images);
            let prod = b.mul(&n_int);
            let mut lift = IntMat::zeros(NS_RANK, NS_RANK);
            for i in 0..NS_RANK {
                for j in 0..NS_RANK {
                    let (q, r) = prod[(i, j)].div_rem(&a_det);
                    if !r.is_zero() {
                        return inconsistent("graph automorphism lift is not integral");
                    }
                    lift[(i, j)] = q;
                }
            }
            // The lift must send every curve to its image, preserve the
            // Gram matrix and fix w'.
            for (i, c) in curves.iter().enumerate() {
                if lift.mul_vec(c) != curves[g.apply(i)] {
                    return inconsistent(format!(
                        "lift of {} does not permute the curves",
                        g.cycle_string()
                    ));
                }
            }
            if &lift.transpose().mul(gram).mul(&lift) != gram {
                return inconsistent("lift does not preserve the Gram matrix");
            }
            if lift.mul_vec(w) != w {
                return inconsistent("lift does not fix w'");
            }
            lifts.push(lift);
        }

        let index_by_perm: HashMap<[u8; NUM_CURVES], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.perm, i))
            .collect();

        // Small generating set, greedily.
        let mut generators = Vec::new();
        let mut generated: HashSet<[u8; NUM_CURVES]> =
            HashSet::from([GraphAutomorphism::identity().perm]);
        for (i, g) in elements.iter().enumerate() {
            if generated.contains(&g.perm) {
                continue;
            }
            generators.push(i);
            // Close under the current generators.
            let gens: Vec<GraphAutomorphism> =
                generators.iter().map(|&k| elements[k]).collect();
            let mut queue: VecDeque<GraphAutomorphism> =
                generated.iter().map(|p| GraphAutomorphism { perm: *p }).collect();
            while let Some(h) = queue.pop_front() {
                for gen in &gens {
                    let next = gen.compose(&h);
                    if generated.insert(next.perm) {
                        queue.push_back(next);
                    }
                }
            }
            if generated.len() == elements.len() {
                break;
            }
        }

        Ok(SymmetryGroup {
            elements,
            lifts,
            index_by_perm,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GraphAutomorphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GraphAutomorphism {
        &self.elements[i]
    }

    pub fn lift(&self, i: usize) -> &IntMat {
        &self.lifts[i]
    }

    pub fn index_of(&self, g: &GraphAutomorphism) -> Option<usize> {
        self.index_by_perm.get(&g.perm).copied()
    }

    /// Indices of a small generating set.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Image of a face under the lifted action, found by its projection key.
    pub fn face_action(&self, elem: usize, face_idx: usize, faces: &FaceSet) -> Result<usize> {
        let image = self.lifts[elem].mul_vec(&faces.faces()[face_idx].proj7);
        faces.face_by_proj7(&image).ok_or_else(|| {
            crate::Error::Inconsistency(format!(
                "image of face {} under element {} is not a face",
                faces.faces()[face_idx].id,
                self.elements[elem].cycle_string()
            ))
        })
    }

    /// Orbit of a face under the whole group (computed from generators).
    pub fn face_orbit(&self, face_idx: usize, faces: &FaceSet) -> Result<Vec<usize>> {
        let mut seen = HashSet::from([face_idx]);
        let mut queue = VecDeque::from([face_idx]);
        while let Some(f) = queue.pop_front() {
            for &g in &self.generators {
                let img = self.face_action(g, f, faces)?;
                if seen.insert(img) {
                    queue.push_back(img);
                }
            }
        }
        let mut orbit: Vec<usize> = seen.into_iter().collect();
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// Orbit partition of the whole face list.
    pub fn orbits_on_faces(&self, faces: &FaceSet) -> Result<Vec<Vec<usize>>> {
        let mut assigned = vec![false; faces.len()];
        let mut orbits = Vec::new();
        for f in 0..faces.len() {
            if assigned[f] {
                continue;
            }
            let orbit = self.face_orbit(f, faces)?;
            for &x in &orbit {
                assigned[x] = true;
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Element indices stabilizing the given face.
    pub fn face_stabilizer(&self, face_idx: usize, faces: &FaceSet) -> Result<Vec<usize>> {
        let mut stab = Vec::new();
        for e in 0..self.elements.len() {
            if self.face_action(e, face_idx, faces)? == face_idx {
                stab.push(e);
            }
        }
        Ok(stab)
    }

    /// Sorted (order, multiplicity) pairs for a set of element indices.
    pub fn order_multiset(&self, subset: &[usize]) -> Vec<(usize, usize)> {
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        for &i in subset {
            *counts.entry(self.elements[i].order()).or_default() += 1;
        }
        counts.into_iter().collect()
    }

    /// The commutator subgroup, as sorted element indices.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut commutators: HashSet<[u8; NUM_CURVES]> = HashSet::new();
        for g in &self.elements {
            for h in &self.elements {
                let comm = g
                    .compose(h)
                    .compose(&g.inverse())
                    .compose(&h.inverse());
                commutators.insert(comm.perm);
            }
        }
        // Close under composition (finite group, so products suffice).
        let gens: Vec<GraphAutomorphism> = commutators
            .iter()
            .map(|p| GraphAutomorphism { perm: *p })
            .collect();
        let mut members = commutators.clone();
        let mut queue: VecDeque<GraphAutomorphism> = gens.iter().copied().collect();
        while let Some(h) = queue.pop_front() {
            for g in &gens {
                let next = g.compose(&h);
                if members.insert(next.perm) {
                    queue.push_back(next);
                }
            }
        }
        let mut indices: Vec<usize> = members
            .iter()
            .map(|p| self.index_by_perm[p])
            .collect();
        indices.sort_unstable();
        indices
    }
}

/// (order, multiplicity) pairs of a finite group's elements.
pub type OrderMultiset = Vec<(usize, usize)>;

/// Expected stabilizer invariants: (face type, order, element-order multiset).
pub fn expected_stabilizers() -> [(FaceType, usize, OrderMultiset); 3] {
    [
        // Symmetric group on 4 letters.
        (FaceType::A7, 24, vec![(1, 1), (2, 9), (3, 8), (4, 6)]),
        // Alternating group on 4 letters.
        (FaceType::D7, 12, vec![(1, 1), (2, 3), (3, 8)]),
        // Dihedral group of degree 3.
        (FaceType::E7, 6, vec![(1, 1), (2, 3), (3, 2)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Model;

    fn model() -> &'static Model {
        Model::shared()
    }

    #[test]
    fn group_has_order_336_and_contains_identity() {
        let sym = model().symmetry();
        assert_eq!(sym.order(), 336);
        assert!(sym.index_of(&GraphAutomorphism::identity()).is_some());
    }

    #[test]
    fn group_is_vertex_transitive() {
        let sym = model().symmetry();
        let orbit: HashSet<usize> = sym
            .elements()
            .iter()
            .map(|g| g.apply(0))
            .collect();
        assert_eq!(orbit.len(), NUM_CURVES);
    }

    #[test]
    fn identity_lifts_to_identity_matrix() {
        let sym = model().symmetry();
        let id = sym.index_of(&GraphAutomorphism::identity()).unwrap();
        assert_eq!(sym.lift(id), &IntMat::identity(NS_RANK));
    }

    #[test]
    fn lifts_compose_like_the_group() {
        let sym = model().symmetry();
        let g = sym.element(1);
        let h = sym.element(5);
        let gh = g.compose(h);
        let idx = sym.index_of(&gh).unwrap();
        assert_eq!(sym.lift(1).mul(sym.lift(5)), *sym.lift(idx));
    }

    #[test]
    fn orbits_split_by_type_with_expected_sizes() {
        let m = model();
        let orbits = m.symmetry().orbits_on_faces(m.faces()).unwrap();
        let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![14, 28, 28, 56]);
        // Face type is an orbit invariant.
        for orbit in &orbits {
            let t = m.faces().faces()[orbit[0]].rtype;
            assert!(orbit.iter().all(|&f| m.faces().faces()[f].rtype == t));
        }
    }

    #[test]
    fn stabilizers_have_expected_orders_and_order_multisets() {
        let m = model();
        for (rtype, order, multiset) in expected_stabilizers() {
            let face_idx = m
                .faces()
                .faces()
                .iter()
                .position(|f| f.rtype == rtype)
                .unwrap();
            let stab = m.symmetry().face_stabilizer(face_idx, m.faces()).unwrap();
            assert_eq!(stab.len(), order, "{rtype} stabilizer order");
            assert_eq!(m.symmetry().order_multiset(&stab), multiset, "{rtype}");
        }
    }

    #[test]
    fn commutator_subgroup_has_index_two_with_psl27_order_profile() {
        let sym = model().symmetry();
        let comm = sym.commutator_subgroup();
        assert_eq!(comm.len(), 168);
        // Index 2 means the commutator subgroup is the unique index-2
        // subgroup; its element orders match the simple group of order 168.
        assert_eq!(
            sym.order_multiset(&comm),
            vec![(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)]
        );
    }

    #[test]
    fn cycle_roundtrip() {
        let sym = model().symmetry();
        for g in sym.elements().iter().step_by(17) {
            let back = GraphAutomorphism::from_cycles(&g.cycles()).unwrap();
            assert_eq!(&back, g);
        }
    }
}
