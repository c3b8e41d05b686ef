//! Embedding of the A6 chain in II(1,25) and its orthogonal complement,
//! the Neron-Severi lattice S_X of rank 20 and discriminant 7.
//!
//! The chain is the ordered list of Leech roots y-z-x-p-q-t built from the
//! named lattice vectors; its Gram matrix is the negated A6 Cartan matrix.
//! The 28 Leech roots orthogonal to the chain come from doubled octads
//! `2 nu_K` with `inf, 0 in K`, `1 not in K`, `|K n K0| = 4`; they span S_X,
//! carry the 28 nodal curve classes, and their pairing graph is the cubic
//! girth-7 Coxeter graph on 28 vertices with automorphism group PGL2(7).
//!
//! Everything is coordinatized over the integer rows `(m, n, xi_0..xi_23)`;
//! the S_X basis is the Hermite normal form of the 28 curve-root rows, so
//! all downstream coordinates are deterministic integers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;

use crate::golay::{GolayCode, Octad, Point};
use crate::lattice::{
    express_in_hnf, hnf, rat_inverse, root_lattice_gram, GramMatrix, IntMat, RatMat, RootKind,
};
use crate::leech::{LeechVector, NamedVectors};
use crate::lorentzian::{ii_inner, weyl_vector, IIVector, LeechRoot};
use crate::{inconsistent, Result};

/// Number of nodal curve classes.
pub const NUM_CURVES: usize = 28;
/// Rank of the Neron-Severi lattice.
pub const NS_RANK: usize = 20;
/// Ambient coordinate count: (m, n) plus 24 Leech coordinates.
pub const RAW_DIM: usize = 26;

/// Pairing of two integer rows in raw `(m, n; xi)` coordinates.
pub fn raw_inner(u: &[BigInt], v: &[BigInt]) -> BigRational {
    assert_eq!(u.len(), RAW_DIM);
    assert_eq!(v.len(), RAW_DIM);
    let hyper = &u[0] * &v[1] + &u[1] * &v[0];
    let dot: BigInt = u[2..].iter().zip(&v[2..]).map(|(a, b)| a * b).sum();
    BigRational::new(BigInt::from(8) * hyper - dot, BigInt::from(8))
}

fn raw_inner_int(u: &[BigInt], v: &[BigInt]) -> BigInt {
    let val = raw_inner(u, v);
    assert!(val.is_integer(), "raw pairing of lattice vectors must be integral");
    val.to_integer()
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The chain y-z-x-p-q-t of Leech roots spanning the embedded A6.
#[derive(Debug, Clone)]
pub struct A6Chain {
    roots: [LeechRoot; 6],
}

/// Chain node names in chain order.
pub const CHAIN_NODES: [&str; 6] = ["y", "z", "x", "p", "q", "t"];

impl A6Chain {
    pub fn new(named: &NamedVectors) -> Result<A6Chain> {
        let roots = [
            LeechRoot::from_lambda(named.y),
            LeechRoot::from_lambda(named.z),
            LeechRoot::from_lambda(named.x),
            LeechRoot::from_lambda(named.p),
            LeechRoot::from_lambda(named.q),
            LeechRoot::from_lambda(named.t),
        ];
        let expected = root_lattice_gram(RootKind::A, 6).expect("A6 exists");
        for i in 0..6 {
            for j in 0..6 {
                let pairing = ii_inner(roots[i].vector(), roots[j].vector());
                if BigInt::from(pairing) != expected.matrix()[(i, j)] {
                    return inconsistent(format!(
                        "chain pairing <{},{}> = {pairing} does not match the A6 Gram",
                        CHAIN_NODES[i], CHAIN_NODES[j]
                    ));
                }
            }
        }
        Ok(A6Chain { roots })
    }

    pub fn roots(&self) -> &[LeechRoot; 6] {
        &self.roots
    }

    pub fn gram(&self) -> GramMatrix {
        root_lattice_gram(RootKind::A, 6).expect("A6 exists")
    }
}

/// The 28-vertex Coxeter graph (vertices are 0-based curve indices here;
/// display uses 1-based numbering).
#[derive(Debug, Clone)]
pub struct CoxeterGraph {
    adj: [[bool; NUM_CURVES]; NUM_CURVES],
    neighbors: Vec<Vec<usize>>,
    dist: [[u8; NUM_CURVES]; NUM_CURVES],
}

impl CoxeterGraph {
    fn new(adj: [[bool; NUM_CURVES]; NUM_CURVES]) -> CoxeterGraph {
        let neighbors: Vec<Vec<usize>> = (0..NUM_CURVES)
            .map(|i| (0..NUM_CURVES).filter(|&j| adj[i][j]).collect())
            .collect();
        let mut dist = [[u8::MAX; NUM_CURVES]; NUM_CURVES];
        for start in 0..NUM_CURVES {
            let mut queue = std::collections::VecDeque::new();
            dist[start][start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &neighbors[u] {
                    if dist[start][v] == u8::MAX {
                        dist[start][v] = dist[start][u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        CoxeterGraph {
            adj,
            neighbors,
            dist,
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn num_edges(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted edge list on 0-based vertices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..NUM_CURVES {
            for j in (i + 1)..NUM_CURVES {
                if self.adj[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// BFS edge distance.
    pub fn distance(&self, i: usize, j: usize) -> usize {
        self.dist[i][j] as usize
    }

    /// Length of a shortest cycle.
    pub fn girth(&self) -> usize {
        let mut best = usize::MAX;
        for root in 0..NUM_CURVES {
            let mut dist = [usize::MAX; NUM_CURVES];
            let mut parent = [usize::MAX; NUM_CURVES];
            let mut queue = std::collections::VecDeque::new();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        best = best.min(dist[u] + dist[v] + 1);
                    }
                }
            }
        }
        best
    }

    /// True iff the vertices form an induced cycle in the listed order.
    pub fn is_induced_cycle(&self, cycle: &[usize]) -> bool {
        let n = cycle.len();
        for a in 0..n {
            for b in (a + 1)..n {
                let consecutive = b == a + 1 || (a == 0 && b == n - 1);
                if self.adj[cycle[a]][cycle[b]] != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

/// The Neron-Severi lattice of the discriminant-7 singular K3 surface,
/// realized as the orthogonal complement of the A6 chain.
#[derive(Debug, Clone)]
pub struct NsLattice {
    chain: A6Chain,
    chain_rows: Vec<Vec<BigInt>>,
    chain_gram_inv: RatMat,
    curve_octads: Vec<Octad>,
    curve_roots: Vec<LeechRoot>,
    /// 20 x 26 HNF basis of the curve-root span, with pivot columns.
    basis: IntMat,
    pivots: Vec<usize>,
    gram: GramMatrix,
    gram_inv: RatMat,
    /// 28 curve classes in basis coordinates.
    curves: Vec<Vec<BigInt>>,
    graph: CoxeterGraph,
    w_prime: Vec<BigInt>,
    w_dprime: Vec<BigRational>,
}

impl NsLattice {
    pub fn build(code: &GolayCode) -> Result<NsLattice> {
        let named = NamedVectors::new(code)?;
        let chain = A6Chain::new(&named)?;
        let chain_rows: Vec<Vec<BigInt>> = chain
            .roots()
            .iter()
            .map(|r| to_big(&r.vector().raw_coords()))
            .collect();
        let chain_gram_inv =
            rat_inverse(&chain.gram().matrix().to_rational()).expect("A6 is nondegenerate");

        // Curve octads: inf, 0 in K, 1 not in K, |K n K0| = 4 -- already in
        // lexicographic order because the octad list is sorted.
        let zero = Point::from_field(0).expect("fixed");
        let one = Point::from_field(1).expect("fixed");
        let k0 = named.k0.points();
        let curve_octads: Vec<Octad> = code
            .octads()
            .iter()
            .copied()
            .filter(|oct| {
                let pts = oct.points();
                pts.contains(Point::INFINITY)
                    && pts.contains(zero)
                    && !pts.contains(one)
                    && pts.intersection(k0).len() == 4
            })
            .collect();
        if curve_octads.len() != NUM_CURVES {
            return inconsistent(format!(
                "expected {NUM_CURVES} curve octads, found {}",
                curve_octads.len()
            ));
        }

        let curve_roots: Vec<LeechRoot> = curve_octads
            .iter()
            .map(|oct| {
                let mut xi = [0i64; 24];
                for p in oct.sorted_points() {
                    xi[p.rank()] = 2;
                }
                Ok(LeechRoot::from_lambda(LeechVector::new(code, xi)?))
            })
            .collect::<Result<_>>()?;

        // Orthogonality to the chain and the 0/1 pairing law.
        let mut adj = [[false; NUM_CURVES]; NUM_CURVES];
        for (i, r) in curve_roots.iter().enumerate() {
            for (k, c) in chain.roots().iter().enumerate() {
                let pairing = ii_inner(r.vector(), c.vector());
                if pairing != 0 {
                    return inconsistent(format!(
                        "curve root {} pairs {pairing} with chain node {}",
                        i + 1,
                        CHAIN_NODES[k]
                    ));
                }
            }
            for (j, s) in curve_roots.iter().enumerate().skip(i + 1) {
                let pairing = ii_inner(r.vector(), s.vector());
                let meet = curve_octads[i]
                    .points()
                    .intersection(curve_octads[j].points())
                    .len();
                if pairing != 2 - meet as i64 / 2 || !(pairing == 0 || pairing == 1) {
                    return inconsistent(format!(
                        "curve pairing <{},{}> = {pairing}, octad intersection {meet}",
                        i + 1,
                        j + 1
                    ));
                }
                adj[i][j] = pairing == 1;
                adj[j][i] = adj[i][j];
            }
        }
        let graph = CoxeterGraph::new(adj);

        // S_X = integer span of the 28 curve roots, echelonized.
        let rows: Vec<Vec<BigInt>> = curve_roots
            .iter()
            .map(|r| to_big(&r.vector().raw_coords()))
            .collect();
        let (basis, pivots) = hnf(&IntMat::from_rows(rows));
        if basis.nrows() != NS_RANK {
            return inconsistent(format!(
                "curve-root span has rank {}, expected {NS_RANK}",
                basis.nrows()
            ));
        }

        let mut gram_rows = Vec::with_capacity(NS_RANK);
        for i in 0..NS_RANK {
            let row: Vec<BigInt> = (0..NS_RANK)
                .map(|j| raw_inner_int(basis.row(i), basis.row(j)))
                .collect();
            gram_rows.push(row);
        }
        let gram = GramMatrix::new(IntMat::from_rows(gram_rows))?;
        let gram_inv = rat_inverse(&gram.matrix().to_rational()).expect("S_X is nondegenerate");

        let curves: Vec<Vec<BigInt>> = curve_roots
            .iter()
            .map(|r| {
                express_in_hnf(&basis, &pivots, &to_big(&r.vector().raw_coords())).ok_or_else(
                    || {
                        crate::Error::Inconsistency(
                            "curve root does not lie in the HNF span".into(),
                        )
                    },
                )
            })
            .collect::<Result<_>>()?;

        // w' = sum of the 28 curve classes; w'' = w - w' in the chain span.
        let mut w_prime = vec![BigInt::zero(); NS_RANK];
        for c in &curves {
            for (acc, x) in w_prime.iter_mut().zip(c) {
                *acc += x;
            }
        }
        let mut ns = NsLattice {
            chain,
            chain_rows,
            chain_gram_inv,
            curve_octads,
            curve_roots,
            basis,
            pivots,
            gram,
            gram_inv,
            curves,
            graph,
            w_prime,
            w_dprime: Vec::new(),
        };

        // Cross-check w' against the orthogonal projection of w.
        let (w_proj, w_chain) = ns.split_off_chain(&weyl_vector());
        let w_prime_coords = ns
            .express_rational(&w_proj)
            .ok_or_else(|| crate::Error::Inconsistency("w' outside S_X span".into()))?;
        let as_int: Option<Vec<BigInt>> = w_prime_coords
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect();
        match as_int {
            Some(v) if v == ns.w_prime => {}
            _ => return inconsistent("projection of the Weyl vector is not the curve sum"),
        }
        ns.w_dprime = w_chain;

        Ok(ns)
    }

    pub fn chain(&self) -> &A6Chain {
        &self.chain
    }

    pub fn curve_octads(&self) -> &[Octad] {
        &self.curve_octads
    }

    pub fn curve_roots(&self) -> &[LeechRoot] {
        &self.curve_roots
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &RatMat {
        &self.gram_inv
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    /// Curve classes in basis coordinates (0-based index).
    pub fn curves(&self) -> &[Vec<BigInt>] {
        &self.curves
    }

    /// `w'` in basis coordinates.
    pub fn w_prime(&self) -> &[BigInt] {
        &self.w_prime
    }

    /// `w''` as coefficients over the chain `[y, z, x, p, q, t]`.
    pub fn w_dprime_chain_coeffs(&self) -> &[BigRational] {
        &self.w_dprime
    }

    /// Exact pairing of two integral basis-coordinate vectors.
    pub fn inner_int(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        let gu = self.gram.matrix().mul_vec(u);
        gu.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Exact pairing of rational basis-coordinate vectors.
    pub fn inner_rat(&self, u: &[BigRational], v: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    acc += ui
                        * vj
                        * BigRational::from_integer(self.gram.matrix()[(i, j)].clone());
                }
            }
        }
        acc
    }

    /// Split `v` as `v' + v''` with `v'` orthogonal to the chain and `v''`
    /// in the rational chain span. Returns (`v'` in raw coordinates,
    /// chain coefficients of `v''`).
    fn split_off_chain(&self, v: &IIVector) -> (Vec<BigRational>, Vec<BigRational>) {
        let raw = to_big(&v.raw_coords());
        let pairings: Vec<BigRational> = self
            .chain_rows
            .iter()
            .map(|c| raw_inner(&raw, c))
            .collect();
        let coeffs = self.chain_gram_inv.mul_vec(&pairings);
        let mut proj: Vec<BigRational> = raw
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for (c, row) in coeffs.iter().zip(&self.chain_rows) {
            for (p, r) in proj.iter_mut().zip(row) {
                *p -= c * BigRational::from_integer(r.clone());
            }
        }
        (proj, coeffs)
    }

    /// Express a rational raw-coordinate vector in the S_X basis, if it lies
    /// in the rational span.
    fn express_rational(&self, raw: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut residual = raw.to_vec();
        let mut coeffs = Vec::with_capacity(NS_RANK);
        for (k, &pc) in self.pivots.iter().enumerate() {
            let c = &residual[pc] / BigRational::from_integer(self.basis[(k, pc)].clone());
            for j in 0..RAW_DIM {
                let sub = &c * BigRational::from_integer(self.basis[(k, j)].clone());
                residual[j] -= sub;
            }
            coeffs.push(c);
        }
        residual.iter().all(|x| x.is_zero()).then_some(coeffs)
    }

    /// Orthogonal projection of a II(1,25) vector to the rational span of
    /// S_X, in basis coordinates.
    pub fn project(&self, v: &IIVector) -> Vec<BigRational> {
        let (proj, _) = self.split_off_chain(v);
        self.express_rational(&proj)
            .expect("projection lies in the rational span of S_X")
    }
}
