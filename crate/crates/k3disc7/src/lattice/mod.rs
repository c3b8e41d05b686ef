//! Generic exact-arithmetic toolkit for even lattices.
//!
//! Gram matrices are integral and symmetric; vectors are exact rationals
//! with respect to a declared basis. Root lattices follow the
//! negative-definite convention: simple roots have norm -2, so the Gram of
//! an ADE lattice is the negated Cartan matrix.

pub mod mat;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::Integer;

pub use mat::{
    det, express_in_hnf, hnf, int_kernel, rat_inverse, rat_solve, signature, snf, IntMat, RatMat,
};

use crate::{invalid, Result};

/// Symmetric integral Gram matrix of a lattice basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix(IntMat);

impl GramMatrix {
    pub fn new(entries: IntMat) -> Result<GramMatrix> {
        if entries.nrows() != entries.ncols() {
            return invalid("Gram matrix must be square");
        }
        if !entries.is_symmetric() {
            return invalid("Gram matrix must be symmetric");
        }
        Ok(GramMatrix(entries))
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<GramMatrix> {
        GramMatrix::new(IntMat::from_i64_rows(rows))
    }

    pub fn rank(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &IntMat {
        &self.0
    }

    pub fn det(&self) -> BigInt {
        det(&self.0)
    }

    /// Even means every diagonal entry is even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.0[(i, i)].is_even())
    }

    pub fn signature(&self) -> (usize, usize, usize) {
        signature(&self.0.to_rational())
    }
}

/// The hyperbolic plane U.
pub fn hyperbolic_plane() -> GramMatrix {
    GramMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]).expect("fixed shape")
}

/// Kinds of irreducible root lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    A,
    D,
    E,
}

/// Negated Cartan matrix of an irreducible root lattice (norm -2 simple
/// roots). Node numbering: chains run 1..n; for D the last two nodes are the
/// fork tips attached to node n-2; for E the last node hangs off node 3 of
/// the chain.
pub fn root_lattice_gram(kind: RootKind, n: usize) -> Result<GramMatrix> {
    let valid_rank = match kind {
        RootKind::A => n >= 1,
        RootKind::D => n >= 4,
        RootKind::E => (6..=8).contains(&n),
    };
    if !valid_rank {
        return invalid(format!("no root lattice {kind:?}{n}"));
    }
    let mut m = IntMat::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = BigInt::from(-2);
    }
    let mut join = |i: usize, j: usize| {
        m[(i, j)] = BigInt::one();
        m[(j, i)] = BigInt::one();
    };
    match kind {
        RootKind::A => {
            for i in 0..n.saturating_sub(1) {
                join(i, i + 1);
            }
        }
        RootKind::D => {
            for i in 0..n - 3 {
                join(i, i + 1);
            }
            join(n - 3, n - 2);
            join(n - 3, n - 1);
        }
        RootKind::E => {
            for i in 0..n - 2 {
                join(i, i + 1);
            }
            join(2, n - 1);
        }
    }
    GramMatrix::new(m)
}

fn check_dims(v: &[BigRational], g: &GramMatrix) -> Result<()> {
    if v.len() != g.rank() {
        return invalid(format!(
            "vector length {} does not match lattice rank {}",
            v.len(),
            g.rank()
        ));
    }
    Ok(())
}

/// Exact inner product `u^T g v`.
pub fn inner(u: &[BigRational], v: &[BigRational], g: &GramMatrix) -> Result<BigRational> {
    check_dims(u, g)?;
    check_dims(v, g)?;
    let mut acc = BigRational::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() {
                acc += ui * vj * BigRational::from_integer(g.matrix()[(i, j)].clone());
            }
        }
    }
    Ok(acc)
}

pub fn to_rational_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect()
}

/// True iff `2r / <r,r>` pairs integrally with every basis vector, i.e. `r`
/// is a root of the lattice.
pub fn is_root(r: &[BigInt], g: &GramMatrix) -> Result<bool> {
    let rq = to_rational_vec(r);
    let norm = inner(&rq, &rq, g)?;
    if norm.is_zero() {
        return invalid("is_root is undefined for isotropic vectors");
    }
    let norm_int = norm.to_integer();
    // g r gives the pairings with the basis vectors.
    for i in 0..g.rank() {
        let pairing: BigInt = (0..g.rank()).map(|j| &g.matrix()[(i, j)] * &r[j]).sum();
        if !(BigInt::from(2) * pairing % &norm_int).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The reflection `x -> x - 2 <x,r>/<r,r> r`, defined for any non-isotropic
/// rational `r` (not only roots).
pub fn reflect(
    x: &[BigRational],
    r: &[BigRational],
    g: &GramMatrix,
) -> Result<Vec<BigRational>> {
    let norm = inner(r, r, g)?;
    if norm.is_zero() {
        return invalid("cannot reflect in an isotropic vector");
    }
    let factor = BigRational::from_integer(BigInt::from(2)) * inner(x, r, g)? / norm;
    Ok(x.iter()
        .zip(r)
        .map(|(xi, ri)| xi - &factor * ri)
        .collect())
}

/// The discriminant group `L-dual / L` with the values of the discriminant
/// quadratic form on its cyclic generators.
#[derive(Debug, Clone)]
pub struct DiscriminantForm {
    /// Cyclic factor orders (> 1), ascending under divisibility.
    pub factor_orders: Vec<BigInt>,
    /// A generator of each factor, as a rational vector in basis coordinates.
    pub generators: Vec<Vec<BigRational>>,
    /// `q(generator) mod 2Z`, normalized into `[0, 2)`.
    pub q_values: Vec<BigRational>,
}

/// Normalize a rational into `[0, 2)` modulo 2Z.
pub fn normalize_mod_2z(q: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let k = (q / &two).floor();
    q - k * two
}

impl DiscriminantForm {
    /// Group order = product of factor orders.
    pub fn order(&self) -> BigInt {
        self.factor_orders.iter().product()
    }

    /// For a cyclic group, the multiset `{q(k * gen) : k in 0..order}`.
    ///
    /// This set is independent of the chosen generator, which makes it the
    /// right invariant to compare against a form given only up to
    /// (anti-)isometry.
    pub fn cyclic_value_multiset(&self) -> Result<Vec<BigRational>> {
        if self.factor_orders.len() != 1 {
            return invalid("value multiset is implemented for cyclic groups only");
        }
        let order = self.factor_orders[0]
            .to_string()
            .parse::<u64>()
            .map_err(|_| crate::Error::InvalidArgument("order too large".into()))?;
        let q1 = &self.q_values[0];
        let mut values: Vec<BigRational> = (0..order)
            .map(|k| {
                let k2 = BigRational::from_integer(BigInt::from(k * k));
                normalize_mod_2z(&(k2 * q1))
            })
            .collect();
        values.sort();
        Ok(values)
    }
}

/// Discriminant form of an even nondegenerate Gram matrix via Smith normal
/// form of `g`.
pub fn discriminant_form(g: &GramMatrix) -> Result<DiscriminantForm> {
    if !g.is_even() {
        return invalid("discriminant form requires an even lattice");
    }
    let d = g.det();
    if d.is_zero() {
        return invalid("discriminant form requires a nondegenerate lattice");
    }
    let s = snf(g.matrix());
    let g_inv = rat_inverse(&g.matrix().to_rational()).expect("nondegenerate");
    let u_inv = rat_inverse(&s.u.to_rational())
        .expect("unimodular")
        .to_integer()
        .expect("inverse of unimodular matrix is integral");

    let mut factor_orders = Vec::new();
    let mut generators = Vec::new();
    let mut q_values = Vec::new();
    for (i, order) in s.diagonal().into_iter().enumerate() {
        if order <= BigInt::one() {
            continue;
        }
        // Generator of the i-th cyclic factor of Z^n / g Z^n, pulled back to
        // L-dual inside L x Q: x = g^-1 u^-1 e_i.
        let y: Vec<BigRational> = (0..g.rank())
            .map(|r| BigRational::from_integer(u_inv[(r, i)].clone()))
            .collect();
        let x = g_inv.mul_vec(&y);
        let q = inner(&x, &x, g)?;
        factor_orders.push(order);
        q_values.push(normalize_mod_2z(&q));
        generators.push(x);
    }
    Ok(DiscriminantForm {
        factor_orders,
        generators,
        q_values,
    })
}

/// Integral basis (rows) of the orthogonal complement of the span of
/// `basis_rows` inside the ambient lattice. The result is saturated.
pub fn orthogonal_complement(basis_rows: &IntMat, ambient_gram: &GramMatrix) -> Result<IntMat> {
    if basis_rows.ncols() != ambient_gram.rank() {
        return invalid("basis vectors do not match the ambient rank");
    }
    let (_, pivots) = hnf(basis_rows);
    if pivots.len() != basis_rows.nrows() {
        return invalid("complement requires linearly independent input vectors");
    }
    // x is in the complement iff (B g) x = 0.
    let constraints = basis_rows.mul(ambient_gram.matrix());
    Ok(int_kernel(&constraints))
}

/// Index of a finite-index sublattice, given the rows of its basis in the
/// coordinates of the overlattice.
///
/// Checks that the supplied inclusion really is one (Gram compatibility),
/// then returns `|det|` of the inclusion matrix, cross-checked against the
/// determinant ratio of the two Gram matrices.
pub fn overlattice_index(
    inclusion_rows: &IntMat,
    sub_gram: &GramMatrix,
    super_gram: &GramMatrix,
) -> Result<BigInt> {
    let n = super_gram.rank();
    if inclusion_rows.nrows() != n || inclusion_rows.ncols() != n || sub_gram.rank() != n {
        return invalid("overlattice index requires equal ranks");
    }
    let recomputed = inclusion_rows
        .mul(super_gram.matrix())
        .mul(&inclusion_rows.transpose());
    if &recomputed != sub_gram.matrix() {
        return invalid("inclusion rows do not reproduce the sublattice Gram matrix");
    }
    let index = det(inclusion_rows).abs();
    if index.is_zero() {
        return invalid("inclusion rows are singular");
    }
    let ratio = sub_gram.det() * super_gram.det().signum();
    debug_assert_eq!(&index * &index * super_gram.det().abs(), ratio.abs());
    Ok(index)
}
