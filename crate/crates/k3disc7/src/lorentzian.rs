//! The even unimodular Lorentzian lattice II(1,25) = U + Leech.
//!
//! Vectors are written `(m, n; lambda)` with `(m, n)` in the hyperbolic
//! plane and `lambda` in the Leech lattice, so that
//! `<(m,n;l),(m',n';l')> = m n' + n m' + <l, l'>`. A Leech root is the
//! norm -2 vector `(-l^2/2 - 1, 1; l)`; every Leech root pairs to 1 with
//! the Weyl vector `w = (1, 0; 0)`, which is why the chamber cut out by the
//! Leech roots has `w` as its Weyl vector.

use crate::leech::{leech_inner, LeechVector};

/// A lattice vector `(m, n; lambda)` of II(1,25).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IIVector {
    pub m: i64,
    pub n: i64,
    pub lambda: LeechVector,
}

impl IIVector {
    pub fn new(m: i64, n: i64, lambda: LeechVector) -> IIVector {
        IIVector { m, n, lambda }
    }

    pub fn norm(&self) -> i64 {
        ii_inner(self, self)
    }

    /// Coordinates `(m, n, xi_inf, xi_0, ..., xi_22)` as one integer row.
    pub fn raw_coords(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(26);
        v.push(self.m);
        v.push(self.n);
        v.extend_from_slice(self.lambda.coords());
        v
    }
}

/// Hyperbolic-plane pairing plus Leech pairing; always integral on lattice
/// vectors.
pub fn ii_inner(u: &IIVector, v: &IIVector) -> i64 {
    u.m * v.n + u.n * v.m + leech_inner(&u.lambda, &v.lambda)
}

/// The Weyl vector `(1, 0; 0)` of the chamber cut out by the Leech roots.
pub fn weyl_vector() -> IIVector {
    IIVector::new(1, 0, LeechVector::ZERO)
}

/// A Leech root: the norm -2 vector `(-lambda^2/2 - 1, 1; lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LeechRoot(IIVector);

impl LeechRoot {
    /// The Leech root attached to a lattice vector.
    pub fn from_lambda(lambda: LeechVector) -> LeechRoot {
        let norm = lambda.norm();
        debug_assert!(norm % 2 == 0);
        let root = IIVector::new(-norm / 2 - 1, 1, lambda);
        debug_assert_eq!(ii_inner(&root, &root), -2);
        debug_assert_eq!(ii_inner(&weyl_vector(), &root), 1);
        LeechRoot(root)
    }

    pub fn vector(&self) -> &IIVector {
        &self.0
    }

    pub fn lambda(&self) -> &LeechVector {
        &self.0.lambda
    }
}

/// Pairing of two Leech roots, cross-checked against the closed form
/// `<r1, r2> = -2 - (lambda1 - lambda2)^2 / 2`.
pub fn leech_root_pair(r1: &LeechRoot, r2: &LeechRoot) -> i64 {
    let direct = ii_inner(r1.vector(), r2.vector());
    let diff = r1.lambda().sub(r2.lambda());
    let by_formula = -2 - diff.norm() / 2;
    assert_eq!(
        direct, by_formula,
        "Leech-root pairing disagrees with the lambda-difference formula"
    );
    direct
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golay::GolayCode;
    use crate::leech::NamedVectors;

    fn named() -> NamedVectors {
        NamedVectors::new(GolayCode::shared()).unwrap()
    }

    #[test]
    fn named_leech_roots_have_expected_u_components() {
        let nv = named();
        assert_eq!(LeechRoot::from_lambda(nv.z).vector(), &IIVector::new(-1, 1, nv.z));
        assert_eq!(LeechRoot::from_lambda(nv.p).vector(), &IIVector::new(1, 1, nv.p));
        assert_eq!(LeechRoot::from_lambda(nv.q).vector(), &IIVector::new(1, 1, nv.q));
        assert_eq!(LeechRoot::from_lambda(nv.y).vector(), &IIVector::new(2, 1, nv.y));
    }

    #[test]
    fn weyl_vector_is_isotropic_and_pairs_one_with_roots() {
        let w = weyl_vector();
        assert_eq!(w.norm(), 0);
        let nv = named();
        for lambda in [nv.y, nv.z, nv.x, nv.p, nv.q, nv.t] {
            let r = LeechRoot::from_lambda(lambda);
            assert_eq!(ii_inner(&w, r.vector()), 1);
            assert_eq!(r.vector().norm(), -2);
        }
    }

    #[test]
    fn chain_adjacency_samples() {
        let nv = named();
        let y = LeechRoot::from_lambda(nv.y);
        let z = LeechRoot::from_lambda(nv.z);
        let p = LeechRoot::from_lambda(nv.p);
        let q = LeechRoot::from_lambda(nv.q);
        assert_eq!(ii_inner(y.vector(), z.vector()), 1);
        assert_eq!(leech_root_pair(&p, &q), 1);
        assert_eq!(leech_root_pair(&y, &y), -2);
    }

    #[test]
    fn curve_root_pairs_lie_in_zero_one() {
        // Roots from doubled octads containing {inf, 0}: pairings are
        // 2 - |K1 n K2| / 2 which lands in {0, 1}.
        let code = GolayCode::shared();
        let roots: Vec<LeechRoot> = code
            .octads()
            .iter()
            .filter(|o| {
                let pts = o.points();
                pts.contains(crate::golay::Point::INFINITY)
                    && pts.contains(crate::golay::Point::from_field(0).unwrap())
            })
            .take(20)
            .map(|o| {
                let mut xi = [0i64; 24];
                for p in o.sorted_points() {
                    xi[p.rank()] = 2;
                }
                LeechRoot::from_lambda(LeechVector::new(code, xi).unwrap())
            })
            .collect();
        for (i, a) in roots.iter().enumerate() {
            for b in roots.iter().skip(i + 1) {
                let pairing = leech_root_pair(a, b);
                assert!(pairing == 0 || pairing == 1, "got {pairing}");
            }
        }
    }
}
