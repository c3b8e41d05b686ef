//! The Leech lattice as 24-coordinate integer vectors.
//!
//! A vector `(xi_inf, xi_0, ..., xi_22)` belongs to the lattice iff
//!
//! 1. all coordinates share one parity `m`,
//! 2. for every residue `n` mod 4, `{i : xi_i = n mod 4}` is a C-set,
//! 3. the coordinate sum is `4m` mod 8,
//!
//! and the bilinear form is `<xi, eta> = -sum(xi_i eta_i) / 8` (negative
//! definite). Coordinates are stored in the canonical point order, `inf`
//! first. The module never needs a basis: every vector used downstream comes
//! from the closed-form families `2 nu_K`, `nu_Omega - 4 nu_k` and their
//! octad-twisted variants.

use crate::golay::{GolayCode, Octad, Point, PointSet};
use crate::{invalid, Result};

/// A validated element of the Leech lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeechVector {
    xi: [i64; 24],
}

/// Indicator vector of a subset of Omega (generally not a lattice element).
pub fn nu(alpha: PointSet) -> [i64; 24] {
    let mut v = [0i64; 24];
    for p in alpha.sorted_points() {
        v[p.rank()] = 1;
    }
    v
}

/// Check the three membership conditions.
pub fn is_leech(code: &GolayCode, xi: &[i64; 24]) -> bool {
    let m = xi[0].rem_euclid(2);
    if xi.iter().any(|&x| x.rem_euclid(2) != m) {
        return false;
    }
    for n in 0..4 {
        let mut class = PointSet::EMPTY;
        for (rank, &x) in xi.iter().enumerate() {
            if x.rem_euclid(4) == n {
                class.insert(Point::from_rank(rank));
            }
        }
        if !code.is_c_set(class) {
            return false;
        }
    }
    let sum: i64 = xi.iter().sum();
    (sum - 4 * m).rem_euclid(8) == 0
}

impl LeechVector {
    pub const ZERO: LeechVector = LeechVector { xi: [0; 24] };

    /// Validated constructor; raw tuples only enter the lattice through here.
    pub fn new(code: &GolayCode, xi: [i64; 24]) -> Result<LeechVector> {
        if !is_leech(code, &xi) {
            return invalid("coordinates fail the Leech membership conditions");
        }
        Ok(LeechVector { xi })
    }

    pub fn coords(&self) -> &[i64; 24] {
        &self.xi
    }

    pub fn coord(&self, p: Point) -> i64 {
        self.xi[p.rank()]
    }

    /// `<self, self>`, always an even non-positive integer.
    pub fn norm(&self) -> i64 {
        leech_inner(self, self)
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &LeechVector) -> LeechVector {
        let mut xi = [0i64; 24];
        for i in 0..24 {
            xi[i] = self.xi[i] + other.xi[i];
        }
        // Lattice closure: no re-validation needed, but it is cheap to keep
        // the invariant honest in debug builds.
        debug_assert!(is_leech(GolayCode::shared(), &xi));
        LeechVector { xi }
    }

    pub fn sub(&self, other: &LeechVector) -> LeechVector {
        let mut xi = [0i64; 24];
        for i in 0..24 {
            xi[i] = self.xi[i] - other.xi[i];
        }
        debug_assert!(is_leech(GolayCode::shared(), &xi));
        LeechVector { xi }
    }
}

/// `-sum(xi_i eta_i)/8`; integral on lattice vectors, asserted.
pub fn leech_inner(a: &LeechVector, b: &LeechVector) -> i64 {
    let dot: i64 = a.xi.iter().zip(b.xi.iter()).map(|(x, y)| x * y).sum();
    assert!(dot % 8 == 0, "Leech pairing must be integral, got dot {dot}");
    -dot / 8
}

/// The six named lattice vectors anchoring the A6 chain, plus the reference
/// octad `K0 = {0 2 3 4 5 15 20 22}`.
#[derive(Debug, Clone)]
pub struct NamedVectors {
    pub y: LeechVector,
    pub z: LeechVector,
    pub x: LeechVector,
    pub p: LeechVector,
    pub q: LeechVector,
    pub t: LeechVector,
    pub k0: Octad,
}

/// `K0` as a point set.
pub fn k0_points() -> PointSet {
    let pts: Vec<Point> = [0u8, 2, 3, 4, 5, 15, 20, 22]
        .iter()
        .map(|&i| Point::from_field(i).expect("fixed data"))
        .collect();
    PointSet::from_points(&pts)
}

impl NamedVectors {
    pub fn new(code: &GolayCode) -> Result<NamedVectors> {
        let k0 = Octad::new(k0_points())?;
        if !code.contains_octad(&k0) {
            return crate::inconsistent("K0 is not an octad of the Steiner system");
        }
        let omega = nu(PointSet::OMEGA);
        let point = |i: u8| Point::from_field(i).expect("fixed data");

        let mut y = omega;
        y[point(0).rank()] += 4;
        let mut x = omega;
        x[Point::INFINITY.rank()] += 4;
        let mut p = [0i64; 24];
        for pt in k0.sorted_points() {
            p[pt.rank()] = 2;
        }
        let mut q = [0i64; 24];
        q[Point::INFINITY.rank()] = 4;
        q[point(0).rank()] = 4;
        let mut t = omega;
        t[point(1).rank()] -= 4;

        Ok(NamedVectors {
            y: LeechVector::new(code, y)?,
            z: LeechVector::ZERO,
            x: LeechVector::new(code, x)?,
            p: LeechVector::new(code, p)?,
            q: LeechVector::new(code, q)?,
            t: LeechVector::new(code, t)?,
            k0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code() -> &'static GolayCode {
        GolayCode::shared()
    }

    #[test]
    fn named_vectors_are_lattice_elements() {
        let named = NamedVectors::new(code()).unwrap();
        for v in [&named.y, &named.z, &named.x, &named.p, &named.q, &named.t] {
            assert!(is_leech(code(), v.coords()));
        }
        assert_eq!(named.z, LeechVector::ZERO);
    }

    #[test]
    fn t_vector_coordinates() {
        let named = NamedVectors::new(code()).unwrap();
        // nu_Omega - 4 nu_1: all ones except -3 at the point 1.
        let one = Point::from_field(1).unwrap();
        for rank in 0..24 {
            let expected = if rank == one.rank() { -3 } else { 1 };
            assert_eq!(named.t.coords()[rank], expected);
        }
    }

    #[test]
    fn doubled_non_c_set_is_rejected() {
        // {0,1,2,3} is not a C-set, so 2 nu on it fails condition 2.
        let mut xi = [0i64; 24];
        for i in 0..4u8 {
            xi[Point::from_field(i).unwrap().rank()] = 2;
        }
        assert!(!is_leech(code(), &xi));
        assert!(LeechVector::new(code(), xi).is_err());
    }

    #[test]
    fn zero_vector_is_in_the_lattice() {
        assert!(is_leech(code(), &[0; 24]));
    }

    #[test]
    fn doubled_octad_norms() {
        for oct in code().octads().iter().step_by(50) {
            let mut xi = [0i64; 24];
            for p in oct.sorted_points() {
                xi[p.rank()] = 2;
            }
            let v = LeechVector::new(code(), xi).unwrap();
            assert_eq!(v.norm(), -4);
        }
    }

    #[test]
    fn named_inner_products() {
        let named = NamedVectors::new(code()).unwrap();
        assert_eq!(leech_inner(&named.q, &named.q), -4);
        assert_eq!(leech_inner(&named.z, &named.y), 0);
        assert_eq!(named.y.norm(), -6);
        assert_eq!(named.x.norm(), -6);
        assert_eq!(named.p.norm(), -4);
        assert_eq!(named.t.norm(), -4);
    }

    #[test]
    fn nu_indicator_shapes() {
        assert_eq!(nu(PointSet::EMPTY), [0i64; 24]);
        assert_eq!(nu(PointSet::OMEGA), [1i64; 24]);
        let k0 = nu(k0_points());
        let expected_ranks: Vec<usize> = [0u8, 2, 3, 4, 5, 15, 20, 22]
            .iter()
            .map(|&i| Point::from_field(i).unwrap().rank())
            .collect();
        for rank in 0..24 {
            assert_eq!(k0[rank], expected_ranks.contains(&rank) as i64);
        }
    }

    #[test]
    fn closed_form_families_have_norm_minus_four() {
        // Exhaustive over both one-parameter families: doubled octads and
        // nu_Omega - 4 nu_k. Neither contains a (-2)-vector.
        for oct in code().octads() {
            let mut xi = [0i64; 24];
            for p in oct.sorted_points() {
                xi[p.rank()] = 2;
            }
            assert_eq!(LeechVector::new(code(), xi).unwrap().norm(), -4);
        }
        for rank in 0..24 {
            let mut xi = [1i64; 24];
            xi[rank] -= 4;
            assert_eq!(LeechVector::new(code(), xi).unwrap().norm(), -4);
        }
    }

    #[test]
    fn random_family_combinations_never_reach_norm_minus_two() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(24);
        let octads = code().octads();
        for _ in 0..500 {
            let mut xi = [0i64; 24];
            for _ in 0..rng.gen_range(1..=4) {
                let oct = octads[rng.gen_range(0..octads.len())];
                let sign = if rng.gen_bool(0.5) { 2 } else { -2 };
                for p in oct.sorted_points() {
                    xi[p.rank()] += sign;
                }
            }
            if rng.gen_bool(0.5) {
                let k = rng.gen_range(0..24);
                for (rank, c) in xi.iter_mut().enumerate() {
                    *c += 1 - if rank == k { 4 } else { 0 };
                }
            }
            let v = LeechVector::new(code(), xi).expect("lattice closed under sums");
            if !v.is_zero() {
                assert!(v.norm() <= -4, "norm {} at {:?}", v.norm(), v.coords());
            }
        }
    }

    #[test]
    fn family_combinations_stay_in_the_lattice_with_norm_at_most_minus_four() {
        // Sums and differences of family vectors are lattice vectors; none of
        // them may reach norm -2.
        let named = NamedVectors::new(code()).unwrap();
        let family = [named.y, named.x, named.p, named.q, named.t];
        for (i, a) in family.iter().enumerate() {
            for b in &family[i..] {
                for v in [a.add(b), a.sub(b)] {
                    assert!(is_leech(code(), v.coords()));
                    if !v.is_zero() {
                        let norm = v.norm();
                        assert!(norm <= -4, "norm {norm} too small in magnitude");
                        assert!(norm % 2 == 0);
                    }
                }
            }
        }
    }
}
