//! Exact integer and rational matrix kernel.
//!
//! Everything here is deterministic: pivot choices break ties on smallest
//! absolute value, then lowest row/column index. No floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::Integer;

/// Dense matrix over the big integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>()
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_rational(&self) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * &self[(src, j)];
            self[(dst, j)] += add;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * &self[(i, src)];
            self[(i, dst)] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> RatMat {
        RatMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMat {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> RatMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<BigRational>()
            })
            .collect()
    }

    /// Integer matrix if every entry is integral.
    pub fn to_integer(&self) -> Option<IntMat> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            if !x.is_integer() {
                return None;
            }
            data.push(x.to_integer());
        }
        Some(IntMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant by the Bareiss fraction-free algorithm.
pub fn det(m: &IntMat) -> BigInt {
    assert_eq!(m.nrows(), m.ncols(), "determinant needs a square matrix");
    let n = m.nrows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
            match swap {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[(i, j)] = q;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Row Hermite normal form.
///
/// Returns the echelon matrix restricted to its nonzero rows together with
/// the pivot column of each row. Pivots are positive and entries above each
/// pivot are reduced into `[0, pivot)`.
pub fn hnf(m: &IntMat) -> (IntMat, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // Smallest nonzero |entry| in column c at or below row r.
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !a[(i, c)].is_zero()
                    && best.is_none_or(|b| a[(i, c)].abs() < a[(b, c)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            let mut clean = true;
            for i in r + 1..rows {
                if !a[(i, c)].is_zero() {
                    let q = -(&a[(i, c)] / &a[(r, c)]);
                    a.add_row_multiple(i, r, &q);
                    if !a[(i, c)].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            if !a[(i, c)].is_zero() {
                let q = -a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row_multiple(i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let kept = IntMat::from_rows((0..r).map(|i| a.row(i).to_vec()).collect());
    (kept, pivots)
}

/// Express `v` as an integer combination of HNF basis rows, if possible.
pub fn express_in_hnf(basis: &IntMat, pivots: &[usize], v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(basis.ncols(), v.len());
    assert_eq!(basis.nrows(), pivots.len());
    let mut residual = v.to_vec();
    let mut coeffs = Vec::with_capacity(basis.nrows());
    for (k, &pc) in pivots.iter().enumerate() {
        let (q, r) = residual[pc].div_rem(&basis[(k, pc)]);
        if !r.is_zero() {
            return None;
        }
        for j in 0..basis.ncols() {
            let sub = &q * &basis[(k, j)];
            residual[j] -= sub;
        }
        coeffs.push(q);
    }
    if residual.iter().all(|x| x.is_zero()) {
        Some(coeffs)
    } else {
        None
    }
}

/// Smith normal form `u * a * v = d` with unimodular `u`, `v`.
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl Snf {
    /// Diagonal entries of `d`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

pub fn snf(m: &IntMat) -> Snf {
    let mut d = m.clone();
    let (rows, cols) = (d.nrows(), d.ncols());
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        'outer: loop {
            // Pick the smallest-magnitude nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            // Clear column t below the pivot.
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let q = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        continue 'outer;
                    }
                }
            }
            // Clear row t to the right of the pivot.
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let q = -(&d[(t, j)] / &d[(t, t)]);
                    d.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        continue 'outer;
                    }
                }
            }
            // Divisibility: pivot must divide the whole trailing block.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        let one = BigInt::one();
                        d.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, d, v }
}

/// Basis (as rows) of the integer kernel `{x : m * x = 0}`.
///
/// The output spans a saturated sublattice: its SNF invariant factors are
/// all 1 because the basis vectors are unimodular-matrix columns.
pub fn int_kernel(m: &IntMat) -> IntMat {
    let s = snf(m);
    let n = m.ncols();
    let rank = s
        .diagonal()
        .iter()
        .filter(|x| !x.is_zero())
        .count();
    let mut rows = Vec::new();
    for j in rank..n {
        rows.push((0..n).map(|i| s.v[(i, j)].clone()).collect());
    }
    let kernel = IntMat::from_rows(rows);
    if kernel.nrows() == 0 {
        return IntMat::zeros(0, n);
    }
    // Canonicalize.
    hnf(&kernel).0
}

/// Solve `a * x = b` for square rational `a`; `None` if singular.
pub fn rat_solve(a: &RatMat, b: &RatMat) -> Option<RatMat> {
    assert_eq!(a.nrows(), a.ncols());
    assert_eq!(a.nrows(), b.nrows());
    let n = a.nrows();
    let m = b.ncols();
    let mut work = RatMat::zeros(n, n + m);
    for i in 0..n {
        for j in 0..n {
            work[(i, j)] = a[(i, j)].clone();
        }
        for j in 0..m {
            work[(i, n + j)] = b[(i, j)].clone();
        }
    }
    for col in 0..n {
        let pivot = (col..n).find(|&i| !work[(i, col)].is_zero())?;
        for j in 0..n + m {
            let tmp = work[(pivot, j)].clone();
            work[(pivot, j)] = work[(col, j)].clone();
            work[(col, j)] = tmp;
        }
        let inv = work[(col, col)].recip();
        for j in col..n + m {
            let scaled = &work[(col, j)] * &inv;
            work[(col, j)] = scaled;
        }
        for i in 0..n {
            if i != col && !work[(i, col)].is_zero() {
                let factor = work[(i, col)].clone();
                for j in col..n + m {
                    let sub = &factor * &work[(col, j)];
                    work[(i, j)] -= sub;
                }
            }
        }
    }
    let mut x = RatMat::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            x[(i, j)] = work[(i, n + j)].clone();
        }
    }
    Some(x)
}

pub fn rat_inverse(a: &RatMat) -> Option<RatMat> {
    rat_solve(a, &RatMat::identity(a.nrows()))
}

/// Signature `(positive, negative, zero)` of a symmetric rational matrix,
/// by congruence diagonalization (Sylvester's law of inertia).
pub fn signature(m: &RatMat) -> (usize, usize, usize) {
    assert_eq!(m.nrows(), m.ncols());
    assert!(
        (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| m[(i, j)] == m[(j, i)])),
        "signature needs a symmetric matrix"
    );
    let n = m.nrows();
    let mut a = m.clone();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    for k in 0..n {
        if a[(k, k)].is_zero() {
            // Prefer a later index with nonzero diagonal.
            if let Some(i) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                // Symmetric swap of basis vectors k and i.
                for j in 0..n {
                    let tmp = a[(k, j)].clone();
                    a[(k, j)] = a[(i, j)].clone();
                    a[(i, j)] = tmp;
                }
                for j in 0..n {
                    let tmp = a[(j, k)].clone();
                    a[(j, k)] = a[(j, i)].clone();
                    a[(j, i)] = tmp;
                }
            } else if let Some(i) = (k + 1..n).find(|&i| !a[(k, i)].is_zero()) {
                // e_k += e_i turns the diagonal entry into 2*a[k][i].
                for j in 0..n {
                    let add = a[(i, j)].clone();
                    a[(k, j)] += add;
                }
                for j in 0..n {
                    let add = a[(j, i)].clone();
                    a[(j, k)] += add;
                }
            } else {
                zero += 1;
                continue;
            }
        }
        let pivot = a[(k, k)].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if !a[(i, k)].is_zero() {
                let factor = &a[(i, k)] / &pivot;
                for j in 0..n {
                    let sub = &factor * &a[(k, j)];
                    a[(i, j)] -= sub;
                }
                for j in 0..n {
                    let sub = &factor * &a[(j, k)];
                    a[(j, i)] -= sub;
                }
            }
        }
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_i64_rows(rows)
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det(&m(&[vec![2, 1], vec![1, 4]])), BigInt::from(7));
        assert_eq!(det(&m(&[vec![0, 1], vec![1, 0]])), BigInt::from(-1));
        assert_eq!(det(&m(&[vec![1, 2], vec![2, 4]])), BigInt::zero());
    }

    #[test]
    fn hnf_rank_and_membership() {
        let a = m(&[vec![2, 0], vec![0, 3], vec![2, 3]]);
        let (h, pivots) = hnf(&a);
        assert_eq!(h.nrows(), 2);
        assert_eq!(pivots, vec![0, 1]);
        let v = vec![BigInt::from(4), BigInt::from(9)];
        let coeffs = express_in_hnf(&h, &pivots, &v).unwrap();
        let back = h.transpose().mul_vec(&coeffs);
        assert_eq!(back, v);
        // (1, 1) is not in the row lattice of a.
        assert!(express_in_hnf(&h, &pivots, &[BigInt::one(), BigInt::one()]).is_none());
    }

    #[test]
    fn snf_diagonal_of_gram_2114() {
        let a = m(&[vec![2, 1], vec![1, 4]]);
        let s = snf(&a);
        assert_eq!(s.diagonal(), vec![BigInt::one(), BigInt::from(7)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(det(&s.u).abs(), BigInt::one());
        assert_eq!(det(&s.v).abs(), BigInt::one());
    }

    #[test]
    fn kernel_is_saturated() {
        let a = m(&[vec![2, 4, 6]]);
        let k = int_kernel(&a);
        assert_eq!(k.nrows(), 2);
        // Saturation: the kernel basis has trivial invariant factors.
        let s = snf(&k);
        assert!(s.diagonal().iter().all(|x| *x == BigInt::one()));
        for row in k.rows_vec() {
            let img = a.mul_vec(&row);
            assert!(img.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rational_inverse_roundtrip() {
        let a = m(&[vec![2, 1], vec![1, 4]]).to_rational();
        let inv = rat_inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), RatMat::identity(2));
        let singular = m(&[vec![1, 2], vec![2, 4]]).to_rational();
        assert!(rat_inverse(&singular).is_none());
    }

    #[test]
    fn signature_handles_hyperbolic_plane() {
        let u = m(&[vec![0, 1], vec![1, 0]]).to_rational();
        assert_eq!(signature(&u), (1, 1, 0));
        let pos = m(&[vec![2, 1], vec![1, 4]]).to_rational();
        assert_eq!(signature(&pos), (2, 0, 0));
        let degenerate = m(&[vec![1, 1], vec![1, 1]]).to_rational();
        assert_eq!(signature(&degenerate), (1, 0, 1));
    }
}
