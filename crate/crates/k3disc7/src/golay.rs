//! The Steiner system S(5,8,24) and the binary Golay code.
//!
//! The point set is the projective line over F23,
//! `Omega = {inf, 0, 1, ..., 22}`. The Steiner system is generated as the
//! PSL2(23)-orbit of the base octad `{inf 0 1 3 12 15 21 22}` under the two
//! maps `x -> x + 1` and `x -> -1/x`; the 759 octads span the 12-dimensional
//! Golay code over F2. Supports of codewords ("C-sets") are the combinatorial
//! backbone of every Leech lattice membership test downstream.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::{invalid, Result};

/// A point of `Omega = {inf, 0, ..., 22}`.
///
/// Internally `inf` is stored as index 23 so that the field elements keep
/// their natural indices. The canonical display/sort order puts `inf` first:
/// `inf, 0, 1, ..., 22`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point(u8);

impl Point {
    pub const INFINITY: Point = Point(23);

    /// Point from its internal index (0..=23, where 23 encodes `inf`).
    pub fn from_index(index: u8) -> Result<Point> {
        if index > 23 {
            return invalid(format!("point index {index} out of range 0..=23"));
        }
        Ok(Point(index))
    }

    /// Point from a field element of F23.
    pub fn from_field(x: u8) -> Result<Point> {
        if x > 22 {
            return invalid(format!("field element {x} out of range 0..=22"));
        }
        Ok(Point(x))
    }

    /// Internal index: 0..=22 for field elements, 23 for `inf`.
    pub fn index(self) -> u8 {
        self.0
    }

    /// Position in the canonical order `inf, 0, 1, ..., 22`.
    ///
    /// This is also the coordinate slot used by 24-dimensional vectors.
    pub fn rank(self) -> usize {
        if self.0 == 23 {
            0
        } else {
            self.0 as usize + 1
        }
    }

    /// Inverse of [`Point::rank`].
    pub fn from_rank(rank: usize) -> Point {
        assert!(rank < 24, "rank {rank} out of range");
        if rank == 0 {
            Point(23)
        } else {
            Point(rank as u8 - 1)
        }
    }

    pub fn is_infinity(self) -> bool {
        self.0 == 23
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A subset of `Omega` as a 24-bit mask (bit = internal point index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PointSet(u32);

pub const OMEGA_MASK: u32 = (1 << 24) - 1;

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);
    pub const OMEGA: PointSet = PointSet(OMEGA_MASK);

    pub fn from_mask(mask: u32) -> Result<PointSet> {
        if mask & !OMEGA_MASK != 0 {
            return invalid("point-set mask has bits outside Omega");
        }
        Ok(PointSet(mask))
    }

    pub fn from_points(points: &[Point]) -> PointSet {
        let mut mask = 0u32;
        for p in points {
            mask |= 1 << p.index();
        }
        PointSet(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: Point) -> bool {
        self.0 & (1 << p.index()) != 0
    }

    pub fn insert(&mut self, p: Point) {
        self.0 |= 1 << p.index();
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn symmetric_difference(self, other: PointSet) -> PointSet {
        PointSet(self.0 ^ other.0)
    }

    pub fn complement(self) -> PointSet {
        PointSet(!self.0 & OMEGA_MASK)
    }

    pub fn is_subset_of(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Points in canonical order (`inf` first, then 0..22).
    pub fn sorted_points(self) -> Vec<Point> {
        let mut pts = Vec::with_capacity(self.len());
        if self.0 & (1 << 23) != 0 {
            pts.push(Point::INFINITY);
        }
        for i in 0..23 {
            if self.0 & (1 << i) != 0 {
                pts.push(Point(i));
            }
        }
        pts
    }

    /// Apply a point permutation, returning the image set.
    pub fn map(self, f: impl Fn(Point) -> Point) -> PointSet {
        let mut mask = 0u32;
        for i in 0..24u8 {
            if self.0 & (1 << i) != 0 {
                mask |= 1 << f(Point(i)).index();
            }
        }
        PointSet(mask)
    }
}

impl Ord for PointSet {
    /// Lexicographic on the canonically sorted point lists.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sorted_points().cmp(&other.sorted_points())
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.sorted_points().iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", names.join(" "))
    }
}

/// An 8-element block of the Steiner system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Octad(PointSet);

impl Octad {
    pub fn new(points: PointSet) -> Result<Octad> {
        if points.len() != 8 {
            return invalid(format!("octad must have 8 points, got {}", points.len()));
        }
        Ok(Octad(points))
    }

    pub fn points(self) -> PointSet {
        self.0
    }

    pub fn sorted_points(self) -> Vec<Point> {
        self.0.sorted_points()
    }
}

impl fmt::Display for Octad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Quadratic residues modulo 23.
const SQUARES_MOD_23: [u8; 11] = [1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18];

/// A fractional-linear map `x -> (ax+b)/(cx+d)` on `Omega` with `ad - bc`
/// a nonzero square modulo 23, i.e. an element of PSL2(23).
#[derive(Debug, Clone, Copy)]
pub struct Psl23Map {
    a: u8,
    b: u8,
    c: u8,
    d: u8,
}

fn inv_mod_23(x: u8) -> u8 {
    // 23 is prime; x^21 = x^-1 by Fermat. Table-free is fine at this scale.
    let mut acc = 1u32;
    for _ in 0..21 {
        acc = acc * x as u32 % 23;
    }
    acc as u8
}

impl Psl23Map {
    pub fn new(a: u8, b: u8, c: u8, d: u8) -> Result<Psl23Map> {
        if a > 22 || b > 22 || c > 22 || d > 22 {
            return invalid("PSL2(23) coefficients must be in 0..=22");
        }
        let det = ((a as i32 * d as i32 - b as i32 * c as i32).rem_euclid(23)) as u8;
        if det == 0 || !SQUARES_MOD_23.contains(&det) {
            return invalid(format!("determinant {det} is not a nonzero square mod 23"));
        }
        Ok(Psl23Map { a, b, c, d })
    }

    /// The translation `x -> x + 1`.
    pub fn translation() -> Psl23Map {
        Psl23Map { a: 1, b: 1, c: 0, d: 1 }
    }

    /// The inversion `x -> -1/x`.
    pub fn negative_inverse() -> Psl23Map {
        Psl23Map { a: 0, b: 22, c: 1, d: 0 }
    }

    /// Apply the map with the usual conventions at `inf`.
    pub fn apply(&self, p: Point) -> Point {
        let (a, b, c, d) = (self.a as u32, self.b as u32, self.c as u32, self.d as u32);
        if p.is_infinity() {
            return if c == 0 {
                Point::INFINITY
            } else {
                Point((a * inv_mod_23(c as u8) as u32 % 23) as u8)
            };
        }
        let x = p.index() as u32;
        let denom = (c * x + d) % 23;
        if denom == 0 {
            return Point::INFINITY;
        }
        let numer = (a * x + b) % 23;
        Point((numer * inv_mod_23(denom as u8) as u32 % 23) as u8)
    }

    pub fn apply_set(&self, s: PointSet) -> PointSet {
        s.map(|p| self.apply(p))
    }
}

/// The base octad `{inf 0 1 3 12 15 21 22}` whose PSL2(23)-orbit is the
/// Steiner system.
pub fn base_octad() -> Octad {
    let pts: Vec<Point> = [23u8, 0, 1, 3, 12, 15, 21, 22]
        .iter()
        .map(|&i| Point(i))
        .collect();
    Octad::new(PointSet::from_points(&pts)).expect("base octad is well-formed")
}

/// The Steiner system S(5,8,24) together with the Golay code it spans.
#[derive(Debug, Clone)]
pub struct GolayCode {
    /// The 759 octads in lexicographic order (`inf` before 0 before 1 ...).
    octads: Vec<Octad>,
    /// All 4096 codeword supports as masks, sorted numerically.
    codewords: Vec<u32>,
    codeword_set: HashSet<u32>,
    dimension: usize,
}

static SHARED: OnceLock<GolayCode> = OnceLock::new();

impl GolayCode {
    /// Generate the Steiner system as the orbit closure of the base octad
    /// and span the code over F2. Deterministic: octads come out sorted.
    pub fn build() -> GolayCode {
        let gens = [Psl23Map::translation(), Psl23Map::negative_inverse()];
        let mut seen: HashSet<u32> = HashSet::new();
        let mut queue = VecDeque::new();
        let base = base_octad().points();
        seen.insert(base.mask());
        queue.push_back(base);
        while let Some(s) = queue.pop_front() {
            for g in &gens {
                let img = g.apply_set(s);
                if seen.insert(img.mask()) {
                    queue.push_back(img);
                }
            }
        }
        let mut octads: Vec<Octad> = seen
            .iter()
            .map(|&m| Octad::new(PointSet(m)).expect("orbit preserves cardinality"))
            .collect();
        octads.sort();

        // F2 span: reduce octad masks to a basis, then enumerate.
        let mut basis: Vec<u32> = Vec::new();
        for oct in &octads {
            let mut v = oct.points().mask();
            for &b in &basis {
                let lead = 1 << (31 - b.leading_zeros());
                if v & lead != 0 {
                    v ^= b;
                }
            }
            if v != 0 {
                basis.push(v);
                basis.sort_by_key(|w| std::cmp::Reverse(31 - w.leading_zeros()));
            }
        }
        let dimension = basis.len();
        let mut codewords: Vec<u32> = Vec::with_capacity(1 << dimension);
        for sel in 0u32..(1 << dimension) {
            let mut w = 0u32;
            for (i, &b) in basis.iter().enumerate() {
                if sel & (1 << i) != 0 {
                    w ^= b;
                }
            }
            codewords.push(w);
        }
        codewords.sort_unstable();
        codewords.dedup();
        let codeword_set: HashSet<u32> = codewords.iter().copied().collect();

        GolayCode {
            octads,
            codewords,
            codeword_set,
            dimension,
        }
    }

    /// The process-wide immutable instance.
    pub fn shared() -> &'static GolayCode {
        SHARED.get_or_init(GolayCode::build)
    }

    pub fn octads(&self) -> &[Octad] {
        &self.octads
    }

    pub fn codewords(&self) -> &[u32] {
        &self.codewords
    }

    /// Dimension of the code over F2.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn contains_octad(&self, o: &Octad) -> bool {
        self.codeword_set.contains(&o.points().mask()) && o.points().len() == 8
    }

    /// True iff `s` is the support of a codeword.
    pub fn is_c_set(&self, s: PointSet) -> bool {
        self.codeword_set.contains(&s.mask())
    }

    /// The unique octad containing a 5-element subset.
    pub fn octad_completion(&self, five: PointSet) -> Result<Octad> {
        if five.len() != 5 {
            return invalid(format!(
                "octad completion needs a 5-element subset, got {} elements",
                five.len()
            ));
        }
        let mut found = None;
        for oct in &self.octads {
            if five.is_subset_of(oct.points()) {
                if found.is_some() {
                    // Steiner uniqueness; cannot happen once the 759 count holds.
                    return crate::inconsistent(format!(
                        "5-subset {five} lies in more than one octad"
                    ));
                }
                found = Some(*oct);
            }
        }
        found.ok_or_else(|| {
            crate::Error::Inconsistency(format!("5-subset {five} lies in no octad"))
        })
    }

    /// Weight distribution indexed by weight 0..=24.
    pub fn weight_distribution(&self) -> [usize; 25] {
        let mut dist = [0usize; 25];
        for &w in &self.codewords {
            dist[w.count_ones() as usize] += 1;
        }
        dist
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_octad_is_in_the_system() {
        let code = GolayCode::shared();
        assert!(code.octads().contains(&base_octad()));
    }

    #[test]
    fn there_are_759_octads() {
        assert_eq!(GolayCode::shared().octads().len(), 759);
    }

    #[test]
    fn octads_agree_with_weight_eight_codewords() {
        // Orbit enumeration and code span are independent routes to the
        // same 759 blocks.
        let code = GolayCode::shared();
        let weight8: HashSet<u32> = code
            .codewords()
            .iter()
            .copied()
            .filter(|w| w.count_ones() == 8)
            .collect();
        let octad_masks: HashSet<u32> =
            code.octads().iter().map(|o| o.points().mask()).collect();
        assert_eq!(weight8, octad_masks);
    }

    #[test]
    fn identity_map_fixes_every_octad() {
        let id = Psl23Map::new(1, 0, 0, 1).unwrap();
        let code = GolayCode::shared();
        for oct in code.octads() {
            assert_eq!(id.apply_set(oct.points()), oct.points());
        }
    }

    #[test]
    fn psl_map_rejects_nonsquare_determinant() {
        // det = 5 is a non-residue mod 23.
        assert!(Psl23Map::new(5, 0, 0, 1).is_err());
        // det = 0 rejected.
        assert!(Psl23Map::new(1, 1, 1, 1).is_err());
    }

    #[test]
    fn code_dimension_is_twelve() {
        let code = GolayCode::shared();
        assert_eq!(code.dimension(), 12);
        assert_eq!(code.codewords().len(), 4096);
    }

    #[test]
    fn weight_distribution_is_golay() {
        let dist = GolayCode::shared().weight_distribution();
        for (w, count) in dist.iter().enumerate() {
            let expected = match w {
                0 | 24 => 1,
                8 | 16 => 759,
                12 => 2576,
                _ => 0,
            };
            assert_eq!(*count, expected, "weight {w}");
        }
    }

    fn set_of(indices: &[u8]) -> PointSet {
        PointSet::from_points(
            &indices.iter().map(|&i| Point(i)).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn octad_completion_matches_known_blocks() {
        let code = GolayCode::shared();
        // {inf,0,2,3,4} completes to {inf,0,2,3,4,8,9,21}.
        let five = set_of(&[23, 0, 2, 3, 4]);
        let oct = code.octad_completion(five).unwrap();
        assert_eq!(oct.points(), set_of(&[23, 0, 2, 3, 4, 8, 9, 21]));
        // {inf,0,2,3,6} completes to {inf,0,2,3,6,12,16,20}.
        let five = set_of(&[23, 0, 2, 3, 6]);
        let oct = code.octad_completion(five).unwrap();
        assert_eq!(oct.points(), set_of(&[23, 0, 2, 3, 6, 12, 16, 20]));
    }

    #[test]
    fn completion_of_contained_five_subset_returns_that_octad() {
        let code = GolayCode::shared();
        let oct = code.octads()[123];
        let pts = oct.sorted_points();
        let five = PointSet::from_points(&pts[..5]);
        assert_eq!(code.octad_completion(five).unwrap(), oct);
    }

    #[test]
    fn completion_rejects_wrong_sizes() {
        let code = GolayCode::shared();
        assert!(code.octad_completion(set_of(&[0, 1, 2, 3])).is_err());
        assert!(code.octad_completion(set_of(&[0, 1, 2, 3, 4, 5])).is_err());
    }

    #[test]
    fn c_set_checks() {
        let code = GolayCode::shared();
        assert!(code.is_c_set(PointSet::EMPTY));
        assert!(code.is_c_set(PointSet::OMEGA));
        assert!(!code.is_c_set(set_of(&[0, 1, 2, 3])));
        // Octads and their complements are C-sets.
        let oct = code.octads()[0].points();
        assert!(code.is_c_set(oct));
        assert!(code.is_c_set(oct.complement()));
    }

    #[test]
    fn code_closed_under_symmetric_difference_and_complement() {
        let code = GolayCode::shared();
        for &w in code.codewords() {
            assert!(code.is_c_set(PointSet(w).complement()));
        }
        // Spot-check closure under XOR on a deterministic sample.
        let words = code.codewords();
        for i in (0..words.len()).step_by(97) {
            for j in (0..words.len()).step_by(211) {
                assert!(code.codeword_set.contains(&(words[i] ^ words[j])));
            }
        }
    }

    #[test]
    fn every_point_lies_in_253_octads() {
        let code = GolayCode::shared();
        for i in 0..24u8 {
            let p = Point(i);
            let count = code
                .octads()
                .iter()
                .filter(|o| o.points().contains(p))
                .count();
            assert_eq!(count, 253, "point {p}");
        }
    }

    #[test]
    fn distinct_octads_intersect_in_0_2_or_4_points() {
        let code = GolayCode::shared();
        let octs = code.octads();
        for i in 0..octs.len() {
            for j in (i + 1)..octs.len() {
                let n = octs[i].points().intersection(octs[j].points()).len();
                assert!(n == 0 || n == 2 || n == 4, "octads {i},{j} meet in {n}");
            }
        }
    }

    #[test]
    fn point_ordering_puts_infinity_first() {
        let mut pts = vec![Point(5), Point::INFINITY, Point(0)];
        pts.sort();
        assert_eq!(pts, vec![Point::INFINITY, Point(0), Point(5)]);
        assert_eq!(Point::INFINITY.rank(), 0);
        assert_eq!(Point(0).rank(), 1);
        assert_eq!(Point::from_rank(0), Point::INFINITY);
        assert_eq!(Point::from_rank(23), Point(22));
    }

    #[test]
    fn octad_ordering_is_lexicographic() {
        // {inf,0,...} sorts before any octad without inf.
        let a = set_of(&[23, 0, 1, 3, 12, 15, 21, 22]);
        let b = set_of(&[0, 2, 3, 4, 5, 15, 20, 22]);
        assert!(Octad::new(a).unwrap() < Octad::new(b).unwrap());
    }
}
