//! Greedy reduction into the chamber D' and decomposition of isometries
//! into an inversion-involution word followed by a graph automorphism.
//!
//! The height of an ample-surrogate class `v` is `<v, w'>`, a positive
//! integer that is at least 28 on the orbit of `w'` and equals 28 only at
//! `w'` itself. Applying the inversion of a face with `<v, r'> < 0` lowers
//! the height by the exact positive integer `2 <w',r'> <v,r'> / <r',r'>`,
//! so the greedy loop terminates; when no face pairs negatively, `v` lies
//! in the closure of D'.
//!
//! An isometry `phi` of the ample cone is decomposed by reducing
//! `phi(w')`: the recorded involutions compose to `psi` with
//! `psi . phi (w') = w'`, and the residual `psi . phi` fixes `w'`, permutes
//! the 28 curves, and is matched against the 336 lifted graph
//! automorphisms, giving `phi = inv_1 . ... . inv_k . lift(residual)`
//! exactly.

use num::bigint::BigInt;
use num::traits::Zero;

use crate::faces::{FaceId, FaceType};
use crate::lattice::IntMat;
use crate::model::Model;
use crate::ns_embed::NS_RANK;
use crate::symmetry::GraphAutomorphism;
use crate::{inconsistent, invalid, Error, Result};

/// Diagnostic cap; integer height descent proves termination long before.
pub const STEP_CAP: usize = 10_000;

/// A word in the generators: involution steps (global face indices, applied
/// left to right) and an optional residual graph automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    pub steps: Vec<usize>,
    pub residual: Option<GraphAutomorphism>,
}

impl GeneratorWord {
    pub fn step_ids<'a>(&'a self, model: &'a Model) -> impl Iterator<Item = FaceId> + 'a {
        self.steps
            .iter()
            .map(move |&f| model.faces().faces()[f].id)
    }
}

/// Heights recorded along a reduction, starting with the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub heights: Vec<BigInt>,
}

impl ReductionTrace {
    pub fn is_strictly_decreasing(&self) -> bool {
        self.heights.windows(2).all(|w| w[0] > w[1])
    }

    pub fn final_height(&self) -> &BigInt {
        self.heights.last().expect("trace is never empty")
    }
}

/// Result of reducing a vector into the chamber closure.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub word: GeneratorWord,
    pub terminal: Vec<BigInt>,
    pub trace: ReductionTrace,
}

/// A single letter of a word over the generator alphabet.
#[derive(Debug, Clone)]
pub enum Letter {
    /// Global face index of an inversion involution.
    Involution(usize),
    Automorphism(GraphAutomorphism),
}

/// Matrix of one letter.
pub fn letter_matrix(model: &Model, letter: &Letter) -> Result<IntMat> {
    match letter {
        Letter::Involution(face_index) => {
            let slot = model.fibrations().slot_of_face(*face_index).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "face index {face_index} does not carry an involution"
                ))
            })?;
            Ok(model.fibrations().inversion(slot).clone())
        }
        Letter::Automorphism(g) => {
            let idx = model
                .symmetry()
                .index_of(g)
                .ok_or_else(|| Error::InvalidArgument("unknown graph automorphism".into()))?;
            Ok(model.symmetry().lift(idx).clone())
        }
    }
}

/// Compose a word of letters into an isometry; letters act on vectors in
/// list order, so the matrix is `M_k ... M_1`.
pub fn compose_word(model: &Model, letters: &[Letter]) -> Result<IntMat> {
    let mut acc = IntMat::identity(NS_RANK);
    for letter in letters {
        acc = letter_matrix(model, letter)?.mul(&acc);
    }
    Ok(acc)
}

fn height(model: &Model, v: &[BigInt]) -> BigInt {
    model.ns().inner_int(v, model.ns().w_prime())
}

fn check_reduce_precondition(model: &Model, v: &[BigInt]) -> Result<()> {
    if v.len() != NS_RANK {
        return invalid(format!("vector must have {NS_RANK} coordinates"));
    }
    let norm = model.ns().inner_int(v, v);
    if norm != BigInt::from(28) {
        return invalid(format!("vector norm {norm}, expected 28"));
    }
    if height(model, v) <= BigInt::zero() {
        return invalid("vector has non-positive height");
    }
    for (i, c) in model.ns().curves().iter().enumerate() {
        if model.ns().inner_int(v, c) <= BigInt::zero() {
            return invalid(format!(
                "vector pairs non-positively with curve {}",
                i + 1
            ));
        }
    }
    Ok(())
}

/// A greedy candidate: the face whose inversion lowers the height most.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyChoice {
    pub face_index: usize,
    pub decrease: BigInt,
}

fn type_rank(t: FaceType) -> usize {
    match t {
        FaceType::E7 => 0,
        FaceType::D7 => 1,
        FaceType::A7 => 2,
        FaceType::A6A1 => 3,
    }
}

/// Among faces with negative pairing, pick the one maximizing the exact
/// height decrease; ties break by type order E7 < D7 < A7, then face index.
pub fn greedy_choice(model: &Model, v: &[BigInt]) -> Option<GreedyChoice> {
    let mut best: Option<(BigInt, usize, usize, usize)> = None;
    for slot in 0..model.fibrations().len() {
        let face_index = model.fibrations().face_of_slot(slot);
        let face = &model.faces().faces()[face_index];
        let scaled = face.scaled_pairing(v);
        if scaled >= BigInt::zero() {
            continue;
        }
        let decrease = BigInt::from(face.rtype.descent_factor()) * -&scaled;
        let better = match &best {
            None => true,
            Some((bd, bt, bi, _)) => {
                decrease > *bd
                    || (decrease == *bd
                        && (type_rank(face.rtype), face.id.index) < (*bt, *bi))
            }
        };
        if better {
            best = Some((decrease, type_rank(face.rtype), face.id.index, face_index));
        }
    }
    best.map(|(decrease, _, _, face_index)| GreedyChoice {
        face_index,
        decrease,
    })
}

/// Reduce an ample-surrogate class into the closure of D' by greedy height
/// descent over the 98 inversion involutions.
pub fn reduce_vector(model: &Model, v: &[BigInt]) -> Result<Reduction> {
    check_reduce_precondition(model, v)?;
    let mut current = v.to_vec();
    let mut h = height(model, &current);
    let mut heights = vec![h.clone()];
    let mut steps = Vec::new();
    while let Some(choice) = greedy_choice(model, &current) {
        if steps.len() >= STEP_CAP {
            return inconsistent(format!(
                "reduction exceeded {STEP_CAP} steps; height descent must be broken"
            ));
        }
        let slot = model
            .fibrations()
            .slot_of_face(choice.face_index)
            .expect("greedy candidates carry involutions");
        current = model.fibrations().inversion(slot).mul_vec(&current);
        let new_h = height(model, &current);
        if &h - &choice.decrease != new_h {
            return inconsistent(format!(
                "height identity violated: {h} - {} != {new_h}",
                choice.decrease
            ));
        }
        h = new_h;
        heights.push(h.clone());
        steps.push(choice.face_index);
    }
    // No face pairs negatively; the curve pairings stayed positive because
    // every step is an ample-cone automorphism.
    for (i, c) in model.ns().curves().iter().enumerate() {
        if model.ns().inner_int(&current, c) < BigInt::zero() {
            return inconsistent(format!(
                "terminal vector pairs negatively with curve {}",
                i + 1
            ));
        }
    }
    Ok(Reduction {
        word: GeneratorWord {
            steps,
            residual: None,
        },
        terminal: current,
        trace: ReductionTrace { heights },
    })
}

/// Decomposition of an isometry as involution word plus residual.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub word: GeneratorWord,
    pub trace: ReductionTrace,
}

/// Decompose an integral Gram-preserving isometry `phi` of S_X with
/// `phi(w')` in the ample surrogate cone as
/// `phi = inv_1 . inv_2 . ... . inv_k . lift(residual)`
/// (steps listed first-applied first). Fails with `NotInGroup` when the
/// reduction of `phi(w')` terminates away from `w'`.
pub fn decompose(model: &Model, phi: &IntMat) -> Result<Decomposition> {
    if phi.nrows() != NS_RANK || phi.ncols() != NS_RANK {
        return invalid("isometry must be a 20 x 20 matrix");
    }
    let gram = model.ns().gram().matrix();
    if &phi.transpose().mul(gram).mul(phi) != gram {
        return invalid("matrix does not preserve the Gram matrix");
    }
    let image = phi.mul_vec(model.ns().w_prime());
    let reduction = reduce_vector(model, &image)?;
    if reduction.terminal != model.ns().w_prime() {
        let witness: Vec<String> = reduction.terminal.iter().map(|x| x.to_string()).collect();
        return Err(Error::NotInGroup(format!(
            "reduction terminated at a chamber point other than w': [{}]",
            witness.join(", ")
        )));
    }

    // rho = psi . phi fixes w'; match it to a lifted graph automorphism.
    let mut rho = phi.clone();
    for &face_index in &reduction.word.steps {
        let slot = model
            .fibrations()
            .slot_of_face(face_index)
            .expect("steps are involution faces");
        rho = model.fibrations().inversion(slot).mul(&rho);
    }
    let mut perm = [0u8; crate::ns_embed::NUM_CURVES];
    for (i, c) in model.ns().curves().iter().enumerate() {
        let image = rho.mul_vec(c);
        let j = model
            .ns()
            .curves()
            .iter()
            .position(|d| *d == image)
            .ok_or_else(|| {
                Error::Inconsistency(format!(
                    "residual fixes w' but does not permute the curves (curve {})",
                    i + 1
                ))
            })?;
        perm[i] = j as u8;
    }
    let residual = GraphAutomorphism { perm };
    let residual_index = model.symmetry().index_of(&residual).ok_or_else(|| {
        Error::Inconsistency("residual permutation is not a graph automorphism".into())
    })?;
    if model.symmetry().lift(residual_index) != &rho {
        return inconsistent("residual lift does not reproduce the reduced isometry");
    }

    // Exact recomposition: phi = inv_1 ... inv_k . lift(residual).
    let mut recomposed = rho;
    for &face_index in reduction.word.steps.iter().rev() {
        let slot = model.fibrations().slot_of_face(face_index).expect("step");
        recomposed = model.fibrations().inversion(slot).mul(&recomposed);
    }
    if &recomposed != phi {
        return inconsistent("recomposition does not reproduce the input isometry");
    }

    Ok(Decomposition {
        word: GeneratorWord {
            steps: reduction.word.steps,
            residual: Some(residual),
        },
        trace: reduction.trace,
    })
}

/// Seeded random word over the 98 involutions and 336 automorphisms.
pub fn random_word(model: &Model, rng: &mut impl rand::Rng, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(1..=max_len);
    let num_inv = model.fibrations().len();
    let num_aut = model.symmetry().order();
    (0..len)
        .map(|_| {
            let pick = rng.gen_range(0..num_inv + num_aut);
            if pick < num_inv {
                Letter::Involution(model.fibrations().face_of_slot(pick))
            } else {
                Letter::Automorphism(*model.symmetry().element(pick - num_inv))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn model() -> &'static Model {
        Model::shared()
    }

    #[test]
    fn weyl_projection_reduces_to_itself() {
        let m = model();
        let red = reduce_vector(m, m.ns().w_prime()).unwrap();
        assert!(red.word.steps.is_empty());
        assert_eq!(red.terminal, m.ns().w_prime());
        assert_eq!(red.trace.heights, vec![BigInt::from(28)]);
    }

    #[test]
    fn single_involution_round_trip() {
        let m = model();
        let slot = m.fibrations().len() - 1;
        let face_index = m.fibrations().face_of_slot(slot);
        let image = m.fibrations().inversion(slot).mul_vec(m.ns().w_prime());
        let red = reduce_vector(m, &image).unwrap();
        assert_eq!(red.terminal, m.ns().w_prime());
        assert_eq!(red.word.steps, vec![face_index]);
        assert_eq!(red.trace.final_height(), &BigInt::from(28));
    }

    #[test]
    fn reduce_rejects_bad_inputs() {
        let m = model();
        // Wrong norm.
        let doubled: Vec<BigInt> = m.ns().w_prime().iter().map(|x| x * BigInt::from(2)).collect();
        assert!(reduce_vector(m, &doubled).is_err());
        // Wrong cone.
        let negated: Vec<BigInt> = m.ns().w_prime().iter().map(|x| -x).collect();
        assert!(reduce_vector(m, &negated).is_err());
    }

    #[test]
    fn greedy_policy_single_candidate_round_trip() {
        let m = model();
        let slot = 0;
        let image = m.fibrations().inversion(slot).mul_vec(m.ns().w_prime());
        let choice = greedy_choice(m, &image).unwrap();
        // Undoing the involution is the largest possible decrease: back to 28.
        assert_eq!(choice.decrease, height(m, &image) - BigInt::from(28));
    }

    #[test]
    fn decompose_identity_and_pure_automorphisms() {
        let m = model();
        let id = IntMat::identity(NS_RANK);
        let dec = decompose(m, &id).unwrap();
        assert!(dec.word.steps.is_empty());
        assert!(dec.word.residual.unwrap().is_identity());

        for idx in [1usize, 100, 335] {
            let lift = m.symmetry().lift(idx).clone();
            let dec = decompose(m, &lift).unwrap();
            assert!(dec.word.steps.is_empty());
            assert_eq!(dec.word.residual.unwrap(), *m.symmetry().element(idx));
        }
    }

    #[test]
    fn decompose_rejects_cone_flip() {
        let m = model();
        let minus: Vec<Vec<BigInt>> = (0..NS_RANK)
            .map(|i| {
                (0..NS_RANK)
                    .map(|j| if i == j { BigInt::from(-1) } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let minus = IntMat::from_rows(minus);
        assert!(decompose(m, &minus).is_err());
    }

    #[test]
    fn random_words_round_trip_exactly() {
        let m = model();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let letters = random_word(m, &mut rng, 10);
            let phi = compose_word(m, &letters).unwrap();
            let dec = decompose(m, &phi).unwrap();
            assert!(dec.trace.is_strictly_decreasing());
            assert_eq!(dec.trace.final_height(), &BigInt::from(28));
            assert!(dec.trace.heights.iter().all(|h| *h >= BigInt::from(28)));
            // Recomposition equality is asserted inside decompose; rebuild
            // here as an independent check. In application order the
            // residual acts first and the steps replay last to first.
            let mut letters_back = vec![Letter::Automorphism(dec.word.residual.unwrap())];
            letters_back.extend(dec.word.steps.iter().rev().map(|&f| Letter::Involution(f)));
            assert_eq!(compose_word(m, &letters_back).unwrap(), phi);
        }
    }
}
