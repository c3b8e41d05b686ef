//! Machine-checkable verification battery behind the `verify` subcommand.
//!
//! Every headline quantity of the construction is recomputed and compared
//! against its frozen expected value: the Steiner system counts, the chain
//! Gram, the printed curve octads, the Coxeter graph shape, the Weyl
//! projection, the lattice identification, the face table, the example
//! profiles, the symmetry group, the 98 fibrations with their inversion
//! involutions, and a seeded random-word reduction suite.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::faces::FaceType;
use crate::golay::{Point, PointSet};
use crate::lattice::{
    discriminant_form, normalize_mod_2z, overlattice_index, root_lattice_gram, GramMatrix,
    IntMat, RootKind,
};
use crate::model::Model;
use crate::ns_embed::{NS_RANK, NUM_CURVES};
use crate::reduction;
use crate::symmetry::expected_stabilizers;
use crate::Result;

/// Default seed of the randomized suite.
pub const DEFAULT_SEED: u64 = 7;
/// Default word count of the randomized suite.
pub const DEFAULT_WORDS: usize = 1000;
/// Maximum word length of the randomized suite.
pub const MAX_WORD_LEN: usize = 12;

/// The 28 curve octads in canonical order; -1 encodes `inf`.
pub const CURVE_OCTADS: [[i8; 8]; 28] = [
    [-1, 0, 2, 3, 4, 8, 9, 21],
    [-1, 0, 2, 3, 6, 12, 16, 20],
    [-1, 0, 2, 3, 7, 11, 13, 15],
    [-1, 0, 2, 3, 10, 18, 19, 22],
    [-1, 0, 2, 4, 5, 6, 10, 11],
    [-1, 0, 2, 4, 7, 17, 18, 20],
    [-1, 0, 2, 4, 12, 14, 15, 19],
    [-1, 0, 2, 5, 7, 9, 12, 22],
    [-1, 0, 2, 5, 8, 13, 19, 20],
    [-1, 0, 2, 5, 15, 16, 18, 21],
    [-1, 0, 2, 6, 8, 15, 17, 22],
    [-1, 0, 2, 11, 14, 20, 21, 22],
    [-1, 0, 3, 4, 5, 12, 13, 18],
    [-1, 0, 3, 4, 6, 7, 14, 22],
    [-1, 0, 3, 4, 10, 15, 16, 17],
    [-1, 0, 3, 5, 6, 9, 15, 19],
    [-1, 0, 3, 5, 7, 10, 20, 21],
    [-1, 0, 3, 5, 8, 11, 16, 22],
    [-1, 0, 3, 8, 14, 15, 18, 20],
    [-1, 0, 3, 9, 13, 17, 20, 22],
    [-1, 0, 4, 5, 9, 14, 16, 20],
    [-1, 0, 4, 5, 17, 19, 21, 22],
    [-1, 0, 4, 6, 13, 15, 20, 21],
    [-1, 0, 4, 8, 10, 12, 20, 22],
    [-1, 0, 4, 9, 11, 15, 18, 22],
    [-1, 0, 5, 10, 13, 14, 15, 22],
    [-1, 0, 5, 11, 12, 15, 17, 20],
    [-1, 0, 7, 15, 16, 19, 20, 22],
];

/// The three heptagons bounding the 3I7-type fibration, in 1-based cyclic
/// vertex order.
pub const HEPTAGONS: [[usize; 7]; 3] = [
    [1, 28, 5, 19, 22, 2, 26],
    [14, 10, 24, 16, 12, 15, 9],
    [4, 21, 11, 17, 7, 18, 23],
];

/// One verified claim.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// The full battery.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: String,
    pub seed: u64,
    pub words: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

struct Reporter {
    checks: Vec<Check>,
}

impl Reporter {
    fn new() -> Reporter {
        Reporter { checks: Vec::new() }
    }

    fn push(&mut self, id: &str, expected: impl ToString, computed: impl ToString) {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let pass = expected == computed;
        self.checks.push(Check {
            id: id.to_string(),
            expected,
            computed,
            pass,
        });
    }
}

fn octad_from_row(row: &[i8; 8]) -> PointSet {
    let pts: Vec<Point> = row
        .iter()
        .map(|&x| {
            if x < 0 {
                Point::INFINITY
            } else {
                Point::from_field(x as u8).expect("printed data")
            }
        })
        .collect();
    PointSet::from_points(&pts)
}

fn check_steiner(model: &Model, rep: &mut Reporter) {
    let code = model.golay();
    rep.push("octad_count", 759, code.octads().len());
    let base = crate::golay::base_octad();
    rep.push("base_octad_present", true, code.octads().contains(&base));
    rep.push("code_dimension", 12, code.dimension());
    let dist = code.weight_distribution();
    rep.push(
        "weight_distribution",
        "[1, 759, 2576, 759, 1]",
        format!(
            "[{}, {}, {}, {}, {}]",
            dist[0], dist[8], dist[12], dist[16], dist[24]
        ),
    );
    let other_weights: usize = (0..25)
        .filter(|w| ![0, 8, 12, 16, 24].contains(w))
        .map(|w| dist[w])
        .sum();
    rep.push("no_other_weights", 0, other_weights);

    // Every 5-subset completes to exactly one octad.
    let mut unique = 0usize;
    let mut total = 0usize;
    let masks: Vec<u32> = code.octads().iter().map(|o| o.points().mask()).collect();
    for a in 0..20u32 {
        for b in (a + 1)..21 {
            for c in (b + 1)..22 {
                for d in (c + 1)..23 {
                    for e in (d + 1)..24 {
                        let five = (1 << a) | (1 << b) | (1 << c) | (1 << d) | (1 << e);
                        total += 1;
                        let hits = masks.iter().filter(|&&m| five & !m == 0).count();
                        if hits == 1 {
                            unique += 1;
                        }
                    }
                }
            }
        }
    }
    rep.push("five_subset_total", 42504, total);
    rep.push("five_subset_unique_completions", 42504, unique);
}

fn check_chain(model: &Model, rep: &mut Reporter) {
    let chain = model.ns().chain();
    let expected = root_lattice_gram(RootKind::A, 6).expect("A6");
    let mut ok = true;
    for i in 0..6 {
        for j in 0..6 {
            let pairing = crate::lorentzian::ii_inner(
                chain.roots()[i].vector(),
                chain.roots()[j].vector(),
            );
            if BigInt::from(pairing) != expected.matrix()[(i, j)] {
                ok = false;
            }
        }
    }
    rep.push("chain_gram_is_negated_a6_cartan", true, ok);
}

fn check_curve_octads(model: &Model, rep: &mut Reporter) {
    let computed = model.ns().curve_octads();
    let mut matches = true;
    for (row, oct) in CURVE_OCTADS.iter().zip(computed) {
        if octad_from_row(row) != oct.points() {
            matches = false;
        }
    }
    rep.push("curve_octads_match_printed_list", true, matches && computed.len() == 28);
}

fn check_graph(model: &Model, rep: &mut Reporter) {
    let g = model.ns().graph();
    rep.push("graph_vertices", 28, NUM_CURVES);
    rep.push("graph_edges", 42, g.num_edges());
    rep.push(
        "graph_is_cubic",
        true,
        (0..NUM_CURVES).all(|v| g.neighbors(v).len() == 3),
    );
    rep.push("graph_girth", 7, g.girth());
    for (k, hept) in HEPTAGONS.iter().enumerate() {
        let cycle: Vec<usize> = hept.iter().map(|&v| v - 1).collect();
        rep.push(
            &format!("heptagon_{}_is_induced_cycle", k + 1),
            true,
            g.is_induced_cycle(&cycle),
        );
    }
}

fn check_weyl(model: &Model, rep: &mut Reporter) {
    let ns = model.ns();
    rep.push("w_prime_norm", 28, ns.inner_int(ns.w_prime(), ns.w_prime()));
    rep.push(
        "w_prime_pairs_one_with_every_curve",
        true,
        ns.curves()
            .iter()
            .all(|c| ns.inner_int(ns.w_prime(), c) == BigInt::one()),
    );
    let coeffs: Vec<String> = ns
        .w_dprime_chain_coeffs()
        .iter()
        .map(|x| x.to_string())
        .collect();
    rep.push(
        "w_dprime_chain_coefficients",
        "[-3, -5, -6, -6, -5, -3]",
        format!("[{}]", coeffs.join(", ")),
    );
}

/// Rows of U + A6 + A6 + A6 inside S_X, built from the heptagon fibers and
/// the smallest section of the 3I7-type fibration.
pub fn u_a6_cubed_rows(model: &Model) -> Result<IntMat> {
    let ns = model.ns();
    let g = ns.graph();
    let hept_sets: Vec<Vec<usize>> = HEPTAGONS
        .iter()
        .map(|h| h.iter().map(|&v| v - 1).collect())
        .collect();
    for cycle in &hept_sets {
        if !g.is_induced_cycle(cycle) {
            return crate::inconsistent("printed heptagon is not an induced cycle");
        }
    }
    let in_hept: Vec<usize> = hept_sets.iter().flatten().copied().collect();
    let section = (0..NUM_CURVES)
        .find(|v| !in_hept.contains(v))
        .expect("seven sections exist");

    // Fiber class from the first heptagon; all three must agree.
    let fiber = |cycle: &[usize]| -> Vec<BigInt> {
        let mut f = vec![BigInt::zero(); NS_RANK];
        for &v in cycle {
            for (acc, x) in f.iter_mut().zip(&ns.curves()[v]) {
                *acc += x;
            }
        }
        f
    };
    let f = fiber(&hept_sets[0]);
    for cycle in &hept_sets[1..] {
        if fiber(cycle) != f {
            return crate::inconsistent("heptagon fiber classes disagree");
        }
    }

    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(NS_RANK);
    rows.push(f.clone());
    let e2: Vec<BigInt> = ns.curves()[section]
        .iter()
        .zip(&f)
        .map(|(o, x)| o + x)
        .collect();
    rows.push(e2);
    for cycle in &hept_sets {
        // Drop the vertex met by the section and walk the remaining path
        // from the smaller neighbor of the dropped vertex.
        let met: Vec<usize> = cycle
            .iter()
            .copied()
            .filter(|&v| g.adjacent(section, v))
            .collect();
        if met.len() != 1 {
            return crate::inconsistent("section does not meet the heptagon exactly once");
        }
        let dropped = met[0];
        let pos = cycle.iter().position(|&v| v == dropped).unwrap();
        let n = cycle.len();
        let forward: Vec<usize> = (1..n).map(|k| cycle[(pos + k) % n]).collect();
        let backward: Vec<usize> = forward.iter().rev().copied().collect();
        let path = if forward[0] <= backward[0] { forward } else { backward };
        for v in path {
            rows.push(ns.curves()[v].clone());
        }
    }
    Ok(IntMat::from_rows(rows))
}

/// The block Gram U + three negated A6 Cartan blocks.
pub fn u_a6_cubed_gram() -> GramMatrix {
    let mut m = IntMat::zeros(NS_RANK, NS_RANK);
    m[(0, 1)] = BigInt::one();
    m[(1, 0)] = BigInt::one();
    let a6 = root_lattice_gram(RootKind::A, 6).expect("A6");
    for block in 0..3 {
        let off = 2 + 6 * block;
        for i in 0..6 {
            for j in 0..6 {
                m[(off + i, off + j)] = a6.matrix()[(i, j)].clone();
            }
        }
    }
    GramMatrix::new(m).expect("block matrix is symmetric")
}

fn check_lattice_identification(model: &Model, rep: &mut Reporter) {
    let ns = model.ns();
    rep.push("ns_rank", 20, ns.gram().rank());
    rep.push("ns_det_abs", 7, ns.gram().det().abs());
    let (pos, neg, zero) = ns.gram().signature();
    rep.push("ns_signature", "(1, 19, 0)", format!("({pos}, {neg}, {zero})"));

    let index = u_a6_cubed_rows(model)
        .and_then(|rows| overlattice_index(&rows, &u_a6_cubed_gram(), ns.gram()))
        .map(|x| x.to_string())
        .unwrap_or_else(|e| format!("error: {e}"));
    rep.push("u_a6_cubed_index", 7, index);

    match discriminant_form(ns.gram()) {
        Ok(df) => {
            let orders: Vec<String> = df.factor_orders.iter().map(|x| x.to_string()).collect();
            rep.push("discriminant_group", "[7]", format!("[{}]", orders.join(", ")));
            let computed = df
                .cyclic_value_multiset()
                .map(|vals| {
                    vals.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                })
                .unwrap_or_else(|e| format!("error: {e}"));
            // Anti-isometric to <4/7>: value multiset {-4 k^2 / 7 mod 2Z}.
            let mut expected: Vec<BigRational> = (0..7i64)
                .map(|k| {
                    normalize_mod_2z(&BigRational::new(
                        BigInt::from(-4 * k * k),
                        BigInt::from(7),
                    ))
                })
                .collect();
            expected.sort();
            let expected: Vec<String> = expected.iter().map(|v| v.to_string()).collect();
            rep.push("q_value_multiset", expected.join(", "), computed);
        }
        Err(e) => rep.push("discriminant_group", "[7]", format!("error: {e}")),
    }
}

fn check_face_table(model: &Model, rep: &mut Reporter) {
    let faces = model.faces();
    let expectations = [
        (FaceType::A6A1, 28usize, "-2", 1i64),
        (FaceType::A7, 14, "-8/7", 4),
        (FaceType::D7, 28, "-4/7", 6),
        (FaceType::E7, 56, "-2/7", 7),
    ];
    for (t, count, norm, pairing) in expectations {
        let block = faces.of_type(t);
        rep.push(&format!("face_count_{t}"), count, block.len());
        let norms_ok = block.iter().all(|f| {
            model.ns().inner_rat(&f.projection, &f.projection).to_string() == norm
        });
        rep.push(&format!("face_projection_norm_{t}"), format!("all {norm}"),
            if norms_ok { format!("all {norm}") } else { "mismatch".into() });
        let w = model.ns().w_prime();
        let pairings_ok = block
            .iter()
            .all(|f| f.scaled_pairing(w) == BigInt::from(7 * pairing));
        rep.push(&format!("face_w_pairing_{t}"), format!("all {pairing}"),
            if pairings_ok { format!("all {pairing}") } else { "mismatch".into() });
    }
    let subcases = [
        ("a7_at_y", FaceType::A7, 0usize, 7usize),
        ("a7_at_t", FaceType::A7, 5, 7),
        ("d7_at_z", FaceType::D7, 1, 14),
        ("d7_at_q", FaceType::D7, 4, 14),
        ("e7_at_x", FaceType::E7, 2, 28),
        ("e7_at_p", FaceType::E7, 3, 28),
    ];
    for (name, t, node, count) in subcases {
        let n = faces
            .of_type(t)
            .iter()
            .filter(|f| f.attach == Some(node))
            .count();
        rep.push(&format!("subfamily_{name}"), count, n);
    }
}

fn check_profiles(model: &Model, rep: &mut Reporter) {
    let faces = model.faces();
    let ns = model.ns();

    let sizes_ok = |t: FaceType, size: usize| {
        faces.of_type(t).iter().all(|f| f.profile.len() == size)
    };
    rep.push("profile_sizes_a7", true, sizes_ok(FaceType::A7, 4));
    rep.push("profile_sizes_d7", true, sizes_ok(FaceType::D7, 6));
    rep.push("profile_sizes_e7", true, sizes_ok(FaceType::E7, 7));

    let find_profile = |xi: [i64; 24]| -> Vec<usize> {
        faces
            .faces()
            .iter()
            .find(|f| *f.root.lambda().coords() == xi)
            .map(|f| f.profile.iter().map(|v| v + 1).collect())
            .unwrap_or_default()
    };
    let doubled = |points: &[i8]| -> [i64; 24] {
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
    };
    rep.push(
        "a7_example_profile",
        "[23, 24, 25, 28]",
        format!("{:?}", find_profile(doubled(&[-1, 0, 1, 2, 3, 5, 14, 17]))),
    );
    let mut d7_lambda = [1i64; 24];
    d7_lambda[Point::from_field(6).unwrap().rank()] -= 4;
    rep.push(
        "d7_example_profile",
        "[2, 5, 11, 14, 16, 23]",
        format!("{:?}", find_profile(d7_lambda)),
    );
    rep.push(
        "e7_example_profile",
        "[5, 6, 8, 11, 24, 25, 27]",
        format!("{:?}", find_profile(doubled(&[-1, 0, 3, 13, 14, 16, 19, 21]))),
    );

    let a7_stats_ok = faces
        .of_type(FaceType::A7)
        .iter()
        .all(|f| faces.edge_distance_stats(f, ns) == vec![(4, 6)]);
    rep.push("a7_distance_multiset", "all {4^6}",
        if a7_stats_ok { "all {4^6}".into() } else { "mismatch".to_string() });
    let d7_stats_ok = faces
        .of_type(FaceType::D7)
        .iter()
        .all(|f| faces.edge_distance_stats(f, ns) == vec![(3, 12), (4, 3)]);
    rep.push("d7_distance_multiset", "all {3^12, 4^3}",
        if d7_stats_ok { "all {3^12, 4^3}".into() } else { "mismatch".to_string() });

    let mut per_vertex = [0usize; NUM_CURVES];
    for f in faces.of_type(FaceType::A7) {
        for &v in &f.profile {
            per_vertex[v] += 1;
        }
    }
    rep.push(
        "a7_quadruples_per_vertex",
        "all 2",
        if per_vertex.iter().all(|&c| c == 2) { "all 2".into() } else { format!("{per_vertex:?}") },
    );
}

fn check_symmetry(model: &Model, rep: &mut Reporter) {
    let sym = model.symmetry();
    rep.push("graph_automorphism_group_order", 336, sym.order());

    match sym.orbits_on_faces(model.faces()) {
        Ok(orbits) => {
            let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
            sizes.sort_unstable();
            rep.push("face_orbit_sizes", "[14, 28, 28, 56]", format!("{sizes:?}"));
            let uniform = orbits.iter().all(|orbit| {
                let t = model.faces().faces()[orbit[0]].rtype;
                orbit.iter().all(|&f| model.faces().faces()[f].rtype == t)
            });
            rep.push("face_type_is_orbit_invariant", true, uniform);
        }
        Err(e) => rep.push("face_orbit_sizes", "[14, 28, 28, 56]", format!("error: {e}")),
    }

    for (rtype, order, multiset) in expected_stabilizers() {
        let face_idx = model
            .faces()
            .faces()
            .iter()
            .position(|f| f.rtype == rtype)
            .expect("faces of every type exist");
        match sym.face_stabilizer(face_idx, model.faces()) {
            Ok(stab) => {
                rep.push(&format!("stabilizer_order_{rtype}"), order, stab.len());
                rep.push(
                    &format!("stabilizer_element_orders_{rtype}"),
                    format!("{multiset:?}"),
                    format!("{:?}", sym.order_multiset(&stab)),
                );
            }
            Err(e) => rep.push(&format!("stabilizer_order_{rtype}"), order, format!("error: {e}")),
        }
    }

    let gram = model.ns().gram().matrix();
    let w = model.ns().w_prime();
    let lifts_ok = (0..sym.order()).all(|i| {
        let lift = sym.lift(i);
        &lift.transpose().mul(gram).mul(lift) == gram && lift.mul_vec(w) == w
    });
    rep.push("all_lifts_isometric_and_fix_w_prime", true, lifts_ok);

    let comm = sym.commutator_subgroup();
    rep.push("commutator_subgroup_order", 168, comm.len());
}

fn check_fibrations(model: &Model, rep: &mut Reporter) {
    let ns = model.ns();
    let gram = ns.gram().matrix();
    let identity = IntMat::identity(NS_RANK);
    let mut partitions_ok = true;
    let mut fibers_ok = true;
    let mut inversions_ok = true;
    for slot in 0..model.fibrations().len() {
        let fm = model.fibrations().model(slot);
        let face = &model.faces().faces()[fm.face_index];
        let sizes: Vec<usize> = fm.diagrams.iter().map(|d| d.vertices.len()).collect();
        let expected: (Vec<usize>, usize) = match fm.rtype {
            FaceType::E7 => (vec![18], 3),
            FaceType::D7 => (vec![7, 12], 3),
            FaceType::A7 => (vec![8, 6, 6], 4),
            FaceType::A6A1 => unreachable!(),
        };
        if sizes != expected.0 || fm.sections.len() != expected.1 {
            partitions_ok = false;
        }
        let f = &fm.fiber_class;
        if !ns.inner_int(f, f).is_zero()
            || fm
                .diagrams
                .iter()
                .any(|d| crate::fibrations::fiber_class(ns, d) != *f)
        {
            fibers_ok = false;
        }
        let inv = model.fibrations().inversion(slot);
        let neg: Vec<BigInt> = face.proj7.iter().map(|x| -x).collect();
        let c = BigInt::from(face.rtype.descent_factor());
        let reflected: Vec<BigInt> = ns
            .w_prime()
            .iter()
            .zip(&face.proj7)
            .map(|(w, p)| w + &c * p)
            .collect();
        if inv.mul(inv) != identity
            || &inv.transpose().mul(gram).mul(inv) != gram
            || inv.mul_vec(&face.proj7) != neg
            || inv.mul_vec(ns.w_prime()) != reflected
        {
            inversions_ok = false;
        }
    }
    rep.push("fibration_count", 98, model.fibrations().len());
    rep.push("fibration_partitions", true, partitions_ok);
    rep.push("fiber_classes_isotropic_and_consistent", true, fibers_ok);
    rep.push(
        "inversions_integral_involutive_isometric_reflecting",
        true,
        inversions_ok,
    );
}

fn check_reduction_suite(model: &Model, seed: u64, words: usize, rep: &mut Reporter) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0usize;
    for _ in 0..words {
        let letters = reduction::random_word(model, &mut rng, MAX_WORD_LEN);
        let good = (|| -> Result<bool> {
            let phi = reduction::compose_word(model, &letters)?;
            let dec = reduction::decompose(model, &phi)?;
            Ok(dec.trace.is_strictly_decreasing()
                && dec.trace.final_height() == &BigInt::from(28)
                && dec.trace.heights.iter().all(|h| *h >= BigInt::from(28)))
        })()
        .unwrap_or(false);
        if good {
            ok += 1;
        }
    }
    rep.push(
        "random_word_round_trips",
        format!("{words}/{words}"),
        format!("{ok}/{words}"),
    );
}

impl VerificationReport {
    /// Run the full battery with the given randomized-suite parameters.
    pub fn run(model: &Model, seed: u64, words: usize) -> VerificationReport {
        let mut rep = Reporter::new();
        check_steiner(model, &mut rep);
        check_chain(model, &mut rep);
        check_curve_octads(model, &mut rep);
        check_graph(model, &mut rep);
        check_weyl(model, &mut rep);
        check_lattice_identification(model, &mut rep);
        check_face_table(model, &mut rep);
        check_profiles(model, &mut rep);
        check_symmetry(model, &mut rep);
        check_fibrations(model, &mut rep);
        check_reduction_suite(model, seed, words, &mut rep);
        let pass = rep.checks.iter().all(|c| c.pass);
        VerificationReport {
            schema: "1".to_string(),
            seed,
            words,
            checks: rep.checks,
            pass,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.pass
    }

    /// Fixed-width human-readable table.
    pub fn render_table(&self) -> String {
        let id_width = self
            .checks
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(8)
            .max(8);
        let exp_width = self
            .checks
            .iter()
            .map(|c| c.expected.len())
            .max()
            .unwrap_or(8)
            .clamp(8, 40);
        let mut out = String::new();
        out.push_str(&format!(
            "{:<id_width$}  {:<exp_width$}  {:<exp_width$}  result\n",
            "check", "expected", "computed"
        ));
        out.push_str(&format!(
            "{}  {}  {}  ------\n",
            "-".repeat(id_width),
            "-".repeat(exp_width),
            "-".repeat(exp_width)
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "{:<id_width$}  {:<exp_width$}  {:<exp_width$}  {}\n",
                c.id,
                c.expected,
                c.computed,
                if c.pass { "PASS" } else { "FAIL" }
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out.push_str(&format!(
            "\n{} checks, {} failed -> {}\n",
            self.checks.len(),
            failed,
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_passes_with_a_small_word_suite() {
        let report = VerificationReport::run(Model::shared(), DEFAULT_SEED, 20);
        for c in &report.checks {
            assert!(c.pass, "{}: expected {}, computed {}", c.id, c.expected, c.computed);
        }
        assert!(report.all_pass());
    }

    #[test]
    fn report_mentions_the_face_table_rows() {
        let report = VerificationReport::run(Model::shared(), DEFAULT_SEED, 5);
        let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
        assert!(ids.contains(&"face_count_E7"));
        assert!(ids.contains(&"w_prime_norm"));
        assert!(ids.contains(&"random_word_round_trips"));
        // Unique ids.
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }
}
