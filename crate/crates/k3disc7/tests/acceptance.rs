//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every expected value is frozen here; nothing is tuned at runtime.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use k3disc7::faces::FaceType;
use k3disc7::golay::{base_octad, Point, PointSet};
use k3disc7::lattice::{
    discriminant_form, normalize_mod_2z, overlattice_index, root_lattice_gram, IntMat, RootKind,
};
use k3disc7::lorentzian::ii_inner;
use k3disc7::model::Model;
use k3disc7::ns_embed::{CHAIN_NODES, NS_RANK, NUM_CURVES};
use k3disc7::reduction;
use k3disc7::report::{u_a6_cubed_gram, u_a6_cubed_rows, CURVE_OCTADS, HEPTAGONS};
use k3disc7::symmetry::expected_stabilizers;

fn model() -> &'static Model {
    Model::shared()
}

fn pass(criterion: usize, name: &str) {
    println!("criterion {criterion:02} ({name}): PASS");
}

#[test]
fn criterion_01_steiner_golay() {
    let code = model().golay();
    assert_eq!(code.octads().len(), 759, "octad count");
    assert!(code.octads().contains(&base_octad()), "base octad generated");
    assert_eq!(code.dimension(), 12, "code dimension");
    assert_eq!(code.codewords().len(), 4096);

    let dist = code.weight_distribution();
    for (w, count) in dist.iter().enumerate() {
        let expected = match w {
            0 | 24 => 1,
            8 | 16 => 759,
            12 => 2576,
            _ => 0,
        };
        assert_eq!(*count, expected, "weight {w}");
    }

    // All C(24,5) = 42504 five-subsets complete uniquely.
    let masks: Vec<u32> = code.octads().iter().map(|o| o.points().mask()).collect();
    let mut total = 0usize;
    for a in 0..20u32 {
        for b in (a + 1)..21 {
            for c in (b + 1)..22 {
                for d in (c + 1)..23 {
                    for e in (d + 1)..24 {
                        let five = (1 << a) | (1 << b) | (1 << c) | (1 << d) | (1 << e);
                        let hits = masks.iter().filter(|&&m| five & !m == 0).count();
                        assert_eq!(hits, 1, "five-subset mask {five:#x}");
                        total += 1;
                    }
                }
            }
        }
    }
    assert_eq!(total, 42504);
    pass(1, "Steiner system and Golay code");
}

#[test]
fn criterion_02_named_roots_span_a6() {
    let chain = model().ns().chain();
    let expected = root_lattice_gram(RootKind::A, 6).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            let pairing = ii_inner(chain.roots()[i].vector(), chain.roots()[j].vector());
            assert_eq!(
                BigInt::from(pairing),
                expected.matrix()[(i, j)],
                "chain pairing <{}, {}>",
                CHAIN_NODES[i],
                CHAIN_NODES[j]
            );
        }
    }
    for (k, r) in chain.roots().iter().enumerate() {
        assert_eq!(r.vector().norm(), -2, "norm of {}", CHAIN_NODES[k]);
    }
    pass(2, "named roots form the A6 chain");
}

#[test]
fn criterion_03_curve_octads_match_printed_list() {
    let octads = model().ns().curve_octads();
    assert_eq!(octads.len(), 28);
    for (i, (row, oct)) in CURVE_OCTADS.iter().zip(octads).enumerate() {
        let expected: Vec<Point> = row
            .iter()
            .map(|&x| {
                if x < 0 {
                    Point::INFINITY
                } else {
                    Point::from_field(x as u8).unwrap()
                }
            })
            .collect();
        assert_eq!(
            oct.points(),
            PointSet::from_points(&expected),
            "octad K{}",
            i + 1
        );
    }
    pass(3, "curve octads equal the printed list");
}

#[test]
fn criterion_04_coxeter_graph_shape() {
    let g = model().ns().graph();
    assert_eq!(NUM_CURVES, 28);
    assert_eq!(g.num_edges(), 42);
    for v in 0..NUM_CURVES {
        assert_eq!(g.neighbors(v).len(), 3, "vertex {}", v + 1);
    }
    assert_eq!(g.girth(), 7);
    for hept in HEPTAGONS {
        let cycle: Vec<usize> = hept.iter().map(|&v| v - 1).collect();
        assert!(g.is_induced_cycle(&cycle), "heptagon {hept:?}");
    }
    pass(4, "Coxeter graph: 28 vertices, 42 edges, cubic, girth 7, heptagons");
}

#[test]
fn criterion_05_weyl_projection() {
    let ns = model().ns();
    // w' is the sum of the 28 curve classes (also checked at build time
    // against the orthogonal projection of (1,0;0)).
    let mut sum = vec![BigInt::zero(); NS_RANK];
    for c in ns.curves() {
        for (acc, x) in sum.iter_mut().zip(c) {
            *acc += x;
        }
    }
    assert_eq!(&sum, ns.w_prime());
    assert_eq!(ns.inner_int(ns.w_prime(), ns.w_prime()), BigInt::from(28));
    for (j, c) in ns.curves().iter().enumerate() {
        assert_eq!(ns.inner_int(ns.w_prime(), c), BigInt::one(), "<w', r_{}>", j + 1);
    }
    let expected: Vec<BigRational> = [-3i64, -5, -6, -6, -5, -3]
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    assert_eq!(ns.w_dprime_chain_coeffs(), expected.as_slice());
    pass(5, "Weyl projection: w' = sum r_i, (w')^2 = 28, w'' coefficients");
}

#[test]
fn criterion_06_lattice_identification() {
    let ns = model().ns();
    assert_eq!(ns.gram().rank(), 20);
    assert_eq!(ns.gram().det().abs(), BigInt::from(7));
    assert_eq!(ns.gram().signature(), (1, 19, 0));

    let rows = u_a6_cubed_rows(model()).unwrap();
    let index = overlattice_index(&rows, &u_a6_cubed_gram(), ns.gram()).unwrap();
    assert_eq!(index, BigInt::from(7), "index of U + A6^3 in S_X");

    let df = discriminant_form(ns.gram()).unwrap();
    assert_eq!(df.factor_orders, vec![BigInt::from(7)]);
    let computed = df.cyclic_value_multiset().unwrap();
    let mut expected: Vec<BigRational> = (0..7i64)
        .map(|k| normalize_mod_2z(&BigRational::new(BigInt::from(-4 * k * k), BigInt::from(7))))
        .collect();
    expected.sort();
    assert_eq!(computed, expected, "q-value multiset matches <-4/7>");
    pass(6, "S_X: rank 20, det 7, signature (1,19), U+A6^3 index 7, q = <-4/7>");
}

#[test]
fn criterion_07_face_classification_table() {
    let m = model();
    let table = [
        (FaceType::A6A1, 28usize, "-2", 1i64),
        (FaceType::A7, 14, "-8/7", 4),
        (FaceType::D7, 28, "-4/7", 6),
        (FaceType::E7, 56, "-2/7", 7),
    ];
    for (t, count, norm, pairing) in table {
        let block = m.faces().of_type(t);
        assert_eq!(block.len(), count, "{t} count");
        for f in block {
            assert_eq!(
                m.ns().inner_rat(&f.projection, &f.projection).to_string(),
                norm,
                "{t} projection norm"
            );
            assert_eq!(
                f.scaled_pairing(m.ns().w_prime()),
                BigInt::from(7 * pairing),
                "{t} w'-pairing"
            );
        }
    }
    let subcase = |t: FaceType, node: usize| {
        m.faces()
            .of_type(t)
            .iter()
            .filter(|f| f.attach == Some(node))
            .count()
    };
    assert_eq!(subcase(FaceType::A7, 0), 7, "A7 at y");
    assert_eq!(subcase(FaceType::A7, 5), 7, "A7 at t");
    assert_eq!(subcase(FaceType::D7, 1), 14, "D7 at z");
    assert_eq!(subcase(FaceType::D7, 4), 14, "D7 at q");
    assert_eq!(subcase(FaceType::E7, 2), 28, "E7 at x");
    assert_eq!(subcase(FaceType::E7, 3), 28, "E7 at p");
    assert!(m
        .faces()
        .of_type(FaceType::A6A1)
        .iter()
        .all(|f| f.attach.is_none()));
    pass(7, "face table: counts 28/14/28/56, norms, pairings, sub-families");
}

#[test]
fn criterion_08_profiles_and_distances() {
    let m = model();
    let find_profile = |xi: [i64; 24]| -> Vec<usize> {
        m.faces()
            .faces()
            .iter()
            .find(|f| *f.root.lambda().coords() == xi)
            .map(|f| f.profile.iter().map(|v| v + 1).collect())
            .expect("face with given lambda")
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
    assert_eq!(
        find_profile(doubled(&[-1, 0, 1, 2, 3, 5, 14, 17])),
        vec![23, 24, 25, 28]
    );
    let mut d7_lambda = [1i64; 24];
    d7_lambda[Point::from_field(6).unwrap().rank()] -= 4;
    assert_eq!(find_profile(d7_lambda), vec![2, 5, 11, 14, 16, 23]);
    assert_eq!(
        find_profile(doubled(&[-1, 0, 3, 13, 14, 16, 19, 21])),
        vec![5, 6, 8, 11, 24, 25, 27]
    );

    for f in m.faces().of_type(FaceType::A7) {
        assert_eq!(f.profile.len(), 4);
        assert_eq!(m.faces().edge_distance_stats(f, m.ns()), vec![(4, 6)]);
    }
    for f in m.faces().of_type(FaceType::D7) {
        assert_eq!(f.profile.len(), 6);
        assert_eq!(
            m.faces().edge_distance_stats(f, m.ns()),
            vec![(3, 12), (4, 3)]
        );
    }
    for f in m.faces().of_type(FaceType::E7) {
        assert_eq!(f.profile.len(), 7);
    }

    let mut per_vertex = [0usize; NUM_CURVES];
    for f in m.faces().of_type(FaceType::A7) {
        for &v in &f.profile {
            per_vertex[v] += 1;
        }
    }
    assert!(per_vertex.iter().all(|&c| c == 2), "two A7 quadruples per vertex");
    pass(8, "profiles, sizes 4/6/7, distance multisets, two quadruples per vertex");
}

#[test]
fn criterion_09_symmetry_group() {
    let m = model();
    let sym = m.symmetry();
    assert_eq!(sym.order(), 336);

    let orbits = sym.orbits_on_faces(m.faces()).unwrap();
    let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![14, 28, 28, 56], "one orbit per face type");
    for orbit in &orbits {
        let t = m.faces().faces()[orbit[0]].rtype;
        assert!(orbit.iter().all(|&f| m.faces().faces()[f].rtype == t));
        assert_eq!(orbit.len(), m.faces().of_type(t).len());
    }

    for (rtype, order, multiset) in expected_stabilizers() {
        let face_idx = m
            .faces()
            .faces()
            .iter()
            .position(|f| f.rtype == rtype)
            .unwrap();
        let stab = sym.face_stabilizer(face_idx, m.faces()).unwrap();
        assert_eq!(stab.len(), order, "{rtype} stabilizer order");
        assert_eq!(sym.order_multiset(&stab), multiset, "{rtype} element orders");
        assert_eq!(336, order * m.faces().of_type(rtype).len(), "orbit-stabilizer");
    }

    let gram = m.ns().gram().matrix();
    let w = m.ns().w_prime();
    for i in 0..sym.order() {
        let lift = sym.lift(i);
        assert_eq!(&lift.transpose().mul(gram).mul(lift), gram);
        assert_eq!(lift.mul_vec(w), w);
    }
    pass(9, "PGL2(7): order 336, transitive per type, stabilizers D3/A4/S4, lifts");
}

#[test]
fn criterion_10_fibrations_and_inversions() {
    let m = model();
    let ns = m.ns();
    let gram = ns.gram().matrix();
    let identity = IntMat::identity(NS_RANK);
    assert_eq!(m.fibrations().len(), 98);
    for slot in 0..m.fibrations().len() {
        let fm = m.fibrations().model(slot);
        let face = &m.faces().faces()[fm.face_index];
        let sizes: Vec<usize> = fm.diagrams.iter().map(|d| d.vertices.len()).collect();
        match fm.rtype {
            FaceType::E7 => {
                assert_eq!(sizes, vec![18]);
                assert_eq!(fm.sections.len(), 3);
                assert_eq!(18 + 3, 21);
            }
            FaceType::D7 => {
                assert_eq!(sizes, vec![7, 12]);
                assert_eq!(fm.sections.len(), 3);
                assert_eq!(7 + 12 + 3, 22);
            }
            FaceType::A7 => {
                assert_eq!(sizes, vec![8, 6, 6]);
                assert_eq!(fm.sections.len(), 4);
                assert_eq!(8 + 6 + 6 + 4, 24);
            }
            FaceType::A6A1 => unreachable!(),
        }
        // The partition covers exactly the curves orthogonal to the face.
        let mut covered: Vec<usize> = fm
            .diagrams
            .iter()
            .flat_map(|d| d.vertices.clone())
            .chain(fm.sections.iter().copied())
            .collect();
        covered.sort_unstable();
        let mut orth: Vec<usize> =
            (0..NUM_CURVES).filter(|v| !face.profile.contains(v)).collect();
        orth.sort_unstable();
        assert_eq!(covered, orth, "face {}", face.id);

        let f = &fm.fiber_class;
        assert!(ns.inner_int(f, f).is_zero(), "fiber isotropic");
        for d in &fm.diagrams {
            assert_eq!(&k3disc7::fibrations::fiber_class(ns, d), f, "fiber consistency");
        }

        let inv = m.fibrations().inversion(slot);
        assert_eq!(inv.mul(inv), identity, "involution");
        assert_eq!(&inv.transpose().mul(gram).mul(inv), gram, "isometry");
        let neg: Vec<BigInt> = face.proj7.iter().map(|x| -x).collect();
        assert_eq!(inv.mul_vec(&face.proj7), neg, "iota(r') = -r'");
        let c = BigInt::from(face.rtype.descent_factor());
        let reflected: Vec<BigInt> = ns
            .w_prime()
            .iter()
            .zip(&face.proj7)
            .map(|(w, p)| w + &c * p)
            .collect();
        assert_eq!(inv.mul_vec(ns.w_prime()), reflected, "iota(w') = s_r'(w')");
    }
    pass(10, "98 fibrations: partitions, isotropic fibers, inversion identities");
}

#[test]
fn criterion_11_reduction_round_trips() {
    let m = model();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let words = 1000;
    for i in 0..words {
        let letters = reduction::random_word(m, &mut rng, 12);
        let phi = reduction::compose_word(m, &letters).unwrap();
        let dec = reduction::decompose(m, &phi)
            .unwrap_or_else(|e| panic!("word {i}: {e}"));
        // decompose verified the exact matrix recomposition internally;
        // check the trace discipline here.
        assert!(dec.trace.is_strictly_decreasing(), "word {i}: trace");
        assert_eq!(dec.trace.final_height(), &BigInt::from(28), "word {i}");
        assert!(
            dec.trace.heights.iter().all(|h| *h >= BigInt::from(28)),
            "word {i}: heights bounded below by 28"
        );
        // Independent recomposition from the returned word.
        let mut letters_back = vec![reduction::Letter::Automorphism(
            dec.word.residual.unwrap(),
        )];
        letters_back.extend(
            dec.word
                .steps
                .iter()
                .rev()
                .map(|&f| reduction::Letter::Involution(f)),
        );
        assert_eq!(
            reduction::compose_word(m, &letters_back).unwrap(),
            phi,
            "word {i}: matrix-identical recomposition"
        );
    }
    pass(11, "1000 random words reduce and decompose exactly");
}
