//! Command-line front end.
//!
//! Every subcommand output is deterministic; JSON documents carry
//! `"schema": "1"`. Unbounded integers (matrix entries, vector
//! coordinates) serialize as decimal strings, small structural numbers as
//! JSON numbers, heights as numbers while they fit 64 bits.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num::bigint::BigInt;
use num::traits::ToPrimitive;
use serde_json::{json, Value};

use k3disc7::faces::{FaceId, FaceType};
use k3disc7::golay::Point;
use k3disc7::lattice::IntMat;
use k3disc7::model::Model;
use k3disc7::reduction::{self, Letter};
use k3disc7::report::{VerificationReport, DEFAULT_SEED, DEFAULT_WORDS};
use k3disc7::symmetry::GraphAutomorphism;
use k3disc7::{Error, Result};

#[derive(Parser)]
#[command(
    name = "k3disc7",
    about = "Exact computation of automorphism-group generators for the singular K3 surface of discriminant 7",
    version
)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the 759 octads of the Steiner system, one per line.
    Steiner,
    /// Emit the Coxeter graph as JSON (and optionally a DOT file).
    Graph {
        /// Also write the graph in DOT format to this path.
        #[arg(long)]
        dot: Option<std::path::PathBuf>,
    },
    /// Emit the classified face roots of the chamber as JSON.
    Faces {
        /// Restrict to one type: A6A1, A7, D7 or E7.
        #[arg(long = "type", value_name = "TYPE")]
        rtype: Option<String>,
    },
    /// Emit the graph symmetry group: order, orbits, stabilizers, generators.
    Symmetry,
    /// Emit the elliptic fibration and inversion involution of one face.
    Fibration {
        /// Face identifier such as E7-3, D7-11 or A7-1.
        #[arg(long)]
        face: String,
    },
    /// Reduce an ample-surrogate class (JSON array of 20 integers) into the
    /// chamber.
    Reduce {
        /// The vector, e.g. "[1,0,...,3]".
        #[arg(long)]
        vector: String,
    },
    /// Decompose the isometry given by a word (JSON array of letters; a
    /// letter is a face id string or a cycle list like [[1,2,3],[4,5]];
    /// letters apply to vectors in list order).
    Decompose {
        #[arg(long)]
        word: String,
    },
    /// Run the verification battery; exit code 0 iff every check passes.
    Verify {
        /// Seed of the randomized word suite.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of random words.
        #[arg(long, default_value_t = DEFAULT_WORDS)]
        words: usize,
        /// Emit the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

fn big_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn int_vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| json!(x.to_string())).collect())
}

fn matrix_json(m: &IntMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|x| json!(x.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn point_json(p: Point) -> Value {
    if p.is_infinity() {
        json!("inf")
    } else {
        json!(p.index())
    }
}

/// Print a line, treating a closed pipe as a clean stop.
fn print_line(s: &str) -> bool {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{s}") {
        Ok(()) => true,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => false,
        Err(e) => {
            eprintln!("error: cannot write to stdout: {e}");
            false
        }
    }
}

fn emit(pretty: bool, value: &Value) {
    let rendered = if pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    };
    print_line(&rendered);
}

fn cmd_steiner(model: &Model) {
    for octad in model.golay().octads() {
        let names: Vec<String> = octad
            .sorted_points()
            .iter()
            .map(|p| p.to_string())
            .collect();
        if !print_line(&names.join(" ")) {
            return;
        }
    }
}

fn cmd_graph(model: &Model, pretty: bool, dot: Option<std::path::PathBuf>) -> Result<()> {
    let g = model.ns().graph();
    let vertices: Vec<Value> = (0..k3disc7::ns_embed::NUM_CURVES)
        .map(|v| {
            json!({
                "vertex": v + 1,
                "octad": Value::Array(
                    model.ns().curve_octads()[v]
                        .sorted_points()
                        .into_iter()
                        .map(point_json)
                        .collect()
                ),
                "neighbors": g.neighbors(v).iter().map(|&u| u + 1).collect::<Vec<_>>(),
            })
        })
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .into_iter()
        .map(|(a, b)| json!([a + 1, b + 1]))
        .collect();
    emit(
        pretty,
        &json!({"schema": "1", "vertices": vertices, "edges": edges}),
    );
    if let Some(path) = dot {
        let mut out = String::from("graph coxeter {\n");
        for (a, b) in g.edges() {
            out.push_str(&format!("  {} -- {};\n", a + 1, b + 1));
        }
        out.push_str("}\n");
        std::fs::write(&path, out).map_err(|e| {
            Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
        })?;
    }
    Ok(())
}

fn cmd_faces(model: &Model, pretty: bool, rtype: Option<String>) -> Result<()> {
    let filter = match rtype {
        Some(s) => Some(
            FaceType::parse(&s)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown face type {s}")))?,
        ),
        None => None,
    };
    let records: Vec<Value> = model
        .faces()
        .faces()
        .iter()
        .filter(|f| filter.is_none_or(|t| f.rtype == t))
        .map(|f| {
            let norm = model.ns().inner_rat(&f.projection, &f.projection);
            json!({
                "id": f.id.to_string(),
                "type": f.rtype.name(),
                "attach": f.attach.map(|i| k3disc7::ns_embed::CHAIN_NODES[i]),
                "m": f.root.vector().m,
                "n": f.root.vector().n,
                "lambda": f.root.lambda().coords().to_vec(),
                "projection_norm": norm.to_string(),
                "w_pairing": big_to_json(&(f.scaled_pairing(model.ns().w_prime()) / BigInt::from(7))),
                "profile": f.profile.iter().map(|v| v + 1).collect::<Vec<_>>(),
            })
        })
        .collect();
    emit(pretty, &json!({"schema": "1", "faces": records}));
    Ok(())
}

fn cmd_symmetry(model: &Model, pretty: bool) -> Result<()> {
    let sym = model.symmetry();
    let faces = model.faces();
    let mut orbit_sizes = serde_json::Map::new();
    for t in FaceType::ALL {
        let first = faces
            .faces()
            .iter()
            .position(|f| f.rtype == t)
            .expect("every type inhabited");
        let orbit = sym.face_orbit(first, faces)?;
        orbit_sizes.insert(t.name().to_string(), json!(orbit.len()));
    }
    let mut stabilizer_orders = serde_json::Map::new();
    for t in [FaceType::A7, FaceType::D7, FaceType::E7] {
        let first = faces
            .faces()
            .iter()
            .position(|f| f.rtype == t)
            .expect("every type inhabited");
        let stab = sym.face_stabilizer(first, faces)?;
        stabilizer_orders.insert(t.name().to_string(), json!(stab.len()));
    }
    let generators: Vec<String> = sym
        .generators()
        .iter()
        .map(|&i| sym.element(i).cycle_string())
        .collect();
    emit(
        pretty,
        &json!({
            "schema": "1",
            "order": sym.order(),
            "orbit_sizes": orbit_sizes,
            "stabilizer_orders": stabilizer_orders,
            "generators": generators,
        }),
    );
    Ok(())
}

fn cmd_fibration(model: &Model, pretty: bool, face: &str) -> Result<()> {
    let id = FaceId::parse(face)
        .ok_or_else(|| Error::InvalidArgument(format!("malformed face id {face}")))?;
    let face_index = model
        .faces()
        .index_of(id)
        .ok_or_else(|| Error::InvalidArgument(format!("no face {id}")))?;
    let slot = model.fibrations().slot_of_face(face_index).ok_or_else(|| {
        Error::InvalidArgument(format!("face {id} is a curve face without a fibration"))
    })?;
    let fm = model.fibrations().model(slot);
    let inv = model.fibrations().inversion(slot);
    let face_root = &model.faces().faces()[face_index];
    let diagrams: Vec<Value> = fm
        .diagrams
        .iter()
        .map(|d| {
            json!({
                "kind": d.kind.label(),
                "vertices": d.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "marks": d.marks,
            })
        })
        .collect();
    emit(
        pretty,
        &json!({
            "schema": "1",
            "face": id.to_string(),
            "type": fm.rtype.name(),
            "profile": face_root.profile.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "diagrams": diagrams,
            "sections": fm.sections.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "zero_section": fm.zero_section + 1,
            "fiber_class": int_vec_json(&fm.fiber_class),
            "involution": matrix_json(inv),
        }),
    );
    Ok(())
}

fn parse_vector(s: &str) -> Result<Vec<BigInt>> {
    let value: Value = serde_json::from_str(s)?;
    let arr = value
        .as_array()
        .ok_or_else(|| Error::InvalidArgument("vector must be a JSON array".into()))?;
    arr.iter()
        .map(|x| match x {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::InvalidArgument("non-integer coordinate".into())),
            Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidArgument(format!("bad integer literal {s}"))),
            _ => Err(Error::InvalidArgument(
                "coordinates must be integers or integer strings".into(),
            )),
        })
        .collect()
}

fn parse_word(model: &Model, s: &str) -> Result<Vec<Letter>> {
    let value: Value = serde_json::from_str(s)?;
    let arr = value
        .as_array()
        .ok_or_else(|| Error::InvalidArgument("word must be a JSON array".into()))?;
    arr.iter()
        .map(|letter| match letter {
            Value::String(id) => {
                let fid = FaceId::parse(id)
                    .ok_or_else(|| Error::InvalidArgument(format!("malformed face id {id}")))?;
                let face_index = model
                    .faces()
                    .index_of(fid)
                    .ok_or_else(|| Error::InvalidArgument(format!("no face {fid}")))?;
                if model.fibrations().slot_of_face(face_index).is_none() {
                    return Err(Error::InvalidArgument(format!(
                        "face {fid} carries no involution"
                    )));
                }
                Ok(Letter::Involution(face_index))
            }
            Value::Array(cycles) => {
                let parsed: Result<Vec<Vec<usize>>> = cycles
                    .iter()
                    .map(|c| {
                        c.as_array()
                            .ok_or_else(|| {
                                Error::InvalidArgument("cycle must be an array".into())
                            })?
                            .iter()
                            .map(|v| {
                                v.as_u64().map(|x| x as usize).ok_or_else(|| {
                                    Error::InvalidArgument("cycle entries are vertices".into())
                                })
                            })
                            .collect()
                    })
                    .collect();
                let g = GraphAutomorphism::from_cycles(&parsed?)?;
                if model.symmetry().index_of(&g).is_none() {
                    return Err(Error::InvalidArgument(
                        "permutation is not a graph automorphism".into(),
                    ));
                }
                Ok(Letter::Automorphism(g))
            }
            _ => Err(Error::InvalidArgument(
                "letters are face-id strings or cycle lists".into(),
            )),
        })
        .collect()
}

fn trace_json(heights: &[BigInt]) -> Value {
    Value::Array(heights.iter().map(big_to_json).collect())
}

fn cmd_reduce(model: &Model, pretty: bool, vector: &str) -> Result<()> {
    let v = parse_vector(vector)?;
    let red = reduction::reduce_vector(model, &v)?;
    let steps: Vec<String> = red.word.step_ids(model).map(|id| id.to_string()).collect();
    emit(
        pretty,
        &json!({
            "schema": "1",
            "steps": steps,
            "residual": Value::Null,
            "trace": trace_json(&red.trace.heights),
            "terminal": int_vec_json(&red.terminal),
            "in_chamber": red.terminal == model.ns().w_prime(),
        }),
    );
    Ok(())
}

fn cmd_decompose(model: &Model, pretty: bool, word: &str) -> Result<()> {
    let letters = parse_word(model, word)?;
    let phi = reduction::compose_word(model, &letters)?;
    let dec = reduction::decompose(model, &phi)?;
    let steps: Vec<String> = dec.word.step_ids(model).map(|id| id.to_string()).collect();
    let residual = dec.word.residual.expect("decompose always yields a residual");
    emit(
        pretty,
        &json!({
            "schema": "1",
            "steps": steps,
            "residual": residual.cycles(),
            "trace": trace_json(&dec.trace.heights),
        }),
    );
    Ok(())
}

fn cmd_verify(model: &Model, pretty: bool, seed: u64, words: usize, as_json: bool) -> bool {
    let report = VerificationReport::run(model, seed, words);
    if as_json {
        let value = serde_json::to_value(&report).expect("serializable");
        emit(pretty, &value);
    } else {
        for line in report.render_table().lines() {
            if !print_line(line) {
                break;
            }
        }
    }
    report.all_pass()
}

fn run(cli: Cli) -> Result<bool> {
    let model = Model::shared();
    match cli.command {
        Command::Steiner => {
            cmd_steiner(model);
            Ok(true)
        }
        Command::Graph { dot } => cmd_graph(model, cli.pretty, dot).map(|_| true),
        Command::Faces { rtype } => cmd_faces(model, cli.pretty, rtype).map(|_| true),
        Command::Symmetry => cmd_symmetry(model, cli.pretty).map(|_| true),
        Command::Fibration { face } => cmd_fibration(model, cli.pretty, &face).map(|_| true),
        Command::Reduce { vector } => cmd_reduce(model, cli.pretty, &vector).map(|_| true),
        Command::Decompose { word } => cmd_decompose(model, cli.pretty, &word).map(|_| true),
        Command::Verify { seed, words, json } => {
            Ok(cmd_verify(model, cli.pretty, seed, words, json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
