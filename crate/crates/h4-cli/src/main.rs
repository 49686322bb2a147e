//! Command-line driver: build graded bases, act on vectors, search and
//! certify singular vectors, run the identity check harnesses, flow and
//! extend modules, and emit character tables. All output is JSON with
//! sorted keys on stdout; exit code 0 on success, 2 on budget overruns,
//! 3 on parameter-condition errors.

mod cache;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use h4::character::{character, compare_characters, window_cells, Window};
use h4::error::EngineError;
use h4::json as wire;
use h4::lattice::{build_wl, extension_mode, flow_profile, LatticeElement};
use h4::modules::{apply_word, BaseLabel, Engine, GradedCell, ModuleSpec, ModuleVector};
use h4::scalar::Scalar;
use h4::singular::{oracle_singular, solve_closed_form, verify_singular, SingularSide};
use h4::voa::{borcherds_check, mixed_commutator_check, omega, virasoro_check};

#[derive(Parser)]
#[command(name = "h4", version, about = "Exact engine for the affine Nappi-Witten algebra")]
struct Cli {
    /// Optional JSON config file: {"cell_budget": .., "default_max_degree": ..,
    /// "default_charge_min": .., "default_charge_max": ..}
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Also write the JSON output to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct WindowArgs {
    #[arg(long, allow_negative_numbers = true)]
    max_degree: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    charge_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    charge_max: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize the PBW basis of every cell in a window
    Build {
        /// Family descriptor as JSON
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Apply a mode or a mode word to a vector (rightmost mode first)
    Act {
        /// Vector file ("-" for stdin); the JSON carries its family
        #[arg(long)]
        vector: String,
        /// A single mode, e.g. '["a",1]'
        #[arg(long, conflicts_with = "word")]
        mode: Option<String>,
        /// A JSON array of modes, e.g. '[["d",-1],["b",0]]'
        #[arg(long)]
        word: Option<String>,
    },
    /// Closed-form, oracle, or certification view of singular vectors
    Singular {
        #[arg(long)]
        spec: Option<String>,
        /// Solve the partition-indexed system (needs --side and --n)
        #[arg(long, conflicts_with_all = ["oracle", "verify"])]
        closed_form: bool,
        /// Joint kernel of the raising modes on one cell
        #[arg(long, conflicts_with = "verify")]
        oracle: bool,
        /// Certify a candidate vector from a file
        #[arg(long)]
        verify: bool,
        #[arg(long, value_parser = ["b", "a"])]
        side: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Base label for the intermediate-series family
        #[arg(long, allow_negative_numbers = true)]
        base_idx: Option<i64>,
        /// Override the system's shift parameter (default -n)
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        charge: Option<i64>,
        /// Candidate vector file for --verify
        #[arg(long)]
        vector: Option<String>,
    },
    /// Exact Virasoro-algebra check over a window
    VirasoroCheck {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 3)]
        index_bound: i64,
        /// Also check [h(n), L(m)] = n h(m+n)
        #[arg(long)]
        mixed: bool,
    },
    /// Commutator consequence of the Jacobi identity on a window
    BorcherdsCheck {
        #[arg(long)]
        spec: String,
        /// Vacuum vector: a|b|c|d|omega|one, @file, or inline JSON
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Spectral-flow profile against the predicted target family
    Flow {
        #[arg(long)]
        spec: String,
        /// Lattice element "m1,m2"
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// One mode of the extension vertex operator on C[L] (x) W
    Extend {
        /// Family of the module component w
        #[arg(long)]
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        beta: String,
        /// Vacuum vector u (a|b|c|d|omega|one, @file, or inline JSON)
        #[arg(long)]
        u: String,
        /// Module vector w: @file or inline JSON; defaults to the generator
        #[arg(long)]
        w: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Bi-graded character table of a family
    Character {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Content-addressed table cache directory
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Cell-wise comparison of two character tables
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Clone, Copy)]
struct Config {
    cell_budget: usize,
    default_max_degree: i64,
    default_charge_min: i64,
    default_charge_max: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cell_budget: 20_000,
            default_max_degree: 4,
            default_charge_min: -3,
            default_charge_max: 3,
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<Config, EngineError> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| EngineError::Parse(format!("cannot read config {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| EngineError::Parse(format!("config is not JSON: {e}")))?;
    let mut config = Config::default();
    if let Some(n) = value.get("cell_budget").and_then(Value::as_u64) {
        config.cell_budget = n as usize;
    }
    if let Some(n) = value.get("default_max_degree").and_then(Value::as_i64) {
        config.default_max_degree = n;
    }
    if let Some(n) = value.get("default_charge_min").and_then(Value::as_i64) {
        config.default_charge_min = n;
    }
    if let Some(n) = value.get("default_charge_max").and_then(Value::as_i64) {
        config.default_charge_max = n;
    }
    Ok(config)
}

fn window_from(args: WindowArgs, config: &Config) -> Window {
    Window::new(
        args.max_degree.unwrap_or(config.default_max_degree),
        args.charge_min.unwrap_or(config.default_charge_min),
        args.charge_max.unwrap_or(config.default_charge_max),
    )
}

fn parse_spec(text: &str) -> Result<ModuleSpec, EngineError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| EngineError::Parse(format!("family descriptor is not JSON: {e}")))?;
    wire::spec_from_json(&value)
}

fn parse_lattice(text: &str) -> Result<LatticeElement, EngineError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(EngineError::Parse(format!(
            "lattice element must be \"m1,m2\": {text:?}"
        )));
    }
    let m1 = parts[0]
        .trim()
        .parse()
        .map_err(|_| EngineError::Parse(format!("bad lattice coordinate {:?}", parts[0])))?;
    let m2 = parts[1]
        .trim()
        .parse()
        .map_err(|_| EngineError::Parse(format!("bad lattice coordinate {:?}", parts[1])))?;
    Ok(LatticeElement::new(m1, m2))
}

fn read_source(source: &str) -> Result<String, EngineError> {
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| EngineError::Parse(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(source)
            .map_err(|e| EngineError::Parse(format!("cannot read {source}: {e}")))
    }
}

fn parse_vector_source(source: &str) -> Result<(ModuleSpec, ModuleVector), EngineError> {
    let text = if let Some(path) = source.strip_prefix('@') {
        read_source(path)?
    } else if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        read_source(source)?
    };
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| EngineError::Parse(format!("vector is not JSON: {e}")))?;
    wire::vector_from_json(&value)
}

/// A vacuum-module operand: named generator vectors, the conformal
/// vector, the vacuum itself, or an explicit vector.
fn parse_vacuum_operand(source: &str) -> Result<ModuleVector, EngineError> {
    use h4::algebra::Mode;
    use h4::modules::{PbwWord, Term};
    let named = |mode: Mode| {
        Ok(ModuleVector::single(
            Term::new(PbwWord::new(vec![mode])?, BaseLabel::Hw),
            Scalar::one(),
        ))
    };
    match source {
        "a" => named(Mode::a(-1)),
        "b" => named(Mode::b(-1)),
        "c" => named(Mode::c(-1)),
        "d" => named(Mode::d(-1)),
        "omega" => Ok(omega()),
        "one" | "1" => Ok(ModuleVector::base_vector(BaseLabel::Hw)),
        other => {
            let (spec, v) = parse_vector_source(other)?;
            if spec != ModuleSpec::vacuum0() {
                return Err(EngineError::Parse(
                    "vacuum operands must live in the level-1 vacuum module".into(),
                ));
            }
            Ok(v)
        }
    }
}

fn run(cli: &Cli) -> Result<Value, EngineError> {
    let config = load_config(&cli.config)?;
    let engine = Engine::with_budget(config.cell_budget);
    match &cli.command {
        Command::Build { spec, window } => {
            let spec = parse_spec(spec)?;
            let window = window_from(*window, &config);
            let mut cells = Vec::new();
            for cell in window_cells(&spec, window) {
                let basis = engine.graded_basis(&spec, cell)?;
                cells.push(json!({
                    "basis": basis.iter().map(wire::term_to_json).collect::<Vec<Value>>(),
                    "charge": cell.charge,
                    "degree": cell.degree,
                    "dim": basis.len(),
                }));
            }
            Ok(json!({
                "cells": cells,
                "spec": wire::spec_to_json(&spec),
                "window": wire::window_to_json(&window),
            }))
        }
        Command::Act { vector, mode, word } => {
            let (spec, v) = parse_vector_source(vector)?;
            let modes: Vec<h4::algebra::Mode> = match (mode, word) {
                (Some(m), None) => vec![wire::mode_from_json(&parse_json(m)?)?],
                (None, Some(w)) => parse_json(w)?
                    .as_array()
                    .ok_or_else(|| EngineError::Parse("word must be a JSON array".into()))?
                    .iter()
                    .map(wire::mode_from_json)
                    .collect::<Result<_, _>>()?,
                _ => {
                    return Err(EngineError::Parse(
                        "act needs exactly one of --mode or --word".into(),
                    ))
                }
            };
            let moved = apply_word(&spec, &modes, &v)?;
            Ok(wire::vector_to_json(&spec, &moved))
        }
        Command::Singular {
            spec,
            closed_form,
            oracle,
            verify,
            side,
            n,
            k,
            base_idx,
            shift,
            degree,
            charge,
            vector,
        } => {
            if *closed_form {
                let spec = parse_spec(spec.as_deref().ok_or_else(miss_spec)?)?;
                let side = match side.as_deref() {
                    Some("b") => SingularSide::BSide,
                    Some("a") => SingularSide::ASide,
                    _ => {
                        return Err(EngineError::Parse("--closed-form needs --side b|a".into()))
                    }
                };
                let n = n.ok_or_else(|| EngineError::Parse("--closed-form needs --n".into()))?;
                let base = match base_idx {
                    Some(j) => BaseLabel::Idx(*j),
                    None => match &spec {
                        ModuleSpec::Third { .. } => BaseLabel::Idx(0),
                        _ => BaseLabel::Hw,
                    },
                };
                let shift = shift.as_deref().map(|s| s.parse::<Scalar>()).transpose()?;
                let sv = solve_closed_form(&spec, side, n, *k, base, shift)?;
                Ok(wire::singular_to_json(&spec, &sv))
            } else if *oracle {
                let spec = parse_spec(spec.as_deref().ok_or_else(miss_spec)?)?;
                let (Some(degree), Some(charge)) = (degree, charge) else {
                    return Err(EngineError::Parse(
                        "--oracle needs --degree and --charge".into(),
                    ));
                };
                let cell = GradedCell::new(*degree, *charge);
                let basis = oracle_singular(&engine, &spec, cell)?;
                Ok(json!({
                    "basis": basis
                        .iter()
                        .map(|v| wire::vector_to_json(&spec, v))
                        .collect::<Vec<Value>>(),
                    "cell": [cell.degree, cell.charge],
                    "dim": basis.len(),
                }))
            } else if *verify {
                let source = vector
                    .as_deref()
                    .ok_or_else(|| EngineError::Parse("--verify needs --vector".into()))?;
                let (spec, v) = parse_vector_source(source)?;
                let sv = verify_singular(&spec, &v)?;
                Ok(wire::singular_to_json(&spec, &sv))
            } else {
                Err(EngineError::Parse(
                    "singular needs one of --closed-form, --oracle, --verify".into(),
                ))
            }
        }
        Command::VirasoroCheck {
            spec,
            window,
            index_bound,
            mixed,
        } => {
            let spec = parse_spec(spec)?;
            let window = window_from(*window, &config);
            let report = virasoro_check(&engine, &spec, window, *index_bound)?;
            if *mixed {
                let mixed_report = mixed_commutator_check(&engine, &spec, window, *index_bound)?;
                Ok(json!({
                    "mixed": wire::report_to_json(&mixed_report),
                    "virasoro": wire::report_to_json(&report),
                }))
            } else {
                Ok(wire::report_to_json(&report))
            }
        }
        Command::BorcherdsCheck {
            spec,
            u,
            v,
            p,
            q,
            window,
        } => {
            let spec = parse_spec(spec)?;
            let window = window_from(*window, &config);
            let u = parse_vacuum_operand(u)?;
            let v = parse_vacuum_operand(v)?;
            let mut reports = Vec::new();
            let mut all_ok = true;
            for cell in window_cells(&spec, window) {
                let report = borcherds_check(&engine, &spec, &u, &v, *p, *q, cell)?;
                all_ok &= report.ok;
                reports.push(wire::report_to_json(&report));
            }
            Ok(json!({ "cells": reports, "status": if all_ok { "pass" } else { "fail" } }))
        }
        Command::Flow {
            spec,
            alpha,
            window,
        } => {
            let spec = parse_spec(spec)?;
            let alpha = parse_lattice(alpha)?;
            let window = window_from(*window, &config);
            let profile = flow_profile(&engine, &spec, &alpha, window)?;
            Ok(wire::flow_profile_to_json(&profile))
        }
        Command::Extend {
            spec,
            alpha,
            beta,
            u,
            w,
            n,
        } => {
            let spec = parse_spec(spec)?;
            let alpha = parse_lattice(alpha)?;
            let beta = parse_lattice(beta)?;
            let u = parse_vacuum_operand(u)?;
            let w_vec = match w {
                None => {
                    let base = match &spec {
                        ModuleSpec::Third { .. } => BaseLabel::Idx(0),
                        _ => BaseLabel::Hw,
                    };
                    ModuleVector::base_vector(base)
                }
                Some(source) => {
                    let (w_spec, w_vec) = parse_vector_source(source)?;
                    if w_spec != spec {
                        return Err(EngineError::Parse(
                            "--w must live in the family given by --spec".into(),
                        ));
                    }
                    w_vec
                }
            };
            build_wl(&spec)?;
            let ev = extension_mode(&spec, &alpha, &u, *n, &beta, &w_vec)?;
            Ok(wire::extension_to_json(&spec, &ev))
        }
        Command::Character {
            spec,
            window,
            cache_dir,
        } => {
            let spec = parse_spec(spec)?;
            let window = window_from(*window, &config);
            if let Some(dir) = cache_dir {
                if let Some(hit) = cache::lookup(dir, &spec, &window)? {
                    return Ok(hit);
                }
            }
            let table = character(&engine, &spec, window)?;
            let encoded = wire::table_to_json(&table);
            if let Some(dir) = cache_dir {
                cache::store(dir, &spec, &window, &encoded)?;
            }
            Ok(encoded)
        }
        Command::Compare { a, b } => {
            let read = |path: &PathBuf| -> Result<_, EngineError> {
                let text = fs::read_to_string(path).map_err(|e| {
                    EngineError::Parse(format!("cannot read {}: {e}", path.display()))
                })?;
                let value: Value = serde_json::from_str(&text)
                    .map_err(|e| EngineError::Parse(format!("not JSON: {e}")))?;
                wire::table_from_json(&value)
            };
            let ta = read(a)?;
            let tb = read(b)?;
            let outcome = compare_characters(&ta, &tb)?;
            Ok(wire::compare_outcome_to_json(&outcome))
        }
    }
}

fn miss_spec() -> EngineError {
    EngineError::Parse("this mode needs --spec".into())
}

fn parse_json(text: &str) -> Result<Value, EngineError> {
    serde_json::from_str(text).map_err(|e| EngineError::Parse(format!("not JSON: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let text = serde_json::to_string_pretty(&value).expect("serializable output");
            println!("{text}");
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
