//! Command-line front end for the `fractalcube` crate.
//!
//! Every subcommand writes a JSON report (or an export) to stdout or to
//! `--out`. Exit status: 0 when all requested checks pass, 1 when a check
//! fails, 2 for usage errors, 3 for runtime errors (with a JSON error
//! report on stdout).

mod report;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fractalcube::dimension::{
    box_count_series, density_series, density_series_eventual, estimate_dimension,
    mixture_dimension,
};
use fractalcube::hyperspace::{holder_check, HolderOptions};
use fractalcube::metric::{verify_sandwich, SandwichReport};
use fractalcube::topology::{
    complement_components, components, dendrite_conditions, wraps_torus, Adjacency,
};
use fractalcube::voxel::{encode_binary, write_csv, write_obj, DEFAULT_CELL_BUDGET};
use fractalcube::{BinaryWord, DigitSet, Error, FractalCube, VoxelSet, WordSpec};
use num_rational::Ratio;
use serde_json::Value;

use report::{envelope, num, object, render};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "fractalcube",
    version,
    about = "Fractal cubes from two digit sets"
)]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Maximum number of cells any generated set may hold.
    #[arg(long, global = true, env = "FRACTALCUBE_CELL_BUDGET")]
    pub cell_budget: Option<u64>,
    /// Digit-set file replacing a built-in letter, as `PATH` (next letter,
    /// starting at 0) or `LETTER=PATH`.
    #[arg(long = "digits-file", global = true)]
    pub digits_file: Vec<String>,
    /// Write the report or export here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SetSource {
    /// Address word: literal (`0110`) or eventually periodic (`01:1`).
    #[arg(long)]
    pub word: Option<WordSpec>,
    /// Union iterate of this depth over both letters.
    #[arg(long)]
    pub full: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Plain,
    Torus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Obj,
    Csv,
    Bin,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an iterate and report its size.
    Gen {
        #[arg(long)]
        word: WordSpec,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Face-adjacency components of an iterate or of its complement.
    Components {
        #[command(flatten)]
        source: SetSource,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        mode: Mode,
        #[arg(long)]
        complement: bool,
    },
    /// Components on the 3-torus with the axes each one wraps around.
    Torus {
        #[command(flatten)]
        source: SetSource,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        complement: bool,
    },
    /// Minimum and Hausdorff distance of two iterates against the prefix bounds.
    Distance {
        /// Two words separated by a comma.
        #[arg(long, value_delimiter = ',', required = true)]
        words: Vec<BinaryWord>,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Box counts of the prefixes of a word and the fitted dimension.
    Boxdim {
        #[arg(long)]
        word: WordSpec,
        #[arg(long)]
        kmax: usize,
        /// Also write the `k,N,exponent` table here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Digit-level dendrite conditions of both digit sets.
    Dendrite,
    /// Hölder comparison of components with Cantor points over all word pairs.
    Holder {
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Run the aggregate checks.
    Verify {
        /// Run every check.
        #[arg(long)]
        all: bool,
        /// Run selected checks.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(verify::CHECKS))]
        check: Vec<String>,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Export an iterate as an OBJ mesh, CSV cell list or binary run-length file.
    Export {
        #[arg(long)]
        word: WordSpec,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "obj")]
        format: Format,
        /// Share vertices between neighbouring cubes.
        #[arg(long)]
        weld: bool,
    },
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(Error::Io(e))
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Runs a parsed command line, writing reports to `stdout` unless `--out`
/// is given. Returns the process exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if let Some(t) = cli.threads {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global();
    }
    match execute(&cli, stdout) {
        Ok(passed) => {
            if passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(e)) => {
            let kind = format!("{e:?}");
            let kind = kind
                .split(['(', ' ', '{'])
                .next()
                .unwrap_or_default()
                .to_string();
            let body = object([(
                "error",
                object([("kind", kind.into()), ("message", e.to_string().into())]),
            )]);
            let _ =
                stdout.write_all(render(&envelope(command_name(&cli.command), body)).as_bytes());
            EXIT_RUNTIME
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen { .. } => "gen",
        Command::Components { .. } => "components",
        Command::Torus { .. } => "torus",
        Command::Distance { .. } => "distance",
        Command::Boxdim { .. } => "boxdim",
        Command::Dendrite => "dendrite",
        Command::Holder { .. } => "holder",
        Command::Verify { .. } => "verify",
        Command::Export { .. } => "export",
    }
}

fn load_cube(cli: &Cli) -> Result<FractalCube, Failure> {
    let defaults = FractalCube::cross_frame();
    let mut letters = [defaults.letter(0).clone(), defaults.letter(1).clone()];
    let mut next = 0usize;
    for spec in &cli.digits_file {
        let (letter, path) = match spec.split_once('=') {
            Some(("0", p)) => (0, p),
            Some(("1", p)) => (1, p),
            _ => (next, spec.as_str()),
        };
        if letter > 1 {
            return Err(usage("at most two digit files (letters 0 and 1)"));
        }
        let text = fs::read_to_string(path)?;
        letters[letter] = DigitSet::from_text(&text)?;
        next = letter + 1;
    }
    let [zero, one] = letters;
    let budget = cli.cell_budget.unwrap_or(DEFAULT_CELL_BUDGET);
    Ok(FractalCube::new(zero, one)?.with_cell_budget(budget))
}

fn resolve_word(spec: &WordSpec, depth: Option<usize>) -> BinaryWord {
    spec.prefix(depth.unwrap_or_else(|| spec.natural_len()))
}

fn source_set(
    cube: &FractalCube,
    source: &SetSource,
    depth: Option<usize>,
) -> Result<(VoxelSet, Value), Failure> {
    match (&source.word, source.full) {
        (Some(spec), _) => {
            let w = resolve_word(spec, depth);
            Ok((cube.iterate(&w)?, Value::from(w.to_string())))
        }
        (None, Some(k)) => Ok((cube.full_iterate(k)?, Value::Null)),
        (None, None) => Err(usage("one of --word or --full is required")),
    }
}

fn emit(cli: &Cli, stdout: &mut dyn Write, bytes: &[u8]) -> io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, bytes),
        None => stdout.write_all(bytes),
    }
}

fn emit_json(cli: &Cli, stdout: &mut dyn Write, body: Value) -> io::Result<()> {
    emit(
        cli,
        stdout,
        render(&envelope(command_name(&cli.command), body)).as_bytes(),
    )
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(usage(format!(
            "tolerance must be positive and finite, got {tol}"
        )))
    }
}

fn sandwich_json(r: &SandwichReport) -> Value {
    let d = &r.distance;
    object([
        ("s", r.s.into()),
        ("d_min", num(d.d_min)),
        ("dH_lo", num(d.d_hausdorff_lo)),
        ("dH_hi", num(d.d_hausdorff_hi)),
        ("passed", r.passed().into()),
        (
            "bounds",
            object([
                ("min_ok", r.min_ok.into()),
                ("lower_ok", r.lower_ok.into()),
                ("upper_sqrt5_ok", r.upper_sqrt5_ok.into()),
                ("upper_sqrt2_ok", r.upper_sqrt2_ok.into()),
                ("upper_weak_ok", r.upper_weak_ok.into()),
            ]),
        ),
    ])
}

fn labeling_json(
    v: &VoxelSet,
    mode: Adjacency,
    complement: bool,
    budget: u64,
) -> Result<Value, Failure> {
    let target;
    let labeling = if complement {
        target = v.complement(budget)?;
        complement_components(v, mode, budget)?
    } else {
        target = v.clone();
        components(v, mode)
    };
    let wraps = match mode {
        Adjacency::Torus => wraps_torus(&labeling, &target)?
            .iter()
            .map(|w| {
                object([
                    ("axes", Value::from(w.axes.to_vec())),
                    ("rank", w.rank.into()),
                ])
            })
            .collect(),
        Adjacency::Plain => Vec::new(),
    };
    let json = object([
        ("depth", v.depth().into()),
        ("mode", mode.name().into()),
        ("complement", complement.into()),
        ("cells", target.len().into()),
        ("component_count", labeling.component_count().into()),
        ("sizes", Value::from(labeling.sizes().to_vec())),
        ("wrap_flags", Value::Array(wraps)),
    ]);
    Ok(json)
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<bool, Failure> {
    let cube = load_cube(cli)?;
    match &cli.command {
        Command::Gen { word, depth } => {
            let w = resolve_word(word, *depth);
            let v = cube.iterate(&w)?;
            emit_json(
                cli,
                stdout,
                object([
                    ("word", w.to_string().into()),
                    ("base", cube.base().into()),
                    ("depth", w.len().into()),
                    ("cells", v.len().into()),
                    ("product_formula", cube.product_count(&w).to_string().into()),
                ]),
            )?;
            Ok(true)
        }
        Command::Components {
            source,
            depth,
            mode,
            complement,
        } => {
            let (v, word) = source_set(&cube, source, *depth)?;
            let mode = match mode {
                Mode::Plain => Adjacency::Plain,
                Mode::Torus => Adjacency::Torus,
            };
            let mut json = labeling_json(&v, mode, *complement, cube.cell_budget())?;
            json["word"] = word;
            emit_json(cli, stdout, json)?;
            Ok(true)
        }
        Command::Torus {
            source,
            depth,
            complement,
        } => {
            let (v, word) = source_set(&cube, source, *depth)?;
            let mut json = labeling_json(&v, Adjacency::Torus, *complement, cube.cell_budget())?;
            json["word"] = word;
            emit_json(cli, stdout, json)?;
            Ok(true)
        }
        Command::Distance { words, tol } => {
            check_tol(*tol)?;
            let [a, b] = words.as_slice() else {
                return Err(usage("--words needs exactly two words"));
            };
            if a.len() != b.len() || a == b {
                return Err(usage("--words needs two distinct words of equal length"));
            }
            let r = verify_sandwich(&cube, a, b, *tol)?;
            let mut json = sandwich_json(&r);
            json["words"] = Value::from(vec![a.to_string(), b.to_string()]);
            json["tol"] = num(*tol);
            emit_json(cli, stdout, json)?;
            Ok(r.passed())
        }
        Command::Boxdim { word, kmax, csv } => {
            boxdim(cli, &cube, word, *kmax, csv.as_ref(), stdout)
        }
        Command::Dendrite => {
            let rows: Vec<Value> = [0u8, 1]
                .iter()
                .map(|&l| {
                    let r = dendrite_conditions(cube.letter(l));
                    object([
                        ("letter", l.into()),
                        ("digits", cube.letter(l).len().into()),
                        ("one_contact_per_face", r.one_contact_per_face.into()),
                        ("avoids_edges", r.avoids_edges.into()),
                        (
                            "intersection_graph_is_tree",
                            r.intersection_graph_is_tree.into(),
                        ),
                        ("max_graph_degree", r.max_graph_degree.into()),
                        ("face_contacts", Value::from(r.face_contacts.to_vec())),
                        ("graph_edges", r.graph_edges.into()),
                        ("all_hold", r.all_hold().into()),
                    ])
                })
                .collect();
            emit_json(cli, stdout, object([("letters", Value::Array(rows))]))?;
            Ok(true)
        }
        Command::Holder { kmax, tol } => {
            check_tol(*tol)?;
            let r = holder_check(
                &cube,
                *kmax,
                HolderOptions {
                    tol: *tol,
                    ..HolderOptions::default()
                },
            )?;
            let rows: Vec<Value> = r
                .pairs
                .iter()
                .map(|p| {
                    let mut row = sandwich_json(&p.sandwich);
                    row["words"] = Value::from(vec![p.a.to_string(), p.b.to_string()]);
                    row["limit_lo"] = num(p.limit_lo);
                    row["limit_hi"] = num(p.limit_hi);
                    row["cantor_gap"] = num(p.cantor_gap);
                    row["gap_ok"] = p.gap_ok.into();
                    row["ratio_lo"] = num(p.ratio_lo);
                    row["ratio_hi"] = num(p.ratio_hi);
                    row
                })
                .collect();
            emit_json(
                cli,
                stdout,
                object([
                    ("word_len", r.word_len.into()),
                    ("tol", num(*tol)),
                    ("pairs", Value::Array(rows)),
                    ("exponent_forward", num(r.exponent_forward)),
                    ("exponent_backward", num(r.exponent_backward)),
                    ("c_forward", num(r.c_forward)),
                    ("c_backward", num(r.c_backward)),
                    ("c_forward_cap", num(r.c_forward_cap)),
                    ("c_backward_cap", num(r.c_backward_cap)),
                    ("passed", r.passed().into()),
                ]),
            )?;
            Ok(r.passed())
        }
        Command::Verify {
            all,
            check,
            kmax,
            tol,
        } => {
            check_tol(*tol)?;
            let names: Vec<&str> = if *all {
                verify::CHECKS.to_vec()
            } else if check.is_empty() {
                return Err(usage("verify needs --all or at least one --check"));
            } else {
                check.iter().map(String::as_str).collect()
            };
            let mut results = serde_json::Map::new();
            let mut passed = true;
            for name in names {
                let o = verify::run_check(name, &cube, *kmax, *tol)?;
                passed &= o.passed;
                results.insert(
                    name.to_string(),
                    object([("passed", o.passed.into()), ("detail", o.detail)]),
                );
            }
            emit_json(
                cli,
                stdout,
                object([
                    ("kmax", (*kmax).into()),
                    ("tol", num(*tol)),
                    ("checks", Value::Object(results)),
                    ("passed", passed.into()),
                ]),
            )?;
            Ok(passed)
        }
        Command::Export {
            word,
            depth,
            format,
            weld,
        } => {
            let v = cube.iterate(&resolve_word(word, *depth))?;
            let mut bytes = Vec::new();
            match format {
                Format::Obj => write_obj(&v, *weld, &mut bytes)?,
                Format::Csv => write_csv(&v, &mut bytes)?,
                Format::Bin => bytes = encode_binary(&v),
            }
            emit(cli, stdout, &bytes)?;
            Ok(true)
        }
    }
}

fn boxdim(
    cli: &Cli,
    cube: &FractalCube,
    spec: &WordSpec,
    kmax: usize,
    csv: Option<&PathBuf>,
    stdout: &mut dyn Write,
) -> Result<bool, Failure> {
    if kmax == 0 {
        return Err(usage("--kmax must be at least 1"));
    }
    let word = spec.prefix(kmax);
    let series = box_count_series(cube, &word, 1..=kmax)?;
    let density = match spec {
        WordSpec::Eventual(e) => density_series_eventual(e, kmax),
        WordSpec::Finite(_) => density_series(&word),
    };
    // exponents are exact mixtures of the two branching rates
    let mut passed = true;
    let mut rows = Vec::new();
    let mut table = String::from("k,N,exponent\n");
    for e in &series.entries {
        let lambda = Ratio::new(word.prefix(e.depth).zeros() as u64, e.depth as u64);
        let exponent = e.exponent.expect("depth at least 1");
        passed &= (exponent - mixture_dimension(cube, lambda)?).abs() <= 1e-12;
        table.push_str(&format!("{},{},{}\n", e.depth, e.count, num(exponent)));
        rows.push(object([
            ("k", e.depth.into()),
            ("N", e.count.to_string().into()),
            ("exponent", num(exponent)),
            ("generated", e.generated.into()),
        ]));
    }
    if let Some(path) = csv {
        fs::write(path, &table)?;
    }
    let lambda = density
        .limit
        .unwrap_or_else(|| *density.lambdas.last().expect("kmax ≥ 1"));
    let fit = if series.entries.len() >= 2 {
        let f = estimate_dimension(&series)?;
        object([
            ("slope", num(f.slope)),
            ("intercept", num(f.intercept)),
            ("residual", num(f.residual)),
        ])
    } else {
        Value::Null
    };
    let bounds = density.box_dimension_bounds(cube);
    emit_json(
        cli,
        stdout,
        object([
            ("word", spec.to_string().into()),
            ("kmax", kmax.into()),
            ("rows", Value::Array(rows)),
            ("fit", fit),
            ("lambda", lambda.to_string().into()),
            ("lambda_exact", density.limit.is_some().into()),
            ("mixture_dimension", num(mixture_dimension(cube, lambda)?)),
            (
                "lower_box_estimate",
                bounds.map_or(Value::Null, |b| num(b.0)),
            ),
            (
                "upper_box_estimate",
                bounds.map_or(Value::Null, |b| num(b.1)),
            ),
            ("passed", passed.into()),
        ]),
    )?;
    Ok(passed)
}
