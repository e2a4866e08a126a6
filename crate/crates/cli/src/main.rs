//! `cdl`: censuses, cap decompositions, verification campaigns and the
//! constant chain, over point sets in a shared JSON format.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cdl_core::ap3::{
    arc_embedding_exact, arc_embedding_float, count_bichromatic_ap3, max_bichromatic_ap3, sequence_upper_bound,
    AngularScale, Ap3Instance,
};
use cdl_core::campaign::{run_campaign, Suite};
use cdl_core::caps::{cap_decomposition, classify_edge, EdgeKind};
use cdl_core::census::census;
use cdl_core::constructions::{quarter_arc_with_center, random_concyclic, random_convex, regular_ngon};
use cdl_core::geom::DEFAULT_EPS;
use cdl_core::io::{exact_points_json, float_points_json, parse_ap3_values, parse_point_set, parse_rational, PointSet};
use cdl_core::theorem::{epsilon_chain, optimize_parameters, strip_procedure, Case1Variant};
use cdl_core::{ConvexInstance, Exact, Float, Kernel, Rational};

#[derive(Parser)]
#[command(name = "cdl", version, about = "Distinct-distance and isosceles-triangle checks for convex point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Point-set JSON file, or `-` for stdin.
    file: PathBuf,
    /// Tolerance for `points_float` inputs.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Isosceles census and distinct-distance statistics.
    Census(Input),
    /// Cap decomposition and the good/bad edge table with witnesses.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Emit JSON instead of CSV.
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Emit CSV (the default).
        #[arg(long)]
        csv: bool,
    },
    /// Run a seeded randomized campaign; exits 1 on any violation.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Trace the strip procedure on an exact instance.
    Strip {
        file: PathBuf,
        #[arg(long, value_parser = parse_fraction)]
        a: Rational,
        #[arg(long, value_parser = parse_fraction)]
        d: Rational,
        #[arg(long, value_enum, default_value_t = Variant::Final)]
        variant: Variant,
    },
    /// Search the (a, d) parameter plane for the best guaranteed coefficient.
    Optimize {
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
    /// Emit a point set.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bichromatic three-term progressions.
    Ap3 {
        #[command(subcommand)]
        command: Ap3Command,
    },
    /// Print the exact constant chain.
    EpsilonChain,
}

#[derive(Subcommand)]
enum Ap3Command {
    /// Count progressions of a `{"red": [...], "blue": [...]}` instance.
    Count { file: PathBuf },
    /// Exhaustive maximum over reds in -M..-1 and blues in 1..M.
    Max {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        bound: usize,
    },
    /// Embed an instance on a circular arc and emit the point set.
    Embed {
        file: PathBuf,
        /// Exact rotation parameter m (rotation by 2 atan(1/m)); `auto` picks
        /// the smallest that fits a semicircle.
        #[arg(long, default_value = "auto", conflicts_with = "radians")]
        scale: String,
        /// Floating-point embedding with this many radians per unit value.
        #[arg(long)]
        radians: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Final,
    Conservative,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Ngon,
    Quarter,
    Concyclic,
    Random,
}

fn parse_suite(name: &str) -> Result<Suite, String> {
    Suite::parse(name).ok_or_else(|| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite {name:?}; expected one of {}", names.join(", "))
    })
}

fn parse_fraction(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Failures reading or interpreting input; reported with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

fn read_input(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }
}

fn pretty(value: &impl serde::Serialize) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn census_json<K: Kernel>(instance: &ConvexInstance<K>) -> CliResult<String> {
    pretty(&census(instance))
}

fn decompose_output<K: Kernel>(instance: &ConvexInstance<K>, as_json: bool) -> CliResult<String> {
    let caps = cap_decomposition(instance)?;
    let n = instance.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let edge = classify_edge(instance, i, j)?;
            // Witnesses are defined relative to a cap holding both endpoints.
            let witness = match caps.iter().find(|c| c.contains(i) && c.contains(j)) {
                Some(cap) => cap.find_witness(i, j)?,
                None => None,
            };
            rows.push((edge, witness));
        }
    }
    if as_json {
        let caps: Vec<&[usize]> = caps.iter().map(|c| c.indices()).collect();
        let edges: Vec<Value> = rows
            .iter()
            .map(|(e, w)| {
                json!({
                    "i": e.edge.0,
                    "j": e.edge.1,
                    "class": e.class,
                    "bisector_points": e.bisector_points,
                    "witness_index": w,
                })
            })
            .collect();
        return pretty(&json!({ "n": n, "caps": caps, "edges": edges }));
    }
    let mut out = String::from("i,j,class,bisector_points,witness_index\n");
    for (e, w) in rows {
        let class = match e.class {
            EdgeKind::Good => "good",
            EdgeKind::Bad => "bad",
        };
        let bisector: Vec<String> = e.bisector_points.iter().map(usize::to_string).collect();
        let witness = w.map(|w| w.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{class},{},{witness}\n", e.edge.0, e.edge.1, bisector.join(" ")));
    }
    Ok(out.trim_end().to_string())
}

fn run(cli: Cli) -> CliResult<(String, bool)> {
    let ok = |text: String| Ok((text, true));
    match cli.command {
        Command::Census(input) => match parse_point_set(&read_input(&input.file)?)? {
            PointSet::Exact(points) => ok(census_json(&ConvexInstance::new(Exact, points)?)?),
            PointSet::Float(points) => ok(census_json(&ConvexInstance::new(Float::new(input.eps)?, points)?)?),
        },
        Command::Decompose { input, json, csv: _ } => match parse_point_set(&read_input(&input.file)?)? {
            PointSet::Exact(points) => ok(decompose_output(&ConvexInstance::new(Exact, points)?, json)?),
            PointSet::Float(points) => {
                ok(decompose_output(&ConvexInstance::new(Float::new(input.eps)?, points)?, json)?)
            }
        },
        Command::Verify { suite, trials, seed } => {
            let report = run_campaign(suite, trials, seed)?;
            Ok((pretty(&report)?, report.violations == 0))
        }
        Command::Strip { file, a, d, variant } => {
            let PointSet::Exact(points) = parse_point_set(&read_input(&file)?)? else {
                return Err(InputError("the strip procedure needs exact \"points\" input".into()));
            };
            let instance = ConvexInstance::new(Exact, points)?;
            let trace = strip_procedure(&instance, &a, &d)?;
            let variant = match variant {
                Variant::Final => Case1Variant::Final,
                Variant::Conservative => Case1Variant::Conservative,
            };
            let bound = cdl_core::theorem::bound_report(&a, &d, variant);
            ok(pretty(&json!({ "trace": trace, "bound": bound }))?)
        }
        Command::Optimize { resolution } => ok(pretty(&optimize_parameters(resolution)?)?),
        Command::Construct { family, n, seed } => ok(match family {
            Family::Ngon => float_points_json(regular_ngon(n, Float::default())?.points()),
            Family::Quarter => float_points_json(quarter_arc_with_center(n, Float::default())?.points()),
            Family::Concyclic => exact_points_json(random_concyclic(n, seed)?.points()),
            Family::Random => exact_points_json(random_convex(n, seed)?.points()),
        }),
        Command::Ap3 { command } => run_ap3(command),
        Command::EpsilonChain => ok(epsilon_chain().to_string()),
    }
}

fn load_ap3(file: &PathBuf) -> CliResult<Ap3Instance> {
    let (red, blue) = parse_ap3_values(&read_input(file)?)?;
    Ok(Ap3Instance::new(red, blue)?)
}

fn run_ap3(command: Ap3Command) -> CliResult<(String, bool)> {
    let text = match command {
        Ap3Command::Count { file } => {
            let instance = load_ap3(&file)?;
            let t = instance.t();
            pretty(&json!({
                "t": t,
                "count": count_bichromatic_ap3(&instance),
                "upper_bound": sequence_upper_bound(t),
            }))?
        }
        Ap3Command::Max { t, bound } => pretty(&max_bichromatic_ap3(t, bound)?)?,
        Ap3Command::Embed { file, scale, radians, eps } => {
            let instance = load_ap3(&file)?;
            match radians {
                Some(r) => float_points_json(arc_embedding_float(&instance, r, Float::new(eps)?)?.instance().points()),
                None => {
                    let m = match scale.as_str() {
                        "auto" => match AngularScale::auto_pythagorean(&instance) {
                            AngularScale::Pythagorean(m) => m,
                            AngularScale::Radians(_) => unreachable!("auto scale is exact"),
                        },
                        m => m.parse().map_err(|_| {
                            InputError(format!("--scale must be `auto` or a positive integer, got {m:?}"))
                        })?,
                    };
                    exact_points_json(arc_embedding_exact(&instance, m)?.instance().points())
                }
            }
        }
    };
    Ok((text, true))
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("CDL_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("CDL_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok((text, passed)) => {
            // A closed downstream pipe is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
