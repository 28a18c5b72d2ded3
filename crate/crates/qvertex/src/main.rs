//! Command-line front end: validate, sweep, classify and design
//! star-graph vertices.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qvertex::filter::{
    coupling_pattern, design_branching_filter, pair_coupling_class, PairCoupling,
    DEFAULT_EPSILON,
};
use qvertex::io::{
    filter_spec_from_json, run_sweep, vertex_from_path, vertex_to_raw_json, write_amplitude_csv,
    write_probability_csv,
};
use qvertex::presets::{preset_boundary, PresetName};
use qvertex::scattering::s_matrix;
use qvertex::vertex::classify;
use qvertex::{BoundaryPair, DEFAULT_RANK_TOL};

#[derive(Parser)]
#[command(
    name = "qvertex",
    version,
    about = "Scattering toolkit for singular vertices of quantum star graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Vertex description (JSON file).
    #[arg(long, value_name = "FILE", conflicts_with = "preset")]
    input: Option<PathBuf>,
    /// Built-in reference vertex (fig2, fig4, fig5, fig6, fig8, fig9, fig10).
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a vertex and report its class and unitarity quality.
    Check {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Tabulate scattering probabilities over a wave-number grid.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        /// Lower end of the logarithmic grid.
        #[arg(long, default_value_t = 1e-2)]
        kmin: f64,
        /// Upper end of the logarithmic grid.
        #[arg(long, default_value_t = 1e2)]
        kmax: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 400)]
        points: usize,
        /// Output CSV file.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Overwrite an existing output file.
        #[arg(long)]
        force: bool,
        /// Write complex amplitudes (re/im columns) instead of
        /// probabilities.
        #[arg(long)]
        amplitudes: bool,
    },
    /// Classify the pass-band behaviour of every pair of lines.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Transmission threshold separating "passes" from "blocked".
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Design a three-line vertex realizing a requested pass pattern.
    Design {
        /// Filter request (JSON file).
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        /// Output vertex JSON file.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Overwrite an existing output file.
        #[arg(long)]
        force: bool,
    },
}

enum Failure {
    /// Bad invocation: malformed flags, ranges or request files.
    Usage(String),
    /// Well-formed invocation on data that fails validation.
    Validation(String),
}

impl From<qvertex::Error> for Failure {
    fn from(err: qvertex::Error) -> Self {
        Failure::Validation(err.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn usage_err<T>(message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(message.into()))
}

fn rank_tolerance() -> Result<f64, Failure> {
    match std::env::var("QVERTEX_RANK_TOL") {
        Err(_) => Ok(DEFAULT_RANK_TOL),
        Ok(text) => text
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| *v > 0.0 && v.is_finite())
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "QVERTEX_RANK_TOL must be a positive finite number, got {text:?}"
                ))
            }),
    }
}

fn load_pair(args: &InputArgs) -> Result<BoundaryPair, Failure> {
    match (&args.input, &args.preset) {
        (Some(path), None) => Ok(vertex_from_path(path)?.pair),
        (None, Some(name)) => {
            let preset: PresetName = name
                .parse()
                .map_err(|err: qvertex::Error| Failure::Usage(err.to_string()))?;
            Ok(preset_boundary(preset)?)
        }
        _ => usage_err("exactly one of --input or --preset is required"),
    }
}

fn print_pair_line(coupling: &PairCoupling) {
    println!(
        "pair ({},{}): {}   |T(0)| = {:.5e}   |T(inf)| = {:.5e}",
        coupling.i + 1,
        coupling.j + 1,
        coupling.kind,
        coupling.t0,
        coupling.tinf
    );
}

fn cmd_check(input: &InputArgs, tol: f64) -> CmdResult {
    let pair = load_pair(input)?;
    println!("lines: {}", pair.n());
    if let Err(err) = pair.admissible(tol) {
        println!("admissible: no");
        return Err(Failure::Validation(err.to_string()));
    }
    println!("admissible: yes");
    let class = classify(&pair, tol)?;
    println!("class: {}", class.describe());
    if class.ambiguous {
        println!("warning: a rank decision is close to the tolerance cut");
    }
    for k in [0.1, 1.0, 10.0] {
        let defect = s_matrix(&pair, k)?.unitarity_defect();
        println!("unitarity defect at k = {k}: {defect:.2e}");
    }
    Ok(())
}

fn cmd_sweep(
    input: &InputArgs,
    kmin: f64,
    kmax: f64,
    points: usize,
    out: &PathBuf,
    force: bool,
    amplitudes: bool,
    tol: f64,
) -> CmdResult {
    if !(kmin > 0.0) || !kmax.is_finite() || kmax <= kmin {
        return usage_err(format!(
            "wave-number range [{kmin}, {kmax}] must be positive and increasing"
        ));
    }
    if points < 2 {
        return usage_err(format!("--points must be at least 2, got {points}"));
    }
    let pair = load_pair(input)?;
    pair.admissible(tol)?;
    if out.exists() && !force {
        return Err(Failure::Validation(format!(
            "refusing to overwrite {} (pass --force to replace it)",
            out.display()
        )));
    }
    let sweep = run_sweep(&pair, kmin, kmax, points)?;
    let mut buffer = Vec::new();
    let write_result = if amplitudes {
        write_amplitude_csv(&mut buffer, &sweep)
    } else {
        write_probability_csv(&mut buffer, &sweep)
    };
    write_result.map_err(|err| Failure::Validation(err.to_string()))?;
    std::fs::write(out, &buffer).map_err(|err| Failure::Validation(err.to_string()))?;
    println!("wrote {} rows to {}", sweep.ks.len(), out.display());
    Ok(())
}

fn cmd_classify(input: &InputArgs, epsilon: f64, tol: f64) -> CmdResult {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return usage_err(format!(
            "--epsilon must be positive and finite, got {epsilon}"
        ));
    }
    let pair = load_pair(input)?;
    pair.admissible(tol)?;
    let class = classify(&pair, tol)?;
    println!("class: {}", class.describe());
    let report = pair_coupling_class(&pair, epsilon)?;
    for coupling in &report {
        print_pair_line(coupling);
    }
    if report.iter().any(|c| c.unstable) {
        println!("warning: asymptotic limits had not settled; treat t0/tinf with care");
    }
    println!("pattern: {}", coupling_pattern(&report));
    Ok(())
}

fn cmd_design(spec_path: &PathBuf, out: &PathBuf, force: bool) -> CmdResult {
    let text = std::fs::read_to_string(spec_path)
        .map_err(|err| Failure::Validation(format!("{}: {err}", spec_path.display())))?;
    let spec = filter_spec_from_json(&text).map_err(|err| Failure::Usage(err.to_string()))?;
    let outcome = design_branching_filter(&spec)?;
    if out.exists() && !force {
        return Err(Failure::Validation(format!(
            "refusing to overwrite {} (pass --force to replace it)",
            out.display()
        )));
    }
    std::fs::write(out, vertex_to_raw_json(&outcome.vertex))
        .map_err(|err| Failure::Validation(err.to_string()))?;
    println!("wrote vertex to {}", out.display());
    println!("epsilon: {}", outcome.epsilon);
    for ((_, _, request), achieved) in spec.requests().iter().zip(&outcome.report) {
        let requested = match request {
            qvertex::filter::CouplingRequest::HighPass => "high-pass",
            qvertex::filter::CouplingRequest::LowPass => "low-pass",
        };
        println!(
            "pair ({},{}): requested {requested}, achieved {}   |T(0)| = {:.5e}   |T(inf)| = {:.5e}",
            achieved.i + 1,
            achieved.j + 1,
            achieved.kind,
            achieved.t0,
            achieved.tinf
        );
    }
    println!("pattern: {}", coupling_pattern(&outcome.report));
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    let tol = rank_tolerance()?;
    match &cli.command {
        Command::Check { input } => cmd_check(input, tol),
        Command::Sweep {
            input,
            kmin,
            kmax,
            points,
            out,
            force,
            amplitudes,
        } => cmd_sweep(input, *kmin, *kmax, *points, out, *force, *amplitudes, tol),
        Command::Classify { input, epsilon } => cmd_classify(input, *epsilon, tol),
        Command::Design { spec, out, force } => cmd_design(spec, out, *force),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("usage error: {message}");
            ExitCode::from(2)
        }
    }
}
