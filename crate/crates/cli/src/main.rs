//! `strata-pi1`: command-line front end for the strata toolkit.
//!
//! Structured results are written as JSON; `graph --format dot`, `presentation --format text`
//! and `locus` emit human or plotting formats that are never read back.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use strata_core::composition::{closure, enumerate_omega, Composition, ReducedNormFilter, ThetaPoset};
use strata_core::error::ErrorClass;
use strata_core::presentation::{
    classify_freeness, free_product_split, pi1_compactified, presentation, split_degrees, stabilize, Presentation,
};
use strata_core::presets::{preset, PRESET_NAMES};
use strata_core::simplify::{certify_free, simplify};
use strata_core::snf::abelianize;
use strata_core::tracer::{crossings, export_zero_locus, synthesize, trace, zero_locus_csv, CoefficientPath, TraceOptions};
use strata_core::word::Word;
use strata_core::{build_dual_graph, graph_rank};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] strata_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{context}: {source}")]
    Json { context: String, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::MalformedInput => 2,
                ErrorClass::Precondition => 3,
                ErrorClass::Numerical => 4,
            },
            CliError::Io { .. } | CliError::Json { .. } | CliError::Usage(_) => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "strata-pi1", version, about = "Fundamental groups of spaces of real polynomials avoiding root patterns")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closure of a pattern set as a theta file.
    Closure(ThetaArgs),
    /// List the compositions of Omega<d].
    Enumerate {
        #[arg(long)]
        d: usize,
        /// Keep only compositions of this reduced norm.
        #[arg(long, conflicts_with = "min_reduced_norm")]
        reduced_norm: Option<usize>,
        /// Keep only compositions of at least this reduced norm.
        #[arg(long)]
        min_reduced_norm: Option<usize>,
    },
    /// Dual graph of top cells and walls.
    Graph {
        #[arg(long)]
        d: usize,
        /// Put a vertex on every wall instead of using walls as edges.
        #[arg(long)]
        subdivided: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Presentation of the fundamental group of the pattern-avoiding space.
    Presentation {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
    },
    /// Tietze-simplify a presentation and report its abelianization.
    Simplify(GroupInput),
    /// Abelianization of a presentation via Smith normal form.
    Abelianize(GroupInput),
    /// Freeness criteria, compactified group and free-product split degrees.
    Classify(ThetaArgs),
    /// Push a closed pattern set to a higher degree of the same parity.
    Stabilize {
        #[command(flatten)]
        theta: ThetaArgs,
        /// Target degree.
        #[arg(long)]
        to: usize,
    },
    /// Free-product decomposition at the largest fully forbidden degree.
    Split(ThetaArgs),
    /// Read off the wall-crossing word of a sampled loop of polynomials.
    Trace {
        /// Coefficient path JSON: {"d": N, "samples": [[a0, ..., a_{d-1}], ...]}.
        #[arg(long)]
        path: PathBuf,
        /// Root clustering tolerance, relative to the root scale.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Report crossings in order without free reduction.
        #[arg(long)]
        raw: bool,
    },
    /// Build a coefficient path realizing a reduced admissible word.
    Synthesize {
        /// Letters such as "w(1,2)+ w(1,2)-", separated by whitespace.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        d: usize,
        /// Samples across each wall crossing.
        #[arg(long, default_value_t = 8)]
        samples_per_letter: usize,
    },
    /// Sample the real zero locus of a loop as (psi, x) CSV.
    Locus {
        #[arg(long)]
        path: PathBuf,
        /// Evaluation points per segment.
        #[arg(long, default_value_t = 16)]
        resolution: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Json,
    Text,
}

#[derive(Args)]
struct ThetaArgs {
    /// Theta file: {"d": N, "compositions": [[..], ..], "mode": "closure" | "verify-closed"}.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    theta: Option<PathBuf>,
    /// Built-in pattern set.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES), requires = "d")]
    preset: Option<String>,
    /// Degree for --preset.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args)]
struct GroupInput {
    /// Presentation JSON as written by `presentation`.
    #[arg(long, conflicts_with_all = ["theta", "preset"])]
    presentation: Option<PathBuf>,
    #[arg(long, conflicts_with = "preset")]
    theta: Option<PathBuf>,
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES), requires = "d")]
    preset: Option<String>,
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Clone, Copy, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ThetaMode {
    /// Replace the listed patterns by their closure.
    #[default]
    Closure,
    /// Reject the file unless the listed patterns are already closed.
    VerifyClosed,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaFile {
    d: usize,
    compositions: Vec<Composition>,
    #[serde(default)]
    mode: ThetaMode,
}

impl ThetaFile {
    fn of(theta: &ThetaPoset) -> Self {
        ThetaFile {
            d: theta.d(),
            compositions: theta.members().iter().cloned().collect(),
            mode: ThetaMode::VerifyClosed,
        }
    }

    fn into_theta(self) -> CliResult<ThetaPoset> {
        Ok(match self.mode {
            ThetaMode::Closure => closure(&self.compositions, self.d)?,
            ThetaMode::VerifyClosed => ThetaPoset::new_closed(self.d, self.compositions)?,
        })
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { context: path.display().to_string(), source })
}

fn load_theta(theta: Option<&Path>, preset_name: Option<&str>, d: Option<usize>) -> CliResult<ThetaPoset> {
    match (theta, preset_name, d) {
        (Some(path), None, _) => read_json::<ThetaFile>(path)?.into_theta(),
        (None, Some(name), Some(d)) => Ok(preset(name, d)?),
        _ => Err(CliError::Usage("give either --theta FILE or --preset NAME --d N".into())),
    }
}

impl ThetaArgs {
    fn load(&self) -> CliResult<ThetaPoset> {
        load_theta(self.theta.as_deref(), self.preset.as_deref(), self.d)
    }
}

impl GroupInput {
    fn load(&self) -> CliResult<Presentation> {
        if let Some(path) = &self.presentation {
            let p: Presentation = read_json(path)?;
            p.check()?;
            return Ok(p);
        }
        Ok(presentation(&load_theta(self.theta.as_deref(), self.preset.as_deref(), self.d)?)?)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn run(command: Command) -> CliResult<String> {
    Ok(match command {
        Command::Closure(args) => to_json(&ThetaFile::of(&args.load()?)),
        Command::Enumerate { d, reduced_norm, min_reduced_norm } => {
            let filter = match (reduced_norm, min_reduced_norm) {
                (Some(k), _) => ReducedNormFilter::Eq(k),
                (None, Some(k)) => ReducedNormFilter::AtLeast(k),
                (None, None) => ReducedNormFilter::Any,
            };
            to_json(&enumerate_omega(d, filter))
        }
        Command::Graph { d, subdivided, format } => {
            let g = build_dual_graph(d, subdivided)?;
            match format {
                GraphFormat::Dot => g.to_dot(),
                GraphFormat::Json => {
                    let rank = graph_rank(&g)?;
                    to_json(&json!({ "rank": rank, "graph": g.to_json_value() }))
                }
            }
        }
        Command::Presentation { theta, format } => {
            let p = presentation(&theta.load()?)?;
            match format {
                TextFormat::Json => to_json(&p),
                TextFormat::Text => p.to_text(),
            }
        }
        Command::Simplify(input) => {
            let s = simplify(&input.load()?);
            let ab = abelianize(&s.to_presentation());
            let certified = certify_free(&s);
            to_json(&json!({
                "d": s.d,
                "generators": s.generators,
                "relators": s.relators,
                "free_rank": ab.free_rank,
                "torsion": serde_json::to_value(&ab).expect("serializable")["torsion"],
                "free_certified": certified.is_some(),
                "log": s.log,
            }))
        }
        Command::Abelianize(input) => to_json(&abelianize(&input.load()?)),
        Command::Classify(args) => {
            let theta = args.load()?;
            to_json(&json!({
                "d": theta.d(),
                "freeness": classify_freeness(&theta)?,
                "compactified": pi1_compactified(&theta)?,
                "split_degrees": split_degrees(&theta)?,
            }))
        }
        Command::Stabilize { theta, to } => to_json(&ThetaFile::of(&stabilize(&theta.load()?, to)?)),
        Command::Split(args) => to_json(&free_product_split(&args.load()?)?),
        Command::Trace { path, tol, raw } => {
            let path: CoefficientPath = read_json(&path)?;
            let events = crossings(&path, tol)?;
            let word = trace(&path, &TraceOptions { tol, raw })?;
            to_json(&json!({
                "d": path.d(),
                "word": word.to_string(),
                "length": word.len(),
                "crossings": events,
            }))
        }
        Command::Synthesize { word, d, samples_per_letter } => {
            let w: Word = word.parse()?;
            to_json(&synthesize(&w, d, samples_per_letter)?)
        }
        Command::Locus { path, resolution } => {
            if resolution == 0 {
                return Err(CliError::Usage("--resolution must be positive".into()));
            }
            let path: CoefficientPath = read_json(&path)?;
            zero_locus_csv(&export_zero_locus(&path, resolution))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|text| match &cli.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
