//! Front end for the wormhole-circuit simulator: stock demonstrations,
//! seeded experiment runs, and fixed-point inspection. Output goes to stdout
//! or `--out` as JSON (full precision, round-trips through the library's
//! schemas), CSV, or a table rounded to six decimals.

mod render;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use ctclab::deutsch::{build_ctc_map, fixed_points, max_entropy_fixed_point, FeedbackSlot};
use ctclab::experiments::{
    compare_models, run_paradox, run_signalling, Bitstring, Model,
};
use ctclab::qcore::{gates, DensityMatrix, LinearMap, StateVector, SubsystemLayout};

#[derive(Parser)]
#[command(
    name = "ctclab",
    version,
    about = "Qubit circuits through closed timelike curves: post-selected \
             teleportation vs Deutsch fixed points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; tables round to 6 decimals, json and csv keep full
    /// precision.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Worker threads for the trial loops. Any value gives the same report;
    /// builds without the parallel feature run sequentially regardless.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// The canonical demonstration: the anticorrelated pair through the
    /// post-selected circuit, with and without the phase flip.
    DemoPaper,
    /// Send a bit string back through the loop under either model.
    Signal(SignalArgs),
    /// The unproven-theorem run: embed the theorem in random data, let the
    /// editor flip the rest, post-select on the Bell detection.
    Paradox(ParadoxArgs),
    /// Fixed points of the consistency map for an interaction and
    /// environment of your choice.
    FixedPoint(FixedPointArgs),
    /// Both models on the canonical scenario, side by side.
    Compare(CompareArgs),
}

#[derive(Args)]
struct SignalArgs {
    /// Which semantics carries the bits.
    #[arg(long, value_enum)]
    model: ModelArg,

    /// Message bits, e.g. 0110.
    #[arg(long)]
    bits: Bitstring,

    #[arg(long, env = "CTCLAB_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ParadoxArgs {
    /// Theorem bits to embed in the measured record.
    #[arg(long)]
    bits: Bitstring,

    /// Number of rounds to simulate.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,

    #[arg(long, env = "CTCLAB_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct FixedPointArgs {
    /// Stock interaction; its first wire couples to the environment, the
    /// second carries the looping state.
    #[arg(long, value_enum, default_value_t = InteractionArg::Cnot)]
    interaction: InteractionArg,

    /// JSON file holding an arbitrary two-wire gate; overrides
    /// --interaction.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// State fed into the first wire.
    #[arg(long, value_enum, default_value_t = EnvArg::MaximallyMixed)]
    env: EnvArg,

    /// Which output wire loops back into the map.
    #[arg(long, value_enum, default_value_t = KeepArg::Entering)]
    keep: KeepArg,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, env = "CTCLAB_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Pctc,
    Deutsch,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Pctc => Model::Pctc,
            ModelArg::Deutsch => Model::Deutsch,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InteractionArg {
    Cnot,
    CnotReversed,
    Swap,
    Identity,
}

impl InteractionArg {
    fn build(self) -> LinearMap {
        match self {
            InteractionArg::Cnot => gates::cnot(),
            InteractionArg::CnotReversed => gates::cnot_reversed(),
            InteractionArg::Swap => gates::swap(),
            InteractionArg::Identity => gates::identity(2),
        }
    }

    fn name(self) -> &'static str {
        match self {
            InteractionArg::Cnot => "cnot",
            InteractionArg::CnotReversed => "cnot-reversed",
            InteractionArg::Swap => "swap",
            InteractionArg::Identity => "identity",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnvArg {
    MaximallyMixed,
    Zero,
    One,
    Plus,
    Minus,
}

impl EnvArg {
    fn name(self) -> &'static str {
        match self {
            EnvArg::MaximallyMixed => "maximally-mixed",
            EnvArg::Zero => "zero",
            EnvArg::One => "one",
            EnvArg::Plus => "plus",
            EnvArg::Minus => "minus",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KeepArg {
    Entering,
    Emerged,
}

impl KeepArg {
    fn slot(self) -> FeedbackSlot {
        match self {
            KeepArg::Entering => FeedbackSlot::Entering,
            KeepArg::Emerged => FeedbackSlot::Emerged,
        }
    }

    fn name(self) -> &'static str {
        match self {
            KeepArg::Entering => "entering",
            KeepArg::Emerged => "emerged",
        }
    }
}

/// The two demonstration rows, one per flip value.
#[derive(Serialize, Deserialize)]
struct DemoReport {
    flip_off: DemoRow,
    flip_on: DemoRow,
}

#[derive(Serialize, Deserialize)]
struct DemoRow {
    flip: bool,
    /// Human-readable name of the expected output state.
    target: String,
    /// Overlap of `state` with the target, phase-invariant.
    overlap: f64,
    acceptance_prob: f64,
    state: StateVector,
}

#[derive(Serialize, Deserialize)]
struct FixedPointReport {
    interaction: String,
    environment: String,
    keep: String,
    /// Dimension of the affine space of fixed points around the reported one.
    directions: usize,
    entropy_bits: f64,
    /// Frobenius norm of N(rho) - rho for the reported point.
    residual: f64,
    fixed_point: DensityMatrix,
}

enum CliError {
    Lab(ctclab::Error),
    Data(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lab(e) => e.fmt(f),
            CliError::Data(msg) => f.write_str(msg),
        }
    }
}

impl From<ctclab::Error> for CliError {
    fn from(e: ctclab::Error) -> Self {
        CliError::Lab(e)
    }
}

impl CliError {
    /// 3 for runs the physics itself rejects, 2 for everything else.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lab(ctclab::Error::ParadoxicalEvolution { .. })
            | CliError::Lab(ctclab::Error::ParadoxSetup { .. }) => 3,
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_jobs(cli.jobs)?;
    let text = match cli.command {
        Command::DemoPaper => {
            let report = demo_report()?;
            match cli.format {
                Format::Json => json(&report)?,
                Format::Csv => render::demo_csv(&report),
                Format::Table => render::demo_table(&report),
            }
        }
        Command::Signal(args) => {
            let report = run_signalling(&args.bits, args.model.into(), args.seed)?;
            match cli.format {
                Format::Json => json(&report)?,
                Format::Csv => report.to_csv(),
                Format::Table => render::signal_table(&report),
            }
        }
        Command::Paradox(args) => {
            let report = run_paradox(args.trials as usize, &args.bits, args.seed)?;
            match cli.format {
                Format::Json => json(&report)?,
                Format::Csv => report.to_csv(),
                Format::Table => render::paradox_table(&report),
            }
        }
        Command::FixedPoint(args) => {
            let report = fixed_point_report(&args)?;
            match cli.format {
                Format::Json => json(&report)?,
                Format::Csv => render::fixed_point_csv(&report),
                Format::Table => render::fixed_point_table(&report),
            }
        }
        Command::Compare(args) => {
            let report = compare_models(args.seed)?;
            match cli.format {
                Format::Json => json(&report)?,
                Format::Csv => report.to_csv(),
                Format::Table => render::compare_table(&report),
            }
        }
    };
    emit(cli.out.as_deref(), &text)
}

fn demo_report() -> Result<DemoReport, CliError> {
    let c = compare_models(0)?;
    Ok(DemoReport {
        flip_off: DemoRow {
            flip: false,
            target: "(|0> + |1>)/sqrt(2) (x) |0>".into(),
            overlap: c.pctc_overlap_plus,
            acceptance_prob: c.pctc_flip_off.acceptance_prob,
            state: c.pctc_flip_off.state,
        },
        flip_on: DemoRow {
            flip: true,
            target: "(|0> - |1>)/sqrt(2) (x) |0>".into(),
            overlap: c.pctc_overlap_minus,
            acceptance_prob: c.pctc_flip_on.acceptance_prob,
            state: c.pctc_flip_on.state,
        },
    })
}

fn fixed_point_report(args: &FixedPointArgs) -> Result<FixedPointReport, CliError> {
    let (interaction, name) = match &args.input {
        Some(path) => (read_gate(path)?, path.display().to_string()),
        None => (args.interaction.build(), args.interaction.name().to_string()),
    };
    if interaction.in_layout().len() != 2 {
        return Err(CliError::Data(format!(
            "interaction must act on exactly two wires, got {:?}",
            interaction.in_layout().labels()
        )));
    }
    let wire = interaction.in_layout().select(&[0]);
    let env = environment(args.env, wire)?;
    let map = build_ctc_map(&interaction, &env, args.keep.slot())?;
    let set = fixed_points(&map, ctclab::tolerance::EIGEN_POSITIVITY)?;
    let fixed_point = max_entropy_fixed_point(&set)?;
    let residual = (map.apply(&fixed_point)?.matrix() - fixed_point.matrix()).norm();
    Ok(FixedPointReport {
        interaction: name,
        environment: args.env.name().to_string(),
        keep: args.keep.name().to_string(),
        directions: set.directions.len(),
        entropy_bits: fixed_point.entropy_bits(),
        residual,
        fixed_point,
    })
}

fn read_gate(path: &Path) -> Result<LinearMap, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn environment(kind: EnvArg, wire: SubsystemLayout) -> Result<DensityMatrix, CliError> {
    let rho = match kind {
        EnvArg::MaximallyMixed => DensityMatrix::maximally_mixed(wire),
        EnvArg::Zero => DensityMatrix::from_state(&StateVector::basis(wire, 0)?)?,
        EnvArg::One => DensityMatrix::from_state(&StateVector::basis(wire, 1)?)?,
        EnvArg::Plus | EnvArg::Minus => {
            let label = wire.labels()[0].clone();
            let h = gates::hadamard().relabeled(&[label.as_str()], &[label.as_str()])?;
            let index = usize::from(kind == EnvArg::Minus);
            DensityMatrix::from_state(&StateVector::basis(wire, index)?.apply(&h)?)?
        }
    };
    Ok(rho)
}

fn configure_jobs(jobs: Option<usize>) -> Result<(), CliError> {
    let Some(n) = jobs else {
        return Ok(());
    };
    if n == 0 {
        return Err(CliError::Data("--jobs must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Data(format!("thread pool setup: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    if n > 1 {
        eprintln!("note: built without the parallel feature, trials run sequentially");
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Data(e.to_string()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
