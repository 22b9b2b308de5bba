//! Command-line front end shared by the `zz-ladder` binary.
//!
//! Settings come from an optional JSON config file and from flags; flags
//! win. Output files go to `--out-dir`, then the `ZZ_LADDER_OUT` environment
//! variable, then the current directory. Exit codes: 0 success, 1 user
//! error, 2 internal error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::device::CircuitElements;
use crate::error::{Error, Result};
use crate::hamiltonian::DeviceParams;
use crate::lattice::build_ladder;
use crate::protocols::{compile_logical_circuit_traced, LogicalCircuit, PulseSchedule, WellFormedState};
use crate::quantum::{populations, StateVector};
use crate::simulator::{
    blockade_experiment, hadamard_fidelity_sweep_with, interface_motion_experiment, run, sweep_to_json, verify_compiled,
    Backend, BlockadeInitial,
};
use crate::sparse::SparseState;

pub const OUT_DIR_ENV: &str = "ZZ_LADDER_OUT";

#[derive(Debug, Parser)]
#[command(name = "zz-ladder", version, about = "Globally driven ZZ-blockade qubit ladder: simulation and compilation")]
pub struct Cli {
    /// JSON scenario file; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the qubit roster and ZZ edges of an N-row ladder as JSON.
    Layout {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Evaluate the circuit-parameter calculators on a JSON element list.
    Params {
        /// JSON object of circuit elements (`E_J`, `E_C`, `g_A`, …).
        #[arg(long)]
        input: PathBuf,
    },
    /// Pi pulse on the middle qubit of an A-B-A chain for three initial states.
    Blockade(ExperimentArgs),
    /// Move a logical qubit one column to the right on a 6-qubit row.
    ShiftDemo(ExperimentArgs),
    /// Mean compiled-Hadamard fidelity against the blockade ratio.
    FidelitySweep(SweepArgs),
    /// Compile a logical circuit to a pulse schedule and verify it.
    Compile {
        /// Circuit JSON: {"n": N, "gates": [...]}.
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Execute a schedule JSON on an N-row ladder and write the trajectory.
    Run(RunArgs),
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub backend: Option<Backend>,
    /// Recorded points per segment.
    #[arg(long)]
    pub sample_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated blockade ratios.
    #[arg(long, value_delimiter = ',')]
    pub etas: Option<Vec<f64>>,
    #[arg(long)]
    pub n_samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub backend: Option<Backend>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub schedule: PathBuf,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub backend: Option<Backend>,
    #[arg(long)]
    pub sample_points: Option<usize>,
    /// Start from the ground logical state at this 1-based ICC column instead
    /// of the all-ground register.
    #[arg(long)]
    pub icc: Option<usize>,
}

impl clap::ValueEnum for Backend {
    fn value_variants<'a>() -> &'a [Self] {
        &[Backend::Effective, Backend::RwaExact, Backend::LabFrame]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Backend::Effective => "effective",
            Backend::RwaExact => "rwa_exact",
            Backend::LabFrame => "lab_frame",
        }))
    }
}

/// Settings read from `--config`. Every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub experiment: Option<String>,
    pub n: Option<usize>,
    pub eta: Option<f64>,
    pub etas: Option<Vec<f64>>,
    pub n_samples: Option<usize>,
    pub rng_seed: Option<u64>,
    pub backend: Option<Backend>,
    pub sample_points: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

const EXPERIMENTS: [&str; 7] = ["layout", "params", "blockade", "shift-demo", "fidelity-sweep", "compile", "run"];

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let c: Self = serde_json::from_str(&fs::read_to_string(path)?)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(e) = &self.experiment {
            if !EXPERIMENTS.contains(&e.as_str()) {
                return Err(Error::InvalidParameter(format!("unknown experiment {e:?}")));
            }
        }
        let etas = self.eta.iter().chain(self.etas.iter().flatten());
        if let Some(bad) = etas.into_iter().find(|e| !(**e > 0.0)) {
            return Err(Error::InvalidParameter(format!("blockade ratio {bad} must be positive")));
        }
        Ok(())
    }
}

struct Context {
    config: ScenarioConfig,
    out_dir: PathBuf,
}

impl Context {
    fn write(&self, name: &str, contents: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.out_dir)?;
        let path = self.out_dir.join(name);
        fs::write(&path, contents)?;
        Ok(path)
    }

    fn eta(&self, flag: Option<f64>, default: f64) -> Result<f64> {
        let eta = flag.or(self.config.eta).unwrap_or(default);
        if !(eta > 0.0) {
            return Err(Error::InvalidParameter(format!("blockade ratio {eta} must be positive")));
        }
        Ok(eta)
    }
}

/// Parses `args`, runs the subcommand and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// 1 for problems with the user's input, 2 for failures inside the library.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ShapeMismatch(_) | Error::NonHermitian(_) | Error::Encoding(_) => 2,
        _ => 1,
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let config = match &cli.config {
        Some(p) => ScenarioConfig::load(p)?,
        None => ScenarioConfig::default(),
    };
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| config.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    let ctx = Context { config, out_dir };
    match cli.command {
        Command::Layout { n } => cmd_layout(&ctx, n, out),
        Command::Params { input } => cmd_params(&ctx, &input, out),
        Command::Blockade(a) => cmd_blockade(&ctx, &a, out),
        Command::ShiftDemo(a) => cmd_shift_demo(&ctx, &a, out),
        Command::FidelitySweep(a) => cmd_fidelity_sweep(&ctx, &a, out),
        Command::Compile { circuit } => cmd_compile(&ctx, &circuit, out),
        Command::Run(a) => cmd_run(&ctx, &a, out),
    }
}

fn cmd_layout(ctx: &Context, n: Option<usize>, out: &mut dyn Write) -> Result<()> {
    let n = n.or(ctx.config.n).unwrap_or(1);
    let layout = build_ladder(n)?;
    let path = ctx.write(&format!("layout_n{n}.json"), &serde_json::to_string_pretty(&layout.to_json())?)?;
    writeln!(
        out,
        "N={n}: {} qubits, {} columns, {} couplers -> {}",
        layout.qubit_count(),
        layout.n_columns(),
        layout.couplers().count(),
        path.display()
    )?;
    Ok(())
}

fn cmd_params(ctx: &Context, input: &Path, out: &mut dyn Write) -> Result<()> {
    let elements: CircuitElements = serde_json::from_str(&fs::read_to_string(input)?)?;
    let json = serde_json::to_string_pretty(&elements.report()?)?;
    ctx.write("params.json", &json)?;
    writeln!(out, "{json}")?;
    Ok(())
}

fn cmd_blockade(ctx: &Context, a: &ExperimentArgs, out: &mut dyn Write) -> Result<()> {
    let eta = ctx.eta(a.eta, 20.0)?;
    let samples = a.sample_points.or(ctx.config.sample_points).unwrap_or(200);
    for initial in BlockadeInitial::ALL {
        let traj = blockade_experiment(initial, eta, samples)?;
        let path = ctx.write(&format!("blockade_{}.csv", initial.label()), &traj.to_csv())?;
        writeln!(
            out,
            "{}: final P_e(q_B) = {:.6} -> {}",
            initial.label(),
            traj.final_populations()[1],
            path.display()
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ShiftSummary {
    backend: Backend,
    eta: f64,
    fidelity: f64,
    mid_entropy_bits: f64,
}

fn cmd_shift_demo(ctx: &Context, a: &ExperimentArgs, out: &mut dyn Write) -> Result<()> {
    let eta = ctx.eta(a.eta, 20.0)?;
    let backend = a.backend.or(ctx.config.backend).unwrap_or(Backend::Effective);
    let m = interface_motion_experiment(eta, backend)?;
    let mut csv = String::from("stage");
    for q in m.before.qubit_order() {
        csv.push_str(&format!(",P_e_q{}", q.0));
    }
    csv.push('\n');
    for (label, s) in [("before", &m.before), ("mid", &m.mid), ("after", &m.after), ("target", &m.target)] {
        csv.push_str(label);
        for p in populations(s) {
            csv.push_str(&format!(",{p:.12}"));
        }
        csv.push('\n');
    }
    ctx.write("shift_demo.csv", &csv)?;
    ctx.write("shift_demo_trajectory.csv", &m.trajectory.to_csv())?;
    let summary = ShiftSummary {
        backend,
        eta,
        fidelity: m.fidelity,
        mid_entropy_bits: m.mid_entropy_bits,
    };
    let json = serde_json::to_string_pretty(&summary)?;
    ctx.write("shift_demo.json", &json)?;
    writeln!(out, "{json}")?;
    Ok(())
}

fn cmd_fidelity_sweep(ctx: &Context, a: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    let etas = a
        .etas
        .clone()
        .or_else(|| ctx.config.etas.clone())
        .unwrap_or_else(|| vec![2.0, 3.0, 5.0, 8.0, 12.0, 20.0]);
    let n = a.n_samples.or(ctx.config.n_samples).unwrap_or(100);
    let seed = a.seed.or(ctx.config.rng_seed).unwrap_or(7);
    let backend = a.backend.or(ctx.config.backend).unwrap_or(Backend::RwaExact);
    let points = hadamard_fidelity_sweep_with(backend, &etas, n, seed)?;
    let json = sweep_to_json(&points)?;
    let path = ctx.write("fidelity_sweep.json", &json)?;
    for p in &points {
        writeln!(out, "eta = {:>6}: 1 - <F> = {:.4e}", p.eta, 1.0 - p.mean_fidelity)?;
    }
    writeln!(out, "-> {}", path.display())?;
    Ok(())
}

fn cmd_compile(ctx: &Context, circuit: &Path, out: &mut dyn Write) -> Result<()> {
    let circuit = LogicalCircuit::from_json(&fs::read_to_string(circuit)?)?;
    let layout = build_ladder(circuit.n)?;
    let compiled = compile_logical_circuit_traced(&circuit, &layout)?;
    let report = verify_compiled(&circuit, &layout, &compiled)?;
    ctx.write("schedule.json", &compiled.schedule.to_json()?)?;
    ctx.write("compile_report.json", &serde_json::to_string_pretty(&report)?)?;
    writeln!(
        out,
        "{} segments, total duration {:.4}, readout column {}, effective-model fidelity {:.12}",
        report.n_segments, report.total_duration, report.readout_column, report.fidelity
    )?;
    Ok(())
}

fn cmd_run(ctx: &Context, a: &RunArgs, out: &mut dyn Write) -> Result<()> {
    let schedule = PulseSchedule::from_json(&fs::read_to_string(&a.schedule)?)?;
    let n = a.n.or(ctx.config.n).unwrap_or(1);
    let layout = build_ladder(n)?;
    let backend = a.backend.or(ctx.config.backend).unwrap_or(Backend::Effective);
    let eta = ctx.eta(a.eta, 20.0)?;
    let samples = a.sample_points.or(ctx.config.sample_points).unwrap_or(50);
    let initial = match a.icc {
        Some(k) => WellFormedState::ground(k, n)?.expand_sparse(&layout)?,
        None => SparseState::basis(layout.qubit_ids(), &[])?,
    };
    let initial: StateVector = initial.to_dense()?;
    let traj = run(&schedule, &initial, &layout, &DeviceParams::from_eta(eta)?, backend, samples)?;
    let path = ctx.write("trajectory.csv", &traj.to_csv())?;
    writeln!(out, "{} samples over t = {:.4} -> {}", traj.len(), traj.times.last().unwrap_or(&0.0), path.display())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = main_with_args(std::iter::once("zz-ladder").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn layout_writes_json() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let (code, text) = run_cli(&["--out-dir", d, "layout", "--n", "4"]);
        assert_eq!(code, 0);
        assert!(text.contains("47 qubits"));
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("layout_n4.json")).unwrap()).unwrap();
        assert_eq!(v["qubits"].as_array().unwrap().len(), 47);
    }

    #[test]
    fn bad_input_exits_one() {
        assert_eq!(run_cli(&["layout", "--n", "0"]).0, 1);
        assert_eq!(run_cli(&["no-such-command"]).0, 1);
        assert_eq!(run_cli(&["blockade", "--eta", "-3"]).0, 1);
    }

    #[test]
    fn malformed_config_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("cfg.json");
        fs::write(&cfg, r#"{"eta": 20, "bogus": 1}"#).unwrap();
        let d = dir.path().to_str().unwrap();
        assert_eq!(run_cli(&["--config", cfg.to_str().unwrap(), "--out-dir", d, "shift-demo"]).0, 1);
        fs::write(&cfg, r#"{"experiment": "nope"}"#).unwrap();
        assert_eq!(run_cli(&["--config", cfg.to_str().unwrap(), "--out-dir", d, "shift-demo"]).0, 1);
    }

    #[test]
    fn flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("cfg.json");
        fs::write(&cfg, r#"{"n": 2}"#).unwrap();
        let d = dir.path().to_str().unwrap();
        let (_, text) = run_cli(&["--config", cfg.to_str().unwrap(), "--out-dir", d, "layout"]);
        assert!(text.contains("15 qubits"));
        let (_, text) = run_cli(&["--config", cfg.to_str().unwrap(), "--out-dir", d, "layout", "--n", "3"]);
        assert!(text.contains("29 qubits"));
    }
}
