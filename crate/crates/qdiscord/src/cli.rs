//! Command-line front end: single-state discord reports, basis
//! minimization, figure-data sweeps, the PPT verdict, and the randomized
//! proposition checker.
//!
//! Exit codes are partitioned: 1 usage, 2 validation, 3 dimension,
//! 4 i/o, 5 property violation.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::discord::{
    discord, minimize_discord, proposition_residuals, DiscordReport, Variant, PROP1_TOL,
    PROP2_TOL, PROP3_BACKWARD_TOL, PROP3_FORWARD_TOL,
};
use crate::error::Error;
use crate::measurement::{dephase, qubit_basis};
use crate::separability::ppt_test;
use crate::states::{decohered_cnot, random_state, read_state_json, werner, BipartiteState};

#[derive(Parser)]
#[command(
    name = "qdiscord",
    version,
    about = "Quantum discord of bipartite density matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the discord report of a state file at one measurement basis
    Compute {
        /// JSON state file
        #[arg(long)]
        state: PathBuf,
        /// Polar basis angle in radians
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Azimuthal basis angle in radians
        #[arg(long, default_value_t = 1.0)]
        phi: f64,
        #[arg(long, value_enum, default_value_t = Mode::Rank1)]
        mode: Mode,
    },
    /// Minimize discord over qubit measurement bases
    Minimize {
        /// JSON state file
        #[arg(long)]
        state: PathBuf,
        /// Coarse search grid as THETAxPHI, e.g. 64x32
        #[arg(long, default_value = "64x32")]
        grid: String,
        /// Follow the grid search with a simplex descent
        #[arg(long)]
        refine: bool,
    },
    /// Sweep a state family over (z, θ) and write CSV figure data
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        /// Number of z samples over [0, 1], endpoints included
        #[arg(long)]
        z_steps: usize,
        /// Number of θ samples over [0, π/2), right endpoint excluded
        #[arg(long)]
        theta_steps: usize,
        /// Fixed azimuthal angle in radians
        #[arg(long, default_value_t = 1.0)]
        phi: f64,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Partial-transpose separability verdict for a state file
    Ppt {
        /// JSON state file
        #[arg(long)]
        state: PathBuf,
    },
    /// Randomized residual checks of the structural propositions
    Check {
        /// Number of random (state, basis) trials
        #[arg(long)]
        trials: usize,
        /// Master seed for the trial stream
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Rank1,
    Traced,
    Dephased,
}

impl From<Mode> for Variant {
    fn from(mode: Mode) -> Variant {
        match mode {
            Mode::Rank1 => Variant::Rank1,
            Mode::Traced => Variant::Traced,
            Mode::Dephased => Variant::Dephased,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cnot,
    Werner,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
    Write { path: PathBuf, source: std::io::Error },
    PropertyViolation(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(Error::DimensionMismatch { .. })
            | CliError::Core(Error::UnsupportedDimension { .. }) => 3,
            CliError::Core(Error::Io(_)) | CliError::Write { .. } => 4,
            CliError::Core(_) => 2,
            CliError::PropertyViolation(_) => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Write { path, source } => {
                write!(f, "cannot write {}: {source}", path.display())
            }
            CliError::PropertyViolation(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Parses the process arguments, runs one subcommand, and returns the exit
/// code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Compute {
            state,
            theta,
            phi,
            mode,
        } => cmd_compute(&state, theta, phi, mode.into()),
        Command::Minimize {
            state,
            grid,
            refine,
        } => cmd_minimize(&state, &grid, refine),
        Command::Sweep {
            family,
            z_steps,
            theta_steps,
            phi,
            out,
        } => cmd_sweep(family, z_steps, theta_steps, phi, &out),
        Command::Ppt { state } => cmd_ppt(&state),
        Command::Check { trials, seed } => cmd_check(trials, seed),
    }
}

/// Fixed 12-digit float formatting; deterministic byte-for-byte and with
/// the negative-zero artifact of rounded tiny negatives stripped.
fn fmt12(value: f64) -> String {
    let s = format!("{value:.12}");
    if s == "-0.000000000000" {
        s[1..].to_string()
    } else {
        s
    }
}

fn print_report(report: &DiscordReport) {
    println!("variant       = {}", report.variant);
    println!("h_s           = {}", fmt12(report.h_s));
    println!("h_a           = {}", fmt12(report.h_a));
    println!("h_sa          = {}", fmt12(report.h_sa));
    println!("mutual_i      = {}", fmt12(report.mutual_i));
    println!("mutual_j      = {}", fmt12(report.mutual_j));
    println!("discord       = {}", fmt12(report.discord));
    let probs: Vec<String> = report.outcome_probs.iter().map(|&p| fmt12(p)).collect();
    println!("outcome_probs = [{}]", probs.join(", "));
}

fn cmd_compute(path: &Path, theta: f64, phi: f64, variant: Variant) -> Result<(), CliError> {
    let state = read_state_json(path)?;
    let report = discord(&state, &qubit_basis(theta, phi), variant)?;
    println!(
        "state         = {} (dim_s={}, dim_a={})",
        path.display(),
        state.dim_s(),
        state.dim_a()
    );
    println!("theta         = {}", fmt12(theta));
    println!("phi           = {}", fmt12(phi));
    print_report(&report);
    Ok(())
}

fn parse_grid(grid: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--grid must look like 64x32, got '{grid}'"));
    let (t, p) = grid.split_once(['x', 'X']).ok_or_else(bad)?;
    let n_theta: usize = t.trim().parse().map_err(|_| bad())?;
    let n_phi: usize = p.trim().parse().map_err(|_| bad())?;
    if n_theta == 0 || n_phi == 0 {
        return Err(bad());
    }
    Ok((n_theta, n_phi))
}

fn cmd_minimize(path: &Path, grid: &str, refine: bool) -> Result<(), CliError> {
    let grid = parse_grid(grid)?;
    let state = read_state_json(path)?;
    let result = minimize_discord(&state, grid, refine)?;
    println!("min_discord   = {}", fmt12(result.discord));
    println!("argmin_theta  = {}", fmt12(result.theta));
    println!("argmin_phi    = {}", fmt12(result.phi));
    print_report(&result.report);
    Ok(())
}

fn family_state(family: Family, z: f64) -> Result<BipartiteState, CliError> {
    Ok(match family {
        Family::Cnot => decohered_cnot(z)?,
        Family::Werner => werner(z)?,
    })
}

fn cmd_sweep(
    family: Family,
    z_steps: usize,
    theta_steps: usize,
    phi: f64,
    out: &Path,
) -> Result<(), CliError> {
    if z_steps < 2 || theta_steps < 2 {
        return Err(CliError::Usage(
            "--z-steps and --theta-steps must be at least 2".into(),
        ));
    }
    let file = std::fs::File::create(out).map_err(|source| CliError::Write {
        path: out.to_path_buf(),
        source,
    })?;
    let mut writer = std::io::BufWriter::new(file);
    let io_err = |source: std::io::Error| CliError::Write {
        path: out.to_path_buf(),
        source,
    };

    writeln!(writer, "z,theta,phi,discord,mutual_i,mutual_j").map_err(io_err)?;
    for zi in 0..z_steps {
        let z = zi as f64 / (z_steps - 1) as f64;
        let state = family_state(family, z)?;
        // θ stops short of π/2: that endpoint repeats the θ=0 projector set.
        for ti in 0..theta_steps {
            let theta = ti as f64 * FRAC_PI_2 / theta_steps as f64;
            let report = discord(&state, &qubit_basis(theta, phi), Variant::Rank1)?;
            writeln!(
                writer,
                "{},{},{},{},{},{}",
                fmt12(z),
                fmt12(theta),
                fmt12(phi),
                fmt12(report.discord),
                fmt12(report.mutual_i),
                fmt12(report.mutual_j)
            )
            .map_err(io_err)?;
        }
    }
    writer.flush().map_err(io_err)?;
    Ok(())
}

fn cmd_ppt(path: &Path) -> Result<(), CliError> {
    let state = read_state_json(path)?;
    let verdict = ppt_test(&state)?;
    println!("min_eigenvalue = {}", fmt12(verdict.min_eigenvalue));
    println!("is_ppt         = {}", verdict.is_ppt);
    println!("conclusive     = {}", verdict.conclusive);
    Ok(())
}

fn cmd_check(trials: usize, seed: u64) -> Result<(), CliError> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_prop1: f64 = 0.0;
    let mut max_prop2: f64 = 0.0;
    let mut max_forward: Option<f64> = None;
    let mut max_backward: Option<f64> = None;
    let mut evaluations = 0usize;

    for _ in 0..trials {
        let state_seed: u64 = rng.random();
        let theta: f64 = rng.random_range(0.0..FRAC_PI_2);
        let phi: f64 = rng.random_range(0.0..PI);
        let raw = random_state(2, 2, state_seed);
        let basis = qubit_basis(theta, phi);
        // A raw draw probes the generic case; its dephased image probes the
        // zero-discord branch of the third proposition.
        let block_diagonal = dephase(&raw, &basis)?;
        for state in [&raw, &block_diagonal] {
            let r = proposition_residuals(state, &basis)?;
            evaluations += 1;
            max_prop1 = max_prop1.max(r.prop1);
            max_prop2 = max_prop2.max(r.prop2_violation);
            if let Some(fwd) = r.prop3_forward {
                max_forward = Some(max_forward.unwrap_or(0.0).max(fwd));
            }
            if let Some(bwd) = r.prop3_backward {
                max_backward = Some(max_backward.unwrap_or(0.0).max(bwd));
            }
            let violated = r.prop1 > PROP1_TOL
                || r.prop2_violation > PROP2_TOL
                || r.prop3_forward.is_some_and(|v| v > PROP3_FORWARD_TOL)
                || r.prop3_backward.is_some_and(|v| v > PROP3_BACKWARD_TOL);
            if violated {
                return Err(CliError::PropertyViolation(format!(
                    "proposition residual out of tolerance at state seed {state_seed}, \
                     basis theta={theta}, phi={phi}: prop1={:.3e} prop2={:.3e} \
                     prop3_forward={:?} prop3_backward={:?}",
                    r.prop1, r.prop2_violation, r.prop3_forward, r.prop3_backward
                )));
            }
        }
    }

    println!("trials               = {trials} ({evaluations} evaluations)");
    println!("prop1 max residual   = {:.3e}  (tol {PROP1_TOL:.1e})", max_prop1);
    println!("prop2 max violation  = {:.3e}  (tol {PROP2_TOL:.1e})", max_prop2);
    match max_forward {
        Some(v) => {
            println!("prop3 forward max    = {v:.3e}  (tol {PROP3_FORWARD_TOL:.1e})")
        }
        None => println!("prop3 forward        = not exercised"),
    }
    match max_backward {
        Some(v) => {
            println!("prop3 backward max   = {v:.3e}  (tol {PROP3_BACKWARD_TOL:.1e})")
        }
        None => println!("prop3 backward       = not exercised"),
    }
    println!("all propositions hold");
    Ok(())
}
