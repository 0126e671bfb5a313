//! Command-line driver: every subcommand reads one JSON experiment config and
//! writes CSV.
//!
//! Exit codes: 0 on success, 1 when a solver or output write fails, 2 when
//! the configuration is unreadable, invalid, or names an experiment the
//! subcommand does not run.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spectral_periodic::harness::{
    build_operator, emit_csv, jump_function, run_experiment, ExperimentConfig, ExperimentKind,
};
use spectral_periodic::ode::{solve_ode_with, SolveOptions};
use spectral_periodic::rhp::{jump_residual, solve_rhp_with, winding_number};
use spectral_periodic::spectrum::eigenvalues_self_adjoint_by;
use spectral_periodic::{synth_powerlaw, BandWindow, CoeffVec, Error, Exec, PowerLawKind};

#[derive(Parser)]
#[command(name = "spectral-periodic", version, about = "Spectral methods for periodic operator equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the third-order ODE experiment at N_ref; writes `j,re,im`.
    SolveOde(Args),
    /// Solve the Riemann–Hilbert experiment at N_ref; writes `j,re,im`.
    SolveRhp(Args),
    /// Eigenvalues of a spectrum experiment at every N; writes `N,index,lambda`.
    Spectrum(Args),
    /// Full convergence study; writes `N,error` (or `N,lambda,d,r`) and the fitted slope.
    Convergence(Args),
}

#[derive(clap::Args)]
struct Args {
    /// Experiment configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path, overriding `output_path` from the config.
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Config(String),
    Solver(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_config() {
            Failure::Config(e.to_string())
        } else {
            Failure::Solver(e.to_string())
        }
    }
}

fn load(args: &Args, allowed: &[ExperimentKind], command: &str) -> Result<(ExperimentConfig, PathBuf), Failure> {
    let cfg = ExperimentConfig::from_path(&args.config).map_err(|e| Failure::Config(e.to_string()))?;
    if !allowed.contains(&cfg.experiment) {
        return Err(Failure::Config(format!(
            "{command} cannot run experiment '{}'",
            cfg.experiment.name()
        )));
    }
    let out = args.output.clone().unwrap_or_else(|| cfg.output_path.clone());
    Ok((cfg, out))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Solver(format!("{}: {e}", path.display())))
}

fn coefficient_csv(u: &CoeffVec, trailer: &[String]) -> String {
    let mut out = String::from("j,re,im\n");
    for (j, c) in u.iter() {
        let _ = writeln!(out, "{j},{:?},{:?}", c.re, c.im);
    }
    for line in trailer {
        let _ = writeln!(out, "# {line}");
    }
    out
}

fn at_ref<T>(n: usize, r: spectral_periodic::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Error::AtSize { n, source: Box::new(e) }.into())
}

fn solve_ode_cmd(args: &Args) -> Result<String, Failure> {
    let (cfg, out) = load(args, &[ExperimentKind::Ode3], "solve-ode")?;
    let spec = build_operator(&cfg)?;
    let f = synth_powerlaw(PowerLawKind::H, cfg.alpha, 0.0, BandWindow::symmetric(2 * cfg.n_ref))?;
    let w = BandWindow::new(cfg.n_ref)?;
    let sol = at_ref(cfg.n_ref, solve_ode_with(&spec, &f, w, cfg.mode, &SolveOptions::default()))?;
    let trailer = vec![
        format!("N={} mode={}", cfg.n_ref, cfg.mode),
        format!("condition={:?}", sol.condition),
        format!("relative_residual={:?}", sol.relative_residual),
    ];
    write(&out, &coefficient_csv(&sol.u, &trailer))?;
    Ok(format!("solved at N = {}, condition {:.3e}; wrote {}", cfg.n_ref, sol.condition, out.display()))
}

fn solve_rhp_cmd(args: &Args) -> Result<String, Failure> {
    let (cfg, out) = load(args, &[ExperimentKind::Rhp], "solve-rhp")?;
    let jump = jump_function(&cfg)?;
    let w = BandWindow::new(cfg.n_ref)?;
    let m = 16 * cfg.n_ref;
    let winding = winding_number(jump.g(), m)?;
    if winding != 0 {
        eprintln!("warning: jump has winding number {winding}; the problem need not be uniquely solvable");
    }
    let sol = at_ref(cfg.n_ref, solve_rhp_with(&jump, w, cfg.mode, &SolveOptions::default(), Exec::default()))?;
    let residual = jump_residual(&sol, &jump, m)?;
    let trailer = vec![
        format!("N={} mode={}", cfg.n_ref, cfg.mode),
        format!("winding={winding}"),
        format!("condition={:?}", sol.condition),
        format!("jump_residual={residual:?}"),
    ];
    write(&out, &coefficient_csv(&sol.u, &trailer))?;
    Ok(format!("solved at N = {}, jump residual {residual:.3e}; wrote {}", cfg.n_ref, out.display()))
}

fn spectrum_cmd(args: &Args) -> Result<String, Failure> {
    let (cfg, out) = load(args, &[ExperimentKind::Spectrum2, ExperimentKind::Spectrum3], "spectrum")?;
    let spec = build_operator(&cfg)?;
    let mut text = String::from("N,index,lambda\n");
    for &n in cfg.n_list.iter().chain(std::iter::once(&cfg.n_ref)) {
        let rep = at_ref(n, BandWindow::new(n).and_then(|w| eigenvalues_self_adjoint_by(&spec, w, cfg.mode)))?;
        for (i, l) in rep.eigenvalues.iter().enumerate() {
            let _ = writeln!(text, "{n},{i},{l:?}");
        }
    }
    write(&out, &text)?;
    Ok(format!("wrote {}", out.display()))
}

fn convergence_cmd(args: &Args) -> Result<String, Failure> {
    let (cfg, out) = load(
        args,
        &[ExperimentKind::Ode3, ExperimentKind::Spectrum2, ExperimentKind::Spectrum3, ExperimentKind::Rhp],
        "convergence",
    )?;
    let report = run_experiment(&cfg)?;
    emit_csv(&report, &out).map_err(|e| Failure::Solver(e.to_string()))?;
    for note in &report.notes {
        eprintln!("{note}");
    }
    let slope = report.fitted_slope.map_or("undefined".into(), |s| format!("{s:.4}"));
    Ok(format!(
        "{}: fitted slope {slope} (expected {:.4}); wrote {}",
        cfg.experiment.name(),
        report.expected_slope,
        out.display()
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::SolveOde(a) => solve_ode_cmd(a),
        Command::SolveRhp(a) => solve_rhp_cmd(a),
        Command::Spectrum(a) => spectrum_cmd(a),
        Command::Convergence(a) => convergence_cmd(a),
    };
    match result {
        Ok(msg) => {
            println!("{msg}");
            ExitCode::SUCCESS
        }
        Err(Failure::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
