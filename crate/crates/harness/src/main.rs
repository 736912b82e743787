use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mjue_harness::{
    emit_csv, load_config, run_study, ConvergenceReport, ExperimentConfig, GridSpec, HarnessError,
    StudyKind,
};

/// Convergence studies for the modified Jacobi unitary ensemble.
#[derive(Parser)]
#[command(name = "mjue", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Density of states K_n(x,x)/n against the arcsine law
    Density(CommonArgs),
    /// Bulk-scaled kernel against the sine kernel
    Bulk(CommonArgs),
    /// Hard-edge-scaled kernel against the Bessel kernel
    Edge(CommonArgs),
    /// Finite-n gap probabilities against the hard-edge limit
    Gap(CommonArgs),
    /// Recurrence coefficients against their limits
    Recurrence(CommonArgs),
    /// Leading-order polynomial asymptotics against exact values
    Asympt(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON config file; explicit flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Hard-edge weight exponent (alpha > -1)
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Soft-side weight exponent (beta > -1)
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Analytic factor: one | exp | runge | @file.json
    #[arg(long)]
    h: Option<String>,
    /// Polynomial degrees, strictly increasing
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Evaluation grid, lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Bulk scaling center
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    /// Gap interval parameters (gap study)
    #[arg(long, value_delimiter = ',')]
    s: Option<Vec<f64>>,
    /// Nystrom quadrature size (gap study)
    #[arg(long)]
    m: Option<usize>,
    /// CSV output path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Accepted band half-width around the expected convergence order
    #[arg(long)]
    tol: Option<f64>,
}

fn build_config(study: StudyKind, args: CommonArgs) -> Result<ExperimentConfig, HarnessError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let mut c = load_config(path)?;
            c.study = study;
            c
        }
        None => ExperimentConfig::new(study),
    };
    if let Some(v) = args.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = args.beta {
        cfg.beta = v;
    }
    if let Some(v) = args.h {
        cfg.h = v;
    }
    if let Some(v) = args.n {
        cfg.n = v;
    }
    if let Some(v) = args.grid {
        cfg.grid = v.parse::<GridSpec>()?;
    }
    if let Some(v) = args.x {
        cfg.x = v;
    }
    if let Some(v) = args.s {
        cfg.s = v;
    }
    if let Some(v) = args.m {
        cfg.m = v;
    }
    if let Some(v) = args.out {
        cfg.out = Some(v);
    }
    if let Some(v) = args.tol {
        cfg.tol = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn print_report(report: &ConvergenceReport) {
    if report.kind == StudyKind::Gap {
        for r in &report.gap_rows {
            println!(
                "s={} n={} P_finite={:.12} P_limit={:.12} abs_diff={:.3e}",
                r.s, r.n, r.p_finite, r.p_limit, r.abs_diff
            );
        }
    } else {
        for r in &report.rows {
            println!("n={} max_err={:.6e} target={:.12}", r.n, r.max_err, r.target);
        }
    }
    if let Some(fit) = &report.fit {
        println!(
            "fitted order p={:.4} constant C={:.4e} residual={:.2e}",
            fit.order, fit.constant, fit.residual
        );
    }
    match report.expected_order {
        Some(p) => println!(
            "{}: expected order {} within +/-{}",
            if report.passed { "PASS" } else { "FAIL" },
            p,
            report.band
        ),
        None => println!(
            "{}: monotone convergence",
            if report.passed { "PASS" } else { "FAIL" }
        ),
    }
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    let (study, args) = match cli.command {
        Command::Density(a) => (StudyKind::Density, a),
        Command::Bulk(a) => (StudyKind::Bulk, a),
        Command::Edge(a) => (StudyKind::Edge, a),
        Command::Gap(a) => (StudyKind::Gap, a),
        Command::Recurrence(a) => (StudyKind::Recurrence, a),
        Command::Asympt(a) => (StudyKind::Asymptotics, a),
    };
    let cfg = build_config(study, args)?;
    let report = run_study(&cfg)?;
    if let Some(path) = &cfg.out {
        emit_csv(&report, path)?;
    }
    print_report(&report);
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
