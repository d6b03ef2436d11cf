#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jcgrav_cli::crosscheck::{append_report, crosscheck, CrosscheckArgs};
use jcgrav_cli::run::run_scenario;
use jcgrav_cli::{audit, format_audit, CliError};
use jcgrav_core::scenario::{builtin_scenario, parse_scenario, ScenarioError};

#[derive(Parser)]
#[command(name = "jcgrav", version, about = "Jaynes-Cummings atom in free fall: inversion, entropy and Q-function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario file or a builtin scenario.
    Run {
        /// Scenario file (`key = value` lines).
        #[arg(conflicts_with = "builtin", required_unless_present = "builtin")]
        scenario: Option<PathBuf>,
        /// fig1, fig2 or fig3.
        #[arg(long)]
        builtin: Option<String>,
        /// Existing output directory.
        #[arg(long)]
        out: PathBuf,
        /// No progress messages on stderr.
        #[arg(long)]
        quiet: bool,
    },
    /// Compare closed-form and ODE inversion and entropy over a sweep.
    Crosscheck {
        #[arg(long, default_value_t = 0.0)]
        qg: f64,
        /// End of the sweep in λt.
        #[arg(long, default_value_t = 2.0)]
        tmax: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 401)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        nodes: usize,
        /// Closed-form coefficients from SI-valued phase integrals.
        #[arg(long)]
        literal: bool,
        /// File to which a one-line summary is appended.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare every sign/branch reading of the closed-form phase integral
    /// against quadrature.
    AuditBranches {
        /// Lattice points per axis.
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, default_value_t = 1.5e7)]
        qg_max: f64,
    },
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { scenario, builtin, out, quiet } => {
            let (scenario, defaulted) = match (scenario, builtin) {
                (_, Some(name)) => (builtin_scenario(&name)?, Vec::new()),
                (Some(path), None) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
                    let parsed = parse_scenario(&text)?;
                    (parsed.scenario, parsed.defaulted)
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            let summary = run_scenario(&scenario, &defaulted, &out, !quiet)?;
            for f in summary.files {
                println!("{}", f.display());
            }
        }
        Command::Crosscheck { qg, tmax, tol, lambda, samples, nodes, literal, report } => {
            let r = crosscheck(&CrosscheckArgs { qg, tmax, tol, lambda, samples, nodes, literal })?;
            println!("max |W_analytic - W_ode| = {:e} at lambda_t = {}", r.max_inversion_dev, r.worst_lambda_t);
            match r.max_entropy_dev {
                Some(d) => println!("max |S_analytic - S_ode| = {d:e}"),
                None => println!("max |S_analytic - S_ode| = n/a"),
            }
            println!("analytic samples rejected by the entropy: {}", r.entropy_rejections);
            println!("max analytic norm defect = {:e}", r.max_analytic_norm_defect);
            for h in &r.half_revival {
                println!(
                    "{} at lambda_t = 7pi/2: {} peak(s), bimodal = {}, entropy = {}",
                    h.backend,
                    h.peaks,
                    h.bimodal,
                    h.entropy.map(|e| format!("{e:e}")).unwrap_or_else(|| "rejected".into())
                );
            }
            println!("{}", r.summary_line());
            if let Some(path) = report {
                append_report(&path, &r)?;
            }
        }
        Command::AuditBranches { points, qg_max } => {
            if points == 0 || !(qg_max > 0.0) {
                return Err(ScenarioError::Validation("--points must be >= 1 and --qg-max > 0".into()).into());
            }
            let report = audit(points, qg_max)?;
            print!("{}", format_audit(&report));
            report.require_match().map_err(|source| CliError::Numerical { context: "branch audit".into(), source })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
