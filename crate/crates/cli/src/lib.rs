//! Front end for `jcgrav-core`: scenario runs, backend cross-checks and the
//! closed-form branch audit.

pub mod crosscheck;
pub mod error;
pub mod output;
pub mod run;

pub use error::CliError;

use jcgrav_core::analytic::{audit_branches, audit_lattice, AuditReport};
use jcgrav_core::PhysicalParams;

use crate::error::Context;

/// Branch audit over an `n³` lattice with `|p| ≤ 3`, `q·g ≤ qg_max` and
/// `λt ≤ 25`.
pub fn audit(n: usize, qg_max: f64) -> Result<AuditReport, CliError> {
    let params = PhysicalParams::reference(0.0);
    let lattice = audit_lattice(&params, n, 3.0, qg_max, 25.0);
    audit_branches(&params, &lattice, 1e-12).context(|| "branch audit".into())
}

pub fn format_audit(report: &AuditReport) -> String {
    let mut out = format!("points {}\n", report.points);
    for (v, r) in &report.residuals {
        out.push_str(&format!("{r:>12.3e}  {v}\n"));
    }
    out.push_str(&format!(
        "winner {} (residual {:e}, {} within 1e-8)\n",
        report.winner, report.winner_residual, report.matches
    ));
    out
}
