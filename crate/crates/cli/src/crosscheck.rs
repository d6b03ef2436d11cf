//! `jcgrav crosscheck`: closed-form branch states against the ODE reference.
//!
//! Disagreement is a finding, not a failure; only numerical breakdowns
//! produce an error.

use std::path::Path;

use jcgrav_core::analytic::{AnalyticOptions, CoefficientConvention};
use jcgrav_core::observables::{entropy, inversion, overlaps, q_function, q_peak_analysis, QGridSpec};
use jcgrav_core::ode::{OdeOptions, MAX_TOL, MIN_TOL};
use jcgrav_core::scenario::{ScenarioError, HALF_REVIVAL_LT};
use jcgrav_core::sweep::{branch_state, overlap_series, Backend, BackendOptions};
use jcgrav_core::{build_momentum_grid, coherent_amplitudes, truncation_for, PhysicalParams};

use crate::error::{CliError, Context};
use crate::output::append_line;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrosscheckArgs {
    pub qg: f64,
    /// End of the sweep in `λt`.
    pub tmax: f64,
    pub tol: f64,
    /// Overrides the coupling; `None` keeps the reference value.
    pub lambda: Option<f64>,
    pub samples: usize,
    pub nodes: usize,
    /// Closed-form coefficients from SI-valued integrals instead of `λ`-scaled ones.
    pub literal: bool,
}

impl Default for CrosscheckArgs {
    fn default() -> Self {
        Self { qg: 0.0, tmax: 2.0, tol: 1e-10, lambda: None, samples: 401, nodes: 8, literal: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckReport {
    pub args: CrosscheckArgs,
    pub max_inversion_dev: f64,
    /// Over the samples where the closed-form overlaps admit an entropy.
    pub max_entropy_dev: Option<f64>,
    /// Samples where the closed-form overlaps were rejected by the entropy.
    pub entropy_rejections: usize,
    /// `max |⟨C|C⟩ + ⟨D|D⟩ − 1|` of the closed-form state.
    pub max_analytic_norm_defect: f64,
    /// `λt` of the largest inversion deviation.
    pub worst_lambda_t: f64,
    /// Q-function verdicts and entropies at `λt = 7π/2`.
    pub half_revival: [HalfRevival; 2],
}

/// Cat diagnostics of one backend at the half revival.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfRevival {
    pub backend: Backend,
    pub peaks: usize,
    pub bimodal: bool,
    /// `None` when the overlaps are rejected by the entropy.
    pub entropy: Option<f64>,
    pub norm: f64,
}

impl CrosscheckReport {
    pub fn summary_line(&self) -> String {
        let a = &self.args;
        format!(
            "qg={:e} tmax={:e} tol={:e} lambda={:e} samples={} nodes={} coefficients={} max_dW={:e} worst_lambda_t={:e} max_dS={} entropy_rejections={} max_norm_defect={:e}{}",
            a.qg,
            a.tmax,
            a.tol,
            a.lambda.unwrap_or(PhysicalParams::reference(0.0).lambda),
            a.samples,
            a.nodes,
            if a.literal { "literal_si" } else { "scaled" },
            self.max_inversion_dev,
            self.worst_lambda_t,
            self.max_entropy_dev.map(|d| format!("{d:e}")).unwrap_or_else(|| "nan".into()),
            self.entropy_rejections,
            self.max_analytic_norm_defect,
            self.half_revival.iter().map(HalfRevival::fields).collect::<String>(),
        )
    }
}

impl HalfRevival {
    fn fields(&self) -> String {
        let b = self.backend.name();
        format!(
            " {b}.half_revival_peaks={} {b}.half_revival_bimodal={} {b}.half_revival_entropy={} {b}.half_revival_norm={:e}",
            self.peaks,
            self.bimodal,
            self.entropy.map(|e| format!("{e:e}")).unwrap_or_else(|| "nan".into()),
            self.norm,
        )
    }
}

pub fn crosscheck(args: &CrosscheckArgs) -> Result<CrosscheckReport, CliError> {
    let invalid = |m: String| CliError::Scenario(ScenarioError::Validation(m));
    if !(MIN_TOL..=MAX_TOL).contains(&args.tol) {
        return Err(invalid(format!("--tol must lie in [{MIN_TOL:e}, {MAX_TOL:e}]")));
    }
    if !(args.tmax > 0.0 && args.tmax.is_finite()) || args.samples < 2 || args.nodes == 0 {
        return Err(invalid("--tmax must be > 0, --samples >= 2 and --nodes >= 1".into()));
    }
    let mut params = PhysicalParams::reference(args.qg);
    if let Some(l) = args.lambda {
        params.lambda = l;
    }
    params.validate().map_err(|e| invalid(e.to_string()))?;

    let field = coherent_amplitudes(params.alpha, truncation_for(params.alpha)).context(|| "initial field".into())?;
    let grid = build_momentum_grid(params.sigma0, args.nodes).context(|| "momentum grid".into())?;
    let convention = if args.literal { CoefficientConvention::LiteralSi } else { CoefficientConvention::Scaled };
    let opts = BackendOptions {
        analytic: AnalyticOptions { convention, ..AnalyticOptions::default() },
        ode: OdeOptions::with_tol(args.tol),
    };
    let lambda_times: Vec<f64> = (0..args.samples).map(|i| args.tmax * i as f64 / (args.samples - 1) as f64).collect();
    let times: Vec<f64> = lambda_times.iter().map(|lt| lt / params.time_scale()).collect();

    let ana = overlap_series(Backend::Analytic, &times, &params, &field, &grid, &opts)
        .context(|| "analytic series".into())?;
    let ode = overlap_series(Backend::Ode, &times, &params, &field, &grid, &opts).context(|| "ode series".into())?;

    let t_half = HALF_REVIVAL_LT / params.time_scale();
    let mut half_revival = Vec::with_capacity(2);
    for backend in [Backend::Analytic, Backend::Ode] {
        let state = branch_state(backend, t_half, &params, &field, &grid, &opts)
            .context(|| format!("{backend} half-revival state"))?;
        let q = q_function(&state, &QGridSpec::default()).context(|| format!("{backend} Q function"))?;
        let peaks = q_peak_analysis(&q);
        half_revival.push(HalfRevival {
            backend,
            peaks: peaks.peaks.len(),
            bimodal: peaks.bimodal,
            entropy: entropy(&overlaps(&state)).ok().map(|e| e.s_f),
            norm: state.norm_sqr(),
        });
    }

    let mut report = CrosscheckReport {
        args: *args,
        max_inversion_dev: 0.0,
        max_entropy_dev: None,
        entropy_rejections: 0,
        max_analytic_norm_defect: 0.0,
        worst_lambda_t: 0.0,
        half_revival: [half_revival[0], half_revival[1]],
    };
    for ((a, o), lt) in ana.iter().zip(&ode).zip(&lambda_times) {
        let dw = (inversion(a) - inversion(o)).abs();
        if dw > report.max_inversion_dev {
            report.max_inversion_dev = dw;
            report.worst_lambda_t = *lt;
        }
        report.max_analytic_norm_defect = report.max_analytic_norm_defect.max((a.norm() - 1.0).abs());
        let s_ode = entropy(o).context(|| format!("ode entropy at lambda_t = {lt}"))?.s_f;
        match entropy(a) {
            Ok(e) => {
                let d = (e.s_f - s_ode).abs();
                report.max_entropy_dev = Some(report.max_entropy_dev.map_or(d, |m: f64| m.max(d)));
            }
            Err(_) => report.entropy_rejections += 1,
        }
    }
    Ok(report)
}

pub fn append_report(path: &Path, report: &CrosscheckReport) -> Result<(), CliError> {
    append_line(path, &report.summary_line())
}
