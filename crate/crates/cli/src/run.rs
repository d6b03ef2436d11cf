//! `jcgrav run`: evaluate a scenario and write its outputs.

use std::path::{Path, PathBuf};

use jcgrav_core::analytic::{
    audit_branches, audit_lattice, AnalyticOptions, AuditReport, BranchVariant, CoefficientConvention, PhaseMethod,
};
use jcgrav_core::observables::{
    cat_fidelity, entropy, inversion, overlaps, q_function, q_peak_analysis, FieldAnsatz, OverlapTriple,
};
use jcgrav_core::ode::OdeOptions;
use jcgrav_core::scenario::{serialize_scenario, Output, Scenario, TimeSpec};
use jcgrav_core::sweep::{branch_state, overlap_series, BackendOptions};
use jcgrav_core::{build_momentum_grid, coherent_amplitudes, truncation_for, CoherentField, MomentumGrid};

use crate::error::{CliError, Context};
use crate::output::{fmt17, qg_tag, write_key_values, write_qgrid_long, write_qgrid_matrix, write_series};

/// Everything a scenario needs before any backend runs.
#[derive(Debug, Clone)]
pub struct Setup {
    pub field: CoherentField,
    pub grid: MomentumGrid,
    pub opts: BackendOptions,
    pub audit: AuditReport,
    pub audit_matched: bool,
}

/// Audit lattice: `4³` points spanning the scenario's momenta, chirps and times.
pub fn scenario_audit_lattice(s: &Scenario) -> Vec<jcgrav_core::analytic::AuditPoint> {
    let qg_max = s.qg_list.iter().cloned().fold(0.0, f64::max);
    let lt_max = match s.time {
        TimeSpec::Sweep { end, .. } => end,
        TimeSpec::Instant(t) => t,
    };
    audit_lattice(
        &s.params,
        4,
        3.0 * s.params.sigma0,
        if qg_max > 0.0 { qg_max } else { 1.5e7 },
        if lt_max > 0.0 { lt_max } else { 25.0 },
    )
}

pub fn prepare(s: &Scenario) -> Result<Setup, CliError> {
    s.validate()?;
    let nmax = s.fock_nmax.unwrap_or_else(|| truncation_for(s.params.alpha));
    let field = coherent_amplitudes(s.params.alpha, nmax).context(|| "initial field".into())?;
    let grid = build_momentum_grid(s.params.sigma0, s.momentum_nodes).context(|| "momentum grid".into())?;
    let audit = audit_branches(&s.params, &scenario_audit_lattice(s), s.tol_quad).context(|| "branch audit".into())?;
    let audit_matched = audit.clone().require_match().is_ok();
    if !audit_matched {
        log::warn!("branch audit found no matching closed form; analytic backend falls back to quadrature");
    }
    let method = if audit_matched && audit.winner == BranchVariant::SELECTED {
        PhaseMethod::Auto
    } else {
        PhaseMethod::Quadrature
    };
    let opts = BackendOptions {
        analytic: AnalyticOptions {
            convention: if s.literal_paper_mode {
                CoefficientConvention::LiteralSi
            } else {
                CoefficientConvention::Scaled
            },
            method,
            quad_tol: s.tol_quad,
        },
        ode: OdeOptions::with_tol(s.tol_ode),
    };
    Ok(Setup { field, grid, opts, audit, audit_matched })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
}

fn progress(enabled: bool, msg: &str) {
    if enabled {
        eprintln!("{msg}");
    }
}

/// Runs every (backend, `q·g`) pair of the scenario and writes the requested
/// outputs into `out_dir`, which must already exist.
pub fn run_scenario(
    s: &Scenario,
    defaulted: &[&str],
    out_dir: &Path,
    show_progress: bool,
) -> Result<RunSummary, CliError> {
    if !out_dir.is_dir() {
        return Err(CliError::io(
            out_dir,
            std::io::Error::new(std::io::ErrorKind::NotFound, "output directory does not exist"),
        ));
    }
    let setup = prepare(s)?;
    let lambda_times = s.lambda_times();
    let times = s.times();
    let mut files = Vec::new();

    for backend in s.backend.backends() {
        for &qg in &s.qg_list {
            let params = s.params_for(qg);
            let tag = format!("{}_{}", backend, qg_tag(qg));
            progress(show_progress, &format!("[{tag}] {} samples, {} momentum nodes", times.len(), setup.grid.len()));

            if s.outputs.contains(&Output::Inversion) || s.outputs.contains(&Output::Entropy) {
                let series = overlap_series(backend, &times, &params, &setup.field, &setup.grid, &setup.opts)
                    .context(|| format!("{tag}: overlap series"))?;
                if s.outputs.contains(&Output::Inversion) {
                    let w: Vec<f64> = series.iter().map(inversion).collect();
                    let path = out_dir.join(format!("inversion_{tag}.csv"));
                    write_series(&path, &lambda_times, &w)?;
                    files.push(path);
                }
                if s.outputs.contains(&Output::Entropy) {
                    let ent = entropy_series(&series, &lambda_times).context(|| format!("{tag}: entropy"))?;
                    let path = out_dir.join(format!("entropy_{tag}.csv"));
                    write_series(&path, &lambda_times, &ent)?;
                    files.push(path);
                }
            }

            if s.outputs.contains(&Output::Qgrid) || s.outputs.contains(&Output::CatReport) {
                let t = times[0];
                let state = branch_state(backend, t, &params, &setup.field, &setup.grid, &setup.opts)
                    .context(|| format!("{tag}: branch state"))?;
                progress(show_progress, &format!("[{tag}] Q function on {0}x{0} grid", s.qgrid.n));
                let q = q_function(&state, &s.qgrid).context(|| format!("{tag}: Q function"))?;
                if s.outputs.contains(&Output::Qgrid) {
                    let long = out_dir.join(format!("qgrid_{tag}.csv"));
                    write_qgrid_long(&long, &q)?;
                    let matrix = out_dir.join(format!("qgrid_{tag}.txt"));
                    write_qgrid_matrix(&matrix, &q)?;
                    files.extend([long, matrix]);
                }
                if s.outputs.contains(&Output::CatReport) {
                    let o = overlaps(&state);
                    let peaks = q_peak_analysis(&q);
                    let ent = entropy(&o).context(|| format!("{tag}: entropy"))?;
                    let mut kv = vec![
                        ("lambda_t".to_string(), fmt17(lambda_times[0])),
                        ("fidelity.weighted".into(), fmt17(cat_fidelity(&state, &setup.field, FieldAnsatz::Weighted))),
                        ("fidelity.coherent".into(), fmt17(cat_fidelity(&state, &setup.field, FieldAnsatz::Coherent))),
                        ("state.norm".into(), fmt17(state.norm_sqr())),
                        ("inversion".into(), fmt17(inversion(&o))),
                        ("entropy".into(), fmt17(ent.s_f)),
                        ("q.riemann_sum".into(), fmt17(q.riemann_sum())),
                        ("q.boundary_max".into(), fmt17(q.boundary_max())),
                        ("peaks.count".into(), peaks.peaks.len().to_string()),
                        ("peaks.bimodal".into(), peaks.bimodal.to_string()),
                    ];
                    for (i, p) in peaks.peaks.iter().enumerate() {
                        kv.push((format!("peak{i}.x"), fmt17(p.x)));
                        kv.push((format!("peak{i}.y"), fmt17(p.y)));
                        kv.push((format!("peak{i}.height"), fmt17(p.height)));
                        kv.push((format!("peak{i}.fwhm"), fmt17(p.width)));
                    }
                    let path = out_dir.join(format!("cat_report_{tag}.txt"));
                    write_key_values(&path, &kv)?;
                    files.push(path);
                }
            }
        }
    }

    let path = out_dir.join("run_metadata.txt");
    write_key_values(&path, &metadata(s, defaulted, &setup))?;
    files.push(path);
    Ok(RunSummary { files })
}

fn entropy_series(series: &[OverlapTriple], lambda_times: &[f64]) -> jcgrav_core::Result<Vec<f64>> {
    series
        .iter()
        .zip(lambda_times)
        .map(|(o, lt)| {
            entropy(o).map(|e| e.s_f).inspect_err(|_e| {
                log::error!("entropy failed at lambda_t = {lt}");
            })
        })
        .collect()
}

/// Flat key-value record of everything that determines the outputs.
pub fn metadata(s: &Scenario, defaulted: &[&str], setup: &Setup) -> Vec<(String, String)> {
    let mut kv: Vec<(String, String)> = vec![("version".into(), env!("CARGO_PKG_VERSION").into())];
    for line in serialize_scenario(s).lines() {
        if let Some((k, v)) = line.split_once(" = ") {
            kv.push((k.to_string(), v.to_string()));
        }
    }
    let printed = setup.audit.residuals.iter().find(|(v, _)| *v == BranchVariant::PRINTED).map(|(_, r)| *r);
    kv.extend([
        ("fock.nmax_used".into(), setup.field.nmax().to_string()),
        ("momentum.rule".into(), "gauss-hermite".into()),
        ("ode.method".into(), "dormand-prince 5(4)".into()),
        ("ode.frame".into(), format!("{:?}", setup.opts.ode.frame).to_lowercase()),
        (
            "analytic.coefficients".into(),
            match setup.opts.analytic.convention {
                CoefficientConvention::Scaled => "scaled".into(),
                CoefficientConvention::LiteralSi => "literal_si".into(),
            },
        ),
        (
            "analytic.phase_integrals".into(),
            match setup.opts.analytic.method {
                PhaseMethod::Auto => "closed_form".into(),
                PhaseMethod::Quadrature => "quadrature".into(),
            },
        ),
        ("branch_audit.winner".into(), setup.audit.winner.label()),
        ("branch_audit.winner_residual".into(), format!("{:e}", setup.audit.winner_residual)),
        ("branch_audit.matches".into(), setup.audit.matches.to_string()),
        ("branch_audit.points".into(), setup.audit.points.to_string()),
        ("branch_audit.printed_variant".into(), BranchVariant::PRINTED.label()),
        ("branch_audit.printed_residual".into(), printed.map(|r| format!("{r:e}")).unwrap_or_default()),
        ("branch_audit.matched".into(), setup.audit_matched.to_string()),
        ("omega_rec.from_q_mass".into(), format!("{:e}", s.params.recoil_from_q_mass())),
        ("omega_rec.relative_mismatch".into(), format!("{:e}", s.params.recoil_mismatch())),
        ("defaulted".into(), defaulted.join(", ")),
    ]);
    kv
}
