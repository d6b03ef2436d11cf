//! Overlap time series for either backend.

use rayon::prelude::*;

use crate::analytic::{branch_states_analytic, AnalyticOptions};
use crate::observables::{overlaps, OverlapTriple};
use crate::ode::{branch_states_ode, for_each_node, OdeOptions};
use crate::{BranchState, CoherentField, MomentumGrid, PhysicalParams, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    Analytic,
    Ode,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Analytic => "analytic",
            Backend::Ode => "ode",
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BackendOptions {
    pub analytic: AnalyticOptions,
    pub ode: OdeOptions,
}

pub fn branch_state(
    backend: Backend,
    t: f64,
    params: &PhysicalParams,
    field: &CoherentField,
    grid: &MomentumGrid,
    opts: &BackendOptions,
) -> Result<BranchState> {
    match backend {
        Backend::Analytic => branch_states_analytic(t, params, field, grid, &opts.analytic),
        Backend::Ode => branch_states_ode(t, params, field, grid, &opts.ode),
    }
}

/// Overlaps at each of the ascending `times` (seconds).
///
/// The ODE route integrates every block once through all samples; node
/// results are reduced in grid order, so the output does not depend on
/// scheduling.
pub fn overlap_series(
    backend: Backend,
    times: &[f64],
    params: &PhysicalParams,
    field: &CoherentField,
    grid: &MomentumGrid,
    opts: &BackendOptions,
) -> Result<Vec<OverlapTriple>> {
    match backend {
        Backend::Analytic => times
            .par_iter()
            .map(|&t| Ok(overlaps(&branch_states_analytic(t, params, field, grid, &opts.analytic)?)))
            .collect(),
        Backend::Ode => {
            let per_node = for_each_node(times, params, field, grid, &opts.ode, |blocks| {
                (0..times.len())
                    .map(|i| {
                        let mut o = OverlapTriple::default();
                        let mut prev_d = C64::new(0.0, 0.0);
                        for (n, series) in blocks.iter().enumerate() {
                            let w = field.amplitude(n as isize);
                            let c = w * series[i].c_e;
                            o.cc += c.norm_sqr();
                            o.cd += c.conj() * prev_d;
                            prev_d = w * series[i].c_g;
                            o.dd += prev_d.norm_sqr();
                        }
                        o
                    })
                    .collect::<Vec<_>>()
            })?;
            let mut out = vec![OverlapTriple::default(); times.len()];
            for (series, w) in per_node.iter().zip(grid.weights()) {
                for (acc, o) in out.iter_mut().zip(series) {
                    *acc = *acc + o.scaled(*w);
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_momentum_grid, coherent_amplitudes};

    #[test]
    fn ode_series_matches_assembled_states() {
        let pp = PhysicalParams::reference(1.5e7);
        let field = coherent_amplitudes(pp.alpha, 100).unwrap();
        let grid = build_momentum_grid(1.0, 3).unwrap();
        let opts = BackendOptions::default();
        let times = [0.0, 3e-6, 7.0 * std::f64::consts::PI / 2e6];
        let series = overlap_series(Backend::Ode, &times, &pp, &field, &grid, &opts).unwrap();
        for (o, &t) in series.iter().zip(&times) {
            let direct = overlaps(&branch_state(Backend::Ode, t, &pp, &field, &grid, &opts).unwrap());
            assert!((o.cc - direct.cc).abs() < 1e-12);
            assert!((o.dd - direct.dd).abs() < 1e-12);
            assert!((o.cd - direct.cd).norm() < 1e-12);
        }
    }

    #[test]
    fn analytic_series_starts_excited() {
        let pp = PhysicalParams::reference(0.0);
        let field = coherent_amplitudes(pp.alpha, 100).unwrap();
        let grid = build_momentum_grid(1.0, 2).unwrap();
        let s =
            overlap_series(Backend::Analytic, &[0.0, 1e-6], &pp, &field, &grid, &BackendOptions::default()).unwrap();
        assert!((s[0].cc - 1.0).abs() < 1e-12 && s[0].dd == 0.0);
    }
}
