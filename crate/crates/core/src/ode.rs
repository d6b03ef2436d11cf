//! Time-ordered reference dynamics.
//!
//! Each excitation block `{|e, n⟩, |g, n+1⟩}` obeys
//!
//! ```text
//! i ċₑ = λ√(n+1) e^{+iφ(t)} c_g
//! i ċ_g = λ√(n+1) e^{−iφ(t)} cₑ        φ(t) = t·Δ₁(p, t) = Δ₀(p)t − (q·g)t²/2
//! ```
//!
//! and is integrated with an adaptive Dormand–Prince 5(4) pair in the scaled
//! time `τ = t·ω_s` ([`PhysicalParams::time_scale`]). With `q·g = 0` the
//! equations reduce to the detuned Jaynes–Cummings block with generalized
//! Rabi frequency `Ω² = λ²(n+1) + Δ₀(p)²/4`.

use ndarray::Array2;
use rayon::prelude::*;

use crate::analytic::{detuning0_of_p, interaction_phase};
use crate::{BranchState, CoherentField, Error, MomentumGrid, PhysicalParams, Result, C64};

pub const MIN_TOL: f64 = 1e-12;
pub const MAX_TOL: f64 = 1e-6;

/// How the interaction phase enters the integrated equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseFrame {
    /// The equations above with `e^{±iφ}` evaluated at every stage.
    Literal,
    /// Amplitudes `a = e^{−iφ/2}cₑ`, `b = e^{iφ/2}c_g`, which obey
    /// `i ȧ = (φ̇/2) a + g b`, `i ḃ = g a − (φ̇/2) b` with
    /// `φ̇ = Δ₀(p) − (q·g)t`.
    Rotating,
    /// The rotating-frame amplitudes in the interaction picture of their
    /// static part `H₀ = [[Δ₀(p)/2, g], [g, −Δ₀(p)/2]]`, whose propagator is
    /// applied in closed form. Only the chirp `−(q·g)t σ_z/2` is integrated,
    /// so step sizes are set by the gravity term rather than by `Ω`.
    #[default]
    Interaction,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    /// Mixed absolute/relative error allowed per unit of scaled time, in
    /// `[MIN_TOL, MAX_TOL]`.
    pub tol: f64,
    pub frame: PhaseFrame,
    /// Step budget per block.
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { tol: 1e-10, frame: PhaseFrame::Interaction, max_steps: 5_000_000 }
    }
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_TOL..=MAX_TOL).contains(&self.tol) {
            return Err(Error::InvalidParams(format!(
                "integrator tolerance {:e} outside [{MIN_TOL:e}, {MAX_TOL:e}]",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Amplitudes of `|e, n⟩` and `|g, n+1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelBlock {
    pub n: usize,
    pub c_e: C64,
    pub c_g: C64,
}

impl TwoLevelBlock {
    pub fn norm_sqr(&self) -> f64 {
        self.c_e.norm_sqr() + self.c_g.norm_sqr()
    }
}

type State = [C64; 2];

// Dormand–Prince 5(4) tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn comb(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Adaptive Dormand–Prince integration of `y' = f(τ, y)` from `τ = 0`,
/// reporting the state at each of the ascending `samples`.
///
/// `h0` is the first trial step; `time_unit` converts `τ` to seconds for
/// error reports.
fn dopri5<F>(f: F, y0: State, samples: &[f64], h0: f64, opts: &OdeOptions, time_unit: f64) -> Result<Vec<State>>
where
    F: Fn(f64, &State) -> State,
{
    let tol = opts.tol;
    let mut out = Vec::with_capacity(samples.len());
    let mut tau = 0.0;
    let mut y = y0;
    let mut k1 = f(tau, &y);
    let mut h = h0;
    let mut steps = 0usize;

    for &target in samples {
        if target < tau {
            return Err(Error::Domain(format!("sample times must be ascending and >= 0, got {target}")));
        }
        while tau < target {
            if steps >= opts.max_steps {
                return Err(Error::StepBudget { steps, t: tau / time_unit });
            }
            let remaining = target - tau;
            let clipped = h >= remaining;
            let step = if clipped { remaining } else { h };
            if step <= 16.0 * f64::EPSILON * tau.abs().max(1.0) && !clipped {
                return Err(Error::StepUnderflow { t: tau / time_unit, h: step / time_unit });
            }

            let k2 = f(tau + C2 * step, &comb(&y, step, &[(A21, &k1)]));
            let k3 = f(tau + C3 * step, &comb(&y, step, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(tau + C4 * step, &comb(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = f(tau + C5 * step, &comb(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
            let k6 = f(tau + step, &comb(&y, step, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
            let y_new = comb(&y, step, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let t_new = if clipped { target } else { tau + step };
            let k7 = f(t_new, &y_new);
            steps += 1;

            let mut err2 = 0.0;
            for i in 0..2 {
                let e = step * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = tol * step.min(1.0) * (1.0 + y[i].norm().max(y_new[i].norm()));
                err2 += e.norm_sqr() / (scale * scale);
            }
            let err = (0.5 * err2).sqrt();

            if err <= 1.0 {
                tau = t_new;
                y = y_new;
                k1 = k7;
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                // a step shortened to land on a sample says nothing about h
                h = if clipped { h.max(step * grow) } else { step * grow };
            } else {
                h = step * (0.9 * err.powf(-0.2)).max(0.2);
                if h <= 16.0 * f64::EPSILON * tau.abs().max(1.0) {
                    return Err(Error::StepUnderflow { t: tau / time_unit, h: h / time_unit });
                }
            }
        }
        out.push(y);
    }
    Ok(out)
}

/// Integrates block `n` at momentum `p` and returns the amplitudes at each
/// time in `times` (seconds, ascending), starting from `cₑ = 1, c_g = 0`.
pub fn evolve_block_samples(
    n: usize,
    p: f64,
    times: &[f64],
    params: &PhysicalParams,
    opts: &OdeOptions,
) -> Result<Vec<TwoLevelBlock>> {
    opts.validate()?;
    params.validate()?;
    if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::Domain(format!("sample time must be finite and >= 0, got {t}")));
    }
    let s = params.time_scale();
    let taus: Vec<f64> = times.iter().map(|t| t * s).collect();
    let g = params.lambda * (n as f64 + 1.0).sqrt() / s;
    let d0 = detuning0_of_p(p, params) / s;
    let kappa = params.qg / (s * s);
    let h0 = 0.1 / (1.0 + g + d0.abs());
    let mi = C64::new(0.0, -1.0);
    let y0 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];

    let half0 = 0.5 * d0;
    let omega = half0.hypot(g);
    // exp(−iH₀τ) = cos(Ωτ) − i sin(Ωτ)/Ω · H₀
    let static_propagator = |tau: f64| -> [C64; 3] {
        let (sn, cs) = (omega * tau).sin_cos();
        let sinc = if omega > 0.0 { sn / omega } else { tau };
        [C64::new(cs, -sinc * half0), C64::new(0.0, -sinc * g), C64::new(cs, sinc * half0)]
    };

    let raw = match opts.frame {
        PhaseFrame::Interaction => {
            let x = dopri5(
                |tau, x| {
                    let [u00, u01, u11] = static_propagator(tau);
                    let z0 = u00 * x[0] + u01 * x[1];
                    let z1 = -(u01 * x[0] + u11 * x[1]);
                    let k = C64::new(0.0, 0.5 * kappa * tau);
                    [k * (u00.conj() * z0 + u01.conj() * z1), k * (u01.conj() * z0 + u11.conj() * z1)]
                },
                y0,
                &taus,
                h0,
                opts,
                s,
            )?;
            x.into_iter()
                .zip(&taus)
                .map(|(x, &tau)| {
                    let [u00, u01, u11] = static_propagator(tau);
                    [u00 * x[0] + u01 * x[1], u01 * x[0] + u11 * x[1]]
                })
                .collect()
        }
        PhaseFrame::Rotating => dopri5(
            |tau, y| {
                let half = 0.5 * (d0 - kappa * tau);
                [mi * (half * y[0] + g * y[1]), mi * (g * y[0] - half * y[1])]
            },
            y0,
            &taus,
            h0,
            opts,
            s,
        )?,
        PhaseFrame::Literal => dopri5(
            |tau, y| {
                let e = C64::from_polar(1.0, d0 * tau - 0.5 * kappa * tau * tau);
                [mi * g * e * y[1], mi * g * e.conj() * y[0]]
            },
            y0,
            &taus,
            h0,
            opts,
            s,
        )?,
    };

    Ok(raw
        .into_iter()
        .zip(times)
        .map(|(y, &t)| match opts.frame {
            PhaseFrame::Literal => TwoLevelBlock { n, c_e: y[0], c_g: y[1] },
            PhaseFrame::Rotating | PhaseFrame::Interaction => {
                let rot = C64::from_polar(1.0, 0.5 * interaction_phase(p, t, params));
                TwoLevelBlock { n, c_e: rot * y[0], c_g: rot.conj() * y[1] }
            }
        })
        .collect())
}

pub fn evolve_block(
    n: usize,
    p: f64,
    t_final: f64,
    params: &PhysicalParams,
    opts: &OdeOptions,
) -> Result<TwoLevelBlock> {
    Ok(evolve_block_samples(n, p, &[t_final], params, opts)?[0])
}

/// Runs every block at every node and hands the per-node sample series to
/// `collect`, in node order. Nodes are processed in parallel.
pub(crate) fn for_each_node<T, F>(
    times: &[f64],
    params: &PhysicalParams,
    field: &CoherentField,
    grid: &MomentumGrid,
    opts: &OdeOptions,
    collect: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[Vec<TwoLevelBlock>]) -> T + Sync,
{
    grid.nodes()
        .par_iter()
        .map(|&p| {
            let blocks = (0..=field.nmax())
                .map(|n| evolve_block_samples(n, p, times, params, opts))
                .collect::<Result<Vec<_>>>()?;
            Ok(collect(&blocks))
        })
        .collect()
}

/// Branch amplitudes at `t`: `Cₙ = wₙ cₑ(n)`, `Dₙ₊₁ = wₙ c_g(n)`.
pub fn branch_states_ode(
    t: f64,
    params: &PhysicalParams,
    field: &CoherentField,
    grid: &MomentumGrid,
    opts: &OdeOptions,
) -> Result<BranchState> {
    let dim = field.nmax() + 2;
    let rows = for_each_node(&[t], params, field, grid, opts, |blocks| {
        let mut c = vec![C64::new(0.0, 0.0); dim];
        let mut d = vec![C64::new(0.0, 0.0); dim];
        for (n, series) in blocks.iter().enumerate() {
            let w = field.amplitude(n as isize);
            c[n] = w * series[0].c_e;
            d[n + 1] = w * series[0].c_g;
        }
        (c, d)
    })?;
    let mut c = Array2::<C64>::zeros((grid.len(), dim));
    let mut d = Array2::<C64>::zeros((grid.len(), dim));
    for (k, (cr, dr)) in rows.into_iter().enumerate() {
        c.row_mut(k).assign(&ndarray::Array1::from(cr));
        d.row_mut(k).assign(&ndarray::Array1::from(dr));
    }
    Ok(BranchState { t, c, d, grid: grid.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{branch_states_analytic, AnalyticOptions};
    use crate::{build_momentum_grid, coherent_amplitudes};

    fn resonant() -> PhysicalParams {
        let mut pp = PhysicalParams::reference(0.0);
        pp.delta0 = 0.0;
        pp
    }

    #[test]
    fn decoupled_atom_stays_excited() {
        let mut pp = PhysicalParams::reference(1.5e7);
        pp.lambda = 0.0;
        for frame in [PhaseFrame::Rotating, PhaseFrame::Literal, PhaseFrame::Interaction] {
            let opts = OdeOptions { frame, ..OdeOptions::default() };
            let times: Vec<f64> = (0..=5).map(|k| k as f64 * 5e-6).collect();
            for b in evolve_block_samples(3, 0.2, &times, &pp, &opts).unwrap() {
                assert!((b.c_e - 1.0).norm() < 1e-8, "{frame:?} {}", b.c_e);
                assert_eq!(b.c_g, C64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn resonant_rabi() {
        let pp = resonant();
        let opts = OdeOptions { frame: PhaseFrame::Rotating, ..OdeOptions::with_tol(1e-10) };
        for n in [0usize, 3, 24, 60] {
            let times: Vec<f64> = (1..=25).map(|k| k as f64 / pp.lambda).collect();
            let out = evolve_block_samples(n, 0.0, &times, &pp, &opts).unwrap();
            for (b, t) in out.iter().zip(&times) {
                let exact = (pp.lambda * (n as f64 + 1.0).sqrt() * t).cos().powi(2);
                assert!((b.c_e.norm_sqr() - exact).abs() < 1e-8, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn detuned_rabi() {
        let pp = PhysicalParams::reference(0.0);
        let opts = OdeOptions { frame: PhaseFrame::Rotating, ..OdeOptions::with_tol(1e-10) };
        for (n, p) in [(0usize, 0.0), (24, 0.0), (24, 1.3), (80, -0.7)] {
            let g2 = pp.lambda * pp.lambda * (n as f64 + 1.0);
            let delta = detuning0_of_p(p, &pp);
            let omega = (g2 + 0.25 * delta * delta).sqrt();
            let times: Vec<f64> = (0..=50).map(|k| 0.5 * k as f64 / pp.lambda).collect();
            let out = evolve_block_samples(n, p, &times, &pp, &opts).unwrap();
            for (b, t) in out.iter().zip(&times) {
                let exact = 1.0 - g2 / (omega * omega) * (omega * t).sin().powi(2);
                assert!((b.c_e.norm_sqr() - exact).abs() < 1e-8, "n={n} p={p} t={t}");
            }
        }
    }

    #[test]
    fn frames_agree() {
        let pp = PhysicalParams::reference(1.5e7);
        let t = 20.0 / pp.lambda;
        let run =
            |n, p, frame| evolve_block(n, p, t, &pp, &OdeOptions { tol: 1e-12, frame, ..Default::default() }).unwrap();
        for (n, p) in [(0usize, 0.0), (24, 0.7), (50, -1.9)] {
            let a = run(n, p, PhaseFrame::Literal);
            for frame in [PhaseFrame::Rotating, PhaseFrame::Interaction] {
                let b = run(n, p, frame);
                assert!((a.c_e.norm_sqr() - b.c_e.norm_sqr()).abs() < 1e-9, "{frame:?}");
                assert!((a.c_g.norm_sqr() - b.c_g.norm_sqr()).abs() < 1e-9, "{frame:?}");
                assert!((a.c_e - b.c_e).norm() < 1e-8, "{frame:?}");
            }
        }
    }

    #[test]
    fn strong_chirp_frames_agree() {
        // chirp comparable to the coupling, so the phase is far from linear
        let mut pp = PhysicalParams::reference(2.0e12);
        pp.delta0 = 5.0e6;
        let t = 8.0 / pp.lambda;
        let run =
            |frame| evolve_block(4, 0.0, t, &pp, &OdeOptions { tol: 1e-12, frame, ..Default::default() }).unwrap();
        let a = run(PhaseFrame::Literal);
        for frame in [PhaseFrame::Rotating, PhaseFrame::Interaction] {
            let b = run(frame);
            assert!((a.c_e - b.c_e).norm() < 1e-9, "{frame:?}");
            assert!((a.c_g - b.c_g).norm() < 1e-9, "{frame:?}");
        }
    }

    #[test]
    fn samples_match_single_shots() {
        let pp = PhysicalParams::reference(0.5e7);
        let opts = OdeOptions::default();
        let times = [0.0, 1e-6, 2.5e-6, 1.7e-5];
        let series = evolve_block_samples(10, 0.4, &times, &pp, &opts).unwrap();
        assert_eq!(series[0].c_e, C64::new(1.0, 0.0));
        for (b, &t) in series.iter().zip(&times).skip(1) {
            let single = evolve_block(10, 0.4, t, &pp, &opts).unwrap();
            assert!((b.c_e - single.c_e).norm() < 1e-8);
        }
    }

    #[test]
    fn tolerance_refinement_converges() {
        let pp = PhysicalParams::reference(1.5e7);
        let t = 20.0 / pp.lambda;
        let opts = |tol| OdeOptions { frame: PhaseFrame::Rotating, ..OdeOptions::with_tol(tol) };
        let reference = evolve_block(24, 0.3, t, &pp, &opts(1e-12)).unwrap();
        let dev = |tol: f64| (evolve_block(24, 0.3, t, &pp, &opts(tol)).unwrap().c_e - reference.c_e).norm();
        let devs: Vec<f64> = [1e-6, 1e-7, 1e-8, 1e-9, 1e-10].into_iter().map(dev).collect();
        for w in devs.windows(2) {
            assert!(w[1] <= 0.5 * w[0], "{devs:?}");
        }
    }

    #[test]
    fn tolerance_bounds() {
        let pp = PhysicalParams::reference(0.0);
        for tol in [1e-13, 1e-5, f64::NAN] {
            assert!(matches!(
                evolve_block(0, 0.0, 1e-6, &pp, &OdeOptions::with_tol(tol)),
                Err(Error::InvalidParams(_))
            ));
        }
        assert!(matches!(evolve_block(0, 0.0, -1e-6, &pp, &OdeOptions::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn budget_is_reported() {
        let pp = PhysicalParams::reference(0.0);
        let opts = OdeOptions { max_steps: 10, frame: PhaseFrame::Rotating, ..Default::default() };
        assert!(matches!(evolve_block(24, 0.0, 2.5e-5, &pp, &opts), Err(Error::StepBudget { steps: 10, .. })));
    }

    #[test]
    fn initial_state_matches_analytic() {
        let pp = PhysicalParams::reference(1.5e7);
        let field = coherent_amplitudes(pp.alpha, 100).unwrap();
        let grid = build_momentum_grid(1.0, 4).unwrap();
        let ode = branch_states_ode(0.0, &pp, &field, &grid, &OdeOptions::default()).unwrap();
        let ana = branch_states_analytic(0.0, &pp, &field, &grid, &AnalyticOptions::default()).unwrap();
        assert_eq!(ode, ana);
    }

    #[test]
    fn global_norm() {
        let pp = PhysicalParams::reference(1.5e7);
        let field = coherent_amplitudes(pp.alpha, 100).unwrap();
        let grid = build_momentum_grid(1.0, 3).unwrap();
        let opts = OdeOptions::default();
        let s = branch_states_ode(12.0 / pp.lambda, &pp, &field, &grid, &opts).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 10.0 * opts.tol);
        assert!(s.d.column(0).iter().all(|z| *z == C64::new(0.0, 0.0)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn block_norm_is_conserved(
                n in 0usize..120,
                p in -3.0f64..3.0,
                qg in 0.0f64..2e7,
                lt in 0.0f64..25.0,
            ) {
                let pp = PhysicalParams::reference(qg);
                let opts = OdeOptions::default();
                let b = evolve_block(n, p, lt / pp.lambda, &pp, &opts).unwrap();
                prop_assert!((b.norm_sqr() - 1.0).abs() < 10.0 * opts.tol);
            }
        }
    }
}
