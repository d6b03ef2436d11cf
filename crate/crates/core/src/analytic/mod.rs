//! Closed-form branch states.
//!
//! `Cₙ(p) = wₙ √aₙ exp(½ i λE₊ √(n+1))`, `Dₙ(p) = wₙ₋₁ √bₙ exp(½ i λE₊ √n)` with
//! `bₙ = i(n+1) λ³ E₊E₋²` and `aₙ = 1 − bₙ`. The printed coefficients carry
//! units of time³; evaluating them with time measured in units of `1/λ`
//! (the default [`CoefficientConvention::Scaled`]) is what the powers of `λ`
//! above amount to.

mod phase;

pub use phase::{
    audit_branches, audit_lattice, closed_form_variant, elementary, phase_integral_closed, phase_integral_elementary,
    phase_integral_quadrature, phase_integrals, AuditPoint, AuditReport, BranchFactor, BranchVariant, PhaseIntegrals,
    PhaseMethod, AUDIT_MATCH_LIMIT,
};

use ndarray::Array2;

use crate::{BranchState, CoherentField, MomentumGrid, PhysicalParams, Result, C64};

/// `Δ₀(p) = Δ₀ − q·p/(2M)` for scaled momentum `p` (one unit shifts the
/// detuning by `ω_rec`).
pub fn detuning0_of_p(p: f64, params: &PhysicalParams) -> f64 {
    params.delta0 - params.omega_rec * p
}

/// `Δ₀(p)` for a physical momentum projection in kg·m/s.
pub fn detuning0_of_physical_momentum(p_phys: f64, params: &PhysicalParams) -> f64 {
    params.delta0 - params.q * p_phys / (2.0 * params.mass)
}

/// Doppler detuning including the gravitational chirp, `Δ₀(p) − (q·g) t/2`.
pub fn detuning1(p: f64, t: f64, params: &PhysicalParams) -> f64 {
    detuning0_of_p(p, params) - 0.5 * params.qg * t
}

/// Interaction-picture phase `t·Δ₁(p, t)`.
pub fn interaction_phase(p: f64, t: f64, params: &PhysicalParams) -> f64 {
    detuning0_of_p(p, params) * t - 0.5 * params.qg * t * t
}

/// Unit system in which the printed coefficient formulas are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientConvention {
    /// Time in units of `1/λ`: `bₙ = i(n+1)(λE₊)(λE₋)²` and exponent
    /// `½ i λE₊ √(n+1)`. Dimensionless.
    #[default]
    Scaled,
    /// The printed expressions with `E±` in seconds and no factors of `λ`.
    LiteralSi,
}

impl CoefficientConvention {
    fn time_scale(self, params: &PhysicalParams) -> f64 {
        match self {
            CoefficientConvention::Scaled => params.lambda,
            CoefficientConvention::LiteralSi => 1.0,
        }
    }
}

/// `aₙ`, `bₙ`, `η = −iE₊E₋²` and `ξ = 1 + 1/η` (absent while `η = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchCoeffs {
    pub a: C64,
    pub b: C64,
    pub eta: C64,
    pub xi: Option<C64>,
}

impl BranchCoeffs {
    pub fn from_eta(n: usize, eta: C64) -> Self {
        let b = -(n as f64 + 1.0) * eta;
        let a = C64::new(1.0, 0.0) - b;
        let xi = (eta != C64::new(0.0, 0.0)).then(|| 1.0 + eta.inv());
        Self { a, b, eta, xi }
    }
}

pub fn branch_coeffs(
    n: usize,
    e: &PhaseIntegrals,
    params: &PhysicalParams,
    convention: CoefficientConvention,
) -> BranchCoeffs {
    let s = e.scaled(convention.time_scale(params));
    let eta = -C64::i() * s.e_plus * s.e_minus * s.e_minus;
    BranchCoeffs::from_eta(n, eta)
}

/// `√a′ₙ` and `√b′ₙ` of the large-`|α|` expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxCoeffs {
    pub sqrt_a: C64,
    pub sqrt_b: C64,
}

/// The brackets `1 + (n + ξ − |α|²)/(2|α|²)` and `1 + (n + 1 − |α|²)/(2|α|²)`.
pub fn approx_brackets(n: f64, xi: C64, alpha_sq: f64) -> (C64, f64) {
    let a = 1.0 + (n + xi - alpha_sq) / (2.0 * alpha_sq);
    let b = 1.0 + (n + 1.0 - alpha_sq) / (2.0 * alpha_sq);
    (a, b)
}

/// Large-`|α|` approximation to `√aₙ`, `√bₙ`. `None` while `η = 0`.
pub fn approx_coeffs(n: usize, coeffs: &BranchCoeffs, alpha: C64) -> Option<ApproxCoeffs> {
    let alpha_sq = alpha.norm_sqr();
    if alpha_sq < 10.0 {
        log::warn!("large-|alpha| expansion used with |alpha|^2 = {alpha_sq}");
    }
    let xi = coeffs.xi?;
    let (ba, bb) = approx_brackets(n as f64, xi, alpha_sq);
    Some(ApproxCoeffs { sqrt_a: (coeffs.eta * alpha_sq).sqrt() * ba, sqrt_b: (-coeffs.eta * alpha_sq).sqrt() * bb })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticOptions {
    pub convention: CoefficientConvention,
    pub method: PhaseMethod,
    pub quad_tol: f64,
}

impl Default for AnalyticOptions {
    fn default() -> Self {
        Self { convention: CoefficientConvention::Scaled, method: PhaseMethod::Auto, quad_tol: 1e-12 }
    }
}

pub fn branch_states_analytic(
    t: f64,
    params: &PhysicalParams,
    field: &CoherentField,
    grid: &MomentumGrid,
    opts: &AnalyticOptions,
) -> Result<BranchState> {
    let dim = field.nmax() + 2;
    let mut c = Array2::<C64>::zeros((grid.len(), dim));
    let mut d = Array2::<C64>::zeros((grid.len(), dim));
    let scale = opts.convention.time_scale(params);
    for (k, &p) in grid.nodes().iter().enumerate() {
        let e = phase_integrals(p, t, params, opts.method, opts.quad_tol)?;
        let half_phase = C64::i() * 0.5 * scale * e.e_plus;
        for n in 0..dim {
            let coeffs = branch_coeffs(n, &e, params, opts.convention);
            let nf = n as f64;
            c[[k, n]] = field.amplitude(n as isize) * coeffs.a.sqrt() * (half_phase * (nf + 1.0).sqrt()).exp();
            d[[k, n]] = field.amplitude(n as isize - 1) * coeffs.b.sqrt() * (half_phase * nf.sqrt()).exp();
        }
    }
    Ok(BranchState { t, c, d, grid: grid.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_momentum_grid, coherent_amplitudes};

    #[test]
    fn detunings() {
        let pp = PhysicalParams::reference(0.0);
        assert_eq!(detuning0_of_p(0.0, &pp), 8.5e7);
        assert!((detuning0_of_p(1.0, &pp) - 8.45e7).abs() < 1e-6);
        let root = 2.0 * pp.mass * pp.delta0 / pp.q;
        assert!(detuning0_of_physical_momentum(root, &pp).abs() < 1e-6);
        // scaled and physical momenta agree through the momentum unit
        let p = 0.37;
        let a = detuning0_of_p(p, &pp);
        let b = detuning0_of_physical_momentum(p * pp.momentum_unit(), &pp);
        assert!((a - b).abs() < 1e-7);
    }

    #[test]
    fn chirp() {
        let pp = PhysicalParams::reference(0.0);
        for t in [0.0, 1e-6, 1.0] {
            assert_eq!(detuning1(0.3, t, &pp), detuning0_of_p(0.3, &pp));
        }
        let pp = PhysicalParams::reference(1e7);
        assert!((detuning1(0.0, 1.0, &pp) - 8.0e7).abs() < 1e-6);
        let t = 4.0 * detuning0_of_p(0.5, &pp) / pp.qg;
        assert!((detuning1(0.5, t, &pp) + detuning0_of_p(0.5, &pp)).abs() < 1e-6);
    }

    #[test]
    fn coefficients_at_origin() {
        let pp = PhysicalParams::reference(1.5e7);
        let c = branch_coeffs(7, &PhaseIntegrals::zero(), &pp, CoefficientConvention::Scaled);
        assert_eq!(c.a, C64::new(1.0, 0.0));
        assert_eq!(c.b, C64::new(0.0, 0.0));
        assert!(c.xi.is_none());
    }

    #[test]
    fn resonant_short_time_limit() {
        // Δ₀(p) = 0, qg = 0: E± = t, so bₙ = i(n+1)(λt)³
        let mut pp = PhysicalParams::reference(0.0);
        pp.delta0 = 0.0;
        let t = 0.1 / pp.lambda;
        let e = phase_integral_elementary(0.0, t, &pp);
        let c = branch_coeffs(3, &e, &pp, CoefficientConvention::Scaled);
        assert!((c.b - C64::new(0.0, 4.0 * 1e-3)).norm() < 1e-15);
        let lit = branch_coeffs(3, &e, &pp, CoefficientConvention::LiteralSi);
        assert!((lit.b - C64::new(0.0, 4.0 * t.powi(3))).norm() < 1e-30);
    }

    #[test]
    fn approx_midpoints() {
        // ξ = 1 + 1/η = 5 for η = 1/4
        let coeffs = BranchCoeffs::from_eta(20, C64::new(0.25, 0.0));
        assert_eq!(coeffs.xi, Some(C64::new(5.0, 0.0)));
        let (ba, _) = approx_brackets(20.0, coeffs.xi.unwrap(), 25.0);
        assert_eq!(ba, C64::new(1.0, 0.0));
        let (_, bb) = approx_brackets(24.0, C64::new(0.0, 0.0), 25.0);
        assert_eq!(bb, 1.0);
        assert!(approx_coeffs(3, &BranchCoeffs::from_eta(3, C64::new(0.0, 0.0)), C64::new(5.0, 0.0)).is_none());
    }

    #[test]
    fn approx_tracks_exact_near_mean() {
        let pp = PhysicalParams::reference(0.5e7);
        let t = 3.0 / pp.lambda;
        let e = phase_integral_closed(0.0, t, &pp).unwrap();
        let mut near = 0.0f64;
        let mut far = 0.0f64;
        for n in [5usize, 25, 60] {
            let exact = branch_coeffs(n, &e, &pp, CoefficientConvention::Scaled);
            let approx = approx_coeffs(n, &exact, pp.alpha).unwrap();
            // the expansion is of √(η(n+ξ)) = √aₙ about n ≈ |α|²
            let rel = (approx.sqrt_a - exact.a.sqrt()).norm() / exact.a.sqrt().norm();
            if n == 25 {
                near = rel;
            } else {
                far = far.max(rel);
            }
        }
        assert!(near < far, "near={near} far={far}");
    }

    #[test]
    fn initial_product_state() {
        let pp = PhysicalParams::reference(1.5e7);
        let field = coherent_amplitudes(pp.alpha, 100).unwrap();
        let grid = build_momentum_grid(1.0, 8).unwrap();
        let s = branch_states_analytic(0.0, &pp, &field, &grid, &AnalyticOptions::default()).unwrap();
        for k in 0..grid.len() {
            for n in 0..=100 {
                assert_eq!(s.c[[k, n]], field.amplitude(n as isize));
            }
            assert_eq!(s.c[[k, 101]], C64::new(0.0, 0.0));
            assert!(s.d.row(k).iter().all(|z| *z == C64::new(0.0, 0.0)));
        }
    }

    #[test]
    fn ground_branch_vacuum_component_vanishes() {
        let pp = PhysicalParams::reference(0.5e7);
        let field = coherent_amplitudes(pp.alpha, 100).unwrap();
        let grid = build_momentum_grid(1.0, 4).unwrap();
        for lt in [1.0, 11.0, 25.0] {
            let s = branch_states_analytic(lt / pp.lambda, &pp, &field, &grid, &AnalyticOptions::default()).unwrap();
            assert!(s.d.column(0).iter().all(|z| *z == C64::new(0.0, 0.0)));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn coefficients_sum_to_one(
                n in 0usize..200,
                p in -3.0f64..3.0,
                qg in 0.0f64..2e7,
                lt in 0.0f64..30.0,
            ) {
                let pp = PhysicalParams::reference(qg);
                let t = lt / pp.lambda;
                let e = phase_integrals(p, t, &pp, PhaseMethod::Auto, 1e-12).unwrap();
                let c = branch_coeffs(n, &e, &pp, CoefficientConvention::Scaled);
                prop_assert!((c.a + c.b - 1.0).norm() <= 4.0 * f64::EPSILON * (1.0 + c.b.norm()));
                prop_assert!(c.a.re.is_finite() && c.a.im.is_finite());
                prop_assert!(c.b.re.is_finite() && c.b.im.is_finite());
            }
        }
    }
}
