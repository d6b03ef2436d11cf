//! Chirped phase integrals
//!
//! `E₊(p, t) = ∫₀ᵗ exp(i[Δ₀(p) t′ − (q·g) t′²/2]) dt′` and `E₋ = conj(E₊)`.
//!
//! Three evaluations are provided: the elementary antiderivative (only for
//! `q·g = 0`), adaptive quadrature (the defining object) and the
//! error-function closed form. The closed form is parameterised by
//! [`BranchVariant`] so that every sign/branch reading of the printed
//! expression can be audited against the quadrature.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::detuning0_of_p;
use crate::quadrature::integrate;
use crate::special::faddeeva;
use crate::{Error, PhysicalParams, Result, C64};

/// `E₊` and `E₋`, in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseIntegrals {
    pub e_plus: C64,
    pub e_minus: C64,
}

impl PhaseIntegrals {
    pub fn from_plus(e_plus: C64) -> Self {
        Self { e_plus, e_minus: e_plus.conj() }
    }

    pub fn zero() -> Self {
        Self::from_plus(C64::new(0.0, 0.0))
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self { e_plus: self.e_plus * factor, e_minus: self.e_minus * factor }
    }
}

/// `(e^{iΔt} − 1)/(iΔ)`, written as `t·sinc(Δt) + i·2 sin²(Δt/2)/Δ` so that it
/// stays accurate as `Δt → 0`.
pub fn elementary(delta: f64, t: f64) -> C64 {
    let x = delta * t;
    if x == 0.0 {
        return C64::new(t, 0.0);
    }
    let half = 0.5 * x;
    C64::new(x.sin() / delta, 2.0 * half.sin() * half.sin() / delta)
}

/// Quadrature of the defining integral with absolute tolerance `rel_tol · t`.
pub fn phase_integral_quadrature(p: f64, t: f64, params: &PhysicalParams, rel_tol: f64) -> Result<PhaseIntegrals> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::Domain(format!("phase integral needs t >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(PhaseIntegrals::zero());
    }
    let delta = detuning0_of_p(p, params);
    let k = params.qg;
    let max_rate = delta.abs().max((delta - k * t).abs());
    let initial = (max_rate * t / PI).ceil() as usize + 1;
    let out = integrate(
        |s| C64::from_polar(1.0, delta * s - 0.5 * k * s * s),
        0.0,
        t,
        initial,
        rel_tol * t,
        initial * 64 + 1_000_000,
    )?;
    Ok(PhaseIntegrals::from_plus(out.value))
}

/// Eighth-root branch constants appearing inside the error functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchFactor {
    /// `(−1)^{3/4} = e^{3iπ/4}` (principal value).
    Root,
    /// `i(−1)^{3/4} = e^{5iπ/4}`.
    IRoot,
}

impl BranchFactor {
    pub fn value(self) -> C64 {
        match self {
            BranchFactor::Root => C64::new(-FRAC_1_SQRT_2, FRAC_1_SQRT_2),
            BranchFactor::IRoot => C64::new(-FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
        }
    }

    /// `τ` with `c² = iτ`.
    fn tau(self) -> f64 {
        match self {
            BranchFactor::Root => -1.0,
            BranchFactor::IRoot => 1.0,
        }
    }

    fn label(self) -> &'static str {
        match self {
            BranchFactor::Root => "(-1)^(3/4)",
            BranchFactor::IRoot => "i(-1)^(3/4)",
        }
    }
}

/// One reading of
/// `(1−i)/2 · √π/√(qg) · exp(±iΔ²/(2qg)) · (−Erf[c₁ Δ/√(2qg)] + Erf[c₂ (Δ/√(2qg) − √(qg/2) t)])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchVariant {
    pub positive_exponent: bool,
    pub inner: BranchFactor,
    pub outer: BranchFactor,
}

impl BranchVariant {
    /// The expression exactly as typeset.
    pub const PRINTED: BranchVariant =
        BranchVariant { positive_exponent: false, inner: BranchFactor::IRoot, outer: BranchFactor::Root };

    /// The reading selected by [`audit_branches`]; pinned here and checked by
    /// the test suite.
    pub const SELECTED: BranchVariant =
        BranchVariant { positive_exponent: true, inner: BranchFactor::IRoot, outer: BranchFactor::IRoot };

    pub fn all() -> [BranchVariant; 8] {
        let mut out = [Self::SELECTED; 8];
        let factors = [BranchFactor::Root, BranchFactor::IRoot];
        let mut i = 0;
        for positive_exponent in [false, true] {
            for inner in factors {
                for outer in factors {
                    out[i] = BranchVariant { positive_exponent, inner, outer };
                    i += 1;
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        format!(
            "exp({}i D^2/2qg), Erf[{} a], Erf[{} b]",
            if self.positive_exponent { "+" } else { "-" },
            self.inner.label(),
            self.outer.label()
        )
    }
}

impl std::fmt::Display for BranchVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

/// Evaluates one closed-form variant for detuning `delta` and chirp `qg`.
///
/// Each `Erf[c·x]` is split as `ρ(1 − e^{−iτx²} w(iρcx))` with `ρ = sgn Re(cx)`
/// so that `w` is only ever evaluated in the upper half plane, and the large
/// Gaussian phases `±x²` are combined with the prefactor exponent before any
/// exponential is taken. For the selected variant the surviving phase is
/// `Δt − qg t²/2`, which keeps full precision even when `Δ²/(2qg) ~ 10⁸`.
pub fn closed_form_variant(variant: BranchVariant, delta: f64, qg: f64, t: f64) -> Result<C64> {
    if !(qg > 0.0) {
        return Err(Error::Domain(format!("closed-form phase integral needs qg > 0, got {qg}")));
    }
    let s = if variant.positive_exponent { 1.0 } else { -1.0 };
    let a = delta / (2.0 * qg).sqrt();
    let b = a - (0.5 * qg).sqrt() * t;
    let a2 = delta * delta / (2.0 * qg);
    let prefactor = C64::new(0.5, -0.5) * (PI / qg).sqrt();

    let split = |c: BranchFactor, x: f64| -> Result<(f64, C64)> {
        let zeta = c.value() * x;
        let rho = if zeta.re >= 0.0 { 1.0 } else { -1.0 };
        let w = faddeeva(C64::i() * rho * zeta)?;
        Ok((rho, w))
    };
    let (rho1, w1) = split(variant.inner, a)?;
    let (rho2, w2) = split(variant.outer, b)?;

    let theta1 = (s - variant.inner.tau()) * a2;
    let theta2 = if s == variant.outer.tau() { s * (delta * t - 0.5 * qg * t * t) } else { s * (a2 + b * b) };
    let mut bracket = rho1 * C64::from_polar(1.0, theta1) * w1 - rho2 * C64::from_polar(1.0, theta2) * w2;
    if rho1 != rho2 {
        bracket += (rho2 - rho1) * C64::from_polar(1.0, s * a2);
    }
    Ok(prefactor * bracket)
}

/// Closed-form `E±` with the pinned branch reading.
pub fn phase_integral_closed(p: f64, t: f64, params: &PhysicalParams) -> Result<PhaseIntegrals> {
    if t < 0.0 {
        return Err(Error::Domain(format!("phase integral needs t >= 0, got {t}")));
    }
    let delta = detuning0_of_p(p, params);
    let e = closed_form_variant(BranchVariant::SELECTED, delta, params.qg, t)?;
    Ok(PhaseIntegrals::from_plus(e))
}

/// `E±` at `q·g = 0` from the elementary antiderivative.
pub fn phase_integral_elementary(p: f64, t: f64, params: &PhysicalParams) -> PhaseIntegrals {
    PhaseIntegrals::from_plus(elementary(detuning0_of_p(p, params), t))
}

/// How `E±` is evaluated by the analytic backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseMethod {
    /// Elementary antiderivative at `q·g = 0`, closed form otherwise.
    #[default]
    Auto,
    /// Adaptive quadrature everywhere.
    Quadrature,
}

pub fn phase_integrals(
    p: f64,
    t: f64,
    params: &PhysicalParams,
    method: PhaseMethod,
    quad_tol: f64,
) -> Result<PhaseIntegrals> {
    match method {
        PhaseMethod::Quadrature => phase_integral_quadrature(p, t, params, quad_tol),
        PhaseMethod::Auto if params.qg == 0.0 => Ok(phase_integral_elementary(p, t, params)),
        PhaseMethod::Auto => phase_integral_closed(p, t, params),
    }
}

/// A point of the audit lattice: scaled momentum, `q·g` (rad/s²), time (s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditPoint {
    pub p: f64,
    pub qg: f64,
    pub t: f64,
}

/// `n × n × n` lattice with `p ∈ [−p_max, p_max]`, `q·g ∈ [qg_max/n, qg_max]`
/// and `λt ∈ [λt_max/n, λt_max]`. `q·g = 0` is excluded (the closed form is
/// singular there).
pub fn audit_lattice(params: &PhysicalParams, n: usize, p_max: f64, qg_max: f64, lambda_t_max: f64) -> Vec<AuditPoint> {
    let mut out = Vec::with_capacity(n * n * n);
    let step = |i: usize| (i + 1) as f64 / n as f64;
    for i in 0..n {
        let p = if n == 1 { 0.0 } else { -p_max + 2.0 * p_max * i as f64 / (n - 1) as f64 };
        for j in 0..n {
            let qg = qg_max * step(j);
            for l in 0..n {
                let t = lambda_t_max * step(l) / params.time_scale();
                out.push(AuditPoint { p, qg, t });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    /// Worst relative residual against quadrature, per variant.
    pub residuals: Vec<(BranchVariant, f64)>,
    pub winner: BranchVariant,
    pub winner_residual: f64,
    /// Number of variants within `1e-8` of the quadrature.
    pub matches: usize,
    pub points: usize,
}

/// Residual above which no variant is considered to reproduce the integral.
pub const AUDIT_MATCH_LIMIT: f64 = 1e-6;

/// Compares every [`BranchVariant`] against quadrature on `lattice`, reporting
/// the worst relative residual of each.
pub fn audit_branches(params: &PhysicalParams, lattice: &[AuditPoint], quad_tol: f64) -> Result<AuditReport> {
    let mut reference = Vec::with_capacity(lattice.len());
    for pt in lattice {
        let pp = params.with_qg(pt.qg);
        reference.push(phase_integral_quadrature(pt.p, pt.t, &pp, quad_tol)?.e_plus);
    }
    let mut residuals = Vec::new();
    for variant in BranchVariant::all() {
        let mut worst: f64 = 0.0;
        for (pt, exact) in lattice.iter().zip(&reference) {
            let delta = detuning0_of_p(pt.p, &params.with_qg(pt.qg));
            let r = match closed_form_variant(variant, delta, pt.qg, pt.t) {
                Ok(v) => (v - exact).norm() / exact.norm(),
                Err(_) => f64::INFINITY,
            };
            worst = worst.max(if r.is_nan() { f64::INFINITY } else { r });
        }
        residuals.push((variant, worst));
    }
    let (winner, winner_residual) =
        residuals.iter().copied().min_by(|a, b| a.1.total_cmp(&b.1)).expect("eight variants");
    let matches = residuals.iter().filter(|(_, r)| *r <= 1e-8).count();
    Ok(AuditReport { residuals, winner, winner_residual, matches, points: lattice.len() })
}

impl AuditReport {
    /// Fails when even the best variant misses the quadrature by more than
    /// [`AUDIT_MATCH_LIMIT`].
    pub fn require_match(self) -> Result<Self> {
        if self.winner_residual > AUDIT_MATCH_LIMIT {
            return Err(Error::Domain(format!(
                "no closed-form branch variant matches the quadrature (best residual {:e})",
                self.winner_residual
            )));
        }
        Ok(self)
    }
}
