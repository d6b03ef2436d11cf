//! Coherent initial field and the Fock-space truncation policy.

use crate::{Error, Result, C64};

/// Largest norm deficit tolerated in the truncated coherent state.
pub const TRUNCATION_EPS: f64 = 1e-12;

/// Amplitudes `wₙ(0) = e^{-|α|²/2} αⁿ/√n!` for `0 ≤ n ≤ nmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentField {
    alpha: C64,
    w: Vec<C64>,
}

impl CoherentField {
    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn nmax(&self) -> usize {
        self.w.len() - 1
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.w
    }

    /// `wₙ`, with `w₋₁ = 0` and zero above the truncation.
    pub fn amplitude(&self, n: isize) -> C64 {
        if n < 0 {
            return C64::new(0.0, 0.0);
        }
        self.w.get(n as usize).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w.iter().map(|w| w.norm_sqr()).sum()
    }
}

/// Builds the truncated coherent state. The recursion runs on `ln|wₙ|` so
/// neither `n!` nor `|α|ⁿ` is ever formed.
pub fn coherent_amplitudes(alpha: C64, nmax: usize) -> Result<CoherentField> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::InvalidParams(format!("alpha must be finite, got {alpha}")));
    }
    let r = alpha.norm();
    let theta = alpha.arg();
    let ln_r = r.ln();
    let mut ln_mag = -0.5 * r * r;
    let mut w = Vec::with_capacity(nmax + 1);
    w.push(C64::new(ln_mag.exp(), 0.0));
    for n in 1..=nmax {
        ln_mag += ln_r - 0.5 * (n as f64).ln();
        w.push(C64::from_polar(ln_mag.exp(), n as f64 * theta));
    }
    let field = CoherentField { alpha, w };
    let kept = field.norm_sqr();
    if kept < 1.0 - TRUNCATION_EPS {
        return Err(Error::TruncationInsufficient { nmax, kept });
    }
    Ok(field)
}

/// Poisson mass above `n` for mean `mean`.
pub fn poisson_tail(mean: f64, n: usize) -> f64 {
    if mean == 0.0 {
        return 0.0;
    }
    let ln_mean = mean.ln();
    let mut ln_p = -mean;
    for k in 1..=n + 1 {
        ln_p += ln_mean - (k as f64).ln();
    }
    let mut tail = 0.0;
    let mut k = n + 1;
    loop {
        let p = ln_p.exp();
        tail += p;
        if (k as f64) > mean && p < tail * 1e-17 {
            break;
        }
        k += 1;
        ln_p += ln_mean - (k as f64).ln();
        if k > n + 100_000 {
            break;
        }
    }
    tail
}

/// Smallest `nmax` whose Poisson tail is below [`TRUNCATION_EPS`], floored at
/// `4|α|²`. The excitation number is conserved, so nothing leaks above
/// `nmax + 1` during the evolution.
pub fn truncation_for(alpha: C64) -> usize {
    let mean = alpha.norm_sqr();
    let floor = (4.0 * mean).ceil() as usize;
    let mut n = mean.floor() as usize;
    while poisson_tail(mean, n) >= TRUNCATION_EPS {
        n += 1;
    }
    n.max(floor)
}
