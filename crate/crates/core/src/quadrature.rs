//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands.

use crate::{Error, Result, C64};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_64, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// One 15-point Kronrod panel: the estimate and `|K15 - G7|`.
fn panel<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> (C64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        kronrod += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let k = kronrod * half;
    let g = gauss * half;
    (k, (k - g).norm())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutcome {
    pub value: C64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// Integrates `f` over `[a, b]` starting from `initial_panels` equal panels
/// and bisecting any panel whose error exceeds its share of `abs_tol`.
pub fn integrate<F: Fn(f64) -> C64>(
    f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    abs_tol: f64,
    max_panels: usize,
) -> Result<QuadOutcome> {
    if a == b {
        return Ok(QuadOutcome { value: C64::new(0.0, 0.0), error_estimate: 0.0, panels: 0 });
    }
    let n0 = initial_panels.max(1);
    let width = b - a;
    let mut stack: Vec<(f64, f64)> = (0..n0)
        .rev()
        .map(|i| {
            let lo = a + width * i as f64 / n0 as f64;
            let hi = if i + 1 == n0 { b } else { a + width * (i + 1) as f64 / n0 as f64 };
            (lo, hi)
        })
        .collect();
    let mut value = C64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut panels = 0usize;
    while let Some((lo, hi)) = stack.pop() {
        panels += 1;
        let (v, e) = panel(&f, lo, hi);
        let share = abs_tol * ((hi - lo) / width).abs();
        let mid = 0.5 * (lo + hi);
        let splittable = mid > lo.min(hi) && mid < lo.max(hi);
        if e <= share || !splittable {
            value += v;
            err += e;
        } else if panels + stack.len() + 2 > max_panels {
            return Err(Error::QuadratureNonConvergence { panels, estimate: err + e, requested: abs_tol });
        } else {
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
    }
    Ok(QuadOutcome { value, error_estimate: err, panels })
}
