//! Quantities measured on a [`BranchState`].
//!
//! Momentum enters only through the quadrature weights: every observable is
//! a weighted sum over nodes of a quantity that is quadratic in the per-node
//! amplitudes.

use ndarray::{Array2, ArrayView1};
use rayon::prelude::*;

use crate::{BranchState, CoherentField, Error, Result, C64};

/// Largest `|⟨C|C⟩ + ⟨D|D⟩ − 1|` that [`entropy`] silently renormalizes.
pub const NORM_SLACK: f64 = 1e-3;
/// Slack on the eigenvalue discriminant before overlaps are rejected.
pub const DISCRIMINANT_SLACK: f64 = 1e-9;

/// `⟨C|C⟩`, `⟨D|D⟩` and `⟨C|D⟩ = Σₖ ωₖ Σₙ Cₙ*Dₙ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapTriple {
    pub cc: f64,
    pub dd: f64,
    pub cd: C64,
}

impl OverlapTriple {
    pub const EXCITED: OverlapTriple = OverlapTriple { cc: 1.0, dd: 0.0, cd: C64::new(0.0, 0.0) };

    pub fn norm(&self) -> f64 {
        self.cc + self.dd
    }

    pub fn scaled(self, w: f64) -> Self {
        Self { cc: w * self.cc, dd: w * self.dd, cd: w * self.cd }
    }
}

impl std::ops::Add for OverlapTriple {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { cc: self.cc + o.cc, dd: self.dd + o.dd, cd: self.cd + o.cd }
    }
}

impl Default for OverlapTriple {
    fn default() -> Self {
        Self { cc: 0.0, dd: 0.0, cd: C64::new(0.0, 0.0) }
    }
}

/// Overlaps of a single momentum node.
pub fn node_overlap(c: ArrayView1<C64>, d: ArrayView1<C64>) -> OverlapTriple {
    let mut o = OverlapTriple::default();
    for (ci, di) in c.iter().zip(d.iter()) {
        o.cc += ci.norm_sqr();
        o.dd += di.norm_sqr();
        o.cd += ci.conj() * di;
    }
    o
}

pub fn overlaps(state: &BranchState) -> OverlapTriple {
    state
        .grid
        .weights()
        .iter()
        .zip(state.c.rows())
        .zip(state.d.rows())
        .fold(OverlapTriple::default(), |acc, ((w, c), d)| acc + node_overlap(c, d).scaled(*w))
}

/// Atomic inversion `⟨σ_z⟩ = ⟨C|C⟩ − ⟨D|D⟩`.
pub fn inversion(o: &OverlapTriple) -> f64 {
    o.cc - o.dd
}

/// Reduced atomic density matrix in the `(|e⟩, |g⟩)` basis.
pub fn atomic_density_matrix(o: &OverlapTriple) -> [[C64; 2]; 2] {
    [[C64::new(o.cc, 0.0), o.cd.conj()], [o.cd, C64::new(o.dd, 0.0)]]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyPair {
    pub pi_plus: f64,
    pub pi_minus: f64,
    /// von Neumann entropy in nats.
    pub s_f: f64,
}

/// `−Σ π ln π` with `0 ln 0 = 0`.
pub fn shannon(p: &[f64]) -> f64 {
    0.0 + p.iter().filter(|&&x| x > 0.0).map(|x| -x * x.ln()).sum::<f64>()
}

/// Eigenvalues `π± = ½ ± ½√(1 − 4(⟨C|C⟩⟨D|D⟩ − |⟨C|D⟩|²))` and the entropy.
pub fn entropy(o: &OverlapTriple) -> Result<EntropyPair> {
    let norm = o.norm();
    if !((norm - 1.0).abs() <= NORM_SLACK) {
        return Err(Error::NormDefect { norm });
    }
    let o = o.scaled(1.0 / norm);
    let disc = 1.0 - 4.0 * (o.cc * o.dd - o.cd.norm_sqr());
    if !(-DISCRIMINANT_SLACK..=1.0 + DISCRIMINANT_SLACK).contains(&disc) {
        return Err(Error::InconsistentOverlaps { discriminant: disc });
    }
    let r = 0.5 * disc.clamp(0.0, 1.0).sqrt();
    let pi_plus = 0.5 + r;
    let pi_minus = 0.5 - r;
    Ok(EntropyPair { pi_plus, pi_minus, s_f: shannon(&[pi_plus, pi_minus]) })
}

/// Square phase-space window `[−extent, extent]²` sampled with `n × n` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QGridSpec {
    pub extent: f64,
    pub n: usize,
}

impl Default for QGridSpec {
    fn default() -> Self {
        Self { extent: 9.0, n: 201 }
    }
}

impl QGridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.extent > 0.0 && self.extent.is_finite()) || self.n < 3 {
            return Err(Error::InvalidParams(format!(
                "Q grid needs extent > 0 and at least 3 points per axis, got extent {} n {}",
                self.extent, self.n
            )));
        }
        Ok(())
    }

    pub fn axis(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n).map(|i| -self.extent + i as f64 * h).collect()
    }

    pub fn step(&self) -> f64 {
        2.0 * self.extent / (self.n - 1) as f64
    }
}

/// Husimi function sampled on a rectangular grid; `values[[i, j]]` is
/// `Q(x[i] + i·y[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct QGrid {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub values: Array2<f64>,
}

impl QGrid {
    pub fn dx(&self) -> f64 {
        self.x[1] - self.x[0]
    }

    pub fn dy(&self) -> f64 {
        self.y[1] - self.y[0]
    }

    /// Riemann sum `Σ Q ΔX ΔY`.
    pub fn riemann_sum(&self) -> f64 {
        self.values.sum() * self.dx() * self.dy()
    }

    pub fn boundary_max(&self) -> f64 {
        let (nx, ny) = self.values.dim();
        let mut m = 0.0f64;
        for i in 0..nx {
            m = m.max(self.values[[i, 0]]).max(self.values[[i, ny - 1]]);
        }
        for j in 0..ny {
            m = m.max(self.values[[0, j]]).max(self.values[[nx - 1, j]]);
        }
        m
    }
}

/// Boundary value of `Q` above which the grid is reported as truncating the
/// distribution.
pub const Q_LEAKAGE: f64 = 1e-6;

/// `⟨β|n⟩ = e^{−|β|²/2} (β*)ⁿ/√n!` for `0 ≤ n < dim`, built in the log domain.
pub fn coherent_bra(beta: C64, dim: usize) -> Vec<C64> {
    let r2 = beta.norm_sqr();
    let ln_r = 0.5 * r2.ln();
    let theta = -beta.arg();
    let mut ln_mag = -0.5 * r2;
    let mut out = Vec::with_capacity(dim);
    for n in 0..dim {
        if n > 0 {
            ln_mag += ln_r - 0.5 * (n as f64).ln();
        }
        out.push(if r2 == 0.0 {
            C64::new(if n == 0 { 1.0 } else { 0.0 }, 0.0)
        } else {
            C64::from_polar(ln_mag.exp(), n as f64 * theta)
        });
    }
    out
}

/// `Q(β) = (1/π) Σₖ ωₖ (|⟨β|Cₖ⟩|² + |⟨β|Dₖ⟩|²) / N` with `N` the state norm,
/// so that `ρ` has unit trace.
///
/// Logs a warning when the grid boundary carries more than [`Q_LEAKAGE`] or
/// when `N` is off by more than [`NORM_SLACK`].
pub fn q_function(state: &BranchState, spec: &QGridSpec) -> Result<QGrid> {
    spec.validate()?;
    let axis = spec.axis();
    let dim = state.fock_dim();
    let weights = state.grid.weights();
    let norm = state.norm_sqr();
    if !(norm > 0.0) {
        return Err(Error::NormDefect { norm });
    }
    if (norm - 1.0).abs() > NORM_SLACK {
        log::warn!("Q function of a state with norm {norm}; using the unit-trace density operator");
    }
    let scale = std::f64::consts::FRAC_1_PI / norm;
    let columns: Vec<Vec<f64>> = axis
        .par_iter()
        .map(|&x| {
            axis.iter()
                .map(|&y| {
                    let bra = coherent_bra(C64::new(x, y), dim);
                    let mut q = 0.0;
                    for (k, w) in weights.iter().enumerate() {
                        let mut bc = C64::new(0.0, 0.0);
                        let mut bd = C64::new(0.0, 0.0);
                        for (n, b) in bra.iter().enumerate() {
                            bc += b * state.c[[k, n]];
                            bd += b * state.d[[k, n]];
                        }
                        q += w * (bc.norm_sqr() + bd.norm_sqr());
                    }
                    q * scale
                })
                .collect()
        })
        .collect();
    let mut values = Array2::<f64>::zeros((spec.n, spec.n));
    for (i, col) in columns.into_iter().enumerate() {
        for (j, q) in col.into_iter().enumerate() {
            values[[i, j]] = q;
        }
    }
    let grid = QGrid { x: axis.clone(), y: axis, values };
    let leak = grid.boundary_max();
    if leak > Q_LEAKAGE {
        log::warn!("Q grid boundary carries {leak:e}; extend the grid");
    }
    Ok(grid)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub x: f64,
    pub y: f64,
    pub height: f64,
    /// Full width at half maximum, averaged over the two axes.
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeakReport {
    /// Sorted by decreasing height.
    pub peaks: Vec<Peak>,
    pub height_ratio: Option<f64>,
    pub separation: Option<f64>,
    pub mean_width: Option<f64>,
    pub bimodal: bool,
}

/// Relative threshold below which local maxima are ignored.
pub const PEAK_FLOOR: f64 = 0.05;

fn parabola_vertex(fm: f64, f0: f64, fp: f64) -> (f64, f64) {
    let denom = fm - 2.0 * f0 + fp;
    if denom >= 0.0 {
        return (0.0, f0);
    }
    let off = 0.5 * (fm - fp) / denom;
    (off, f0 - 0.25 * (fm - fp) * off)
}

fn half_width(line: &[f64], i0: usize, half: f64, h: f64) -> f64 {
    let cross = |range: &mut dyn Iterator<Item = usize>, dir: f64| -> f64 {
        let mut prev = i0;
        for i in range {
            if line[i] < half {
                let frac = (line[prev] - half) / (line[prev] - line[i]);
                return dir * ((prev as f64 - i0 as f64).abs() + frac) * h;
            }
            prev = i;
        }
        dir * (prev as f64 - i0 as f64).abs() * h
    };
    cross(&mut (i0 + 1..line.len()), 1.0) - cross(&mut (0..i0).rev(), -1.0)
}

/// Local maxima above [`PEAK_FLOOR`] of the global maximum, located by
/// 8-neighbour comparison and refined with a parabola along each axis.
///
/// The distribution is bimodal iff there are exactly two peaks whose height
/// ratio is at least 0.5 and whose separation is at least twice their mean
/// full width at half maximum.
pub fn q_peak_analysis(q: &QGrid) -> PeakReport {
    let v = &q.values;
    let (nx, ny) = v.dim();
    let global = v.iter().cloned().fold(0.0f64, f64::max);
    let (dx, dy) = (q.dx(), q.dy());
    let mut peaks = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            let f0 = v[[i, j]];
            if !(f0 > PEAK_FLOOR * global) {
                continue;
            }
            let mut is_max = true;
            'nb: for di in -1isize..=1 {
                for dj in -1isize..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ii, jj) = (i as isize + di, j as isize + dj);
                    if ii < 0 || jj < 0 || ii >= nx as isize || jj >= ny as isize {
                        continue;
                    }
                    let fv = v[[ii as usize, jj as usize]];
                    // ties go to the first cell in scan order
                    let earlier = (di, dj) < (0, 0);
                    if fv > f0 || (earlier && fv == f0) {
                        is_max = false;
                        break 'nb;
                    }
                }
            }
            if !is_max {
                continue;
            }
            let (ox, hx) =
                if i > 0 && i + 1 < nx { parabola_vertex(v[[i - 1, j]], f0, v[[i + 1, j]]) } else { (0.0, f0) };
            let (oy, hy) =
                if j > 0 && j + 1 < ny { parabola_vertex(v[[i, j - 1]], f0, v[[i, j + 1]]) } else { (0.0, f0) };
            let height = hx + hy - f0;
            let row: Vec<f64> = (0..nx).map(|k| v[[k, j]]).collect();
            let col: Vec<f64> = (0..ny).map(|k| v[[i, k]]).collect();
            let width = 0.5 * (half_width(&row, i, 0.5 * f0, dx) + half_width(&col, j, 0.5 * f0, dy));
            peaks.push(Peak { x: q.x[i] + ox * dx, y: q.y[j] + oy * dy, height, width });
        }
    }
    peaks.sort_by(|a, b| b.height.total_cmp(&a.height));

    let (mut height_ratio, mut separation, mut mean_width, mut bimodal) = (None, None, None, false);
    if peaks.len() >= 2 {
        let (a, b) = (peaks[0], peaks[1]);
        let ratio = b.height / a.height;
        let sep = (a.x - b.x).hypot(a.y - b.y);
        let mw = 0.5 * (a.width + b.width);
        bimodal = peaks.len() == 2 && ratio >= 0.5 && sep >= 2.0 * mw;
        height_ratio = Some(ratio);
        separation = Some(sep);
        mean_width = Some(mw);
    }
    PeakReport { peaks, height_ratio, separation, mean_width, bimodal }
}

/// Field factor used in the cat-state ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldAnsatz {
    /// `∝ Σₙ n wₙ(0) |n⟩`.
    Weighted,
    /// `Σₙ wₙ(0) |n⟩`.
    Coherent,
}

fn ansatz_field(field: &CoherentField, dim: usize, kind: FieldAnsatz) -> Vec<C64> {
    let mut f: Vec<C64> = (0..dim)
        .map(|n| {
            let w = field.amplitude(n as isize);
            match kind {
                FieldAnsatz::Weighted => w * n as f64,
                FieldAnsatz::Coherent => w,
            }
        })
        .collect();
    let norm = f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        f.iter_mut().for_each(|z| *z /= norm);
    }
    f
}

/// Fidelity `Σₖ ωₖ |⟨ψₐ ⊗ ψ_f|ψₖ⟩|²` with `ψₐ = (|e⟩ + i|g⟩)/√2`.
pub fn cat_fidelity(state: &BranchState, field: &CoherentField, kind: FieldAnsatz) -> f64 {
    let f = ansatz_field(field, state.fock_dim(), kind);
    let mut total = 0.0;
    for (k, w) in state.grid.weights().iter().enumerate() {
        let mut fc = C64::new(0.0, 0.0);
        let mut fd = C64::new(0.0, 0.0);
        for (n, fnn) in f.iter().enumerate() {
            fc += fnn.conj() * state.c[[k, n]];
            fd += fnn.conj() * state.d[[k, n]];
        }
        let amp = (fc - C64::i() * fd) * std::f64::consts::FRAC_1_SQRT_2;
        total += w * amp.norm_sqr();
    }
    total.clamp(0.0, 1.0)
}

/// Half the peak-to-peak excursion of `values` over a window of `width`
/// centred on each sample (clipped at the ends of the series).
pub fn rabi_envelope(times: &[f64], values: &[f64], width: f64) -> Vec<f64> {
    assert_eq!(times.len(), values.len());
    let half = 0.5 * width;
    let (mut lo, mut hi) = (0usize, 0usize);
    times
        .iter()
        .map(|&t| {
            while times[lo] < t - half {
                lo += 1;
            }
            while hi + 1 < times.len() && times[hi + 1] <= t + half {
                hi += 1;
            }
            let (mn, mx) =
                values[lo..=hi].iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
            0.5 * (mx - mn)
        })
        .collect()
}

/// Collapse: first envelope value below `collapse_frac` of the initial one.
/// Revival: first later value above `revival_frac` of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseRevival {
    pub initial: f64,
    pub collapse_at: Option<f64>,
    pub revival_at: Option<f64>,
    /// Smallest envelope after the collapse, relative to `initial`.
    pub floor: f64,
    /// Largest envelope after the collapse, relative to `initial`.
    pub peak_after_collapse: f64,
}

pub fn collapse_revival(times: &[f64], envelope: &[f64], collapse_frac: f64, revival_frac: f64) -> CollapseRevival {
    let initial = envelope.first().copied().unwrap_or(0.0);
    let mut out = CollapseRevival {
        initial,
        collapse_at: None,
        revival_at: None,
        floor: f64::NAN,
        peak_after_collapse: f64::NAN,
    };
    if !(initial > 0.0) {
        return out;
    }
    let Some(ic) = envelope.iter().position(|&e| e < collapse_frac * initial) else {
        return out;
    };
    out.collapse_at = Some(times[ic]);
    let tail = &envelope[ic..];
    out.floor = tail.iter().cloned().fold(f64::INFINITY, f64::min) / initial;
    out.peak_after_collapse = tail.iter().cloned().fold(0.0, f64::max) / initial;
    out.revival_at = tail.iter().position(|&e| e > revival_frac * initial).map(|i| times[ic + i]);
    out
}

/// Largest envelope inside `[center − half, center + half]`, relative to
/// the envelope at the first sample.
pub fn window_contrast(times: &[f64], envelope: &[f64], center: f64, half: f64) -> f64 {
    let initial = envelope.first().copied().unwrap_or(0.0);
    let m =
        times.iter().zip(envelope).filter(|(t, _)| (**t - center).abs() <= half).map(|(_, e)| *e).fold(0.0, f64::max);
    if initial > 0.0 {
        m / initial
    } else {
        0.0
    }
}
