//! Gauss–Hermite discretisation of the centre-of-mass momentum distribution.
//!
//! All dynamics depend on the momentum only through `q·p`, so the packet is
//! integrated along the single direction `q̂`. The probability density is
//! `|φ(p)|² ∝ exp(-2p²/σ₀²)`.

use crate::{Error, Result};

/// Nodes `pₖ` and probability weights `ωₖ` (summing to one).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl MomentumGrid {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// A single node at `p` carrying all the weight.
    pub fn single(p: f64) -> Self {
        Self { nodes: vec![p], weights: vec![1.0] }
    }

    /// Arbitrary nodes and weights, e.g. for a hand-built packet.
    ///
    /// # Panics
    /// If the lengths differ or the grid is empty.
    pub fn from_parts(nodes: Vec<f64>, weights: Vec<f64>) -> Self {
        assert!(!nodes.is_empty() && nodes.len() == weights.len(), "mismatched momentum grid");
        Self { nodes, weights }
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

pub fn build_momentum_grid(sigma0: f64, n_nodes: usize) -> Result<MomentumGrid> {
    if n_nodes == 0 {
        return Err(Error::InvalidParams("momentum grid needs at least one node".into()));
    }
    if !(sigma0 > 0.0 && sigma0.is_finite()) {
        return Err(Error::InvalidParams(format!("sigma0 must be > 0, got {sigma0}")));
    }
    let (x, w) = gauss_hermite(n_nodes);
    let total: f64 = w.iter().sum();
    let scale = sigma0 / std::f64::consts::SQRT_2;
    Ok(MomentumGrid { nodes: x.iter().map(|x| x * scale).collect(), weights: w.iter().map(|w| w / total).collect() })
}

/// Nodes (ascending) and weights of the `n`-point rule for `∫ e^{-x²} f(x) dx`,
/// found by Newton iteration on the orthonormal Hermite recurrence.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    const PI_M4: f64 = 0.751_125_544_464_942_5; // π^{-1/4}
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let m = n.div_ceil(2);
    let mut z = 0.0;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.855_75 * (2.0 * nf + 1.0).powf(-0.166_67),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = PI_M4;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    x.reverse();
    w.reverse();
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node_is_the_mean() {
        let g = build_momentum_grid(1.0, 1).unwrap();
        assert_eq!(g.nodes(), &[0.0]);
        assert_eq!(g.weights(), &[1.0]);
    }

    #[test]
    fn raw_weights_sum_to_sqrt_pi() {
        for n in [1, 2, 5, 16, 32, 64] {
            let (_, w) = gauss_hermite(n);
            let s: f64 = w.iter().sum();
            assert!((s - std::f64::consts::PI.sqrt()).abs() < 1e-13, "n={n} sum={s}");
        }
    }

    #[test]
    fn nodes_ascending_and_symmetric() {
        let (x, w) = gauss_hermite(33);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
        for i in 0..x.len() {
            assert!((x[i] + x[x.len() - 1 - i]).abs() < 1e-13);
            assert!((w[i] - w[w.len() - 1 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn second_moment_of_packet() {
        let g = build_momentum_grid(1.0, 8).unwrap();
        let m2: f64 = g.iter().map(|(p, w)| w * p * p).sum();
        assert!((m2 - 0.25).abs() <= 1e-12 * 0.25);
        let s: f64 = g.weights().iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn polynomial_exactness_through_degree_six() {
        // moments of a Gaussian with variance σ₀²/4
        for sigma in [0.5, 1.0, 2.3] {
            let var: f64 = sigma * sigma / 4.0;
            let exact = [1.0, 0.0, var, 0.0, 3.0 * var * var, 0.0, 15.0 * var.powi(3)];
            for n in [4, 8, 32] {
                let g = build_momentum_grid(sigma, n).unwrap();
                for (deg, &m) in exact.iter().enumerate() {
                    let got: f64 = g.iter().map(|(p, w)| w * p.powi(deg as i32)).sum();
                    assert!((got - m).abs() < 1e-10 * m.abs().max(1.0), "σ={sigma} n={n} deg={deg}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(build_momentum_grid(1.0, 0).is_err());
        assert!(build_momentum_grid(-1.0, 4).is_err());
    }
}
