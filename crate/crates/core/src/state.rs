use ndarray::Array2;

use crate::{MomentumGrid, C64};

/// Branch amplitudes on a momentum grid.
///
/// `c[[k, n]]` is the amplitude of `|e, n⟩` and `d[[k, n]]` that of `|g, n⟩`
/// at momentum node `k`. Both arrays have `nmax + 2` Fock columns: the ground
/// branch reaches one photon above the truncation of the initial field, and
/// `d[[k, 0]]` is always zero for an initially excited atom.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchState {
    /// Time, s.
    pub t: f64,
    pub c: Array2<C64>,
    pub d: Array2<C64>,
    pub grid: MomentumGrid,
}

impl BranchState {
    pub fn fock_dim(&self) -> usize {
        self.c.ncols()
    }

    /// `Σₖ ωₖ Σₙ (|Cₙ|² + |Dₙ|²)`.
    pub fn norm_sqr(&self) -> f64 {
        self.grid
            .weights()
            .iter()
            .zip(self.c.rows())
            .zip(self.d.rows())
            .map(|((w, c), d)| {
                w * (c.iter().map(|z| z.norm_sqr()).sum::<f64>() + d.iter().map(|z| z.norm_sqr()).sum::<f64>())
            })
            .sum()
    }
}
