use crate::C64;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Time unit, rad/s, used for the `λt` axis when the coupling is switched off.
pub const DECOUPLED_TIME_SCALE: f64 = 1.0e6;

/// Experiment constants. Frequencies are angular (rad/s), times in seconds.
///
/// Momenta handed to the detuning functions are dimensionless: one unit is
/// the momentum whose Doppler shift `q·p/(2M)` equals `omega_rec`, i.e. one
/// photon recoil `ħq` whenever `omega_rec = ħq²/(2M)` holds exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Wavenumber of the running wave, 1/m.
    pub q: f64,
    /// Atomic mass, kg.
    pub mass: f64,
    /// Projection `q·g` of the gravitational acceleration, rad/s².
    pub qg: f64,
    /// Atom-field coupling, rad/s.
    pub lambda: f64,
    /// Recoil frequency, rad/s.
    pub omega_rec: f64,
    /// Static detuning Δ₀, rad/s.
    pub delta0: f64,
    /// Width of the centre-of-mass momentum wave packet (scaled momentum).
    pub sigma0: f64,
    /// Coherent amplitude of the initial cavity field.
    pub alpha: C64,
}

impl PhysicalParams {
    /// The parameter block of the reference regime, with the
    /// gravity knob set to `qg`.
    pub fn reference(qg: f64) -> Self {
        Self {
            q: 1.0e7,
            mass: 1.0e-26,
            qg,
            lambda: 1.0e6,
            omega_rec: 0.5e6,
            delta0: 8.5e7,
            sigma0: 1.0,
            alpha: C64::new(5.0, 0.0),
        }
    }

    pub fn with_qg(mut self, qg: f64) -> Self {
        self.qg = qg;
        self
    }

    /// Checks the value-level invariants. `lambda = 0` is accepted as the
    /// decoupled limit.
    pub fn validate(&self) -> crate::Result<()> {
        let bad = |msg: String| Err(crate::Error::InvalidParams(msg));
        let finite = [
            ("q", self.q),
            ("mass", self.mass),
            ("qg", self.qg),
            ("lambda", self.lambda),
            ("omega_rec", self.omega_rec),
            ("delta0", self.delta0),
            ("sigma0", self.sigma0),
            ("alpha.re", self.alpha.re),
            ("alpha.im", self.alpha.im),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return bad(format!("{name} must be finite, got {v}"));
            }
        }
        if !self.alpha.norm_sqr().is_finite() {
            return bad("|alpha|^2 overflows".into());
        }
        if self.lambda < 0.0 {
            return bad(format!("lambda must be >= 0, got {}", self.lambda));
        }
        if self.sigma0 <= 0.0 {
            return bad(format!("sigma0 must be > 0, got {}", self.sigma0));
        }
        if self.qg < 0.0 {
            return bad(format!("qg must be >= 0, got {}", self.qg));
        }
        if self.q <= 0.0 || self.mass <= 0.0 {
            return bad("q and mass must be > 0".into());
        }
        Ok(())
    }

    /// `ħq²/(2M)` from the wavenumber and mass.
    pub fn recoil_from_q_mass(&self) -> f64 {
        HBAR * self.q * self.q / (2.0 * self.mass)
    }

    /// Relative mismatch between the stored recoil frequency and `ħq²/(2M)`.
    pub fn recoil_mismatch(&self) -> f64 {
        let derived = self.recoil_from_q_mass();
        (self.omega_rec - derived).abs() / derived
    }

    /// Physical momentum (kg·m/s) of one scaled-momentum unit.
    pub fn momentum_unit(&self) -> f64 {
        2.0 * self.mass * self.omega_rec / self.q
    }

    /// Rate converting the scaled time `λt` to seconds. Falls back to
    /// [`DECOUPLED_TIME_SCALE`] when `λ = 0`.
    pub fn time_scale(&self) -> f64 {
        if self.lambda > 0.0 {
            self.lambda
        } else {
            DECOUPLED_TIME_SCALE
        }
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha.norm_sqr()
    }
}
