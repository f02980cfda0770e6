//! Projective microstate parameters selecting one reduced action among all
//! compatible with a physical state.
//!
//! A microstate is the real parameter set (sigma, nu, mu, gamma; lambda)
//! entering the closed-form reduced action
//!
//!   S0 = hbar * angle[(mu th1 + gamma th2) + i (sigma th1 + nu th2)] + hbar lambda,
//!
//! subject to mu nu != sigma gamma. The canonical form sets sigma = gamma = 1;
//! the homogeneous form is kept for states that the canonical slice cannot
//! reach (e.g. wave functions proportional to th1 alone, where the canonical
//! mu would diverge).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Constants;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct Microstate {
    pub sigma: f64,
    pub nu: f64,
    pub mu: f64,
    pub gamma: f64,
    /// Additive phase; the reduced action is offset by hbar * lambda.
    pub lambda: f64,
}

/// Direction tag for the energy-adapted free-particle microstate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaveDirection {
    /// dS0/dx = +hbar k
    Positive,
    /// dS0/dx = -hbar k
    Negative,
}

impl Microstate {
    /// Canonical microstate: sigma = gamma = 1, lambda = 0.
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        Self::homogeneous(1.0, nu, mu, 1.0, 0.0)
    }

    pub fn homogeneous(sigma: f64, nu: f64, mu: f64, gamma: f64, lambda: f64) -> Result<Self> {
        let ms = Self { sigma, nu, mu, gamma, lambda };
        ms.validate()?;
        Ok(ms)
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    /// mu nu - sigma gamma, the non-degeneracy determinant.
    pub fn determinant(&self) -> f64 {
        self.mu * self.nu - self.sigma * self.gamma
    }

    pub fn validate(&self) -> Result<()> {
        let scale = self.sigma.abs().max(self.nu.abs()).max(self.mu.abs()).max(self.gamma.abs());
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::DegenerateMicrostate(0.0));
        }
        let det = self.determinant();
        if det.abs() <= 1e-12 * scale * scale {
            return Err(Error::DegenerateMicrostate(det));
        }
        Ok(())
    }

    pub fn is_canonical(&self) -> bool {
        self.sigma == 1.0 && self.gamma == 1.0
    }

    /// Canonical representative when one exists: the whole parameter vector
    /// may be rescaled by a common nonzero factor without changing S0 (up to
    /// a half-turn), so sigma = gamma = 1 is reachable iff sigma == gamma != 0.
    pub fn canonicalized(&self) -> Option<Self> {
        if self.is_canonical() {
            return Some(*self);
        }
        let scale = self.sigma.abs().max(self.gamma.abs());
        if scale == 0.0 {
            return None;
        }
        if (self.sigma - self.gamma).abs() <= 1e-14 * scale && self.sigma != 0.0 {
            let s = 1.0 / self.sigma;
            return Some(Self {
                sigma: 1.0,
                nu: self.nu * s,
                mu: self.mu * s,
                gamma: 1.0,
                lambda: self.lambda,
            });
        }
        None
    }

    /// Energy-adapted plane-wave microstate for the free particle, with
    /// numerator/denominator equal to cos(kx) and sin(kx) on the canonical
    /// basis. Its amplitude is identically 1 at every energy, so the Bohm
    /// quantum potential vanishes and dS0/dx = -+ hbar k.
    pub fn free_wave(energy: f64, c: &Constants, dir: WaveDirection) -> Result<Self> {
        if !(energy > 0.0) {
            return Err(Error::Config(format!(
                "free-particle microstate needs E > 0 (got {energy})"
            )));
        }
        let k = (2.0 * c.mass * energy).sqrt() / c.hbar;
        match dir {
            WaveDirection::Positive => Self::homogeneous(0.0, k, 1.0, 0.0, 0.0),
            WaveDirection::Negative => Self::homogeneous(1.0, 0.0, 0.0, k, 0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_constructor_checks_determinant() {
        assert!(Microstate::new(2.0, 0.5).is_err()); // mu nu = 1 = sigma gamma
        let ms = Microstate::new(2.0, 0.0).unwrap();
        assert_eq!(ms.determinant(), -1.0);
    }

    #[test]
    fn homogeneous_rescaling_canonicalizes() {
        let ms = Microstate::homogeneous(2.0, 4.0, 6.0, 2.0, 0.0).unwrap();
        let canon = ms.canonicalized().unwrap();
        assert_eq!(canon.sigma, 1.0);
        assert_eq!(canon.gamma, 1.0);
        assert_eq!(canon.mu, 3.0);
        assert_eq!(canon.nu, 2.0);
    }

    #[test]
    fn projective_form_has_no_canonical_slice() {
        let ms = Microstate::homogeneous(1.0, 1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(ms.canonicalized().is_none());
    }

    #[test]
    fn free_wave_determinants() {
        let c = Constants::default();
        let neg = Microstate::free_wave(0.5, &c, WaveDirection::Negative).unwrap();
        assert!((neg.determinant() + 1.0).abs() < 1e-15); // -k with k = 1
        let pos = Microstate::free_wave(2.0, &c, WaveDirection::Positive).unwrap();
        assert!((pos.determinant() - 2.0).abs() < 1e-15); // +k with k = 2
    }
}
