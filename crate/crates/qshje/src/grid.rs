//! Uniform spatial grids and the physical constants of the stationary problem.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical constants. Defaults are natural units hbar = m = 1.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct Constants {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0 }
    }
}

impl Constants {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        if !(hbar > 0.0) || !(mass > 0.0) {
            return Err(Error::Config(format!(
                "hbar and mass must be strictly positive (got hbar = {hbar}, mass = {mass})"
            )));
        }
        Ok(Self { hbar, mass })
    }

    /// 2m/hbar^2, the coefficient turning V - E into the Sturm-Liouville q(x).
    pub fn q_factor(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }
}

/// Uniform grid of `n >= 3` nodes on [x_min, x_max].
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::Grid(format!(
                "need finite x_min < x_max (got [{x_min}, {x_max}])"
            )));
        }
        if n < 3 {
            return Err(Error::Grid(format!("need at least 3 nodes (got {n})")));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + self.h() * i as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Index of the node coinciding with `x`, if any (snap tolerance 1e-9 h).
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let h = self.h();
        let f = (x - self.x_min) / h;
        let i = f.round();
        if i < 0.0 || i as usize >= self.n {
            return None;
        }
        if (f - i).abs() <= 1e-9 {
            Some(i as usize)
        } else {
            None
        }
    }

    /// Interior node indices (both endpoints excluded).
    pub fn interior(&self) -> std::ops::Range<usize> {
        1..self.n - 1
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spacing_and_nodes() {
        let g = Grid::new(-1.0, 1.0, 5).unwrap();
        assert!((g.h() - 0.5).abs() < 1e-15);
        assert_eq!(g.index_of(0.0), Some(2));
        assert_eq!(g.index_of(0.25), None);
        assert_eq!(g.index_of(7.0), None);
    }

    #[test]
    fn grid_rejects_bad_bounds() {
        assert!(Grid::new(1.0, -1.0, 10).is_err());
        assert!(Grid::new(0.0, 1.0, 2).is_err());
    }

    #[test]
    fn constants_must_be_positive() {
        assert!(Constants::new(1.0, -1.0).is_err());
        assert!(Constants::new(0.0, 1.0).is_err());
        let c = Constants::default();
        assert_eq!(c.q_factor(), 2.0);
    }
}
