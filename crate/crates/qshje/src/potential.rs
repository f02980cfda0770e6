//! Potential catalog: built-in shapes, polynomials, and tabulated data.
//!
//! Tabulated potentials are read from two-column CSV (x,V) with a header
//! line and interpolated with a natural cubic spline so the interpolation
//! order matches the integrator order.

use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Grid;

#[derive(Clone, Debug, Serialize)]
pub enum Potential {
    /// V = 0.
    Free,
    /// V = m omega^2 x^2 / 2.
    Harmonic { mass: f64, omega: f64 },
    /// V = slope * x.
    LinearRamp { slope: f64 },
    /// V = -depth inside |x - center| <= width/2, 0 outside. depth >= 0.
    SquareWell { depth: f64, width: f64, center: f64 },
    /// V = sum_k coefficients[k] x^k.
    Polynomial { coefficients: Vec<f64> },
    /// Cubic-spline interpolation of sampled (x, V) data.
    Tabulated(CubicSpline),
}

impl Potential {
    pub fn harmonic(mass: f64, omega: f64) -> Result<Self> {
        if !(mass > 0.0) || !(omega > 0.0) {
            return Err(Error::Potential(format!(
                "harmonic potential needs mass > 0 and omega > 0 (got {mass}, {omega})"
            )));
        }
        Ok(Self::Harmonic { mass, omega })
    }

    pub fn square_well(depth: f64, width: f64, center: f64) -> Result<Self> {
        if !(depth >= 0.0) || !(width > 0.0) {
            return Err(Error::Potential(format!(
                "square well needs depth >= 0 and width > 0 (got {depth}, {width})"
            )));
        }
        Ok(Self::SquareWell { depth, width, center })
    }

    pub fn tabulated_from_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::tabulated_from_csv_str(&text)
    }

    pub fn tabulated_from_csv_str(text: &str) -> Result<Self> {
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if lineno == 0 {
                // header row
                continue;
            }
            let mut cols = line.split(',');
            let x: f64 = cols
                .next()
                .ok_or_else(|| Error::Potential(format!("line {}: missing x column", lineno + 1)))?
                .trim()
                .parse()
                .map_err(|e| Error::Potential(format!("line {}: bad x value ({e})", lineno + 1)))?;
            let v: f64 = cols
                .next()
                .ok_or_else(|| Error::Potential(format!("line {}: missing V column", lineno + 1)))?
                .trim()
                .parse()
                .map_err(|e| Error::Potential(format!("line {}: bad V value ({e})", lineno + 1)))?;
            xs.push(x);
            vs.push(v);
        }
        Ok(Self::Tabulated(CubicSpline::new(xs, vs)?))
    }

    /// Evaluate V(x). Only the tabulated form can fail (range error).
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            Self::Free => Ok(0.0),
            Self::Harmonic { mass, omega } => Ok(0.5 * mass * omega * omega * x * x),
            Self::LinearRamp { slope } => Ok(slope * x),
            Self::SquareWell { depth, width, center } => {
                if (x - center).abs() <= 0.5 * width {
                    Ok(-depth)
                } else {
                    Ok(0.0)
                }
            }
            Self::Polynomial { coefficients } => {
                Ok(coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c))
            }
            Self::Tabulated(sp) => sp.eval(x),
        }
    }

    /// Sample V on every node of `g`.
    pub fn sample(&self, g: &Grid) -> Result<Vec<f64>> {
        (0..g.n).map(|i| self.eval(g.x(i))).collect()
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Free => "free",
            Self::Harmonic { .. } => "harmonic",
            Self::LinearRamp { .. } => "linear",
            Self::SquareWell { .. } => "square_well",
            Self::Polynomial { .. } => "polynomial",
            Self::Tabulated(_) => "tabulated",
        }
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Natural cubic spline through strictly increasing abscissae.
#[derive(Clone, Debug, Serialize)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    y2: Vec<f64>,
}

impl CubicSpline {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::Potential(format!(
                "tabulated potential needs >= 2 matched samples (got {} x, {} V)",
                xs.len(),
                ys.len()
            )));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Potential(
                "tabulated x values must be strictly increasing".into(),
            ));
        }
        let n = xs.len();
        // natural boundary conditions: y'' = 0 at both ends
        let mut y2 = vec![0.0; n];
        let mut u = vec![0.0; n];
        for i in 1..n - 1 {
            let sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
            let p = sig * y2[i - 1] + 2.0;
            y2[i] = (sig - 1.0) / p;
            let d = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
                - (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
            u[i] = (6.0 * d / (xs[i + 1] - xs[i - 1]) - sig * u[i - 1]) / p;
        }
        for i in (0..n - 1).rev() {
            y2[i] = y2[i] * y2[i + 1] + u[i];
        }
        Ok(Self { xs, ys, y2 })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        if x < lo || x > hi {
            return Err(Error::PotentialRange { x, lo, hi });
        }
        let mut k = match self
            .xs
            .binary_search_by(|v| v.partial_cmp(&x).unwrap())
        {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        };
        if k >= self.xs.len() - 1 {
            k = self.xs.len() - 2;
        }
        let hseg = self.xs[k + 1] - self.xs[k];
        let a = (self.xs[k + 1] - x) / hseg;
        let b = (x - self.xs[k]) / hseg;
        Ok(a * self.ys[k]
            + b * self.ys[k + 1]
            + ((a * a * a - a) * self.y2[k] + (b * b * b - b) * self.y2[k + 1]) * hseg * hseg / 6.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_at_two() {
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        assert_eq!(p.eval(2.0).unwrap(), 2.0);
    }

    #[test]
    fn free_anywhere() {
        assert_eq!(Potential::Free.eval(17.3).unwrap(), 0.0);
    }

    #[test]
    fn polynomial_half_x_squared() {
        let p = Potential::Polynomial { coefficients: vec![0.0, 0.0, 0.5] };
        assert_eq!(p.eval(2.0).unwrap(), 2.0);
        assert_eq!(p.eval(-3.0).unwrap(), 4.5);
    }

    #[test]
    fn tabulated_range_error() {
        let text = "x,V\n0.0,1.0\n1.0,2.0\n2.0,5.0\n";
        let p = Potential::tabulated_from_csv_str(text).unwrap();
        assert!(p.eval(1.0).is_ok());
        assert!(matches!(p.eval(3.0), Err(Error::PotentialRange { .. })));
    }

    #[test]
    fn tabulated_requires_increasing_x() {
        let text = "x,V\n0.0,1.0\n0.0,2.0\n";
        assert!(Potential::tabulated_from_csv_str(text).is_err());
    }

    #[test]
    fn spline_reproduces_smooth_data() {
        // dense samples of cosh reproduce the function to interpolation
        // accuracy away from the natural-boundary layers
        let xs: Vec<f64> = (0..201).map(|i| -1.0 + i as f64 * 0.01).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.cosh()).collect();
        let sp = CubicSpline::new(xs, ys).unwrap();
        for i in 0..90 {
            let x = -0.895 + i as f64 * 0.02;
            assert!((sp.eval(x).unwrap() - x.cosh()).abs() < 1e-7);
        }
    }

    #[test]
    fn square_well_shape() {
        let p = Potential::square_well(2.0, 1.0, 0.0).unwrap();
        assert_eq!(p.eval(0.0).unwrap(), -2.0);
        assert_eq!(p.eval(0.49).unwrap(), -2.0);
        assert_eq!(p.eval(0.51).unwrap(), 0.0);
    }
}
