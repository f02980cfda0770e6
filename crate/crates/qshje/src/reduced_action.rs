//! Construction of the reduced action S0, the amplitude A, the Bohm quantum
//! potential, and residual checks of the stationary quantum Hamilton-Jacobi
//! equation in its third-order (Schwarzian) form.
//!
//! Everything is built on the closed-form solution over a basis pair:
//! with N = sigma th1 + nu th2 and D = mu th1 + gamma th2,
//!
//!   S0  = hbar * angle(D + iN) + hbar lambda      (continuous branch)
//!   A   = sqrt(N^2 + D^2)
//!   S0' = hbar W (mu nu - sigma gamma) / A^2
//!
//! so A^2 S0' is constant across the grid and S0 is strictly monotonic.
//! Higher S0 derivatives for the residual come from the chain rule through
//! A^2 (with th'' = q th), never from differencing the unwrapped angle:
//! third differences of angles are noisy while the analytic route is exact
//! up to solver error in the basis itself.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Constants, Grid};
use crate::microstate::Microstate;
use crate::numerics::{cumulative_integral, second_derivative};
use crate::potential::Potential;
use crate::schrodinger::BasisPair;

/// Sampled reduced action and companions for one microstate at one energy.
#[derive(Clone, Debug)]
pub struct ReducedActionField {
    pub grid: Grid,
    pub energy: f64,
    pub microstate: Microstate,
    pub x0_index: usize,
    /// Reduced action, continuous and strictly monotonic.
    pub s0: Vec<f64>,
    /// dS0/dx from the closed form (constant-product identity).
    pub ds0: Vec<f64>,
    /// Amplitude A > 0.
    pub amplitude: Vec<f64>,
    /// Bohm quantum potential -(hbar^2/2m) A''/A, analytic route.
    pub vb: Vec<f64>,
    /// Stationary Hamilton-Jacobi residual on the grid.
    pub residual: Vec<f64>,
    /// Analytic d2 S0 / dx2.
    pub d2s0: Vec<f64>,
    /// Analytic d3 S0 / dx3.
    pub d3s0: Vec<f64>,
    /// max |S0(unwrap) - S0(integral of dS0)| over the grid.
    pub unwrap_integral_deviation: f64,
    /// Wronskian of the source basis (1 for canonical pairs).
    pub wronskian: f64,
    /// Wronskian drift of the source basis.
    pub basis_drift: f64,
}

impl ReducedActionField {
    /// max |A^2 dS0 - hbar W (mu nu - sigma gamma)| relative to the constant.
    pub fn constant_product_deviation(&self, c: &Constants) -> f64 {
        let target = c.hbar * self.wronskian * self.microstate.determinant();
        let dev = self
            .amplitude
            .iter()
            .zip(&self.ds0)
            .map(|(a, d)| (a * a * d - target).abs())
            .fold(0.0, f64::max);
        dev / target.abs()
    }
}

fn numerator_denominator(b: &BasisPair, ms: &Microstate) -> (Vec<f64>, Vec<f64>) {
    let n: Vec<f64> = b
        .theta1
        .iter()
        .zip(&b.theta2)
        .map(|(&t1, &t2)| ms.sigma * t1 + ms.nu * t2)
        .collect();
    let d: Vec<f64> = b
        .theta1
        .iter()
        .zip(&b.theta2)
        .map(|(&t1, &t2)| ms.mu * t1 + ms.gamma * t2)
        .collect();
    (n, d)
}

/// A = sqrt((sigma th1 + nu th2)^2 + (mu th1 + gamma th2)^2).
pub fn amplitude(b: &BasisPair, ms: &Microstate) -> Result<Vec<f64>> {
    ms.validate()?;
    let (num, den) = numerator_denominator(b, ms);
    let a: Vec<f64> = num
        .iter()
        .zip(&den)
        .map(|(n, d)| (n * n + d * d).sqrt())
        .collect();
    if let Some(i) = a.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::NonpositiveAmplitude(b.grid.x(i)));
    }
    Ok(a)
}

/// dS0/dx = hbar W (mu nu - sigma gamma) / A^2; uniform sign over the grid.
pub fn action_derivative(b: &BasisPair, ms: &Microstate, c: &Constants) -> Result<Vec<f64>> {
    let a = amplitude(b, ms)?;
    let k = c.hbar * b.wronskian * ms.determinant();
    Ok(a.iter().map(|ai| k / (ai * ai)).collect())
}

/// Build the full reduced-action field for one microstate.
pub fn reduced_action(b: &BasisPair, ms: &Microstate, c: &Constants) -> Result<ReducedActionField> {
    ms.validate()?;
    let (num, den) = numerator_denominator(b, ms);
    let g = b.grid;
    let n = g.n;
    let i0 = b.x0_index;

    let a: Vec<f64> = num
        .iter()
        .zip(&den)
        .map(|(nv, dv)| (nv * nv + dv * dv).sqrt())
        .collect();
    if let Some(i) = a.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::NonpositiveAmplitude(g.x(i)));
    }

    // continuous branch of the angle, anchored at x0
    let raw: Vec<f64> = num.iter().zip(&den).map(|(nv, dv)| nv.atan2(*dv)).collect();
    let mut phase = vec![0.0; n];
    phase[i0] = raw[i0];
    let wrap = |d: f64| -> f64 {
        let mut d = d % (2.0 * PI);
        if d > PI {
            d -= 2.0 * PI;
        } else if d <= -PI {
            d += 2.0 * PI;
        }
        d
    };
    for i in i0 + 1..n {
        let step = wrap(raw[i] - raw[i - 1]);
        if step.abs() > PI / 2.0 {
            return Err(Error::BranchJump { x_prev: g.x(i - 1), x: g.x(i), jump: step.abs() });
        }
        phase[i] = phase[i - 1] + step;
    }
    for i in (0..i0).rev() {
        let step = wrap(raw[i + 1] - raw[i]);
        if step.abs() > PI / 2.0 {
            return Err(Error::BranchJump { x_prev: g.x(i), x: g.x(i + 1), jump: step.abs() });
        }
        phase[i] = phase[i + 1] - step;
    }
    let s0: Vec<f64> = phase.iter().map(|p| c.hbar * (p + ms.lambda)).collect();

    let det = ms.determinant();
    let kconst = c.hbar * b.wronskian * det;
    let ds0: Vec<f64> = a.iter().map(|ai| kconst / (ai * ai)).collect();

    // analytic derivatives of A^2 through the basis equation th'' = q th
    let q = b.q_samples();
    let mut d2s0 = vec![0.0; n];
    let mut d3s0 = vec![0.0; n];
    let mut vb = vec![0.0; n];
    let mut residual = vec![0.0; n];
    let v = b.potential_samples();
    let e = b.energy;
    for i in 0..n {
        let (nv, dv) = (num[i], den[i]);
        let npr = ms.sigma * b.dtheta1[i] + ms.nu * b.dtheta2[i];
        let dpr = ms.mu * b.dtheta1[i] + ms.gamma * b.dtheta2[i];
        let a2 = a[i] * a[i];
        let a2p = 2.0 * (nv * npr + dv * dpr);
        let a2pp = 2.0 * (npr * npr + dpr * dpr + q[i] * (nv * nv + dv * dv));
        d2s0[i] = -kconst * a2p / (a2 * a2);
        d3s0[i] = -kconst * (a2pp / (a2 * a2) - 2.0 * a2p * a2p / (a2 * a2 * a2));
        // A' = (A^2)'/(2A), A'' = ((A^2)'' - 2 A'^2) / (2A)
        let ap = a2p / (2.0 * a[i]);
        let app = (a2pp - 2.0 * ap * ap) / (2.0 * a[i]);
        vb[i] = -(c.hbar * c.hbar) / (2.0 * c.mass) * app / a[i];
        let sp = ds0[i];
        residual[i] = sp * sp / (2.0 * c.mass)
            - (c.hbar * c.hbar) / (4.0 * c.mass)
                * (1.5 * (d2s0[i] / sp) * (d2s0[i] / sp) - d3s0[i] / sp)
            + v[i]
            - e;
    }

    // independent reconstruction of S0 from its derivative
    let cum = cumulative_integral(&ds0, g.h());
    let dev = (0..n)
        .map(|i| ((s0[i] - s0[i0]) - (cum[i] - cum[i0])).abs())
        .fold(0.0, f64::max);

    Ok(ReducedActionField {
        grid: g,
        energy: e,
        microstate: *ms,
        x0_index: i0,
        s0,
        ds0,
        amplitude: a,
        vb,
        residual,
        d2s0,
        d3s0,
        unwrap_integral_deviation: dev,
        wronskian: b.wronskian,
        basis_drift: b.drift,
    })
}

/// Bohm quantum potential -(hbar^2/2m) A''/A from a raw positive grid
/// function, with fourth-order central differences (one-sided at the edges).
pub fn quantum_potential(a: &[f64], h: f64, c: &Constants) -> Result<Vec<f64>> {
    if let Some(i) = a.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::NonpositiveAmplitude(i as f64 * h));
    }
    let app = second_derivative(a, h);
    Ok(app
        .iter()
        .zip(a)
        .map(|(dd, ai)| -(c.hbar * c.hbar) / (2.0 * c.mass) * dd / ai)
        .collect())
}

/// Re-evaluate the stationary Hamilton-Jacobi residual of a field against a
/// potential, using the field's analytic S0 derivatives:
///
///   (S0')^2/2m - (hbar^2/4m) [ (3/2)(S0''/S0')^2 - S0'''/S0' ] + V - E.
pub fn qshje_residual(f: &ReducedActionField, p: &Potential, c: &Constants) -> Result<Vec<f64>> {
    let mut out = vec![0.0; f.grid.n];
    for i in 0..f.grid.n {
        let sp = f.ds0[i];
        let v = p.eval(f.grid.x(i))?;
        out[i] = sp * sp / (2.0 * c.mass)
            - (c.hbar * c.hbar) / (4.0 * c.mass)
                * (1.5 * (f.d2s0[i] / sp) * (f.d2s0[i] / sp) - f.d3s0[i] / sp)
            + v
            - f.energy;
    }
    Ok(out)
}

/// Parameters of the integral form of the reduced action built from a real
/// wave function phi with no node on the working interval:
///
///   S0 = hbar atan( (1/hbar) Int dx / (phi/D)^2  + H ) + hbar * phase_offset
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IntegralActionParams {
    /// Overall scale of phi (must be nonzero).
    pub d_scale: f64,
    /// Integration constant selecting the microstate.
    pub h_const: f64,
    /// Additive phase (b - a)/2 in units of angle.
    pub phase_offset: f64,
}

/// Reduced action on a node-free sub-interval, from cumulative quadrature.
#[derive(Clone, Debug)]
pub struct ActionOnInterval {
    /// Grid index of the first returned node.
    pub start: usize,
    /// S0 samples for nodes start..start + s0.len().
    pub s0: Vec<f64>,
}

/// Integral form of the reduced action. The cumulative integral is anchored
/// at the midpoint node of the interval, where the arctangent argument is H.
pub fn action_from_integral(
    phi: &[f64],
    g: &Grid,
    prm: &IntegralActionParams,
    interval: (f64, f64),
    c: &Constants,
) -> Result<ActionOnInterval> {
    if phi.len() != g.n {
        return Err(Error::GridMismatch(format!(
            "phi has {} samples for a grid of {} nodes",
            phi.len(),
            g.n
        )));
    }
    if prm.d_scale == 0.0 {
        return Err(Error::Config("integral action scale D must be nonzero".into()));
    }
    let (lo, hi) = interval;
    if !(lo < hi) {
        return Err(Error::Config(format!("empty interval [{lo}, {hi}]")));
    }
    let h = g.h();
    let i_lo = ((lo - g.x_min) / h).ceil().max(0.0) as usize;
    let i_hi = (((hi - g.x_min) / h).floor() as usize).min(g.n - 1);
    if i_hi < i_lo + 4 {
        return Err(Error::Config(format!(
            "interval [{lo}, {hi}] covers fewer than 5 grid nodes"
        )));
    }
    let seg = &phi[i_lo..=i_hi];
    let floor = crate::numerics::max_abs(seg) * 1e-13;
    if let Some(j) = seg.iter().position(|&v| v.abs() <= floor) {
        return Err(Error::NodeInInterval(g.x(i_lo + j)));
    }
    if seg.windows(2).any(|w| (w[0] < 0.0) != (w[1] < 0.0)) {
        let j = seg.windows(2).position(|w| (w[0] < 0.0) != (w[1] < 0.0)).unwrap();
        return Err(Error::NodeInInterval(g.x(i_lo + j)));
    }

    let integrand: Vec<f64> = seg
        .iter()
        .map(|&p| {
            let r = p / prm.d_scale;
            1.0 / (r * r)
        })
        .collect();
    let cum = cumulative_integral(&integrand, h);
    let mid = (i_hi - i_lo) / 2;
    let s0: Vec<f64> = cum
        .iter()
        .map(|ci| c.hbar * (((ci - cum[mid]) / c.hbar + prm.h_const).atan() + prm.phase_offset))
        .collect();
    Ok(ActionOnInterval { start: i_lo, s0 })
}
