//! Canonical two-solution basis of the 1D stationary Schrodinger equation,
//! Wronskian bookkeeping, and bound-state eigenvalue search.
//!
//! The equation is integrated in Sturm-Liouville form
//!
//!   y'' = q(x) y,   q = (2m/hbar^2)(V - E)
//!
//! with the Numerov three-term recurrence (fourth-order accurate for exactly
//! this form) marching outward from the anchor node x0 in both directions.
//! The basis carries the canonical initial data
//!
//!   th1(x0) = 1, th1'(x0) = 0,   th2(x0) = 0, th2'(x0) = 1,
//!
//! which pins the Wronskian W = th1 th2' - th2 th1' to 1 and makes the basis
//! a reproducible reference at every energy. Eigenvalues are located by
//! two-sided shooting with node counting and refined by bisection.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Constants, Grid};
use crate::numerics::cumulative_integral;
use crate::potential::Potential;

const OVERFLOW_LIMIT: f64 = 1e250;

/// Two independent real solutions with canonical initial data at x0.
#[derive(Clone, Debug)]
pub struct BasisPair {
    pub grid: Grid,
    pub energy: f64,
    pub theta1: Vec<f64>,
    pub theta2: Vec<f64>,
    pub dtheta1: Vec<f64>,
    pub dtheta2: Vec<f64>,
    pub x0_index: usize,
    /// Wronskian at the anchor (1 by construction).
    pub wronskian: f64,
    /// max over the grid of |W(x) - W(x0)| recorded at construction.
    pub drift: f64,
    v_samples: Vec<f64>,
    q_samples: Vec<f64>,
}

impl BasisPair {
    pub fn x0(&self) -> f64 {
        self.grid.x(self.x0_index)
    }

    /// Sampled potential used to build the pair.
    pub fn potential_samples(&self) -> &[f64] {
        &self.v_samples
    }

    /// Sampled Sturm-Liouville coefficient q = (2m/hbar^2)(V - E).
    pub fn q_samples(&self) -> &[f64] {
        &self.q_samples
    }

    /// Pointwise Wronskian th1 th2' - th2 th1'.
    pub fn wronskian_at(&self, i: usize) -> f64 {
        self.theta1[i] * self.dtheta2[i] - self.theta2[i] * self.dtheta1[i]
    }
}

/// Solve for the canonical basis pair at energy `energy`, anchored at the
/// interior grid node `x0`.
pub fn solve_basis(
    p: &Potential,
    energy: f64,
    g: &Grid,
    x0: f64,
    c: &Constants,
) -> Result<BasisPair> {
    let i0 = g.index_of(x0).ok_or(Error::AnchorNotOnGrid(x0))?;
    if i0 == 0 || i0 == g.n - 1 {
        return Err(Error::AnchorNotOnGrid(x0));
    }
    let v = p.sample(g)?;
    let qf = c.q_factor();
    let q: Vec<f64> = v.iter().map(|vi| qf * (vi - energy)).collect();
    let h = g.h();

    let theta1 = numerov_from(&q, h, i0, 1.0, 0.0, g)?;
    let theta2 = numerov_from(&q, h, i0, 0.0, 1.0, g)?;
    let dtheta1 = reconstruct_derivative(&theta1, &q, h);
    let dtheta2 = reconstruct_derivative(&theta2, &q, h);

    let mut b = BasisPair {
        grid: *g,
        energy,
        theta1,
        theta2,
        dtheta1,
        dtheta2,
        x0_index: i0,
        wronskian: 1.0,
        drift: 0.0,
        v_samples: v,
        q_samples: q,
    };
    b.drift = wronskian_drift(&b);
    Ok(b)
}

/// max over the grid of |W(x) - W(x0)|.
pub fn wronskian_drift(b: &BasisPair) -> f64 {
    let w0 = b.wronskian_at(b.x0_index);
    (0..b.grid.n)
        .map(|i| (b.wronskian_at(i) - w0).abs())
        .fold(0.0, f64::max)
}

/// phi = C1 th1 + C2 th2 sampled on the grid.
pub fn superpose(b: &BasisPair, c1: Complex64, c2: Complex64) -> Result<Vec<Complex64>> {
    if c1 == Complex64::new(0.0, 0.0) && c2 == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroCoefficients);
    }
    Ok(b
        .theta1
        .iter()
        .zip(&b.theta2)
        .map(|(&t1, &t2)| c1 * t1 + c2 * t2)
        .collect())
}

/// Numerov march outward from node `i0` with initial data (y, y') there.
/// Start values one node away come from a fourth-order Taylor expansion
/// using y'' = q y and finite differences of q.
fn numerov_from(q: &[f64], h: f64, i0: usize, y0: f64, dy0: f64, g: &Grid) -> Result<Vec<f64>> {
    let n = q.len();
    let mut y = vec![0.0; n];
    y[i0] = y0;

    let q0 = q[i0];
    let dq = (q[i0 + 1] - q[i0 - 1]) / (2.0 * h);
    let ddq = (q[i0 + 1] - 2.0 * q[i0] + q[i0 - 1]) / (h * h);
    let taylor = |s: f64| -> f64 {
        // y(x0 + s h) for s = +-1
        let hh = s * h;
        y0 + hh * dy0
            + hh * hh / 2.0 * q0 * y0
            + hh * hh * hh / 6.0 * (dq * y0 + q0 * dy0)
            + hh * hh * hh * hh / 24.0 * (ddq * y0 + 2.0 * dq * dy0 + q0 * q0 * y0)
    };

    let check = |val: f64, i: usize| -> Result<f64> {
        if !val.is_finite() || val.abs() > OVERFLOW_LIMIT {
            Err(Error::ForbiddenOverflow { x: g.x(i), limit: OVERFLOW_LIMIT })
        } else {
            Ok(val)
        }
    };

    let h2 = h * h;
    let pcoef = |qi: f64| 1.0 - h2 * qi / 12.0;

    if i0 + 1 < n {
        y[i0 + 1] = taylor(1.0);
        for i in i0 + 1..n - 1 {
            let next = (2.0 * (1.0 + 5.0 * h2 * q[i] / 12.0) * y[i] - pcoef(q[i - 1]) * y[i - 1])
                / pcoef(q[i + 1]);
            y[i + 1] = check(next, i + 1)?;
        }
    }
    if i0 >= 1 {
        y[i0 - 1] = taylor(-1.0);
        for i in (1..i0).rev() {
            let next = (2.0 * (1.0 + 5.0 * h2 * q[i] / 12.0) * y[i] - pcoef(q[i + 1]) * y[i + 1])
                / pcoef(q[i - 1]);
            y[i - 1] = check(next, i - 1)?;
        }
    }
    Ok(y)
}

/// Fourth-order derivative reconstruction consistent with y'' = q y.
fn reconstruct_derivative(y: &[f64], q: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    let mut dy = vec![0.0; n];
    for i in 1..n - 1 {
        dy[i] = ((y[i + 1] - y[i - 1]) / (2.0 * h) - h / 12.0 * (q[i + 1] - q[i - 1]) * y[i])
            / (1.0 + h * h * q[i] / 6.0);
    }
    // ODE-corrected one-sided formulas at the endpoints
    let h2 = h * h;
    {
        let q0 = q[0];
        let dq = (-3.0 * q[0] + 4.0 * q[1] - q[2]) / (2.0 * h);
        let ddq = (q[0] - 2.0 * q[1] + q[2]) / h2;
        let num = y[1] - y[0] - h2 / 2.0 * q0 * y[0] - h2 * h / 6.0 * dq * y[0]
            - h2 * h2 / 24.0 * (ddq + q0 * q0) * y[0];
        dy[0] = num / (h + h2 * h * q0 / 6.0 + h2 * h2 * dq / 12.0);
    }
    {
        let m = n - 1;
        let qn = q[m];
        let dq = (3.0 * q[m] - 4.0 * q[m - 1] + q[m - 2]) / (2.0 * h);
        let ddq = (q[m] - 2.0 * q[m - 1] + q[m - 2]) / h2;
        let num = y[m] - y[m - 1] + h2 / 2.0 * qn * y[m] - h2 * h / 6.0 * dq * y[m]
            + h2 * h2 / 24.0 * (ddq + qn * qn) * y[m];
        dy[m] = num / (h + h2 * h * qn / 6.0 - h2 * h2 * dq / 12.0);
    }
    dy
}

/// Outcome of an eigenvalue search.
#[derive(Clone, Debug)]
pub struct EigenResult {
    /// Eigenvalues found, ascending.
    pub energies: Vec<f64>,
    /// Interior node count of the eigenfunction for each energy.
    pub node_counts: Vec<usize>,
    /// False when fewer than the requested count were found in range.
    pub complete: bool,
}

/// Streaming two-sided shot; returns the matching Wronskian
/// y_L y_R' - y_R y_L' at the midpoint node and the interior node count.
///
/// Both marches carry the solution past the matching node so the derivative
/// there can be reconstructed with the same fourth-order formula used for
/// basis pairs; the matching function then vanishes at eigenvalues to the
/// full accuracy of the scheme. Node pairs left of the midpoint are counted
/// by the left march, the rest by the right march, so no node is counted
/// twice.
fn shoot(q: &[f64], h: f64) -> (f64, usize) {
    let n = q.len();
    debug_assert!(n >= 8);
    let m = n / 2;
    let h2 = h * h;
    let pcoef = |qi: f64| 1.0 - h2 * qi / 12.0;

    let mut nodes = 0usize;

    // left march over nodes 0..=m+1; stored[j] holds y at m-1+j
    let mut stored_l = [0.0f64; 3];
    {
        let mut ym2 = 0.0f64; // y at i-2
        let mut ym1 = h; // y at i-1, from y(edge) = 0, y'(edge) = 1
        for i in 2..=m + 1 {
            let y = (2.0 * (1.0 + 5.0 * h2 * q[i - 1] / 12.0) * ym1 - pcoef(q[i - 2]) * ym2)
                / pcoef(q[i]);
            if i <= m && y != 0.0 && ym1 != 0.0 && (y < 0.0) != (ym1 < 0.0) {
                nodes += 1;
            }
            if i >= m - 1 {
                stored_l[i - (m - 1)] = y;
            }
            ym2 = ym1;
            ym1 = y;
            let mag = ym1.abs();
            if mag > 1e100 {
                ym2 /= mag;
                ym1 /= mag;
                for s in stored_l.iter_mut() {
                    *s /= mag;
                }
            }
        }
    }

    // right march over nodes n-1 down to m-1; stored[j] holds y at m-1+j
    let mut stored_r = [0.0f64; 3];
    {
        let mut yp2 = 0.0f64; // y at i+2
        let mut yp1 = h; // y at i+1
        for i in (m - 1..=n - 3).rev() {
            let y = (2.0 * (1.0 + 5.0 * h2 * q[i + 1] / 12.0) * yp1 - pcoef(q[i + 2]) * yp2)
                / pcoef(q[i]);
            if i >= m && y != 0.0 && yp1 != 0.0 && (y < 0.0) != (yp1 < 0.0) {
                nodes += 1;
            }
            if i <= m + 1 {
                stored_r[i - (m - 1)] = y;
            }
            yp2 = yp1;
            yp1 = y;
            let mag = yp1.abs();
            if mag > 1e100 {
                yp2 /= mag;
                yp1 /= mag;
                for s in stored_r.iter_mut() {
                    *s /= mag;
                }
            }
        }
    }

    let deriv_at_mid = |s: &[f64; 3]| -> f64 {
        ((s[2] - s[0]) / (2.0 * h) - h / 12.0 * (q[m + 1] - q[m - 1]) * s[1])
            / (1.0 + h2 * q[m] / 6.0)
    };
    let (yl, dl) = (stored_l[1], deriv_at_mid(&stored_l));
    let (yr, dr) = (stored_r[1], deriv_at_mid(&stored_r));
    let w_match = yl * dr - yr * dl;
    // scale by the product of full solution magnitudes, not of the cross
    // terms: at even-parity eigenvalues both cross terms vanish together
    // and would otherwise normalize the mismatch to noise of order one
    let scale = ((yl.abs() + h * dl.abs()) * (yr.abs() + h * dr.abs()) / h)
        .max(f64::MIN_POSITIVE);
    (w_match / scale, nodes)
}

/// Find up to `count` bound-state energies in `e_range` by shooting with
/// node counting and bisection (absolute tolerance 1e-9 in E).
///
/// A candidate energy qualifies only if both grid edges are classically
/// forbidden (V > E there): sign changes of the matching function with
/// oscillatory edges are box artifacts, not bound states.
pub fn find_eigenvalues(
    p: &Potential,
    g: &Grid,
    e_range: (f64, f64),
    count: usize,
    c: &Constants,
) -> Result<EigenResult> {
    let (e_lo, e_hi) = e_range;
    if !(e_lo < e_hi) || !e_lo.is_finite() || !e_hi.is_finite() {
        return Err(Error::Config(format!(
            "eigenvalue range must be finite with e_lo < e_hi (got [{e_lo}, {e_hi}])"
        )));
    }
    if count == 0 {
        return Ok(EigenResult { energies: vec![], node_counts: vec![], complete: true });
    }
    let v = p.sample(g)?;
    let qf = c.q_factor();
    let h = g.h();
    let v_edge_min = v[0].min(v[g.n - 1]);

    let mismatch = |e: f64| -> (f64, usize) {
        let q: Vec<f64> = v.iter().map(|vi| qf * (vi - e)).collect();
        shoot(&q, h)
    };

    let steps = (count * 8).max(16);
    let de = (e_hi - e_lo) / steps as f64;
    let mut energies = Vec::new();
    let mut node_counts = Vec::new();
    let mut prev_e = e_lo;
    let (mut prev_w, _) = mismatch(prev_e);
    for s in 1..=steps {
        let e = e_lo + de * s as f64;
        let (w, _) = mismatch(e);
        if prev_w == 0.0 || prev_w * w < 0.0 {
            let root = crate::numerics::bisect(|e| mismatch(e).0, prev_e, e, 1e-9);
            if root < v_edge_min {
                // node count from the glued eigenfunction: counting during
                // the shot is unreliable when a node sits at the match point
                let (psi, _) = eigenfunction(p, root, g, c)?;
                let nodes = psi
                    .windows(2)
                    .skip(1)
                    .take(g.n - 3)
                    .filter(|w| w[0] != 0.0 && w[1] != 0.0 && (w[0] < 0.0) != (w[1] < 0.0))
                    .count();
                energies.push(root);
                node_counts.push(nodes);
            }
            if energies.len() == count {
                break;
            }
        }
        prev_e = e;
        prev_w = w;
    }
    let complete = energies.len() >= count;
    energies.truncate(count);
    node_counts.truncate(count);
    Ok(EigenResult { energies, node_counts, complete })
}

/// Normalized two-sided shooting mismatch at energy `e`; ~0 iff `e` is an
/// eigenvalue of the confined problem on this grid.
pub fn eigenvalue_mismatch(p: &Potential, g: &Grid, e: f64, c: &Constants) -> Result<f64> {
    let v = p.sample(g)?;
    let qf = c.q_factor();
    let q: Vec<f64> = v.iter().map(|vi| qf * (vi - e)).collect();
    Ok(shoot(&q, g.h()).0)
}

/// Bound eigenfunction at energy `e` (assumed close to an eigenvalue):
/// decaying-boundary shot glued at the midpoint, L2-normalized.
/// Returns (values, derivatives) on the grid.
pub fn eigenfunction(
    p: &Potential,
    e: f64,
    g: &Grid,
    c: &Constants,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let v = p.sample(g)?;
    let qf = c.q_factor();
    let q: Vec<f64> = v.iter().map(|vi| qf * (vi - e)).collect();
    let h = g.h();
    let n = g.n;
    let m = n / 2;
    let h2 = h * h;
    let pcoef = |qi: f64| 1.0 - h2 * qi / 12.0;

    // left segment on 0..=m, right segment on m..n, both renormalized
    let mut left = vec![0.0; m + 1];
    left[0] = 0.0;
    left[1] = h;
    for i in 1..m {
        left[i + 1] = (2.0 * (1.0 + 5.0 * h2 * q[i] / 12.0) * left[i]
            - pcoef(q[i - 1]) * left[i - 1])
            / pcoef(q[i + 1]);
        let mag = left[i + 1].abs();
        if mag > 1e100 {
            for x in left[..=i + 1].iter_mut() {
                *x /= mag;
            }
        }
    }
    let mut right = vec![0.0; n - m];
    let last = n - m - 1;
    right[last] = 0.0;
    right[last - 1] = h;
    for i in (1..last).rev() {
        right[i - 1] = (2.0 * (1.0 + 5.0 * h2 * q[m + i] / 12.0) * right[i]
            - pcoef(q[m + i + 1]) * right[i + 1])
            / pcoef(q[m + i - 1]);
        let mag = right[i - 1].abs();
        if mag > 1e100 {
            for x in right[i - 1..].iter_mut() {
                *x /= mag;
            }
        }
    }

    // glue on whichever of value/slope at the midpoint is better conditioned
    let dl = (left[m] - left[m - 1]) / h;
    let dr = (right[1] - right[0]) / h;
    let scale = if left[m].abs() > h * dl.abs() && right[0].abs() > 1e-300 {
        left[m] / right[0]
    } else if dr.abs() > 1e-300 {
        dl / dr
    } else {
        return Err(Error::Classification(format!(
            "could not glue shooting segments at E = {e}; is E an eigenvalue?"
        )));
    };

    let mut psi = vec![0.0; n];
    psi[..=m].copy_from_slice(&left);
    for i in m..n {
        psi[i] = right[i - m] * scale;
    }

    let norm2: f64 = {
        let sq: Vec<f64> = psi.iter().map(|y| y * y).collect();
        *cumulative_integral(&sq, h).last().unwrap()
    };
    if !(norm2 > 0.0) || !norm2.is_finite() {
        return Err(Error::Classification(format!("eigenfunction normalization failed at E = {e}")));
    }
    let inv = 1.0 / norm2.sqrt();
    // sign convention: positive at the peak magnitude
    let peak = psi.iter().cloned().fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
    let sgn = if peak < 0.0 { -1.0 } else { 1.0 };
    for y in psi.iter_mut() {
        *y *= inv * sgn;
    }
    let dpsi = reconstruct_derivative(&psi, &q, h);
    Ok((psi, dpsi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_basis(h_pts: usize) -> BasisPair {
        let g = Grid::new(-3.0, 3.0, h_pts).unwrap();
        solve_basis(&Potential::Free, 0.5, &g, 0.0, &Constants::default()).unwrap()
    }

    #[test]
    fn free_basis_is_cos_sin() {
        let b = free_basis(6001);
        for i in (0..b.grid.n).step_by(97) {
            let x = b.grid.x(i);
            assert!((b.theta1[i] - x.cos()).abs() < 1e-8, "theta1 at x={x}");
            assert!((b.theta2[i] - x.sin()).abs() < 1e-8, "theta2 at x={x}");
            assert!((b.dtheta1[i] + x.sin()).abs() < 1e-8);
            assert!((b.dtheta2[i] - x.cos()).abs() < 1e-8);
        }
        assert!(b.drift <= 1e-8, "W drift {}", b.drift);
    }

    #[test]
    fn canonical_initial_data_imposed() {
        let g = Grid::new(-2.0, 4.0, 1201).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        let b = solve_basis(&p, 1.7, &g, 1.0, &Constants::default()).unwrap();
        let i0 = b.x0_index;
        assert_eq!(b.theta1[i0], 1.0);
        assert_eq!(b.theta2[i0], 0.0);
        assert!((b.dtheta1[i0]).abs() < 1e-10);
        assert!((b.dtheta2[i0] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn anchor_must_be_interior_node() {
        let g = Grid::new(-1.0, 1.0, 201).unwrap();
        let c = Constants::default();
        assert!(solve_basis(&Potential::Free, 1.0, &g, 0.005, &c).is_err());
        assert!(solve_basis(&Potential::Free, 1.0, &g, -1.0, &c).is_err());
    }

    #[test]
    fn corrupted_basis_shows_large_drift() {
        let mut b = free_basis(2001);
        let n = b.grid.n;
        for i in n / 2..n {
            b.theta2[i] = -b.theta2[i];
            b.dtheta2[i] = -b.dtheta2[i];
        }
        assert!(wronskian_drift(&b) > 0.5);
    }

    #[test]
    fn superpose_euler_identity() {
        let b = free_basis(2001);
        let phi = superpose(&b, Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)).unwrap();
        for i in (0..b.grid.n).step_by(131) {
            let x = b.grid.x(i);
            let expect = Complex64::new(x.cos(), x.sin());
            assert!((phi[i] - expect).norm() < 1e-8);
        }
        assert!(superpose(&b, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn superpose_linearity() {
        let g = Grid::new(-2.0, 2.0, 801).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        let b = solve_basis(&p, 0.5, &g, 0.0, &Constants::default()).unwrap();
        let phi = superpose(&b, Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)).unwrap();
        for i in (0..g.n).step_by(37) {
            let expect = 2.0 * b.theta1[i] + 4.0 * b.theta2[i];
            assert!((phi[i].re - expect).abs() < 1e-12);
            assert_eq!(phi[i].im, 0.0);
        }
    }

    #[test]
    fn harmonic_spectrum() {
        let g = Grid::new(-6.0, 6.0, 4001).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        let r = find_eigenvalues(&p, &g, (0.0, 6.0), 5, &Constants::default()).unwrap();
        assert!(r.complete);
        assert_eq!(r.energies.len(), 5);
        for (n, e) in r.energies.iter().enumerate() {
            assert!(
                (e - (n as f64 + 0.5)).abs() < 1e-6,
                "E_{n} = {e}"
            );
            assert_eq!(r.node_counts[n], n, "node count at level {n}");
        }
    }

    #[test]
    fn free_potential_has_no_bound_states() {
        let g = Grid::new(-5.0, 5.0, 2001).unwrap();
        let p = Potential::square_well(0.0, 1.0, 0.0).unwrap();
        let r = find_eigenvalues(&p, &g, (0.0, 6.0), 3, &Constants::default()).unwrap();
        assert!(r.energies.is_empty());
        assert!(!r.complete);
    }

    #[test]
    fn harmonic_eigenfunctions_alternate_parity() {
        let g = Grid::new(-7.0, 7.0, 2801).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        let c = Constants::default();
        for n in 0..4 {
            let e = n as f64 + 0.5;
            let (psi, _) = eigenfunction(&p, e, &g, &c).unwrap();
            let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
            for i in (0..g.n).step_by(67) {
                let j = g.n - 1 - i;
                assert!(
                    (psi[i] - parity * psi[j]).abs() < 1e-5,
                    "level {n} parity at x = {}",
                    g.x(i)
                );
            }
        }
    }

    #[test]
    fn ground_state_matches_gaussian() {
        let g = Grid::new(-7.0, 7.0, 14001).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        let (psi, dpsi) = eigenfunction(&p, 0.5, &g, &Constants::default()).unwrap();
        let norm = std::f64::consts::PI.powf(-0.25);
        for i in (0..g.n).step_by(211) {
            let x = g.x(i);
            let expect = norm * (-0.5 * x * x).exp();
            assert!((psi[i] - expect).abs() < 1e-6, "psi({x})");
            assert!((dpsi[i] + x * expect).abs() < 1e-5, "dpsi({x})");
        }
    }
}
