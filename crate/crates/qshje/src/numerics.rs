//! Shared grid numerics: high-order difference stencils, cumulative
//! quadrature, an adaptive second-order-ODE integrator used as a
//! cross-check for the fixed-step solver, and small root/fit helpers.

/// Fourth-order first derivative on a uniform grid (one-sided at the edges).
pub fn first_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 5, "need at least 5 nodes for fourth-order stencils");
    let mut d = vec![0.0; n];
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5])
        / (12.0 * h);
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
        + 3.0 * f[n - 5])
        / (12.0 * h);
    d
}

/// Fourth-order second derivative on a uniform grid (one-sided at the edges).
pub fn second_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 6, "need at least 6 nodes for fourth-order stencils");
    let h2 = h * h;
    let mut d = vec![0.0; n];
    let edge = |a: [f64; 6], s: &[f64]| -> f64 {
        a.iter().zip(s).map(|(c, v)| c * v).sum::<f64>() / h2
    };
    // one-sided coefficients for f'' at offsets 0..5 and 1-in from the edge
    let c0 = [15.0 / 4.0, -77.0 / 6.0, 107.0 / 6.0, -13.0, 61.0 / 12.0, -5.0 / 6.0];
    let c1 = [5.0 / 6.0, -5.0 / 4.0, -1.0 / 3.0, 7.0 / 6.0, -1.0 / 2.0, 1.0 / 12.0];
    d[0] = edge(c0, &f[0..6]);
    d[1] = edge(c1, &f[0..6]);
    for i in 2..n - 2 {
        d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2])
            / (12.0 * h2);
    }
    let rev = |a: [f64; 6], s: &[f64]| -> f64 {
        a.iter().zip(s.iter().rev()).map(|(c, v)| c * v).sum::<f64>() / h2
    };
    d[n - 2] = rev(c1, &f[n - 6..n]);
    d[n - 1] = rev(c0, &f[n - 6..n]);
    d
}

/// Cumulative integral F(x_i) = int_{x_0}^{x_i} f dx on a uniform grid.
///
/// Trapezoid sums with Euler-Maclaurin endpoint correction, giving fourth
/// order accuracy for smooth integrands.
pub fn cumulative_integral(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    let mut acc = 0.0;
    for i in 1..n {
        acc += 0.5 * h * (f[i - 1] + f[i]);
        out[i] = acc;
    }
    if n >= 5 {
        let df = first_derivative(f, h);
        let c = h * h / 12.0;
        for i in 1..n {
            out[i] -= c * (df[i] - df[0]);
        }
    }
    out
}

/// State of the second-order problem y'' = q(x) y.
#[derive(Clone, Copy, Debug)]
pub struct OdeState {
    pub y: f64,
    pub dy: f64,
}

fn rk4_step<Q: Fn(f64) -> f64>(q: &Q, x: f64, h: f64, s: OdeState) -> OdeState {
    let f = |x: f64, y: f64, dy: f64| (dy, q(x) * y);
    let (k1y, k1d) = f(x, s.y, s.dy);
    let (k2y, k2d) = f(x + 0.5 * h, s.y + 0.5 * h * k1y, s.dy + 0.5 * h * k1d);
    let (k3y, k3d) = f(x + 0.5 * h, s.y + 0.5 * h * k2y, s.dy + 0.5 * h * k2d);
    let (k4y, k4d) = f(x + h, s.y + h * k3y, s.dy + h * k3d);
    OdeState {
        y: s.y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
        dy: s.dy + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d),
    }
}

/// Adaptive step-doubling RK4 integration of y'' = q(x) y from `x0` to `x1`.
///
/// Serves as the general-purpose cross-check for the fixed-step scheme.
pub fn adaptive_solve<Q: Fn(f64) -> f64>(
    q: &Q,
    x0: f64,
    x1: f64,
    state: OdeState,
    rel_tol: f64,
) -> OdeState {
    fn recurse<Q: Fn(f64) -> f64>(
        q: &Q,
        x: f64,
        h: f64,
        s: OdeState,
        tol: f64,
        depth: u32,
    ) -> OdeState {
        let full = rk4_step(q, x, h, s);
        let half = rk4_step(q, x + 0.5 * h, 0.5 * h, rk4_step(q, x, 0.5 * h, s));
        let scale = half.y.abs().max(half.dy.abs()).max(1.0);
        let err = (full.y - half.y).abs().max((full.dy - half.dy).abs());
        if err < tol * scale || depth >= 24 {
            // local extrapolation of the two half steps
            OdeState {
                y: half.y + (half.y - full.y) / 15.0,
                dy: half.dy + (half.dy - full.dy) / 15.0,
            }
        } else {
            let mid = recurse(q, x, 0.5 * h, s, tol, depth + 1);
            recurse(q, x + 0.5 * h, 0.5 * h, mid, tol, depth + 1)
        }
    }
    if x0 == x1 {
        return state;
    }
    let n_seg = (((x1 - x0).abs() / 0.1).ceil() as usize).max(1);
    let h = (x1 - x0) / n_seg as f64;
    let mut s = state;
    let mut x = x0;
    for _ in 0..n_seg {
        s = recurse(q, x, h, s, rel_tol, 0);
        x += h;
    }
    s
}

/// Bisection for a sign change of `f` on [a, b]; requires f(a) f(b) <= 0.
/// The tolerance is floored at a few ULP of the endpoints so large-magnitude
/// brackets terminate.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    let fb = f(b);
    debug_assert!(fa * fb <= 0.0, "bisect needs a bracketing interval");
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let ulp_floor = 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0);
    let tol = tol.max(ulp_floor);
    for _ in 0..256 {
        if b - a <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Least-squares straight line through (x, y); returns (slope, intercept, max residual).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let max_res = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).abs())
        .fold(0.0, f64::max);
    (slope, intercept, max_res)
}

/// max_i |a_i - b_i|.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// max_i |a_i|.
pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).fold(0.0, f64::max)
}
