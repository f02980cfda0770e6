//! Three-dimensional continuity identities and the hidden antisymmetric
//! two-tensor.
//!
//! In 3D the stationary continuity equation div(A^2 grad S0) = 0 says the
//! current density A^2 grad S0 is solenoidal, so it can be written as
//! curl B for some vector potential B. The antisymmetric tensor
//! F^{ij} = d^i B^j - d^j B^i then carries the current as its Levi-Civita
//! contraction, and the continuity equation becomes eps_ijk d^i F^{jk} = 0.
//! This module provides the forward identities on uniform grids; inverting
//! curl B = j is gauge-ambiguous and deliberately not offered.
//!
//! All stencils are fourth-order central differences, one-sided at the
//! boundary planes. Mixed partials along different axes commute exactly,
//! so div(curl B) vanishes to rounding, not merely to truncation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Constants;

/// Uniform box grid; at least 6 nodes per axis for the stencils.
#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct Grid3 {
    pub min: [f64; 3],
    pub max: [f64; 3],
    pub n: [usize; 3],
}

impl Grid3 {
    pub fn new(min: [f64; 3], max: [f64; 3], n: [usize; 3]) -> Result<Self> {
        for a in 0..3 {
            if !(min[a] < max[a]) {
                return Err(Error::Grid(format!(
                    "axis {a}: need min < max (got [{}, {}])",
                    min[a], max[a]
                )));
            }
            if n[a] < 6 {
                return Err(Error::Grid(format!(
                    "axis {a}: need at least 6 nodes for fourth-order stencils (got {})",
                    n[a]
                )));
            }
        }
        Ok(Self { min, max, n })
    }

    pub fn cube(min: f64, max: f64, n: usize) -> Result<Self> {
        Self::new([min; 3], [max; 3], [n; 3])
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        (self.max[axis] - self.min[axis]) / (self.n[axis] - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n[1] + j) * self.n[2] + k
    }

    pub fn coord(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        [
            self.min[0] + self.spacing(0) * i as f64,
            self.min[1] + self.spacing(1) * j as f64,
            self.min[2] + self.spacing(2) * k as f64,
        ]
    }
}

/// Scalar samples on a Grid3, flattened with `Grid3::idx`.
pub type Scalar3 = Vec<f64>;

#[derive(Clone, Debug)]
pub struct VectorField3 {
    pub grid: Grid3,
    pub comps: [Scalar3; 3],
}

impl VectorField3 {
    pub fn zeros(grid: Grid3) -> Self {
        let len = grid.len();
        Self { grid, comps: [vec![0.0; len], vec![0.0; len], vec![0.0; len]] }
    }

    /// Build from a pointwise rule r -> (Bx, By, Bz).
    pub fn from_fn(grid: Grid3, f: impl Fn([f64; 3]) -> [f64; 3]) -> Self {
        let mut out = Self::zeros(grid);
        for i in 0..grid.n[0] {
            for j in 0..grid.n[1] {
                for k in 0..grid.n[2] {
                    let v = f(grid.coord(i, j, k));
                    let id = grid.idx(i, j, k);
                    for a in 0..3 {
                        out.comps[a][id] = v[a];
                    }
                }
            }
        }
        out
    }
}

/// Antisymmetric tensor field stored as its three independent components
/// (F^{23}, F^{31}, F^{12}); F^{ij} = -F^{ji} holds by the storage layout.
#[derive(Clone, Debug)]
pub struct TensorField3 {
    pub grid: Grid3,
    pub f23: Scalar3,
    pub f31: Scalar3,
    pub f12: Scalar3,
}

impl TensorField3 {
    /// F^{ij} at a flat index, any index pair.
    pub fn component(&self, i: usize, j: usize, id: usize) -> f64 {
        match (i, j) {
            (1, 2) => self.f23[id],
            (2, 1) => -self.f23[id],
            (2, 0) => self.f31[id],
            (0, 2) => -self.f31[id],
            (0, 1) => self.f12[id],
            (1, 0) => -self.f12[id],
            _ => 0.0,
        }
    }
}

/// Fourth-order partial derivative of a scalar along one axis.
pub fn partial(f: &Scalar3, g: &Grid3, axis: usize) -> Scalar3 {
    let h = g.spacing(axis);
    let n = g.n;
    let stride = match axis {
        0 => g.n[1] * g.n[2],
        1 => g.n[2],
        _ => 1,
    };
    let len_axis = n[axis];
    let mut out = vec![0.0; f.len()];
    let line = |base: usize, m: usize| base + m * stride;
    // iterate over all lines along `axis`
    let (na, nb) = match axis {
        0 => (n[1], n[2]),
        1 => (n[0], n[2]),
        _ => (n[0], n[1]),
    };
    for a in 0..na {
        for b in 0..nb {
            let base = match axis {
                0 => a * n[2] + b,
                1 => a * n[1] * n[2] + b,
                _ => (a * n[1] + b) * n[2],
            };
            for m in 0..len_axis {
                let v = if m >= 2 && m + 2 < len_axis {
                    (f[line(base, m - 2)] - 8.0 * f[line(base, m - 1)]
                        + 8.0 * f[line(base, m + 1)]
                        - f[line(base, m + 2)])
                        / (12.0 * h)
                } else if m == 0 {
                    (-25.0 * f[line(base, 0)] + 48.0 * f[line(base, 1)]
                        - 36.0 * f[line(base, 2)]
                        + 16.0 * f[line(base, 3)]
                        - 3.0 * f[line(base, 4)])
                        / (12.0 * h)
                } else if m == 1 {
                    (-3.0 * f[line(base, 0)] - 10.0 * f[line(base, 1)]
                        + 18.0 * f[line(base, 2)]
                        - 6.0 * f[line(base, 3)]
                        + f[line(base, 4)])
                        / (12.0 * h)
                } else if m == len_axis - 2 {
                    (3.0 * f[line(base, len_axis - 1)] + 10.0 * f[line(base, len_axis - 2)]
                        - 18.0 * f[line(base, len_axis - 3)]
                        + 6.0 * f[line(base, len_axis - 4)]
                        - f[line(base, len_axis - 5)])
                        / (12.0 * h)
                } else {
                    (25.0 * f[line(base, len_axis - 1)] - 48.0 * f[line(base, len_axis - 2)]
                        + 36.0 * f[line(base, len_axis - 3)]
                        - 16.0 * f[line(base, len_axis - 4)]
                        + 3.0 * f[line(base, len_axis - 5)])
                        / (12.0 * h)
                };
                out[line(base, m)] = v;
            }
        }
    }
    out
}

/// curl B with fourth-order stencils.
pub fn curl(b: &VectorField3) -> VectorField3 {
    let g = b.grid;
    let dy_bz = partial(&b.comps[2], &g, 1);
    let dz_by = partial(&b.comps[1], &g, 2);
    let dz_bx = partial(&b.comps[0], &g, 2);
    let dx_bz = partial(&b.comps[2], &g, 0);
    let dx_by = partial(&b.comps[1], &g, 0);
    let dy_bx = partial(&b.comps[0], &g, 1);
    let len = g.len();
    let mut out = VectorField3::zeros(g);
    for id in 0..len {
        out.comps[0][id] = dy_bz[id] - dz_by[id];
        out.comps[1][id] = dz_bx[id] - dx_bz[id];
        out.comps[2][id] = dx_by[id] - dy_bx[id];
    }
    out
}

/// F^{ij} = d^i B^j - d^j B^i (flat metric: d^i = d_i).
pub fn tensor_from_potential(b: &VectorField3) -> TensorField3 {
    let g = b.grid;
    let dy_bz = partial(&b.comps[2], &g, 1);
    let dz_by = partial(&b.comps[1], &g, 2);
    let dz_bx = partial(&b.comps[0], &g, 2);
    let dx_bz = partial(&b.comps[2], &g, 0);
    let dx_by = partial(&b.comps[1], &g, 0);
    let dy_bx = partial(&b.comps[0], &g, 1);
    let len = g.len();
    let mut f23 = vec![0.0; len];
    let mut f31 = vec![0.0; len];
    let mut f12 = vec![0.0; len];
    for id in 0..len {
        f23[id] = dy_bz[id] - dz_by[id];
        f31[id] = dz_bx[id] - dx_bz[id];
        f12[id] = dx_by[id] - dy_bx[id];
    }
    TensorField3 { grid: g, f23, f31, f12 }
}

/// Current from the tensor: j_i = (1/2) eps_ijk F^{jk}. Equals curl B when
/// F came from `tensor_from_potential` (identical stencil arithmetic).
pub fn contract_to_current(f: &TensorField3) -> VectorField3 {
    const EPS: [((usize, usize, usize), f64); 6] = [
        ((0, 1, 2), 1.0),
        ((0, 2, 1), -1.0),
        ((1, 2, 0), 1.0),
        ((1, 0, 2), -1.0),
        ((2, 0, 1), 1.0),
        ((2, 1, 0), -1.0),
    ];
    let len = f.grid.len();
    let mut out = VectorField3::zeros(f.grid);
    for id in 0..len {
        for &((i, j, k), sign) in &EPS {
            out.comps[i][id] += 0.5 * sign * f.component(j, k, id);
        }
    }
    out
}

/// Divergence of a vector field; the continuity check value.
pub fn continuity_check(j: &VectorField3) -> Scalar3 {
    let g = j.grid;
    let dx = partial(&j.comps[0], &g, 0);
    let dy = partial(&j.comps[1], &g, 1);
    let dz = partial(&j.comps[2], &g, 2);
    (0..g.len()).map(|id| dx[id] + dy[id] + dz[id]).collect()
}

/// Vector potential of the plane-wave current: B = (hbar A0^2 / 2) (k x r),
/// whose curl is the constant current hbar A0^2 k.
pub fn plane_wave_potential(
    k: [f64; 3],
    a0: f64,
    grid: Grid3,
    c: &Constants,
) -> Result<VectorField3> {
    let knorm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    if !(knorm > 0.0) {
        return Err(Error::Config("plane-wave potential needs |k| > 0".into()));
    }
    let pref = 0.5 * c.hbar * a0 * a0;
    Ok(VectorField3::from_fn(grid, |r| {
        [
            pref * (k[1] * r[2] - k[2] * r[1]),
            pref * (k[2] * r[0] - k[0] * r[2]),
            pref * (k[0] * r[1] - k[1] * r[0]),
        ]
    }))
}

/// Smooth random trigonometric field for verification sweeps: each
/// component is a short sum of low-frequency sine modes.
pub fn random_smooth_field(grid: Grid3, rng: &mut impl rand::Rng) -> VectorField3 {
    let mut modes = Vec::new();
    for _ in 0..3 {
        let mut comp_modes = Vec::new();
        for _ in 0..3 {
            let amp: f64 = rng.gen_range(-1.0..1.0);
            let kx: f64 = rng.gen_range(-2.0..2.0);
            let ky: f64 = rng.gen_range(-2.0..2.0);
            let kz: f64 = rng.gen_range(-2.0..2.0);
            let ph: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            comp_modes.push((amp, kx, ky, kz, ph));
        }
        modes.push(comp_modes);
    }
    VectorField3::from_fn(grid, move |r| {
        let mut v = [0.0; 3];
        for a in 0..3 {
            for &(amp, kx, ky, kz, ph) in &modes[a] {
                v[a] += amp * (kx * r[0] + ky * r[1] + kz * r[2] + ph).sin();
            }
        }
        v
    })
}
