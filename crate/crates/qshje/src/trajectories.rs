//! Trajectory representation: time parameterization by the energy
//! derivative of the reduced action, the Floyd and Bohm velocities, the
//! hydrodynamic two-velocity field, and bound-state microstate families.
//!
//! The time along a trajectory is t - t0 = dS0/dE, evaluated at fixed
//! microstate and fixed canonical basis initial data; this is the only
//! reading that makes the energy derivative well defined in this
//! representation, and it makes t(x0) = 0 automatically because the anchor
//! value of S0 does not depend on E. The trajectory velocity consistent
//! with that time is
//!
//!   v = (dS0/dx) / ( m (1 - dV_B/dE) ),
//!
//! which differs from the Bohm guidance velocity dS0/dx / m wherever the
//! quantum potential responds to the energy. Differentiating the stationary
//! Hamilton-Jacobi equation by E gives v * dt/dx = 1 identically, which is
//! asserted numerically as the duality check.
//!
//! For the free particle the uniform-motion family is reproduced by the
//! energy-adapted plane-wave microstate (amplitude identically 1 at every
//! energy); a fixed canonical-basis microstate has an energy-dependent
//! amplitude and therefore genuinely non-uniform trajectories.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Constants, Grid};
use crate::microstate::{Microstate, WaveDirection};
use crate::microstates::{probability_current, wave_amplitude, Decomposition};
use crate::potential::Potential;
use crate::reduced_action::{reduced_action, ReducedActionField};
use crate::schrodinger::{eigenvalue_mismatch, solve_basis};

/// Threshold on |1 - dV_B/dE| below which the Floyd velocity is reported
/// as singular at a node.
const FLOYD_SINGULAR_TOL: f64 = 1e-3;
/// Nodes with |1 - dV_B/dE| below this are excluded from the duality metric.
const DUALITY_CLEAN_TOL: f64 = 5e-2;
/// Relative floor for the squared total amplitude in hydrodynamic masks:
/// grid samples this far below the peak are treated as nodes of the wave
/// function and excluded from the velocity split.
const NODE_MASK_REL: f64 = 1e-9;

/// One trajectory: Jacobi time and velocity fields for a microstate at E.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub microstate: Microstate,
    pub energy: f64,
    pub xs: Vec<f64>,
    /// t(x) - t(x0) = dS0/dE by central difference in E.
    pub t: Vec<f64>,
    /// dt/dx, from the energy derivative of dS0/dx (no x-differencing).
    pub dtdx: Vec<f64>,
    pub v_floyd: Vec<f64>,
    pub v_bohm: Vec<f64>,
    pub v_plus: Vec<f64>,
    pub v_minus: Vec<f64>,
    /// Energy step actually used after any refinement.
    pub de_used: f64,
    /// Nodes where the Floyd denominator 1 - dV_B/dE nearly vanishes.
    pub floyd_singular: Vec<usize>,
    /// Nodes where the total wave amplitude vanishes (hydrodynamic mask).
    pub hydro_masked: Vec<usize>,
    /// max |t_dE - t_dE/2| / (1 + max|t|): step-halving consistency.
    pub richardson_deviation: f64,
    /// max |v_floyd * dt/dx - 1| over clean interior nodes.
    pub jacobi_floyd_max_dev: f64,
    pub x0_index: usize,
    /// Reduced-action field at the center energy.
    pub field: ReducedActionField,
}

impl Trajectory {
    /// Indices where dt/dx changes sign (classical turning points of the
    /// time parameterization). Reported, not interpreted.
    pub fn turning_points(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 1..self.dtdx.len() {
            if (self.dtdx[i] < 0.0) != (self.dtdx[i - 1] < 0.0) {
                out.push(i);
            }
        }
        out
    }

    /// All positions x with t(x) = t, found per monotone segment by
    /// Hermite-cubic interpolation of (t, x). No global inverse is claimed.
    pub fn invert_at(&self, t_query: f64) -> Vec<f64> {
        let mut hits = Vec::new();
        for i in 1..self.t.len() {
            let (t0, t1) = (self.t[i - 1], self.t[i]);
            if (t_query - t0) * (t_query - t1) > 0.0 {
                continue;
            }
            if t0 == t1 {
                continue;
            }
            let (x0, x1) = (self.xs[i - 1], self.xs[i]);
            // dx/dt at the segment ends, guarded against turning points
            let s = (t_query - t0) / (t1 - t0);
            let d0 = self.dtdx[i - 1];
            let d1 = self.dtdx[i];
            if d0.abs() > 1e-9 && d1.abs() > 1e-9 && (d0 < 0.0) == (d1 < 0.0) {
                let (m0, m1) = ((t1 - t0) / d0, (t1 - t0) / d1);
                let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
                let h10 = s * (1.0 - s) * (1.0 - s);
                let h01 = s * s * (3.0 - 2.0 * s);
                let h11 = s * s * (s - 1.0);
                hits.push(h00 * x0 + h10 * m0 + h01 * x1 + h11 * m1);
            } else {
                hits.push(x0 + s * (x1 - x0));
            }
        }
        hits
    }
}

/// Projective-capable specification of the bound-state ratio mu = C1/C2.
#[derive(Clone, Copy, Debug)]
pub enum MuSpec {
    Finite(f64),
    /// C2 = 0: the state is proportional to theta1.
    Projective,
}

impl MuSpec {
    fn microstate(&self, nu: f64) -> Result<Microstate> {
        match self {
            MuSpec::Finite(mu) => Microstate::new(*mu, nu),
            MuSpec::Projective => Microstate::homogeneous(1.0, nu, 1.0, 0.0, 0.0),
        }
    }
}

pub fn default_energy_step(energy: f64) -> f64 {
    1e-5 * energy.abs().max(1.0)
}

/// Core builder: Jacobi time plus all velocity fields for a microstate rule
/// (fixed or energy-adapted) with the weights (alpha, beta) of the two
/// components used for the hydrodynamic split.
pub fn trajectory_with(
    p: &Potential,
    ms_at: &dyn Fn(f64) -> Result<Microstate>,
    weights: (Complex64, Complex64),
    energy: f64,
    g: &Grid,
    x0: f64,
    de: Option<f64>,
    c: &Constants,
) -> Result<Trajectory> {
    let mut de = de.unwrap_or_else(|| default_energy_step(energy));
    let field_at = |e: f64| -> Result<ReducedActionField> {
        let ms = ms_at(e)?;
        let b = solve_basis(p, e, g, x0, c)?;
        reduced_action(&b, &ms, c)
    };
    let center = field_at(energy)?;

    let mut attempt = 0;
    let (fp, fm, fp_half, fm_half) = loop {
        let fp = field_at(energy + de)?;
        let fm = field_at(energy - de)?;
        let slip = crate::numerics::max_abs_diff(&fp.s0, &fm.s0);
        if slip <= c.hbar * std::f64::consts::FRAC_PI_2 {
            let fph = field_at(energy + 0.5 * de)?;
            let fmh = field_at(energy - 0.5 * de)?;
            break (fp, fm, fph, fmh);
        }
        attempt += 1;
        if attempt > 4 {
            return Err(Error::EnergyBranchMismatch(slip / c.hbar));
        }
        de *= 0.5;
    };

    let n = g.n;
    let inv2de = 1.0 / (2.0 * de);
    let mut t = Vec::with_capacity(n);
    let mut dtdx = Vec::with_capacity(n);
    let mut v_floyd = Vec::with_capacity(n);
    let mut floyd_singular = Vec::new();
    for i in 0..n {
        t.push((fp.s0[i] - fm.s0[i]) * inv2de);
        dtdx.push((fp.ds0[i] - fm.ds0[i]) * inv2de);
        let dvb_de = (fp.vb[i] - fm.vb[i]) * inv2de;
        let denom = 1.0 - dvb_de;
        if denom.abs() < FLOYD_SINGULAR_TOL {
            floyd_singular.push(i);
        }
        v_floyd.push(center.ds0[i] / (c.mass * denom));
    }
    let t_half: Vec<f64> = (0..n).map(|i| (fp_half.s0[i] - fm_half.s0[i]) / de).collect();
    let t_scale = 1.0 + crate::numerics::max_abs(&t_half);
    let richardson_deviation = crate::numerics::max_abs_diff(&t, &t_half) / t_scale;

    let v_bohm: Vec<f64> = center.ds0.iter().map(|d| d / c.mass).collect();

    // hydrodynamic split on the center field
    let d = Decomposition::new(weights.0, weights.1, center.microstate)?;
    let hydro = hydrodynamic_velocities(&d, &center, c)?;

    let mut jacobi_floyd_max_dev = 0.0f64;
    for i in g.interior() {
        let dvb_de = (fp.vb[i] - fm.vb[i]) * inv2de;
        if (1.0 - dvb_de).abs() < DUALITY_CLEAN_TOL {
            continue;
        }
        jacobi_floyd_max_dev = jacobi_floyd_max_dev.max((v_floyd[i] * dtdx[i] - 1.0).abs());
    }

    Ok(Trajectory {
        microstate: center.microstate,
        energy,
        xs: g.xs(),
        t,
        dtdx,
        v_floyd,
        v_bohm,
        v_plus: hydro.v_plus,
        v_minus: hydro.v_minus,
        de_used: de,
        floyd_singular,
        hydro_masked: hydro.masked,
        richardson_deviation,
        jacobi_floyd_max_dev,
        x0_index: center.x0_index,
        field: center,
    })
}

/// Jacobi-time trajectory for a fixed microstate. The hydrodynamic split
/// uses the real-state weights alpha = beta = 1/2 unless the caller builds
/// the trajectory through [`trajectory_with`].
pub fn jacobi_time(
    p: &Potential,
    ms: &Microstate,
    energy: f64,
    g: &Grid,
    x0: f64,
    de: Option<f64>,
    c: &Constants,
) -> Result<Trajectory> {
    let fixed = *ms;
    trajectory_with(
        p,
        &move |_| Ok(fixed),
        (Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)),
        energy,
        g,
        x0,
        de,
        c,
    )
}

/// Uniform-motion family of the free particle: the plane-wave microstate is
/// re-adapted at each energy so the amplitude stays 1 and t(x) is linear.
pub fn free_wave_trajectory(
    direction: WaveDirection,
    energy: f64,
    g: &Grid,
    x0: f64,
    de: Option<f64>,
    c: &Constants,
) -> Result<Trajectory> {
    let cc = *c;
    let weights = match direction {
        WaveDirection::Positive => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        WaveDirection::Negative => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
    };
    trajectory_with(
        &Potential::Free,
        &move |e| Microstate::free_wave(e, &cc, direction),
        weights,
        energy,
        g,
        x0,
        de,
        c,
    )
}

/// Floyd velocity field for a fixed microstate; returns the velocity and
/// the list of nodes where the denominator 1 - dV_B/dE nearly vanishes.
pub fn floyd_velocity(
    p: &Potential,
    ms: &Microstate,
    energy: f64,
    g: &Grid,
    x0: f64,
    de: Option<f64>,
    c: &Constants,
) -> Result<(Vec<f64>, Vec<usize>)> {
    let tr = jacobi_time(p, ms, energy, g, x0, de, c)?;
    Ok((tr.v_floyd, tr.floyd_singular))
}

/// Bohm guidance velocity dS0/dx / m.
pub fn bohm_velocity(f: &ReducedActionField, c: &Constants) -> Vec<f64> {
    f.ds0.iter().map(|d| d / c.mass).collect()
}

/// Hydrodynamic velocities of the two counter-propagating components.
#[derive(Clone, Debug)]
pub struct HydroVelocities {
    pub v_plus: Vec<f64>,
    pub v_minus: Vec<f64>,
    /// Nodes excluded because the total amplitude vanishes there.
    pub masked: Vec<usize>,
}

/// v+- = j+- / curly-A^2 with the total amplitude from the two-term form;
/// nodes of the wave function are masked (velocities set to NaN there).
pub fn hydrodynamic_velocities(
    d: &Decomposition,
    f: &ReducedActionField,
    c: &Constants,
) -> Result<HydroVelocities> {
    let cur = probability_current(d, &f.amplitude, &f.ds0, c)?;
    let total = wave_amplitude(d, f, c);
    let peak = total.iter().cloned().fold(0.0, f64::max);
    let floor = NODE_MASK_REL * peak * peak;
    let mut v_plus = Vec::with_capacity(total.len());
    let mut v_minus = Vec::with_capacity(total.len());
    let mut masked = Vec::new();
    for i in 0..total.len() {
        let a2 = total[i] * total[i];
        if a2 <= floor {
            masked.push(i);
            v_plus.push(f64::NAN);
            v_minus.push(f64::NAN);
        } else {
            v_plus.push(cur.j_plus[i] / a2);
            v_minus.push(cur.j_minus[i] / a2);
        }
    }
    Ok(HydroVelocities { v_plus, v_minus, masked })
}

/// Bound-state microstate family: one trajectory per hidden-variable value.
#[derive(Clone, Debug)]
pub struct MicrostateFamily {
    pub trajectories: Vec<Trajectory>,
    /// Normalized shooting mismatch of E on this grid.
    pub eigen_mismatch: f64,
    /// False => E is not an eigenvalue within tolerance and the family
    /// members need not describe one physical state.
    pub eigen_matched: bool,
}

/// Eigenvalue acceptance threshold for the family warning flag.
const EIGEN_MISMATCH_TOL: f64 = 1e-4;

pub fn microstate_family(
    p: &Potential,
    mu: MuSpec,
    nu_list: &[f64],
    energy: f64,
    g: &Grid,
    x0: f64,
    de: Option<f64>,
    c: &Constants,
) -> Result<MicrostateFamily> {
    let mismatch = eigenvalue_mismatch(p, g, energy, c)?;
    let weights = (Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0));
    let mut trajectories = Vec::with_capacity(nu_list.len());
    for &nu in nu_list {
        let ms = mu.microstate(nu)?;
        let tr = trajectory_with(p, &move |_| Ok(ms), weights, energy, g, x0, de, c)?;
        trajectories.push(tr);
    }
    Ok(MicrostateFamily {
        trajectories,
        eigen_mismatch: mismatch,
        eigen_matched: mismatch.abs() <= EIGEN_MISMATCH_TOL,
    })
}

/// Pairwise sup-distances between the time curves of a family.
pub fn pairwise_sup_distances(family: &[Trajectory]) -> Vec<((usize, usize), f64)> {
    let mut out = Vec::new();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            out.push(((i, j), crate::numerics::max_abs_diff(&family[i].t, &family[j].t)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::microstates::reconstruct_wavefunction;
    use crate::numerics::{linear_fit, max_abs, max_abs_diff};
    use crate::schrodinger::solve_basis;

    fn c() -> Constants {
        Constants::default()
    }

    /// Energy step for the uniform-motion checks: large enough that basis
    /// solver noise divided by 2 dE stays below the linearity tolerance,
    /// small enough that the O(dE^2) slope bias stays below 1e-6.
    const FREE_DE: f64 = 5e-4;

    #[test]
    fn free_particle_uniform_motion() {
        let g = Grid::new(-3.0, 3.0, 1501).unwrap();
        let tr =
            free_wave_trajectory(WaveDirection::Negative, 0.5, &g, 0.0, Some(FREE_DE), &c())
                .unwrap();
        // t(x) linear with slope -sqrt(m/2E) on the dS0 < 0 branch
        let (slope, _, res) = linear_fit(&tr.xs, &tr.t);
        assert!(res <= 1e-8, "linearity residual {res}");
        assert!((slope + 1.0).abs() < 1e-6, "slope {slope}");
        // v identically -1 and equal to the Bohm velocity (dV_B/dE = 0)
        for i in (0..g.n).step_by(59) {
            assert!((tr.v_floyd[i] + 1.0).abs() < 1e-6, "v_floyd {}", tr.v_floyd[i]);
            assert!((tr.v_bohm[i] + 1.0).abs() < 1e-8);
        }
        assert!(tr.floyd_singular.is_empty());
        assert!(tr.t[tr.x0_index].abs() < 1e-12);
    }

    #[test]
    fn free_particle_positive_branch_slope() {
        let g = Grid::new(-3.0, 3.0, 1501).unwrap();
        let tr =
            free_wave_trajectory(WaveDirection::Positive, 2.0, &g, 0.0, Some(FREE_DE), &c())
                .unwrap();
        let (slope, _, res) = linear_fit(&tr.xs, &tr.t);
        assert!(res <= 1e-8);
        // dS0 > 0, E = 2 => slope = +sqrt(m/2E) = 0.5
        assert!((slope - 0.5).abs() < 1e-6, "slope {slope}");
    }

    #[test]
    fn richardson_step_halving_is_consistent() {
        let g = Grid::new(-3.0, 3.0, 1201).unwrap();
        let ms = Microstate::new(-1.0, 0.5).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        let tr = jacobi_time(&p, &ms, 0.5, &g, 1.0, None, &c()).unwrap();
        assert!(tr.richardson_deviation <= 1e-4, "richardson {}", tr.richardson_deviation);
    }

    #[test]
    fn jacobi_floyd_duality_for_harmonic_microstates() {
        let g = Grid::new(-3.0, 3.0, 1201).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        for &(mu, nu) in &[(-1.0, -2.0), (-1.0, 0.0), (-1.0, 2.0)] {
            let ms = Microstate::new(mu, nu).unwrap();
            let tr = jacobi_time(&p, &ms, 0.5, &g, 1.0, None, &c()).unwrap();
            assert!(
                tr.jacobi_floyd_max_dev <= 1e-4,
                "duality dev {} at nu = {nu}",
                tr.jacobi_floyd_max_dev
            );
        }
    }

    #[test]
    fn bound_velocity_nonzero_while_current_vanishes() {
        let g = Grid::new(-3.0, 3.0, 1201).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        let cc = c();
        let b = solve_basis(&p, 0.5, &g, 1.0, &cc).unwrap();
        let ms = Microstate::new(-1.0, 2.0).unwrap();
        let f = reduced_action(&b, &ms, &cc).unwrap();
        let v = bohm_velocity(&f, &cc);
        assert!(v.iter().all(|vi| vi.abs() > 0.0));
        let d = Decomposition::new(Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0), ms).unwrap();
        let cur = probability_current(&d, &f.amplitude, &f.ds0, &cc).unwrap();
        assert!(max_abs(&cur.j) < 1e-14);
    }

    #[test]
    fn hydro_split_single_component() {
        let g = Grid::new(-3.0, 3.0, 1201).unwrap();
        let cc = c();
        let b = solve_basis(&Potential::Free, 0.5, &g, 0.0, &cc).unwrap();
        let ms = Microstate::new(0.0, 0.0).unwrap();
        let f = reduced_action(&b, &ms, &cc).unwrap();
        let d = Decomposition::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), ms).unwrap();
        let hv = hydrodynamic_velocities(&d, &f, &cc).unwrap();
        assert!(hv.masked.is_empty());
        for i in (0..g.n).step_by(71) {
            assert!((hv.v_plus[i] - f.ds0[i]).abs() < 1e-12); // m = 1
            assert_eq!(hv.v_minus[i], 0.0);
        }
    }

    #[test]
    fn hydro_split_equal_weights_opposite() {
        let g = Grid::new(-3.0, 3.0, 1201).unwrap();
        let cc = c();
        let b = solve_basis(&Potential::Free, 0.5, &g, 0.0, &cc).unwrap();
        // S0 = pi/2 - x here, so cos(S0) = sin(x) has a node on the grid
        let ms = Microstate::new(0.0, 0.0).unwrap();
        let f = reduced_action(&b, &ms, &cc).unwrap();
        let d = Decomposition::new(Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0), ms).unwrap();
        let hv = hydrodynamic_velocities(&d, &f, &cc).unwrap();
        for i in (0..g.n).step_by(37) {
            if hv.v_plus[i].is_nan() {
                continue;
            }
            assert!((hv.v_plus[i] + hv.v_minus[i]).abs() < 1e-12);
        }
        assert!(!hv.masked.is_empty());
    }

    #[test]
    fn hydro_sum_reproduces_current() {
        let g = Grid::new(-3.0, 3.0, 1201).unwrap();
        let cc = c();
        let b = solve_basis(&Potential::Free, 1.0, &g, 0.0, &cc).unwrap();
        let ms = Microstate::new(0.9, -0.2).unwrap();
        let f = reduced_action(&b, &ms, &cc).unwrap();
        let d = Decomposition::new(Complex64::new(0.8, 0.1), Complex64::new(0.3, -0.2), ms).unwrap();
        let hv = hydrodynamic_velocities(&d, &f, &cc).unwrap();
        let cur = probability_current(&d, &f.amplitude, &f.ds0, &cc).unwrap();
        let amp = wave_amplitude(&d, &f, &cc);
        let jmax = max_abs(&cur.j);
        for i in 0..g.n {
            if hv.v_plus[i].is_nan() {
                continue;
            }
            let lhs = amp[i] * amp[i] * (hv.v_plus[i] + hv.v_minus[i]);
            assert!((lhs - cur.j[i]).abs() <= 1e-9 * jmax.max(1e-30));
        }
    }

    #[test]
    fn family_members_share_the_state_but_not_the_clock() {
        let g = Grid::new(-4.0, 4.0, 1601).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        let cc = c();
        let fam =
            microstate_family(&p, MuSpec::Finite(-1.0), &[-2.0, 0.0, 2.0], 0.5, &g, 1.0, None, &cc)
                .unwrap();
        assert!(fam.eigen_matched, "mismatch {}", fam.eigen_mismatch);
        assert_eq!(fam.trajectories.len(), 3);

        // identical |phi|^2 across the family (exact algebra here)
        let weights = (Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0));
        let mut densities: Vec<Vec<f64>> = Vec::new();
        for tr in &fam.trajectories {
            let d = Decomposition::new(weights.0, weights.1, tr.microstate).unwrap();
            let phi = reconstruct_wavefunction(&d, &tr.field, &cc);
            densities.push(phi.iter().map(|z| z.norm_sqr()).collect());
        }
        let scale = max_abs(&densities[0]);
        for d in &densities[1..] {
            assert!(max_abs_diff(&densities[0], d) <= 1e-10 * scale);
        }

        // pairwise distinct time curves
        for ((i, j), dist) in pairwise_sup_distances(&fam.trajectories) {
            assert!(dist > 1e-2, "t curves {i},{j} too close: {dist}");
        }

        // every member solves the stationary equation at this energy
        for tr in &fam.trajectories {
            let m = max_abs(&tr.field.residual[1..g.n - 1]);
            assert!(m <= 1e-5, "family residual {m}");
        }
    }

    #[test]
    fn family_warns_off_eigenvalue() {
        let g = Grid::new(-4.0, 4.0, 801).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        let fam =
            microstate_family(&p, MuSpec::Finite(-1.0), &[0.0], 0.62, &g, 1.0, None, &c()).unwrap();
        assert!(!fam.eigen_matched);
        assert_eq!(fam.trajectories.len(), 1);
    }

    #[test]
    fn turning_points_and_inversion() {
        let g = Grid::new(-3.5, 3.5, 1401).unwrap();
        let p = Potential::harmonic(1.0, 1.0).unwrap();
        let ms = Microstate::new(-1.0, 2.0).unwrap();
        let tr = jacobi_time(&p, &ms, 0.5, &g, 1.0, None, &c()).unwrap();
        let tp = tr.turning_points();
        // bound trajectories oscillate: the clock cannot be globally monotone
        assert!(!tp.is_empty());
        // inversion returns positions that map back to the queried time
        let tq = 0.5 * (tr.t[100] + tr.t[101]);
        for x in tr.invert_at(tq) {
            assert!(x >= g.x_min && x <= g.x_max);
        }
    }
}
