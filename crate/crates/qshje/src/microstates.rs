//! Algebra linking Schrodinger coefficients (C1, C2) to the two-term
//! decomposition of the wave function and its microstate parameters.
//!
//! Every stationary state phi = C1 th1 + C2 th2 can be written
//!
//!   phi = A [ alpha e^{i S0/hbar} + beta e^{-i S0/hbar} ]
//!
//! with (A, S0) built from a microstate. Dilatation-rotation of the wave
//! function (phi -> Omega phi) multiplies alpha and beta by Omega and leaves
//! S0 and A untouched, so the physically meaningful content of a state is
//! carried by |alpha|, |beta| and the microstate.
//!
//! The inverse map from raw coefficients fixes that gauge canonically: the
//! pair is rotated by chi = -arg(C2), which makes C2' real positive. On the
//! rotated pair the real-frame relations
//!
//!   C1' = mu (|alpha|+|beta|) + i (|alpha|-|beta|),  C2' = |alpha|+|beta|
//!
//! invert in closed form with nu = 0. This choice is exactly equivariant
//! under global phase rotations (which is what "no trace of microstates"
//! means operationally for unbound states: the hidden parameter nu is fixed
//! by the gauge, not by the wave function). Rotation to a real-positive C2'
//! exists precisely when Im(C1 conj(C2)) != 0, i.e. when the state is not
//! real-up-to-a-phase; for bound-like states the inversion errors out and
//! the caller supplies nu as the hidden variable instead.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Constants;
use crate::microstate::Microstate;
use crate::reduced_action::ReducedActionField;

/// Relative threshold deciding real (bound-like) vs complex (unbound-like).
pub const EPS_CLASS: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientPair {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl CoefficientPair {
    pub fn new(c1: Complex64, c2: Complex64) -> Result<Self> {
        if c1.norm() == 0.0 && c2.norm() == 0.0 {
            return Err(Error::ZeroCoefficients);
        }
        Ok(Self { c1, c2 })
    }

    /// Bound-like iff C1/C2 is real up to the classification threshold,
    /// i.e. Im(C1 conj(C2)) vanishes relative to |C1||C2|.
    pub fn is_bound_like(&self) -> bool {
        let cross = (self.c1 * self.c2.conj()).im.abs();
        cross <= EPS_CLASS * (self.c1.norm() * self.c2.norm()).max(f64::MIN_POSITIVE)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// |alpha| = |beta|: real wave function, zero current.
    BoundLike,
    /// |alpha| != |beta|: genuinely complex wave function.
    UnboundLike,
}

/// One decomposition of a physical state: complex weights of the two
/// counter-propagating components plus the microstate that defines S0 and A.
#[derive(Clone, Copy, Debug)]
pub struct Decomposition {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub microstate: Microstate,
    pub classification: Classification,
    /// Gauge-fixing rotation used by the inversion that produced this value.
    pub chi: Option<f64>,
}

impl Decomposition {
    pub fn new(alpha: Complex64, beta: Complex64, microstate: Microstate) -> Result<Self> {
        microstate.validate()?;
        if alpha.norm() == 0.0 && beta.norm() == 0.0 {
            return Err(Error::ZeroCoefficients);
        }
        let classification = if ((alpha.norm() - beta.norm()).abs())
            <= EPS_CLASS * (alpha.norm() + beta.norm())
        {
            Classification::BoundLike
        } else {
            Classification::UnboundLike
        };
        Ok(Self { alpha, beta, microstate, classification, chi: None })
    }

    /// eta = beta / alpha (the relative weight), when alpha != 0.
    pub fn eta(&self) -> Option<Complex64> {
        if self.alpha.norm() > 0.0 {
            Some(self.beta / self.alpha)
        } else {
            None
        }
    }

    /// Phases (a, b) of alpha and beta.
    pub fn phases(&self) -> (f64, f64) {
        (self.alpha.arg(), self.beta.arg())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GaugeFactor {
    pub omega: Complex64,
}

impl GaugeFactor {
    pub fn new(omega: Complex64) -> Result<Self> {
        if omega.norm() == 0.0 {
            return Err(Error::ZeroGauge);
        }
        Ok(Self { omega })
    }
}

/// Forward map: Schrodinger coefficients of a decomposition,
///
///   C1 = alpha e^{i lambda} (mu + i sigma) + beta e^{-i lambda} (mu - i sigma)
///   C2 = alpha e^{i lambda} (gamma + i nu) + beta e^{-i lambda} (gamma - i nu)
///
/// (canonical sigma = gamma = 1 reduces to the familiar mu + i / 1 + i nu
/// pattern; the homogeneous form covers projective microstates too).
pub fn coeffs_from_decomposition(d: &Decomposition) -> CoefficientPair {
    let ms = &d.microstate;
    let el = Complex64::from_polar(1.0, ms.lambda);
    let a = d.alpha * el;
    let b = d.beta * el.conj();
    let c1 = a * Complex64::new(ms.mu, ms.sigma) + b * Complex64::new(ms.mu, -ms.sigma);
    let c2 = a * Complex64::new(ms.gamma, ms.nu) + b * Complex64::new(ms.gamma, -ms.nu);
    CoefficientPair { c1, c2 }
}

/// Canonical inversion for unbound-like states. See the module docs for the
/// gauge choice; the recovered decomposition has nu = 0, lambda = 0 and
/// alpha, beta sharing the phase -chi.
pub fn decomposition_from_coeffs_unbound(cp: &CoefficientPair) -> Result<Decomposition> {
    if cp.c2.norm() == 0.0 {
        return Err(Error::Classification(
            "C2 = 0: the state is proportional to theta1 (real up to a phase); \
             use the bound-state path with an explicit nu"
                .into(),
        ));
    }
    let chi = -cp.c2.arg();
    let rot = Complex64::from_polar(1.0, chi);
    let c1r = cp.c1 * rot;
    let p = cp.c2.norm();
    let q = c1r.im;
    let (lo, hi) = (p.min(q.abs()), p.max(q.abs()));
    if lo <= EPS_CLASS * hi {
        return Err(Error::Classification(format!(
            "state is bound-like (Im(C1 conj C2)/|C1 C2| = {:.2e}); \
             use the bound-state path with an explicit nu",
            q * p / (cp.c1.norm() * p).max(f64::MIN_POSITIVE)
        )));
    }
    let mu = c1r.re / p;
    let ms = Microstate::new(mu, 0.0)?;
    let derot = rot.conj();
    let alpha = derot * Complex64::new(0.5 * (p + q), 0.0);
    let beta = derot * Complex64::new(0.5 * (p - q), 0.0);
    let mut d = Decomposition::new(alpha, beta, ms)?;
    d.chi = Some(chi);
    Ok(d)
}

/// Bound-state inversion: mu = C1/C2 (projective when C2 = 0) and the
/// hidden variable nu supplied by the caller; alpha = beta = C2/2 under the
/// real-state normalization.
pub fn decomposition_from_coeffs_bound(cp: &CoefficientPair, nu_free: f64) -> Result<Decomposition> {
    let scale = cp.c1.norm() + cp.c2.norm();
    if cp.c2.norm() <= EPS_CLASS * scale {
        // phi ~ C1 th1: denominator proportional to th1 alone
        let ms = Microstate::homogeneous(1.0, nu_free, 1.0, 0.0, 0.0).map_err(|_| {
            Error::DegenerateMicrostate(nu_free)
        })?;
        let half = cp.c1 * 0.5;
        let mut d = Decomposition::new(half, half, ms)?;
        d.classification = Classification::BoundLike;
        return Ok(d);
    }
    let ratio = cp.c1 / cp.c2;
    if ratio.im.abs() > EPS_CLASS * (1.0 + ratio.norm()) {
        return Err(Error::Classification(format!(
            "C1/C2 = {ratio} is not real within {EPS_CLASS:.0e}: state is unbound-like"
        )));
    }
    let mu = ratio.re;
    let ms = Microstate::new(mu, nu_free)?;
    let half = cp.c2 * 0.5;
    let mut d = Decomposition::new(half, half, ms)?;
    d.classification = Classification::BoundLike;
    Ok(d)
}

/// Dilatation plus rotation: alpha, beta -> Omega alpha, Omega beta.
/// The microstate (hence S0 and A) is untouched; phi -> Omega phi.
pub fn gauge_transform(d: &Decomposition, g: &GaugeFactor) -> Result<Decomposition> {
    if g.omega.norm() == 0.0 {
        return Err(Error::ZeroGauge);
    }
    Ok(Decomposition {
        alpha: d.alpha * g.omega,
        beta: d.beta * g.omega,
        microstate: d.microstate,
        classification: d.classification,
        chi: None,
    })
}

/// Equivalent decomposition in the half-phase-difference convention: the
/// global phase e^{i(a+b)/2} is rotated away and the half difference of the
/// weight phases moves into lambda, leaving alpha and beta real positive.
/// Returns the new decomposition and the gauge factor that was applied
/// (the represented wave function becomes Omega phi; S0 shifts by the
/// lambda change).
pub fn canonicalize_half_phase(d: &Decomposition) -> (Decomposition, GaugeFactor) {
    let (a, b) = d.phases();
    let omega = Complex64::from_polar(1.0, -(a + b) / 2.0);
    let out = Decomposition {
        alpha: Complex64::new(d.alpha.norm(), 0.0),
        beta: Complex64::new(d.beta.norm(), 0.0),
        microstate: d.microstate.with_lambda(d.microstate.lambda + (a - b) / 2.0),
        classification: d.classification,
        chi: d.chi,
    };
    (out, GaugeFactor { omega })
}

/// Probability current and its two directed components:
///
///   j+ = |alpha|^2 A^2 S0'/m,  j- = -|beta|^2 A^2 S0'/m,  j = j+ + j-.
///
/// In one dimension j is spatially constant (continuity), and it vanishes
/// for bound-like states through |alpha| = |beta|, not through S0' = 0.
#[derive(Clone, Debug)]
pub struct CurrentComponents {
    pub j: Vec<f64>,
    pub j_plus: Vec<f64>,
    pub j_minus: Vec<f64>,
}

pub fn probability_current(
    d: &Decomposition,
    amplitude: &[f64],
    ds0: &[f64],
    c: &Constants,
) -> Result<CurrentComponents> {
    if amplitude.len() != ds0.len() {
        return Err(Error::GridMismatch(format!(
            "amplitude has {} samples, dS0 has {}",
            amplitude.len(),
            ds0.len()
        )));
    }
    let wa = d.alpha.norm_sqr();
    let wb = d.beta.norm_sqr();
    let mut j = Vec::with_capacity(ds0.len());
    let mut jp = Vec::with_capacity(ds0.len());
    let mut jm = Vec::with_capacity(ds0.len());
    for (a, dsi) in amplitude.iter().zip(ds0) {
        let flux = a * a * dsi / c.mass;
        jp.push(wa * flux);
        jm.push(-wb * flux);
        j.push((wa - wb) * flux);
    }
    Ok(CurrentComponents { j, j_plus: jp, j_minus: jm })
}

/// phi = A [ alpha e^{i S0/hbar} + beta e^{-i S0/hbar} ] on the field's grid.
pub fn reconstruct_wavefunction(
    d: &Decomposition,
    f: &ReducedActionField,
    c: &Constants,
) -> Vec<Complex64> {
    f.amplitude
        .iter()
        .zip(&f.s0)
        .map(|(&a, &s)| {
            let e = Complex64::from_polar(1.0, s / c.hbar);
            a * (d.alpha * e + d.beta * e.conj())
        })
        .collect()
}

/// Total amplitude of the reconstructed wave function,
///
///   A [ |alpha|^2 + |beta|^2 + 2 |alpha||beta| cos(2 S0/hbar + a - b) ]^{1/2}.
pub fn wave_amplitude(d: &Decomposition, f: &ReducedActionField, c: &Constants) -> Vec<f64> {
    let (pa, pb) = d.phases();
    let (ma, mb) = (d.alpha.norm(), d.beta.norm());
    f.amplitude
        .iter()
        .zip(&f.s0)
        .map(|(&a, &s)| {
            let arg = 2.0 * s / c.hbar + pa - pb;
            a * (ma * ma + mb * mb + 2.0 * ma * mb * arg.cos()).max(0.0).sqrt()
        })
        .collect()
}
