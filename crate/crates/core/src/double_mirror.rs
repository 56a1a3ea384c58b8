//! Bound states of a particle confined between two horizontal mirrors a
//! distance L apart, in a uniform field: eigenvalue solving, normalized
//! wave functions, momentum amplitudes and spectral functions.
//!
//! This module works in the micron system: heights in um, wavenumbers in
//! 1/um, densities in 1/um.  In the scaled height xi = z / z0 a mode with
//! scaled turning height u solves y'' = (xi - u) y with y(0) = y(Lambda) = 0
//! where Lambda = L / z0; u is a root of the boundary determinant
//! Ai(-u) Bi(Lambda - u) - Bi(-u) Ai(Lambda - u).

use crate::airy;
use crate::quadrature::{self, QuadratureError, QuadratureSpec, TrigKind};
use crate::scales::{constants, ScaleSystem};
use num_complex::Complex64;
use std::f64::consts::PI;

/// One cavity mode.  Public fields are in the micron system (um, peV).
#[derive(Clone, Copy, Debug)]
pub struct DoubleMirrorMode {
    /// 1-based mode index.
    pub m: usize,
    /// Mirror separation L, um.
    pub length_um: f64,
    /// Mode energy, peV.  Equals zbar_um times m g exactly.
    pub energy_pev: f64,
    /// Turning height z-bar, um.
    pub zbar_um: f64,
    /// Boundary coefficient Ai(-u) at the lower mirror.
    pub coeff_a: f64,
    /// Boundary coefficient Bi(-u) at the lower mirror.
    pub coeff_b: f64,
    /// Positive norm constant of the scaled mode.
    pub norm: f64,
    z0_um: f64,
    energy_joule: f64,
    u: f64,
    lambda: f64,
    sign: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum ModeError {
    #[error("mirror separation must be positive and finite, got {0} um")]
    BadLength(f64),
    #[error("no root of the boundary determinant found for mode {m} below u = {scanned}")]
    RootNotFound { m: usize, scanned: f64 },
    #[error("mode {m}: norm-squared came out non-positive ({value:e}); root is spurious")]
    NonPositiveNormSquared { m: usize, value: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Boundary determinant whose roots in u are the mode turning heights.
fn determinant(u: f64, lambda: f64) -> f64 {
    let lo = airy::airy(-u);
    let hi = airy::airy(lambda - u);
    lo.ai * hi.bi - lo.bi * hi.ai
}

/// du-derivative of the determinant.
fn determinant_slope(u: f64, lambda: f64) -> f64 {
    let lo = airy::airy(-u);
    let hi = airy::airy(lambda - u);
    -lo.aip * hi.bi - lo.ai * hi.bip + lo.bip * hi.ai + lo.bi * hi.aip
}

/// First `m_max` cavity modes for mirror separation `length_um`.
///
/// Root isolation scans u in steps of 1/4 (that is, z0/4 in physical
/// height); consecutive roots are farther apart than that for every
/// m <= 20 whatever the separation.  Each bracket is narrowed by bisection
/// and polished with one Newton step where the determinant slope is
/// finite.
pub fn solve_modes(
    scales: &ScaleSystem,
    length_um: f64,
    m_max: usize,
) -> Result<Vec<DoubleMirrorMode>, ModeError> {
    if !(length_um.is_finite() && length_um > 0.0) {
        return Err(ModeError::BadLength(length_um));
    }
    assert!(m_max >= 1 && m_max <= 20, "mode count supported up to 20");
    let z0_um = scales.z0() / constants::MICRON;
    let lambda = length_um / z0_um;
    // Past u = Lambda the spectrum turns box-like, u_m ~ (m pi / Lambda)^2
    // + Lambda / 2; pad generously.
    let u_cap = lambda + 1.5 * (m_max as f64 * PI / lambda).powi(2) + 20.0;
    let step = 0.25;
    let mut modes = Vec::with_capacity(m_max);
    let mut u_lo = 0.0;
    let mut d_lo = determinant(u_lo, lambda);
    while modes.len() < m_max {
        let u_hi = u_lo + step;
        if u_hi > u_cap {
            return Err(ModeError::RootNotFound { m: modes.len() + 1, scanned: u_cap });
        }
        let d_hi = determinant(u_hi, lambda);
        if d_lo == 0.0 || d_lo.signum() != d_hi.signum() {
            let root = refine_root(u_lo, u_hi, d_lo, lambda);
            modes.push(build_mode(scales, modes.len() + 1, length_um, root, lambda, z0_um)?);
        }
        u_lo = u_hi;
        d_lo = d_hi;
    }
    Ok(modes)
}

fn refine_root(mut lo: f64, mut hi: f64, mut d_lo: f64, lambda: f64) -> f64 {
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let d_mid = determinant(mid, lambda);
        if d_mid == 0.0 {
            return mid;
        }
        if d_mid.signum() == d_lo.signum() {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }
    let mut root = 0.5 * (lo + hi);
    let slope = determinant_slope(root, lambda);
    let value = determinant(root, lambda);
    if slope.is_finite() && value.is_finite() && slope != 0.0 {
        let polished = root - value / slope;
        if polished > lo && polished < hi {
            root = polished;
        }
    }
    root
}

fn build_mode(
    scales: &ScaleSystem,
    m: usize,
    length_um: f64,
    u: f64,
    lambda: f64,
    z0_um: f64,
) -> Result<DoubleMirrorMode, ModeError> {
    let lo = airy::airy(-u);
    let hi = airy::airy(lambda - u);
    let mut a = lo.ai;
    let b = lo.bi;
    // Deep-tunneling regime: the root pins Ai(-u) to pure roundoff while
    // Bi(lambda - u) is exponentially large, so their product would swamp
    // the mode.  Rebuild the Ai coefficient from the upper-wall condition
    // a Bi(lambda - u) = b Ai(lambda - u), which the root satisfies to
    // machine precision; below the threshold Bi is small enough that the
    // direct value is accurate (and above u = lambda, Bi(lambda - u) may
    // vanish, so the rebuilt form must not be used there).
    if lambda - u > 6.0 {
        a = b * hi.ai / hi.bi;
    }
    // Slopes of y = b Ai(xi - u) - a Bi(xi - u) at the two walls; the norm
    // identity for y'' = (xi - u) y with vanishing wall values gives
    // integral of y^2 over [0, Lambda] = y'(0)^2 - y'(Lambda)^2 exactly.
    let q0 = b * lo.aip - a * lo.bip;
    let q_lambda = b * hi.aip - a * hi.bip;
    let norm_sq = q0 * q0 - q_lambda * q_lambda;
    if !(norm_sq.is_finite() && norm_sq > 0.0) {
        return Err(ModeError::NonPositiveNormSquared { m, value: norm_sq });
    }
    let energy_joule = u * scales.e0();
    Ok(DoubleMirrorMode {
        m,
        length_um,
        energy_pev: energy_joule / constants::PICO_EV,
        zbar_um: u * z0_um,
        coeff_a: a,
        coeff_b: b,
        norm: norm_sq.sqrt(),
        z0_um,
        energy_joule,
        u,
        lambda,
        sign: q0.signum(),
    })
}

impl DoubleMirrorMode {
    /// Normalized scaled mode y-hat(xi), unit norm on [0, Lambda], zero
    /// outside, with positive slope at the lower wall.
    pub fn scaled_wave(&self, xi: f64) -> f64 {
        if !(0.0..=self.lambda).contains(&xi) {
            return 0.0;
        }
        let v = airy::airy(xi - self.u);
        self.sign * (self.coeff_b * v.ai - self.coeff_a * v.bi) / self.norm
    }

    /// d y-hat / d xi, one-sided at the walls.
    pub fn scaled_slope(&self, xi: f64) -> f64 {
        if !(0.0..=self.lambda).contains(&xi) {
            return 0.0;
        }
        let v = airy::airy(xi - self.u);
        self.sign * (self.coeff_b * v.aip - self.coeff_a * v.bip) / self.norm
    }

    /// Stationary spatial profile at height z (um), in 1/sqrt(um); the
    /// squared profile integrates to 1 over the slit.
    pub fn spatial(&self, z_um: f64) -> f64 {
        self.scaled_wave(z_um / self.z0_um) / self.z0_um.sqrt()
    }

    /// Full wave function with its time phase e^{-i E t / hbar}; t in s.
    pub fn wavefunction(&self, z_um: f64, t: f64) -> Complex64 {
        Complex64::from_polar(1.0, -self.energy_joule / constants::HBAR * t) * self.spatial(z_um)
    }

    /// Scaled turning height u = zbar / z0.
    pub fn scaled_turning(&self) -> f64 {
        self.u
    }

    /// Scaled separation Lambda = L / z0.
    pub fn scaled_length(&self) -> f64 {
        self.lambda
    }

    /// Mode energy in joule.
    pub fn energy_joule(&self) -> f64 {
        self.energy_joule
    }

    /// z0 in um for this mode's scale system.
    pub fn z0_um(&self) -> f64 {
        self.z0_um
    }

    /// Momentum amplitude F_m(k) at t = 0, k in 1/um:
    /// (2 pi)^{-1/2} times the integral of psi(z) e^{-i k z} over the slit.
    /// Later times only rotate it by the global phase.
    pub fn momentum_amplitude(
        &self,
        k: f64,
        spec: &QuadratureSpec,
    ) -> Result<Complex64, QuadratureError> {
        let c = quadrature::oscillatory_integrate(
            |z| self.spatial(z),
            0.0,
            self.length_um,
            k,
            TrigKind::Cosine,
            spec,
        )?;
        let s = quadrature::oscillatory_integrate(
            |z| self.spatial(z),
            0.0,
            self.length_um,
            k,
            TrigKind::Sine,
            spec,
        )?;
        Ok(Complex64::new(c.value, -s.value) / (2.0 * PI).sqrt())
    }

    /// Time-independent spectral function |F_m(k)|^2, um.
    pub fn spectral_function(&self, k: f64, spec: &QuadratureSpec) -> Result<f64, QuadratureError> {
        Ok(self.momentum_amplitude(k, spec)?.norm_sqr())
    }

    /// Integral of the spectral function over the whole k-axis: numerical
    /// on [-k_max, k_max] plus the analytic tail.  Both wall values vanish,
    /// so |F|^2 falls like [s0^2 + sL^2 - 2 s0 sL cos(kL)] / (2 pi k^4)
    /// with s0, sL the wall slopes; the oscillating part integrates to
    /// O(1/(L k_max^4)) and is dropped.
    pub fn momentum_norm(&self, k_max: f64, spec: &QuadratureSpec) -> Result<f64, QuadratureError> {
        let inner_err = std::cell::RefCell::new(None);
        let spectrum = |k: f64| match self.spectral_function(k, spec) {
            Ok(v) => v,
            Err(e) => {
                inner_err.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        };
        let body = quadrature::integrate(spectrum, 0.0, k_max, spec);
        if let Some(e) = inner_err.into_inner() {
            return Err(e);
        }
        let scale = self.z0_um.powf(1.5);
        let s0 = self.scaled_slope(0.0) / scale;
        let s_l = self.scaled_slope(self.lambda) / scale;
        let tail = (s0 * s0 + s_l * s_l) / (3.0 * PI * k_max.powi(3));
        Ok(2.0 * body?.value + tail)
    }

    /// Wall slopes (d psi / dz at 0 and at L) in 1/um^{3/2}.
    pub fn wall_slopes(&self) -> (f64, f64) {
        let scale = self.z0_um.powf(1.5);
        (self.scaled_slope(0.0) / scale, self.scaled_slope(self.lambda) / scale)
    }
}
