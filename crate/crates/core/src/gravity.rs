//! Bound states of a quantum bouncer above a single horizontal mirror:
//! energy levels, normalized eigenfunctions, momentum-space amplitudes and
//! the two-state beat.
//!
//! In the scaled height zeta = z / z0 the stationary equation reads
//! psi'' = (zeta + a) psi with psi(0) = 0, so the n-th eigenfunction is
//! Ai(zeta + a_n) cut off below the mirror, where a_n is the n-th negative
//! zero of Ai; its eigenvalue in units of e0 is -a_n.

use crate::airy;
use crate::quadrature::{self, QuadratureError, QuadratureSpec, TrigKind};
use crate::scales::ScaleSystem;
use num_complex::Complex64;
use std::cell::RefCell;
use std::f64::consts::PI;

/// One bound state: 1-based index, the Airy zero generating it, and the
/// physical energy and classical turning height.
#[derive(Clone, Copy, Debug)]
pub struct EnergyLevel {
    pub n: usize,
    /// a_n, the n-th negative zero of Ai.
    pub zero: f64,
    /// E_n = -a_n e0, J.
    pub energy: f64,
    /// z_n = -a_n z0, m; the classical turning point of the level.
    pub height: f64,
}

/// The n-th level (n >= 1) in the given scale system.
pub fn level(scales: &ScaleSystem, n: usize) -> EnergyLevel {
    let zero = airy::ai_zero(n);
    EnergyLevel { n, zero, energy: -zero * scales.e0(), height: -zero * scales.z0() }
}

/// Levels 1..=count.
pub fn levels(scales: &ScaleSystem, count: usize) -> Vec<EnergyLevel> {
    (1..=count).map(|n| level(scales, n)).collect()
}

/// Normalized eigenfunction in the scaled height:
/// psi_n(zeta) = Ai(zeta + a_n) / Ai'(a_n) for zeta >= 0, zero below the
/// mirror.  Dividing by the signed slope of Ai at the zero makes
/// psi_n'(0) = +1 for every n, and the norm is exactly 1 because the
/// integral of Ai(x + a_n)^2 over [0, inf) equals Ai'(a_n)^2.
#[derive(Clone, Copy, Debug)]
pub struct Eigenfunction {
    n: usize,
    zero: f64,
    slope_at_zero: f64,
}

/// The n-th normalized eigenfunction (n >= 1).
pub fn eigenfunction(n: usize) -> Eigenfunction {
    let zero = airy::ai_zero(n);
    Eigenfunction { n, zero, slope_at_zero: airy::ai_prime(zero) }
}

impl Eigenfunction {
    pub fn index(&self) -> usize {
        self.n
    }

    /// a_n.
    pub fn zero(&self) -> f64 {
        self.zero
    }

    /// psi_n at scaled height zeta.
    pub fn eval(&self, zeta: f64) -> f64 {
        if zeta < 0.0 {
            0.0
        } else {
            airy::ai(zeta + self.zero) / self.slope_at_zero
        }
    }

    /// d psi_n / d zeta, one-sided at the mirror.
    pub fn slope(&self, zeta: f64) -> f64 {
        if zeta < 0.0 {
            0.0
        } else {
            airy::ai_prime(zeta + self.zero) / self.slope_at_zero
        }
    }

    /// Scaled classical turning point -a_n; the state decays beyond it.
    pub fn turning_point(&self) -> f64 {
        -self.zero
    }
}

/// Cosine and sine transforms of psi_n over [0, inf), truncated past the
/// turning point where the state is exponentially small.
fn trig_components(
    psi: &Eigenfunction,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), QuadratureError> {
    let upper = psi.turning_point() + spec.tail_pad;
    let c = quadrature::oscillatory_integrate(|z| psi.eval(z), 0.0, upper, k, TrigKind::Cosine, spec)?;
    let s = quadrature::oscillatory_integrate(|z| psi.eval(z), 0.0, upper, k, TrigKind::Sine, spec)?;
    Ok((c.value, s.value))
}

/// Momentum amplitude F_n(k) = (2 pi)^{-1/2} integral of
/// psi_n(zeta) e^{-i k zeta} d zeta, with k the wavenumber conjugate to
/// the scaled height (physical momentum hbar k / z0).
pub fn momentum_amplitude(
    psi: &Eigenfunction,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64, QuadratureError> {
    let (c, s) = trig_components(psi, k, spec)?;
    Ok(Complex64::new(c, -s) / (2.0 * PI).sqrt())
}

/// Momentum distribution |F_n(k)|^2.
pub fn momentum_spectrum(
    psi: &Eigenfunction,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    Ok(momentum_amplitude(psi, k, spec)?.norm_sqr())
}

/// Integral of |F_n|^2 over the whole k-axis: numerical on [-k_max, k_max]
/// (one half by symmetry), then the analytic tail.  psi(0) = 0 makes the
/// amplitude fall like psi'(0)/k^2; two further integrations by parts give
/// the tail (s0^2/pi) [1/(3 K^3) - 2 a_n/(5 K^5)] with s0 = psi'(0).
pub fn momentum_norm(
    psi: &Eigenfunction,
    k_max: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    let inner_err: RefCell<Option<QuadratureError>> = RefCell::new(None);
    let spectrum = |k: f64| match momentum_spectrum(psi, k, spec) {
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
    let s0 = psi.slope(0.0);
    let k3 = k_max.powi(3);
    let k5 = k3 * k_max * k_max;
    let tail = (s0 * s0 / PI) * (1.0 / (3.0 * k3) - 2.0 * psi.zero / (5.0 * k5));
    Ok(2.0 * body?.value + tail)
}

/// Equal-weight superposition of two bound states,
/// Psi(zeta, t) = (psi_a + e^{-i w t} psi_b) / sqrt(2) up to a global
/// phase, with beat angular frequency w = (E_b - E_a) / hbar.
#[derive(Clone, Copy, Debug)]
pub struct Superposition {
    a: Eigenfunction,
    b: Eigenfunction,
    omega: f64,
}

/// Superposition of levels n_low and n_high in the given scale system.
pub fn superposition(scales: &ScaleSystem, n_low: usize, n_high: usize) -> Superposition {
    let energy_gap = level(scales, n_high).energy - level(scales, n_low).energy;
    Superposition {
        a: eigenfunction(n_low),
        b: eigenfunction(n_high),
        omega: scales.angular_frequency(energy_gap),
    }
}

impl Superposition {
    /// (E_high - E_low) / hbar, rad/s.
    pub fn beat_angular_frequency(&self) -> f64 {
        self.omega
    }

    pub fn states(&self) -> (&Eigenfunction, &Eigenfunction) {
        (&self.a, &self.b)
    }

    /// Spatial density |Psi(zeta, t)|^2; t in seconds.
    pub fn density(&self, zeta: f64, t: f64) -> f64 {
        let pa = self.a.eval(zeta);
        let pb = self.b.eval(zeta);
        0.5 * (pa * pa + pb * pb) + pa * pb * (self.omega * t).cos()
    }

    /// Momentum density |(F_a + e^{-i w t} F_b) / sqrt(2)|^2.
    pub fn momentum_density(
        &self,
        k: f64,
        t: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64, QuadratureError> {
        let fa = momentum_amplitude(&self.a, k, spec)?;
        let fb = momentum_amplitude(&self.b, k, spec)?;
        Ok(0.5 * (fa + fb * Complex64::from_polar(1.0, -self.omega * t)).norm_sqr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_slope_is_exactly_one() {
        for n in 1..=10 {
            assert_eq!(eigenfunction(n).slope(0.0), 1.0);
        }
    }

    #[test]
    fn wavefunction_vanishes_below_mirror() {
        let psi = eigenfunction(2);
        assert_eq!(psi.eval(-0.3), 0.0);
        assert_eq!(psi.slope(-0.3), 0.0);
    }

    #[test]
    fn energies_scale_with_the_zeros() {
        let scales = ScaleSystem::reference();
        let lv = levels(&scales, 4);
        for pair in lv.windows(2) {
            let ratio = pair[1].energy / pair[0].energy;
            assert!((ratio - pair[1].zero / pair[0].zero).abs() < 1e-14);
        }
    }
}
