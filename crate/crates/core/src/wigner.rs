//! Wigner quasi-distributions for every state family in this crate:
//! single-mirror bound states, weighted two-state superpositions,
//! two-mirror cavity modes, and released (time-dependent) states.
//!
//! Convention: W(z, k) = (1/pi) Integral psi*(z + y) psi(z - y) e^{2iky} dy,
//! so that the k-integral recovers |psi(z)|^2, the z-integral recovers the
//! |F(k)|^2 produced by the momentum transforms elsewhere in this crate,
//! and 2 pi Integral W^2 = 1 for a normalized pure state.  Axes are either
//! both scaled (heights in z0, wavenumbers in 1/z0) or both micron-system
//! (um, 1/um); the pairing is what matters, and each grid carries a tag.
//!
//! Splitting psi*(z+y) psi(z-y) into its even real part and odd imaginary
//! part folds the integral onto [0, y_max] with a cosine and a sine kernel
//! and keeps every result real by construction.

use crate::double_mirror::DoubleMirrorMode;
use crate::free_fall::{Region2Expansion, TwoModeMixture};
use crate::gravity::{self, Eigenfunction};
use crate::quadrature::{self, QuadratureError, QuadratureSpec, TrigKind};
use crate::scales::ScaleSystem;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum WignerError {
    #[error("weights must be nonnegative and sum to 1, got p1 = {p1}, p2 = {p2}")]
    BadWeights { p1: f64, p2: f64 },
    #[error("grid axes must be strictly increasing with at least 3 points")]
    BadAxis,
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Which conjugate pairing a grid's axes use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisUnit {
    /// Heights in z0, wavenumbers in 1/z0.
    Scaled,
    /// Heights in um, wavenumbers in 1/um.
    Micron,
}

/// Half-line Wigner integral for a real wave: (2/pi) times the cosine
/// transform of g(y) = psi(z + y) psi(z - y) over [0, y_max].
fn real_wigner<F: Fn(f64) -> f64>(
    g: F,
    y_max: f64,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    if y_max <= 0.0 {
        return Ok(0.0);
    }
    let est = quadrature::oscillatory_integrate(g, 0.0, y_max, 2.0 * k, TrigKind::Cosine, spec)?;
    Ok(2.0 / PI * est.value)
}

/// Half-line Wigner integral for a complex wave: the product
/// psi*(z + y) psi(z - y) has an even real part (cosine kernel) and an odd
/// imaginary part (sine kernel, entering with a minus sign).
fn complex_wigner<F: Fn(f64) -> Complex64>(
    amp: F,
    z: f64,
    k: f64,
    y_max: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    if y_max <= 0.0 {
        return Ok(0.0);
    }
    let product = |y: f64| amp(z + y).conj() * amp(z - y);
    let even = quadrature::oscillatory_integrate(
        |y| product(y).re,
        0.0,
        y_max,
        2.0 * k,
        TrigKind::Cosine,
        spec,
    )?;
    let odd = quadrature::oscillatory_integrate(
        |y| product(y).im,
        0.0,
        y_max,
        2.0 * k,
        TrigKind::Sine,
        spec,
    )?;
    Ok(2.0 / PI * (even.value - odd.value))
}

/// (2/pi) Integral g(y) sin(2 k_cap y) / y dy on (0, y_max]: the Dirichlet
/// window that a finite wavenumber cut produces.  As k_cap grows this
/// converges to g(0) -- the marginal identity -- with error O(1/k_cap^2)
/// because g vanishes at the support edge.  The 1/y factor is harmless:
/// quadrature nodes never touch y = 0 and the product with the sine stays
/// bounded.
fn dirichlet_window<F: Fn(f64) -> f64>(
    g: F,
    y_max: f64,
    k_cap: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    if y_max <= 0.0 {
        return Ok(0.0);
    }
    let est = quadrature::oscillatory_integrate(
        |y| g(y) / y,
        0.0,
        y_max,
        2.0 * k_cap,
        TrigKind::Sine,
        spec,
    )?;
    Ok(2.0 / PI * est.value)
}

// ---------------------------------------------------------------------------
// Single-mirror bound states (scaled axes)
// ---------------------------------------------------------------------------

fn single_y_max(psi: &Eigenfunction, zeta: f64, spec: &QuadratureSpec) -> f64 {
    zeta.min(psi.turning_point() + spec.tail_pad - zeta)
}

/// Wigner value of one bound state at scaled height zeta and scaled
/// wavenumber k.  Even in k; zero below the mirror.
pub fn wigner_single(
    psi: &Eigenfunction,
    zeta: f64,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    if zeta <= 0.0 {
        return Ok(0.0);
    }
    real_wigner(
        |y| psi.eval(zeta + y) * psi.eval(zeta - y),
        single_y_max(psi, zeta, spec),
        k,
        spec,
    )
}

/// Wavenumber marginal of one bound state up to |k| <= k_cap; approaches
/// the spatial density |psi(zeta)|^2 as k_cap grows.
pub fn k_marginal_single(
    psi: &Eigenfunction,
    zeta: f64,
    k_cap: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    if zeta <= 0.0 {
        return Ok(0.0);
    }
    dirichlet_window(
        |y| psi.eval(zeta + y) * psi.eval(zeta - y),
        single_y_max(psi, zeta, spec),
        k_cap,
        spec,
    )
}

/// Height marginal of one bound state: the full z-integral of W at fixed
/// k, equal to the momentum distribution |F(k)|^2.  Evaluated by swapping
/// the integration order: the inner height integral is the smooth
/// autocorrelation R(y), the outer integral carries the oscillation.
pub fn z_marginal_single(
    psi: &Eigenfunction,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    let upper = psi.turning_point() + spec.tail_pad;
    let inner_err = std::cell::RefCell::new(None);
    let autocorrelation = |y: f64| {
        match quadrature::integrate(|s| psi.eval(s) * psi.eval(s + 2.0 * y), 0.0, upper, spec) {
            Ok(est) => est.value,
            Err(e) => {
                inner_err.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let outer = quadrature::oscillatory_integrate(
        autocorrelation,
        0.0,
        0.5 * upper,
        2.0 * k,
        TrigKind::Cosine,
        spec,
    );
    if let Some(e) = inner_err.into_inner() {
        return Err(e);
    }
    Ok(2.0 / PI * outer?.value)
}

// ---------------------------------------------------------------------------
// Weighted two-state superpositions (scaled axes)
// ---------------------------------------------------------------------------

/// Two bound states combined with probabilities p1 and p2; the relative
/// phase rotates at the beat frequency.
#[derive(Clone, Copy, Debug)]
pub struct WeightedPair {
    a: Eigenfunction,
    b: Eigenfunction,
    energy_a: f64,
    energy_b: f64,
    p1: f64,
    p2: f64,
}

/// Build the weighted pair of levels `n_a` and `n_b` in the given scale
/// system.
pub fn weighted_pair(
    scales: &ScaleSystem,
    n_a: usize,
    n_b: usize,
    p1: f64,
    p2: f64,
) -> Result<WeightedPair, WignerError> {
    if !(p1 >= 0.0 && p2 >= 0.0 && (p1 + p2 - 1.0).abs() <= 1e-12) {
        return Err(WignerError::BadWeights { p1, p2 });
    }
    Ok(WeightedPair {
        a: gravity::eigenfunction(n_a),
        b: gravity::eigenfunction(n_b),
        energy_a: gravity::level(scales, n_a).energy,
        energy_b: gravity::level(scales, n_b).energy,
        p1,
        p2,
    })
}

impl WeightedPair {
    /// Beat angular frequency (E_b - E_a)/hbar, rad/s.
    pub fn beat_angular_frequency(&self) -> f64 {
        (self.energy_b - self.energy_a) / crate::scales::constants::HBAR
    }

    /// The combined wave sqrt(p1) psi_a e^{-i E_a t/hbar} + sqrt(p2) psi_b
    /// e^{-i E_b t/hbar} at scaled height zeta.
    pub fn amplitude(&self, zeta: f64, t: f64) -> Complex64 {
        crate::free_fall::phase(self.energy_a, t) * (self.p1.sqrt() * self.a.eval(zeta))
            + crate::free_fall::phase(self.energy_b, t) * (self.p2.sqrt() * self.b.eval(zeta))
    }

    /// Spatial density of the combined wave.
    pub fn density(&self, zeta: f64, t: f64) -> f64 {
        self.amplitude(zeta, t).norm_sqr()
    }

    fn y_max(&self, zeta: f64, spec: &QuadratureSpec) -> f64 {
        let turn = self.a.turning_point().max(self.b.turning_point());
        zeta.min(turn + spec.tail_pad - zeta)
    }

    /// Wigner value at time t: the two stationary terms plus the
    /// interference term rotating at the beat frequency.
    pub fn wigner(
        &self,
        zeta: f64,
        k: f64,
        t: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64, QuadratureError> {
        if zeta <= 0.0 {
            return Ok(0.0);
        }
        complex_wigner(|x| self.amplitude(x, t), zeta, k, self.y_max(zeta, spec), spec)
    }

    /// Average of the Wigner function over one beat period: the rotating
    /// interference term integrates away, leaving the weighted sum of the
    /// two stationary Wigner functions.
    pub fn period_averaged_wigner(
        &self,
        zeta: f64,
        k: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64, QuadratureError> {
        Ok(self.p1 * wigner_single(&self.a, zeta, k, spec)?
            + self.p2 * wigner_single(&self.b, zeta, k, spec)?)
    }

    /// Wavenumber marginal at time t up to |k| <= k_cap; approaches the
    /// time-dependent spatial density.
    pub fn k_marginal(
        &self,
        zeta: f64,
        t: f64,
        k_cap: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64, QuadratureError> {
        if zeta <= 0.0 {
            return Ok(0.0);
        }
        let g = |y: f64| (self.amplitude(zeta + y, t).conj() * self.amplitude(zeta - y, t)).re;
        dirichlet_window(g, self.y_max(zeta, spec), k_cap, spec)
    }
}

// ---------------------------------------------------------------------------
// Two-mirror cavity modes (micron axes)
// ---------------------------------------------------------------------------

/// Wigner value of a cavity mode at height z (um) and wavenumber k (1/um).
/// The two wall conditions confine the integration to y <= min(z, L - z),
/// so W vanishes exactly at both walls and outside the slit.
pub fn wigner_double_mirror(
    mode: &DoubleMirrorMode,
    z_um: f64,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    let y_max = z_um.min(mode.length_um - z_um);
    real_wigner(
        |y| mode.spatial(z_um + y) * mode.spatial(z_um - y),
        y_max,
        k,
        spec,
    )
}

/// Wavenumber marginal of a cavity mode up to |k| <= k_cap.
pub fn k_marginal_double_mirror(
    mode: &DoubleMirrorMode,
    z_um: f64,
    k_cap: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    let y_max = z_um.min(mode.length_um - z_um);
    dirichlet_window(
        |y| mode.spatial(z_um + y) * mode.spatial(z_um - y),
        y_max,
        k_cap,
        spec,
    )
}

/// Height marginal of a cavity mode at fixed k, equal to its spectral
/// function; computed with the same order swap as the single-mirror case.
pub fn z_marginal_double_mirror(
    mode: &DoubleMirrorMode,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    let length = mode.length_um;
    let inner_err = std::cell::RefCell::new(None);
    let autocorrelation = |y: f64| {
        match quadrature::integrate(
            |s| mode.spatial(s) * mode.spatial(s + 2.0 * y),
            0.0,
            length - 2.0 * y,
            spec,
        ) {
            Ok(est) => est.value,
            Err(e) => {
                inner_err.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let outer = quadrature::oscillatory_integrate(
        autocorrelation,
        0.0,
        0.5 * length,
        2.0 * k,
        TrigKind::Cosine,
        spec,
    );
    if let Some(e) = inner_err.into_inner() {
        return Err(e);
    }
    Ok(2.0 / PI * outer?.value)
}

// ---------------------------------------------------------------------------
// Released states (micron axes, time-dependent)
// ---------------------------------------------------------------------------

fn region2_top(exp: &Region2Expansion, spec: &QuadratureSpec) -> f64 {
    let turn = exp.levels().last().map(|l| -l.zero).unwrap_or(0.0);
    (turn + spec.tail_pad) * exp.z0_um()
}

/// Wigner value of a released state at height z (um), wavenumber k (1/um)
/// and time t (s).  Even in k at t = 0 (the wave is real there); skewed
/// toward the fall direction at later times.
pub fn wigner_region2(
    exp: &Region2Expansion,
    z_um: f64,
    k: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    if z_um <= 0.0 {
        return Ok(0.0);
    }
    let weights = exp.evolution_weights(t);
    let y_max = z_um.min(region2_top(exp, spec) - z_um);
    complex_wigner(|x| exp.synthesize(&weights, x), z_um, k, y_max, spec)
}

/// Wavenumber marginal of a released state up to |k| <= k_cap; approaches
/// the spatial density at (z, t).
pub fn k_marginal_region2(
    exp: &Region2Expansion,
    z_um: f64,
    t: f64,
    k_cap: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    if z_um <= 0.0 {
        return Ok(0.0);
    }
    let weights = exp.evolution_weights(t);
    let amp = |x: f64| exp.synthesize(&weights, x);
    let g = |y: f64| (amp(z_um + y).conj() * amp(z_um - y)).re;
    dirichlet_window(g, z_um.min(region2_top(exp, spec) - z_um), k_cap, spec)
}

/// Wigner function of the amplitude-level (coherent) combination of a
/// two-mode mixture: the Wigner transform of the combined wave itself.
pub fn wigner_mixture_coherent(
    mix: &TwoModeMixture,
    z_um: f64,
    k: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    if z_um <= 0.0 {
        return Ok(0.0);
    }
    let (first, second) = mix.components();
    let top = region2_top(first, spec).max(region2_top(second, spec));
    let y_max = z_um.min(top - z_um);
    complex_wigner(|x| mix.coherent_wavefunction(x, t), z_um, k, y_max, spec)
}

/// Wigner function of the probability-level (incoherent) combination: the
/// weighted sum of the two component Wigner functions, with no
/// interference term.
pub fn wigner_mixture_incoherent(
    mix: &TwoModeMixture,
    z_um: f64,
    k: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    let (first, second) = mix.components();
    let (p1, p2) = mix.weights();
    Ok(p1 * wigner_region2(first, z_um, k, t, spec)?
        + p2 * wigner_region2(second, z_um, k, t, spec)?)
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

/// A filled Wigner grid: `values[i * k_axis.len() + j]` is W at
/// (z_axis[i], k_axis[j]).
#[derive(Clone, Debug)]
pub struct PhaseSpaceGrid {
    pub z_axis: Vec<f64>,
    pub k_axis: Vec<f64>,
    pub values: Vec<f64>,
    pub unit: AxisUnit,
}

fn check_axis(axis: &[f64]) -> Result<(), WignerError> {
    if axis.len() < 3 || axis.windows(2).any(|w| w[1] <= w[0]) {
        return Err(WignerError::BadAxis);
    }
    Ok(())
}

/// Fill a grid from any cell evaluator, in parallel.
fn fill_grid<F>(
    z_axis: &[f64],
    k_axis: &[f64],
    unit: AxisUnit,
    cell: F,
) -> Result<PhaseSpaceGrid, WignerError>
where
    F: Fn(f64, f64) -> Result<f64, QuadratureError> + Sync,
{
    check_axis(z_axis)?;
    check_axis(k_axis)?;
    let nk = k_axis.len();
    let values: Result<Vec<f64>, QuadratureError> = (0..z_axis.len() * nk)
        .into_par_iter()
        .map(|idx| cell(z_axis[idx / nk], k_axis[idx % nk]))
        .collect();
    Ok(PhaseSpaceGrid {
        z_axis: z_axis.to_vec(),
        k_axis: k_axis.to_vec(),
        values: values?,
        unit,
    })
}

/// Grid of one bound state on scaled axes.
pub fn single_state_grid(
    psi: &Eigenfunction,
    z_axis: &[f64],
    k_axis: &[f64],
    spec: &QuadratureSpec,
) -> Result<PhaseSpaceGrid, WignerError> {
    fill_grid(z_axis, k_axis, AxisUnit::Scaled, |z, k| wigner_single(psi, z, k, spec))
}

/// Grid of a weighted pair at time t on scaled axes.
pub fn pair_grid(
    pair: &WeightedPair,
    t: f64,
    z_axis: &[f64],
    k_axis: &[f64],
    spec: &QuadratureSpec,
) -> Result<PhaseSpaceGrid, WignerError> {
    fill_grid(z_axis, k_axis, AxisUnit::Scaled, |z, k| pair.wigner(z, k, t, spec))
}

/// Grid of a cavity mode on micron axes.
pub fn double_mirror_grid(
    mode: &DoubleMirrorMode,
    z_axis: &[f64],
    k_axis: &[f64],
    spec: &QuadratureSpec,
) -> Result<PhaseSpaceGrid, WignerError> {
    fill_grid(z_axis, k_axis, AxisUnit::Micron, |z, k| {
        wigner_double_mirror(mode, z, k, spec)
    })
}

/// Grid of a released state at time t on micron axes.
pub fn region2_grid(
    exp: &Region2Expansion,
    t: f64,
    z_axis: &[f64],
    k_axis: &[f64],
    spec: &QuadratureSpec,
) -> Result<PhaseSpaceGrid, WignerError> {
    fill_grid(z_axis, k_axis, AxisUnit::Micron, |z, k| {
        wigner_region2(exp, z, k, t, spec)
    })
}

/// Grid of a mixture at time t on micron axes; `coherent` selects the
/// amplitude-level combination, otherwise the probability-level one.
pub fn mixture_grid(
    mix: &TwoModeMixture,
    t: f64,
    coherent: bool,
    z_axis: &[f64],
    k_axis: &[f64],
    spec: &QuadratureSpec,
) -> Result<PhaseSpaceGrid, WignerError> {
    fill_grid(z_axis, k_axis, AxisUnit::Micron, |z, k| {
        if coherent {
            wigner_mixture_coherent(mix, z, k, t, spec)
        } else {
            wigner_mixture_incoherent(mix, z, k, t, spec)
        }
    })
}

/// Composite-Simpson weights for a uniform axis (odd point count); falls
/// back to the trapezoid rule on an even count.
fn quadrature_weights(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    let h = (axis[n - 1] - axis[0]) / (n - 1) as f64;
    let mut w = vec![0.0; n];
    if n % 2 == 1 {
        w[0] = h / 3.0;
        w[n - 1] = h / 3.0;
        for (i, slot) in w.iter_mut().enumerate().take(n - 1).skip(1) {
            *slot = if i % 2 == 1 { 4.0 * h / 3.0 } else { 2.0 * h / 3.0 };
        }
    } else {
        w[0] = h / 2.0;
        w[n - 1] = h / 2.0;
        for slot in w.iter_mut().take(n - 1).skip(1) {
            *slot = h;
        }
    }
    w
}

impl PhaseSpaceGrid {
    /// Number of (z, k) cells.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// W at (z_axis[i], k_axis[j]).
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.k_axis.len() + j]
    }

    /// Total mass: the two-axis quadrature of W; near 1 for a normalized
    /// state when the axes cover its support.
    pub fn mass(&self) -> f64 {
        let wz = quadrature_weights(&self.z_axis);
        let wk = quadrature_weights(&self.k_axis);
        let mut acc = 0.0;
        for (i, wzi) in wz.iter().enumerate() {
            for (j, wkj) in wk.iter().enumerate() {
                acc += wzi * wkj * self.value(i, j);
            }
        }
        acc
    }

    /// Purity 2 pi times the two-axis quadrature of W^2; equals 1 for a
    /// pure state.
    pub fn purity(&self) -> f64 {
        let wz = quadrature_weights(&self.z_axis);
        let wk = quadrature_weights(&self.k_axis);
        let mut acc = 0.0;
        for (i, wzi) in wz.iter().enumerate() {
            for (j, wkj) in wk.iter().enumerate() {
                let v = self.value(i, j);
                acc += wzi * wkj * v * v;
            }
        }
        2.0 * PI * acc
    }

    /// Smallest and largest grid values.
    pub fn extrema(&self) -> (f64, f64) {
        self.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        })
    }
}
