//! Release of a prepared two-mirror mode above a single lower mirror.
//!
//! The source slit [0, L] sits on a step of height `h`, so at t = 0 the
//! wave has support [h, L + h] above the lower mirror at z = 0.  The state
//! is expanded over the single-mirror bound states; every later quantity
//! (spatial and momentum densities, mixtures, mean values) follows from
//! the real expansion coefficients and the level energies.
//!
//! This module works in the micron system: heights in um, wavenumbers in
//! 1/um, densities in 1/um or um, times in seconds.

use crate::airy;
use crate::double_mirror::DoubleMirrorMode;
use crate::gravity::{self, Eigenfunction, EnergyLevel};
use crate::quadrature::{self, QuadratureError, QuadratureSpec};
use crate::scales::constants;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum ExpansionError {
    #[error("step height must be nonnegative and finite, got {0} um")]
    BadStep(f64),
    #[error("truncation order must be at least 1")]
    BadTruncation,
    #[error("mixture weights must be nonnegative and sum to 1, got p1 = {p1}, p2 = {p2}")]
    BadWeights { p1: f64, p2: f64 },
    #[error("mixture components must share the same scale length, step and truncation")]
    MismatchedComponents,
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Time phase e^{-i E t / hbar} of a stationary component with energy
/// `energy` (J).  Every evolution path in this crate goes through this one
/// helper so that equal energies give bitwise-equal phases.
pub(crate) fn phase(energy: f64, t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -(energy / constants::HBAR) * t)
}

/// A released mode expanded over the single-mirror eigenbasis.
///
/// Two equivalent coefficient conventions are kept:
/// * `coefficients()` are the overlaps c_n with the unit-norm basis states,
///   so the captured probability is simply the sum of their squares;
/// * `airy_basis_coefficients()` rescale the same numbers to the bare-Airy
///   basis Ai((z - z_n)/z0) paired with the source mode's own norm
///   constant, the convention usually used to report these expansions.
#[derive(Clone, Debug)]
pub struct Region2Expansion {
    mode: DoubleMirrorMode,
    step_um: f64,
    levels: Vec<EnergyLevel>,
    eigens: Vec<Eigenfunction>,
    coeffs: Vec<f64>,
    airy_coeffs: Vec<f64>,
    fallback: Vec<usize>,
    z0_um: f64,
    mass: f64,
}

/// Expand the mode released from step height `step_um` over the first
/// `truncation` single-mirror states.
///
/// Each coefficient is evaluated in closed form from boundary data: for
/// y1'' = (xi - alpha) y1 and y2'' = (xi - beta) y2 the cross-Wronskian
/// y1' y2 - y1 y2' has derivative (beta - alpha) y1 y2, so the overlap
/// integral collapses to wall terms divided by the scaled height gap
/// (z_n - zbar - h)/z0.  When that gap is smaller than 1e-6 (scaled) the
/// formula loses all digits and the coefficient falls back to direct
/// quadrature of the overlap; `fallback_indices` records where.
pub fn expand(
    mode: &DoubleMirrorMode,
    step_um: f64,
    truncation: usize,
    spec: &QuadratureSpec,
) -> Result<Region2Expansion, ExpansionError> {
    if !(step_um.is_finite() && step_um >= 0.0) {
        return Err(ExpansionError::BadStep(step_um));
    }
    if truncation < 1 {
        return Err(ExpansionError::BadTruncation);
    }
    let z0_um = mode.z0_um();
    let e0 = mode.energy_joule() / mode.scaled_turning();
    let z0_m = z0_um * constants::MICRON;
    let mass = constants::HBAR * constants::HBAR / (2.0 * z0_m * z0_m * e0);
    let eta = step_um / z0_um;
    let u = mode.scaled_turning();
    let lambda = mode.scaled_length();
    let lo = airy::airy(-u);
    let hi = airy::airy(lambda - u);
    let (a, b) = (mode.coeff_a, mode.coeff_b);
    // Raw mode y = b Ai(xi - u) - a Bi(xi - u): wall values (residues of the
    // numerical root, kept for exactness) and wall slopes.
    let y2_0 = b * lo.ai - a * lo.bi;
    let y2_l = b * hi.ai - a * hi.bi;
    let q0 = b * lo.aip - a * lo.bip;
    let q_lambda = b * hi.aip - a * hi.bip;
    let sign = q0.signum();

    let mut levels = Vec::with_capacity(truncation);
    let mut eigens = Vec::with_capacity(truncation);
    let mut coeffs = Vec::with_capacity(truncation);
    let mut airy_coeffs = Vec::with_capacity(truncation);
    let mut fallback = Vec::new();
    for n in 1..=truncation {
        let eigen = gravity::eigenfunction(n);
        let a_n = eigen.zero();
        let slope = airy::ai_prime(a_n);
        // Scaled height gap (z_n - zbar - h)/z0.
        let gap = -a_n - u - eta;
        let c_n = if gap.abs() < 1e-6 {
            fallback.push(n);
            overlap_coefficient(mode, step_um, &eigen, spec)?
        } else {
            let y1_0 = airy::ai(eta + a_n);
            let y1_l = airy::ai(lambda + eta + a_n);
            let y1p_0 = airy::ai_prime(eta + a_n);
            let y1p_l = airy::ai_prime(lambda + eta + a_n);
            let wall_terms = y1p_l * y2_l - y1_l * q_lambda - y1p_0 * y2_0 + y1_0 * q0;
            sign * (wall_terms / -gap) / (slope * mode.norm)
        };
        airy_coeffs.push(c_n * mode.norm / (sign * slope));
        coeffs.push(c_n);
        levels.push(EnergyLevel {
            n,
            zero: a_n,
            energy: -a_n * e0,
            height: -a_n * z0_m,
        });
        eigens.push(eigen);
    }
    Ok(Region2Expansion {
        mode: *mode,
        step_um,
        levels,
        eigens,
        coeffs,
        airy_coeffs,
        fallback,
        z0_um,
        mass,
    })
}

/// Direct quadrature of the overlap between the n-th basis state and the
/// lifted mode, in the scaled height variable.
fn overlap_coefficient(
    mode: &DoubleMirrorMode,
    step_um: f64,
    eigen: &Eigenfunction,
    spec: &QuadratureSpec,
) -> Result<f64, QuadratureError> {
    let z0 = mode.z0_um();
    let eta = step_um / z0;
    let lambda = mode.scaled_length();
    let est = quadrature::integrate(
        |xi| eigen.eval(xi) * mode.scaled_wave(xi - eta),
        eta,
        eta + lambda,
        spec,
    )?;
    Ok(est.value)
}

impl Region2Expansion {
    pub fn mode(&self) -> &DoubleMirrorMode {
        &self.mode
    }

    /// Step height h, um.
    pub fn step_um(&self) -> f64 {
        self.step_um
    }

    /// Number of basis states kept.
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn z0_um(&self) -> f64 {
        self.z0_um
    }

    /// The basis levels 1..=truncation actually used.
    pub fn levels(&self) -> &[EnergyLevel] {
        &self.levels
    }

    /// Coefficients over the unit-norm eigenbasis.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// The same expansion in the bare-Airy convention (see type docs).
    pub fn airy_basis_coefficients(&self) -> &[f64] {
        &self.airy_coeffs
    }

    /// Basis indices whose coefficient came from the quadrature fallback.
    pub fn fallback_indices(&self) -> &[usize] {
        &self.fallback
    }

    /// Probability captured at this truncation, sum of c_n^2; approaches 1
    /// from below as the truncation grows.
    pub fn captured_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// The lifted source profile at t = 0: the mode shifted up by h, zero
    /// outside [h, L + h].  Real, in 1/sqrt(um).
    pub fn initial_profile(&self, z_um: f64) -> f64 {
        if z_um < self.step_um || z_um > self.step_um + self.mode.length_um {
            return 0.0;
        }
        self.mode.spatial(z_um - self.step_um)
    }

    /// The lifted source wave with its stationary phase, as it would evolve
    /// had the lower mirror kept it trapped.
    pub fn source_wavefunction(&self, z_um: f64, t: f64) -> Complex64 {
        phase(self.mode.energy_joule(), t) * self.initial_profile(z_um)
    }

    /// Per-state complex weights c_n e^{-i E_n t / hbar}; the single source
    /// of time dependence for every synthesis below.
    pub fn evolution_weights(&self, t: f64) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .zip(&self.levels)
            .map(|(c, level)| phase(level.energy, t) * *c)
            .collect()
    }

    /// Wave value for an arbitrary weight vector over the basis (weights
    /// beyond the truncation are rejected).  In 1/sqrt(um).
    pub fn synthesize(&self, weights: &[Complex64], z_um: f64) -> Complex64 {
        assert!(weights.len() <= self.eigens.len(), "more weights than basis states");
        let zeta = z_um / self.z0_um;
        let scale = 1.0 / self.z0_um.sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, eigen) in weights.iter().zip(&self.eigens) {
            acc += *w * (eigen.eval(zeta) * scale);
        }
        acc
    }

    /// The evolved wave at height z (um) and time t (s), in 1/sqrt(um).
    pub fn wavefunction(&self, z_um: f64, t: f64) -> Complex64 {
        self.synthesize(&self.evolution_weights(t), z_um)
    }

    /// Cosine and sine parts of the evolved wave: the pair (g_c, g_s) with
    /// psi = g_c - i g_s, both real.  g_s vanishes identically at t = 0.
    pub fn trig_components(&self, z_um: f64, t: f64) -> (f64, f64) {
        let w = self.wavefunction(z_um, t);
        (w.re, -w.im)
    }

    /// Probability density |psi|^2 at (z, t), 1/um.
    pub fn spatial_density(&self, z_um: f64, t: f64) -> f64 {
        self.wavefunction(z_um, t).norm_sqr()
    }

    /// L2 distance over [0, L + h + 3 z0] between the lifted source profile
    /// and its truncated reconstruction at t = 0.  Decreases as the
    /// truncation grows; the captured-norm identity makes it approximately
    /// sqrt(1 - captured_norm()).
    pub fn continuity_residual(&self, spec: &QuadratureSpec) -> Result<f64, QuadratureError> {
        let h = self.step_um;
        let top = h + self.mode.length_um;
        let weights = self.evolution_weights(0.0);
        let diff_sq = |z: f64| {
            let d = self.initial_profile(z) - self.synthesize(&weights, z).re;
            d * d
        };
        let est = quadrature::integrate_segmented(
            diff_sq,
            &[0.0, h, top, top + 3.0 * self.z0_um],
            spec,
        )?;
        Ok(est.value.max(0.0).sqrt())
    }

    /// Momentum amplitude of an arbitrary weight vector over the basis,
    /// k in 1/um, result in sqrt(um).  Computed state by state (no cache);
    /// grid sweeps should build a `MomentumTable` instead.
    pub fn weighted_momentum_amplitude(
        &self,
        weights: &[Complex64],
        k: f64,
        spec: &QuadratureSpec,
    ) -> Result<Complex64, QuadratureError> {
        let scale = self.z0_um.sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, eigen) in weights.iter().zip(&self.eigens) {
            let amp = gravity::momentum_amplitude(eigen, k * self.z0_um, spec)?;
            acc += *w * amp * scale;
        }
        Ok(acc)
    }

    /// Momentum amplitude F(k, t) of the evolved wave, k in 1/um, in
    /// sqrt(um).
    pub fn momentum_amplitude(
        &self,
        k: f64,
        t: f64,
        spec: &QuadratureSpec,
    ) -> Result<Complex64, QuadratureError> {
        self.weighted_momentum_amplitude(&self.evolution_weights(t), k, spec)
    }

    /// Momentum density |F(k, t)|^2, um.
    pub fn momentum_density(
        &self,
        k: f64,
        t: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64, QuadratureError> {
        Ok(self.momentum_amplitude(k, t, spec)?.norm_sqr())
    }

    /// Integral of the momentum density over the whole k-axis at time t:
    /// numerical on [-k_max, k_max] plus the analytic high-k tail.  The
    /// wave vanishes at the mirror, so |F|^2 falls like
    /// |psi'(0,t)|^2 / (2 pi k^4); with every basis slope equal at the
    /// mirror, psi'(0,t) = sum of the weights divided by z0^{3/2}.
    pub fn momentum_norm(
        &self,
        t: f64,
        k_max: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64, QuadratureError> {
        self.weighted_momentum_norm(&self.evolution_weights(t), k_max, spec)
    }

    /// Same k-axis integral for an arbitrary weight vector over the basis.
    pub fn weighted_momentum_norm(
        &self,
        weights: &[Complex64],
        k_max: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64, QuadratureError> {
        let inner_err = std::cell::RefCell::new(None);
        let scale = self.z0_um.sqrt();
        let density = |k: f64| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (w, eigen) in weights.iter().zip(&self.eigens) {
                match gravity::momentum_amplitude(eigen, k * self.z0_um, spec) {
                    Ok(amp) => acc += *w * amp * scale,
                    Err(e) => {
                        inner_err.borrow_mut().get_or_insert(e);
                        return f64::NAN;
                    }
                }
            }
            acc.norm_sqr()
        };
        let body = quadrature::integrate(density, -k_max, k_max, spec);
        if let Some(e) = inner_err.into_inner() {
            return Err(e);
        }
        let slope0: Complex64 = weights.iter().sum();
        let tail = slope0.norm_sqr() / self.z0_um.powi(3) / (3.0 * PI * k_max.powi(3));
        Ok(body?.value + tail)
    }

    /// Precompute per-state momentum amplitudes on a wavenumber grid so
    /// that any later time (or any other weight vector over the same
    /// basis) costs only a weighted sum.
    pub fn momentum_table(
        &self,
        k_grid: &[f64],
        spec: &QuadratureSpec,
    ) -> Result<MomentumTable, QuadratureError> {
        let scale = self.z0_um.sqrt();
        let rows: Result<Vec<Vec<Complex64>>, QuadratureError> = self
            .eigens
            .par_iter()
            .map(|eigen| {
                k_grid
                    .iter()
                    .map(|&k| {
                        gravity::momentum_amplitude(eigen, k * self.z0_um, spec)
                            .map(|amp| amp * scale)
                    })
                    .collect()
            })
            .collect();
        Ok(MomentumTable {
            k_grid: k_grid.to_vec(),
            energies: self.levels.iter().map(|l| l.energy).collect(),
            coeffs: self.coeffs.clone(),
            rows: rows?,
        })
    }

    /// Mean height of the packet, um.  Evaluated from the closed-form
    /// position matrix elements of the basis: the diagonal element is
    /// -2 a_n / 3 and the cross element -2 / (a_n - a_j)^2 in scaled
    /// heights.
    pub fn mean_position(&self, t: f64) -> f64 {
        let n = self.coeffs.len();
        let mut acc = 0.0;
        for i in 0..n {
            let a_i = self.levels[i].zero;
            acc += self.coeffs[i] * self.coeffs[i] * (-2.0 * a_i / 3.0);
            for j in i + 1..n {
                let a_j = self.levels[j].zero;
                let omega = (self.levels[j].energy - self.levels[i].energy) / constants::HBAR;
                let zeta_ij = -2.0 / ((a_i - a_j) * (a_i - a_j));
                acc += 2.0 * self.coeffs[i] * self.coeffs[j] * zeta_ij * (omega * t).cos();
            }
        }
        self.z0_um * acc
    }

    /// Mean wavenumber of the packet, 1/um.  From the same matrix elements
    /// via p = i m [H, z] / hbar; a real coefficient vector leaves only the
    /// sine cross terms, so the mean starts at zero and oscillates through
    /// the bounces.
    pub fn mean_momentum(&self, t: f64) -> f64 {
        let n = self.coeffs.len();
        let z0_m = self.z0_um * constants::MICRON;
        let mut acc = 0.0;
        for i in 0..n {
            let a_i = self.levels[i].zero;
            for j in i + 1..n {
                let a_j = self.levels[j].zero;
                let omega = (self.levels[j].energy - self.levels[i].energy) / constants::HBAR;
                let z_ij = -2.0 / ((a_i - a_j) * (a_i - a_j)) * z0_m;
                acc += self.coeffs[i] * self.coeffs[j] * omega * z_ij * (omega * t).sin();
            }
        }
        -2.0 * self.mass / constants::HBAR * acc * constants::MICRON
    }
}

/// Per-state momentum amplitudes cached on a wavenumber grid (1/um).
#[derive(Clone, Debug)]
pub struct MomentumTable {
    k_grid: Vec<f64>,
    energies: Vec<f64>,
    coeffs: Vec<f64>,
    rows: Vec<Vec<Complex64>>,
}

impl MomentumTable {
    pub fn k_grid(&self) -> &[f64] {
        &self.k_grid
    }

    /// Cached amplitude of basis state `index` (0-based) across the grid.
    pub fn basis_row(&self, index: usize) -> &[Complex64] {
        &self.rows[index]
    }

    /// The weights this table's own state uses at time t.
    pub fn state_weights(&self, t: f64) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .zip(&self.energies)
            .map(|(c, e)| phase(*e, t) * *c)
            .collect()
    }

    /// Amplitude at grid point `j` for an arbitrary weight vector.
    pub fn weighted_amplitude(&self, j: usize, weights: &[Complex64]) -> Complex64 {
        assert!(weights.len() <= self.rows.len(), "more weights than cached rows");
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, row) in weights.iter().zip(&self.rows) {
            acc += *w * row[j];
        }
        acc
    }

    /// Amplitude of the table's own state at grid point `j`, time t.
    pub fn amplitude(&self, j: usize, t: f64) -> Complex64 {
        self.weighted_amplitude(j, &self.state_weights(t))
    }

    /// Momentum density at grid point `j`, time t.
    pub fn density(&self, j: usize, t: f64) -> f64 {
        self.amplitude(j, t).norm_sqr()
    }

    /// Densities across the whole grid at time t.
    pub fn density_row(&self, t: f64) -> Vec<f64> {
        let weights = self.state_weights(t);
        (0..self.k_grid.len())
            .map(|j| self.weighted_amplitude(j, &weights).norm_sqr())
            .collect()
    }

    /// Grid wavenumber with the largest density at time t.
    pub fn peak_wavenumber(&self, t: f64) -> f64 {
        let densities = self.density_row(t);
        let mut best = 0;
        for (j, d) in densities.iter().enumerate() {
            if *d > densities[best] {
                best = j;
            }
        }
        self.k_grid[best]
    }
}

/// Two released modes combined with probabilities p1 and p2, available as
/// an amplitude-level (coherent) or probability-level (incoherent) mixture.
#[derive(Clone, Debug)]
pub struct TwoModeMixture {
    first: Region2Expansion,
    second: Region2Expansion,
    p1: f64,
    p2: f64,
}

/// Combine two expansions over the same basis and step.
pub fn two_mode_mixture(
    first: Region2Expansion,
    second: Region2Expansion,
    p1: f64,
    p2: f64,
) -> Result<TwoModeMixture, ExpansionError> {
    if !(p1 >= 0.0 && p2 >= 0.0 && (p1 + p2 - 1.0).abs() <= 1e-12) {
        return Err(ExpansionError::BadWeights { p1, p2 });
    }
    if first.z0_um != second.z0_um
        || first.step_um != second.step_um
        || first.truncation() != second.truncation()
    {
        return Err(ExpansionError::MismatchedComponents);
    }
    Ok(TwoModeMixture { first, second, p1, p2 })
}

impl TwoModeMixture {
    pub fn components(&self) -> (&Region2Expansion, &Region2Expansion) {
        (&self.first, &self.second)
    }

    pub fn weights(&self) -> (f64, f64) {
        (self.p1, self.p2)
    }

    /// Amplitude-level combination sqrt(p1) psi_1 + sqrt(p2) psi_2.
    pub fn coherent_wavefunction(&self, z_um: f64, t: f64) -> Complex64 {
        self.p1.sqrt() * self.first.wavefunction(z_um, t)
            + self.p2.sqrt() * self.second.wavefunction(z_um, t)
    }

    /// Cosine/sine parts of the coherent wave, as in
    /// [`Region2Expansion::trig_components`].
    pub fn trig_components(&self, z_um: f64, t: f64) -> (f64, f64) {
        let w = self.coherent_wavefunction(z_um, t);
        (w.re, -w.im)
    }

    /// Density of the coherent combination, 1/um.
    pub fn coherent_density(&self, z_um: f64, t: f64) -> f64 {
        self.coherent_wavefunction(z_um, t).norm_sqr()
    }

    /// Probability-level combination p1 |psi_1|^2 + p2 |psi_2|^2, 1/um.
    pub fn incoherent_density(&self, z_um: f64, t: f64) -> f64 {
        self.p1 * self.first.spatial_density(z_um, t)
            + self.p2 * self.second.spatial_density(z_um, t)
    }

    /// Exact space integral of the coherent density at any time, from
    /// basis orthonormality: p1 |c1|^2 + p2 |c2|^2 + 2 sqrt(p1 p2) c1.c2.
    /// Conserved in time; below 1 by the truncation losses.
    pub fn coherent_norm(&self) -> f64 {
        let cross: f64 = self
            .first
            .coeffs
            .iter()
            .zip(&self.second.coeffs)
            .map(|(x, y)| x * y)
            .sum();
        self.p1 * self.first.captured_norm()
            + self.p2 * self.second.captured_norm()
            + 2.0 * (self.p1 * self.p2).sqrt() * cross
    }

    /// Exact space integral of the incoherent density, conserved in time.
    pub fn incoherent_norm(&self) -> f64 {
        self.p1 * self.first.captured_norm() + self.p2 * self.second.captured_norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double_mirror::solve_modes;
    use crate::scales::ScaleSystem;

    fn setup() -> Region2Expansion {
        let scales = ScaleSystem::reference();
        let modes = solve_modes(&scales, 28.0, 2).unwrap();
        expand(&modes[0], 27.0, 15, &QuadratureSpec::default()).unwrap()
    }

    #[test]
    fn rejects_bad_inputs() {
        let scales = ScaleSystem::reference();
        let modes = solve_modes(&scales, 28.0, 1).unwrap();
        let spec = QuadratureSpec::default();
        assert!(matches!(
            expand(&modes[0], f64::NAN, 15, &spec),
            Err(ExpansionError::BadStep(_))
        ));
        assert!(matches!(
            expand(&modes[0], 27.0, 0, &spec),
            Err(ExpansionError::BadTruncation)
        ));
    }

    #[test]
    fn captures_most_of_the_norm() {
        let exp = setup();
        assert!(exp.fallback_indices().is_empty());
        assert_eq!(exp.coefficients().len(), 15);
        let captured = exp.captured_norm();
        assert!(captured > 0.99 && captured < 1.0, "captured {captured}");
    }

    #[test]
    fn degenerate_gap_uses_overlap_fallback() {
        let scales = ScaleSystem::reference();
        let modes = solve_modes(&scales, 28.0, 1).unwrap();
        // Choose the step so that z_4 - zbar - h = 0 exactly.
        let z4 = -airy::ai_zero(4) * modes[0].z0_um();
        let step = z4 - modes[0].zbar_um;
        let exp = expand(&modes[0], step, 15, &QuadratureSpec::default()).unwrap();
        assert_eq!(exp.fallback_indices(), &[4]);
        // The coefficient must sit on the smooth curve traced by the
        // closed form just off the degeneracy.
        let lo = expand(&modes[0], step - 1e-2, 15, &QuadratureSpec::default()).unwrap();
        let hi = expand(&modes[0], step + 1e-2, 15, &QuadratureSpec::default()).unwrap();
        let interpolated = 0.5 * (lo.coefficients()[3] + hi.coefficients()[3]);
        assert!(
            (exp.coefficients()[3] - interpolated).abs() < 1e-4,
            "fallback {} vs interpolated {}",
            exp.coefficients()[3],
            interpolated
        );
    }

    #[test]
    fn mixture_weight_validation() {
        let exp = setup();
        assert!(matches!(
            two_mode_mixture(exp.clone(), exp, 0.6, 0.6),
            Err(ExpansionError::BadWeights { .. })
        ));
    }
}
