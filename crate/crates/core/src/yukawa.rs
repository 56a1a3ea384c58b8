//! First-order perturbation theory for a short-ranged exponential
//! interaction W(z) = W0 e^{-z/delta} sourced by the lower mirror:
//! shifted energies, mixed eigenfunctions through a near-identity change
//! of basis, perturbed time evolution of a released state, and difference
//! maps against the unperturbed evolution.
//!
//! The perturbed evolution is a similarity transform of the unperturbed
//! one: weights w(t) = T diag(e^{-i eps_n t/hbar}) T^{-1} c, synthesized
//! over the same basis by the same code as the W0 = 0 case.  With W0 = 0
//! every matrix entry is an exact 0 or 1 and eps_n = E_n + 0.0, so the
//! perturbed path reproduces the unperturbed numbers exactly, not merely
//! approximately -- the difference maps are identically zero.

use crate::free_fall::{self, Region2Expansion};
use crate::gravity::{self, Eigenfunction, EnergyLevel};
use crate::quadrature::{self, QuadratureError, QuadratureSpec};
use crate::scales::{constants, ScaleSystem};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Smallest tolerated level spacing for the mixing denominators, peV.
/// The single-mirror spectrum is strictly non-degenerate; this guards
/// against a misuse that would feed near-equal energies in.
const MIN_SPACING_PEV: f64 = 1e-6;

/// Largest supported basis truncation.
const MAX_TRUNCATION: usize = 30;

#[derive(Debug, thiserror::Error)]
pub enum YukawaError {
    #[error("basis truncation must be between 1 and {MAX_TRUNCATION}, got {0}")]
    BadTruncation(usize),
    #[error("interaction range must be positive and finite, got {0} um")]
    BadRange(f64),
    #[error("perturbation strength must be finite, got {0} peV")]
    BadStrength(f64),
    #[error("levels {n_prime} and {n} are closer than {MIN_SPACING_PEV} peV")]
    LevelSpacing { n_prime: usize, n: usize },
    #[error("mixing matrix is singular")]
    Singular,
    #[error("matrix element ({row}, {col}) failed: {source}")]
    MatrixElement {
        row: usize,
        col: usize,
        source: QuadratureError,
    },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// The perturbation, its matrix elements over the bound-state basis, the
/// first-order energies, and the near-identity mixing matrix with its
/// inverse.
#[derive(Clone, Debug)]
pub struct YukawaModel {
    w0_pev: f64,
    delta_um: f64,
    eigens: Vec<Eigenfunction>,
    energies_joule: Vec<f64>,
    /// Full matrix of <psi_n' | W | psi_n>, peV; every entry its own
    /// quadrature, so its symmetry is a measured property.
    j_pev: DMatrix<f64>,
    mixing: DMatrix<f64>,
    mixing_inv: DMatrix<f64>,
    /// eps_n = E_n + J_nn, joule; exactly E_n when W0 = 0.
    eps_joule: Vec<f64>,
}

impl YukawaModel {
    /// Build the model over the lowest `truncation` bound states of the
    /// given scale system.
    pub fn new(
        scales: &ScaleSystem,
        w0_pev: f64,
        delta_um: f64,
        truncation: usize,
        spec: &QuadratureSpec,
    ) -> Result<Self, YukawaError> {
        let levels = gravity::levels(scales, truncation);
        Self::from_levels(&levels, scales.z0() / constants::MICRON, w0_pev, delta_um, spec)
    }

    /// Build the model over an explicit set of levels (indices 1..=N with
    /// their energies) and the height scale z0 (um) they belong to.  Used
    /// to keep a perturbed expansion on exactly the same energies as its
    /// unperturbed base.
    pub fn from_levels(
        levels: &[EnergyLevel],
        z0_um: f64,
        w0_pev: f64,
        delta_um: f64,
        spec: &QuadratureSpec,
    ) -> Result<Self, YukawaError> {
        let n = levels.len();
        if n == 0 || n > MAX_TRUNCATION {
            return Err(YukawaError::BadTruncation(n));
        }
        if !(delta_um > 0.0 && delta_um.is_finite()) {
            return Err(YukawaError::BadRange(delta_um));
        }
        if !w0_pev.is_finite() {
            return Err(YukawaError::BadStrength(w0_pev));
        }
        let eigens: Vec<Eigenfunction> = levels.iter().map(|l| gravity::eigenfunction(l.n)).collect();
        let energies_joule: Vec<f64> = levels.iter().map(|l| l.energy).collect();
        let energies_pev: Vec<f64> = energies_joule
            .iter()
            .map(|e| e / constants::PICO_EV)
            .collect();

        // Matrix elements: W0 * Integral psi_n'(zeta) psi_n(zeta)
        // e^{-beta zeta} d zeta with beta = z0/delta (the e^{-z/delta}
        // factor in scaled heights).  The basis is normalized in zeta, so
        // the overlap carries no extra scale factor.
        let beta = z0_um / delta_um;
        let mut j_pev = DMatrix::zeros(n, n);
        for row in 0..n {
            for col in 0..n {
                let hi = &eigens[row];
                let lo = &eigens[col];
                let upper = hi.turning_point().max(lo.turning_point()) + spec.tail_pad;
                let est = quadrature::integrate(
                    |zeta| hi.eval(zeta) * lo.eval(zeta) * (-beta * zeta).exp(),
                    0.0,
                    upper,
                    spec,
                )
                .map_err(|source| YukawaError::MatrixElement {
                    row: levels[row].n,
                    col: levels[col].n,
                    source,
                })?;
                j_pev[(row, col)] = w0_pev * est.value;
            }
        }

        // Mixing matrix: exact ones on the diagonal, J_{n',n}/(E_n - E_n')
        // off it.
        let mut mixing = DMatrix::zeros(n, n);
        for row in 0..n {
            mixing[(row, row)] = 1.0;
            for col in 0..n {
                if row == col {
                    continue;
                }
                let gap = energies_pev[col] - energies_pev[row];
                if gap.abs() < MIN_SPACING_PEV {
                    return Err(YukawaError::LevelSpacing {
                        n_prime: levels[row].n,
                        n: levels[col].n,
                    });
                }
                mixing[(row, col)] = j_pev[(row, col)] / gap;
            }
        }
        let mixing_inv = mixing.clone().try_inverse().ok_or(YukawaError::Singular)?;

        let eps_joule: Vec<f64> = energies_joule
            .iter()
            .enumerate()
            .map(|(i, e)| e + j_pev[(i, i)] * constants::PICO_EV)
            .collect();

        Ok(Self {
            w0_pev,
            delta_um,
            eigens,
            energies_joule,
            j_pev,
            mixing,
            mixing_inv,
            eps_joule,
        })
    }

    pub fn truncation(&self) -> usize {
        self.eigens.len()
    }

    pub fn strength_pev(&self) -> f64 {
        self.w0_pev
    }

    pub fn range_um(&self) -> f64 {
        self.delta_um
    }

    /// The perturbation itself, W0 e^{-z/delta}, peV; z in um.
    pub fn potential_pev(&self, z_um: f64) -> f64 {
        self.w0_pev * (-z_um / self.delta_um).exp()
    }

    /// Matrix of <psi_n' | W | psi_n>, peV.
    pub fn matrix_pev(&self) -> &DMatrix<f64> {
        &self.j_pev
    }

    /// The near-identity change of basis from unperturbed to perturbed
    /// states (columns are perturbed states over the unperturbed basis).
    pub fn mixing(&self) -> &DMatrix<f64> {
        &self.mixing
    }

    pub fn mixing_inverse(&self) -> &DMatrix<f64> {
        &self.mixing_inv
    }

    /// Unperturbed energies, peV.
    pub fn unperturbed_energies_pev(&self) -> Vec<f64> {
        self.energies_joule
            .iter()
            .map(|e| e / constants::PICO_EV)
            .collect()
    }

    /// First-order energies eps_n = E_n + <psi_n|W|psi_n>, peV.
    pub fn perturbed_energies_pev(&self) -> Vec<f64> {
        self.eps_joule.iter().map(|e| e / constants::PICO_EV).collect()
    }

    /// First-order perturbed eigenfunction n (1-based) at scaled height
    /// zeta: the n-th column of the mixing matrix over the unperturbed
    /// basis.
    pub fn perturbed_wavefunction(&self, n: usize, zeta: f64) -> f64 {
        assert!(
            (1..=self.truncation()).contains(&n),
            "state index {n} outside 1..={}",
            self.truncation()
        );
        let col = n - 1;
        self.eigens
            .iter()
            .enumerate()
            .map(|(row, psi)| psi.eval(zeta) * self.mixing[(row, col)])
            .sum()
    }

    /// w(t) = T diag(e^{-i eps t/hbar}) T^{-1} v: the perturbed evolution
    /// of a weight vector expressed over the unperturbed basis.
    pub fn evolve_weights(&self, coeffs: &[f64], t: f64) -> Vec<Complex64> {
        let n = self.truncation();
        assert_eq!(coeffs.len(), n, "weight vector length mismatch");
        let mut b: Vec<Complex64> = (0..n)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, c) in coeffs.iter().enumerate() {
                    acc += self.mixing_inv[(i, j)] * Complex64::new(*c, 0.0);
                }
                acc
            })
            .collect();
        for (i, slot) in b.iter_mut().enumerate() {
            *slot = free_fall::phase(self.eps_joule[i], t) * *slot;
        }
        (0..n)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, bj) in b.iter().enumerate() {
                    acc += self.mixing[(i, j)] * *bj;
                }
                acc
            })
            .collect()
    }
}

/// A released two-mirror mode evolved under the perturbed Hamiltonian,
/// wrapping the unperturbed expansion it is compared against.
#[derive(Clone, Debug)]
pub struct PerturbedExpansion {
    base: Region2Expansion,
    model: YukawaModel,
    /// Rescaled expansion coefficients over the bare-Airy convention,
    /// sqrt(um) units: D_n sqrt(z0) Ai'(a_n).
    d_bar: Vec<f64>,
}

impl PerturbedExpansion {
    /// Attach a perturbation of strength `w0_pev` and range `delta_um` to
    /// an existing expansion; the model reuses the expansion's own levels
    /// so the two evolutions share every unperturbed number.
    pub fn new(
        base: Region2Expansion,
        w0_pev: f64,
        delta_um: f64,
        spec: &QuadratureSpec,
    ) -> Result<Self, YukawaError> {
        let model =
            YukawaModel::from_levels(base.levels(), base.z0_um(), w0_pev, delta_um, spec)?;
        let sqrt_z0 = base.z0_um().sqrt();
        let d_bar: Vec<f64> = base
            .airy_basis_coefficients()
            .iter()
            .zip(base.levels())
            .map(|(d, level)| d * sqrt_z0 * crate::airy::ai_prime(level.zero))
            .collect();
        Ok(Self { base, model, d_bar })
    }

    pub fn base(&self) -> &Region2Expansion {
        &self.base
    }

    pub fn model(&self) -> &YukawaModel {
        &self.model
    }

    /// The rescaled coefficients D_n sqrt(z0) Ai'(a_n), sqrt(um).
    pub fn rescaled_coefficients(&self) -> &[f64] {
        &self.d_bar
    }

    /// Perturbed evolution weights at time t over the unperturbed basis.
    pub fn perturbed_weights(&self, t: f64) -> Vec<Complex64> {
        self.model.evolve_weights(self.base.coefficients(), t)
    }

    /// Perturbed wave at height z (um) and time t, 1/sqrt(um).
    pub fn wavefunction(&self, z_um: f64, t: f64) -> Complex64 {
        self.base.synthesize(&self.perturbed_weights(t), z_um)
    }

    /// Cosine- and sine-like parts of the perturbed wave (real part,
    /// negated imaginary part), matching the unperturbed convention.
    pub fn trig_components(&self, z_um: f64, t: f64) -> (f64, f64) {
        let value = self.wavefunction(z_um, t);
        (value.re, -value.im)
    }

    /// Perturbed spatial density, 1/um.
    pub fn spatial_density(&self, z_um: f64, t: f64) -> f64 {
        self.wavefunction(z_um, t).norm_sqr()
    }

    /// Perturbed minus unperturbed spatial density at (z, t).  Identically
    /// zero when W0 = 0: both densities then come from the same weights
    /// through the same synthesis.
    pub fn delta_space(&self, z_um: f64, t: f64) -> f64 {
        let unperturbed = self
            .base
            .synthesize(&self.base.evolution_weights(t), z_um)
            .norm_sqr();
        self.spatial_density(z_um, t) - unperturbed
    }

    /// Perturbed momentum amplitude at k (1/um), sqrt(um).
    pub fn momentum_amplitude(
        &self,
        k: f64,
        t: f64,
        spec: &QuadratureSpec,
    ) -> Result<Complex64, QuadratureError> {
        self.base
            .weighted_momentum_amplitude(&self.perturbed_weights(t), k, spec)
    }

    /// Perturbed momentum density, um.
    pub fn momentum_density(
        &self,
        k: f64,
        t: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64, QuadratureError> {
        Ok(self.momentum_amplitude(k, t, spec)?.norm_sqr())
    }

    /// Perturbed minus unperturbed momentum density at (k, t); identically
    /// zero when W0 = 0.
    pub fn delta_momentum(
        &self,
        k: f64,
        t: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64, QuadratureError> {
        let perturbed = self.momentum_density(k, t, spec)?;
        let unperturbed = self
            .base
            .weighted_momentum_amplitude(&self.base.evolution_weights(t), k, spec)?
            .norm_sqr();
        Ok(perturbed - unperturbed)
    }

    /// Integral of the perturbed momentum density over the k-axis.
    pub fn momentum_norm(
        &self,
        t: f64,
        k_max: f64,
        spec: &QuadratureSpec,
    ) -> Result<f64, QuadratureError> {
        self.base
            .weighted_momentum_norm(&self.perturbed_weights(t), k_max, spec)
    }
}
