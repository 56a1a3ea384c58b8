//! Quantum states of ultracold neutrons bound by Earth's gravity above
//! horizontal mirrors.
//!
//! The library covers, at desk scale:
//! - single-mirror bound states, their energy levels, position and momentum
//!   densities, and two-state superposition dynamics ([`gravity`]);
//! - bound modes between two mirrors separated by a slit ([`double_mirror`]);
//! - free fall of a mode released from a raised slit, expanded over the
//!   single-mirror eigenbasis ([`free_fall`]);
//! - Wigner quasi-probability distributions for all of the above
//!   ([`wigner`]);
//! - first-order corrections from a short-ranged Yukawa-type interaction
//!   sourced by the lower mirror ([`yukawa`]).
//!
//! Foundations: a dedicated Airy-function evaluator ([`airy`]), adaptive
//! Gauss-Kronrod quadrature ([`quadrature`]), and the characteristic scale
//! bookkeeping ([`scales`]).
//!
//! All public interfaces use SI units (m, J, s) unless a function is
//! explicitly documented as dimensionless; the scaled units of
//! [`scales::ScaleSystem`] connect the two.

pub mod airy;
pub mod double_mirror;
pub mod free_fall;
pub mod gravity;
pub mod quadrature;
pub mod scales;
pub mod wigner;
pub mod yukawa;

pub use scales::ScaleSystem;
