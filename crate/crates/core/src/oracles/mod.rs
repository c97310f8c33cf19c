//! Verification routes that do not go through the convolution engine.
//!
//! The symbolic oracles are exact. [`monte_carlo`] is advisory only: it
//! estimates the defining integral numerically and never feeds back into
//! any symbolic result.

pub mod fourier_motzkin;
pub mod monte_carlo;
pub mod newton;
pub mod summation;

pub use monte_carlo::{monte_carlo_integrable, McConfig, McEvidence, Verdict};
pub use newton::{newton_membership, newton_multiplier_ideal};
pub use summation::summation_path;

use crate::rat::Rat;

/// `∫ |z|^{2g} / |z|^{2αm}` near 0 is finite iff `g + 1 > αm`.
pub fn one_var_integrable(g: u32, m: u32, alpha: Rat) -> bool {
    Rat::from(g + 1) > alpha * Rat::from(m)
}
