//! Exact multiplier-ideal and microlocal V-filtration invariants of diagonal
//! hypersurface germs `Σ zⱼ^{mⱼ}` and their Thom-Sebastiani sums.
//!
//! Everything symbolic is computed with exact rationals ([`Rat`]) and
//! monomial ideals given by minimal generators ([`MonomialIdeal`]). The
//! [`oracles`] module holds independent verification routes: a rational
//! Newton-polyhedron test, the mixed multiplier-ideal summation route, and a
//! Monte-Carlo integrability check.

pub mod error;
pub mod filtration;
pub mod germs;
pub mod monomial;
pub mod oracles;
pub mod par;
pub mod rat;
pub mod spectral;
pub mod thom_sebastiani;

pub use error::{Error, Result};
pub use filtration::{ChainKind, JumpChain, JumpSet, Mode};
pub use germs::Germ;
pub use monomial::{Exponent, MonomialIdeal, QuotientBasis, ScaledIdeal};
pub use rat::Rat;
