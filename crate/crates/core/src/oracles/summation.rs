//! The mixed-multiplier-ideal route to `J(αX)` for `f = z₁^{m₁} + z₂^{m₂}`.
//!
//! Three computations have to agree:
//! the Newton-polyhedron value of `J(𝔞^α)` with `𝔞 = (z₁^{m₁}, z₂^{m₂})`,
//! the summation formula `Σ_{α₁+α₂=α} J(α₁X₁) ⊠ J(α₂X₂)` evaluated directly
//! on the one-variable J-chains, and the convolution engine.

use super::newton::newton_multiplier_ideal;
use crate::error::{Error, Result};
use crate::filtration::JumpChain;
use crate::germs::one_var_usual_chain;
use crate::monomial::MonomialIdeal;
use crate::rat::Rat;
use crate::thom_sebastiani::ts_multiplier;

/// `Σ_{α₁ ∈ [0, α]} J₁(α₁) ⊠ J₂(α − α₁)` for right-continuous chains.
///
/// On `[lⱼ, lⱼ₊₁)` the first factor is constant and the second is largest
/// as `α₁ → lⱼ₊₁`, which by right-continuity gives `J₂(α − lⱼ₊₁)`.
fn direct_sum(c1: &JumpChain, c2: &JumpChain, alpha: Rat) -> Result<MonomialIdeal> {
    let mut starts = vec![Rat::ZERO];
    starts.extend(c1.levels().iter().copied().take_while(|l| *l <= alpha));
    let mut terms = Vec::with_capacity(starts.len());
    for (i, s) in starts.iter().enumerate() {
        let first = c1.j_lookup(*s)?;
        // the last interval contains α, where the second factor is the unit ideal
        let second = match starts.get(i + 1) {
            Some(next) => c2.j_lookup(alpha - *next)?.clone(),
            None => MonomialIdeal::unit(c2.dim()),
        };
        terms.push(first.external_product(&second));
    }
    MonomialIdeal::sum_all(c1.dim() + c2.dim(), terms.iter())
}

pub fn summation_path(m1: u32, m2: u32, alpha: Rat) -> Result<MonomialIdeal> {
    if !alpha.is_positive() || alpha >= Rat::ONE {
        return Err(Error::Domain(format!("summation route needs α in (0, 1), got {alpha}")));
    }
    let c1 = one_var_usual_chain(m1, Rat::ONE)?;
    let c2 = one_var_usual_chain(m2, Rat::ONE)?;
    let a = MonomialIdeal::new(2, vec![vec![m1, 0], vec![0, m2]])?;
    let newton = newton_multiplier_ideal(&a, alpha)?;
    let direct = direct_sum(&c1, &c2, alpha)?;
    let engine = ts_multiplier(&c1, &c2, alpha)?;
    if newton != direct || newton != engine {
        return Err(Error::Inconsistent(format!(
            "({m1},{m2}) at {alpha}: newton {newton}, summation {direct}, convolution {engine}"
        )));
    }
    Ok(newton)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::r;

    #[test]
    fn examples() {
        let max = MonomialIdeal::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(summation_path(2, 3, r(5, 6)).unwrap(), max);
        assert!(summation_path(2, 3, r(1, 2)).unwrap().is_unit());
        assert!(summation_path(2, 2, r(3, 4)).unwrap().is_unit());
        assert!(summation_path(2, 3, Rat::ONE).is_err());
    }

    #[test]
    fn small_grid() {
        for m1 in 2..5 {
            for m2 in 2..5 {
                let den = (m1 * m2) as i128;
                for n in 1..den {
                    summation_path(m1, m2, r(n, den)).unwrap();
                }
            }
        }
    }
}
