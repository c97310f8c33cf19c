//! Multiplier ideals of monomial ideals from the Newton polyhedron:
//! `z^ν ∈ J(𝔞^α)` iff `ν + 1` lies in the interior of `α·P(𝔞)`, where
//! `P(𝔞) = conv(generators) + ℝ≥0^d`.
//!
//! Since the recession cone is the whole orthant, `x` is interior iff some
//! point of `α·conv(generators)` is strictly below `x` in every coordinate,
//! which is a small rational feasibility problem in the convex weights.

use super::fourier_motzkin::{feasible, Constraint};
use crate::error::{Error, Result};
use crate::monomial::{Exponent, MonomialIdeal};
use crate::rat::Rat;

pub fn newton_membership(a: &MonomialIdeal, nu: &Exponent, alpha: Rat) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if nu.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: nu.dim() });
    }
    if alpha.is_negative() {
        return Err(Error::Domain(format!("α must be non-negative, got {alpha}")));
    }
    if alpha.is_zero() {
        return Ok(true);
    }
    let gens = a.generators();
    let n = gens.len();
    let mut system = Vec::with_capacity(n + 2 + nu.dim());
    // λ ≥ 0, Σλ = 1
    for g in 0..n {
        let mut c = vec![Rat::ZERO; n];
        c[g] = -Rat::ONE;
        system.push(Constraint::le(c, Rat::ZERO));
    }
    system.extend(Constraint::eq(vec![Rat::ONE; n], Rat::ONE));
    // α Σ λ_g g_i < ν_i + 1
    for i in 0..nu.dim() {
        let c = gens.iter().map(|g| alpha * Rat::from(g.0[i])).collect();
        system.push(Constraint::lt(c, Rat::from(nu.0[i] + 1)));
    }
    Ok(feasible(&system))
}

/// `J(𝔞^α)` for an ideal containing a pure power of every variable.
///
/// With pure powers `zᵢ^{pᵢ} ∈ 𝔞`, every `ν` with some `νᵢ >= ⌈α pᵢ⌉` is a
/// member, so minimal generators live in the box `Πᵢ [0, ⌈α pᵢ⌉]`.
pub fn newton_multiplier_ideal(a: &MonomialIdeal, alpha: Rat) -> Result<MonomialIdeal> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let d = a.dim();
    let mut bounds = Vec::with_capacity(d);
    for i in 0..d {
        let pure = a
            .generators()
            .iter()
            .filter(|g| g.0.iter().enumerate().all(|(j, e)| j == i || *e == 0))
            .map(|g| g.0[i])
            .min()
            .ok_or_else(|| Error::Domain(format!("ideal has no pure power of variable {}", i + 1)))?;
        bounds.push((alpha * Rat::from(pure)).ceil().max(0) as u32);
    }
    let mut members = Vec::new();
    let mut nu = vec![0u32; d];
    loop {
        let e = Exponent(nu.clone());
        if newton_membership(a, &e, alpha)? {
            members.push(e);
        }
        // odometer over the box
        let mut i = 0;
        while i < d {
            if nu[i] < bounds[i] {
                nu[i] += 1;
                break;
            }
            nu[i] = 0;
            i += 1;
        }
        if i == d {
            break;
        }
    }
    MonomialIdeal::new(d, members.into_iter().map(|e| e.0))
}
