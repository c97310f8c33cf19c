//! Thom-Sebastiani convolution of filtrations.
//!
//! For `f = f₁ + f₂` in disjoint variables the microlocal V-filtration is
//!
//! ```text
//! Ṽ^α O_Y = Σ_{α₁+α₂ ≥ α} Ṽ^{α₁} O_{Y₁} ⊠ Ṽ^{α₂} O_{Y₂},
//! ```
//!
//! and below `α = 1` the same formula holds for usual multiplier ideals.
//! Both sides are step functions, so the sum only has to be taken over the
//! factor jump levels; everything else in this module is derived from the
//! convolved chain.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{ChainKind, JumpChain, JumpSet, Mode};
use crate::germs::{one_var_microlocal_chain, one_var_usual_chain, Germ};
use crate::monomial::{colength, quotient_basis, MonomialIdeal, QuotientBasis};
use crate::par;
use crate::rat::Rat;

fn require(chain: &JumpChain, mode: Mode, kind: ChainKind) -> Result<()> {
    if chain.mode() != mode {
        return Err(Error::WrongChain { expected: if mode == Mode::V { "V-mode" } else { "J-mode" } });
    }
    if chain.kind() != kind {
        return Err(Error::WrongChain {
            expected: if kind == ChainKind::Microlocal { "microlocal" } else { "usual multiplier" },
        });
    }
    Ok(())
}

fn check_window(window: Rat, factors: &[&JumpChain]) -> Result<()> {
    if !window.is_positive() {
        return Err(Error::Domain(format!("window must be positive, got {window}")));
    }
    for c in factors {
        if window > c.window() {
            return Err(Error::WindowExceeded { level: window, window: c.window() });
        }
    }
    Ok(())
}

/// `Ṽ^α` of the convolution at a single level `α < window`.
///
/// Only pairs `(β, α − β)` with `β ∈ {0} ∪ (L₁ ∩ (0, α)) ∪ {α}` are needed:
/// any pair with `β₁ + β₂ ≥ α` is dominated by one of them. Among those,
/// a pair whose second factor equals the previous one's is dominated too.
fn convolve_at(c1: &JumpChain, c2: &JumpChain, alpha: Rat) -> MonomialIdeal {
    let mut betas = vec![Rat::ZERO];
    betas.extend(c1.levels().iter().copied().take_while(|l| *l < alpha));
    if alpha.is_positive() {
        betas.push(alpha);
    }
    let mut terms: Vec<MonomialIdeal> = Vec::with_capacity(betas.len());
    let mut last_second: Option<&MonomialIdeal> = None;
    for beta in betas {
        let second = c2.value_left(alpha - beta).expect("inside window");
        if last_second == Some(second) {
            continue;
        }
        last_second = Some(second);
        let first = c1.value_left(beta).expect("inside window");
        terms.push(first.external_product(second));
    }
    MonomialIdeal::sum_all(c1.dim() + c2.dim(), terms.iter()).expect("dimensions agree")
}

/// Convolution of two V-chains without mode or kind checks.
fn convolve_v(c1: &JumpChain, c2: &JumpChain, window: Rat, kind: ChainKind) -> Result<JumpChain> {
    check_window(window, &[c1, c2])?;
    let mut firsts = vec![Rat::ZERO];
    firsts.extend_from_slice(c1.levels());
    let mut seconds = vec![Rat::ZERO];
    seconds.extend_from_slice(c2.levels());
    let mut levels: Vec<Rat> = Vec::new();
    for a in &firsts {
        for b in &seconds {
            let s = *a + *b;
            if s >= window {
                break;
            }
            if s.is_positive() {
                levels.push(s);
            }
        }
    }
    levels.sort();
    levels.dedup();

    // one probe per open plateau interval
    let mut probes = Vec::with_capacity(levels.len() + 1);
    let mut prev = Rat::ZERO;
    for l in levels.iter().chain(std::iter::once(&window)) {
        probes.push((prev + *l) / Rat::int(2));
        prev = *l;
    }
    let plateaus = par::map(&probes, |a| convolve_at(c1, c2, *a));
    JumpChain::from_candidate_plateaus(Mode::V, kind, window, levels, plateaus)
}

/// Microlocal V-chain of `f₁ + f₂` on `[0, window)`.
pub fn ts_convolve_chains(c1: &JumpChain, c2: &JumpChain, window: Rat) -> Result<JumpChain> {
    require(c1, Mode::V, ChainKind::Microlocal)?;
    require(c2, Mode::V, ChainKind::Microlocal)?;
    convolve_v(c1, c2, window, ChainKind::Microlocal)
}

/// Usual multiplier J-chain of `f₁ + f₂` from usual J-chains on `[0, W)`, `W <= 1`.
///
/// Below one the usual and microlocal filtrations agree, so this runs the
/// microlocal engine on the relabelled factors.
pub fn ts_usual_chain(c1: &JumpChain, c2: &JumpChain) -> Result<JumpChain> {
    require(c1, Mode::J, ChainKind::Usual)?;
    require(c2, Mode::J, ChainKind::Usual)?;
    let window = c1.window().min(c2.window()).min(Rat::ONE);
    convolve_v(&c1.j_to_v()?, &c2.j_to_v()?, window, ChainKind::Usual)?.v_to_j()
}

/// `J(αX)` for `f₁ + f₂` and `α ∈ (0, 1)`.
pub fn ts_multiplier(c1: &JumpChain, c2: &JumpChain, alpha: Rat) -> Result<MonomialIdeal> {
    if !alpha.is_positive() || alpha >= Rat::ONE {
        return Err(Error::Domain(format!(
            "the convolution formula for J(αX) needs α in (0, 1), got {alpha}; use periodic extension beyond"
        )));
    }
    let chain = ts_usual_chain(c1, c2)?;
    chain.j_lookup(alpha).cloned()
}

/// Jumping coefficients of the sum: `{s₁ + s₂} ∩ (0, window)`.
pub fn ts_jumpset(s1: &JumpSet, s2: &JumpSet, window: Rat) -> Result<JumpSet> {
    for s in [s1, s2] {
        if window > s.window {
            return Err(Error::WindowExceeded { level: window, window: s.window });
        }
    }
    let mut values = Vec::new();
    for a in &s1.values {
        for b in &s2.values {
            let v = *a + *b;
            if v >= window {
                break;
            }
            values.push(v);
        }
    }
    JumpSet::new(values, window, false)
}

/// `lct(X) = min(1, lct(X₁) + lct(X₂))`.
pub fn ts_lct(l1: Rat, l2: Rat) -> Result<Rat> {
    for l in [l1, l2] {
        if !l.is_positive() || l > Rat::ONE {
            return Err(Error::Domain(format!("log canonical thresholds lie in (0, 1], got {l}")));
        }
    }
    Ok((l1 + l2).min(Rat::ONE))
}

/// One summand `G̃(α₁X₁) ⊠ G̃(α₂X₂)` of a graded piece of the sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSummand {
    pub levels: Vec<Rat>,
    pub basis: QuotientBasis,
}

impl GradedSummand {
    pub fn dim(&self) -> Option<usize> {
        self.basis.dim()
    }
}

/// `G̃(αX) = ⊕_{α₁+α₂=α} G̃(α₁X₁) ⊠ G̃(α₂X₂)` with product bases.
pub fn ts_graded(c1: &JumpChain, c2: &JumpChain, alpha: Rat) -> Result<Vec<GradedSummand>> {
    graded_decomposition(&[c1.clone(), c2.clone()], alpha)
}

/// Iterated version of [`ts_graded`] over any number of factors.
pub fn graded_decomposition(factors: &[JumpChain], alpha: Rat) -> Result<Vec<GradedSummand>> {
    let (first, rest) =
        factors.split_first().ok_or_else(|| Error::Domain("graded decomposition needs at least one factor".into()))?;
    if alpha >= first.window() {
        return Err(Error::WindowExceeded { level: alpha, window: first.window() });
    }
    if rest.is_empty() {
        let basis = first.graded_at(alpha)?;
        return Ok(if basis.is_zero() { Vec::new() } else { vec![GradedSummand { levels: vec![alpha], basis }] });
    }
    let mut out = Vec::new();
    for beta in first.levels().iter().copied().take_while(|l| *l < alpha) {
        let head = first.graded_at(beta)?;
        for tail in graded_decomposition(rest, alpha - beta)? {
            let mut levels = vec![beta];
            levels.extend(tail.levels);
            out.push(GradedSummand { levels, basis: head.external_product(&tail.basis) });
        }
    }
    Ok(out)
}

/// Total dimension of a decomposition, `None` if some summand is infinite.
pub fn total_dim(summands: &[GradedSummand]) -> Option<usize> {
    summands.iter().map(GradedSummand::dim).sum()
}

/// Microlocal chain of a diagonal germ by convolving its one-variable factors.
pub fn convolved_microlocal_chain(germ: &Germ, window: Rat) -> Result<JumpChain> {
    let mut factors = germ.exponents().iter().map(|&m| one_var_microlocal_chain(m, window));
    let mut acc = factors.next().expect("germs have at least one variable")?;
    for f in factors {
        acc = ts_convolve_chains(&acc, &f?, window)?;
    }
    Ok(acc)
}

/// Usual multiplier J-chain on `[0, 1)` by convolving the one-variable chains.
pub fn convolved_usual_chain(germ: &Germ) -> Result<JumpChain> {
    let mut factors = germ.exponents().iter().map(|&m| one_var_usual_chain(m, Rat::ONE));
    let mut acc = factors.next().expect("germs have at least one variable")?;
    for f in factors {
        acc = ts_usual_chain(&acc, &f?)?;
    }
    Ok(acc)
}

fn check_reduced(germ: &Germ) -> Result<()> {
    if germ.dim() < 2 {
        Err(Error::NotReduced)
    } else {
        Ok(())
    }
}

fn window_past_one() -> Rat {
    Rat::new(3, 2)
}

/// Monomials spanning `O_X / (ω̃_X ⊗ ω_X^∨) = O_Y / J̃(X)`.
pub fn irrationality_module(germ: &Germ) -> Result<QuotientBasis> {
    check_reduced(germ)?;
    let chain = convolved_microlocal_chain(germ, window_past_one())?;
    let j_tilde_one = chain.value_right(Rat::ONE)?;
    quotient_basis(&MonomialIdeal::unit(germ.dim()), j_tilde_one)
}

/// `dim O_Y / J̃(X)`; zero exactly when `ω̃_X = ω_X`.
pub fn irrationality_dim(germ: &Germ) -> Result<usize> {
    match irrationality_module(germ)? {
        QuotientBasis::Finite { basis } => Ok(basis.len()),
        QuotientBasis::Infinite { axis, .. } => Err(Error::InfiniteQuotient { axis }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaOneSummand {
    pub a1: Rat,
    pub a2: Rat,
    pub dim: usize,
}

/// Dimension bookkeeping of `0 → ω̃⊗ω^∨ → G(X) → G̃(X) → 0` at `α = 1`.
///
/// `g_codim` is `dim O_Y / J((1−ε)X)`, the codimension of `G(X)` in `O_X`;
/// exactness forces `irrationality_dim = g_codim + g_tilde_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaOneReport {
    pub g_tilde_dim: usize,
    pub g_tilde_dim_from_factors: usize,
    pub irrationality_dim: usize,
    pub g_codim: usize,
    pub summands: Vec<AlphaOneSummand>,
    pub consistent: bool,
}

pub fn alpha_one_sequence_check(g1: &Germ, g2: &Germ) -> Result<AlphaOneReport> {
    // variable names are irrelevant here and may collide between the factors
    let exps: Vec<u32> = g1.exponents().iter().chain(g2.exponents()).copied().collect();
    let whole = Germ::diagonal(&exps)?;
    check_reduced(&whole)?;
    let window = window_past_one();
    let c1 = convolved_microlocal_chain(g1, window)?;
    let c2 = convolved_microlocal_chain(g2, window)?;
    let chain = ts_convolve_chains(&c1, &c2, window)?;

    let direct = chain.graded_at(Rat::ONE)?;
    let g_tilde_dim = direct.dim().ok_or(Error::InfiniteQuotient { axis: 0 })?;

    let mut summands = Vec::new();
    for a1 in c1.levels().iter().copied().take_while(|l| *l < Rat::ONE) {
        let a2 = Rat::ONE - a1;
        if !c2.jumpset().contains(a2) {
            continue;
        }
        let d1 = c1.graded_at(a1)?.dim();
        let d2 = c2.graded_at(a2)?.dim();
        match (d1, d2) {
            (Some(d1), Some(d2)) => summands.push(AlphaOneSummand { a1, a2, dim: d1 * d2 }),
            _ => return Err(Error::InfiniteQuotient { axis: 0 }),
        }
    }
    let g_tilde_dim_from_factors = summands.iter().map(|s| s.dim).sum();

    let unit = MonomialIdeal::unit(whole.dim());
    let irrationality_dim = colength(&unit, chain.value_right(Rat::ONE)?)?;
    let g_codim = colength(&unit, chain.value_left(Rat::ONE)?)?;
    let consistent = g_tilde_dim == g_tilde_dim_from_factors && irrationality_dim == g_codim + g_tilde_dim;
    Ok(AlphaOneReport { g_tilde_dim, g_tilde_dim_from_factors, irrationality_dim, g_codim, summands, consistent })
}
