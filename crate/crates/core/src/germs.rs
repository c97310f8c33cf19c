//! Diagonal hypersurface germs `f = Σ cⱼ zⱼ^{mⱼ}` and closed forms for their
//! usual and microlocal filtrations on `O_Y`.
//!
//! For one variable, `z^k` has microlocal weight `(k + 1 + ⌊k/(m−1)⌋)/m`,
//! and `z^k ∈ Ṽ^α` iff its weight is at least `α`. For a diagonal germ the
//! weights of the variables add up. The coefficients `cⱼ` are carried for
//! display only: by the weighted-homogeneous rescaling `zⱼ ↦ λ^{1/mⱼ} zⱼ`,
//! nothing computed here depends on them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{ChainKind, JumpChain, Mode};
use crate::monomial::{Exponent, MonomialIdeal};
use crate::par;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Germ {
    exponents: Vec<u32>,
    names: Vec<String>,
    coefficients: Vec<Rat>,
}

impl Germ {
    pub fn new(exponents: Vec<u32>, names: Vec<String>, coefficients: Vec<Rat>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::UnsupportedGerm("a germ needs at least one variable".into()));
        }
        if names.len() != exponents.len() || coefficients.len() != exponents.len() {
            return Err(Error::DimensionMismatch { expected: exponents.len(), found: names.len() });
        }
        if let Some(m) = exponents.iter().find(|&&m| m < 2) {
            return Err(Error::UnsupportedGerm(format!("exponent {m} < 2 (smooth factor)")));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::UnsupportedGerm(format!("variable {n} appears twice")));
            }
        }
        if coefficients.iter().any(Rat::is_zero) {
            return Err(Error::UnsupportedGerm("coefficients must be nonzero".into()));
        }
        Ok(Germ { exponents, names, coefficients })
    }

    /// `Σ zⱼ^{mⱼ}` with variables `z1, …, zd`.
    pub fn diagonal(exponents: &[u32]) -> Result<Self> {
        let d = exponents.len();
        Germ::new(exponents.to_vec(), crate::monomial::default_names(d), vec![Rat::ONE; d])
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coefficients
    }

    pub fn with_coefficients(&self, coefficients: Vec<Rat>) -> Result<Germ> {
        Germ::new(self.exponents.clone(), self.names.clone(), coefficients)
    }

    /// Thom-Sebastiani sum over disjoint variables.
    pub fn ts_sum(&self, other: &Germ) -> Result<Germ> {
        let mut exponents = self.exponents.clone();
        exponents.extend_from_slice(&other.exponents);
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut coefficients = self.coefficients.clone();
        coefficients.extend_from_slice(&other.coefficients);
        Germ::new(exponents, names, coefficients)
    }

    /// Splits into the germs in the first `k` and the remaining variables.
    pub fn split_at(&self, k: usize) -> Result<(Germ, Germ)> {
        if k == 0 || k >= self.dim() {
            return Err(Error::Domain(format!("cannot split a {}-variable germ at {k}", self.dim())));
        }
        let left = Germ::new(self.exponents[..k].to_vec(), self.names[..k].to_vec(), self.coefficients[..k].to_vec())?;
        let right = Germ::new(self.exponents[k..].to_vec(), self.names[k..].to_vec(), self.coefficients[k..].to_vec())?;
        Ok((left, right))
    }

    /// One-variable summands `cⱼ zⱼ^{mⱼ}`.
    pub fn factors(&self) -> Vec<Germ> {
        (0..self.dim())
            .map(|j| Germ {
                exponents: vec![self.exponents[j]],
                names: vec![self.names[j].clone()],
                coefficients: vec![self.coefficients[j]],
            })
            .collect()
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..self.dim())
            .map(|j| {
                let c = self.coefficients[j];
                let mono = format!("{}^{}", self.names[j], self.exponents[j]);
                if c == Rat::ONE {
                    mono
                } else {
                    format!("{c}*{mono}")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

fn check_exponent(m: u32) -> Result<()> {
    if m < 2 {
        Err(Error::UnsupportedGerm(format!("exponent {m} < 2 (smooth factor)")))
    } else {
        Ok(())
    }
}

/// Microlocal weight `(k + 1 + ⌊k/(m−1)⌋)/m` of `z^k` for `f = z^m`.
pub fn one_var_weight(m: u32, k: u32) -> Result<Rat> {
    check_exponent(m)?;
    Ok(weight_unchecked(m, k))
}

fn weight_unchecked(m: u32, k: u32) -> Rat {
    let i = k as i128 + 1 + (k / (m - 1)) as i128;
    Rat::new(i, m as i128)
}

/// `Ṽ` on `O_ℂ` for `f = z^m`: jumps at every weight below the window, the
/// plateau after the `k`-th jump being `(z^{k+1})`.
pub fn one_var_microlocal_chain(m: u32, window: Rat) -> Result<JumpChain> {
    check_exponent(m)?;
    let mut levels = Vec::new();
    let mut k = 0;
    loop {
        let w = weight_unchecked(m, k);
        if w >= window {
            break;
        }
        levels.push(w);
        k += 1;
    }
    let plateaus = (0..=k).map(|i| MonomialIdeal::principal(Exponent(vec![i]))).collect();
    JumpChain::from_plateaus(Mode::V, ChainKind::Microlocal, window, levels, plateaus)
}

/// Usual multiplier ideals of `z^m` on `[0, window)` with `window <= 1`:
/// `J(α) = (z^i)` for `α ∈ [i/m, (i+1)/m)`.
pub fn one_var_usual_chain(m: u32, window: Rat) -> Result<JumpChain> {
    check_exponent(m)?;
    if window > Rat::ONE {
        return Err(Error::WindowExceeded { level: window, window: Rat::ONE });
    }
    let levels: Vec<Rat> = (1..m as i128).map(|i| Rat::new(i, m as i128)).take_while(|l| *l < window).collect();
    let plateaus = (0..=levels.len() as u32).map(|i| MonomialIdeal::principal(Exponent(vec![i]))).collect();
    JumpChain::from_plateaus(Mode::J, ChainKind::Usual, window, levels, plateaus)
}

/// `Σⱼ weight(mⱼ, νⱼ)`.
pub fn diagonal_weight_sum(germ: &Germ, nu: &Exponent) -> Result<Rat> {
    if nu.dim() != germ.dim() {
        return Err(Error::DimensionMismatch { expected: germ.dim(), found: nu.dim() });
    }
    Ok(germ.exponents.iter().zip(&nu.0).map(|(&m, &k)| weight_unchecked(m, k)).sum())
}

/// `α̃_f = Σ 1/mⱼ`, the minimal microlocal jumping coefficient.
pub fn alpha_tilde(germ: &Germ) -> Rat {
    germ.exponents.iter().map(|&m| Rat::new(1, m as i128)).sum()
}

/// `lct = min(1, α̃_f)`.
pub fn lct(germ: &Germ) -> Rat {
    alpha_tilde(germ).min(Rat::ONE)
}

/// `μ = Π (mⱼ − 1)`.
pub fn milnor_number(germ: &Germ) -> u64 {
    germ.exponents.iter().map(|&m| (m - 1) as u64).product()
}

/// Per-variable weight tables, long enough that the last entry reaches `window`.
struct WeightTables {
    tables: Vec<Vec<Rat>>,
}

impl WeightTables {
    fn new(germ: &Germ, window: Rat) -> Self {
        let tables = germ
            .exponents
            .iter()
            .map(|&m| {
                let mut t = Vec::new();
                let mut k = 0;
                loop {
                    let w = weight_unchecked(m, k);
                    t.push(w);
                    if w >= window {
                        break;
                    }
                    k += 1;
                }
                t
            })
            .collect();
        WeightTables { tables }
    }

    /// Every weight sum strictly below `window`.
    fn achieved_levels(&self, window: Rat) -> Vec<Rat> {
        let mins: Vec<Rat> = self.tables.iter().map(|t| t[0]).collect();
        let mut suffix_min = vec![Rat::ZERO; mins.len() + 1];
        for j in (0..mins.len()).rev() {
            suffix_min[j] = suffix_min[j + 1] + mins[j];
        }
        let mut out = BTreeSet::new();
        self.collect_sums(0, Rat::ZERO, window, &suffix_min, &mut out);
        out.into_iter().collect()
    }

    fn collect_sums(&self, j: usize, acc: Rat, window: Rat, suffix_min: &[Rat], out: &mut BTreeSet<Rat>) {
        if j == self.tables.len() {
            out.insert(acc);
            return;
        }
        for &w in &self.tables[j] {
            if acc + w + suffix_min[j + 1] >= window {
                break;
            }
            self.collect_sums(j + 1, acc + w, window, suffix_min, out);
        }
    }

    /// Minimal generators of `{ν : Σ wⱼ(νⱼ) > threshold}` for `threshold < window`.
    fn upset_generators(&self, threshold: Rat) -> MonomialIdeal {
        let d = self.tables.len();
        let (free, last) = self.tables.split_at(d - 1);
        let last = &last[0];
        let sizes: Vec<usize> = free.iter().map(Vec::len).collect();
        let total: usize = sizes.iter().product();

        // smallest exponent of the last variable completing a partial sum
        let completion = |partial: Rat| -> u32 {
            let need = threshold - partial;
            last.partition_point(|w| *w <= need) as u32
        };

        let mut ks = Vec::with_capacity(total);
        let mut idx = vec![0usize; d - 1];
        for _ in 0..total {
            let partial: Rat = idx.iter().zip(free).map(|(&i, t)| t[i]).sum();
            ks.push(completion(partial));
            advance(&mut idx, &sizes);
        }

        let mut strides = vec![1usize; d - 1];
        for j in (0..d.saturating_sub(2)).rev() {
            strides[j] = strides[j + 1] * sizes[j + 1];
        }
        let mut gens = Vec::new();
        let mut idx = vec![0usize; d - 1];
        for flat in 0..total {
            let k = ks[flat];
            let minimal = (0..d - 1).all(|j| idx[j] == 0 || ks[flat - strides[j]] != k);
            if minimal {
                let mut e: Vec<u32> = idx.iter().map(|&i| i as u32).collect();
                e.push(k);
                gens.push(Exponent(e));
            }
            advance(&mut idx, &sizes);
        }
        MonomialIdeal::from_antichain(d, gens)
    }
}

fn advance(idx: &mut [usize], sizes: &[usize]) {
    for j in (0..idx.len()).rev() {
        idx[j] += 1;
        if idx[j] < sizes[j] {
            return;
        }
        idx[j] = 0;
    }
}

/// Closed-form `Ṽ^α O_Y = Σ_{w(ν) ≥ α} O_Y z^ν` on `[0, window)`.
pub fn diagonal_microlocal_chain(germ: &Germ, window: Rat) -> Result<JumpChain> {
    if !window.is_positive() {
        return Err(Error::Domain(format!("window must be positive, got {window}")));
    }
    let tables = WeightTables::new(germ, window);
    let levels = tables.achieved_levels(window);
    let mut thresholds = vec![Rat::ZERO];
    thresholds.extend_from_slice(&levels);
    // plateau i is {w > lᵢ}; l₀ = 0 gives the unit ideal
    let plateaus = par::map(&thresholds, |t| tables.upset_generators(*t));
    JumpChain::from_plateaus(Mode::V, ChainKind::Microlocal, window, levels, plateaus)
}

/// Number of monomials of weight exactly `alpha`.
pub fn weight_multiplicity(germ: &Germ, alpha: Rat) -> u64 {
    let window = alpha + Rat::ONE;
    let tables = WeightTables::new(germ, window);
    fn count(tables: &[Vec<Rat>], target: Rat) -> u64 {
        match tables.split_first() {
            None => u64::from(target.is_zero()),
            Some((t, rest)) => t.iter().take_while(|w| **w <= target).map(|w| count(rest, target - *w)).sum(),
        }
    }
    count(&tables.tables, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{lattice_box, QuotientBasis};
    use crate::rat::r;

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|g| g.to_vec())).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(one_var_weight(3, 0).unwrap(), r(1, 3));
        assert_eq!(one_var_weight(2, 1).unwrap(), r(3, 2));
        assert_eq!(one_var_weight(3, 2).unwrap(), r(4, 3));
        assert!(matches!(one_var_weight(1, 0), Err(Error::UnsupportedGerm(_))));
    }

    #[test]
    fn weights_skip_integers() {
        for m in 2..10 {
            for k in 0..40 {
                let w = one_var_weight(m, k).unwrap();
                assert!(!w.is_integer(), "m={m} k={k}");
                assert!(w >= r(1, m as i128));
                assert!(one_var_weight(m, k + 1).unwrap() > w);
            }
        }
    }

    #[test]
    fn one_var_microlocal_examples() {
        let c = one_var_microlocal_chain(3, Rat::int(2)).unwrap();
        assert_eq!(c.levels(), &[r(1, 3), r(2, 3), r(4, 3), r(5, 3)]);
        assert_eq!(c.v_lookup(r(1, 3)).unwrap(), &MonomialIdeal::unit(1));
        assert_eq!(c.v_lookup(r(2, 3)).unwrap(), &ideal(1, &[&[1]]));
        assert_eq!(c.v_lookup(r(4, 3)).unwrap(), &ideal(1, &[&[2]]));
        assert_eq!(c.v_lookup(r(5, 3)).unwrap(), &ideal(1, &[&[3]]));
        assert!(c.graded_at(Rat::ONE).unwrap().is_zero());

        let c2 = one_var_microlocal_chain(2, Rat::int(2)).unwrap();
        assert_eq!(c2.levels(), &[r(1, 2), r(3, 2)]);
        assert_eq!(c2.v_lookup(r(1, 2)).unwrap(), &MonomialIdeal::unit(1));
        assert_eq!(c2.v_lookup(r(3, 2)).unwrap(), &ideal(1, &[&[1]]));

        let c3 = one_var_microlocal_chain(2, Rat::int(3)).unwrap();
        assert_eq!(c3.levels(), &[r(1, 2), r(3, 2), r(5, 2)]);
    }

    #[test]
    fn one_var_usual_examples() {
        let c = one_var_usual_chain(3, Rat::ONE).unwrap();
        assert_eq!(c.j_lookup(r(1, 2)).unwrap(), &ideal(1, &[&[1]]));
        assert_eq!(c.j_lookup(r(1, 4)).unwrap(), &MonomialIdeal::unit(1));
        let c2 = one_var_usual_chain(2, Rat::ONE).unwrap();
        assert_eq!(c2.j_lookup(r(1, 2)).unwrap(), &ideal(1, &[&[1]]));
        assert!(one_var_usual_chain(3, r(3, 2)).is_err());
        assert_eq!(one_var_usual_chain(5, r(1, 2)).unwrap().levels(), &[r(1, 5), r(2, 5)]);
    }

    #[test]
    fn weight_sum_examples() {
        let cusp = Germ::diagonal(&[2, 3]).unwrap();
        assert_eq!(diagonal_weight_sum(&cusp, &Exponent(vec![0, 0])).unwrap(), r(5, 6));
        assert_eq!(diagonal_weight_sum(&cusp, &Exponent(vec![1, 0])).unwrap(), r(11, 6));
        let e = Germ::diagonal(&[3, 3, 3]).unwrap();
        assert_eq!(diagonal_weight_sum(&e, &Exponent(vec![0, 0, 0])).unwrap(), Rat::ONE);
        assert!(diagonal_weight_sum(&e, &Exponent(vec![0])).is_err());
    }

    #[test]
    fn cusp_chain() {
        let cusp = Germ::diagonal(&[2, 3]).unwrap();
        let c = diagonal_microlocal_chain(&cusp, Rat::int(2)).unwrap();
        // ν=(0,0): 5/6, (0,1): 7/6, (1,0): 11/6, (0,2): 1/2+4/3 = 11/6
        assert_eq!(c.levels(), &[r(5, 6), r(7, 6), r(11, 6)]);
        assert_eq!(c.v_lookup(r(5, 6)).unwrap(), &MonomialIdeal::unit(2));
        assert_eq!(c.v_lookup(r(5, 6) + r(1, 1000)).unwrap(), &ideal(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(c.v_lookup(r(7, 6)).unwrap(), &ideal(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(c.v_lookup(r(11, 6)).unwrap(), &ideal(2, &[&[1, 0], &[0, 2]]));
        let j = c.v_to_j().unwrap();
        assert_eq!(j.j_lookup(r(5, 6)).unwrap(), &ideal(2, &[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn chain_matches_brute_force_membership() {
        for exps in [vec![2, 3], vec![3, 3, 3], vec![2, 5, 4], vec![7], vec![4, 2]] {
            let g = Germ::diagonal(&exps).unwrap();
            let window = Rat::int(2);
            let c = diagonal_microlocal_chain(&g, window).unwrap();
            let d = g.dim();
            let mut probes: Vec<Rat> = c.levels().to_vec();
            probes.extend(c.levels().iter().map(|l| *l + r(1, 997)).filter(|x| *x < window));
            probes.push(Rat::ZERO);
            for alpha in probes {
                let v = c.v_lookup(alpha).unwrap();
                for e in lattice_box(d, 10) {
                    let w = diagonal_weight_sum(&g, &e).unwrap();
                    assert_eq!(v.contains(&e).unwrap(), w >= alpha, "{exps:?} α={alpha} ν={e:?}");
                }
            }
        }
    }

    #[test]
    fn one_variable_diagonal_is_the_one_var_chain() {
        for m in 2..10 {
            for w in [Rat::ONE, Rat::int(2), r(7, 2)] {
                let g = Germ::diagonal(&[m]).unwrap();
                assert_eq!(diagonal_microlocal_chain(&g, w).unwrap(), one_var_microlocal_chain(m, w).unwrap());
            }
        }
    }

    #[test]
    fn min_jump_is_alpha_tilde() {
        for exps in [vec![2, 3], vec![2, 2, 2], vec![3, 3, 3], vec![2, 3, 5], vec![5, 7]] {
            let g = Germ::diagonal(&exps).unwrap();
            let c = diagonal_microlocal_chain(&g, Rat::int(3)).unwrap();
            assert_eq!(c.jumpset().min(), Some(alpha_tilde(&g)));
        }
    }

    #[test]
    fn alpha_tilde_and_lct() {
        let cases =
            [(vec![2, 3], r(5, 6), r(5, 6)), (vec![2, 2, 2], r(3, 2), Rat::ONE), (vec![3, 3, 3], Rat::ONE, Rat::ONE)];
        for (exps, at, l) in cases {
            let g = Germ::diagonal(&exps).unwrap();
            assert_eq!(alpha_tilde(&g), at);
            assert_eq!(lct(&g), l);
        }
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_number(&Germ::diagonal(&[2, 3]).unwrap()), 2);
        assert_eq!(milnor_number(&Germ::diagonal(&[2, 2, 2]).unwrap()), 1);
        assert_eq!(milnor_number(&Germ::diagonal(&[2, 3, 5]).unwrap()), 8);
    }

    #[test]
    fn coefficients_do_not_matter() {
        let g = Germ::diagonal(&[2, 3, 4]).unwrap();
        let h = g.with_coefficients(vec![r(2, 1), r(-3, 7), r(5, 2)]).unwrap();
        assert_eq!(
            diagonal_microlocal_chain(&g, Rat::int(2)).unwrap(),
            diagonal_microlocal_chain(&h, Rat::int(2)).unwrap()
        );
        assert_eq!(alpha_tilde(&g), alpha_tilde(&h));
        assert_eq!(milnor_number(&g), milnor_number(&h));
        assert!(g.with_coefficients(vec![Rat::ZERO, Rat::ONE, Rat::ONE]).is_err());
    }

    #[test]
    fn graded_dimension_counts_weights() {
        for exps in [vec![2, 3], vec![3, 3, 3], vec![2, 4, 3]] {
            let g = Germ::diagonal(&exps).unwrap();
            let c = diagonal_microlocal_chain(&g, Rat::int(2)).unwrap();
            for l in c.levels() {
                match c.graded_at(*l).unwrap() {
                    QuotientBasis::Finite { basis } => {
                        assert_eq!(basis.len() as u64, weight_multiplicity(&g, *l));
                        for b in basis {
                            assert_eq!(diagonal_weight_sum(&g, &b).unwrap(), *l);
                        }
                    }
                    other => panic!("graded piece should be finite: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn germ_construction() {
        assert!(Germ::diagonal(&[]).is_err());
        assert!(Germ::diagonal(&[1, 3]).is_err());
        let a = Germ::diagonal(&[2]).unwrap();
        assert!(a.ts_sum(&a).is_err());
        let b = Germ::new(vec![3], vec!["w".into()], vec![r(2, 1)]).unwrap();
        let s = a.ts_sum(&b).unwrap();
        assert_eq!(s.to_string(), "z1^2 + 2*w^3");
        let (l, rt) = s.split_at(1).unwrap();
        assert_eq!((l, rt), (a, b));
        assert_eq!(s.factors().len(), 2);
    }
}
