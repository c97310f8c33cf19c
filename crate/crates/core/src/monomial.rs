//! Monomial ideals in `d` variables, stored by their minimal generators.
//!
//! A monomial `z^ν` is identified with its exponent vector `ν ∈ ℕ^d`; the
//! divisibility order on monomials is the componentwise order on exponents.
//! The zero ideal has no generators and the unit ideal has the single
//! generator `0`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(dim: usize) -> Self {
        Exponent(vec![0; dim])
    }

    pub fn unit_vector(dim: usize, axis: usize) -> Self {
        let mut e = vec![0; dim];
        e[axis] = 1;
        Exponent(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Componentwise `self <= other`, i.e. `z^self` divides `z^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn concat(&self, other: &Exponent) -> Exponent {
        let mut v = Vec::with_capacity(self.dim() + other.dim());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Exponent(v)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl From<&[u32]> for Exponent {
    fn from(v: &[u32]) -> Self {
        Exponent(v.to_vec())
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Formats `z^ν` as a product of named variables, `1` for the zero exponent.
pub fn format_monomial(exp: &Exponent, names: &[String]) -> String {
    let factors: Vec<String> = exp
        .0
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

/// Default variable names `z1, …, zd`.
pub fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("z{i}")).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    dim: usize,
    // minimal antichain, in descending lexicographic order so that z1 prints first
    gens: Vec<Exponent>,
}

impl MonomialIdeal {
    pub fn zero(dim: usize) -> Self {
        MonomialIdeal { dim, gens: Vec::new() }
    }

    pub fn unit(dim: usize) -> Self {
        MonomialIdeal { dim, gens: vec![Exponent::zero(dim)] }
    }

    pub fn principal(exp: Exponent) -> Self {
        MonomialIdeal { dim: exp.dim(), gens: vec![exp] }
    }

    /// Builds the ideal generated by `gens`, reducing to the minimal antichain.
    pub fn new<I>(dim: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Exponent>,
    {
        let gens: Vec<Exponent> = gens.into_iter().map(Into::into).collect();
        if let Some(bad) = gens.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self::from_candidates(dim, gens))
    }

    /// Minimalizes a candidate generator list whose dimensions are already known to agree.
    pub(crate) fn from_candidates(dim: usize, mut cands: Vec<Exponent>) -> Self {
        cands.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b)));
        cands.dedup();
        let mut kept: Vec<Exponent> = Vec::with_capacity(cands.len());
        for c in cands {
            if !kept.iter().any(|k| k.divides(&c)) {
                kept.push(c);
            }
        }
        kept.sort_by(|a, b| b.cmp(a));
        MonomialIdeal { dim, gens: kept }
    }

    /// Trusted constructor for callers that produce antichains themselves.
    pub(crate) fn from_antichain(dim: usize, mut gens: Vec<Exponent>) -> Self {
        gens.sort_by(|a, b| b.cmp(a));
        debug_assert!(is_antichain(&gens));
        MonomialIdeal { dim, gens }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].0.iter().all(|&e| e == 0)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if self.dim == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim, found })
        }
    }

    pub fn contains(&self, exp: &Exponent) -> Result<bool> {
        self.check_dim(exp.dim())?;
        Ok(self.contains_unchecked(exp))
    }

    pub(crate) fn contains_unchecked(&self, exp: &Exponent) -> bool {
        self.gens.iter().any(|g| g.divides(exp))
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        other.check_dim(self.dim)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_dim(other.dim)?;
        let cands = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_candidates(self.dim, cands))
    }

    /// Sum of an arbitrary family of ideals of the same dimension.
    pub fn sum_all<'a, I>(dim: usize, ideals: I) -> Result<MonomialIdeal>
    where
        I: IntoIterator<Item = &'a MonomialIdeal>,
    {
        let mut cands = Vec::new();
        for ideal in ideals {
            if ideal.dim != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: ideal.dim });
            }
            cands.extend(ideal.gens.iter().cloned());
        }
        Ok(Self::from_candidates(dim, cands))
    }

    /// `I₁ ⊠ I₂` in `d₁ + d₂` variables.
    pub fn external_product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let dim = self.dim + other.dim;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.concat(b));
            }
        }
        // concatenations of two antichains are again an antichain
        MonomialIdeal::from_antichain(dim, gens)
    }

    /// Formats the ideal with the given variable names, e.g. `(z1^2, z2)`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| format_monomial(g, names)).collect();
        format!("({})", parts.join(", "))
    }
}

fn is_antichain(gens: &[Exponent]) -> bool {
    gens.iter().enumerate().all(|(i, a)| gens.iter().enumerate().all(|(j, b)| i == j || !a.divides(b)))
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.dim)))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    dim: usize,
    gens: Vec<Vec<u32>>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        IdealRepr { dim: self.dim, gens: self.gens.iter().map(|g| g.0.clone()).collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = IdealRepr::deserialize(deserializer)?;
        if repr.dim == 0 {
            return Err(serde::de::Error::custom("ideal dimension must be positive"));
        }
        MonomialIdeal::new(repr.dim, repr.gens).map_err(serde::de::Error::custom)
    }
}

/// `f^power · ideal`, the shape of usual multiplier ideals past the first period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledIdeal {
    pub power: u32,
    pub ideal: MonomialIdeal,
}

/// Monomial basis of a quotient `I_big / I_small`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QuotientBasis {
    Finite {
        basis: Vec<Exponent>,
    },
    /// `base + ℕ·e_axis` (0-based axis) lies in the difference of staircases.
    Infinite {
        axis: usize,
        base: Exponent,
    },
}

impl QuotientBasis {
    pub fn empty() -> Self {
        QuotientBasis::Finite { basis: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, QuotientBasis::Finite { basis } if basis.is_empty())
    }

    /// `None` for infinite quotients.
    pub fn dim(&self) -> Option<usize> {
        match self {
            QuotientBasis::Finite { basis } => Some(basis.len()),
            QuotientBasis::Infinite { .. } => None,
        }
    }

    /// Basis of the external tensor product of the two quotients.
    pub fn external_product(&self, other: &QuotientBasis) -> QuotientBasis {
        use QuotientBasis::*;
        if self.is_zero() || other.is_zero() {
            return QuotientBasis::empty();
        }
        match (self, other) {
            (Finite { basis: a }, Finite { basis: b }) => {
                let mut out: Vec<Exponent> = a.iter().flat_map(|x| b.iter().map(move |y| x.concat(y))).collect();
                out.sort();
                Finite { basis: out }
            }
            (Infinite { axis, base }, Finite { basis: b }) => Infinite { axis: *axis, base: base.concat(&b[0]) },
            (Finite { basis: a }, Infinite { axis, base }) => {
                Infinite { axis: a[0].dim() + axis, base: a[0].concat(base) }
            }
            (Infinite { axis, base }, Infinite { base: other_base, .. }) => {
                Infinite { axis: *axis, base: base.concat(other_base) }
            }
        }
    }
}

/// All exponents in the box `[0, bound]^dim`, lexicographically ordered.
pub fn lattice_box(dim: usize, bound: u32) -> Vec<Exponent> {
    let mut pts = vec![Exponent(Vec::with_capacity(dim))];
    for _ in 0..dim {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..=bound).map(move |v| {
                    let mut q = p.0.clone();
                    q.push(v);
                    Exponent(q)
                })
            })
            .collect();
    }
    pts
}

/// Monomial basis of `big / small`.
///
/// The difference of staircases is infinite exactly when some generator `b`
/// of `big` outside `small` admits a ray `b + ℕ·e_j` avoiding `small`, which
/// happens iff no generator of `small` is bounded by `b` off axis `j`.
pub fn quotient_basis(big: &MonomialIdeal, small: &MonomialIdeal) -> Result<QuotientBasis> {
    big.check_dim(small.dim)?;
    if !small.is_subset_of(big)? {
        return Err(Error::NotContained);
    }
    let dim = big.dim;
    let seeds: Vec<&Exponent> = big.gens.iter().filter(|g| !small.contains_unchecked(g)).collect();

    for b in &seeds {
        for axis in 0..dim {
            let blocked =
                small.gens.iter().any(|g| g.0.iter().zip(&b.0).enumerate().all(|(i, (gi, bi))| i == axis || gi <= bi));
            if !blocked {
                return Ok(QuotientBasis::Infinite { axis, base: (*b).clone() });
            }
        }
    }

    let mut seen: BTreeSet<Exponent> = BTreeSet::new();
    let mut stack: Vec<Exponent> = seeds.into_iter().cloned().collect();
    while let Some(e) = stack.pop() {
        if !seen.insert(e.clone()) {
            continue;
        }
        for axis in 0..dim {
            let mut next = e.clone();
            next.0[axis] += 1;
            if !small.contains_unchecked(&next) && !seen.contains(&next) {
                stack.push(next);
            }
        }
    }
    Ok(QuotientBasis::Finite { basis: seen.into_iter().collect() })
}

/// `dim_ℂ big / small`; errors when the quotient is infinite.
pub fn colength(big: &MonomialIdeal, small: &MonomialIdeal) -> Result<usize> {
    match quotient_basis(big, small)? {
        QuotientBasis::Finite { basis } => Ok(basis.len()),
        QuotientBasis::Infinite { axis, .. } => Err(Error::InfiniteQuotient { axis }),
    }
}
