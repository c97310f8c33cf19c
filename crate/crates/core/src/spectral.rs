//! Vanishing-cycle eigenvalue tables and Hodge spectra of diagonal germs.
//!
//! Eigenvalues are indexed by `α ∈ (−1, 0]` with `λ = e(−α)`. Spectra are
//! convolved additively with no folding; eigentables fold mod 1, and the
//! fold is where the second convolution branch (the one carrying the
//! Hodge shift) comes from.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::germs::{alpha_tilde, milnor_number, Germ};
use crate::rat::Rat;

/// Fold a spectral value into `(−1, 0]`.
pub fn fold(s: Rat) -> Rat {
    -s.fract()
}

fn in_eigen_range(a: Rat) -> bool {
    a > -Rat::ONE && a <= Rat::ZERO
}

/// Multiplicities of `φ_f^{(α)}` for `α ∈ (−1, 0]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EigenTable {
    entries: BTreeMap<Rat, u64>,
}

#[derive(Serialize, Deserialize)]
struct EigenEntry {
    alpha: Rat,
    mult: u64,
}

impl EigenTable {
    pub fn new<I: IntoIterator<Item = (Rat, u64)>>(entries: I) -> Result<Self> {
        let mut t = EigenTable::default();
        for (a, m) in entries {
            if !in_eigen_range(a) {
                return Err(Error::Domain(format!("eigentable keys lie in (-1, 0], got {a}")));
            }
            t.add(a, m);
        }
        Ok(t)
    }

    fn add(&mut self, a: Rat, m: u64) {
        if m > 0 {
            *self.entries.entry(a).or_insert(0) += m;
        }
    }

    pub fn get(&self, a: Rat) -> u64 {
        self.entries.get(&a).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Rat, u64)> + '_ {
        self.entries.iter().map(|(a, m)| (*a, *m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }
}

impl Serialize for EigenTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<EigenEntry> = self.entries().map(|(alpha, mult)| EigenEntry { alpha, mult }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EigenTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<EigenEntry>::deserialize(d)?;
        EigenTable::new(v.into_iter().map(|e| (e.alpha, e.mult))).map_err(serde::de::Error::custom)
    }
}

pub fn one_var_eigentable(m: u32) -> Result<EigenTable> {
    if m < 2 {
        return Err(Error::UnsupportedGerm(format!("exponent must be at least 2, got {m}")));
    }
    EigenTable::new((1..m).map(|i| (Rat::new(-(i as i128), m as i128), 1)))
}

/// Which sum in the convolution formula a pair of keys contributes to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `α₁ + α₂ = α`, both in `(−1, 0]`.
    I,
    /// `α₁ + α₂ = α − 1`, with the `F[−1]` shift.
    J,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub a1: Rat,
    pub a2: Rat,
    pub alpha: Rat,
    pub branch: Branch,
    pub mult: u64,
}

/// Every pair of keys with the key it lands on and the branch used.
pub fn phi_convolve_detailed(t1: &EigenTable, t2: &EigenTable) -> Vec<Contribution> {
    let mut out = Vec::with_capacity(t1.len() * t2.len());
    for (a1, m1) in t1.entries() {
        for (a2, m2) in t2.entries() {
            let s = a1 + a2;
            let (alpha, branch) = if s > -Rat::ONE { (s, Branch::I) } else { (s + Rat::ONE, Branch::J) };
            out.push(Contribution { a1, a2, alpha, branch, mult: m1 * m2 });
        }
    }
    out
}

pub fn phi_convolve(t1: &EigenTable, t2: &EigenTable) -> EigenTable {
    let mut t = EigenTable::default();
    for c in phi_convolve_detailed(t1, t2) {
        t.add(c.alpha, c.mult);
    }
    t
}

/// Eigentable of a diagonal germ by iterated convolution.
pub fn eigentable_of(germ: &Germ) -> Result<EigenTable> {
    let mut acc: Option<EigenTable> = None;
    for &m in germ.exponents() {
        let t = one_var_eigentable(m)?;
        acc = Some(match acc {
            None => t,
            Some(a) => phi_convolve(&a, &t),
        });
    }
    acc.ok_or_else(|| Error::UnsupportedGerm("empty germ".into()))
}

/// Spectrum as a sorted multiset, stored as value ↦ multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Spectrum {
    entries: BTreeMap<Rat, u64>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumEntry {
    value: Rat,
    mult: u64,
}

impl Spectrum {
    pub fn from_values<I: IntoIterator<Item = Rat>>(values: I) -> Self {
        let mut entries = BTreeMap::new();
        for v in values {
            *entries.entry(v).or_insert(0) += 1;
        }
        Spectrum { entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = (Rat, u64)> + '_ {
        self.entries.iter().map(|(a, m)| (*a, *m))
    }

    /// Values with repetition, ascending.
    pub fn values(&self) -> Vec<Rat> {
        self.entries().flat_map(|(v, m)| std::iter::repeat_n(v, m as usize)).collect()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn min(&self) -> Option<Rat> {
        self.entries.keys().next().copied()
    }

    pub fn max(&self) -> Option<Rat> {
        self.entries.keys().next_back().copied()
    }

    /// Additive convolution; the spectrum of a Thom-Sebastiani sum.
    pub fn convolve(&self, other: &Spectrum) -> Spectrum {
        let mut entries = BTreeMap::new();
        for (a, m) in self.entries() {
            for (b, n) in other.entries() {
                *entries.entry(a + b).or_insert(0) += m * n;
            }
        }
        Spectrum { entries }
    }

    pub fn is_symmetric_about(&self, center: Rat) -> bool {
        self.entries().all(|(v, m)| self.entries.get(&(center + center - v)).copied() == Some(m))
    }

    pub fn fold(&self) -> EigenTable {
        let mut t = EigenTable::default();
        for (v, m) in self.entries() {
            t.add(fold(v), m);
        }
        t
    }
}

impl Serialize for Spectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<SpectrumEntry> = self.entries().map(|(value, mult)| SpectrumEntry { value, mult }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<SpectrumEntry>::deserialize(d)?;
        let mut entries = BTreeMap::new();
        for e in v {
            if e.mult > 0 {
                *entries.entry(e.value).or_insert(0) += e.mult;
            }
        }
        Ok(Spectrum { entries })
    }
}

/// `{Σ iⱼ/mⱼ : 1 ≤ iⱼ ≤ mⱼ − 1}`.
pub fn spectrum_of(germ: &Germ) -> Spectrum {
    germ.exponents().iter().fold(Spectrum::from_values([Rat::ZERO]), |acc, &m| {
        acc.convolve(&Spectrum::from_values((1..m).map(|i| Rat::new(i as i128, m as i128))))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub spectrum: Spectrum,
    pub eigentable: EigenTable,
    pub milnor_number: u64,
    pub fold_matches: bool,
    pub totals_match: bool,
    pub symmetric: bool,
    pub min_is_alpha_tilde: bool,
    pub failures: Vec<String>,
}

impl SpectralReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn consistency_check(germ: &Germ) -> Result<SpectralReport> {
    let spectrum = spectrum_of(germ);
    let eigentable = eigentable_of(germ)?;
    let mu = milnor_number(germ);
    let fold_matches = spectrum.fold() == eigentable;
    let totals_match = spectrum.total() == mu && eigentable.total() == mu;
    let symmetric = spectrum.is_symmetric_about(Rat::new(germ.dim() as i128, 2));
    let min_is_alpha_tilde = spectrum.min() == Some(alpha_tilde(germ));
    let mut failures = Vec::new();
    for (ok, what) in [
        (fold_matches, "folded spectrum differs from convolved eigentable"),
        (totals_match, "totals differ from the Milnor number"),
        (symmetric, "spectrum is not symmetric about d/2"),
        (min_is_alpha_tilde, "minimal spectral value differs from the sum of 1/m"),
    ] {
        if !ok {
            failures.push(what.to_string());
        }
    }
    Ok(SpectralReport {
        spectrum,
        eigentable,
        milnor_number: mu,
        fold_matches,
        totals_match,
        symmetric,
        min_is_alpha_tilde,
        failures,
    })
}
