//! Ideal-valued step functions of a rational parameter.
//!
//! A [`JumpChain`] stores the plateaus of a decreasing filtration between
//! its jump levels `0 < l₁ < … < lₙ < W`. Plateau `pᵢ` is the value on the
//! open interval `(lᵢ, lᵢ₊₁)`; the two continuity modes only differ in which
//! neighbouring plateau a jump level itself takes:
//!
//! * V-mode (left-continuous): `V^{lᵢ} = pᵢ₋₁`,
//! * J-mode (right-continuous): `J(lᵢ) = pᵢ`.
//!
//! Converting between the modes is therefore a relabelling, and the graded
//! piece at `lᵢ` is `pᵢ₋₁ / pᵢ` in either mode.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{quotient_basis, MonomialIdeal, QuotientBasis, ScaledIdeal};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    V,
    J,
}

/// Whether a chain carries microlocal data (`Ṽ`, `J̃`) or usual multiplier ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Microlocal,
    Usual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpChain {
    mode: Mode,
    kind: ChainKind,
    window: Rat,
    levels: Vec<Rat>,
    // plateaus.len() == levels.len() + 1
    plateaus: Vec<MonomialIdeal>,
}

impl JumpChain {
    /// Validating constructor. Levels must be strictly increasing inside
    /// `(0, window)` and consecutive plateaus strictly decreasing.
    pub fn from_plateaus(
        mode: Mode,
        kind: ChainKind,
        window: Rat,
        levels: Vec<Rat>,
        plateaus: Vec<MonomialIdeal>,
    ) -> Result<Self> {
        if !window.is_positive() {
            return Err(Error::Domain(format!("window must be positive, got {window}")));
        }
        if plateaus.len() != levels.len() + 1 {
            return Err(Error::Domain("a chain with n jumps needs n + 1 plateaus".into()));
        }
        let dim = plateaus[0].dim();
        for p in &plateaus {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
        }
        for (i, l) in levels.iter().enumerate() {
            if !l.is_positive() || *l >= window {
                return Err(Error::WindowExceeded { level: *l, window });
            }
            if i > 0 && levels[i - 1] >= *l {
                return Err(Error::Domain("jump levels must be strictly increasing".into()));
            }
        }
        for w in plateaus.windows(2) {
            if !w[1].is_subset_of(&w[0])? || w[0] == w[1] {
                return Err(Error::Domain("plateaus must be strictly decreasing".into()));
            }
        }
        Ok(JumpChain { mode, kind, window, levels, plateaus })
    }

    /// Like [`from_plateaus`](Self::from_plateaus) but drops candidate levels
    /// where the value does not actually change.
    pub fn from_candidate_plateaus(
        mode: Mode,
        kind: ChainKind,
        window: Rat,
        levels: Vec<Rat>,
        plateaus: Vec<MonomialIdeal>,
    ) -> Result<Self> {
        if plateaus.len() != levels.len() + 1 {
            return Err(Error::Domain("a chain with n jumps needs n + 1 plateaus".into()));
        }
        let mut iter = plateaus.into_iter();
        let mut kept_plateaus = vec![iter.next().expect("at least one plateau")];
        let mut kept_levels = Vec::with_capacity(levels.len());
        for (level, p) in levels.into_iter().zip(iter) {
            if kept_plateaus.last() != Some(&p) {
                kept_levels.push(level);
                kept_plateaus.push(p);
            }
        }
        Self::from_plateaus(mode, kind, window, kept_levels, kept_plateaus)
    }

    /// A chain without jumps.
    pub fn constant(mode: Mode, kind: ChainKind, window: Rat, value: MonomialIdeal) -> Result<Self> {
        Self::from_plateaus(mode, kind, window, Vec::new(), vec![value])
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    pub fn window(&self) -> Rat {
        self.window
    }

    pub fn dim(&self) -> usize {
        self.plateaus[0].dim()
    }

    pub fn levels(&self) -> &[Rat] {
        &self.levels
    }

    pub fn plateaus(&self) -> &[MonomialIdeal] {
        &self.plateaus
    }

    /// Value before the first jump.
    pub fn top(&self) -> &MonomialIdeal {
        &self.plateaus[0]
    }

    /// Value after the last jump, up to the window.
    pub fn tail(&self) -> &MonomialIdeal {
        self.plateaus.last().expect("at least one plateau")
    }

    /// Jump list in this chain's own convention: V-chains report `V^{l}`,
    /// J-chains report `J(l)`.
    pub fn jumps(&self) -> Vec<(Rat, &MonomialIdeal)> {
        let offset = match self.mode {
            Mode::V => 0,
            Mode::J => 1,
        };
        self.levels.iter().enumerate().map(|(i, l)| (*l, &self.plateaus[i + offset])).collect()
    }

    fn check_window(&self, alpha: Rat) -> Result<()> {
        if alpha.is_negative() {
            return Err(Error::Domain(format!("level {alpha} is negative")));
        }
        if alpha >= self.window {
            return Err(Error::WindowExceeded { level: alpha, window: self.window });
        }
        Ok(())
    }

    /// Left-continuous value at `alpha`, regardless of the stored mode.
    pub fn value_left(&self, alpha: Rat) -> Result<&MonomialIdeal> {
        self.check_window(alpha)?;
        let idx = self.levels.partition_point(|l| *l < alpha);
        Ok(&self.plateaus[idx])
    }

    /// Right-continuous value at `alpha`, regardless of the stored mode.
    pub fn value_right(&self, alpha: Rat) -> Result<&MonomialIdeal> {
        self.check_window(alpha)?;
        let idx = self.levels.partition_point(|l| *l <= alpha);
        Ok(&self.plateaus[idx])
    }

    /// `V^α` of a V-chain.
    pub fn v_lookup(&self, alpha: Rat) -> Result<&MonomialIdeal> {
        if self.mode != Mode::V {
            return Err(Error::WrongChain { expected: "V-mode" });
        }
        self.value_left(alpha)
    }

    /// `J(α)` of a J-chain.
    pub fn j_lookup(&self, alpha: Rat) -> Result<&MonomialIdeal> {
        if self.mode != Mode::J {
            return Err(Error::WrongChain { expected: "J-mode" });
        }
        self.value_right(alpha)
    }

    pub fn v_to_j(&self) -> Result<JumpChain> {
        if self.mode != Mode::V {
            return Err(Error::WrongChain { expected: "V-mode" });
        }
        Ok(JumpChain { mode: Mode::J, ..self.clone() })
    }

    pub fn j_to_v(&self) -> Result<JumpChain> {
        if self.mode != Mode::J {
            return Err(Error::WrongChain { expected: "J-mode" });
        }
        Ok(JumpChain { mode: Mode::V, ..self.clone() })
    }

    /// Graded piece `V^α / V^{>α}`; empty unless `alpha` is a jump level.
    pub fn graded_at(&self, alpha: Rat) -> Result<QuotientBasis> {
        let big = self.value_left(alpha)?;
        let small = self.value_right(alpha)?;
        if big == small {
            return Ok(QuotientBasis::empty());
        }
        quotient_basis(big, small)
    }

    /// The same filtration on the smaller window `[0, window)`.
    pub fn restrict(&self, window: Rat) -> Result<JumpChain> {
        if window > self.window {
            return Err(Error::WindowExceeded { level: window, window: self.window });
        }
        let n = self.levels.partition_point(|l| *l < window);
        Self::from_plateaus(self.mode, self.kind, window, self.levels[..n].to_vec(), self.plateaus[..=n].to_vec())
    }

    /// `J(αX) = f^k · J((α−k)X)` with `k = ⌊α⌋`, for a usual J-chain whose
    /// window covers `[0, 1)`.
    pub fn periodic_extend(&self, alpha: Rat) -> Result<ScaledIdeal> {
        if self.kind != ChainKind::Usual {
            return Err(Error::WrongChain { expected: "usual multiplier" });
        }
        if self.mode != Mode::J {
            return Err(Error::WrongChain { expected: "J-mode" });
        }
        if self.window < Rat::ONE {
            return Err(Error::WindowExceeded { level: Rat::ONE, window: self.window });
        }
        if alpha.is_negative() {
            return Err(Error::Domain(format!("periodic extension needs alpha >= 0, got {alpha}")));
        }
        let k = alpha.floor();
        let rest = alpha - Rat::int(k);
        let power = u32::try_from(k).map_err(|_| Error::Domain(format!("alpha {alpha} too large")))?;
        Ok(ScaledIdeal { power, ideal: self.value_right(rest)?.clone() })
    }

    pub fn jumpset(&self) -> JumpSet {
        JumpSet { values: self.levels.clone(), window: self.window, periodic: self.kind == ChainKind::Usual }
    }
}

/// Free-function alias of [`JumpChain::jumpset`].
pub fn jumpset_of(chain: &JumpChain) -> JumpSet {
    chain.jumpset()
}

/// Jumping coefficients inside `(0, window)`.
///
/// `periodic` marks sets of usual multiplier ideals, which repeat with
/// period one beyond the stored range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpSet {
    pub values: Vec<Rat>,
    pub window: Rat,
    pub periodic: bool,
}

impl JumpSet {
    pub fn new(mut values: Vec<Rat>, window: Rat, periodic: bool) -> Result<Self> {
        values.sort();
        values.dedup();
        if let Some(bad) = values.iter().find(|v| !v.is_positive() || **v >= window) {
            return Err(Error::WindowExceeded { level: *bad, window });
        }
        Ok(JumpSet { values, window, periodic })
    }

    pub fn contains(&self, x: Rat) -> bool {
        self.values.binary_search(&x).is_ok()
    }

    pub fn min(&self) -> Option<Rat> {
        self.values.first().copied()
    }

    /// Values in the open interval `(0, bound)`.
    pub fn below(&self, bound: Rat) -> Vec<Rat> {
        self.values.iter().copied().filter(|v| *v < bound).collect()
    }
}

/// Usual jumping coefficients from microlocal ones:
/// `((J̃C ∩ (0,1)) ∪ {1}) + ℕ`, truncated to `(0, window)`.
pub fn usual_jumpset(microlocal: &JumpSet, window: Rat) -> Result<JumpSet> {
    if microlocal.window < Rat::ONE {
        return Err(Error::WindowExceeded { level: Rat::ONE, window: microlocal.window });
    }
    if !window.is_positive() {
        return Err(Error::Domain(format!("window must be positive, got {window}")));
    }
    let mut base = microlocal.below(Rat::ONE);
    base.push(Rat::ONE);
    let mut values = Vec::new();
    for b in base {
        let mut v = b;
        while v < window {
            values.push(v);
            v += Rat::ONE;
        }
    }
    JumpSet::new(values, window, true)
}

#[derive(Serialize, Deserialize)]
struct JumpRepr {
    level: Rat,
    ideal: MonomialIdeal,
}

#[derive(Serialize, Deserialize)]
struct ChainRepr {
    mode: Mode,
    #[serde(default = "default_kind")]
    kind: ChainKind,
    window: (u8, Rat),
    jumps: Vec<JumpRepr>,
    #[serde(default)]
    top: Option<MonomialIdeal>,
    #[serde(default)]
    tail: Option<MonomialIdeal>,
}

fn default_kind() -> ChainKind {
    ChainKind::Microlocal
}

impl Serialize for JumpChain {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ChainRepr {
            mode: self.mode,
            kind: self.kind,
            window: (0, self.window),
            jumps: self.jumps().into_iter().map(|(level, ideal)| JumpRepr { level, ideal: ideal.clone() }).collect(),
            top: Some(self.top().clone()),
            tail: Some(self.tail().clone()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JumpChain {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ChainRepr::deserialize(deserializer)?;
        if repr.window.0 != 0 {
            return Err(D::Error::custom("windows start at 0"));
        }
        let levels: Vec<Rat> = repr.jumps.iter().map(|j| j.level).collect();
        let ideals: Vec<MonomialIdeal> = repr.jumps.into_iter().map(|j| j.ideal).collect();
        let dim = ideals
            .first()
            .or(repr.top.as_ref())
            .or(repr.tail.as_ref())
            .map(MonomialIdeal::dim)
            .ok_or_else(|| D::Error::custom("cannot infer the dimension of an empty chain"))?;
        let plateaus = match repr.mode {
            Mode::V => {
                let mut p = ideals;
                let tail = match repr.tail {
                    Some(t) => t,
                    None if p.is_empty() => repr.top.clone().unwrap_or_else(|| MonomialIdeal::unit(dim)),
                    None => return Err(D::Error::custom("V-mode chains need a tail")),
                };
                p.push(tail);
                p
            }
            Mode::J => {
                let mut p = vec![repr.top.unwrap_or_else(|| MonomialIdeal::unit(dim))];
                p.extend(ideals);
                p
            }
        };
        JumpChain::from_plateaus(repr.mode, repr.kind, repr.window.1, levels, plateaus).map_err(D::Error::custom)
    }
}
