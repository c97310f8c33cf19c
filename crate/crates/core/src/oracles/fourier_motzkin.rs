//! Exact feasibility of rational linear systems with strict and non-strict
//! inequalities, by Fourier-Motzkin elimination.

use crate::rat::Rat;

/// `coeffs · x < rhs` when `strict`, else `coeffs · x <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub strict: bool,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint { coeffs, rhs, strict: false }
    }

    pub fn lt(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint { coeffs, rhs, strict: true }
    }

    /// Both `coeffs · x <= rhs` and `coeffs · x >= rhs`.
    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> [Self; 2] {
        let neg = coeffs.iter().map(|c| -*c).collect();
        [Constraint::le(coeffs, rhs), Constraint::le(neg, -rhs)]
    }

    // scale so the first nonzero coefficient (or the rhs) has absolute value 1
    fn normalized(mut self) -> Self {
        let pivot = self.coeffs.iter().copied().find(|c| !c.is_zero()).unwrap_or(self.rhs);
        if !pivot.is_zero() {
            let s = pivot.abs().recip();
            for c in &mut self.coeffs {
                *c = *c * s;
            }
            self.rhs = self.rhs * s;
        }
        self
    }
}

/// Whether some real `x` satisfies every constraint.
pub fn feasible(constraints: &[Constraint]) -> bool {
    let n = constraints.iter().map(|c| c.coeffs.len()).max().unwrap_or(0);
    let mut system: Vec<Constraint> = constraints
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.coeffs.resize(n, Rat::ZERO);
            c.normalized()
        })
        .collect();
    for var in (0..n).rev() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in system {
            let a = c.coeffs[var];
            if a.is_positive() {
                pos.push(c);
            } else if a.is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for p in &pos {
            for q in &neg {
                let (a, b) = (p.coeffs[var], -q.coeffs[var]);
                let coeffs = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| *x * b + *y * a).collect();
                let combined = Constraint { coeffs, rhs: p.rhs * b + q.rhs * a, strict: p.strict || q.strict };
                rest.push(combined.normalized());
            }
        }
        rest.sort();
        rest.dedup();
        system = rest;
    }
    system.iter().all(|c| if c.strict { c.rhs.is_positive() } else { !c.rhs.is_negative() })
}
