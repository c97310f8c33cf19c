//! Reference computations shared by the integration tests. Nothing here
//! calls into the engine: weights, membership and counts are recomputed
//! from the closed forms with plain integer and rational arithmetic.

#![allow(dead_code)]

use num_rational::Ratio;

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

/// Microlocal weight of `z^k` for `z^m`.
pub fn weight(m: u32, k: u32) -> Q {
    let m = m as i64;
    let k = k as i64;
    q(k + 1 + k / (m - 1), m)
}

pub fn weight_sum(ms: &[u32], nu: &[u32]) -> Q {
    ms.iter().zip(nu).map(|(&m, &k)| weight(m, k)).sum()
}

/// `Σ (νⱼ + 1)/mⱼ`, the integrability exponent of `z^ν`.
pub fn log_discrepancy(ms: &[u32], nu: &[u32]) -> Q {
    ms.iter().zip(nu).map(|(&m, &k)| q(k as i64 + 1, m as i64)).sum()
}

pub fn alpha_tilde(ms: &[u32]) -> Q {
    ms.iter().map(|&m| q(1, m as i64)).sum()
}

/// Every exponent vector in `[0, bound]^d`.
pub fn lattice(d: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// All ordered exponent tuples of length `1..=max_d` with entries in `lo..=hi`.
pub fn tuples(lo: u32, hi: u32, max_d: usize) -> Vec<Vec<u32>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..max_d {
        layer = layer
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |m| {
                    let mut w = v.clone();
                    w.push(m);
                    w
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// `#{ν : Σ weight = α}`; weights grow at least like `k/m`, so the box
/// `νⱼ <= mⱼ·⌈α⌉` is large enough.
pub fn weight_multiplicity(ms: &[u32], alpha: Q) -> usize {
    count_where(ms, alpha, |s, a| s == a)
}

/// `#{ν : Σ weight <= α}`.
pub fn weight_count_at_most(ms: &[u32], alpha: Q) -> usize {
    count_where(ms, alpha, |s, a| s <= a)
}

fn count_where(ms: &[u32], alpha: Q, pred: impl Fn(Q, Q) -> bool) -> usize {
    let bound = *ms.iter().max().unwrap() * (alpha.ceil().to_integer().max(1) as u32 + 1);
    lattice(ms.len(), bound).iter().filter(|nu| pred(weight_sum(ms, nu), alpha)).count()
}

/// `{Σ iⱼ/mⱼ : 1 <= iⱼ <= mⱼ − 1}` sorted, by direct enumeration.
pub fn spectrum(ms: &[u32]) -> Vec<Q> {
    let mut out: Vec<Q> = lattice(ms.len(), *ms.iter().max().unwrap())
        .into_iter()
        .filter(|i| i.iter().zip(ms).all(|(&i, &m)| i >= 1 && i < m))
        .map(|i| i.iter().zip(ms).map(|(&i, &m)| q(i as i64, m as i64)).sum())
        .collect();
    out.sort();
    out
}

/// Parse the engine's `p/q` strings for comparison.
pub fn parse_q(s: &str) -> Q {
    match s.split_once('/') {
        Some((n, d)) => q(n.parse().unwrap(), d.parse().unwrap()),
        None => q(s.parse().unwrap(), 1),
    }
}
