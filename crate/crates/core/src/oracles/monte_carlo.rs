//! Monte-Carlo check of local integrability of `|z^ν|² / |f|^{2α}`.
//!
//! The integral over a small polydisk is split into dyadic shells
//! `max|zⱼ| ∈ (R/2, R]`, `R = 2^{−k}`. Each shell integral is finite for
//! `α < 1`, and for a quasi-homogeneous `f` the shell integrals eventually
//! behave like `2^{−kE}`, so the sign of the fitted slope of `log₂ Iₖ`
//! decides integrability.
//!
//! Inside a shell the last variable is replaced by `w = a_d z_d^{m_d}`,
//! which turns the inner integrand into `|w|^{2a−2} |w + c|^{−2α}` up to a
//! constant, with `c = Σ_{j<d} aⱼ zⱼ^{mⱼ}`. That is sampled with a two-component
//! mixture matched to both singular factors, so every shell estimate has
//! bounded weights away from `c = 0`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::germs::Germ;
use crate::monomial::Exponent;
use crate::par;
use crate::rat::Rat;
use crate::thom_sebastiani::convolved_usual_chain;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub seed: u64,
    pub shells: u32,
    pub samples: u32,
    /// Minimum |slope| of `log₂ Iₖ` per shell for a verdict.
    pub margin: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { seed: 0x5eed, shells: 12, samples: 20_000, margin: 0.05 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Integrable,
    Divergent,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShellEstimate {
    pub k: u32,
    pub estimate: f64,
    pub std_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEvidence {
    pub verdict: Verdict,
    pub seed: u64,
    pub shells: Vec<ShellEstimate>,
    /// First shell used in the fit.
    pub fit_from: u32,
    pub slope: f64,
    /// Fitted `I_{k+1} / I_k`.
    pub ratio: f64,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn shell_seed(seed: u64, k: u32) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (k as u64).wrapping_mul(0xd1b5_4a32_d192_ed03)
}

fn uniform_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, 2.0 * PI * rng.gen::<f64>())
}

struct Integrand {
    exps: Vec<i32>,
    coeffs: Vec<f64>,
    nu: Vec<i32>,
    alpha: f64,
}

impl Integrand {
    fn shell(&self, k: u32, samples: u32, seed: u64) -> ShellEstimate {
        let mut rng = ChaCha8Rng::seed_from_u64(shell_seed(seed, k));
        let d = self.exps.len();
        let big_r = 0.5f64.powi(k as i32);
        let half = big_r / 2.0;
        let m = self.exps[d - 1];
        let ad = self.coeffs[d - 1].abs();
        let a = (self.nu[d - 1] + 1) as f64 / m as f64;
        let rho0 = ad * big_r.powi(m);
        let z1 = PI * rho0.powf(2.0 * a) / a;
        let outer_volume = (PI * big_r * big_r).powi(d as i32 - 1);
        let constant = outer_volume * ad.powf(-2.0 * a) / m as f64;

        let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
        for _ in 0..samples {
            let mut c = Complex64::new(0.0, 0.0);
            let mut outer_weight = 1.0;
            let mut outer_max = 0.0f64;
            for j in 0..d - 1 {
                let z = uniform_disk(&mut rng, big_r);
                outer_max = outer_max.max(z.norm());
                c += self.coeffs[j] * z.powi(self.exps[j]);
                outer_weight *= z.norm_sqr().powi(self.nu[j]);
            }
            let rho2 = rho0 + c.norm();
            let z2 = PI * rho2.powf(2.0 - 2.0 * self.alpha) / (1.0 - self.alpha);
            let w = if rng.gen::<bool>() {
                Complex64::from_polar(rho0 * rng.gen::<f64>().powf(0.5 / a), 2.0 * PI * rng.gen::<f64>())
            } else {
                let rho = rho2 * rng.gen::<f64>().powf(0.5 / (1.0 - self.alpha));
                -c + Complex64::from_polar(rho, 2.0 * PI * rng.gen::<f64>())
            };
            let wn = w.norm();
            let zd = (wn / ad).powf(1.0 / m as f64);
            let in_shell = wn <= rho0 && outer_max.max(zd) > half;
            let value = if in_shell && wn > 0.0 {
                let p1 = wn.powf(2.0 * a - 2.0) / z1;
                let g = (w + c).norm().powf(-2.0 * self.alpha);
                let p2 = g / z2;
                let h = wn.powf(2.0 * a - 2.0) * g;
                constant * outer_weight * h / (0.5 * p1 + 0.5 * p2)
            } else {
                0.0
            };
            sum += value;
            sum_sq += value * value;
        }
        let n = samples as f64;
        let mean = sum / n;
        let var = (sum_sq / n - mean * mean).max(0.0);
        ShellEstimate { k, estimate: mean, std_error: (var / n).sqrt() }
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Estimate whether `|z^ν|² / |f|^{2α}` is integrable near the origin.
///
/// Only `α ∈ [0, 1)` is sampled; for larger `α` the integrand already fails
/// along the smooth part of `{f = 0}` and the verdict is `Inconclusive`.
pub fn monte_carlo_integrable(germ: &Germ, nu: &Exponent, alpha: Rat, config: &McConfig) -> McEvidence {
    let mut evidence = McEvidence {
        verdict: Verdict::Inconclusive,
        seed: config.seed,
        shells: Vec::new(),
        fit_from: 0,
        slope: f64::NAN,
        ratio: f64::NAN,
        margin: config.margin,
        note: None,
    };
    if alpha.is_negative() || alpha >= Rat::ONE || nu.dim() != germ.dim() || config.shells < 3 || config.samples == 0 {
        evidence.note = Some("sampler covers 0 <= α < 1 with matching ν and at least 3 shells".into());
        return evidence;
    }
    let integrand = Integrand {
        exps: germ.exponents().iter().map(|&m| m as i32).collect(),
        coeffs: germ.coefficients().iter().map(Rat::to_f64).collect(),
        nu: nu.0.iter().map(|&v| v as i32).collect(),
        alpha: alpha.to_f64(),
    };
    let shells =
        par::map_range(1..config.shells as usize + 1, |k| integrand.shell(k as u32, config.samples, config.seed));
    let fit_from = config.shells / 2 + 1;
    let points: Vec<(f64, f64)> = shells
        .iter()
        .filter(|s| s.k >= fit_from && s.estimate > 0.0)
        .map(|s| (s.k as f64, s.estimate.log2()))
        .collect();
    evidence.shells = shells;
    evidence.fit_from = fit_from;
    if points.len() < 3 {
        evidence.note = Some("too few nonzero shell estimates to fit".into());
        return evidence;
    }
    let slope = least_squares_slope(&points);
    evidence.slope = slope;
    evidence.ratio = slope.exp2();
    evidence.verdict = if slope < -config.margin {
        Verdict::Integrable
    } else if slope > config.margin {
        Verdict::Divergent
    } else {
        Verdict::Inconclusive
    };
    evidence
}

/// A sampled `(germ, ν, α)` together with the exact answer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McCase {
    pub germ: String,
    pub exponents: Vec<u32>,
    pub nu: Exponent,
    pub alpha: Rat,
    /// `Σ (νⱼ + 1)/mⱼ > α`.
    pub exact: bool,
}

/// Random cases with `α ∈ (0, 1)` at least `gap` away from every jumping
/// number in `(0, 1]` and from the threshold of `z^ν` itself.
///
/// With `germ = None` the germ is drawn too (`d <= 3`, `mⱼ ∈ [2, 6]`).
pub fn random_cases(count: usize, seed: u64, gap: Rat, germ: Option<&Germ>) -> Vec<McCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < 1000 * count.max(1) {
        attempts += 1;
        let g = match germ {
            Some(g) => g.clone(),
            None => {
                let d = rng.gen_range(1..=3);
                Germ::diagonal(&(0..d).map(|_| rng.gen_range(2..=6)).collect::<Vec<u32>>()).expect("valid exponents")
            }
        };
        let nu = Exponent((0..g.dim()).map(|_| rng.gen_range(0..=2)).collect());
        let alpha = Rat::new(rng.gen_range(1..240), 240);
        let threshold: Rat = g.exponents().iter().zip(&nu.0).map(|(&m, &v)| Rat::new(v as i128 + 1, m as i128)).sum();
        let mut jumps = convolved_usual_chain(&g).map(|c| c.levels().to_vec()).unwrap_or_default();
        jumps.push(Rat::ONE);
        jumps.push(threshold);
        if alpha < gap || jumps.iter().any(|j| (alpha - *j).abs() < gap) {
            continue;
        }
        out.push(McCase {
            germ: g.to_string(),
            exponents: g.exponents().to_vec(),
            nu,
            alpha,
            exact: threshold > alpha,
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McOutcome {
    pub case: McCase,
    pub verdict: Verdict,
    pub slope: f64,
    pub agrees: bool,
}

/// Run every case, case `i` with seed `config.seed + i`.
pub fn run_cases(cases: &[McCase], config: &McConfig) -> Vec<McOutcome> {
    cases
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let g = Germ::diagonal(&c.exponents).expect("valid exponents");
            let cfg = McConfig { seed: config.seed.wrapping_add(i as u64), ..config.clone() };
            let ev = monte_carlo_integrable(&g, &c.nu, c.alpha, &cfg);
            let expected = if c.exact { Verdict::Integrable } else { Verdict::Divergent };
            McOutcome { case: c.clone(), verdict: ev.verdict, slope: ev.slope, agrees: ev.verdict == expected }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::r;

    fn quick() -> McConfig {
        McConfig { samples: 4000, ..McConfig::default() }
    }

    #[test]
    fn cusp_examples() {
        let cusp = Germ::diagonal(&[2, 3]).unwrap();
        let origin = Exponent(vec![0, 0]);
        assert_eq!(monte_carlo_integrable(&cusp, &origin, r(7, 10), &quick()).verdict, Verdict::Integrable);
        assert_eq!(monte_carlo_integrable(&cusp, &origin, r(19, 20), &quick()).verdict, Verdict::Divergent);
    }

    #[test]
    fn one_variable() {
        let g = Germ::diagonal(&[3]).unwrap();
        assert_eq!(monte_carlo_integrable(&g, &Exponent(vec![0]), r(1, 4), &quick()).verdict, Verdict::Integrable);
        assert_eq!(monte_carlo_integrable(&g, &Exponent(vec![0]), r(1, 2), &quick()).verdict, Verdict::Divergent);
        assert_eq!(monte_carlo_integrable(&g, &Exponent(vec![1]), r(1, 2), &quick()).verdict, Verdict::Integrable);
    }

    #[test]
    fn deterministic() {
        let g = Germ::diagonal(&[2, 2, 3]).unwrap();
        let nu = Exponent(vec![0, 1, 0]);
        let a = monte_carlo_integrable(&g, &nu, r(3, 5), &quick());
        let b = monte_carlo_integrable(&g, &nu, r(3, 5), &quick());
        assert_eq!(a, b);
        let json = serde_json::to_value(&a).unwrap();
        assert_eq!(json["seed"], 0x5eed);
        assert!(json["shells"].as_array().unwrap().len() == 12);
    }

    #[test]
    fn generated_cases_keep_their_distance() {
        let cases = random_cases(20, 1, r(1, 20), None);
        assert_eq!(cases.len(), 20);
        for c in &cases {
            assert!(c.alpha >= r(1, 20) && c.alpha <= r(19, 20));
        }
        let cusp = Germ::diagonal(&[2, 3]).unwrap();
        let fixed = random_cases(5, 1, r(1, 20), Some(&cusp));
        assert!(fixed.iter().all(|c| c.exponents == vec![2, 3]));
        let quick_runs = run_cases(&fixed, &quick());
        assert_eq!(quick_runs.len(), 5);
    }

    #[test]
    fn out_of_range_is_inconclusive() {
        let g = Germ::diagonal(&[2, 3]).unwrap();
        let e = monte_carlo_integrable(&g, &Exponent(vec![0, 0]), Rat::ONE, &quick());
        assert_eq!(e.verdict, Verdict::Inconclusive);
        assert!(e.note.is_some());
    }
}
