//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{parse_q, Q};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsmult_core::filtration::usual_jumpset;
use tsmult_core::germs::{self, diagonal_microlocal_chain};
use tsmult_core::oracles::{monte_carlo_integrable, summation_path, McConfig, Verdict};
use tsmult_core::spectral::{eigentable_of, phi_convolve, phi_convolve_detailed, spectrum_of, Branch};
use tsmult_core::thom_sebastiani::{
    alpha_one_sequence_check, convolved_microlocal_chain, convolved_usual_chain, irrationality_dim, ts_lct,
    ts_multiplier,
};
use tsmult_core::{Exponent, Germ, MonomialIdeal, Rat};

type Outcome = Result<String, String>;

fn q_of(r: Rat) -> Q {
    parse_q(&r.to_string())
}

fn rat_of(x: Q) -> Rat {
    Rat::new(*x.numer() as i128, *x.denom() as i128)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn germ(ms: &[u32]) -> Germ {
    Germ::diagonal(ms).unwrap()
}

fn c1_lct_addition() -> Outcome {
    let cases = common::tuples(2, 9, 4);
    for ms in &cases {
        let expected = common::alpha_tilde(ms).min(common::q(1, 1));
        let g = germ(ms);
        let got = germs::lct(&g);
        ensure(q_of(got) == expected, || format!("{ms:?}: lct {got}, expected {expected}"))?;
        for k in 1..ms.len() {
            let (a, b) = g.split_at(k).unwrap();
            let split = ts_lct(germs::lct(&a), germs::lct(&b)).map_err(|e| e.to_string())?;
            ensure(split == got, || format!("{ms:?} split at {k}: {split} vs {got}"))?;
        }
    }
    Ok(format!("{} germs", cases.len()))
}

fn c2_summation_route() -> Outcome {
    let mut n = 0;
    for m1 in 2..=7u32 {
        for m2 in 2..=7u32 {
            let den = (m1 * m2) as i128;
            let c1 = germs::one_var_usual_chain(m1, Rat::ONE).unwrap();
            let c2 = germs::one_var_usual_chain(m2, Rat::ONE).unwrap();
            for k in 1..den {
                let alpha = Rat::new(k, den);
                let newton = summation_path(m1, m2, alpha).map_err(|e| e.to_string())?;
                let engine = ts_multiplier(&c1, &c2, alpha).map_err(|e| e.to_string())?;
                ensure(newton == engine, || format!("({m1},{m2}) at {alpha}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (pair, α) cases"))
}

fn c3_proof_path() -> Outcome {
    let cases = common::tuples(2, 9, 3);
    let w = Rat::int(3);
    for ms in &cases {
        let g = germ(ms);
        let conv = convolved_microlocal_chain(&g, w).map_err(|e| e.to_string())?;
        let closed = diagonal_microlocal_chain(&g, w).map_err(|e| e.to_string())?;
        ensure(conv == closed, || format!("{ms:?}: chains differ"))?;
    }
    Ok(format!("{} germs, window 3", cases.len()))
}

fn c4_goldens() -> Outcome {
    let cusp = germ(&[2, 3]);
    let usual = convolved_usual_chain(&cusp).map_err(|e| e.to_string())?;
    let micro = convolved_microlocal_chain(&cusp, Rat::int(2)).map_err(|e| e.to_string())?;
    let jc: Vec<Rat> = usual_jumpset(&micro.jumpset(), Rat::int(2))
        .map_err(|e| e.to_string())?
        .values
        .into_iter()
        .filter(|v| *v <= Rat::ONE)
        .collect();
    ensure(jc == vec![Rat::new(5, 6), Rat::ONE], || format!("cusp JC {jc:?}"))?;
    let j = usual.j_lookup(Rat::new(5, 6)).map_err(|e| e.to_string())?;
    ensure(*j == MonomialIdeal::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap(), || format!("cusp J(5/6) = {j}"))?;
    let s = spectrum_of(&cusp).values();
    ensure(s == vec![Rat::new(5, 6), Rat::new(7, 6)], || format!("cusp spectrum {s:?}"))?;

    let a1 = germ(&[2, 2, 2]);
    ensure(spectrum_of(&a1).values() == vec![Rat::new(3, 2)], || "A1 spectrum".into())?;
    ensure(irrationality_dim(&a1) == Ok(0), || "A1 irrationality".into())?;

    let ell = germ(&[3, 3, 3]);
    ensure(irrationality_dim(&ell) == Ok(1), || "elliptic irrationality".into())?;
    let es = spectrum_of(&ell);
    ensure(es.total() == 8 && es.min() == Some(Rat::ONE), || "elliptic spectrum".into())?;

    let e8 = germ(&[2, 3, 5]);
    ensure(germs::milnor_number(&e8) == 8, || "E8 Milnor number".into())?;
    ensure(spectrum_of(&e8).min() == Some(Rat::new(31, 30)), || "E8 min spectrum".into())?;

    // cross-check the goldens against direct enumeration
    for ms in [&[2, 3][..], &[2, 2, 2], &[3, 3, 3], &[2, 3, 5]] {
        let direct = common::spectrum(ms);
        let engine: Vec<Q> = spectrum_of(&germ(ms)).values().into_iter().map(q_of).collect();
        ensure(direct == engine, || format!("{ms:?}: spectrum vs enumeration"))?;
    }
    Ok("cusp, A1, elliptic cone, E8".into())
}

fn c5_eigen_bookkeeping() -> Outcome {
    let germs_le2 = common::tuples(2, 7, 2);
    let mut n = 0;
    for a in &germs_le2 {
        let ta = eigentable_of(&germ(a)).unwrap();
        for b in &germs_le2 {
            let tb = eigentable_of(&germ(b)).unwrap();
            let conv = phi_convolve(&ta, &tb);
            let mu: u64 = a.iter().chain(b).map(|&m| (m - 1) as u64).product();
            ensure(conv.total() == mu, || format!("{a:?}+{b:?}: total {} vs {mu}", conv.total()))?;
            let whole: Vec<u32> = a.iter().chain(b).copied().collect();
            let folded = spectrum_of(&germ(&whole)).fold();
            ensure(folded == conv, || format!("{a:?}+{b:?}: fold mismatch"))?;
            n += 1;
        }
    }
    let t2 = eigentable_of(&germ(&[2])).unwrap();
    let t3 = eigentable_of(&germ(&[3])).unwrap();
    let cusp = phi_convolve(&t2, &t3);
    let keys: Vec<Rat> = cusp.entries().map(|(a, _)| a).collect();
    ensure(keys == vec![Rat::new(-5, 6), Rat::new(-1, 6)], || format!("cusp eigentable {keys:?}"))?;
    let pair = phi_convolve_detailed(&t2, &t3)
        .into_iter()
        .find(|c| c.a1 == Rat::new(-1, 2) && c.a2 == Rat::new(-2, 3))
        .ok_or("missing cusp pair")?;
    ensure(pair.branch == Branch::J && pair.alpha == Rat::new(-1, 6), || format!("cusp pair {pair:?}"))?;
    Ok(format!("{n} germ pairs"))
}

fn c6_alpha_one() -> Outcome {
    let mut n = 0;
    for ms in common::tuples(2, 5, 3).into_iter().filter(|ms| ms.len() >= 2) {
        let g = germ(&ms);
        // J̃(1) = {Σ weight > 1}; its colength is the number of ν with weight sum <= 1
        let irr = common::weight_count_at_most(&ms, common::q(1, 1));
        let g_tilde = common::weight_multiplicity(&ms, common::q(1, 1));
        ensure(irrationality_dim(&g) == Ok(irr), || format!("{ms:?}: irrationality vs count {irr}"))?;
        for k in 1..ms.len() {
            let (a, b) = g.split_at(k).unwrap();
            let rep = alpha_one_sequence_check(&a, &b).map_err(|e| e.to_string())?;
            ensure(rep.consistent, || format!("{ms:?} split {k}: {rep:?}"))?;
            ensure(rep.irrationality_dim == irr && rep.g_tilde_dim == g_tilde, || {
                format!("{ms:?} split {k}: dims {} {} vs {irr} {g_tilde}", rep.irrationality_dim, rep.g_tilde_dim)
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} splits"))
}

fn c7_microlocal_usual() -> Outcome {
    let cases = common::tuples(2, 7, 3);
    for ms in &cases {
        let g = germ(ms);
        let usual = convolved_usual_chain(&g).map_err(|e| e.to_string())?;
        let micro = diagonal_microlocal_chain(&g, Rat::ONE).map_err(|e| e.to_string())?;
        ensure(usual.levels() == micro.levels() && usual.plateaus() == micro.plateaus(), || {
            format!("{ms:?}: usual and microlocal differ on [0,1)")
        })?;
        let den: i128 = ms.iter().map(|&m| m as i128).product::<i128>() * 2;
        for k in 0..2 * den {
            let alpha = Rat::new(k, den);
            let here = usual.periodic_extend(alpha).map_err(|e| e.to_string())?;
            let next = usual.periodic_extend(alpha + Rat::ONE).map_err(|e| e.to_string())?;
            ensure(next.power == here.power + 1 && next.ideal == here.ideal, || {
                format!("{ms:?}: periodicity at {alpha}")
            })?;
        }
    }
    Ok(format!("{} germs", cases.len()))
}

struct McCase {
    ms: Vec<u32>,
    nu: Vec<u32>,
    alpha: Q,
}

fn mc_cases(count: usize, seed: u64) -> Vec<McCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_gap = common::q(1, 20);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = rng.gen_range(1..=3);
        let ms: Vec<u32> = (0..d).map(|_| rng.gen_range(2..=6)).collect();
        let nu: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=2)).collect();
        let alpha = common::q(rng.gen_range(1..240), 240);
        // jumps of J(α) in (0, 1]: achieved log discrepancies of small monomials, and 1
        let mut jumps: Vec<Q> = common::lattice(d, 6)
            .iter()
            .map(|v| common::log_discrepancy(&ms, v))
            .filter(|s| *s <= common::q(1, 1))
            .collect();
        jumps.push(common::q(1, 1));
        jumps.push(common::log_discrepancy(&ms, &nu));
        let far = alpha >= min_gap && jumps.iter().all(|j| (alpha - *j).abs() >= min_gap);
        if far {
            out.push(McCase { ms, nu, alpha });
        }
    }
    out
}

fn c8_monte_carlo() -> Outcome {
    let cases = mc_cases(200, 2024);
    let base = McConfig::default();
    let mut agree = 0;
    let mut misses = Vec::new();
    for (i, c) in cases.iter().enumerate() {
        let exact = common::log_discrepancy(&c.ms, &c.nu) > c.alpha;
        let config = McConfig { seed: base.seed + i as u64, ..base.clone() };
        let ev = monte_carlo_integrable(&germ(&c.ms), &Exponent(c.nu.clone()), rat_of(c.alpha), &config);
        let expected = if exact { Verdict::Integrable } else { Verdict::Divergent };
        if ev.verdict == expected {
            agree += 1;
        } else if misses.len() < 5 {
            misses.push(format!("{:?} ν={:?} α={} slope {:.3} {:?}", c.ms, c.nu, c.alpha, ev.slope, ev.verdict));
        }
    }
    let rate = agree as f64 / cases.len() as f64;
    ensure(rate >= 0.95, || format!("agreement {agree}/{}; e.g. {misses:?}", cases.len()))?;
    Ok(format!("agreement {agree}/{} ({:.1}%)", cases.len(), 100.0 * rate))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("1 lct addition", Duration::from_secs(1), c1_lct_addition),
        ("2 multiplier ideals vs Newton/summation route", Duration::from_secs(10), c2_summation_route),
        ("3 convolution vs closed-form chains", Duration::from_secs(30), c3_proof_path),
        ("4 classical goldens", Duration::from_secs(5), c4_goldens),
        ("5 eigenvalue bookkeeping", Duration::from_secs(10), c5_eigen_bookkeeping),
        ("6 alpha = 1 sequence", Duration::from_secs(30), c6_alpha_one),
        ("7 microlocal/usual agreement and periodicity", Duration::from_secs(30), c7_microlocal_usual),
        ("8 Monte-Carlo advisory agreement", Duration::from_secs(120), c8_monte_carlo),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}, but took {elapsed:.2?} (limit {limit:?})")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{elapsed:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} [{elapsed:.2?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
