use serde_json::{json, Value};
use thiserror::Error;

use tsmult_core::filtration::usual_jumpset;
use tsmult_core::germs::{self, diagonal_microlocal_chain, one_var_microlocal_chain};
use tsmult_core::monomial::{default_names, format_monomial};
use tsmult_core::oracles::monte_carlo::{random_cases, run_cases};
use tsmult_core::oracles::summation_path;
use tsmult_core::spectral::{consistency_check, eigentable_of, spectrum_of};
use tsmult_core::thom_sebastiani::{
    convolved_microlocal_chain, convolved_usual_chain, graded_decomposition, irrationality_module, total_dim,
};
use tsmult_core::{Error, Germ, MonomialIdeal, QuotientBasis, Rat};

use crate::config::Config;
use crate::parser::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::WindowExceeded { .. }
                | Error::Domain(_)
                | Error::NotReduced
                | Error::UnsupportedGerm(_)
                | Error::ParseRational(_)
                | Error::InfiniteQuotient { .. } => 2,
                _ => 1,
            },
        }
    }
}

/// What a command produced. `ok == false` only for failed verification.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn join(values: &[Rat]) -> String {
    values.iter().map(Rat::to_string).collect::<Vec<_>>().join(", ")
}

fn basis_text(basis: &QuotientBasis, names: &[String]) -> String {
    match basis {
        QuotientBasis::Finite { basis } => {
            if basis.is_empty() {
                "0".into()
            } else {
                basis.iter().map(|e| format_monomial(e, names)).collect::<Vec<_>>().join(", ")
            }
        }
        QuotientBasis::Infinite { axis, base } => {
            format!("infinite: {} times powers of {}", format_monomial(base, names), names[*axis])
        }
    }
}

fn ideal_json(ideal: &MonomialIdeal) -> Value {
    serde_json::to_value(ideal).expect("ideals serialize")
}

pub fn lct(germ: &Germ) -> Output {
    let l = germs::lct(germ);
    Output::new(l.to_string(), json!({"germ": germ.to_string(), "lct": l, "alpha_tilde": germs::alpha_tilde(germ)}))
}

pub fn jc(germ: &Germ, cfg: &Config) -> Result<Output, CliError> {
    let chain = convolved_microlocal_chain(germ, cfg.window)?;
    let micro = chain.jumpset();
    let usual = if cfg.window >= Rat::ONE { usual_jumpset(&micro, cfg.window)?.values } else { micro.values.clone() };
    let text = format!("microlocal: {}\nusual: {}", join(&micro.values), join(&usual));
    let json = json!({"germ": germ.to_string(), "window": cfg.window, "microlocal": micro.values, "usual": usual});
    Ok(Output::new(text, json))
}

/// `J(αX)` through the convolved usual chain and periodicity, or `Ṽ^α` with
/// `microlocal`.
pub fn ideal(germ: &Germ, alpha: Rat, microlocal: bool, cfg: &Config) -> Result<Output, CliError> {
    if alpha.is_negative() {
        return Err(Error::Domain(format!("α must be non-negative, got {alpha}")).into());
    }
    let (power, ideal, kind) = if microlocal {
        let chain = convolved_microlocal_chain(germ, cfg.window)?;
        (0, chain.v_lookup(alpha)?.clone(), "microlocal")
    } else {
        let scaled = convolved_usual_chain(germ)?.periodic_extend(alpha)?;
        (scaled.power, scaled.ideal, "usual")
    };
    let shown = ideal.display_with(germ.names());
    let mut text = match power {
        0 => shown,
        1 => format!("f * {shown}"),
        k => format!("f^{k} * {shown}"),
    };
    let gens: Vec<&[u32]> = ideal.generators().iter().map(|g| g.entries()).collect();
    text.push_str(&format!("\ngens {}", serde_json::to_string(&gens).expect("serializable")));
    let json = json!({
        "germ": germ.to_string(),
        "alpha": alpha,
        "kind": kind,
        "power": power,
        "ideal": ideal_json(&ideal),
    });
    Ok(Output::new(text, json))
}

pub fn graded(germ: &Germ, alpha: Rat, cfg: &Config) -> Result<Output, CliError> {
    let factors =
        germ.exponents().iter().map(|&m| one_var_microlocal_chain(m, cfg.window)).collect::<Result<Vec<_>, _>>()?;
    let parts = graded_decomposition(&factors, alpha)?;
    let dim = total_dim(&parts);
    let mut lines = vec![format!("dim {}", dim.map_or("infinite".into(), |d| d.to_string()))];
    for p in &parts {
        lines.push(format!("({}): {}", join(&p.levels), basis_text(&p.basis, germ.names())));
    }
    let json = json!({"germ": germ.to_string(), "alpha": alpha, "summands": parts, "total_dim": dim});
    Ok(Output::new(lines.join("\n"), json))
}

pub fn spectrum(germ: &Germ) -> Output {
    let s = spectrum_of(germ);
    let text = s.values().iter().map(Rat::to_string).collect::<Vec<_>>().join(" ");
    let json = json!({
        "germ": germ.to_string(),
        "spectrum": s,
        "total": s.total(),
        "min": s.min(),
        "max": s.max(),
    });
    Output::new(text, json)
}

pub fn eigen(germ: &Germ) -> Result<Output, CliError> {
    let t = eigentable_of(germ)?;
    let text = t.entries().map(|(a, m)| format!("{a} {m}")).collect::<Vec<_>>().join("\n");
    Ok(Output::new(text, json!({"germ": germ.to_string(), "eigentable": t, "total": t.total()})))
}

pub fn irrationality(germ: &Germ) -> Result<Output, CliError> {
    let basis = irrationality_module(germ)?;
    let dim = basis.dim();
    let text = format!(
        "dim {}\nbasis: {}",
        dim.map_or("infinite".into(), |d| d.to_string()),
        basis_text(&basis, germ.names())
    );
    Ok(Output::new(text, json!({"germ": germ.to_string(), "dim": dim, "basis": basis})))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Summation,
    Convolution,
    Montecarlo,
    Spectral,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Summation => "summation",
            Suite::Convolution => "convolution",
            Suite::Montecarlo => "montecarlo",
            Suite::Spectral => "spectral",
            Suite::All => "all",
        }
    }
}

struct SuiteResult {
    name: &'static str,
    cases: Vec<Value>,
    passed: bool,
    summary: String,
}

fn case(label: String, pass: bool, detail: Option<String>) -> Value {
    match detail {
        Some(d) => json!({"case": label, "pass": pass, "detail": d}),
        None => json!({"case": label, "pass": pass}),
    }
}

fn all_tuples(lo: u32, hi: u32, max_d: usize) -> Vec<Vec<u32>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..max_d {
        layer = layer.iter().flat_map(|v| (lo..=hi).map(move |m| [v.as_slice(), &[m]].concat())).collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn verify_summation(germ: Option<&Germ>) -> SuiteResult {
    let pairs: Vec<(u32, u32)> = match germ {
        Some(g) if g.dim() == 2 => vec![(g.exponents()[0], g.exponents()[1])],
        _ => (2..=7).flat_map(|a| (2..=7).map(move |b| (a, b))).collect(),
    };
    let mut cases = Vec::new();
    for (m1, m2) in pairs {
        let den = (m1 * m2) as i128;
        for n in 1..den {
            let alpha = Rat::new(n, den);
            let label = format!("({m1},{m2}) at {alpha}");
            cases.push(match summation_path(m1, m2, alpha) {
                Ok(_) => case(label, true, None),
                Err(e) => case(label, false, Some(e.to_string())),
            });
        }
    }
    finish("summation", cases)
}

/// Brute-force check of chain plateaus against `Σ weight >= α` on a box.
fn membership_mismatch(germ: &Germ, cfg: &Config) -> Option<String> {
    let chain = convolved_microlocal_chain(germ, cfg.window).ok()?;
    let mut probes = vec![Rat::ZERO];
    probes.extend_from_slice(chain.levels());
    for alpha in probes {
        let value = chain.v_lookup(alpha).ok()?;
        for nu in tsmult_core::monomial::lattice_box(germ.dim(), cfg.box_bound) {
            let w = germs::diagonal_weight_sum(germ, &nu).ok()?;
            if value.contains(&nu).ok()? != (w >= alpha) {
                return Some(format!("membership of {} at {alpha}", format_monomial(&nu, &default_names(germ.dim()))));
            }
        }
    }
    None
}

fn verify_convolution(germ: Option<&Germ>, cfg: &Config) -> SuiteResult {
    let germs: Vec<Germ> = match germ {
        Some(g) => vec![g.clone()],
        None => all_tuples(2, 6, 3).iter().map(|ms| Germ::diagonal(ms).expect("valid")).collect(),
    };
    let mut cases = Vec::new();
    for g in &germs {
        let conv = convolved_microlocal_chain(g, cfg.window);
        let closed = diagonal_microlocal_chain(g, cfg.window);
        let mut detail = match (conv, closed) {
            (Ok(a), Ok(b)) if a == b => None,
            (Ok(_), Ok(_)) => Some("convolved chain differs from closed form".to_string()),
            (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
        };
        if detail.is_none() && germ.is_some() {
            detail = membership_mismatch(g, cfg);
        }
        cases.push(case(g.to_string(), detail.is_none(), detail));
    }
    finish("convolution", cases)
}

fn verify_montecarlo(germ: Option<&Germ>, cfg: &Config) -> SuiteResult {
    let count = if germ.is_some() { 10 } else { 50 };
    let cases = random_cases(count, cfg.mc.seed, Rat::new(1, 20), germ);
    let outcomes = run_cases(&cases, &cfg.mc);
    let agree = outcomes.iter().filter(|o| o.agrees).count();
    let passed = !outcomes.is_empty() && agree * 100 >= 95 * outcomes.len();
    let json_cases = outcomes
        .iter()
        .map(|o| {
            let label = format!("{} nu={:?} alpha={}", o.case.germ, o.case.nu.entries(), o.case.alpha);
            let detail = format!("verdict {:?}, slope {:.3}, exact {}", o.verdict, o.slope, o.case.exact);
            case(label, o.agrees, Some(detail))
        })
        .collect();
    SuiteResult {
        name: "montecarlo",
        cases: json_cases,
        passed,
        summary: format!("{agree}/{} agree with exact membership (need 95%)", outcomes.len()),
    }
}

fn verify_spectral(germ: Option<&Germ>) -> SuiteResult {
    let germs: Vec<Germ> = match germ {
        Some(g) => vec![g.clone()],
        None => all_tuples(2, 6, 3).iter().map(|ms| Germ::diagonal(ms).expect("valid")).collect(),
    };
    let cases = germs
        .iter()
        .map(|g| match consistency_check(g) {
            Ok(rep) if rep.passed() => case(g.to_string(), true, None),
            Ok(rep) => case(g.to_string(), false, Some(rep.failures.join("; "))),
            Err(e) => case(g.to_string(), false, Some(e.to_string())),
        })
        .collect();
    finish("spectral", cases)
}

fn finish(name: &'static str, cases: Vec<Value>) -> SuiteResult {
    let good = cases.iter().filter(|c| c["pass"] == true).count();
    SuiteResult { name, passed: good == cases.len(), summary: format!("{good}/{} cases pass", cases.len()), cases }
}

pub fn verify(suite: Suite, germ: Option<&Germ>, cfg: &Config) -> Output {
    let suites = match suite {
        Suite::All => vec![Suite::Summation, Suite::Convolution, Suite::Montecarlo, Suite::Spectral],
        s => vec![s],
    };
    let results: Vec<SuiteResult> = suites
        .into_iter()
        .map(|s| match s {
            Suite::Summation => verify_summation(germ),
            Suite::Convolution => verify_convolution(germ, cfg),
            Suite::Montecarlo => verify_montecarlo(germ, cfg),
            Suite::Spectral => verify_spectral(germ),
            Suite::All => unreachable!("expanded above"),
        })
        .collect();
    let ok = results.iter().all(|r| r.passed);
    let mut lines = Vec::new();
    for r in &results {
        lines.push(format!("{}: {} ({})", r.name, if r.passed { "PASS" } else { "FAIL" }, r.summary));
        for c in r.cases.iter().filter(|c| c["pass"] == false).take(10) {
            lines.push(format!(
                "  failed {}: {}",
                c["case"].as_str().unwrap_or(""),
                c["detail"].as_str().unwrap_or("")
            ));
        }
    }
    let json = json!({
        "suite": suite.name(),
        "germ": germ.map(Germ::to_string),
        "passed": ok,
        "suites": results
            .iter()
            .map(|r| json!({"suite": r.name, "passed": r.passed, "summary": r.summary, "cases": r.cases}))
            .collect::<Vec<_>>(),
    });
    Output { text: lines.join("\n"), json, ok }
}
