mod report;

use std::process::ExitCode;
use std::time::Instant;

use charp::content::{gaussian_check, poly_content, weak_content_check, SplitContext};
use charp::decompose::DEFAULT_Q_CAP;
use charp::frobenius::{bracket_power, frobenius_root};
use charp::hsl::{hsl_of_action, FrobeniusActionSpec, HslOutcome};
use charp::invariants::{bms_test_ideal, fpt, jumping_numbers, nu_sequence, parse_rational, Settings};
use charp::lab::{run_suite, SuiteSize};
use charp::{parse_poly, parse_ring, AlgebraError, Ideal, Polynomial, QPower, Ring};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use report::Report;

/// Environment variable overriding the largest admissible `q = p^e`.
const Q_CAP_ENV: &str = "CHARP_Q_CAP";

#[derive(Parser)]
#[command(name = "charp", version, about = "Frobenius roots, test ideals, F-thresholds and HSL numbers over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Ring description, e.g. "p=7;vars=x,y" or "p=5;vars=x,y,z;order=lex".
    #[arg(long)]
    ring: String,
    /// Emit the JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IdealArgs {
    /// Comma-separated generators; repeat to add more generators.
    #[arg(long = "ideal", required = true)]
    ideal: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis.
    Gb {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Ideal membership with the normal form as witness.
    Member {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        poly: String,
    },
    /// Intersection of the ideals given by each --ideal.
    Intersect {
        #[command(flatten)]
        common: Common,
        #[arg(long = "ideal", required = true, num_args = 1)]
        ideals: Vec<String>,
    },
    /// Bracket power I^[q].
    Bracket {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ideal: IdealArgs,
        /// q as an integer or as p^e.
        #[arg(long)]
        q: String,
    },
    /// Frobenius root I^[1/q].
    Root {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        q: String,
    },
    /// ν_g(p^e) for e = 1..emax.
    Nu {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 3)]
        emax: u32,
    },
    /// Test ideal τ(I^t).
    Tau {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ideal: IdealArgs,
        /// Exact fraction a/b.
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 5)]
        emax: u32,
    },
    /// F-pure threshold.
    Fpt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 6)]
        emax: u32,
    },
    /// F-jumping numbers in (lo, hi].
    Jumps {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "0")]
        lo: String,
        /// Upper end of the interval.
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long, default_value_t = 5)]
        emax: u32,
        #[arg(long = "denom-bound", default_value_t = 6)]
        denom_bound: u64,
    },
    /// HSL number of S/(f), or the chain of a custom Frobenius action.
    Hsl {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 6)]
        smax: u32,
        /// Custom multiplier u (default f^(p-1)).
        #[arg(long)]
        multiplier: Option<String>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        beta: Option<u32>,
    },
    /// Content ideal over the base variables; with --with, product checks.
    Content {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
        /// Comma-separated base variables (may be empty).
        #[arg(long, default_value = "")]
        base: String,
        /// Second polynomial for the weak content and Gaussian checks.
        #[arg(long)]
        with: Option<String>,
    },
    /// Identity suite over a seeded random corpus.
    Check {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run at acceptance scale.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(AlgebraError),
    /// The computation finished without a definite answer; the report is
    /// still printed.
    #[error("{0}")]
    Inconclusive(String),
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Syntax { .. }
            | AlgebraError::UnknownVariable(_)
            | AlgebraError::BadRing(_)
            | AlgebraError::NotPrime(_)
            | AlgebraError::PrimeTooLarge(_) => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn q_cap() -> CliResult<u64> {
    match std::env::var(Q_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{Q_CAP_ENV}={v} is not an integer"))),
        Err(_) => Ok(DEFAULT_Q_CAP),
    }
}

fn parse_q(text: &str, ring: &Ring, cap: u64) -> CliResult<QPower> {
    let q = match text.split_once('^') {
        Some((b, e)) => {
            let b: u64 = b.trim().parse().map_err(|_| CliError::Usage(format!("bad --q `{text}`")))?;
            let e: u32 = e.trim().parse().map_err(|_| CliError::Usage(format!("bad --q `{text}`")))?;
            b.checked_pow(e).ok_or(CliError::Domain(AlgebraError::QCapExceeded { q: u64::MAX, cap }))?
        }
        None => text.trim().parse().map_err(|_| CliError::Usage(format!("bad --q `{text}`")))?,
    };
    Ok(QPower::with_cap(ring.p(), q, cap)?)
}

fn parse_gens(ring: &Ring, sources: &[String]) -> CliResult<Vec<Polynomial>> {
    let mut gens = Vec::new();
    for src in sources {
        for piece in src.split(',') {
            if !piece.trim().is_empty() {
                gens.push(parse_poly(piece, ring)?);
            }
        }
    }
    Ok(gens)
}

fn parse_ideal(ring: &Ring, sources: &[String]) -> CliResult<Ideal> {
    Ok(Ideal::new(ring, parse_gens(ring, sources)?)?)
}

fn rational_arg(text: &str) -> CliResult<charp::invariants::Rational> {
    parse_rational(text).map_err(|e| CliError::Usage(e.to_string()))
}

fn gens_json(gens: &[String]) -> Value {
    Value::Array(gens.iter().map(|g| Value::String(g.clone())).collect())
}

fn setup(common: &Common, command: &str) -> CliResult<(Ring, Report)> {
    let ring = parse_ring(&common.ring)?;
    Ok((ring.clone(), Report::new(command, ring.to_string())))
}

fn run(cmd: Command) -> (CliResult<()>, Option<Report>, bool) {
    let mut json_out = false;
    let mut report = None;
    let start = Instant::now();
    let res = dispatch(cmd, &mut report, &mut json_out);
    if let Some(r) = report.as_mut() {
        r.timing_ms = (start.elapsed().as_secs_f64() * 1e3 * 1e3).round() / 1e3;
    }
    (res, report, json_out)
}

fn dispatch(cmd: Command, out: &mut Option<Report>, json_out: &mut bool) -> CliResult<()> {
    let cap = q_cap()?;
    match cmd {
        Command::Gb { common, ideal } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "gb")?;
            r.input("ideal", gens_json(&ideal.ideal));
            let i = parse_ideal(&ring, &ideal.ideal)?;
            r.result = json!({ "basis": report::ideal(&i)? });
            r.line(report::ideal_text(&i)?);
            *out = Some(r);
        }
        Command::Member { common, ideal, poly } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "member")?;
            r.input("ideal", gens_json(&ideal.ideal));
            r.input("poly", poly.clone());
            let i = parse_ideal(&ring, &ideal.ideal)?;
            let f = parse_poly(&poly, &ring)?;
            let nf = i.normal_form(&f)?;
            r.result = json!({ "member": nf.is_zero() });
            r.witness("normal_form", report::poly(&nf));
            r.witness("basis", report::ideal(&i)?);
            r.line(format!("{}", nf.is_zero()));
            r.line(format!("normal form: {nf}"));
            *out = Some(r);
        }
        Command::Intersect { common, ideals } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "intersect")?;
            if ideals.len() < 2 {
                return Err(CliError::Usage("intersect needs at least two --ideal values".into()));
            }
            r.input("ideals", gens_json(&ideals));
            let family = ideals.iter().map(|s| parse_ideal(&ring, std::slice::from_ref(s))).collect::<CliResult<Vec<_>>>()?;
            let meet = Ideal::intersect_all(&family)?;
            r.result = json!({ "basis": report::ideal(&meet)? });
            r.line(report::ideal_text(&meet)?);
            *out = Some(r);
        }
        Command::Bracket { common, ideal, q } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "bracket")?;
            r.input("ideal", gens_json(&ideal.ideal));
            r.input("q", q.clone());
            let i = parse_ideal(&ring, &ideal.ideal)?;
            let qp = parse_q(&q, &ring, cap)?;
            let b = bracket_power(&i, qp)?;
            r.result = json!({ "q": qp.q(), "basis": report::ideal(&b)? });
            r.line(report::ideal_text(&b)?);
            *out = Some(r);
        }
        Command::Root { common, ideal, q } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "root")?;
            r.input("ideal", gens_json(&ideal.ideal));
            r.input("q", q.clone());
            let i = parse_ideal(&ring, &ideal.ideal)?;
            let qp = parse_q(&q, &ring, cap)?;
            let root = frobenius_root(&i, qp)?;
            let contained = bracket_power(&root, qp)?.contains_ideal(&i)?;
            r.result = json!({ "q": qp.q(), "basis": report::ideal(&root)? });
            r.witness("ideal_in_bracket_of_root", contained);
            r.line(report::ideal_text(&root)?);
            *out = Some(r);
        }
        Command::Nu { common, poly, emax } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "nu")?;
            r.input("poly", poly.clone());
            r.input("emax", emax);
            let g = parse_poly(&poly, &ring)?;
            for e in 1..=emax {
                QPower::from_exponent(ring.p(), e, cap)?;
            }
            let nus = nu_sequence(&g, emax)?;
            r.result = json!({ "nu": nus.last(), "levels": nus });
            for (e, v) in nus.iter().enumerate() {
                r.line(format!("nu({}^{}) = {v}", ring.p(), e + 1));
            }
            *out = Some(r);
        }
        Command::Tau { common, ideal, t, emax } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "tau")?;
            r.input("ideal", gens_json(&ideal.ideal));
            r.input("t", t.clone());
            r.input("emax", emax);
            let i = parse_ideal(&ring, &ideal.ideal)?;
            let t = rational_arg(&t)?;
            let settings = Settings { q_cap: cap, ..Settings::new(ring.p(), emax) };
            let o = bms_test_ideal(&i, &t, &settings)?;
            r.result = json!({ "stable": o.value().is_some(), "basis": o.value().map(report::ideal).transpose()? });
            r.witness("chain", report::chain(o.chain())?);
            let stable = o.value().map(report::ideal_text).transpose()?;
            *out = Some(r);
            match stable {
                Some(text) => out.as_mut().unwrap().line(text),
                None => return Err(CliError::Inconclusive(format!("chain did not stabilize within emax = {emax}"))),
            }
        }
        Command::Fpt { common, poly, emax } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "fpt")?;
            r.input("poly", poly.clone());
            r.input("emax", emax);
            let g = parse_poly(&poly, &ring)?;
            let settings = Settings { q_cap: cap, ..Settings::new(ring.p(), emax) };
            let res = fpt(&g, &settings)?;
            r.result = json!({
                "lower": report::rational(&res.lower),
                "upper": report::rational(&res.upper),
                "certified": res.certified.as_ref().map(|c| report::rational(&c.value)),
                "e_used": res.e_used,
            });
            r.witness("nu", json!(res.nu));
            r.witness("candidates", Value::Array(res.candidates.iter().map(report::rational).collect()));
            if let Some(c) = &res.certified {
                r.witness("certificate", report::jump_check(&c.witness)?);
                r.line(format!("certified {}", c.value));
            } else {
                r.line("not certified");
            }
            r.line(format!("{} < fpt <= {}", res.lower, res.upper));
            *out = Some(r);
        }
        Command::Jumps { common, poly, lo, t, emax, denom_bound } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "jumps")?;
            r.input("poly", poly.clone());
            r.input("lo", lo.clone());
            r.input("t", t.clone());
            r.input("emax", emax);
            r.input("denom_bound", denom_bound);
            let g = parse_poly(&poly, &ring)?;
            let lo = rational_arg(&lo)?;
            let hi = rational_arg(&t)?;
            let settings = Settings { q_cap: cap, ..Settings::new(ring.p(), emax) };
            let res = jumping_numbers(&g, &lo, &hi, denom_bound, &settings)?;
            r.result = json!({
                "jumps": res.jumps.iter().map(report::rational).collect::<Vec<_>>(),
                "complete": res.complete,
            });
            let mut witnesses = Vec::new();
            for c in res.checks.iter().filter(|c| c.jumping == Some(true)) {
                witnesses.push(report::jump_check(c)?);
            }
            r.witness("jumps", Value::Array(witnesses));
            r.witness("candidates", res.candidates.len());
            let list: Vec<String> = res.jumps.iter().map(|j| j.to_string()).collect();
            r.line(format!("{{{}}}", list.join(", ")));
            r.line(format!("complete: {}", res.complete));
            *out = Some(r);
        }
        Command::Hsl { common, poly, smax, multiplier, a, beta } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "hsl")?;
            r.input("poly", poly.clone());
            r.input("smax", smax);
            let f = parse_poly(&poly, &ring)?;
            let preset = FrobeniusActionSpec::hypersurface(&f)?;
            let u = match &multiplier {
                Some(m) => {
                    r.input("multiplier", m.clone());
                    parse_poly(m, &ring)?
                }
                None => preset.u.clone(),
            };
            if let Some(a) = a {
                r.input("a", a);
            }
            if let Some(b) = beta {
                r.input("beta", b);
            }
            let spec = FrobeniusActionSpec::new(u, a.unwrap_or(preset.a_exp), beta.unwrap_or(preset.beta))?;
            let outcome = hsl_of_action(&spec, smax, cap)?;
            r.result = json!({ "hsl": outcome.number() });
            r.witness("chain", report::chain(outcome.chain())?);
            r.witness("multiplier", report::poly(&spec.u));
            r.witness("a", spec.a_exp);
            r.witness("beta", spec.beta);
            *out = Some(r);
            match outcome {
                HslOutcome::Stable { number, .. } => out.as_mut().unwrap().line(number.to_string()),
                HslOutcome::Unstabilized { .. } => {
                    return Err(CliError::Inconclusive(format!("chain did not stabilize within smax = {smax}")))
                }
            }
        }
        Command::Content { common, poly, base, with } => {
            *json_out = common.json;
            let (ring, mut r) = setup(&common, "content")?;
            r.input("poly", poly.clone());
            r.input("base", base.clone());
            let names: Vec<&str> = base.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let split = SplitContext::new(&ring, &names)?;
            let f = parse_poly(&poly, &ring)?;
            let c = poly_content(&f, &split)?;
            let mut result = json!({ "content": report::ideal(&c)? });
            r.line(format!("c(f) = {}", report::ideal_text(&c)?));
            if let Some(g_src) = &with {
                r.input("with", g_src.clone());
                let g = parse_poly(g_src, &ring)?;
                let weak = weak_content_check(&f, &g, &split)?;
                let gauss = gaussian_check(&f, &g, &split)?;
                result["weak_content"] = json!(weak.holds);
                result["gaussian"] = json!(gauss.holds);
                r.witness("content_of_product", report::ideal(&gauss.lhs)?);
                r.witness("product_of_contents", report::ideal(&gauss.rhs)?);
                if let Some(w) = &gauss.witness {
                    r.witness("gaussian_witness", report::poly(w));
                }
                r.line(format!("c(fg) = {}", report::ideal_text(&gauss.lhs)?));
                r.line(format!("c(f)c(g) = {}", report::ideal_text(&gauss.rhs)?));
                r.line(format!("weak content: {}", weak.holds));
                r.line(format!("gaussian: {}", gauss.holds));
            }
            r.result = result;
            *out = Some(r);
        }
        Command::Check { seed, full, json } => {
            *json_out = json;
            let mut r = Report::new("check", String::new());
            r.input("seed", seed);
            r.input("full", full);
            let size = if full { SuiteSize::FULL } else { SuiteSize::QUICK };
            let lines = run_suite(seed, size)?;
            let all = lines.iter().all(|l| l.passed());
            let entries: Vec<Value> = lines
                .iter()
                .map(|l| {
                    json!({
                        "name": l.name,
                        "instances": l.instances,
                        "failures": l.failures,
                        "passed": l.passed(),
                        "first_failure": l.first_failure,
                    })
                })
                .collect();
            for l in &lines {
                let status = if l.passed() { "PASS" } else { "FAIL" };
                r.line(format!("{status} {} ({} instances, {} failures)", l.name, l.instances, l.failures));
            }
            r.result = json!({ "passed": all, "checks": entries });
            *out = Some(r);
            if !all {
                return Err(CliError::Inconclusive("identity suite reported failures".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (res, report, json_out) = run(cli.command);
    if let Some(r) = &report {
        if json_out {
            println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("report serializes"));
        } else {
            for l in &r.text {
                println!("{l}");
            }
        }
    }
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(e @ (CliError::Domain(_) | CliError::Inconclusive(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_forms() {
        let ring = parse_ring("p=3;vars=x,y").unwrap();
        assert_eq!(parse_q("9", &ring, DEFAULT_Q_CAP).unwrap().q(), 9);
        assert_eq!(parse_q("3^2", &ring, DEFAULT_Q_CAP).unwrap().e(), 2);
        assert!(matches!(parse_q("6", &ring, DEFAULT_Q_CAP), Err(CliError::Domain(AlgebraError::NotPPower { .. }))));
        assert!(matches!(parse_q("3^5", &ring, 100), Err(CliError::Domain(AlgebraError::QCapExceeded { .. }))));
        assert!(matches!(parse_q("three", &ring, DEFAULT_Q_CAP), Err(CliError::Usage(_))));
    }

    #[test]
    fn generators_split_on_commas() {
        let ring = parse_ring("p=5;vars=x,y").unwrap();
        let gens = parse_gens(&ring, &["x, y^2".into(), "x*y".into()]).unwrap();
        assert_eq!(gens.len(), 3);
    }

    #[test]
    fn error_classes() {
        assert!(matches!(CliError::from(AlgebraError::UnknownVariable("z".into())), CliError::Usage(_)));
        assert!(matches!(CliError::from(AlgebraError::ExponentOverflow), CliError::Domain(_)));
    }
}
