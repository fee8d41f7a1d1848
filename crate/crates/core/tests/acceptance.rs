//! Acceptance criteria 1-6. Each criterion prints one PASS/FAIL line; the
//! process exits non-zero if any criterion fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use charp::frobenius::{bracket_power, frobenius_root, psi};
use charp::hsl::{hsl_number, FrobeniusActionSpec};
use charp::invariants::{bms_test_ideal, fpt, jumping_numbers, parse_rational, Rational, Settings};
use charp::lab::{self, CheckLine};
use charp::{parse_poly, Ideal, Polynomial, QPower, RingContext};

const SEED: u64 = 0x5eed_2026;

type Outcome = Result<(), String>;

fn lines_ok(lines: &[CheckLine]) -> Outcome {
    for l in lines {
        if !l.passed() {
            return Err(format!("{}: {}/{} failed, first: {:?}", l.name, l.failures, l.instances, l.first_failure));
        }
    }
    Ok(())
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {took:?}, limit {limit:?}"));
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let line = lab::check_root_oracle(SEED, 200, 20).map_err(|e| e.to_string())?;
    lines_ok(&[line])?;
    within(start, Duration::from_secs(120))
}

fn criterion_2() -> Outcome {
    lines_ok(&[lab::check_intersection_flatness(SEED, 100).map_err(|e| e.to_string())?])
}

fn criterion_3() -> Outcome {
    lines_ok(&[
        lab::check_content(SEED, 100).map_err(|e| e.to_string())?,
        lab::check_gaussian_examples().map_err(|e| e.to_string())?,
    ])
}

/// Dense bivariate arithmetic over F_p, independent of the library.
mod oracle {
    use std::collections::HashMap;

    pub type Dense = HashMap<(u32, u32), u64>;

    pub fn mul_trunc(a: &Dense, b: &Dense, p: u64, bound: u32) -> Dense {
        let mut out: Dense = HashMap::new();
        for (&(i, j), &c) in a {
            for (&(k, l), &d) in b {
                if i + k < bound && j + l < bound {
                    let e = out.entry((i + k, j + l)).or_insert(0);
                    *e = (*e + c * d) % p;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Largest r with g^r outside (x^q, y^q), by repeated multiplication.
    pub fn nu(g: &Dense, p: u64, q: u32) -> u64 {
        let mut power: Dense = HashMap::from([((0, 0), 1)]);
        let mut r = 0;
        loop {
            let next = mul_trunc(&power, g, p, q);
            if next.is_empty() {
                return r;
            }
            power = next;
            r += 1;
        }
    }
}

fn dense(terms: &[((u32, u32), u64)]) -> oracle::Dense {
    terms.iter().cloned().collect::<HashMap<_, _>>()
}

fn rat(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

/// `ν(p^e) = ⌈c p^e⌉ - 1` for `e = 1..=levels`, computed by the oracle.
fn nu_matches_threshold(g: &oracle::Dense, p: u64, c: &Rational, levels: u32) -> Outcome {
    for e in 1..=levels {
        let q = p.pow(e);
        let expected = (c * Rational::from_integer(q.into())).ceil().to_integer() - 1;
        let got = oracle::nu(g, p, q as u32);
        if expected != got.into() {
            return Err(format!("oracle nu({q}) = {got}, threshold {c} predicts {expected}"));
        }
    }
    Ok(())
}

fn certified_fpt(p: u64, src: &str, e_max: u32) -> Result<Rational, String> {
    let r = RingContext::grevlex(p, &["x", "y"]).map_err(|e| e.to_string())?;
    let g = parse_poly(src, &r).map_err(|e| e.to_string())?;
    let res = fpt(&g, &Settings::new(p, e_max)).map_err(|e| e.to_string())?;
    let cert = res.certified.ok_or_else(|| format!("fpt({src}) at p={p} not certified; bracket ({}, {}]", res.lower, res.upper))?;
    if !(res.lower < cert.value && cert.value <= res.upper) {
        return Err(format!("certified {} outside its bracket", cert.value));
    }
    Ok(cert.value)
}

fn expect_fpt(p: u64, src: &str, oracle_g: &oracle::Dense, value: &str, e_max: u32) -> Outcome {
    let want = rat(value);
    nu_matches_threshold(oracle_g, p, &want, 3)?;
    let got = certified_fpt(p, src, e_max)?;
    if got != want {
        return Err(format!("fpt({src}) at p={p} = {got}, expected {want}"));
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let cusp = dense(&[((2, 0), 1), ((0, 3), 1)]);
    expect_fpt(7, "x^2+y^3", &cusp, "5/6", 5)?;
    expect_fpt(5, "x^2+y^3", &cusp, "4/5", 5)?;
    let x = dense(&[((1, 0), 1)]);
    for p in [2, 3, 5, 7] {
        expect_fpt(p, "x", &x, "1", 8)?;
    }
    expect_fpt(3, "x^2", &dense(&[((2, 0), 1)]), "1/2", 6)?;

    // Jumping numbers of x^2 at p=3: the monomial floor ⌊2⌈t q⌉/q⌋ changes
    // exactly at 1/2 and 1 on the grid of denominators up to 6.
    let r = RingContext::grevlex(3, &["x", "y"]).map_err(|e| e.to_string())?;
    let g = parse_poly("x^2", &r).map_err(|e| e.to_string())?;
    let out = jumping_numbers(&g, &rat("0"), &rat("1"), 6, &Settings::new(3, 5)).map_err(|e| e.to_string())?;
    let q = 3u64.pow(6);
    // Exponent of x in (x^(2n))^[1/q] for n = ⌈t q⌉ (at t) and n - 1 (left of t).
    let floors = |t: &Rational| -> (u64, u64) {
        let n: u64 = (t * Rational::from_integer(q.into())).ceil().to_integer().try_into().unwrap();
        (2 * (n - 1) / q, 2 * n / q)
    };
    let mut oracle_jumps = Vec::new();
    for t in &out.candidates {
        let (left, at) = floors(t);
        if left != at {
            oracle_jumps.push(t.clone());
        }
    }
    let want = vec![rat("1/2"), rat("1")];
    if out.jumps != want || oracle_jumps != want || !out.complete {
        return Err(format!("jumps {:?} (complete {}), oracle {:?}", out.jumps, out.complete, oracle_jumps));
    }

    // τ((x,y)^2) at p=2: the root of the monomial ideal (x,y)^(2q) at q is
    // generated by x^⌊a/q⌋ y^⌊b/q⌋ over a + b = 2q.
    let r = RingContext::grevlex(2, &["x", "y"]).map_err(|e| e.to_string())?;
    let m = Ideal::maximal(&r);
    let a = m.power(2).map_err(|e| e.to_string())?;
    let tau = bms_test_ideal(&a, &rat("1"), &Settings::new(2, 5)).map_err(|e| e.to_string())?;
    let tau = tau.value().ok_or("tau((x,y)^2) unstabilized")?;
    let qq = 8u32;
    let gens: Vec<Polynomial> =
        (0..=2 * qq).map(|i| Polynomial::monomial(&r, &[i / qq, (2 * qq - i) / qq])).collect();
    let oracle_root = Ideal::new(&r, gens).map_err(|e| e.to_string())?;
    if !tau.equals(&m).map_err(|e| e.to_string())? || !oracle_root.equals(&m).map_err(|e| e.to_string())? {
        return Err(format!("tau((x,y)^2) = {tau}, oracle {oracle_root}"));
    }
    Ok(())
}

fn hsl_fixture(p: u64, src: &str, want: usize) -> Outcome {
    let r = RingContext::grevlex(p, &["x", "y"]).map_err(|e| e.to_string())?;
    let f = parse_poly(src, &r).map_err(|e| e.to_string())?;
    let out = hsl_number(&f, 6, charp::decompose::DEFAULT_Q_CAP).map_err(|e| e.to_string())?;
    let chain = out.chain();
    if out.number() != Some(want) {
        return Err(format!("hsl({src}) at p={p} = {:?}, expected {want}", out.number()));
    }
    if !chain.verify().map_err(|e| e.to_string())? || chain.overshoot < 1 {
        return Err(format!("chain for {src} at p={p} failed verification"));
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    for p in [2, 3, 5, 7] {
        hsl_fixture(p, "x", 0)?;
    }
    hsl_fixture(2, "x^2", 1)?;
    hsl_fixture(2, "x^2+y^3", 1)?;
    within(start, Duration::from_secs(30))
}

fn criterion_6() -> Outcome {
    lines_ok(&[
        lab::check_psi_recurrence(20, &[2, 3, 5, 7, 9]).map_err(|e| e.to_string())?,
        lab::check_hsl_exponents(4).map_err(|e| e.to_string())?,
    ])?;
    // Closed form against the defining sum.
    for t in [2u64, 3, 5, 7, 9] {
        let mut sum = num_bigint::BigInt::from(0);
        for s in 0..=20u32 {
            if psi(s, t).map_err(|e| e.to_string())? != sum {
                return Err(format!("psi_{s}({t})"));
            }
            sum += num_bigint::BigInt::from(t).pow(s);
        }
    }
    let r = RingContext::grevlex(3, &["x", "y"]).map_err(|e| e.to_string())?;
    let spec = FrobeniusActionSpec::hypersurface(&parse_poly("x^2+y^3", &r).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    for s in 0..=3 {
        let direct = spec.exponent(s).map_err(|e| e.to_string())?;
        if direct != (3u64.pow(s) - 1) / 2 {
            return Err(format!("hypersurface exponent at s={s}: {direct}"));
        }
    }
    // A root of a bracket power is the ideal itself.
    let q = QPower::new(3, 9).map_err(|e| e.to_string())?;
    let i = Ideal::new(&r, vec![parse_poly("x^2+y^3", &r).unwrap(), parse_poly("x*y", &r).unwrap()]).unwrap();
    let back = frobenius_root(&bracket_power(&i, q).unwrap(), q).unwrap();
    if !back.equals(&i).unwrap() {
        return Err("root of bracket power".into());
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("1 frobenius root oracle suite", criterion_1),
        ("2 intersection flatness identity", criterion_2),
        ("3 content additivity, weak content, gaussian examples", criterion_3),
        ("4 derived invariant values", criterion_4),
        ("5 HSL fixtures", criterion_5),
        ("6 psi and chain algebra", criterion_6),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(()) => println!("criterion {name}: PASS ({:.2?})", start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL: {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
