//! Test ideals `τ(a^t)`, ν-invariants, F-pure thresholds and F-jumping
//! numbers of a principal ideal.
//!
//! For a rational `t`, `τ(a^t)` is the stable value of the ascending chain
//! `(a^⌈t p^e⌉)^[1/p^e]`. For a principal ideal `(g)` the ideal
//! `(g^n)^[1/p^e]` is exactly `τ(g^(n/p^e))`, so the left limit
//! `τ(g^(t-ε))` is the stable value of the descending chain
//! `(g^(⌈t p^e⌉ - 1))^[1/p^e]`: the exponents `(⌈t p^e⌉ - 1)/p^e` are the
//! largest p-adic fractions below `t` and increase with `e`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::chain::{ChainReport, Direction};
use crate::decompose::{QPower, DEFAULT_Q_CAP};
use crate::error::{AlgebraError, Result};
use crate::frobenius::{frobenius_root, frobenius_root_of_power};
use crate::ideal::Ideal;
use crate::poly::Polynomial;

pub type Rational = BigRational;

/// Parses `a/b` or an integer; decimals are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || AlgebraError::InvalidArgument(format!("`{text}` is not an exact fraction a/b"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Knobs shared by the invariant computations.
#[derive(Debug, Clone)]
pub struct Settings {
    /// Largest Frobenius level consulted.
    pub e_max: u32,
    pub q_cap: u64,
    /// Denominators tried when certifying an F-pure threshold.
    pub fpt_denominators: Vec<u64>,
}

impl Settings {
    pub fn new(p: u64, e_max: u32) -> Self {
        Settings { e_max, q_cap: DEFAULT_Q_CAP, fpt_denominators: default_denominators(p) }
    }
}

/// `{1..24} ∪ {p^i (p^j - 1) : i + j <= 2, j >= 1}`.
pub fn default_denominators(p: u64) -> Vec<u64> {
    let mut ds: BTreeSet<u64> = (1..=24).collect();
    for i in 0..=1u32 {
        for j in 1..=2 - i {
            ds.insert(p.pow(i) * (p.pow(j) - 1));
        }
    }
    ds.into_iter().collect()
}

fn ceil_times(t: &Rational, q: u64) -> Result<u64> {
    let v = (t * Rational::from_integer(BigInt::from(q))).ceil().to_integer();
    v.to_u64().ok_or(AlgebraError::ExponentOverflow)
}

fn require_in_maximal(g: &Polynomial) -> Result<()> {
    if g.is_zero() {
        return Err(AlgebraError::InvalidArgument("g is zero".into()));
    }
    if g.terms().iter().any(|(m, _)| m.is_one()) {
        return Err(AlgebraError::InvalidArgument(format!("{g} is not in the maximal ideal")));
    }
    Ok(())
}

fn g_power_outside(g: &Polynomial, r: u64, q: u64) -> Result<bool> {
    let bound = u32::try_from(q).map_err(|_| AlgebraError::ExponentOverflow)?;
    Ok(!g.pow_truncated(r, bound)?.is_zero())
}

/// `ν_g(p^e) = max { r : g^r ∉ (x_1^(p^e), .., x_n^(p^e)) }`, by binary
/// search on powers truncated modulo the bracket power of the maximal
/// ideal.
pub fn nu(g: &Polynomial, e: u32) -> Result<u64> {
    let levels = nu_sequence(g, e)?;
    Ok(*levels.last().unwrap())
}

/// `[ν_g(p), .., ν_g(p^e)]`.
pub fn nu_sequence(g: &Polynomial, e: u32) -> Result<Vec<u64>> {
    require_in_maximal(g)?;
    if e == 0 {
        return Err(AlgebraError::InvalidArgument("nu needs e >= 1".into()));
    }
    let mut out: Vec<u64> = Vec::with_capacity(e as usize);
    for level in 1..=e {
        out.push(nu_step(g, level, out.last().copied())?);
    }
    Ok(out)
}

/// `ν_g(p^level)`, searched inside `[p ν_prev, p (ν_prev + 1) - 1]` when
/// the previous level is known.
fn nu_step(g: &Polynomial, level: u32, prev: Option<u64>) -> Result<u64> {
    let p = g.ring().p();
    let n = g.ring().arity() as u64;
    let q = p.checked_pow(level).ok_or(AlgebraError::ExponentOverflow)?;
    // g^(n(q-1)+1) lies in m^(n(q-1)+1) ⊆ m^[q].
    let (mut lo, mut hi) = match prev {
        None => (0, n * (q - 1)),
        Some(v) => (p * v, p * (v + 1) - 1),
    };
    // Invariant: g^lo ∉ m^[q], answer in [lo, hi].
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if g_power_outside(g, mid, q)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// Result of following a chain up to a level bound.
#[derive(Debug, Clone)]
pub enum ChainOutcome {
    Stable { value: Ideal, chain: ChainReport },
    Unstabilized { chain: ChainReport },
}

impl ChainOutcome {
    pub fn value(&self) -> Option<&Ideal> {
        match self {
            ChainOutcome::Stable { value, .. } => Some(value),
            ChainOutcome::Unstabilized { .. } => None,
        }
    }

    pub fn chain(&self) -> &ChainReport {
        match self {
            ChainOutcome::Stable { chain, .. } | ChainOutcome::Unstabilized { chain } => chain,
        }
    }
}

fn run_chain(
    direction: Direction,
    e_max: u32,
    mut step: impl FnMut(u32) -> Result<Ideal>,
) -> Result<ChainOutcome> {
    let mut chain = ChainReport::new(direction, 1);
    for e in 1..=e_max {
        if chain.push(step(e)?)? {
            let value = chain.stable_value().unwrap().canonical()?;
            return Ok(ChainOutcome::Stable { value, chain });
        }
    }
    Ok(ChainOutcome::Unstabilized { chain })
}

fn check_e_max(e_max: u32) -> Result<()> {
    if e_max < 2 {
        return Err(AlgebraError::InvalidArgument(format!("e_max must be at least 2, got {e_max}")));
    }
    Ok(())
}

/// `τ(a^t)` as the stable value of `(a^⌈t p^e⌉)^[1/p^e]`, e = 1, 2, ...
pub fn bms_test_ideal(a: &Ideal, t: &Rational, settings: &Settings) -> Result<ChainOutcome> {
    if t.is_negative() {
        return Err(AlgebraError::InvalidArgument("t must be nonnegative".into()));
    }
    check_e_max(settings.e_max)?;
    let ring = a.ring().clone();
    let principal = (a.gens().len() == 1).then(|| a.gens()[0].clone());
    run_chain(Direction::Ascending, settings.e_max, |e| {
        let q = QPower::from_exponent(ring.p(), e, settings.q_cap)?;
        let n = ceil_times(t, q.q())?;
        match &principal {
            Some(g) => frobenius_root_of_power(g, n, q),
            None => frobenius_root(&a.power(n)?, q),
        }
    })
}

/// `τ(g^(t-ε))` for small ε.
pub fn left_test_ideal(g: &Polynomial, t: &Rational, settings: &Settings) -> Result<ChainOutcome> {
    if !t.is_positive() {
        return Err(AlgebraError::InvalidArgument("left limits need t > 0".into()));
    }
    check_e_max(settings.e_max)?;
    let p = g.ring().p();
    run_chain(Direction::Descending, settings.e_max, |e| {
        let q = QPower::from_exponent(p, e, settings.q_cap)?;
        let n = ceil_times(t, q.q())?;
        frobenius_root_of_power(g, n - 1, q)
    })
}

/// Both one-sided values of `τ(g^s)` around `s = t`.
#[derive(Debug, Clone)]
pub struct JumpCheck {
    pub t: Rational,
    pub left: ChainOutcome,
    pub at: ChainOutcome,
    /// `None` when one of the chains did not stabilize.
    pub jumping: Option<bool>,
}

/// Whether `τ(g^(t-ε)) ≠ τ(g^t)`.
pub fn is_jumping(g: &Polynomial, t: &Rational, settings: &Settings) -> Result<JumpCheck> {
    require_in_maximal(g)?;
    let left = left_test_ideal(g, t, settings)?;
    let at = bms_test_ideal(&Ideal::principal(g), t, settings)?;
    let jumping = match (left.value(), at.value()) {
        (Some(l), Some(a)) => Some(!l.equals(a)?),
        _ => None,
    };
    Ok(JumpCheck { t: t.clone(), left, at, jumping })
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub value: Rational,
    /// `τ(g^(c-ε)) = (1)` and `τ(g^c) ≠ (1)`.
    pub witness: JumpCheck,
}

#[derive(Debug, Clone)]
pub struct ThresholdResult {
    pub lower: Rational,
    pub upper: Rational,
    pub certified: Option<Certificate>,
    pub e_used: u32,
    pub nu: Vec<u64>,
    pub candidates: Vec<Rational>,
}

/// Candidates `k/d` in `(lower, upper]` with `d` from `denominators`.
fn candidates_in(lower: &Rational, upper: &Rational, denominators: &[u64]) -> Vec<Rational> {
    let mut set: BTreeSet<Rational> = BTreeSet::new();
    for &d in denominators {
        let dd = BigInt::from(d);
        // k = floor(lower * d) + 1 .. floor(upper * d)
        let lo = (lower * Rational::from_integer(dd.clone())).floor().to_integer() + BigInt::one();
        let hi = (upper * Rational::from_integer(dd.clone())).floor().to_integer();
        let mut k = lo;
        while k <= hi {
            set.insert(Rational::new(k.clone(), dd.clone()));
            k += BigInt::one();
        }
    }
    set.into_iter().collect()
}

/// F-pure threshold of `g`.
///
/// Levels `e = 1, 2, ..` give the brackets `ν/p^e < fpt <= (ν+1)/p^e`.
/// The search stops at the first level whose bracket holds exactly one
/// fraction with an allowed denominator (or at `e_max`); that fraction is
/// certified when it is a jumping number with `τ(g^(c-ε)) = (1)`.
pub fn fpt(g: &Polynomial, settings: &Settings) -> Result<ThresholdResult> {
    require_in_maximal(g)?;
    if settings.e_max == 0 {
        return Err(AlgebraError::InvalidArgument("e_max must be positive".into()));
    }
    let p = g.ring().p();
    let mut nus = Vec::new();
    let (mut lower, mut upper, mut candidates);
    loop {
        let e = nus.len() as u32 + 1;
        QPower::from_exponent(p, e, settings.q_cap)?;
        nus.push(nu_step(g, e, nus.last().copied())?);
        let q = BigInt::from(p.pow(e));
        let v = BigInt::from(*nus.last().unwrap());
        lower = Rational::new(v.clone(), q.clone());
        upper = Rational::new(v + BigInt::one(), q);
        candidates = candidates_in(&lower, &upper, &settings.fpt_denominators);
        if candidates.len() <= 1 || e == settings.e_max {
            break;
        }
    }
    let e_used = nus.len() as u32;
    let certified = match candidates.as_slice() {
        [c] => {
            let chain_settings = Settings { e_max: settings.e_max.max(3), ..settings.clone() };
            let check = is_jumping(g, c, &chain_settings)?;
            let ok = check.jumping == Some(true)
                && check.left.value().unwrap().is_unit()?
                && !check.at.value().unwrap().is_unit()?;
            ok.then(|| Certificate { value: c.clone(), witness: check })
        }
        _ => None,
    };
    Ok(ThresholdResult { lower, upper, certified, e_used, nu: nus, candidates })
}

#[derive(Debug, Clone)]
pub struct JumpingNumbers {
    pub jumps: Vec<Rational>,
    /// True only if every gap between consecutive candidates was shown to
    /// carry a constant test ideal and every chain stabilized.
    pub complete: bool,
    pub candidates: Vec<Rational>,
    pub checks: Vec<JumpCheck>,
}

/// Jumping numbers of `g` in `(lo, hi]` among fractions with denominator
/// at most `denom_bound`.
///
/// Completeness: `τ` is non-increasing and right-continuous, so
/// `τ(g^c) = τ(g^(c'-ε))` for consecutive candidates `c < c'` (starting
/// from `c = lo`) rules out jumps strictly between them.
pub fn jumping_numbers(
    g: &Polynomial,
    lo: &Rational,
    hi: &Rational,
    denom_bound: u64,
    settings: &Settings,
) -> Result<JumpingNumbers> {
    require_in_maximal(g)?;
    if lo.is_negative() || lo >= hi {
        return Err(AlgebraError::InvalidArgument("need 0 <= lo < hi".into()));
    }
    if denom_bound == 0 {
        return Err(AlgebraError::InvalidArgument("denominator bound must be positive".into()));
    }
    let denominators: Vec<u64> = (1..=denom_bound).collect();
    let candidates = candidates_in(lo, hi, &denominators);
    let checks: Vec<JumpCheck> =
        candidates.par_iter().map(|c| is_jumping(g, c, settings)).collect::<Result<_>>()?;
    let base = bms_test_ideal(&Ideal::principal(g), lo, settings)?;

    let mut complete = base.value().is_some();
    let mut prev = base.value().cloned();
    let mut jumps = Vec::new();
    for check in &checks {
        if check.jumping == Some(true) {
            jumps.push(check.t.clone());
        }
        match (&prev, check.left.value()) {
            (Some(a), Some(b)) if a.equals(b)? => {}
            _ => complete = false,
        }
        prev = check.at.value().cloned();
    }
    if checks.iter().any(|c| c.jumping.is_none()) {
        complete = false;
    }
    Ok(JumpingNumbers { jumps, complete, candidates, checks })
}

/// Lowest-terms check used by the report layer.
pub fn is_reduced(r: &Rational) -> bool {
    r.numer().gcd(r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::{Ring, RingContext};

    fn r2(p: u64) -> Ring {
        RingContext::grevlex(p, &["x", "y"]).unwrap()
    }

    fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn ideal(ring: &Ring, src: &[&str]) -> Ideal {
        Ideal::new(ring, src.iter().map(|s| parse_poly(s, ring).unwrap()).collect()).unwrap()
    }

    #[test]
    fn rationals() {
        assert_eq!(rat("5/6"), Rational::new(5.into(), 6.into()));
        assert_eq!(rat("10/12"), rat("5/6"));
        assert_eq!(rat("2"), Rational::from_integer(2.into()));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(is_reduced(&rat("4/6")));
    }

    #[test]
    fn nu_examples() {
        let r = r2(3);
        assert_eq!(nu(&parse_poly("x", &r).unwrap(), 2).unwrap(), 8);
        let r = r2(7);
        assert_eq!(nu(&parse_poly("x^2+y^3", &r).unwrap(), 1).unwrap(), 5);
        let r = r2(2);
        assert_eq!(nu(&parse_poly("x*y", &r).unwrap(), 3).unwrap(), 7);
    }

    #[test]
    fn nu_rejects_units_and_zero() {
        let r = r2(3);
        assert!(nu(&parse_poly("x+1", &r).unwrap(), 1).is_err());
        assert!(nu(&Polynomial::zero(&r), 1).is_err());
        assert!(nu(&parse_poly("x", &r).unwrap(), 0).is_err());
    }

    #[test]
    fn tau_examples() {
        let s = Settings::new(3, 4);
        let r = r2(3);
        let t = bms_test_ideal(&ideal(&r, &["x^2"]), &rat("1/2"), &s).unwrap();
        assert!(t.value().unwrap().equals(&ideal(&r, &["x"])).unwrap());

        let r = r2(7);
        let t = bms_test_ideal(&ideal(&r, &["x"]), &rat("1/3"), &Settings::new(7, 4)).unwrap();
        assert!(t.value().unwrap().is_unit().unwrap());

        let r = r2(2);
        let t = bms_test_ideal(&ideal(&r, &["x", "y"]), &rat("2"), &Settings::new(2, 5)).unwrap();
        assert!(t.value().unwrap().equals(&ideal(&r, &["x", "y"])).unwrap());
        assert!(t.chain().verify().unwrap());
    }

    #[test]
    fn tau_at_zero_is_unit() {
        let r = r2(5);
        let t = bms_test_ideal(&ideal(&r, &["x^2+y^3"]), &rat("0"), &Settings::new(5, 3)).unwrap();
        assert!(t.value().unwrap().is_unit().unwrap());
    }

    #[test]
    fn chain_needs_levels() {
        let r = r2(5);
        assert!(bms_test_ideal(&ideal(&r, &["x"]), &rat("1"), &Settings::new(5, 1)).is_err());
        // Three equal steps cannot fit in two levels.
        let t = bms_test_ideal(&ideal(&r, &["x"]), &rat("1"), &Settings::new(5, 2)).unwrap();
        assert!(matches!(t, ChainOutcome::Unstabilized { .. }));
    }

    #[test]
    fn jumping_examples() {
        let r = r2(3);
        let s = Settings::new(3, 4);
        let x = parse_poly("x", &r).unwrap();
        let c = is_jumping(&x, &rat("1"), &s).unwrap();
        assert_eq!(c.jumping, Some(true));
        assert!(c.left.value().unwrap().is_unit().unwrap());
        assert!(c.at.value().unwrap().equals(&ideal(&r, &["x"])).unwrap());
        assert_eq!(is_jumping(&x, &rat("1/2"), &s).unwrap().jumping, Some(false));
        let x2 = parse_poly("x^2", &r).unwrap();
        let c = is_jumping(&x2, &rat("1/2"), &s).unwrap();
        assert_eq!(c.jumping, Some(true));
        assert!(c.at.value().unwrap().equals(&ideal(&r, &["x"])).unwrap());
    }

    #[test]
    fn fpt_of_monomials() {
        for p in [2u64, 3, 5] {
            let r = r2(p);
            let res = fpt(&parse_poly("x", &r).unwrap(), &Settings::new(p, 6)).unwrap();
            assert_eq!(res.certified.unwrap().value, rat("1"), "p = {p}");
        }
        let r = r2(3);
        let res = fpt(&parse_poly("x^2", &r).unwrap(), &Settings::new(3, 5)).unwrap();
        assert_eq!(res.certified.unwrap().value, rat("1/2"));
    }

    #[test]
    fn fpt_of_cusp() {
        let r = r2(7);
        let g = parse_poly("x^2+y^3", &r).unwrap();
        assert_eq!(nu_sequence(&g, 2).unwrap(), vec![5, 40]);
        let res = fpt(&g, &Settings::new(7, 4)).unwrap();
        assert_eq!(res.certified.unwrap().value, rat("5/6"));
        assert!(res.lower < rat("5/6") && rat("5/6") <= res.upper);

        let r = r2(5);
        let g = parse_poly("x^2+y^3", &r).unwrap();
        assert_eq!(nu_sequence(&g, 3).unwrap(), vec![3, 19, 99]);
        let res = fpt(&g, &Settings::new(5, 4)).unwrap();
        assert_eq!(res.certified.unwrap().value, rat("4/5"));
    }

    #[test]
    fn jumping_number_examples() {
        let r = r2(3);
        let s = Settings::new(3, 5);
        let out = jumping_numbers(&parse_poly("x^2", &r).unwrap(), &rat("0"), &rat("1"), 6, &s).unwrap();
        assert_eq!(out.jumps, vec![rat("1/2"), rat("1")]);
        assert!(out.complete);
        let out = jumping_numbers(&parse_poly("x", &r).unwrap(), &rat("0"), &rat("1/2"), 6, &s).unwrap();
        assert!(out.jumps.is_empty());
        assert!(out.complete);
        let r = r2(2);
        let s = Settings::new(2, 7);
        let out = jumping_numbers(&parse_poly("x*y", &r).unwrap(), &rat("0"), &rat("1"), 6, &s).unwrap();
        assert_eq!(out.jumps, vec![rat("1")]);
        assert!(out.complete);
    }

    #[test]
    fn bad_intervals() {
        let r = r2(3);
        let x = parse_poly("x", &r).unwrap();
        let s = Settings::new(3, 3);
        assert!(jumping_numbers(&x, &rat("1"), &rat("1/2"), 4, &s).is_err());
        assert!(jumping_numbers(&x, &rat("-1"), &rat("1/2"), 4, &s).is_err());
    }
}
