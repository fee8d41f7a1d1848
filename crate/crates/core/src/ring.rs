//! Ring contexts `F_p[x1..xn]`, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};

/// A monomial order on exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Block order: the first `count` variables are compared first (graded
    /// reverse lexicographically within the block), ties are broken by
    /// `rest` on the remaining variables. Terms containing any block
    /// variable dominate all terms free of them.
    Eliminate { count: usize, rest: Box<MonomialOrder> },
}

impl MonomialOrder {
    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Eliminate { count, rest } => {
                let (ha, ta) = a.split_at(*count);
                let (hb, tb) = b.split_at(*count);
                grevlex(ha, hb).then_with(|| rest.cmp_exps(ta, tb))
            }
        }
    }

    fn tag(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Eliminate { count, rest } => format!("elim{}+{}", count, rest.tag()),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Dense exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(n);
        m.0[i] = e;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = self.0.clone();
        for (a, b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).ok_or(AlgebraError::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    /// Multiplies every exponent by `k`.
    pub fn checked_scale(&self, k: u64) -> Result<Monomial> {
        let mut out = self.0.clone();
        for a in out.iter_mut() {
            let v = (*a as u64).checked_mul(k).ok_or(AlgebraError::ExponentOverflow)?;
            *a = u32::try_from(v).map_err(|_| AlgebraError::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = other.0.clone();
        for (o, s) in out.iter_mut().zip(self.0.iter()) {
            *o = o.checked_sub(*s)?;
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// The ambient ring `F_p[vars]` together with a monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    p: u32,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<RingContext>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl RingContext {
    pub fn new(p: u64, vars: &[&str], order: MonomialOrder) -> Result<Ring> {
        Self::from_owned(p, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn from_owned(p: u64, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let p32 = u32::try_from(p).map_err(|_| AlgebraError::PrimeTooLarge(p))?;
        if vars.is_empty() {
            return Err(AlgebraError::BadRing("no variables".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgebraError::BadRing(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(AlgebraError::BadRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Eliminate { count, .. } = &order {
            if *count > vars.len() {
                return Err(AlgebraError::BadRing("elimination block larger than arity".into()));
            }
        }
        Ok(Arc::new(RingContext { p: p32, vars, order }))
    }

    /// Grevlex ring, the common case.
    pub fn grevlex(p: u64, vars: &[&str]) -> Result<Ring> {
        Self::new(p, vars, MonomialOrder::Grevlex)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp_exps(a.exps(), b.exps())
    }

    /// A name not clashing with any existing variable.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut k = 0;
        loop {
            let cand = format!("{stem}{k}");
            if self.var_index(&cand).is_none() {
                return cand;
            }
            k += 1;
        }
    }

    /// This ring with one fresh variable prepended, ordered by an
    /// elimination order that makes the fresh variable dominate.
    pub fn with_eliminated_var(&self, stem: &str) -> Ring {
        let mut vars = vec![self.fresh_name(stem)];
        vars.extend(self.vars.iter().cloned());
        Arc::new(RingContext {
            p: self.p,
            vars,
            order: MonomialOrder::Eliminate { count: 1, rest: Box::new(self.order.clone()) },
        })
    }

    /// Same variables and characteristic, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(RingContext { p: self.p, vars: self.vars.clone(), order })
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={};vars={}", self.p, self.vars.join(","))?;
        if self.order != MonomialOrder::Grevlex {
            write!(f, ";order={}", self.order.tag())?;
        }
        Ok(())
    }
}

/// Parses `p=<prime>;vars=<comma list>[;order=grevlex|lex]`.
pub fn parse_ring(text: &str) -> Result<Ring> {
    let mut p = None;
    let mut vars = None;
    let mut order = MonomialOrder::Grevlex;
    for field in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| AlgebraError::BadRing(format!("expected key=value, got `{field}`")))?;
        match key.trim() {
            "p" => {
                let v = u64::from_str(value.trim())
                    .map_err(|_| AlgebraError::BadRing(format!("bad prime `{value}`")))?;
                p = Some(v);
            }
            "vars" => {
                vars = Some(value.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>());
            }
            "order" => {
                order = match value.trim() {
                    "grevlex" => MonomialOrder::Grevlex,
                    "lex" => MonomialOrder::Lex,
                    other => return Err(AlgebraError::BadRing(format!("unknown order `{other}`"))),
                }
            }
            other => return Err(AlgebraError::BadRing(format!("unknown key `{other}`"))),
        }
    }
    let p = p.ok_or_else(|| AlgebraError::BadRing("missing p".into()))?;
    let vars = vars.ok_or_else(|| AlgebraError::BadRing("missing vars".into()))?;
    RingContext::from_owned(p, vars, order)
}
