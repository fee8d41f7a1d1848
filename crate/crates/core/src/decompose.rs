//! Decomposition of a polynomial over the basis `{x^a : 0 <= a_i < q}` of
//! `F_p[x]` as a module over its subring of q-th powers.

use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

/// Largest q accepted unless a caller raises it.
pub const DEFAULT_Q_CAP: u64 = 1 << 20;

/// A validated power `q = p^e` of the characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QPower {
    p: u64,
    e: u32,
    q: u64,
}

impl QPower {
    /// Validates `q` against `p` with the default cap.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        Self::with_cap(p, q, DEFAULT_Q_CAP)
    }

    pub fn with_cap(p: u64, q: u64, cap: u64) -> Result<Self> {
        if q == 0 {
            return Err(AlgebraError::NotPPower { q, p });
        }
        let mut e = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            e += 1;
        }
        if r != 1 {
            return Err(AlgebraError::NotPPower { q, p });
        }
        if q > cap {
            return Err(AlgebraError::QCapExceeded { q, cap });
        }
        Ok(QPower { p, e, q })
    }

    /// `p^e`, checked against `cap`.
    pub fn from_exponent(p: u64, e: u32, cap: u64) -> Result<Self> {
        let q = p.checked_pow(e).ok_or(AlgebraError::QCapExceeded { q: u64::MAX, cap })?;
        Self::with_cap(p, q, cap)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// `f = sum_a x^a * (u_a)^q` with every `a_i < q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusDecomposition {
    pub q: QPower,
    /// Indexed by the basis exponent `a`; no zero parts.
    pub parts: BTreeMap<Monomial, Polynomial>,
}

impl FrobeniusDecomposition {
    /// `sum_a x^a (u_a)^q`.
    pub fn reassemble(&self, ring: &Ring) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(ring);
        for (alpha, u) in &self.parts {
            let piece = u.frobenius_power(self.q.q())?.mul_term(alpha, 1)?;
            acc = acc.add(&piece)?;
        }
        Ok(acc)
    }
}

/// Splits `f` along the basis `{x^a : a < q}`. Each term `c x^b`
/// contributes `c x^floor(b/q)` to the part at `b mod q`; the q-th root of
/// a scalar of `F_p` is the scalar itself.
pub fn frobenius_expand(f: &Polynomial, q: QPower) -> Result<FrobeniusDecomposition> {
    let ring = f.ring();
    if q.p() != ring.p() {
        return Err(AlgebraError::NotPPower { q: q.q(), p: ring.p() });
    }
    let qq = q.q();
    let mut buckets: BTreeMap<Monomial, Vec<(Monomial, u32)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut alpha = Monomial::one(ring.arity());
        let mut beta = Monomial::one(ring.arity());
        for (i, &e) in m.exps().iter().enumerate() {
            alpha.0[i] = (e as u64 % qq) as u32;
            beta.0[i] = (e as u64 / qq) as u32;
        }
        buckets.entry(alpha).or_default().push((beta, *c));
    }
    let parts = buckets
        .into_iter()
        .map(|(alpha, terms)| (alpha, Polynomial::from_terms(ring, terms)))
        .filter(|(_, u)| !u.is_zero())
        .collect();
    Ok(FrobeniusDecomposition { q, parts })
}

/// The q-th root of a polynomial that is a q-th power, `None` otherwise.
pub fn qth_root(f: &Polynomial, q: QPower) -> Option<Polynomial> {
    let qq = q.q();
    let mut terms = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        if m.exps().iter().any(|&e| e as u64 % qq != 0) {
            return None;
        }
        let root: Vec<u32> = m.exps().iter().map(|&e| (e as u64 / qq) as u32).collect();
        terms.push((Monomial::from_exps(&root), *c));
    }
    Some(Polynomial::from_terms(f.ring(), terms))
}
