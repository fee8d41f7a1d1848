//! Sparse polynomials over the prime field `F_p`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::ring::{Monomial, Ring};

/// Arithmetic in `F_p` for `p < 2^32`; residues are kept in `0..p`.
pub mod fp {
    #[inline]
    pub fn add(a: u32, b: u32, p: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % p as u64) as u32
    }

    #[inline]
    pub fn sub(a: u32, b: u32, p: u32) -> u32 {
        add(a, p - b, p)
    }

    #[inline]
    pub fn mul(a: u32, b: u32, p: u32) -> u32 {
        ((a as u64 * b as u64) % p as u64) as u32
    }

    #[inline]
    pub fn neg(a: u32, p: u32) -> u32 {
        if a == 0 {
            0
        } else {
            p - a
        }
    }

    pub fn pow(mut a: u32, mut n: u64, p: u32) -> u32 {
        let mut r = 1 % p;
        while n > 0 {
            if n & 1 == 1 {
                r = mul(r, a, p);
            }
            a = mul(a, a, p);
            n >>= 1;
        }
        r
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(a: u32, p: u32) -> u32 {
        debug_assert!(a % p != 0);
        pow(a, p as u64 - 2, p)
    }

    pub fn from_i64(a: i64, p: u32) -> u32 {
        a.rem_euclid(p as i64) as u32
    }
}

/// A polynomial: terms sorted strictly descending in the ring's monomial
/// order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        Self::term(ring, Monomial::one(ring.arity()), c)
    }

    pub fn term(ring: &Ring, m: Monomial, c: i64) -> Self {
        assert_eq!(m.arity(), ring.arity(), "monomial arity");
        let c = fp::from_i64(c, ring.p() as u32);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// The variable `x_i`.
    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.arity(), i, 1), 1)
    }

    pub fn monomial(ring: &Ring, exps: &[u32]) -> Self {
        Self::term(ring, Monomial::from_exps(exps), 1)
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated)
    /// terms; coefficients are taken mod p.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let p = ring.p() as u32;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.arity(), "monomial arity");
            let e = acc.entry(m).or_insert(0);
            *e = fp::add(*e, c % p, p);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn p(&self) -> u32 {
        self.ring.p() as u32
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| self.ring.cmp_monomials(m, t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Whether the polynomial only involves the variables flagged in `allowed`.
    pub fn uses_only(&self, allowed: &[bool]) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.exps().iter().zip(allowed).all(|(e, ok)| *e == 0 || *ok))
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.axpy(1, &Monomial::one(self.ring.arity()), other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let p = self.p();
        Ok(self.axpy(p - 1, &Monomial::one(self.ring.arity()), other))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.p() - 1)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let p = self.p();
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), fp::mul(*a, c, p))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Scales so that the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if *c == 1 => self.clone(),
            Some((_, c)) => self.scale(fp::inv(*c, self.p())),
        }
    }

    /// `self + c * m * other`, by merging. `m * other` must not overflow;
    /// callers use this only with monomials dividing existing terms or
    /// with already-validated products.
    pub(crate) fn axpy(&self, c: u32, m: &Monomial, other: &Polynomial) -> Polynomial {
        let p = self.p();
        let c = c % p;
        if c == 0 {
            return self.clone();
        }
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let shifted: Vec<(Monomial, u32)> = other
            .terms
            .iter()
            .map(|(om, oc)| (om.checked_mul(m).expect("exponent overflow"), fp::mul(*oc, c, p)))
            .collect();
        let mut j = 0;
        while i < self.terms.len() && j < shifted.len() {
            match ring.cmp_monomials(&self.terms[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = fp::add(self.terms[i].1, shifted[j].1, p);
                    if s != 0 {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(shifted.into_iter().skip(j));
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Result<Polynomial> {
        let p = self.p();
        let c = c % p;
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, tc) in &self.terms {
            terms.push((tm.checked_mul(m)?, fp::mul(*tc, c, p)));
        }
        // Multiplication by a monomial preserves the order.
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        self.mul_filtered(other, |_| true)
    }

    /// Product keeping only the monomials accepted by `keep`.
    fn mul_filtered(&self, other: &Polynomial, keep: impl Fn(&Monomial) -> bool) -> Result<Polynomial> {
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if self.terms.len() == 1 && keep(&self.terms[0].0) {
            let (m, c) = &self.terms[0];
            let prod = other.mul_term(m, *c)?;
            return Ok(prod.retain(keep));
        }
        let p = self.p() as u64;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (am, ac) in &self.terms {
            for (bm, bc) in &other.terms {
                let m = am.checked_mul(bm)?;
                if !keep(&m) {
                    continue;
                }
                let e = acc.entry(m).or_insert(0);
                *e = (*e + *ac as u64 * *bc as u64) % p;
            }
        }
        let map = acc.into_iter().map(|(m, c)| (m, c as u32)).collect();
        Ok(Self::from_map(&self.ring, map))
    }

    fn retain(mut self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        self.terms.retain(|(m, _)| keep(m));
        self
    }

    /// `f(x)^q` for `q` a power of p: coefficients are fixed by Frobenius on
    /// `F_p`, so only the exponents scale. The caller guarantees that `q` is
    /// a power of the characteristic.
    pub fn frobenius_power(&self, q: u64) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_scale(q)?, *c));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    fn pow_small(&self, n: u64, keep: &impl Fn(&Monomial) -> bool) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.ring).retain(keep);
        let mut base = self.clone().retain(keep);
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_filtered(&base, keep)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_filtered(&base, keep)?;
            }
        }
        Ok(result)
    }

    /// `f^n`, writing `n` in base p and using `(f^d)^(p^i) = frobenius_power`
    /// for each digit.
    pub fn pow(&self, n: u64) -> Result<Polynomial> {
        self.pow_filtered(n, |_| true)
    }

    /// `f^n` with every monomial having some exponent `>= bound` discarded,
    /// i.e. `f^n` modulo the monomial ideal `(x_1^bound, .., x_k^bound)`.
    pub fn pow_truncated(&self, n: u64, bound: u32) -> Result<Polynomial> {
        self.pow_filtered(n, move |m: &Monomial| m.exps().iter().all(|&e| e < bound))
    }

    fn pow_filtered(&self, n: u64, keep: impl Fn(&Monomial) -> bool) -> Result<Polynomial> {
        let p = self.ring.p();
        let mut result = Polynomial::one(&self.ring).retain(&keep);
        let mut n = n;
        let mut q = 1u64;
        while n > 0 {
            let d = n % p;
            if d > 0 {
                let piece = self.pow_small(d, &|_: &Monomial| true)?.frobenius_power(q)?;
                result = result.mul_filtered(&piece, &keep)?;
                if result.is_zero() {
                    return Ok(result);
                }
            }
            n /= p;
            if n > 0 {
                q = q.checked_mul(p).ok_or(AlgebraError::ExponentOverflow)?;
            }
        }
        Ok(result)
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` of this
    /// ring to variable `map[i]` of `target`.
    pub fn embed(&self, target: &Ring, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.arity());
        let n = target.arity();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one(n);
            for (i, &e) in m.exps().iter().enumerate() {
                out.0[map[i]] += e;
            }
            (out, *c)
        });
        Polynomial::from_terms(target, terms)
    }

    /// Drops the first `count` variables, which must not occur.
    pub(crate) fn restrict_tail(&self, target: &Ring, count: usize) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            debug_assert!(m.exps()[..count].iter().all(|&e| e == 0));
            (Monomial::from_exps(&m.exps()[count..]), *c)
        });
        Polynomial::from_terms(target, terms)
    }

    /// Same polynomial, terms re-sorted for a ring that differs only in its
    /// order.
    pub fn reorder(&self, target: &Ring) -> Polynomial {
        Polynomial::from_terms(target, self.terms.iter().cloned())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    fn ring(p: u64) -> Ring {
        RingContext::grevlex(p, &["x", "y"]).unwrap()
    }

    #[test]
    fn field_ops() {
        assert_eq!(fp::inv(3, 7), 5);
        assert_eq!(fp::sub(2, 5, 7), 4);
        assert_eq!(fp::from_i64(-1, 5), 4);
        assert_eq!(fp::pow(3, 6, 7), 1);
    }

    #[test]
    fn difference_of_squares_mod_3() {
        let r = ring(3);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let prod = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let expected = Polynomial::from_terms(
            &r,
            [(Monomial::from_exps(&[2, 0]), 1), (Monomial::from_exps(&[0, 2]), 2)],
        );
        assert_eq!(prod, expected);
        assert_eq!(prod.to_string(), "x^2+2*y^2");
    }

    #[test]
    fn pow_zero_is_one() {
        let r = ring(7);
        let f = Polynomial::monomial(&r, &[2, 0]).add(&Polynomial::monomial(&r, &[0, 3])).unwrap();
        assert!(f.pow(0).unwrap().is_one());
    }

    #[test]
    fn binomial_coefficient_in_fifth_power() {
        // C(5,3) = 10 = 3 mod 7 on x^6 y^6.
        let r = ring(7);
        let f = Polynomial::monomial(&r, &[2, 0]).add(&Polynomial::monomial(&r, &[0, 3])).unwrap();
        let g = f.pow(5).unwrap();
        assert_eq!(g.coeff(&Monomial::from_exps(&[6, 6])), 3);
        assert_eq!(g.len(), 6);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let r = ring(3);
        let f = Polynomial::from_terms(
            &r,
            [(Monomial::from_exps(&[1, 0]), 1), (Monomial::from_exps(&[0, 1]), 2), (Monomial::from_exps(&[0, 0]), 1)],
        );
        let mut acc = Polynomial::one(&r);
        for n in 0..20u64 {
            assert_eq!(f.pow(n).unwrap(), acc, "n = {n}");
            acc = acc.mul(&f).unwrap();
        }
    }

    #[test]
    fn truncated_power_drops_high_monomials() {
        let r = ring(2);
        let f = Polynomial::var(&r, 0).mul(&Polynomial::var(&r, 1)).unwrap();
        assert_eq!(f.pow_truncated(7, 8).unwrap(), Polynomial::monomial(&r, &[7, 7]));
        assert!(f.pow_truncated(8, 8).unwrap().is_zero());
    }

    #[test]
    fn characteristic_kills_p_multiples() {
        let r = ring(5);
        let f = Polynomial::var(&r, 0).add(&Polynomial::constant(&r, 3)).unwrap();
        assert!(f.scale(5).is_zero());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = Polynomial::var(&ring(3), 0);
        let b = Polynomial::var(&ring(5), 0);
        assert_eq!(a.add(&b), Err(AlgebraError::ContextMismatch));
        assert_eq!(a.mul(&b), Err(AlgebraError::ContextMismatch));
    }
}
