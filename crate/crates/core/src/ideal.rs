//! Ideals of `F_p[x1..xn]` and the decision procedures on them.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{AlgebraError, Result};
use crate::groebner::{linear_basis, normal_form, reduced_groebner_basis};
use crate::poly::{same_ring, Polynomial};
use crate::ring::Ring;

/// A finitely generated ideal. Immutable; the reduced Gröbner basis (with
/// respect to the ring's own order) is computed at most once.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !same_ring(ring, g.ring()) {
                return Err(AlgebraError::ContextMismatch);
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, basis: OnceLock::new() })
    }

    pub fn principal(f: &Polynomial) -> Self {
        Ideal::new(f.ring(), vec![f.clone()]).unwrap()
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), basis: OnceLock::from(Vec::new()) }
    }

    pub fn unit(ring: &Ring) -> Self {
        let one = Polynomial::one(ring);
        Ideal { ring: ring.clone(), gens: vec![one.clone()], basis: OnceLock::from(vec![one]) }
    }

    /// The maximal ideal `(x1, .., xn)`.
    pub fn maximal(ring: &Ring) -> Self {
        let gens = (0..ring.arity()).map(|i| Polynomial::var(ring, i)).collect();
        Ideal::new(ring, gens).unwrap()
    }

    /// An ideal whose generators are already known to be its reduced
    /// Gröbner basis.
    pub(crate) fn from_reduced_basis(ring: &Ring, basis: Vec<Polynomial>) -> Self {
        Ideal { ring: ring.clone(), gens: basis.clone(), basis: OnceLock::from(basis) }
    }

    /// Generators together with an independently known reduced basis of
    /// the same ideal.
    pub(crate) fn with_known_basis(ring: &Ring, gens: Vec<Polynomial>, basis: Vec<Polynomial>) -> Result<Self> {
        let ideal = Ideal::new(ring, gens)?;
        let _ = ideal.basis.set(basis);
        Ok(ideal)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    /// Reduced Gröbner basis, monic, sorted by increasing head monomial.
    pub fn reduced_gb(&self) -> Result<&[Polynomial]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = reduced_groebner_basis(&self.ring, &self.gens)?;
        Ok(self.basis.get_or_init(|| b))
    }

    /// A copy of this ideal presented by its reduced Gröbner basis.
    pub fn canonical(&self) -> Result<Ideal> {
        Ok(Ideal::from_reduced_basis(&self.ring, self.reduced_gb()?.to_vec()))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.reduced_gb()?.first().is_some_and(|g| g.is_one()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(&self.ring, f.ring()) {
            return Err(AlgebraError::ContextMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        Ok(normal_form(f, self.reduced_gb()?).is_zero())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, f.ring()) {
            return Err(AlgebraError::ContextMismatch);
        }
        Ok(normal_form(f, self.reduced_gb()?))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same ideal: identical reduced bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        Ok(self.reduced_gb()? == other.reduced_gb()?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Pairwise products of generators, thinned to an F_p-linear basis of
    /// their span.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                prods.push(f.mul(g)?);
            }
        }
        Ideal::new(&self.ring, linear_basis(&prods))
    }

    /// `I^n` by binary splitting; `I^0` is the unit ideal.
    pub fn power(&self, n: u64) -> Result<Ideal> {
        if n == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        if self.gens.len() == 1 {
            return Ok(Ideal::principal(&self.gens[0].pow(n)?));
        }
        let half = self.power(n / 2)?;
        let sq = half.product(&half)?;
        if n % 2 == 1 {
            sq.product(self)
        } else {
            Ok(sq)
        }
    }

    pub fn scale_by(&self, f: &Polynomial) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.mul(f)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ J = (t I + (1 - t) J) ∩ R`, with `t` fresh and eliminated by a
    /// block order.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let big = self.ring.with_eliminated_var("_t");
        let map: Vec<usize> = (1..=self.ring.arity()).collect();
        let t = Polynomial::var(&big, 0);
        let one_minus_t = Polynomial::one(&big).sub(&t)?;
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(f.embed(&big, &map).mul(&t)?);
        }
        for g in &other.gens {
            gens.push(g.embed(&big, &map).mul(&one_minus_t)?);
        }
        let gb = reduced_groebner_basis(&big, &gens)?;
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| g.leading_monomial().unwrap().exps()[0] == 0)
            .map(|g| g.restrict_tail(&self.ring, 1))
            .collect();
        // Elimination of a reduced basis is the reduced basis of the contraction.
        let mut kept = kept;
        crate::groebner::sort_by_head(&mut kept);
        Ok(Ideal::from_reduced_basis(&self.ring, kept))
    }

    /// Intersection of a nonempty family.
    pub fn intersect_all(family: &[Ideal]) -> Result<Ideal> {
        let (first, rest) = family
            .split_first()
            .ok_or_else(|| AlgebraError::InvalidArgument("empty family".into()))?;
        let mut acc = first.clone();
        for i in rest {
            acc = acc.intersect(i)?;
        }
        Ok(acc)
    }

    /// Rabinowitsch: `f ∈ √I` iff `1 ∈ I + (1 - t f)`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(&self.ring, f.ring()) {
            return Err(AlgebraError::ContextMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let big = self.ring.with_eliminated_var("_t");
        let map: Vec<usize> = (1..=self.ring.arity()).collect();
        let t = Polynomial::var(&big, 0);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&big, &map)).collect();
        gens.push(Polynomial::one(&big).sub(&t.mul(&f.embed(&big, &map))?)?);
        let gb = reduced_groebner_basis(&big, &gens)?;
        Ok(gb.first().is_some_and(|g| g.is_one()))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        if parts.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", parts.join(", "))
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self)
    }
}
