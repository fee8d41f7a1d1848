//! Frobenius bracket powers and Frobenius roots of ideals and of submodules
//! of free modules, plus executable checks of the identities they satisfy.
//!
//! Over `S = F_p[x]` the Frobenius is flat and `S` is free over `S^q` with
//! basis `{x^a : a < q}`. Writing each generator as `sum_a x^a u_a^q`, the
//! smallest ideal `K` with `I ⊆ K^[q]` is generated by all the `u_a`.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::decompose::{frobenius_expand, QPower};
use crate::error::{AlgebraError, Result};
use crate::groebner::linear_basis;
use crate::ideal::Ideal;
use crate::poly::{same_ring, Polynomial};
use crate::ring::{MonomialOrder, Ring, RingContext};

fn check_q(ring: &Ring, q: QPower) -> Result<()> {
    if q.p() != ring.p() {
        return Err(AlgebraError::NotPPower { q: q.q(), p: ring.p() });
    }
    Ok(())
}

/// `I^[q]`, generated by the q-th powers of the generators.
///
/// The q-th powers of a reduced Gröbner basis form the reduced Gröbner
/// basis of the bracket power (S-polynomials and standard representations
/// are carried along by the Frobenius), so the result comes with its basis.
pub fn bracket_power(ideal: &Ideal, q: QPower) -> Result<Ideal> {
    let ring = ideal.ring();
    check_q(ring, q)?;
    let basis = ideal
        .reduced_gb()?
        .iter()
        .map(|g| g.frobenius_power(q.q()))
        .collect::<Result<Vec<_>>>()?;
    let gens = ideal.gens().iter().map(|g| g.frobenius_power(q.q())).collect::<Result<Vec<_>>>()?;
    Ideal::with_known_basis(ring, gens, basis)
}

/// `I^[1/q]`: the smallest ideal `K` with `I ⊆ K^[q]`.
pub fn frobenius_root(ideal: &Ideal, q: QPower) -> Result<Ideal> {
    let ring = ideal.ring();
    check_q(ring, q)?;
    let parts: Vec<Vec<Polynomial>> = ideal
        .gens()
        .par_iter()
        .map(|g| frobenius_expand(g, q).map(|d| d.parts.into_values().collect()))
        .collect::<Result<_>>()?;
    let all: Vec<Polynomial> = parts.into_iter().flatten().collect();
    Ideal::new(ring, linear_basis(&all))
}

/// `(f)^[1/q]` for `f = g^n`, using `(g^(aq) h)^[1/q] = g^a h^[1/q]` to keep
/// the power below `q`.
pub fn frobenius_root_of_power(g: &Polynomial, n: u64, q: QPower) -> Result<Ideal> {
    let a = n / q.q();
    let b = n % q.q();
    let inner = frobenius_root(&Ideal::principal(&g.pow(b)?), q)?;
    if a == 0 {
        return Ok(inner);
    }
    let ga = g.pow(a)?;
    Ideal::new(g.ring(), linear_basis(inner.scale_by(&ga)?.gens()))
}

/// `ψ_s(t) = (t^s - 1)/(t - 1) = 1 + t + .. + t^(s-1)`.
pub fn psi(s: u32, t: u64) -> Result<BigInt> {
    if t < 2 {
        return Err(AlgebraError::InvalidArgument(format!("psi needs t >= 2, got {t}")));
    }
    let t = BigInt::from(t);
    let num = num_traits::pow::pow(t.clone(), s as usize) - BigInt::one();
    Ok(num / (t - BigInt::one()))
}

/// Outcome of an identity check: both sides and whether they agree.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: Ideal,
    pub rhs: Ideal,
}

/// `(∩ I_k)^[q] = ∩ (I_k^[q])` for a finite family.
pub fn if_identity_check(family: &[Ideal], q: QPower) -> Result<IdentityCheck> {
    let meet = Ideal::intersect_all(family)?;
    let lhs = bracket_power(&meet, q)?;
    let brackets = family.iter().map(|i| bracket_power(i, q)).collect::<Result<Vec<_>>>()?;
    let rhs = Ideal::intersect_all(&brackets)?;
    Ok(IdentityCheck { holds: lhs.equals(&rhs)?, lhs, rhs })
}

/// `(I + J)^[1/q] = I^[1/q] + J^[1/q]`.
pub fn root_additivity_check(i: &Ideal, j: &Ideal, q: QPower) -> Result<IdentityCheck> {
    let lhs = frobenius_root(&i.sum(j)?, q)?;
    let rhs = frobenius_root(i, q)?.sum(&frobenius_root(j, q)?)?;
    Ok(IdentityCheck { holds: lhs.equals(&rhs)?, lhs, rhs })
}

/// A submodule of the free module `S^rank`, given by generating vectors.
#[derive(Debug, Clone)]
pub struct FreeSubmodule {
    ring: Ring,
    rank: usize,
    gens: Vec<Vec<Polynomial>>,
}

impl FreeSubmodule {
    /// Zero vectors are dropped.
    pub fn new(ring: &Ring, rank: usize, gens: Vec<Vec<Polynomial>>) -> Result<Self> {
        for v in &gens {
            if v.len() != rank {
                return Err(AlgebraError::RankMismatch { expected: rank, got: v.len() });
            }
            if v.iter().any(|c| !same_ring(ring, c.ring())) {
                return Err(AlgebraError::ContextMismatch);
            }
        }
        let gens = gens.into_iter().filter(|v| v.iter().any(|c| !c.is_zero())).collect();
        Ok(FreeSubmodule { ring: ring.clone(), rank, gens })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[Vec<Polynomial>] {
        &self.gens
    }

    /// Decides `v ∈ M`. The free module is encoded in `S[e_1..e_k]` as the
    /// e-linear forms; `M` corresponds to the degree-one part of the ideal
    /// generated by the forms of its generators and all `e_a e_b`.
    pub fn contains(&self, v: &[Polynomial]) -> Result<bool> {
        if v.len() != self.rank {
            return Err(AlgebraError::RankMismatch { expected: self.rank, got: v.len() });
        }
        if v.iter().all(|c| c.is_zero()) {
            return Ok(true);
        }
        let n = self.ring.arity();
        let mut vars: Vec<String> = self.ring.vars().to_vec();
        for k in 0..self.rank {
            let name = self.ring.fresh_name(&format!("_e{k}_"));
            vars.push(name);
        }
        let big = RingContext::from_owned(self.ring.p(), vars, MonomialOrder::Grevlex)?;
        let map: Vec<usize> = (0..n).collect();
        let form = |vec: &[Polynomial]| -> Result<Polynomial> {
            let mut acc = Polynomial::zero(&big);
            for (k, c) in vec.iter().enumerate() {
                acc = acc.add(&c.embed(&big, &map).mul(&Polynomial::var(&big, n + k))?)?;
            }
            Ok(acc)
        };
        let mut gens = self.gens.iter().map(|g| form(g)).collect::<Result<Vec<_>>>()?;
        for a in 0..self.rank {
            for b in a..self.rank {
                gens.push(Polynomial::var(&big, n + a).mul(&Polynomial::var(&big, n + b))?);
            }
        }
        Ideal::new(&big, gens)?.contains(&form(v)?)
    }

    /// `other ⊆ self`.
    pub fn contains_module(&self, other: &FreeSubmodule) -> Result<bool> {
        if other.rank != self.rank {
            return Err(AlgebraError::RankMismatch { expected: self.rank, got: other.rank });
        }
        for v in &other.gens {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `M^[q]`, generated by componentwise q-th powers.
    pub fn bracket_power(&self, q: QPower) -> Result<FreeSubmodule> {
        check_q(&self.ring, q)?;
        let gens = self
            .gens
            .iter()
            .map(|v| v.iter().map(|c| c.frobenius_power(q.q())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FreeSubmodule::new(&self.ring, self.rank, gens)
    }
}

/// The smallest submodule `K` of `S^rank` with `L ⊆ K^[q]`: every generator
/// `v` contributes, for each basis exponent `a < q`, the vector of the
/// `a`-parts of its components.
pub fn frobenius_root_module(module: &FreeSubmodule, q: QPower) -> Result<FreeSubmodule> {
    check_q(&module.ring, q)?;
    let mut out: Vec<Vec<Polynomial>> = Vec::new();
    for v in &module.gens {
        let mut by_alpha: std::collections::BTreeMap<crate::ring::Monomial, Vec<Polynomial>> =
            std::collections::BTreeMap::new();
        for (k, c) in v.iter().enumerate() {
            for (alpha, u) in frobenius_expand(c, q)?.parts {
                by_alpha
                    .entry(alpha)
                    .or_insert_with(|| vec![Polynomial::zero(&module.ring); module.rank])[k] = u;
            }
        }
        for vec in by_alpha.into_values() {
            if !out.contains(&vec) {
                out.push(vec);
            }
        }
    }
    FreeSubmodule::new(&module.ring, module.rank, out)
}

/// Whether `L ⊆ K^[q]`, witnessed constructively: each generator of `L`
/// must reassemble as `sum_a x^a w_a^[q]` with every `w_a ∈ K`.
pub fn module_root_contains(l: &FreeSubmodule, k: &FreeSubmodule, q: QPower) -> Result<bool> {
    let bracket = k.bracket_power(q)?;
    bracket.contains_module(l)
}
