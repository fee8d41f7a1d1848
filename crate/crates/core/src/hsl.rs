//! Hartshorne-Speiser-Lyubeznik numbers of hypersurfaces.
//!
//! A Frobenius action `[x] ↦ u^a [x^(p^β)]` gives the descending chain
//! `I_s = (u^(a ψ_s(p^β)))^[1/p^(sβ)]`, `s = 0, 1, ..`, with `I_0 = (1)`.
//! For `R = S/(f)` the standard action has `u = f^(p-1)`, `a = 1`, `β = 1`,
//! and the stabilization index of the chain is the HSL number; `0` means
//! the action is injective.

use num_traits::ToPrimitive;

use crate::chain::{ChainReport, Direction};
use crate::decompose::QPower;
use crate::error::{AlgebraError, Result};
use crate::frobenius::{frobenius_root, psi};
use crate::ideal::Ideal;
use crate::poly::Polynomial;

#[derive(Debug, Clone)]
pub struct FrobeniusActionSpec {
    pub u: Polynomial,
    pub a_exp: u64,
    pub beta: u32,
}

impl FrobeniusActionSpec {
    pub fn new(u: Polynomial, a_exp: u64, beta: u32) -> Result<Self> {
        if beta == 0 {
            return Err(AlgebraError::InvalidArgument("beta must be at least 1".into()));
        }
        if u.is_zero() {
            return Err(AlgebraError::InvalidArgument("multiplier is zero".into()));
        }
        Ok(FrobeniusActionSpec { u, a_exp, beta })
    }

    /// `u = f^(p-1)`, `a = 1`, `β = 1`.
    pub fn hypersurface(f: &Polynomial) -> Result<Self> {
        if f.is_zero() || f.is_constant() {
            return Err(AlgebraError::InvalidArgument(format!("{f} must be a nonzero nonunit")));
        }
        let p = f.ring().p();
        Self::new(f.pow(p - 1)?, 1, 1)
    }

    /// `p^β`.
    pub fn base(&self) -> Result<u64> {
        self.u.ring().p().checked_pow(self.beta).ok_or(AlgebraError::ExponentOverflow)
    }

    /// `a ψ_s(p^β)` computed from the closed form.
    pub fn exponent(&self, s: u32) -> Result<u64> {
        let v = psi(s, self.base()?)? * self.a_exp;
        v.to_u64().ok_or(AlgebraError::ExponentOverflow)
    }
}

/// `E_0 = 0`, `E_(s+1) = p^β E_s + a`.
pub fn exponent_sequence(spec: &FrobeniusActionSpec, s_max: u32) -> Result<Vec<u64>> {
    let base = spec.base()?;
    let mut out = vec![0u64];
    for _ in 0..s_max {
        let last = *out.last().unwrap();
        let next = last
            .checked_mul(base)
            .and_then(|v| v.checked_add(spec.a_exp))
            .ok_or(AlgebraError::ExponentOverflow)?;
        out.push(next);
    }
    Ok(out)
}

/// The chain `I_0 ⊇ I_1 ⊇ ..` up to `s_max`, stopping early once stable.
/// Powers follow `u^(E_(s+1)) = (u^(E_s))^(p^β) u^a`.
pub fn hsl_chain(spec: &FrobeniusActionSpec, s_max: u32, q_cap: u64) -> Result<ChainReport> {
    if s_max == 0 {
        return Err(AlgebraError::InvalidArgument("s_max must be at least 1".into()));
    }
    let p = spec.u.ring().p();
    let ring = spec.u.ring().clone();
    let base = spec.base()?;
    let ua = spec.u.pow(spec.a_exp)?;
    let mut chain = ChainReport::new(Direction::Descending, 0);
    let mut power = Polynomial::one(&ring);
    for s in 0..=s_max {
        if s > 0 {
            power = power.frobenius_power(base)?.mul(&ua)?;
        }
        let level = s.checked_mul(spec.beta).ok_or(AlgebraError::ExponentOverflow)?;
        let q = QPower::from_exponent(p, level, q_cap).map_err(|_| AlgebraError::ChainCapExceeded {
            s: s as usize,
            q: p.checked_pow(level).unwrap_or(u64::MAX),
            cap: q_cap,
        })?;
        let ideal = frobenius_root(&Ideal::principal(&power), q)?.canonical()?;
        if chain.push(ideal)? {
            break;
        }
    }
    Ok(chain)
}

#[derive(Debug, Clone)]
pub enum HslOutcome {
    Stable { number: usize, chain: ChainReport },
    Unstabilized { chain: ChainReport },
}

impl HslOutcome {
    pub fn number(&self) -> Option<usize> {
        match self {
            HslOutcome::Stable { number, .. } => Some(*number),
            HslOutcome::Unstabilized { .. } => None,
        }
    }

    pub fn chain(&self) -> &ChainReport {
        match self {
            HslOutcome::Stable { chain, .. } | HslOutcome::Unstabilized { chain } => chain,
        }
    }
}

pub fn hsl_of_action(spec: &FrobeniusActionSpec, s_max: u32, q_cap: u64) -> Result<HslOutcome> {
    let chain = hsl_chain(spec, s_max, q_cap)?;
    Ok(match chain.stabilization_index {
        Some(number) => HslOutcome::Stable { number, chain },
        None => HslOutcome::Unstabilized { chain },
    })
}

/// HSL number of `S/(f)`.
pub fn hsl_number(f: &Polynomial, s_max: u32, q_cap: u64) -> Result<HslOutcome> {
    hsl_of_action(&FrobeniusActionSpec::hypersurface(f)?, s_max, q_cap)
}
