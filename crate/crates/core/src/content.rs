//! Ohm-Rush content for polynomial extensions `R ⊆ S = R[ext vars]`.
//!
//! Content ideals are ideals of `R`, represented inside `S` by generators
//! that involve only base variables. `S` is free over `R`, so `IS ∩ R = I`
//! and `rad(IS) ∩ R = rad(I)`: containment, equality and radical
//! comparisons can all be carried out in `S`.

use std::collections::BTreeMap;

use crate::decompose::{qth_root, QPower};
use crate::error::{AlgebraError, Result};
use crate::groebner::linear_basis;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

/// A partition of the ring variables into base and extension variables.
#[derive(Debug, Clone)]
pub struct SplitContext {
    ring: Ring,
    base: Vec<bool>,
}

impl SplitContext {
    pub fn new(ring: &Ring, base_vars: &[&str]) -> Result<Self> {
        let mut base = vec![false; ring.arity()];
        for name in base_vars {
            let i = ring.var_index(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
            if base[i] {
                return Err(AlgebraError::InvalidArgument(format!("base variable `{name}` repeated")));
            }
            base[i] = true;
        }
        Ok(SplitContext { ring: ring.clone(), base })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_base(&self, i: usize) -> bool {
        self.base[i]
    }

    pub fn base_vars(&self) -> Vec<&str> {
        self.ring.vars().iter().zip(&self.base).filter(|(_, b)| **b).map(|(v, _)| v.as_str()).collect()
    }

    pub fn extension_vars(&self) -> Vec<&str> {
        self.ring.vars().iter().zip(&self.base).filter(|(_, b)| !**b).map(|(v, _)| v.as_str()).collect()
    }

    pub fn in_base(&self, f: &Polynomial) -> bool {
        f.uses_only(&self.base)
    }

    fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        let (mut b, mut x) = (m.exps().to_vec(), m.exps().to_vec());
        for i in 0..m.arity() {
            if self.base[i] {
                x[i] = 0;
            } else {
                b[i] = 0;
            }
        }
        (Monomial::from_exps(&b), Monomial::from_exps(&x))
    }
}

/// `f = Σ coefficient_m · m` over extension monomials `m`, with base-only
/// coefficients.
pub fn content_witness(f: &Polynomial, split: &SplitContext) -> Result<Vec<(Monomial, Polynomial)>> {
    if f.ring() != split.ring() {
        return Err(AlgebraError::ContextMismatch);
    }
    let mut groups: BTreeMap<Monomial, Vec<(Monomial, u32)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let (b, x) = split.split(m);
        groups.entry(x).or_default().push((b, *c));
    }
    Ok(groups.into_iter().map(|(x, terms)| (x, Polynomial::from_terms(split.ring(), terms))).collect())
}

/// The content `c(f)`: the base ideal generated by the coefficients of `f`.
pub fn poly_content(f: &Polynomial, split: &SplitContext) -> Result<Ideal> {
    let coeffs: Vec<Polynomial> = content_witness(f, split)?.into_iter().map(|(_, c)| c).collect();
    Ideal::new(split.ring(), linear_basis(&coeffs))
}

/// `Σ c(g_i)`.
pub fn content_of_gens(gens: &[Polynomial], split: &SplitContext) -> Result<Ideal> {
    let mut all = Vec::new();
    for g in gens {
        all.extend(poly_content(g, split)?.gens().iter().cloned());
    }
    Ideal::new(split.ring(), linear_basis(&all))
}

/// Result of a content identity check, with the two sides compared.
#[derive(Debug, Clone)]
pub struct ContentCheck {
    pub holds: bool,
    pub lhs: Ideal,
    pub rhs: Ideal,
    /// An element on one side not accounted for by the other.
    pub witness: Option<Polynomial>,
}

fn first_outside(gens: &[Polynomial], ideal: &Ideal) -> Result<Option<Polynomial>> {
    for g in gens {
        if !ideal.contains(g)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

fn compare(lhs: Ideal, rhs: Ideal) -> Result<ContentCheck> {
    let witness = match first_outside(lhs.gens(), &rhs)? {
        Some(w) => Some(w),
        None => first_outside(rhs.gens(), &lhs)?,
    };
    Ok(ContentCheck { holds: witness.is_none(), lhs, rhs, witness })
}

/// The content of the `S`-ideal `(gens)` equals `Σ c(gens_i)`.
///
/// Every element of the ideal is an `S`-combination of the generators; the
/// reduced Gröbner basis and the supplied `combinations` are such elements
/// and must have content inside `Σ c(gens_i)`. Conversely `Σ c(gens_i)` is
/// attained by the generators themselves.
pub fn content_additivity_check(
    gens: &[Polynomial],
    split: &SplitContext,
    combinations: &[Vec<Polynomial>],
) -> Result<ContentCheck> {
    let rhs = content_of_gens(gens, split)?;
    let ideal = Ideal::new(split.ring(), gens.to_vec())?;
    let mut elements: Vec<Polynomial> = ideal.reduced_gb()?.to_vec();
    for coeffs in combinations {
        if coeffs.len() != gens.len() {
            return Err(AlgebraError::RankMismatch { expected: gens.len(), got: coeffs.len() });
        }
        let mut h = Polynomial::zero(split.ring());
        for (s, g) in coeffs.iter().zip(gens) {
            h = h.add(&s.mul(g)?)?;
        }
        elements.push(h);
    }
    let mut lhs_gens = gens.to_vec();
    lhs_gens.extend(elements);
    let lhs = content_of_gens(&lhs_gens, split)?;
    compare(lhs, rhs)
}

/// `c(f) c(g)` and `c(fg)` have the same radical.
pub fn weak_content_check(f: &Polynomial, g: &Polynomial, split: &SplitContext) -> Result<ContentCheck> {
    let lhs = poly_content(&f.mul(g)?, split)?;
    let rhs = poly_content(f, split)?.product(&poly_content(g, split)?)?;
    let mut witness = None;
    for (from, to) in [(&lhs, &rhs), (&rhs, &lhs)] {
        for h in from.gens() {
            if !to.radical_contains(h)? {
                witness = Some(h.clone());
                break;
            }
        }
        if witness.is_some() {
            break;
        }
    }
    Ok(ContentCheck { holds: witness.is_none(), lhs, rhs, witness })
}

/// `c(fg) = c(f) c(g)`.
pub fn gaussian_check(f: &Polynomial, g: &Polynomial, split: &SplitContext) -> Result<ContentCheck> {
    let lhs = poly_content(&f.mul(g)?, split)?;
    let rhs = poly_content(f, split)?.product(&poly_content(g, split)?)?;
    compare(lhs, rhs)
}

/// Content of `f` over the subring of `p^e`-th powers: the ideal of the
/// `q`-th roots of the components `Σ_{β ≡ α} c x^(β-α)` of `f`.
pub fn frobenius_content(f: &Polynomial, e: u32) -> Result<Ideal> {
    let ring = f.ring();
    let q = QPower::new(ring.p(), ring.p().checked_pow(e).ok_or(AlgebraError::ExponentOverflow)?)?;
    let mut components: BTreeMap<Vec<u32>, Vec<(Monomial, u32)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let alpha: Vec<u32> = m.exps().iter().map(|&b| (b as u64 % q.q()) as u32).collect();
        let rest: Vec<u32> = m.exps().iter().zip(&alpha).map(|(b, a)| b - a).collect();
        components.entry(alpha).or_default().push((Monomial::from_exps(&rest), *c));
    }
    let mut roots = Vec::with_capacity(components.len());
    for terms in components.into_values() {
        let part = Polynomial::from_terms(ring, terms);
        roots.push(qth_root(&part, q).expect("component is a q-th power"));
    }
    Ideal::new(ring, linear_basis(&roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::frobenius_root;
    use crate::parse::parse_poly;
    use crate::ring::RingContext;

    fn setup(p: u64, vars: &[&str], base: &[&str]) -> (Ring, SplitContext) {
        let r = RingContext::grevlex(p, vars).unwrap();
        let s = SplitContext::new(&r, base).unwrap();
        (r, s)
    }

    fn ideal(ring: &Ring, src: &[&str]) -> Ideal {
        Ideal::new(ring, src.iter().map(|s| parse_poly(s, ring).unwrap()).collect()).unwrap()
    }

    #[test]
    fn contents() {
        let (r, s) = setup(5, &["x", "y"], &["y"]);
        let c = poly_content(&parse_poly("y*x+y^2", &r).unwrap(), &s).unwrap();
        assert!(c.equals(&ideal(&r, &["y"])).unwrap());

        let (r, s) = setup(5, &["x", "u", "v"], &["u", "v"]);
        let c = poly_content(&parse_poly("u*x+v", &r).unwrap(), &s).unwrap();
        assert!(c.equals(&ideal(&r, &["u", "v"])).unwrap());
        assert!(c.gens().iter().all(|g| s.in_base(g)));

        let (r, s) = setup(5, &["x"], &[]);
        assert!(poly_content(&parse_poly("x^2+1", &r).unwrap(), &s).unwrap().is_unit().unwrap());
    }

    #[test]
    fn witness_reassembles() {
        let (r, s) = setup(3, &["x", "y", "u"], &["u"]);
        let f = parse_poly("u*x^2*y + u^2*x^2*y - x + 2*u", &r).unwrap();
        let w = content_witness(&f, &s).unwrap();
        let back = w.iter().fold(Polynomial::zero(&r), |acc, (m, c)| acc.add(&c.mul_term(m, 1).unwrap()).unwrap());
        assert_eq!(back, f);
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn split_validation() {
        let r = RingContext::grevlex(3, &["x", "y"]).unwrap();
        assert!(SplitContext::new(&r, &["z"]).is_err());
        assert!(SplitContext::new(&r, &["y", "y"]).is_err());
        let s = SplitContext::new(&r, &["y"]).unwrap();
        assert_eq!(s.base_vars(), vec!["y"]);
        assert_eq!(s.extension_vars(), vec!["x"]);
    }

    #[test]
    fn additivity_examples() {
        let (r, s) = setup(5, &["x", "y"], &["y"]);
        let gens = vec![parse_poly("y*x", &r).unwrap(), parse_poly("y^2", &r).unwrap()];
        let c = content_additivity_check(&gens, &s, &[]).unwrap();
        assert!(c.holds);
        assert!(c.rhs.equals(&ideal(&r, &["y"])).unwrap());

        let (r, s) = setup(5, &["x", "u", "v"], &["u", "v"]);
        let gens = vec![parse_poly("u*x+v", &r).unwrap(), parse_poly("v*x+u", &r).unwrap()];
        let combos = vec![
            vec![parse_poly("x", &r).unwrap(), parse_poly("u+1", &r).unwrap()],
            vec![parse_poly("x^2-v", &r).unwrap(), parse_poly("3", &r).unwrap()],
        ];
        let c = content_additivity_check(&gens, &s, &combos).unwrap();
        assert!(c.holds);
        assert!(c.lhs.equals(&ideal(&r, &["u", "v"])).unwrap());

        let c = content_additivity_check(&[], &s, &[]).unwrap();
        assert!(c.holds && c.lhs.is_zero() && c.rhs.is_zero());
    }

    #[test]
    fn weak_content_examples() {
        let (r, s) = setup(5, &["x", "u", "v"], &["u", "v"]);
        let f = parse_poly("u*x+v", &r).unwrap();
        let g = parse_poly("v*x+u", &r).unwrap();
        let c = weak_content_check(&f, &g, &s).unwrap();
        assert!(c.holds);
        assert!(c.lhs.equals(&ideal(&r, &["u*v", "u^2+v^2"])).unwrap());

        let (r, s) = setup(5, &["x", "y"], &["y"]);
        let x = parse_poly("x", &r).unwrap();
        assert!(weak_content_check(&x, &x, &s).unwrap().holds);
        let c = weak_content_check(&parse_poly("y*x", &r).unwrap(), &parse_poly("y", &r).unwrap(), &s).unwrap();
        assert!(c.holds);
        assert!(c.lhs.equals(&ideal(&r, &["y^2"])).unwrap());
    }

    #[test]
    fn gaussian_examples() {
        let (r, s) = setup(5, &["x", "u", "v"], &["u", "v"]);
        let f = parse_poly("u*x+v", &r).unwrap();
        let g = parse_poly("v*x+u", &r).unwrap();
        let c = gaussian_check(&f, &g, &s).unwrap();
        assert!(!c.holds);
        assert!(c.rhs.contains(&parse_poly("u^2", &r).unwrap()).unwrap());
        assert!(!c.lhs.contains(&parse_poly("u^2", &r).unwrap()).unwrap());

        let (r, s) = setup(5, &["x", "y"], &["y"]);
        let c = gaussian_check(&parse_poly("y*x+y", &r).unwrap(), &parse_poly("y*x-y", &r).unwrap(), &s).unwrap();
        assert!(c.holds);
        assert!(c.lhs.equals(&ideal(&r, &["y^2"])).unwrap());

        let one = Polynomial::one(&r);
        assert!(gaussian_check(&one, &parse_poly("y*x^3+y^2", &r).unwrap(), &s).unwrap().holds);
    }

    #[test]
    fn localization_identity() {
        let (r, s) = setup(3, &["x", "y", "b"], &["y", "b"]);
        let f = parse_poly("y*x^2 + (b+y)*x + b^2", &r).unwrap();
        let b = parse_poly("b", &r).unwrap();
        let lhs = poly_content(&b.mul(&f).unwrap(), &s).unwrap();
        let rhs = poly_content(&f, &s).unwrap().scale_by(&b).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn frobenius_content_examples() {
        let r = RingContext::grevlex(2, &["x", "y"]).unwrap();
        let f = parse_poly("x^2+y^2", &r).unwrap();
        assert!(frobenius_content(&f, 1).unwrap().equals(&ideal(&r, &["x+y"])).unwrap());
        let r = RingContext::grevlex(3, &["x", "y"]).unwrap();
        assert!(frobenius_content(&parse_poly("x^3", &r).unwrap(), 1).unwrap().equals(&ideal(&r, &["x"])).unwrap());
        let f = parse_poly("x+y", &r).unwrap();
        assert!(frobenius_content(&f, 1).unwrap().is_unit().unwrap());
        let g = parse_poly("x^5*y+2*x^4*y^7+y^9+x", &r).unwrap();
        for e in 1..=2 {
            let q = QPower::new(3, 3u64.pow(e)).unwrap();
            let root = frobenius_root(&Ideal::principal(&g), q).unwrap();
            assert!(frobenius_content(&g, e).unwrap().equals(&root).unwrap());
        }
    }
}
