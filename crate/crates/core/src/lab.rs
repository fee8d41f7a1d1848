//! Seeded random corpora and the identity suite run over them.
//!
//! Every instance draws from its own generator, derived from the suite seed
//! and the instance index, so results do not depend on scheduling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::content::{content_additivity_check, gaussian_check, weak_content_check, SplitContext};
use crate::decompose::{frobenius_expand, QPower};
use crate::error::Result;
use crate::frobenius::{bracket_power, frobenius_root, if_identity_check, psi};
use crate::hsl::{exponent_sequence, FrobeniusActionSpec};
use crate::ideal::Ideal;
use crate::parse::parse_poly;
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring, RingContext};

/// Random polynomials and ideals from a ChaCha stream.
pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Generator for instance `index` of a suite seeded with `seed`.
    pub fn for_instance(seed: u64, stream: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        rng.set_word_pos(u128::from(index) << 20);
        Corpus { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Nonzero polynomial with up to `max_terms` terms of total degree at
    /// most `max_deg`.
    pub fn poly(&mut self, ring: &Ring, max_deg: u32, max_terms: usize) -> Polynomial {
        self.poly_in_degrees(ring, 0, max_deg, max_terms)
    }

    /// Nonzero polynomial whose terms have total degree in `min_deg..=max_deg`.
    pub fn poly_in_degrees(&mut self, ring: &Ring, min_deg: u32, max_deg: u32, max_terms: usize) -> Polynomial {
        let p = ring.p() as u32;
        loop {
            let k = self.rng.gen_range(1..=max_terms);
            let terms: Vec<(Monomial, u32)> = (0..k)
                .map(|_| {
                    let degree = self.rng.gen_range(min_deg..=max_deg);
                    let mut budget = degree;
                    let mut exps = vec![0u32; ring.arity()];
                    let mut order: Vec<usize> = (0..ring.arity()).collect();
                    order.shuffle(&mut self.rng);
                    for (k, &i) in order.iter().enumerate() {
                        let e = if k + 1 == order.len() { budget } else { self.rng.gen_range(0..=budget) };
                        exps[i] = e;
                        budget -= e;
                    }
                    (Monomial::from_exps(&exps), self.rng.gen_range(1..p))
                })
                .collect();
            let f = Polynomial::from_terms(ring, terms);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Polynomial with no constant term.
    pub fn nonunit_poly(&mut self, ring: &Ring, max_deg: u32, max_terms: usize) -> Polynomial {
        loop {
            let f = self.poly(ring, max_deg.max(1), max_terms);
            let terms: Vec<(Monomial, u32)> = f.terms().iter().filter(|(m, _)| !m.is_one()).cloned().collect();
            if !terms.is_empty() {
                return Polynomial::from_terms(ring, terms);
            }
        }
    }

    pub fn ideal(&mut self, ring: &Ring, max_gens: usize, max_deg: u32, max_terms: usize) -> Ideal {
        self.ideal_in_degrees(ring, max_gens, 1, max_deg, max_terms)
    }

    pub fn ideal_in_degrees(
        &mut self,
        ring: &Ring,
        max_gens: usize,
        min_deg: u32,
        max_deg: u32,
        max_terms: usize,
    ) -> Ideal {
        let k = self.rng.gen_range(1..=max_gens);
        let gens = (0..k).map(|_| self.poly_in_degrees(ring, min_deg.max(1), max_deg, max_terms)).collect();
        Ideal::new(ring, gens).expect("generators share the ring")
    }

    /// `Σ c_i m_i` with nonconstant base coefficients `c_i` and extension
    /// monomials `m_i` of degree at most `ext_deg`.
    pub fn split_poly(&mut self, split: &SplitContext, base_deg: u32, ext_deg: u32, max_terms: usize) -> Polynomial {
        let ring = split.ring();
        let n = ring.arity();
        let k = self.rng.gen_range(1..=max_terms);
        let mut terms = Vec::new();
        for _ in 0..k {
            let mut exps = vec![0u32; n];
            let mut base_total = 0;
            for (i, e) in exps.iter_mut().enumerate() {
                *e = if split.is_base(i) { self.rng.gen_range(0..=base_deg) } else { self.rng.gen_range(0..=ext_deg) };
                if split.is_base(i) {
                    base_total += *e;
                }
            }
            if base_total == 0 {
                if let Some(i) = (0..n).find(|&i| split.is_base(i)) {
                    exps[i] = 1;
                }
            }
            terms.push((Monomial::from_exps(&exps), self.rng.gen_range(1..ring.p() as u32)));
        }
        let f = Polynomial::from_terms(ring, terms);
        if f.is_zero() {
            self.split_poly(split, base_deg, ext_deg, max_terms)
        } else {
            f
        }
    }
}

/// Outcome of one identity over a corpus.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn collect(name: &str, outcomes: Vec<Result<Option<String>>>) -> Result<Self> {
        let mut failures = 0;
        let mut first_failure = None;
        let instances = outcomes.len();
        for o in outcomes {
            if let Some(msg) = o? {
                failures += 1;
                first_failure.get_or_insert(msg);
            }
        }
        Ok(CheckLine { name: name.to_string(), instances, failures, first_failure })
    }
}

fn two_vars(p: u64) -> Ring {
    RingContext::grevlex(p, &["x", "y"]).expect("valid ring")
}

const PRIMES: [u64; 3] = [2, 3, 5];

fn root_instance(seed: u64, index: u64, samples: usize) -> Result<Option<String>> {
    let mut corpus = Corpus::for_instance(seed, 1, index);
    let p = PRIMES[(index % 3) as usize];
    let ring = two_vars(p);
    let ideal = corpus.ideal_in_degrees(&ring, 3, 3, 6, 4);
    let qp = QPower::new(p, p)?;
    let qp2 = QPower::new(p, p * p)?;
    let mut roots = Vec::new();
    for q in [qp, qp2] {
        let root = frobenius_root(&ideal, q)?;
        if !bracket_power(&root, q)?.contains_ideal(&ideal)? {
            return Ok(Some(format!("{ideal} ⊄ ({root})^[{}] at p={p}", q.q())));
        }
        let mut tries = 0;
        let mut seen = 0;
        while seen < samples && tries < 50 * samples {
            tries += 1;
            // Half the candidates enlarge the root, half are unrelated.
            let j = if seen % 2 == 0 {
                let extra = corpus.poly(&ring, 3, 3);
                root.sum(&Ideal::principal(&extra))?
            } else {
                let mut gens = Vec::new();
                for g in root.gens() {
                    let h = corpus.poly(&ring, 2, 2);
                    gens.push(g.add(&h.mul(&corpus.nonunit_poly(&ring, 3, 2))?)?);
                }
                gens.push(corpus.nonunit_poly(&ring, 2, 2));
                Ideal::new(&ring, gens)?
            };
            if !bracket_power(&j, q)?.contains_ideal(&ideal)? {
                continue;
            }
            seen += 1;
            if !j.contains_ideal(&root)? {
                return Ok(Some(format!("{ideal} ⊆ ({j})^[{}] but root {root} ⊄ J", q.q())));
            }
        }
        // Shrinking any basis element by the variables must lose containment.
        let basis = root.reduced_gb()?.to_vec();
        for k in 0..basis.len() {
            let mut gens: Vec<Polynomial> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect();
            for v in 0..ring.arity() {
                gens.push(basis[k].mul(&Polynomial::var(&ring, v))?);
            }
            let smaller = Ideal::new(&ring, gens)?;
            if smaller.equals(&root)? {
                continue;
            }
            if bracket_power(&smaller, q)?.contains_ideal(&ideal)? {
                return Ok(Some(format!("{ideal} ⊆ ({smaller})^[{}] ⊊ root^[q]", q.q())));
            }
        }
        roots.push(root);
    }
    let twice = frobenius_root(&roots[0], qp)?;
    if !twice.equals(&roots[1])? {
        return Ok(Some(format!("root(root({ideal}, {p}), {p}) = {twice} ≠ {}", roots[1])));
    }
    Ok(None)
}

/// Frobenius roots of random ideals: containment, minimality, composition.
pub fn check_root_oracle(seed: u64, instances: usize, samples: usize) -> Result<CheckLine> {
    let outcomes = (0..instances as u64).into_par_iter().map(|i| root_instance(seed, i, samples)).collect();
    CheckLine::collect("frobenius root oracle", outcomes)
}

fn if_instance(seed: u64, index: u64) -> Result<Option<String>> {
    let mut corpus = Corpus::for_instance(seed, 2, index);
    let p = PRIMES[(index % 3) as usize];
    let ring = two_vars(p);
    let size = corpus.rng().gen_range(2..=4);
    let family: Vec<Ideal> = (0..size).map(|_| corpus.ideal(&ring, 2, 3, 3)).collect();
    let check = if_identity_check(&family, QPower::new(p, p)?)?;
    Ok((!check.holds).then(|| format!("bracket of intersection {} ≠ {}", check.lhs, check.rhs)))
}

/// Bracket powers commute with finite intersections.
pub fn check_intersection_flatness(seed: u64, instances: usize) -> Result<CheckLine> {
    let outcomes = (0..instances as u64).into_par_iter().map(|i| if_instance(seed, i)).collect();
    CheckLine::collect("intersection flatness", outcomes)
}

fn content_ring(index: u64) -> (Ring, SplitContext) {
    let p = PRIMES[(index % 3) as usize];
    if index % 2 == 0 {
        let r = RingContext::grevlex(p, &["x", "y"]).expect("valid ring");
        let s = SplitContext::new(&r, &["y"]).expect("valid split");
        (r, s)
    } else {
        let r = RingContext::grevlex(p, &["x", "u", "v"]).expect("valid ring");
        let s = SplitContext::new(&r, &["u", "v"]).expect("valid split");
        (r, s)
    }
}

fn content_instance(seed: u64, index: u64) -> Result<Option<String>> {
    let mut corpus = Corpus::for_instance(seed, 3, index);
    let (ring, split) = content_ring(index);
    let f = corpus.split_poly(&split, 2, 2, 3);
    let g = corpus.split_poly(&split, 2, 2, 3);
    let combos: Vec<Vec<Polynomial>> =
        (0..2).map(|_| vec![corpus.poly(&ring, 2, 2), corpus.poly(&ring, 2, 2)]).collect();
    let gens = [f.clone(), g.clone()];
    let add = content_additivity_check(&gens, &split, &combos)?;
    if !add.holds {
        return Ok(Some(format!("content of ({f}, {g}): {} ≠ {}", add.lhs, add.rhs)));
    }
    let weak = weak_content_check(&f, &g, &split)?;
    if !weak.holds {
        return Ok(Some(format!("radicals of c({f}*{g}) and c(f)c(g) differ")));
    }
    Ok(None)
}

/// Content additivity and the weak content property on random pairs.
pub fn check_content(seed: u64, instances: usize) -> Result<CheckLine> {
    let outcomes = (0..instances as u64).into_par_iter().map(|i| content_instance(seed, i)).collect();
    CheckLine::collect("content additivity and weak content", outcomes)
}

/// The fixed Gaussian examples: one failure of `c(fg) = c(f)c(g)` and one
/// instance over a principal ideal domain.
pub fn check_gaussian_examples() -> Result<CheckLine> {
    let mut outcomes = Vec::new();
    let r = RingContext::grevlex(5, &["x", "u", "v"])?;
    let s = SplitContext::new(&r, &["u", "v"])?;
    let c = gaussian_check(&parse_poly("u*x+v", &r)?, &parse_poly("v*x+u", &r)?, &s)?;
    outcomes.push(Ok(c.holds.then(|| "(u*x+v)(v*x+u) reported Gaussian".to_string())));
    let r = RingContext::grevlex(5, &["x", "y"])?;
    let s = SplitContext::new(&r, &["y"])?;
    let c = gaussian_check(&parse_poly("y*x+y", &r)?, &parse_poly("y*x-y", &r)?, &s)?;
    outcomes.push(Ok((!c.holds).then(|| "(y*x+y)(y*x-y) reported non-Gaussian".to_string())));
    CheckLine::collect("gaussian examples", outcomes)
}

fn reassembly_instance(seed: u64, index: u64) -> Result<Option<String>> {
    let mut corpus = Corpus::for_instance(seed, 4, index);
    let p = PRIMES[(index % 3) as usize];
    let ring = RingContext::grevlex(p, &["x", "y", "z"])?;
    let f = corpus.poly(&ring, 12, 8);
    let e = corpus.rng().gen_range(1..=2);
    let q = QPower::from_exponent(p, e, u64::MAX)?;
    let back = frobenius_expand(&f, q)?.reassemble(&ring)?;
    Ok((back != f).then(|| format!("{f} reassembles to {back} at q={}", q.q())))
}

/// `f = Σ x^α u_α^q` reassembles exactly.
pub fn check_reassembly(seed: u64, instances: usize) -> Result<CheckLine> {
    let outcomes = (0..instances as u64).into_par_iter().map(|i| reassembly_instance(seed, i)).collect();
    CheckLine::collect("frobenius decomposition reassembly", outcomes)
}

/// `ψ_(s+1)(t) = t ψ_s(t) + 1`.
pub fn check_psi_recurrence(s_max: u32, bases: &[u64]) -> Result<CheckLine> {
    let mut outcomes = Vec::new();
    for &t in bases {
        for s in 0..=s_max {
            let next = psi(s + 1, t)?;
            let expect = psi(s, t)? * t + 1u32;
            outcomes.push(Ok((next != expect).then(|| format!("psi_{}({t}) = {next}", s + 1))));
        }
    }
    CheckLine::collect("psi recurrence", outcomes)
}

/// The HSL power recurrence agrees with fresh exponentiation.
pub fn check_hsl_exponents(s_max: u32) -> Result<CheckLine> {
    let mut outcomes = Vec::new();
    for (p, src, a, beta) in [(2u64, "x^2+y^3", 1u64, 1u32), (3, "x*y+y^2", 2, 1), (2, "x+y^2", 1, 2), (5, "x^2", 1, 1)] {
        let ring = two_vars(p);
        let u = parse_poly(src, &ring)?;
        let spec = FrobeniusActionSpec::new(u.clone(), a, beta)?;
        let seq = exponent_sequence(&spec, s_max)?;
        let base = spec.base()?;
        let ua = u.pow(a)?;
        let mut power = Polynomial::one(&ring);
        for (s, e) in seq.iter().enumerate() {
            if s > 0 {
                power = power.frobenius_power(base)?.mul(&ua)?;
            }
            let fresh = u.pow(spec.exponent(s as u32)?)?;
            let bad = *e != spec.exponent(s as u32)? || power != fresh;
            outcomes.push(Ok(bad.then(|| format!("exponent mismatch for {src} at s={s}"))));
        }
    }
    CheckLine::collect("hsl exponent recurrence", outcomes)
}

/// Sizes for [`run_suite`].
#[derive(Debug, Clone, Copy)]
pub struct SuiteSize {
    pub root_instances: usize,
    pub root_samples: usize,
    pub families: usize,
    pub content_pairs: usize,
    pub reassembly: usize,
}

impl SuiteSize {
    pub const QUICK: SuiteSize =
        SuiteSize { root_instances: 30, root_samples: 4, families: 20, content_pairs: 20, reassembly: 50 };
    pub const FULL: SuiteSize =
        SuiteSize { root_instances: 200, root_samples: 20, families: 100, content_pairs: 100, reassembly: 200 };
}

pub fn run_suite(seed: u64, size: SuiteSize) -> Result<Vec<CheckLine>> {
    Ok(vec![
        check_reassembly(seed, size.reassembly)?,
        check_root_oracle(seed, size.root_instances, size.root_samples)?,
        check_intersection_flatness(seed, size.families)?,
        check_content(seed, size.content_pairs)?,
        check_gaussian_examples()?,
        check_psi_recurrence(20, &[2, 3, 5, 7, 9])?,
        check_hsl_exponents(4)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic() {
        let ring = two_vars(3);
        let a: Vec<Polynomial> = (0..5).map(|_| Corpus::new(7).poly(&ring, 5, 4)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let x = Corpus::for_instance(1, 1, 3).ideal(&ring, 3, 4, 3);
        let y = Corpus::for_instance(1, 1, 3).ideal(&ring, 3, 4, 3);
        assert_eq!(x.gens(), y.gens());
        let z = Corpus::for_instance(1, 1, 4).ideal(&ring, 3, 4, 3);
        assert_ne!(x.gens(), z.gens());
    }

    #[test]
    fn nonunit_has_no_constant() {
        let ring = two_vars(5);
        let mut c = Corpus::new(11);
        for _ in 0..50 {
            let f = c.nonunit_poly(&ring, 3, 4);
            assert!(f.terms().iter().all(|(m, _)| !m.is_one()));
        }
    }

    #[test]
    fn quick_suite_passes() {
        for line in run_suite(2024, SuiteSize { root_instances: 6, root_samples: 2, families: 4, content_pairs: 4, reassembly: 10 }).unwrap() {
            assert!(line.passed(), "{}: {:?}", line.name, line.first_failure);
        }
    }
}
