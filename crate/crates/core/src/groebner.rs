//! Buchberger's algorithm, normal forms and F_p-linear echelon forms.
//!
//! Pair selection is the normal strategy: the pending pair with the
//! smallest lcm (total degree first, then the ring order, then indices) is
//! treated first. Pairs are discarded by the product criterion and by
//! Buchberger's chain criterion.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use crate::error::Result;
use crate::poly::{fp, Polynomial};
use crate::ring::{Monomial, Ring};

/// Fully reduces `f` modulo `basis` (every term, not only the head).
/// Basis elements need not be monic but must be nonzero.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let p = f.p();
    let mut cur = f.clone();
    let mut i = 0;
    while i < cur.len() {
        let (m, c) = cur.terms()[i].clone();
        let divisor = basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let shift = lm.quotient_of(&m).unwrap();
                let coef = fp::mul(c, fp::inv(*lc, p), p);
                // Terms above index i are untouched; term i cancels.
                cur = cur.axpy(p - coef, &shift, g);
            }
            None => i += 1,
        }
    }
    cur
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn pair_cmp(ring: &Ring, a: &Pair, b: &Pair) -> Ordering {
    a.lcm
        .degree()
        .cmp(&b.lcm.degree())
        .then_with(|| ring.cmp_monomials(&a.lcm, &b.lcm))
        .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Result<Polynomial> {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let p = f.p();
    let a = f.mul_term(&fm.quotient_of(lcm).unwrap(), fp::inv(*fc, p))?;
    let b = g.mul_term(&gm.quotient_of(lcm).unwrap(), fp::inv(*gc, p))?;
    a.sub(&b)
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic and sorted
/// by increasing leading monomial. The zero ideal gives an empty basis.
pub fn reduced_groebner_basis(ring: &Ring, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        let g = g.monic();
        if !basis.contains(&g) {
            basis.push(g);
        }
    }
    if basis.is_empty() {
        return Ok(basis);
    }

    let mut pending: Vec<Pair> = Vec::new();
    let mut treated: HashSet<(usize, usize)> = HashSet::new();
    let lm = |b: &Vec<Polynomial>, k: usize| b[k].leading_monomial().unwrap().clone();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.push(Pair { i, j, lcm: lm(&basis, i).lcm(&lm(&basis, j)) });
        }
    }

    while !pending.is_empty() {
        let best = (0..pending.len())
            .min_by(|&a, &b| pair_cmp(ring, &pending[a], &pending[b]))
            .unwrap();
        let pair = pending.swap_remove(best);
        treated.insert((pair.i, pair.j));
        let (li, lj) = (lm(&basis, pair.i), lm(&basis, pair.j));
        if li.is_coprime(&lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && lm(&basis, k).divides(&pair.lcm)
                && treated.contains(&(pair.i.min(k), pair.i.max(k)))
                && treated.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], &pair.lcm)?;
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        let r = r.monic();
        let new = basis.len();
        let rl = r.leading_monomial().unwrap().clone();
        basis.push(r);
        for k in 0..new {
            pending.push(Pair { i: k, j: new, lcm: lm(&basis, k).lcm(&rl) });
        }
    }

    Ok(reduce_basis(basis))
}

/// Turns a Gröbner basis into the reduced one.
fn reduce_basis(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let glm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let hlm = h.leading_monomial().unwrap();
            l != k && hlm.divides(glm) && (hlm != glm || l < k)
        });
        if !redundant {
            minimal.push(g.monic());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
        reduced.push(normal_form(&minimal[k], &others));
    }
    sort_by_head(&mut reduced);
    reduced
}

pub(crate) fn sort_by_head(polys: &mut [Polynomial]) {
    polys.sort_by(|a, b| match (a.leading_monomial(), b.leading_monomial()) {
        (Some(x), Some(y)) => a.ring().cmp_monomials(x, y),
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
    });
}

/// Reduced row echelon basis of the F_p-span of `polys`, sorted by
/// increasing leading monomial. Generates the same ideal as `polys`.
pub fn linear_basis(polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut rows: HashMap<Monomial, Polynomial> = HashMap::new();
    for f in polys {
        let v = reduce_against_rows(f, &rows);
        if let Some(lm) = v.leading_monomial() {
            rows.insert(lm.clone(), v.monic());
        }
    }
    let mut pivots: Vec<Monomial> = rows.keys().cloned().collect();
    if let Some(f) = polys.first() {
        let ring = f.ring().clone();
        pivots.sort_by(|a, b| ring.cmp_monomials(a, b));
    }
    // Back substitution from the smallest pivot upward.
    let mut done: HashMap<Monomial, Polynomial> = HashMap::new();
    let mut out = Vec::with_capacity(pivots.len());
    for m in pivots {
        let row = rows.remove(&m).unwrap();
        let reduced = reduce_against_rows(&row, &done);
        done.insert(m, reduced.clone());
        out.push(reduced);
    }
    out
}

/// Eliminates every term of `f` whose monomial is a pivot in `rows`; the
/// rows are monic with their pivot as leading monomial.
fn reduce_against_rows(f: &Polynomial, rows: &HashMap<Monomial, Polynomial>) -> Polynomial {
    let p = f.p();
    let one = Monomial::one(f.ring().arity());
    let mut v = f.clone();
    let mut i = 0;
    while i < v.len() {
        let (m, c) = &v.terms()[i];
        match rows.get(m) {
            Some(row) if row.leading_monomial() == Some(m) => {
                let c = *c;
                v = v.axpy(p - c, &one, row);
            }
            _ => i += 1,
        }
    }
    v
}
