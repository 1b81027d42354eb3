//! A small Buchberger engine for the lex order with `x > y`, used to compare
//! power-series leading-term ideals with their polynomial-ring counterparts.
//!
//! Lex is a well-order on monomials, so division needs no truncation — inputs
//! must be exact polynomials.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, OrderKind};
use crate::poly::{BiPoly, Cap};
use crate::staircase::Staircase;

fn lcm(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial::new(a.a.max(b.a), a.b.max(b.b))
}

fn coprime(a: &Monomial, b: &Monomial) -> bool {
    a.a.min(b.a) == 0 && a.b.min(b.b) == 0
}

/// Full normal form against a list of monic divisors.
fn normal_form(f: &BiPoly, basis: &[BiPoly]) -> Result<BiPoly> {
    let field = f.field();
    let mut work = f.clone();
    let mut rem = BiPoly::zero(field, Cap::Unbounded);
    while !work.is_zero() {
        let (m, c) = work.leading_term(OrderKind::Lex)?;
        let hit = basis
            .iter()
            .find(|g| g.leading_monomial(OrderKind::Lex).is_ok_and(|lt| lt.divides(&m)));
        match hit {
            Some(g) => {
                let lt = g.leading_monomial(OrderKind::Lex)?;
                let q = BiPoly::from_terms(
                    field,
                    Cap::Unbounded,
                    [(lt.quotient_into(&m), c)],
                );
                work = work.sub(&q.mul(g));
            }
            None => {
                let term = BiPoly::from_terms(field, Cap::Unbounded, [(m, c)]);
                rem = rem.add(&term);
                work = work.sub(&term);
            }
        }
    }
    Ok(rem)
}

fn monic(f: &BiPoly) -> Result<BiPoly> {
    let (_, c) = f.leading_term(OrderKind::Lex)?;
    Ok(f.scale(&c.inv()?))
}

/// The reduced lex Gröbner basis (monic, leading terms pairwise nondivisible,
/// tails irreducible), sorted by leading term, lex-greatest first.
pub fn buchberger_lex(gens: &[BiPoly]) -> Result<Vec<BiPoly>> {
    let mut basis: Vec<BiPoly> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if g.cap() != Cap::Unbounded {
            return Err(Error::Precondition(
                "lex Gröbner engine needs exact polynomial input".into(),
            ));
        }
        basis.push(monic(g)?);
    }
    if basis.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..i).map(move |j| (j, i)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let lti = basis[i].leading_monomial(OrderKind::Lex)?;
        let ltj = basis[j].leading_monomial(OrderKind::Lex)?;
        if coprime(&lti, &ltj) {
            continue;
        }
        let l = lcm(&lti, &ltj);
        let mi = BiPoly::monomial(basis[i].field(), Cap::Unbounded, lti.quotient_into(&l));
        let mj = BiPoly::monomial(basis[j].field(), Cap::Unbounded, ltj.quotient_into(&l));
        let s = mi.mul(&basis[i]).sub(&mj.mul(&basis[j]));
        let r = normal_form(&s, &basis)?;
        if !r.is_zero() {
            let r = monic(&r)?;
            basis.push(r);
            let k = basis.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // Minimal generators: drop any element whose leading term is a proper
    // multiple of another's, then collapse repeated leading terms (possible
    // only among the original inputs).
    let lts: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial(OrderKind::Lex))
        .collect::<Result<_>>()?;
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !lts.iter()
                .enumerate()
                .any(|(j, lt)| j != i && lt.divides(&lts[i]) && *lt != lts[i])
        })
        .collect();
    let minimal: Vec<BiPoly> = {
        let mut seen: Vec<Monomial> = Vec::new();
        let mut out = Vec::new();
        for &i in &keep {
            if !seen.contains(&lts[i]) {
                seen.push(lts[i]);
                out.push(basis[i].clone());
            }
        }
        out
    };
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<BiPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(normal_form(g, &others)?);
    }
    reduced.sort_by(|f, g| {
        let a = f.leading_monomial(OrderKind::Lex).expect("nonzero");
        let b = g.leading_monomial(OrderKind::Lex).expect("nonzero");
        OrderKind::Lex.cmp(&b, &a)
    });
    Ok(reduced)
}

/// The staircase of the lex leading-term ideal of the polynomial ideal
/// generated by `gens`; errors when the quotient is not finite-dimensional.
pub fn lt_ideal_lex(gens: &[BiPoly]) -> Result<Staircase> {
    let gb = buchberger_lex(gens)?;
    let lts: Vec<Monomial> = gb
        .iter()
        .map(|g| g.leading_monomial(OrderKind::Lex))
        .collect::<Result<_>>()?;
    if lts.iter().any(|m| m.deg() == 0) {
        return Err(Error::UnitIdeal);
    }
    Staircase::from_generators(&lts)
}
