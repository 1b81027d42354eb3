//! Division with remainder against a standard basis, working modulo
//! `m^{cap+1}`.
//!
//! Under a local order, division by nonmonomial divisors need not terminate
//! exactly (quotients are honest power series), so both routines take an
//! explicit truncation degree.  Terms are processed greatest-first under the
//! local degree order; every step replaces the current greatest term with
//! strictly smaller ones, so each pass over the finitely many monomials of
//! degree ≤ cap terminates.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, OrderKind};
use crate::poly::{BiPoly, Cap};
use crate::ypoly::YPoly;

use super::StandardBasis;

/// The outcome of a Grauert division: `f ≡ Σ qᵢ·fᵢ + r (mod m^{cap+1})`,
/// with no remainder term divisible by a basis leading term.
#[derive(Debug, Clone)]
pub struct DivisionResult {
    pub quotients: Vec<BiPoly>,
    pub remainder: BiPoly,
}

fn guard(f: &BiPoly, basis: &StandardBasis, cap: u32) -> Result<()> {
    if f.field() != basis.field() {
        return Err(Error::ShapeMismatch(
            "dividend and basis carry different coefficient fields".into(),
        ));
    }
    f.cap().at_least(cap)?;
    for g in basis.elements() {
        g.cap().at_least(cap)?;
    }
    Ok(())
}

/// Divides `f` by a standard basis modulo `m^{cap+1}`.  The divisor for each
/// term is the greatest dividing leading term under the local degree order,
/// which makes the result independent of basis element order.  Remainder
/// terms lie outside the staircase, so for exact `f` and `cap ≥ s+1` a zero
/// remainder is equivalent to ideal membership.
pub fn grauert_divide(f: &BiPoly, basis: &StandardBasis, cap: u32) -> Result<DivisionResult> {
    guard(f, basis, cap)?;
    let field = f.field();
    let e = basis.staircase();
    let t = e.t();
    let lts: Vec<Monomial> = (0..=t)
        .map(|i| Monomial::new((t - i) as u32, e.m(i)))
        .collect();
    let mut quotients: Vec<BiPoly> = lts
        .iter()
        .map(|lt| BiPoly::zero(field, Cap::Finite(cap.saturating_sub(lt.deg()))))
        .collect();
    let mut remainder = BiPoly::zero(field, Cap::Finite(cap));
    let mut work = f.truncate(cap);
    while !work.is_zero() {
        let (m, c) = work.leading_term(OrderKind::LocalDeg)?;
        let mut divisor: Option<usize> = None;
        for (i, lt) in lts.iter().enumerate() {
            if lt.divides(&m)
                && divisor.is_none_or(|j| {
                    OrderKind::LocalDeg.cmp(lt, &lts[j]) == Ordering::Greater
                })
            {
                divisor = Some(i);
            }
        }
        let term = BiPoly::from_terms(field, Cap::Unbounded, [(m, c.clone())]);
        match divisor {
            None => {
                remainder = remainder.add(&term);
                work = work.sub(&term);
            }
            Some(i) => {
                let q = BiPoly::from_terms(
                    field,
                    Cap::Unbounded,
                    [(lts[i].quotient_into(&m), c)],
                );
                quotients[i] = quotients[i].add(&q);
                work = work.sub(&q.mul(basis.element(i))).truncate(cap);
            }
        }
    }
    Ok(DivisionResult {
        quotients,
        remainder,
    })
}

/// Expresses `f` as `Σ Qᵢ(y)·fᵢ (mod m^{cap+1})` with quotients in `y` alone,
/// reducing each greatest term by the unique basis element sharing its
/// `x`-exponent.  Requires every term's `x`-exponent to be at most `t`;
/// fails with [`Error::NotInIdeal`] when a term falls outside the staircase.
pub fn y_divide(f: &BiPoly, basis: &StandardBasis, cap: u32) -> Result<Vec<YPoly>> {
    guard(f, basis, cap)?;
    let field = f.field();
    let e = basis.staircase();
    let t = e.t();
    let mut work = f.truncate(cap);
    if let Some(m) = work.iter().map(|(m, _)| *m).find(|m| m.a > t as u32) {
        return Err(Error::Precondition(format!(
            "y-division needs x-exponents ≤ {t}, found {m}"
        )));
    }
    let mut quotients: Vec<YPoly> = (0..=t)
        .map(|i| {
            let lt_deg = (t - i) as u32 + e.m(i);
            YPoly::zero(field, Cap::Finite(cap.saturating_sub(lt_deg)))
        })
        .collect();
    while !work.is_zero() {
        let (m, c) = work.leading_term(OrderKind::LocalDeg)?;
        let i = t - m.a as usize;
        if m.b < e.m(i) {
            return Err(Error::NotInIdeal);
        }
        let k = m.b - e.m(i);
        quotients[i].add_assign_term(k, &c);
        let q = BiPoly::from_terms(field, Cap::Unbounded, [(Monomial::new(0, k), c)]);
        work = work.sub(&q.mul(basis.element(i))).truncate(cap);
    }
    Ok(quotients)
}
