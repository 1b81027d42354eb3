//! Sparse bivariate polynomials over an exact field, with optional degree caps.
//!
//! A cap of `Finite(D)` means the object represents a power series known only
//! up to total degree `D`; every operation drops terms above the cap of its
//! result (the meet of the operand caps).  `Unbounded` objects are honest
//! polynomials and all arithmetic on them is exact.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, OrderKind};
use crate::scalar::{FieldTag, Scalar};

/// Truncation state of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cap {
    Finite(u32),
    Unbounded,
}

impl Cap {
    /// The coarser of two caps: finite beats unbounded, smaller beats larger.
    pub fn meet(self, other: Cap) -> Cap {
        match (self, other) {
            (Cap::Unbounded, c) | (c, Cap::Unbounded) => c,
            (Cap::Finite(a), Cap::Finite(b)) => Cap::Finite(a.min(b)),
        }
    }

    pub fn admits(self, deg: u32) -> bool {
        match self {
            Cap::Unbounded => true,
            Cap::Finite(d) => deg <= d,
        }
    }

    pub fn at_least(self, need: u32) -> Result<()> {
        match self {
            Cap::Unbounded => Ok(()),
            Cap::Finite(d) if d >= need => Ok(()),
            Cap::Finite(d) => Err(Error::CapTooSmall { have: d, need }),
        }
    }
}

/// A sparse polynomial (or truncated power series) in `x` and `y`.
///
/// Equality compares field and coefficients only, not caps.
#[derive(Debug, Clone)]
pub struct BiPoly {
    field: FieldTag,
    cap: Cap,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}
impl Eq for BiPoly {}

impl BiPoly {
    pub fn zero(field: FieldTag, cap: Cap) -> BiPoly {
        BiPoly {
            field,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldTag, cap: Cap, c: Scalar) -> BiPoly {
        Self::from_terms(field, cap, [(Monomial::ONE, c)])
    }

    pub fn one(field: FieldTag, cap: Cap) -> BiPoly {
        Self::constant(field, cap, Scalar::one(field))
    }

    pub fn monomial(field: FieldTag, cap: Cap, m: Monomial) -> BiPoly {
        Self::from_terms(field, cap, [(m, Scalar::one(field))])
    }

    pub fn from_terms(
        field: FieldTag,
        cap: Cap,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> BiPoly {
        let mut p = BiPoly::zero(field, cap);
        for (m, c) in terms {
            p.add_assign_term(&m, &c);
        }
        p
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn cap(&self) -> Cap {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lex order on (x-exponent, y-exponent).
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Accumulates `c·m`, respecting the cap and dropping cancelled terms.
    pub fn add_assign_term(&mut self, m: &Monomial, c: &Scalar) {
        if c.is_zero() || !self.cap.admits(m.deg()) {
            return;
        }
        match self.terms.entry(*m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        let cap = self.cap.meet(other.cap);
        let mut out = BiPoly {
            field: self.field,
            cap,
            terms: self.terms.clone(),
        };
        out.terms.retain(|m, _| cap.admits(m.deg()));
        for (m, c) in &other.terms {
            out.add_assign_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            field: self.field,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero(self.field, self.cap);
        }
        BiPoly {
            field: self.field,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.mul(c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> BiPoly {
        let mut out = BiPoly::zero(self.field, self.cap);
        for (k, c) in &self.terms {
            out.add_assign_term(&k.mul(m), c);
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> BiPoly {
        self.mul_monomial(m).scale(c)
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        let cap = self.cap.meet(other.cap);
        let mut out = BiPoly::zero(self.field, cap);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_assign_term(&m1.mul(m2), &c1.mul(c2));
            }
        }
        out
    }

    /// Drops terms of total degree above `d`; the result's cap records `d`
    /// unless an even lower cap was already in force.
    pub fn truncate(&self, d: u32) -> BiPoly {
        let cap = self.cap.meet(Cap::Finite(d));
        BiPoly {
            field: self.field,
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| cap.admits(m.deg()))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the stored terms under a different cap, truncating if the
    /// new cap is lower.  Raising a cap asserts that the object is exact.
    pub fn with_cap(&self, cap: Cap) -> BiPoly {
        BiPoly {
            field: self.field,
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| cap.admits(m.deg()))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The order: minimal total degree of a term, if any.
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::deg).min()
    }

    /// Maximal total degree of a term, if any.
    pub fn deg(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::deg).max()
    }

    pub fn leading_term(&self, order: OrderKind) -> Result<(Monomial, Scalar)> {
        let mut best: Option<&Monomial> = None;
        for m in self.terms.keys() {
            best = Some(match best {
                None => m,
                Some(b) => order.max(b, m),
            });
        }
        let m = best.ok_or(Error::ZeroPolynomial)?;
        Ok((*m, self.terms[m].clone()))
    }

    pub fn leading_monomial(&self, order: OrderKind) -> Result<Monomial> {
        Ok(self.leading_term(order)?.0)
    }

    pub fn make_monic(&self, order: OrderKind) -> Result<BiPoly> {
        let (_, c) = self.leading_term(order)?;
        Ok(self.scale(&c.inv()?))
    }

    /// Applies the linear substitution `x ↦ a·x + b·y`, `y ↦ c·x + d·y`.
    pub fn substitute_linear(&self, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> BiPoly {
        let cap = self.cap;
        let fx = BiPoly::from_terms(
            self.field,
            cap,
            [
                (Monomial::new(1, 0), a.clone()),
                (Monomial::new(0, 1), b.clone()),
            ],
        );
        let fy = BiPoly::from_terms(
            self.field,
            cap,
            [
                (Monomial::new(1, 0), c.clone()),
                (Monomial::new(0, 1), d.clone()),
            ],
        );
        let max_a = self.terms.keys().map(|m| m.a).max().unwrap_or(0);
        let max_b = self.terms.keys().map(|m| m.b).max().unwrap_or(0);
        let mut xpows = Vec::with_capacity(max_a as usize + 1);
        let mut ypows = Vec::with_capacity(max_b as usize + 1);
        xpows.push(BiPoly::one(self.field, cap));
        ypows.push(BiPoly::one(self.field, cap));
        for i in 1..=max_a as usize {
            let next = xpows[i - 1].mul(&fx);
            xpows.push(next);
        }
        for j in 1..=max_b as usize {
            let next = ypows[j - 1].mul(&fy);
            ypows.push(next);
        }
        let mut out = BiPoly::zero(self.field, cap);
        for (m, coeff) in &self.terms {
            let term = xpows[m.a as usize].mul(&ypows[m.b as usize]).scale(coeff);
            out = out.add(&term);
        }
        out
    }

    /// True when no term involves `x`.
    pub fn is_pure_y(&self) -> bool {
        self.terms.keys().all(|m| m.a == 0)
    }

    /// Canonical token usable for hashing and comparison across runs.
    pub fn token(&self) -> String {
        self.to_string()
    }
}

impl std::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = match c {
                Scalar::Q(r) => {
                    if num_traits::Signed::is_negative(r) {
                        (true, c.neg())
                    } else {
                        (false, c.clone())
                    }
                }
                Scalar::Fp { .. } => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}{m}")?;
            }
        }
        Ok(())
    }
}
