//! Univariate polynomials/series in `y`: the entries of deformation matrices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{BiPoly, Cap};
use crate::scalar::{FieldTag, Scalar};

/// A sparse polynomial in `y` alone, with the same cap semantics as [`BiPoly`].
#[derive(Debug, Clone)]
pub struct YPoly {
    field: FieldTag,
    cap: Cap,
    terms: BTreeMap<u32, Scalar>,
}

impl PartialEq for YPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}
impl Eq for YPoly {}

impl YPoly {
    pub fn zero(field: FieldTag, cap: Cap) -> YPoly {
        YPoly {
            field,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(field: FieldTag, cap: Cap, k: u32, c: Scalar) -> YPoly {
        let mut p = YPoly::zero(field, cap);
        p.add_assign_term(k, &c);
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

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: u32) -> Scalar {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn add_assign_term(&mut self, k: u32, c: &Scalar) {
        if c.is_zero() || !self.cap.admits(k) {
            return;
        }
        match self.terms.entry(k) {
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

    pub fn add(&self, other: &YPoly) -> YPoly {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        let cap = self.cap.meet(other.cap);
        let mut out = YPoly {
            field: self.field,
            cap,
            terms: self.terms.clone(),
        };
        out.terms.retain(|k, _| cap.admits(*k));
        for (k, c) in &other.terms {
            out.add_assign_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &YPoly) -> YPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> YPoly {
        YPoly {
            field: self.field,
            cap: self.cap,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> YPoly {
        if c.is_zero() {
            return YPoly::zero(self.field, self.cap);
        }
        YPoly {
            field: self.field,
            cap: self.cap,
            terms: self.terms.iter().map(|(k, a)| (*k, a.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &YPoly) -> YPoly {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        let cap = self.cap.meet(other.cap);
        let mut out = YPoly::zero(self.field, cap);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_assign_term(k1 + k2, &c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_ypow(&self, d: u32) -> YPoly {
        let mut out = YPoly::zero(self.field, self.cap);
        for (k, c) in &self.terms {
            out.add_assign_term(k + d, c);
        }
        out
    }

    /// Order in `y`: the least exponent present, if any.
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn deg(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Splits `self = r + y^d·q` with `deg r < d`; returns `(r, q)`.
    pub fn split_at(&self, d: u32) -> (YPoly, YPoly) {
        let mut r = YPoly::zero(self.field, self.cap);
        let mut q = YPoly::zero(self.field, Cap::Unbounded);
        for (k, c) in &self.terms {
            if *k < d {
                r.add_assign_term(*k, c);
            } else {
                q.add_assign_term(k - d, c);
            }
        }
        (r, q)
    }

    pub fn truncate(&self, d: u32) -> YPoly {
        let cap = self.cap.meet(Cap::Finite(d));
        YPoly {
            field: self.field,
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| cap.admits(**k))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn with_cap(&self, cap: Cap) -> YPoly {
        YPoly {
            field: self.field,
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| cap.admits(**k))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn to_bipoly(&self) -> BiPoly {
        BiPoly::from_terms(
            self.field,
            self.cap,
            self.terms
                .iter()
                .map(|(k, c)| (Monomial::new(0, *k), c.clone())),
        )
    }

    /// Converts a pure-`y` bivariate polynomial; errors if `x` occurs.
    pub fn from_bipoly(p: &BiPoly) -> Result<YPoly> {
        if !p.is_pure_y() {
            return Err(Error::Internal(format!(
                "expected a polynomial in y alone, got {p}"
            )));
        }
        let mut out = YPoly::zero(p.field(), p.cap());
        for (m, c) in p.iter() {
            out.add_assign_term(m.b, c);
        }
        Ok(out)
    }
}

impl std::fmt::Display for YPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_bipoly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yp(s: &str) -> YPoly {
        YPoly::from_bipoly(&crate::parser::parse_poly(s, FieldTag::Q, Cap::Unbounded).unwrap())
            .unwrap()
    }

    #[test]
    fn split() {
        let p = yp("1+y^2+2y^5");
        let (r, q) = p.split_at(3);
        assert_eq!(r, yp("1+y^2"));
        assert_eq!(q, yp("2y^2"));
        assert_eq!(r.add(&q.mul_ypow(3)), p);
    }

    #[test]
    fn arithmetic_and_ord() {
        let p = yp("y+y^3");
        assert_eq!(p.ord(), Some(1));
        assert_eq!(p.deg(), Some(3));
        assert_eq!(p.mul(&yp("y")), yp("y^2+y^4"));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.mul_ypow(2), yp("y^3+y^5"));
    }

    #[test]
    fn bipoly_roundtrip() {
        let p = yp("1-2y^4");
        assert_eq!(YPoly::from_bipoly(&p.to_bipoly()).unwrap(), p);
        let bad = crate::parser::parse_poly("x+y", FieldTag::Q, Cap::Unbounded).unwrap();
        assert!(YPoly::from_bipoly(&bad).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(yp("y^2-y").to_string(), "y^2-y");
        assert_eq!(YPoly::zero(FieldTag::Q, Cap::Unbounded).to_string(), "0");
    }
}
