//! The standard-basis engine for the local degree order: leading-term ideals
//! via truncated linear algebra, Grauert division, `y`-only division against
//! a standard basis, a global lex Buchberger engine, and the contraction of an
//! ideal of `k[[x,y]]` to the polynomial ring.

mod buchberger;
mod division;
mod macaulay;

pub use buchberger::{buchberger_lex, lt_ideal_lex};
pub use division::{grauert_divide, y_divide, DivisionResult};
pub use macaulay::{lt_ideal_local, LtCertificate};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, OrderKind};
use crate::poly::{BiPoly, Cap};
use crate::scalar::FieldTag;
use crate::staircase::Staircase;

/// A finite-colength ideal of `k[[x,y]]`, presented by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    gens: Vec<BiPoly>,
    field: FieldTag,
    cap: Cap,
    socle_hint: Option<u32>,
}

impl IdealPresentation {
    /// Drops zero generators; the remaining list must be nonempty and share
    /// one coefficient field.
    pub fn new(gens: Vec<BiPoly>) -> Result<IdealPresentation> {
        let gens: Vec<BiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let field = gens.first().ok_or(Error::EmptyGenerators)?.field();
        if gens.iter().any(|g| g.field() != field) {
            return Err(Error::ShapeMismatch(
                "generators carry mixed coefficient fields".into(),
            ));
        }
        let cap = gens.iter().fold(Cap::Unbounded, |acc, g| acc.meet(g.cap()));
        Ok(IdealPresentation {
            gens,
            field,
            cap,
            socle_hint: None,
        })
    }

    /// Seeds the leading-term engine's working degree with a known socle degree.
    pub fn with_socle_hint(mut self, s: u32) -> IdealPresentation {
        self.socle_hint = Some(s);
        self
    }

    pub fn gens(&self) -> &[BiPoly] {
        &self.gens
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn cap(&self) -> Cap {
        self.cap
    }

    pub fn socle_hint(&self) -> Option<u32> {
        self.socle_hint
    }
}

/// A standard basis under the local degree order: `t+1` monic elements whose
/// leading terms are exactly the staircase generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardBasis {
    staircase: Staircase,
    elements: Vec<BiPoly>,
    reduced: bool,
}

impl StandardBasis {
    pub fn new(staircase: Staircase, elements: Vec<BiPoly>, reduced: bool) -> Result<StandardBasis> {
        let t = staircase.t();
        if elements.len() != t + 1 {
            return Err(Error::ShapeMismatch(format!(
                "expected {} basis elements for {staircase}, got {}",
                t + 1,
                elements.len()
            )));
        }
        for (i, f) in elements.iter().enumerate() {
            let (mono, c) = f.leading_term(OrderKind::LocalDeg)?;
            let expect = Monomial::new((t - i) as u32, staircase.m(i));
            if mono != expect || !c.is_one() {
                return Err(Error::ShapeMismatch(format!(
                    "element {i} has leading term {}·{mono}, expected monic {expect}",
                    c
                )));
            }
        }
        Ok(StandardBasis {
            staircase,
            elements,
            reduced,
        })
    }

    /// The basis of a monomial ideal: the staircase generators themselves.
    pub fn monomial_basis(staircase: Staircase, field: FieldTag) -> StandardBasis {
        let elements = staircase
            .all_generators()
            .iter()
            .map(|g| BiPoly::monomial(field, Cap::Unbounded, *g))
            .collect();
        StandardBasis {
            staircase,
            elements,
            reduced: true,
        }
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn elements(&self) -> &[BiPoly] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &BiPoly {
        &self.elements[i]
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn field(&self) -> FieldTag {
        self.elements[0].field()
    }

    /// Canonical fingerprint of the presented ideal (valid when reduced:
    /// reduced standard bases are unique).
    pub fn fingerprint(&self) -> String {
        self.elements
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// The unique reduced standard basis: monic rows of the echelon certificate
/// whose pivots are the staircase generators, tails supported outside the
/// leading-term ideal.
pub fn reduced_standard_basis(j: &IdealPresentation) -> Result<StandardBasis> {
    let (staircase, cert) = lt_ideal_local(j)?;
    StandardBasis::new(staircase, cert.basis_rows, true)
}

/// Checks whether `F` is a standard basis: its leading terms must be pairwise
/// distinct staircase generators, and the leading-term ideal of the ideal
/// generated by `F` must equal the staircase they span.
pub fn verify_standard_basis(f: &[BiPoly]) -> Result<bool> {
    let mut lts = Vec::with_capacity(f.len());
    for g in f {
        lts.push(g.leading_monomial(OrderKind::LocalDeg)?);
    }
    let mut sorted = lts.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != lts.len() {
        return Err(Error::ShapeMismatch(
            "duplicate leading terms in candidate basis".into(),
        ));
    }
    let e = Staircase::from_generators(&lts)?;
    let j = IdealPresentation::new(f.to_vec())?.with_socle_hint(e.socle_degree());
    let (actual, _) = lt_ideal_local(&j)?;
    Ok(actual == e)
}

/// Is `v` a lifting of the `j`-th column of the canonical matrix?  The
/// perturbation `n = v − σ^j` must satisfy, componentwise, the strict order
/// bound `Lt(n_i)·x^{t−i+1}y^{m_{i−1}} < x^{t−j+1}y^{m_j}` under the local
/// degree order.
pub fn is_lifting(e: &Staircase, j: usize, v: &[BiPoly]) -> Result<bool> {
    let t = e.t();
    if j < 1 || j > t {
        return Err(Error::IndexOutOfRange(format!(
            "column {j} of a matrix with {t} columns"
        )));
    }
    if v.len() != t + 1 {
        return Err(Error::ShapeMismatch(format!(
            "expected {} components, got {}",
            t + 1,
            v.len()
        )));
    }
    let field = v[0].field();
    let target = Monomial::new((t - j + 1) as u32, e.m(j));
    for i in 1..=t + 1 {
        let mut sigma = BiPoly::zero(field, Cap::Unbounded);
        if i == j {
            sigma = BiPoly::monomial(field, Cap::Unbounded, Monomial::new(0, e.d(j)));
        } else if i == j + 1 {
            sigma = BiPoly::monomial(field, Cap::Unbounded, Monomial::new(1, 0)).neg();
        }
        let n_i = v[i - 1].sub(&sigma);
        if n_i.is_zero() {
            continue;
        }
        let lt = n_i.leading_monomial(OrderKind::LocalDeg)?;
        let weighted = lt.mul(&Monomial::new((t - i + 1) as u32, e.m(i - 1)));
        if OrderKind::LocalDeg.cmp(&weighted, &target) != std::cmp::Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators of `J ∩ P` inside the polynomial ring: the polynomial
/// generators of `J` together with all monomials of degree `s+1` (those not
/// already multiples of a monomial generator are kept).
pub fn contract_to_poly_ring(j: &IdealPresentation) -> Result<Vec<BiPoly>> {
    if j.cap() != Cap::Unbounded {
        return Err(Error::Precondition(
            "contraction needs exact polynomial generators".into(),
        ));
    }
    let (e, _) = lt_ideal_local(j)?;
    let s = e.socle_degree();
    let mono_gens: Vec<Monomial> = j
        .gens()
        .iter()
        .filter(|g| g.num_terms() == 1)
        .map(|g| *g.iter().next().expect("one term").0)
        .collect();
    let mut out = j.gens().to_vec();
    for a in 0..=s + 1 {
        let m = Monomial::new(a, s + 1 - a);
        if mono_gens.iter().any(|g| g.divides(&m)) {
            continue;
        }
        out.push(BiPoly::monomial(j.field(), Cap::Unbounded, m));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    fn polys(list: &[&str]) -> Vec<BiPoly> {
        list.iter()
            .map(|s| parse_poly(s, FieldTag::Q, Cap::Unbounded).unwrap())
            .collect()
    }

    fn ideal(list: &[&str]) -> IdealPresentation {
        IdealPresentation::new(polys(list)).unwrap()
    }

    #[test]
    fn presentation_validation() {
        assert_eq!(
            IdealPresentation::new(vec![]).unwrap_err(),
            Error::EmptyGenerators
        );
        assert_eq!(
            IdealPresentation::new(polys(&["0", "0"])).unwrap_err(),
            Error::EmptyGenerators
        );
        let j = ideal(&["x", "0", "y"]);
        assert_eq!(j.gens().len(), 2);
    }

    #[test]
    fn standard_basis_validation() {
        let e = Staircase::new(vec![0, 1, 3, 5]).unwrap();
        let b = StandardBasis::monomial_basis(e.clone(), FieldTag::Q);
        assert_eq!(b.elements().len(), 4);
        assert_eq!(b.element(0).to_string(), "x^3");
        assert_eq!(b.element(3).to_string(), "y^5");

        // Wrong leading term rejected.
        let bad = StandardBasis::new(e.clone(), polys(&["x^3", "x^2y", "xy^3", "y^4"]), false);
        assert!(bad.is_err());
        // Non-monic rejected.
        let bad2 = StandardBasis::new(e, polys(&["2x^3", "x^2y", "xy^3", "y^5"]), false);
        assert!(bad2.is_err());
    }

    #[test]
    fn verify_standard_basis_examples() {
        // Staircase monomials are a standard basis of themselves.
        assert!(verify_standard_basis(&polys(&["x^3", "x^2y", "xy^3", "y^5"])).unwrap());
        // y·(x²+y²) − (x+y)·xy = y³ escapes the claimed staircase (0,1,5).
        assert!(!verify_standard_basis(&polys(&["x^2+y^2", "xy", "y^5"])).unwrap());
        // Lt(x²+y) = y under the local order: no pure x-power among the Lt's.
        assert!(matches!(
            verify_standard_basis(&polys(&["x^2+y", "y^2"])),
            Err(Error::NotZeroDimensional(_))
        ));
        let dup = verify_standard_basis(&polys(&["x^2+y^3", "x^2+x^3"]));
        assert!(dup.is_err());
    }

    #[test]
    fn lifting_predicate() {
        let e = Staircase::new(vec![0, 1, 3, 5]).unwrap();
        // σ^2 itself: (0, y², −x, 0).
        let sigma2 = polys(&["0", "y^2", "-x", "0"]);
        assert!(is_lifting(&e, 2, &sigma2).unwrap());
        // Perturb component 1 by y^{u_{1,2}} = y²: order bound violated by one.
        let bad = polys(&["y^2", "y^2", "-x", "0"]);
        assert!(!is_lifting(&e, 2, &bad).unwrap());
        // Perturb component 1 by y^{u_{1,2}+1} = y³: allowed.
        let good = polys(&["y^3", "y^2", "-x", "0"]);
        assert!(is_lifting(&e, 2, &good).unwrap());
        assert!(is_lifting(&e, 0, &sigma2).is_err());
        assert!(is_lifting(&e, 4, &sigma2).is_err());
    }

    #[test]
    fn contraction_adds_socle_monomials() {
        let j = ideal(&["x", "y"]);
        let c = contract_to_poly_ring(&j).unwrap();
        // s = 0; degree-1 monomials x, y are already generator multiples.
        assert_eq!(c, polys(&["x", "y"]));

        let j2 = ideal(&["x^2", "xy", "y^2"]);
        let c2 = contract_to_poly_ring(&j2).unwrap();
        assert_eq!(c2.len(), 3); // all degree-2 monomials are generator multiples

        // Non-monomial generators: all non-redundant socle+1 monomials appear.
        let j3 = ideal(&["x^2+y^3", "xy-y^4", "y^5"]);
        let c3 = contract_to_poly_ring(&j3).unwrap();
        // s = 4; the five degree-5 monomials other than y^5 are appended.
        assert_eq!(c3.len(), 8);
    }
}
