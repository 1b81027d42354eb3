//! Monomials `x^a y^b` and the three monomial orders used by the engines.

/// A monomial in two variables, `x^a y^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };

    pub fn new(a: u32, b: u32) -> Monomial {
        Monomial { a, b }
    }

    pub fn deg(&self) -> u32 {
        self.a + self.b
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            a: other.a - self.a,
            b: other.b - self.b,
        }
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.a, self.b) {
            (0, 0) => write!(f, "1"),
            (a, b) => {
                match a {
                    0 => {}
                    1 => write!(f, "x")?,
                    _ => write!(f, "x^{a}")?,
                }
                match b {
                    0 => {}
                    1 => write!(f, "y")?,
                    _ => write!(f, "y^{b}")?,
                }
                Ok(())
            }
        }
    }
}

/// The monomial orders on `k[x,y]` / `k[[x,y]]` with `x > y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Pure lexicographic order.
    Lex,
    /// Total degree, ties broken lexicographically.
    DegLex,
    /// Local degree order: *smaller* total degree is greater, ties broken
    /// lexicographically.  This is the order under which leading terms of
    /// power series are well defined.
    LocalDeg,
}

impl OrderKind {
    /// Compares monomials; `Greater` means `lhs` is the more significant term.
    pub fn cmp(&self, lhs: &Monomial, rhs: &Monomial) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let lex = |l: &Monomial, r: &Monomial| match l.a.cmp(&r.a) {
            Ordering::Equal => l.b.cmp(&r.b),
            o => o,
        };
        match self {
            OrderKind::Lex => lex(lhs, rhs),
            OrderKind::DegLex => match lhs.deg().cmp(&rhs.deg()) {
                Ordering::Equal => lex(lhs, rhs),
                o => o,
            },
            OrderKind::LocalDeg => match rhs.deg().cmp(&lhs.deg()) {
                Ordering::Equal => lex(lhs, rhs),
                o => o,
            },
        }
    }

    pub fn max<'m>(&self, lhs: &'m Monomial, rhs: &'m Monomial) -> &'m Monomial {
        if self.cmp(lhs, rhs) == std::cmp::Ordering::Less {
            rhs
        } else {
            lhs
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering::*;

    #[test]
    fn display() {
        assert_eq!(Monomial::new(0, 0).to_string(), "1");
        assert_eq!(Monomial::new(1, 0).to_string(), "x");
        assert_eq!(Monomial::new(0, 2).to_string(), "y^2");
        assert_eq!(Monomial::new(3, 1).to_string(), "x^3y");
    }

    #[test]
    fn local_degree_order() {
        let o = OrderKind::LocalDeg;
        // Lower degree wins.
        assert_eq!(o.cmp(&Monomial::new(1, 0), &Monomial::new(1, 1)), Greater);
        assert_eq!(o.cmp(&Monomial::new(0, 3), &Monomial::new(2, 0)), Less);
        // Equal degree: x beats y.
        assert_eq!(o.cmp(&Monomial::new(2, 1), &Monomial::new(1, 2)), Greater);
        assert_eq!(o.cmp(&Monomial::new(0, 4), &Monomial::new(1, 3)), Less);
        assert_eq!(o.cmp(&Monomial::new(2, 2), &Monomial::new(2, 2)), Equal);
    }

    #[test]
    fn lex_and_deglex() {
        assert_eq!(
            OrderKind::Lex.cmp(&Monomial::new(1, 0), &Monomial::new(0, 9)),
            Greater
        );
        assert_eq!(
            OrderKind::DegLex.cmp(&Monomial::new(1, 0), &Monomial::new(0, 9)),
            Less
        );
        assert_eq!(
            OrderKind::DegLex.cmp(&Monomial::new(2, 1), &Monomial::new(1, 2)),
            Greater
        );
    }

    #[test]
    fn divisibility() {
        let m = Monomial::new(2, 3);
        assert!(Monomial::new(1, 3).divides(&m));
        assert!(!Monomial::new(3, 0).divides(&m));
        assert_eq!(
            Monomial::new(1, 1).quotient_into(&m),
            Monomial::new(1, 2)
        );
    }
}
