//! Coefficient fields: the rationals and prime fields `F_p` for `p < 2^31`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldTag {
    /// The rational numbers.
    Q,
    /// The prime field with `p` elements.
    Fp(u32),
}

impl FieldTag {
    /// Validates `p` and builds the prime-field tag.
    pub fn fp(p: u64) -> Result<FieldTag> {
        if p >= (1 << 31) || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldTag::Fp(p as u32))
    }

    /// Accepts `q`/`Q` for the rationals or `p=NNN` for a prime field.
    pub fn parse(s: &str) -> Result<FieldTag> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldTag::Q);
        }
        if let Some(rest) = s.strip_prefix("p=") {
            let p: u64 = rest.trim().parse().map_err(|_| Error::Parse {
                pos: 2,
                msg: format!("expected a prime after `p=`, got `{rest}`"),
            })?;
            return FieldTag::fp(p);
        }
        Err(Error::Parse {
            pos: 0,
            msg: format!("expected `q` or `p=NNN`, got `{s}`"),
        })
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

/// An element of the active coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u32, v: u32 },
}

impl Scalar {
    pub fn zero(tag: FieldTag) -> Scalar {
        match tag {
            FieldTag::Q => Scalar::Q(BigRational::zero()),
            FieldTag::Fp(p) => Scalar::Fp { p, v: 0 },
        }
    }

    pub fn one(tag: FieldTag) -> Scalar {
        match tag {
            FieldTag::Q => Scalar::Q(BigRational::one()),
            FieldTag::Fp(p) => Scalar::Fp { p, v: 1 },
        }
    }

    pub fn from_int(tag: FieldTag, n: i64) -> Scalar {
        match tag {
            FieldTag::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldTag::Fp(p) => {
                let v = n.rem_euclid(p as i64) as u32;
                Scalar::Fp { p, v }
            }
        }
    }

    /// Builds `num/den` in the field; in `F_p` the denominator must be invertible.
    pub fn from_ratio(tag: FieldTag, num: BigInt, den: BigUint) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match tag {
            FieldTag::Q => Ok(Scalar::Q(BigRational::new(num, BigInt::from(den)))),
            FieldTag::Fp(p) => {
                let pn = BigInt::from(p);
                let n = ((num % &pn) + &pn) % &pn;
                let d = BigInt::from(den % BigUint::from(p));
                let n = n.to_u32().expect("reduced residue fits in u32");
                let d = d.to_u32().expect("reduced residue fits in u32");
                let num_el = Scalar::Fp { p, v: n };
                let den_el = Scalar::Fp { p, v: d };
                if d == 0 {
                    return Err(Error::NotInvertible(den_el.to_string(), p));
                }
                num_el.div(&den_el)
            }
        }
    }

    /// Re-expresses the element in another field.  Only the identity and the
    /// reduction from `Q` to `F_p` are defined; the latter fails when the
    /// denominator vanishes modulo `p`.
    pub fn convert(&self, tag: FieldTag) -> Result<Scalar> {
        match (self, tag) {
            _ if self.tag() == tag => Ok(self.clone()),
            (Scalar::Q(r), FieldTag::Fp(_)) => Scalar::from_ratio(
                tag,
                r.numer().clone(),
                r.denom()
                    .to_biguint()
                    .expect("normalized denominator is positive"),
            ),
            _ => Err(Error::ShapeMismatch(
                "no canonical map between these coefficient fields".into(),
            )),
        }
    }

    pub fn tag(&self) -> FieldTag {
        match self {
            Scalar::Q(_) => FieldTag::Q,
            Scalar::Fp { p, .. } => FieldTag::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp {
                    p: *p,
                    v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp {
                    p: *p,
                    v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Q(a) => Ok(Scalar::Q(a.recip())),
            Scalar::Fp { p, v } => Ok(Scalar::Fp {
                p: *p,
                v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32,
            }),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Uniform nonzero-or-zero element of `F_p` (all `p` residues equally likely).
    pub fn random_fp(p: u32, rng: &mut impl rand::Rng) -> Scalar {
        Scalar::Fp {
            p,
            v: rng.gen_range(0..p),
        }
    }

    /// Canonical token for hashing/printing: reduced `a/b` over Q, residue in `F_p`.
    pub fn token(&self) -> String {
        self.to_string()
    }

    /// Parses `int` or `int/uint` literals, e.g. `-3/4`.
    pub fn parse(tag: FieldTag, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num_str.parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("bad numerator `{num_str}`"),
        })?;
        let den: BigUint = match den_str {
            Some(d) => d.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad denominator `{d}`"),
            })?,
            None => BigUint::from(1u32),
        };
        Scalar::from_ratio(tag, num, den)
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().magnitude(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Deterministic Miller-Rabin, exact for every `n < 3_215_031_751`.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldTag::fp(2).is_ok());
        assert!(FieldTag::fp(3).is_ok());
        assert!(FieldTag::fp(2147483647).is_ok());
        assert_eq!(FieldTag::fp(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldTag::fp(4), Err(Error::NotPrime(4)));
        assert_eq!(FieldTag::fp(91), Err(Error::NotPrime(91)));
        assert_eq!(FieldTag::fp(1 << 31), Err(Error::NotPrime(1 << 31)));
    }

    #[test]
    fn field_tag_parse() {
        assert_eq!(FieldTag::parse("q").unwrap(), FieldTag::Q);
        assert_eq!(FieldTag::parse("Q").unwrap(), FieldTag::Q);
        assert_eq!(FieldTag::parse("p=7").unwrap(), FieldTag::Fp(7));
        assert!(FieldTag::parse("p=8").is_err());
        assert!(FieldTag::parse("r=7").is_err());
    }

    #[test]
    fn rational_arithmetic() {
        let tag = FieldTag::Q;
        let half = Scalar::from_ratio(tag, BigInt::from(1), BigUint::from(2u32)).unwrap();
        let third = Scalar::from_ratio(tag, BigInt::from(1), BigUint::from(3u32)).unwrap();
        let sum = half.add(&third);
        assert_eq!(sum.to_string(), "5/6");
        assert_eq!(half.mul(&third).to_string(), "1/6");
        assert_eq!(half.sub(&half), Scalar::zero(tag));
        assert_eq!(half.inv().unwrap().to_string(), "2");
        assert_eq!(
            Scalar::from_int(tag, -3)
                .div(&Scalar::from_int(tag, 6))
                .unwrap()
                .to_string(),
            "-1/2"
        );
    }

    #[test]
    fn prime_field_arithmetic() {
        let tag = FieldTag::fp(5).unwrap();
        let a = Scalar::from_int(tag, 3);
        let b = Scalar::from_int(tag, 4);
        assert_eq!(a.add(&b), Scalar::from_int(tag, 2));
        assert_eq!(a.mul(&b), Scalar::from_int(tag, 2));
        assert_eq!(a.neg(), Scalar::from_int(tag, 2));
        assert_eq!(a.inv().unwrap(), Scalar::from_int(tag, 2));
        assert_eq!(Scalar::from_int(tag, -1), Scalar::from_int(tag, 4));
        assert_eq!(Scalar::zero(tag).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn scalar_parse() {
        let q = FieldTag::Q;
        assert_eq!(Scalar::parse(q, "-3/4").unwrap().to_string(), "-3/4");
        assert_eq!(Scalar::parse(q, " 7 ").unwrap(), Scalar::from_int(q, 7));
        assert_eq!(Scalar::parse(q, "6/4").unwrap().to_string(), "3/2");
        let f5 = FieldTag::fp(5).unwrap();
        assert_eq!(Scalar::parse(f5, "-1").unwrap(), Scalar::from_int(f5, 4));
        assert!(Scalar::parse(q, "a").is_err());
        assert!(Scalar::parse(q, "1/0").is_err());
    }

    #[test]
    fn ratio_reduction_mod_p() {
        let tag = FieldTag::fp(5).unwrap();
        let x = Scalar::from_ratio(tag, BigInt::from(7), BigUint::from(3u32)).unwrap();
        // 7 = 2 and 1/3 = 2 mod 5, so 7/3 = 4.
        assert_eq!(x, Scalar::from_int(tag, 4));
        let bad = Scalar::from_ratio(tag, BigInt::from(1), BigUint::from(10u32));
        assert_eq!(bad, Err(Error::NotInvertible("0".into(), 5)));
    }
}
