//! Exact field elements.
//!
//! Three field families are supported: the rationals, the Gaussian
//! rationals `Q(i)` (the exact stand-in for the complex numbers), and prime
//! fields `F_p`. Every [`Scalar`] carries its field, values are kept in
//! canonical form at all times, so structural equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

use crate::error::{AlgebraError, Result};

/// Largest prime modulus accepted. Residue products are formed in `u128`,
/// the bound only keeps the trial-division primality check cheap.
pub const MAX_MODULUS: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    GaussianRational,
    Prime(u64),
}

impl FieldTag {
    /// Prime field tag, validating the modulus.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) && p < MAX_MODULUS {
            Ok(FieldTag::Prime(p))
        } else {
            Err(AlgebraError::InvalidModulus(p))
        }
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldTag::Prime(p) => Some(p),
            _ => None,
        }
    }

    pub fn characteristic(self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn ensure_same(self, other: FieldTag) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::TagMismatch {
                left: self,
                right: other,
            })
        }
    }

    /// All elements of a prime field in residue order; `None` for infinite fields.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        let p = self.modulus()?;
        Some((0..p).map(|v| Scalar::Prime { value: v, modulus: p }).collect())
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::GaussianRational => write!(f, "Q(i)"),
            FieldTag::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact element of one of the supported fields.
///
/// The derived ordering is a canonical total order used for deterministic
/// sorting; it is not a field ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian { re: BigRational, im: BigRational },
    Prime { value: u64, modulus: u64 },
}

/// The arithmetic operations exposed by [`Scalar::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

impl Scalar {
    pub fn zero(tag: FieldTag) -> Self {
        Self::from_i64(tag, 0)
    }

    pub fn one(tag: FieldTag) -> Self {
        Self::from_i64(tag, 1)
    }

    pub fn from_i64(tag: FieldTag, v: i64) -> Self {
        match tag {
            FieldTag::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldTag::GaussianRational => Scalar::Gaussian {
                re: BigRational::from_integer(v.into()),
                im: BigRational::zero(),
            },
            FieldTag::Prime(p) => Scalar::Prime {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num/den` in the given field. For prime fields the denominator is inverted.
    pub fn from_fraction(tag: FieldTag, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        Self::from_big_rational(tag, BigRational::new(num.into(), den.into()))
    }

    pub fn from_big_rational(tag: FieldTag, q: BigRational) -> Result<Self> {
        Ok(match tag {
            FieldTag::Rational => Scalar::Rational(q),
            FieldTag::GaussianRational => Scalar::Gaussian {
                re: q,
                im: BigRational::zero(),
            },
            FieldTag::Prime(p) => {
                let residue = |n: &BigInt| -> u64 {
                    let r = n % BigInt::from(p);
                    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                    r.try_into().expect("residue fits modulus")
                };
                let num = Self::Prime {
                    value: residue(q.numer()),
                    modulus: p,
                };
                let den = Self::Prime {
                    value: residue(q.denom()),
                    modulus: p,
                };
                num.try_div(&den)?
            }
        })
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Scalar::Gaussian { re, im }
    }

    /// The imaginary unit of `Q(i)`.
    pub fn i() -> Self {
        Scalar::Gaussian {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn tag(&self) -> FieldTag {
        match self {
            Scalar::Rational(_) => FieldTag::Rational,
            Scalar::Gaussian { .. } => FieldTag::GaussianRational,
            Scalar::Prime { modulus, .. } => FieldTag::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gaussian { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.tag())
    }

    /// The value as a rational number when it has no imaginary part.
    /// Prime-field residues are not rational numbers and yield `None`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Gaussian { re, im } if im.is_zero() => Some(re),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.tag().ensure_same(other.tag())?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::Gaussian {
                    re: a + c,
                    im: b + d,
                }
            }
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => unreachable!("tags checked"),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.tag().ensure_same(other.tag())?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::Gaussian {
                    re: a * c - b * d,
                    im: a * d + b * c,
                }
            }
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => unreachable!("tags checked"),
        })
    }

    pub fn try_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Gaussian { re, im } => {
                let norm = re * re + im * im;
                Scalar::Gaussian {
                    re: re / &norm,
                    im: -(im / &norm),
                }
            }
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value, *modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.tag().ensure_same(other.tag())?;
        self.try_mul(&other.try_inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Gaussian { re, im } => Scalar::Gaussian {
                re: -re,
                im: -im,
            },
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    /// Checked binary/unary field operation; unary ops ignore `other`.
    pub fn apply(&self, op: FieldOp, other: &Scalar) -> Result<Scalar> {
        match op {
            FieldOp::Add => self.try_add(other),
            FieldOp::Sub => self.try_sub(other),
            FieldOp::Mul => self.try_mul(other),
            FieldOp::Div => self.try_div(other),
            FieldOp::Neg => Ok(self.neg_ref()),
            FieldOp::Inv => self.try_inv(),
        }
    }

    /// Tag-checked equality.
    pub fn try_eq(&self, other: &Scalar) -> Result<bool> {
        self.tag().ensure_same(other.tag())?;
        Ok(self == other)
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero")
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.tag());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate; the identity outside `Q(i)`.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Gaussian { re, im } => Scalar::Gaussian {
                re: re.clone(),
                im: -im,
            },
            other => other.clone(),
        }
    }

    /// Exact square root inside the field, if one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => rational_sqrt(q).map(Scalar::Rational),
            Scalar::Gaussian { re, im } => {
                if im.is_zero() {
                    if !re.is_negative() {
                        return rational_sqrt(re).map(|r| Scalar::Gaussian {
                            re: r,
                            im: BigRational::zero(),
                        });
                    }
                    return rational_sqrt(&-re).map(|r| Scalar::Gaussian {
                        re: BigRational::zero(),
                        im: r,
                    });
                }
                // (x + iy)^2 = re + i im  =>  x^2 = (re + |z|) / 2, y = im / 2x
                let modulus = rational_sqrt(&(re * re + im * im))?;
                let two = BigRational::from_integer(2.into());
                let x = rational_sqrt(&((re + &modulus) / &two))?;
                let y = im / (&two * &x);
                Some(Scalar::Gaussian { re: x, im: y })
            }
            Scalar::Prime { value, modulus } => {
                (0..*modulus).find_map(|r| {
                    ((r as u128 * r as u128) % *modulus as u128 == *value as u128).then_some(
                        Scalar::Prime {
                            value: r,
                            modulus: *modulus,
                        },
                    )
                })
            }
        }
    }

    /// Parses the text encoding: `-3/4`, `7`, Gaussian forms like `1/2-3i`,
    /// `i`, `-2/3i`. The Unicode minus sign is accepted.
    pub fn parse(text: &str, tag: FieldTag) -> Result<Scalar> {
        let cleaned: String = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        let fail = |reason: &str| AlgebraError::ScalarParse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        if cleaned.is_empty() {
            return Err(fail("empty"));
        }
        if let Some(body) = cleaned.strip_suffix('i') {
            if tag != FieldTag::GaussianRational {
                return Err(fail("imaginary unit outside Q(i)"));
            }
            let split = body
                .char_indices()
                .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
                .map(|(k, _)| k)
                .last();
            let (re_text, im_text) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im_text = match im_text {
                "" | "+" => "1",
                "-" => "-1",
                t => t.strip_prefix('+').unwrap_or(t),
            };
            let re = parse_rational(re_text).ok_or_else(|| fail("bad real part"))?;
            let im = parse_rational(im_text).ok_or_else(|| fail("bad imaginary part"))?;
            return Ok(Scalar::Gaussian { re, im });
        }
        let q = parse_rational(&cleaned).ok_or_else(|| fail("expected an integer or fraction"))?;
        Scalar::from_big_rational(tag, q).map_err(|_| fail("denominator vanishes in this field"))
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.strip_prefix('+').unwrap_or(text);
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
    };
    if !valid(num) || !den.chars().all(|c| c.is_ascii_digit()) || den.is_empty() {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

pub(crate) fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    let mut acc = 1u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => fmt_rational(q, f),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Gaussian { re, im } => {
                if im.is_zero() {
                    return fmt_rational(re, f);
                }
                if !re.is_zero() {
                    fmt_rational(re, f)?;
                    if im.is_positive() {
                        write!(f, "+")?;
                    }
                }
                if im.is_one() {
                } else if *im == -BigRational::one() {
                    write!(f, "-")?;
                } else {
                    fmt_rational(im, f)?;
                }
                write!(f, "i")
            }
        }
    }
}

// Operator impls panic on mismatched fields. Containers guarantee uniform
// tags at construction, so mismatches here are programming errors; use the
// `try_*` methods at untrusted boundaries.

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_fraction(FieldTag::Rational, n, d).unwrap()
    }

    #[test]
    fn rational_normalized_on_construction() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn prime_inverse() {
        let f5 = FieldTag::prime(5).unwrap();
        let two = Scalar::from_i64(f5, 2);
        assert_eq!(two.try_inv().unwrap(), Scalar::from_i64(f5, 3));
        assert_eq!(Scalar::from_i64(f5, -1), Scalar::from_i64(f5, 4));
    }

    #[test]
    fn gaussian_conjugate_product() {
        let g = FieldTag::GaussianRational;
        let a = Scalar::parse("1+1i", g).unwrap();
        let b = Scalar::parse("1-i", g).unwrap();
        assert_eq!(&a * &b, Scalar::from_i64(g, 2));
        assert_eq!(a.conj(), b);
    }

    #[test]
    fn errors() {
        let f5 = FieldTag::prime(5).unwrap();
        assert!(matches!(
            q(1, 1).try_add(&Scalar::one(f5)),
            Err(AlgebraError::TagMismatch { .. })
        ));
        assert_eq!(q(0, 1).try_inv(), Err(AlgebraError::DivisionByZero));
        assert_eq!(q(1, 1).try_div(&q(0, 1)), Err(AlgebraError::DivisionByZero));
        assert_eq!(FieldTag::prime(4), Err(AlgebraError::InvalidModulus(4)));
        assert_eq!(FieldTag::prime(1), Err(AlgebraError::InvalidModulus(1)));
    }

    #[test]
    fn apply_dispatch() {
        let a = q(3, 4);
        let b = q(-1, 2);
        assert_eq!(a.apply(FieldOp::Add, &b).unwrap(), q(1, 4));
        assert_eq!(a.apply(FieldOp::Sub, &b).unwrap(), q(5, 4));
        assert_eq!(a.apply(FieldOp::Mul, &b).unwrap(), q(-3, 8));
        assert_eq!(a.apply(FieldOp::Div, &b).unwrap(), q(-3, 2));
        assert_eq!(a.apply(FieldOp::Neg, &b).unwrap(), q(-3, 4));
        assert_eq!(a.apply(FieldOp::Inv, &b).unwrap(), q(4, 3));
        assert!(a.try_eq(&q(6, 8)).unwrap());
    }

    #[test]
    fn parse_and_print() {
        let g = FieldTag::GaussianRational;
        for text in ["0", "-3/4", "7", "i", "-i", "2i", "1/2-3i", "-1+2/3i"] {
            let s = Scalar::parse(text, g).unwrap();
            assert_eq!(Scalar::parse(&s.to_string(), g).unwrap(), s, "{text}");
        }
        assert_eq!(Scalar::parse("\u{2212}3/4", FieldTag::Rational).unwrap(), q(-3, 4));
        let f5 = FieldTag::prime(5).unwrap();
        assert_eq!(Scalar::parse("1/2", f5).unwrap(), Scalar::from_i64(f5, 3));
        assert!(Scalar::parse("1/5", f5).is_err());
        assert!(Scalar::parse("i", FieldTag::Rational).is_err());
        assert!(Scalar::parse("1/0", FieldTag::Rational).is_err());
        assert!(Scalar::parse("abc", FieldTag::Rational).is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt(), None);
        let g = FieldTag::GaussianRational;
        let minus_one = Scalar::from_i64(g, -1);
        let r = minus_one.sqrt().unwrap();
        assert_eq!(&r * &r, minus_one);
        let z = Scalar::parse("3+4i", g).unwrap();
        let r = z.sqrt().unwrap();
        assert_eq!(&r * &r, z);
        let f7 = FieldTag::prime(7).unwrap();
        assert_eq!(Scalar::from_i64(f7, 3).sqrt(), None);
        let r = Scalar::from_i64(f7, 2).sqrt().unwrap();
        assert_eq!(&r * &r, Scalar::from_i64(f7, 2));
    }
}
