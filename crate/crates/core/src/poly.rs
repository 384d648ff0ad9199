//! Dense univariate polynomials `K[ξ]` over a [`FieldTag`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigUint, Zero};

use crate::error::{AlgebraError, Result};
use crate::scalar::{FieldTag, Scalar};

/// A polynomial with coefficients indexed by degree. The zero polynomial has
/// no coefficients; otherwise the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    tag: FieldTag,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn from_coeffs(tag: FieldTag, coeffs: Vec<Scalar>) -> Result<Self> {
        for c in &coeffs {
            tag.ensure_same(c.tag())?;
        }
        Ok(Self::from_trusted(tag, coeffs))
    }

    fn from_trusted(tag: FieldTag, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { tag, coeffs }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_i64s(tag: FieldTag, coeffs: &[i64]) -> Self {
        Self::from_trusted(tag, coeffs.iter().map(|&c| Scalar::from_i64(tag, c)).collect())
    }

    pub fn zero(tag: FieldTag) -> Self {
        Poly {
            tag,
            coeffs: Vec::new(),
        }
    }

    pub fn one(tag: FieldTag) -> Self {
        Self::constant(Scalar::one(tag))
    }

    /// The indeterminate ξ.
    pub fn xi(tag: FieldTag) -> Self {
        Self::monomial(Scalar::one(tag), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_trusted(c.tag(), vec![c])
    }

    pub fn monomial(c: Scalar, degree: usize) -> Self {
        let tag = c.tag();
        let mut coeffs = vec![Scalar::zero(tag); degree];
        coeffs.push(c);
        Self::from_trusted(tag, coeffs)
    }

    /// `ξ - root`.
    pub fn linear(root: &Scalar) -> Self {
        Self::from_trusted(root.tag(), vec![-root, Scalar::one(root.tag())])
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.tag))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Nonzero constant, i.e. a unit of `K[ξ]`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Scalar::is_one)
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv()),
            _ => self.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Self::from_trusted(self.tag, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.tag.ensure_same(other.tag)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Ok(Self::from_trusted(self.tag, coeffs))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.tag.ensure_same(other.tag)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.tag));
        }
        let mut coeffs = vec![Scalar::zero(self.tag); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(Self::from_trusted(self.tag, coeffs))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.tag.ensure_same(divisor.tag)?;
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        let Some(top) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Poly::zero(self.tag), self.clone()));
        };
        let mut quot = vec![Scalar::zero(self.tag); top - dd + 1];
        for k in (dd..=top).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] * &lc_inv;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = &rem[idx] - &(&c * b);
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((
            Self::from_trusted(self.tag, quot),
            Self::from_trusted(self.tag, rem),
        ))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        match self.divmod(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.tag.ensure_same(other.tag)?;
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.tag.ensure_same(other.tag)?;
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::BothZero);
        }
        let tag = self.tag;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(tag), Poly::zero(tag));
        let (mut t0, mut t1) = (Poly::zero(tag), Poly::one(tag));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc = r0.leading_coeff().expect("nonzero gcd").inv();
        Ok((r0.scale(&lc), s0.scale(&lc), t0.scale(&lc)))
    }

    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.tag));
        }
        let g = self.gcd(other)?;
        let q = self.exact_div(&g).expect("gcd divides");
        Ok(q.try_mul(other)?.monic())
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Scalar::from_i64(self.tag, k as i64))
            .collect();
        Self::from_trusted(self.tag, coeffs)
    }

    /// Horner evaluation at a scalar.
    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        self.tag.ensure_same(x.tag())?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(self.tag), |acc, c| &(&acc * x) + c))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.tag);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e mod modulus` for an arbitrarily large exponent.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(self.tag).rem(modulus)?;
        let base = self.rem(modulus)?;
        for bit in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(modulus)?;
            if e.bit(bit) {
                acc = (&acc * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Substitution `self(inner(ξ))`.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        self.tag.ensure_same(inner.tag)?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(Poly::zero(self.tag), |acc, c| &(&acc * inner) + &Poly::constant(c.clone())))
    }

    /// Product of a list of polynomials (1 for the empty list).
    pub fn product<'a>(tag: FieldTag, polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
        polys
            .into_iter()
            .fold(Poly::one(tag), |acc, p| &acc * p)
    }

    /// Renders with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let compound = matches!(c, Scalar::Gaussian { re, im } if !re.is_zero() && !im.is_zero());
            let (negative, body) = match text.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            let body = if compound { format!("({body})") } else { body };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&power);
            } else {
                out.push_str(&body);
                out.push('*');
                out.push_str(&power);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial field mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_add(&-rhs).expect("polynomial field mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            tag: self.tag,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
