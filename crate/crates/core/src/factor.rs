//! Squarefree decomposition and factorization into monic irreducibles.
//!
//! Over prime fields factorization is complete (distinct-degree followed by
//! equal-degree splitting). Over `Q` and `Q(i)` it extracts every root in the
//! field; a leftover factor of degree 2 or 3 has no root and is therefore
//! irreducible, anything larger is reported as
//! [`AlgebraError::FactorizationIncomplete`].

use num::bigint::BigInt;
use num::{BigRational, BigUint, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::poly::Poly;
use crate::scalar::{FieldTag, Scalar};

/// Coefficient magnitude bound for rational root enumeration.
const ROOT_SEARCH_LIMIT: u128 = 1_000_000_000_000;

/// Pairs `(factor, multiplicity)`, factors monic, squarefree and pairwise
/// coprime, sorted by multiplicity. Their product is `f.monic()`.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut out = match f.tag() {
        FieldTag::Prime(p) => squarefree_char_p(&f.monic(), p)?,
        _ => yun(&f.monic())?,
    };
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn yun(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = f.gcd(&df)?;
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_one() {
        let a = b.gcd(&d)?;
        if !a.is_one() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

fn squarefree_char_p(f: &Poly, p: u64) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let df = f.derivative();
    let mut c = f.gcd(&df)?;
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let fac = w.exact_div(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).expect("divides");
        i += 1;
    }
    if !c.is_one() {
        let root = pth_root(&c, p);
        for (g, m) in squarefree_char_p(&root, p)? {
            out.push((g, m * p as u32));
        }
    }
    Ok(out)
}

/// For `g(ξ) = h(ξ^p)` over `F_p`, returns `h` (Frobenius fixes `F_p`).
fn pth_root(g: &Poly, p: u64) -> Poly {
    let coeffs = g.coeffs().iter().step_by(p as usize).cloned().collect();
    Poly::from_coeffs(g.tag(), coeffs).expect("same field")
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree and then canonically.
pub fn factor_irreducible(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    match f.degree() {
        None => return Err(AlgebraError::ZeroPolynomial),
        Some(0) => return Err(AlgebraError::ConstantPolynomial),
        _ => {}
    }
    let mut out = Vec::new();
    let mut undecided = 0;
    for (part, mult) in squarefree_decomposition(f)? {
        match f.tag() {
            FieldTag::Prime(p) => {
                for (group, degree) in distinct_degree(&part, p)? {
                    for irreducible in equal_degree(&group, degree, p)? {
                        out.push((irreducible, mult));
                    }
                }
            }
            _ => {
                let (linear, rest, exhaustive) = split_off_roots(&part)?;
                out.extend(linear.into_iter().map(|l| (l, mult)));
                match rest.degree() {
                    Some(0) | None => {}
                    // rootless quadratics and cubics are irreducible
                    Some(2) => out.push((rest, mult)),
                    Some(3) if exhaustive => out.push((rest, mult)),
                    Some(_) => undecided += 1,
                }
            }
        }
    }
    if undecided > 0 {
        return Err(AlgebraError::FactorizationIncomplete {
            remaining: undecided,
        });
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.cmp(&b.0))
    });
    Ok(out)
}

/// Groups of equal-degree irreducible factors: `(product, degree)`.
fn distinct_degree(f: &Poly, p: u64) -> Result<Vec<(Poly, usize)>> {
    let tag = f.tag();
    let xi = Poly::xi(tag);
    let p_big = BigUint::from(p);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = xi.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&p_big, &rest)?;
        let g = rest.gcd(&(&h - &xi))?;
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, deg));
    }
    Ok(out)
}

/// Splits a product of distinct monic irreducibles of the same degree.
/// Trial elements are enumerated deterministically by their base-p digits.
fn equal_degree(f: &Poly, degree: usize, p: u64) -> Result<Vec<Poly>> {
    let n = f.degree().unwrap_or(0);
    if n <= degree {
        return Ok(vec![f.monic()]);
    }
    let tag = f.tag();
    let one = Poly::one(tag);
    let half = if p == 2 {
        None
    } else {
        Some((BigUint::from(p).pow(degree as u32) - 1u32) / 2u32)
    };
    let mut counter: u64 = p;
    loop {
        let trial = poly_from_digits(tag, counter, p, n);
        counter += 1;
        if trial.degree().unwrap_or(0) == 0 {
            continue;
        }
        let candidate = match &half {
            Some(e) => &trial.pow_mod(e, f)? - &one,
            None => {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut term = trial.rem(f)?;
                let mut acc = term.clone();
                for _ in 1..degree {
                    term = (&term * &term).rem(f)?;
                    acc = &acc + &term;
                }
                acc
            }
        };
        if candidate.is_zero() {
            continue;
        }
        let g = f.gcd(&candidate)?;
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let other = f.exact_div(&g).expect("gcd divides");
            let mut parts = equal_degree(&g, degree, p)?;
            parts.extend(equal_degree(&other, degree, p)?);
            return Ok(parts);
        }
    }
}

fn poly_from_digits(tag: FieldTag, mut k: u64, p: u64, max_len: usize) -> Poly {
    let mut coeffs = Vec::new();
    while k > 0 && coeffs.len() < max_len {
        coeffs.push(Scalar::from_i64(tag, (k % p) as i64));
        k /= p;
    }
    Poly::from_coeffs(tag, coeffs).expect("same field")
}

/// Removes every root in the field from a squarefree polynomial over `Q` or
/// `Q(i)`. Returns the linear factors found, the cofactor, and whether the
/// root search was exhaustive (coefficients small enough to enumerate).
fn split_off_roots(f: &Poly) -> Result<(Vec<Poly>, Poly, bool)> {
    let mut rest = f.monic();
    let mut linear = Vec::new();
    if rest.degree() == Some(1) {
        return Ok((vec![rest], Poly::one(f.tag()), true));
    }
    if rest.degree() == Some(2) {
        return Ok(match quadratic_roots(&rest) {
            Some((r1, r2)) => (
                vec![Poly::linear(&r1), Poly::linear(&r2)],
                Poly::one(f.tag()),
                true,
            ),
            None => (Vec::new(), rest, true),
        });
    }
    let candidates = match root_candidates(&rest) {
        Some(c) => c,
        None => return Ok((linear, rest, false)),
    };
    for r in candidates {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        if rest.eval(&r)?.is_zero() {
            let l = Poly::linear(&r);
            rest = rest.exact_div(&l).expect("root divides");
            linear.push(l);
        }
    }
    if rest.degree() == Some(2) {
        if let Some((r1, r2)) = quadratic_roots(&rest) {
            linear.push(Poly::linear(&r1));
            linear.push(Poly::linear(&r2));
            rest = Poly::one(f.tag());
        }
    }
    Ok((linear, rest, true))
}

/// Roots of a monic quadratic via the quadratic formula, when the
/// discriminant is a square in the field (characteristic not 2).
fn quadratic_roots(f: &Poly) -> Option<(Scalar, Scalar)> {
    let tag = f.tag();
    let b = f.coeff(1);
    let c = f.coeff(0);
    let four = Scalar::from_i64(tag, 4);
    let disc = &(&b * &b) - &(&four * &c);
    let s = disc.sqrt()?;
    let half = Scalar::from_fraction(tag, 1, 2).ok()?;
    let r1 = &(&(-&b) + &s) * &half;
    let r2 = &(&(-&b) - &s) * &half;
    Some((r1, r2))
}

/// Candidate roots from the rational root theorem over `Z` or `Z[i]`.
/// `None` when the coefficients are too large to enumerate divisors.
fn root_candidates(f: &Poly) -> Option<Vec<Scalar>> {
    let tag = f.tag();
    let mut out = Vec::new();
    if f.coeff(0).is_zero() {
        out.push(Scalar::zero(tag));
    }
    // lowest nonzero coefficient: zero roots are handled separately
    let low = f.coeffs().iter().position(|c| !c.is_zero())?;
    let ints = integer_coefficients(f)?;
    let (lead, trail) = (ints.last()?.clone(), ints[low].clone());
    match tag {
        FieldTag::Rational => {
            let num_divs = integer_divisors(&trail.0)?;
            let den_divs = integer_divisors(&lead.0)?;
            for d in &den_divs {
                for n in &num_divs {
                    for sign in [1i64, -1] {
                        let q = BigRational::new(BigInt::from(*n) * sign, BigInt::from(*d));
                        out.push(Scalar::Rational(q));
                    }
                }
            }
        }
        FieldTag::GaussianRational => {
            let num_divs = gaussian_divisors(&trail)?;
            let den_divs = gaussian_divisors(&lead)?;
            for d in &den_divs {
                let d = gaussian_scalar(d);
                for n in &num_divs {
                    out.push(gaussian_scalar(n).try_div(&d).ok()?);
                }
            }
        }
        FieldTag::Prime(_) => return None,
    }
    out.sort();
    out.dedup();
    Some(out)
}

type GaussInt = (BigInt, BigInt);

fn gaussian_scalar(z: &GaussInt) -> Scalar {
    Scalar::gaussian(
        BigRational::from_integer(z.0.clone()),
        BigRational::from_integer(z.1.clone()),
    )
}

/// Clears denominators, giving integer (or Gaussian integer) coefficients.
fn integer_coefficients(f: &Poly) -> Option<Vec<GaussInt>> {
    let mut lcm = BigInt::one();
    let parts: Vec<(BigRational, BigRational)> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Rational(q) => Some((q.clone(), BigRational::zero())),
            Scalar::Gaussian { re, im } => Some((re.clone(), im.clone())),
            Scalar::Prime { .. } => None,
        })
        .collect::<Option<_>>()?;
    for (re, im) in &parts {
        lcm = lcm.lcm(re.denom()).lcm(im.denom());
    }
    let scale = BigRational::from_integer(lcm);
    Some(
        parts
            .into_iter()
            .map(|(re, im)| ((re * &scale).to_integer(), (im * &scale).to_integer()))
            .collect(),
    )
}

fn integer_divisors(n: &BigInt) -> Option<Vec<u128>> {
    let n = n.abs().to_u128()?;
    if n == 0 || n > ROOT_SEARCH_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// All Gaussian integers dividing `z`, including every associate.
fn gaussian_divisors(z: &GaussInt) -> Option<Vec<GaussInt>> {
    let norm = &z.0 * &z.0 + &z.1 * &z.1;
    let mut out = Vec::new();
    for k in integer_divisors(&norm)? {
        let mut a: u128 = 0;
        while a * a <= k {
            let b2 = k - a * a;
            let b = (b2 as f64).sqrt() as u128;
            for b in [b.saturating_sub(1), b, b + 1] {
                if b * b != b2 {
                    continue;
                }
                for (sa, sb) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                    let d = (BigInt::from(a) * sa, BigInt::from(b) * sb);
                    if gaussian_divides(&d, z) {
                        out.push(d);
                    }
                }
            }
            a += 1;
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}

fn gaussian_divides(d: &GaussInt, z: &GaussInt) -> bool {
    let norm = &d.0 * &d.0 + &d.1 * &d.1;
    if norm.is_zero() {
        return false;
    }
    // z * conj(d) must be divisible by N(d) componentwise
    let re = &z.0 * &d.0 + &z.1 * &d.1;
    let im = &z.1 * &d.0 - &z.0 * &d.1;
    (re % &norm).is_zero() && (im % &norm).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(tag: FieldTag, parts: &[(Poly, u32)]) -> Poly {
        parts
            .iter()
            .fold(Poly::one(tag), |acc, (f, m)| &acc * &f.pow(*m as u64))
    }

    #[test]
    fn squarefree_examples() {
        let q = FieldTag::Rational;
        let f = Poly::from_i64s(q, &[2, 5, 3]);
        assert_eq!(squarefree_decomposition(&f).unwrap(), vec![(f.monic(), 1)]);
        // (ξ − 1)²(ξ + 2)
        let f = &Poly::from_i64s(q, &[-1, 1]).pow(2) * &Poly::from_i64s(q, &[2, 1]);
        let sf = squarefree_decomposition(&f).unwrap();
        assert_eq!(
            sf,
            vec![(Poly::from_i64s(q, &[2, 1]), 1), (Poly::from_i64s(q, &[-1, 1]), 2)]
        );
        assert_eq!(squarefree_decomposition(&Poly::zero(q)), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn squarefree_in_characteristic_p() {
        let f3 = FieldTag::prime(3).unwrap();
        // ξ³ − ξ is squarefree with roots 0, 1, 2
        let f = Poly::from_i64s(f3, &[0, -1, 0, 1]);
        let sf = squarefree_decomposition(&f).unwrap();
        assert_eq!(sf, vec![(f.clone(), 1)]);
        let roots: Vec<_> = f3
            .elements()
            .unwrap()
            .into_iter()
            .filter(|r| f.eval(r).unwrap().is_zero())
            .collect();
        assert_eq!(roots.len(), 3);
        // (ξ + 1)^3 (ξ + 2) = (ξ^3 + 1)(ξ + 2): needs the p-th root branch
        let g = &Poly::from_i64s(f3, &[1, 1]).pow(3) * &Poly::from_i64s(f3, &[2, 1]);
        let sf = squarefree_decomposition(&g).unwrap();
        assert_eq!(
            sf,
            vec![(Poly::from_i64s(f3, &[2, 1]), 1), (Poly::from_i64s(f3, &[1, 1]), 3)]
        );
        assert_eq!(product(f3, &sf), g);
    }

    #[test]
    fn factor_over_rationals_and_gaussians() {
        let q = FieldTag::Rational;
        let f = factor_irreducible(&Poly::from_i64s(q, &[-1, 0, 1])).unwrap();
        assert_eq!(
            f,
            vec![(Poly::from_i64s(q, &[-1, 1]), 1), (Poly::from_i64s(q, &[1, 1]), 1)]
        );
        let g = FieldTag::GaussianRational;
        let f = factor_irreducible(&Poly::from_i64s(g, &[1, 0, 1])).unwrap();
        let i = Scalar::i();
        let mut expected = vec![(Poly::linear(&i), 1), (Poly::linear(&-&i), 1)];
        expected.sort();
        assert_eq!(f, expected);
        // rational root 2/3 with a cubic cofactor ξ³ − 2 (no rational roots)
        let f = &Poly::from_i64s(q, &[-2, 3]) * &Poly::from_i64s(q, &[-2, 0, 0, 1]);
        let parts = factor_irreducible(&f).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(product(q, &parts), f.monic());
    }

    #[test]
    fn gaussian_roots_of_higher_degree() {
        let g = FieldTag::GaussianRational;
        // (ξ − (1+2i))(ξ − 1/2 i)(ξ² + 2)
        let r1 = Scalar::parse("1+2i", g).unwrap();
        let r2 = Scalar::parse("1/2i", g).unwrap();
        let f = &(&Poly::linear(&r1) * &Poly::linear(&r2)) * &Poly::from_i64s(g, &[2, 0, 1]);
        let parts = factor_irreducible(&f).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().any(|(p, _)| *p == Poly::linear(&r1)));
        assert!(parts.iter().any(|(p, _)| *p == Poly::linear(&r2)));
        assert_eq!(product(g, &parts), f.monic());
    }

    #[test]
    fn undecided_quartic_reports_incomplete() {
        let q = FieldTag::Rational;
        let f = &Poly::from_i64s(q, &[1, 0, 1]) * &Poly::from_i64s(q, &[2, 0, 1]);
        assert_eq!(
            factor_irreducible(&f),
            Err(AlgebraError::FactorizationIncomplete { remaining: 1 })
        );
        assert_eq!(
            factor_irreducible(&Poly::from_i64s(q, &[3])),
            Err(AlgebraError::ConstantPolynomial)
        );
    }

    #[test]
    fn factor_over_prime_fields() {
        let f2 = FieldTag::prime(2).unwrap();
        let f = Poly::from_i64s(f2, &[1, 1, 0, 0, 1]);
        assert_eq!(factor_irreducible(&f).unwrap(), vec![(f.clone(), 1)]);
        // ξ^8 − ξ over F_2: product of all irreducibles of degree 1 and 3
        let f = Poly::from_i64s(f2, &[0, -1, 0, 0, 0, 0, 0, 0, 1]);
        let parts = factor_irreducible(&f).unwrap();
        let degrees: Vec<_> = parts.iter().map(|(p, _)| p.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 3, 3]);
        let f7 = FieldTag::prime(7).unwrap();
        let f = &Poly::from_i64s(f7, &[1, 0, 1]).pow(2) * &Poly::from_i64s(f7, &[3, 1, 0, 1]);
        let parts = factor_irreducible(&f).unwrap();
        assert_eq!(product(f7, &parts), f.monic());
    }
}
