use opmod::{FieldTag, FormalSequence, Matrix, Poly, PolyMatrix, RewriteStep, RuleSet, Scalar};
use rand::Rng;

/// Small random scalar; rationals get occasional small denominators.
pub fn scalar<R: Rng>(rng: &mut R, tag: FieldTag) -> Scalar {
    match tag {
        FieldTag::Rational => {
            let den = if rng.gen_bool(0.25) { rng.gen_range(2..=3) } else { 1 };
            Scalar::from_fraction(tag, rng.gen_range(-4..=4), den).unwrap()
        }
        FieldTag::GaussianRational => {
            let re = Scalar::from_i64(tag, rng.gen_range(-3..=3));
            let im = &Scalar::i() * &Scalar::from_i64(tag, rng.gen_range(-3..=3));
            &re + &im
        }
        FieldTag::Prime(p) => Scalar::from_i64(tag, rng.gen_range(0..p as i64)),
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R, tag: FieldTag) -> Scalar {
    loop {
        let s = scalar(rng, tag);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn vector<R: Rng>(rng: &mut R, tag: FieldTag, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| scalar(rng, tag)).collect()
}

pub fn matrix<R: Rng>(rng: &mut R, tag: FieldTag, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows).map(|_| vector(rng, tag, cols)).collect();
    Matrix::from_rows(tag, entries).unwrap()
}

/// Integer entries in `-range..=range`.
pub fn small_int_matrix<R: Rng>(rng: &mut R, tag: FieldTag, n: usize, range: i64) -> Matrix {
    let entries = (0..n)
        .map(|_| (0..n).map(|_| Scalar::from_i64(tag, rng.gen_range(-range..=range))).collect())
        .collect();
    Matrix::from_rows(tag, entries).unwrap()
}

/// `L · U` with unit lower `L` and upper `U` with nonzero diagonal.
pub fn invertible<R: Rng>(rng: &mut R, tag: FieldTag, n: usize) -> Matrix {
    let mut l = Matrix::identity(tag, n);
    let mut u = Matrix::zeros(tag, n, n);
    for i in 0..n {
        for j in 0..n {
            if i > j {
                l.set(i, j, small(rng, tag));
            } else if i < j {
                u.set(i, j, small(rng, tag));
            } else {
                u.set(i, j, if rng.gen_bool(0.5) { Scalar::one(tag) } else { -&Scalar::one(tag) });
            }
        }
    }
    l.mul(&u).unwrap()
}

fn small<R: Rng>(rng: &mut R, tag: FieldTag) -> Scalar {
    Scalar::from_i64(tag, rng.gen_range(-2..=2))
}

pub fn poly<R: Rng>(rng: &mut R, tag: FieldTag, max_degree: usize) -> Poly {
    let d = rng.gen_range(0..=max_degree);
    Poly::from_coeffs(tag, vector(rng, tag, d + 1)).unwrap()
}

/// Monic of exactly the given degree.
pub fn monic_poly<R: Rng>(rng: &mut R, tag: FieldTag, degree: usize) -> Poly {
    let mut c = vec_small(rng, tag, degree);
    c.push(Scalar::one(tag));
    Poly::from_coeffs(tag, c).unwrap()
}

fn vec_small<R: Rng>(rng: &mut R, tag: FieldTag, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| small(rng, tag)).collect()
}

/// Polynomial with small integer coefficients and degree at most `max_degree`;
/// entries are zero with probability `zero_prob`.
pub fn poly_matrix<R: Rng>(rng: &mut R, tag: FieldTag, rows: usize, cols: usize, max_degree: usize) -> PolyMatrix {
    let entries = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        Poly::zero(tag)
                    } else {
                        let d = rng.gen_range(0..=max_degree);
                        Poly::from_coeffs(tag, vec_small(rng, tag, d + 1)).unwrap()
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(tag, entries).unwrap()
}

/// An operator with nontrivial invariant factors: a direct sum of companion
/// blocks for `f`, `f·g`, conjugated by a random invertible matrix.
pub fn structured_operator<R: Rng>(rng: &mut R, tag: FieldTag, max_dim: usize) -> Matrix {
    loop {
        let df = rng.gen_range(1..=2);
        let dg = rng.gen_range(0..=1);
        if 2 * df + dg > max_dim {
            continue;
        }
        let f = monic_poly(rng, tag, df);
        let fg = &f * &monic_poly(rng, tag, dg);
        let blocks = [Matrix::companion(&f).unwrap(), Matrix::companion(&fg).unwrap()];
        let a = Matrix::direct_sum(&blocks).unwrap();
        let p = invertible(rng, tag, a.rows());
        return p.mul(&a).unwrap().mul(&p.inverse().unwrap()).unwrap();
    }
}

/// One random rule from the standard family that applies to `seq`:
/// a swap, a split, a merge, or moving a nonzero scalar across a pair.
pub fn standard_step<R: Rng>(rng: &mut R, seq: &FormalSequence) -> RewriteStep {
    let tag = seq.tag();
    let (n, m) = seq.dims();
    let len = seq.len();
    loop {
        let pos = rng.gen_range(0..len);
        match rng.gen_range(0..6) {
            0 if len > 1 => {
                let j = rng.gen_range(0..len);
                return RewriteStep::Swap { i: pos, j };
            }
            1 if len < 4 => return RewriteStep::SplitLeft { pos, part: vector(rng, tag, n) },
            2 if len < 4 => return RewriteStep::SplitRight { pos, part: vector(rng, tag, m) },
            3 if pos + 1 < len && seq.pairs()[pos].y == seq.pairs()[pos + 1].y => {
                return RewriteStep::MergeLeft { pos }
            }
            4 if pos + 1 < len && seq.pairs()[pos].x == seq.pairs()[pos + 1].x => {
                return RewriteStep::MergeRight { pos }
            }
            5 => {
                let c = nonzero_scalar(rng, tag);
                let inv = c.inv();
                let pair = &seq.pairs()[pos];
                return if rng.gen_bool(0.5) {
                    RewriteStep::ShiftRight {
                        pos,
                        element: Poly::constant(c),
                        preimage: pair.x.iter().map(|v| v * &inv).collect(),
                    }
                } else {
                    RewriteStep::ShiftLeft {
                        pos,
                        element: Poly::constant(c),
                        preimage: pair.y.iter().map(|v| v * &inv).collect(),
                    }
                };
            }
            _ => {}
        }
    }
}

/// Applies `steps` random standard rules.
pub fn standard_walk<R: Rng>(rng: &mut R, seq: &FormalSequence, steps: usize) -> FormalSequence {
    let rules = RuleSet::new(opmod::TensorKind::Standard, 0);
    let mut current = seq.clone();
    for _ in 0..steps {
        let step = standard_step(rng, &current);
        current = current.apply(&step, &rules).expect("generated steps apply");
    }
    current
}

pub fn sequence<R: Rng>(rng: &mut R, tag: FieldTag, n: usize, m: usize, len: usize) -> FormalSequence {
    let pairs = (0..len)
        .map(|_| opmod::FormalPair { x: vector(rng, tag, n), y: vector(rng, tag, m) })
        .collect();
    FormalSequence::new(pairs).unwrap()
}
