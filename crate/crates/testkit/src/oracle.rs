use opmod::{FieldTag, Matrix, Poly, PolyMatrix, Scalar};

/// Strips trailing zeros.
fn trim(mut c: Vec<Scalar>) -> Vec<Scalar> {
    while c.last().is_some_and(Scalar::is_zero) {
        c.pop();
    }
    c
}

fn poly(tag: FieldTag, c: Vec<Scalar>) -> Poly {
    Poly::from_coeffs(tag, trim(c)).unwrap()
}

/// Schoolbook long division on coefficient vectors.
pub fn long_division(f: &Poly, g: &Poly) -> (Poly, Poly) {
    let tag = f.tag();
    let g_c = g.coeffs();
    assert!(!g_c.is_empty(), "division by zero polynomial");
    let dg = g_c.len() - 1;
    let lead_inv = g_c[dg].inv();
    let mut r: Vec<Scalar> = f.coeffs().to_vec();
    let mut q = vec![Scalar::zero(tag); r.len().saturating_sub(dg).max(1)];
    while r.len() > dg && !r.is_empty() {
        let k = r.len() - 1 - dg;
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, gj) in g_c.iter().enumerate() {
            r[k + j] = &r[k + j] - &(&c * gj);
        }
        q[k] = c;
        r = trim(r);
    }
    (poly(tag, q), poly(tag, r))
}

pub fn monic(f: &Poly) -> Poly {
    match f.coeffs().last() {
        None => f.clone(),
        Some(lc) => {
            let inv = lc.inv();
            poly(f.tag(), f.coeffs().iter().map(|c| c * &inv).collect())
        }
    }
}

/// Monic gcd by the plain Euclidean algorithm; `gcd(0, 0) = 0`.
pub fn euclid_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = long_division(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<Poly>], tag: FieldTag) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(tag);
    }
    let mut total = Poly::zero(tag);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][j] * &laplace_det(&minor, tag);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// `det(ξI − A)` by cofactor expansion.
pub fn charpoly(a: &Matrix) -> Poly {
    let tag = a.tag();
    let n = a.rows();
    let rows: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(-a.get(i, j));
                    if i == j {
                        &c + &Poly::xi(tag)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    laplace_det(&rows, tag)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinantal divisors `D_k` = monic gcd of all `k × k` minors, for
/// `k = 1 ..= min(rows, cols)`; stops at the first zero.
pub fn determinantal_divisors(p: &PolyMatrix) -> Vec<Poly> {
    let tag = p.tag();
    let mut out = Vec::new();
    for k in 1..=p.rows().min(p.cols()) {
        let mut g = Poly::zero(tag);
        for rows in subsets(p.rows(), k) {
            for cols in subsets(p.cols(), k) {
                let minor: Vec<Vec<Poly>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| p.get(i, j).clone()).collect())
                    .collect();
                g = euclid_gcd(&g, &laplace_det(&minor, tag));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

/// Nonzero Smith diagonal (units included) from determinantal divisors.
pub fn smith_diagonal(p: &PolyMatrix) -> Vec<Poly> {
    let d = determinantal_divisors(p);
    let mut prev = Poly::one(p.tag());
    d.iter()
        .map(|dk| {
            let (q, r) = long_division(dk, &prev);
            assert!(r.is_zero(), "determinantal divisors must form a chain");
            prev = dk.clone();
            monic(&q)
        })
        .collect()
}

/// Rank by plain Gaussian elimination on a list of rows.
pub fn rank_of_rows(rows: &[Vec<Scalar>]) -> usize {
    let mut rows: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv();
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &inv;
            for j in c..cols {
                let v = &rows[i][j] - &(&f * &rows[rank][j]);
                rows[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(m: &Matrix) -> usize {
    rank_of_rows(&m.row_vecs())
}

/// Whether `target` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vec<Scalar>], target: &[Scalar]) -> bool {
    if target.iter().all(Scalar::is_zero) {
        return true;
    }
    let mut with = vectors.to_vec();
    with.push(target.to_vec());
    rank_of_rows(vectors) == rank_of_rows(&with)
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.row_vecs().concat()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let tag = a.tag();
    let rows = (0..a.rows())
        .map(|i| {
            (0..b.cols())
                .map(|j| {
                    (0..a.cols()).fold(Scalar::zero(tag), |acc, k| &acc + &(a.get(i, k) * b.get(k, j)))
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(tag, rows).unwrap()
}

/// Minimal polynomial from the first linear dependence among `I, A, A², …`.
pub fn krylov_minimal_polynomial(a: &Matrix) -> Poly {
    let tag = a.tag();
    let n = a.rows();
    let mut powers = vec![Matrix::identity(tag, n)];
    loop {
        let next = mat_mul(powers.last().unwrap(), a);
        let flat: Vec<Vec<Scalar>> = powers.iter().map(flatten).collect();
        if in_span(&flat, &flatten(&next)) {
            // solve Σ c_k A^k = A^d by elimination on the augmented system
            let d = powers.len();
            let coeffs = solve_combination(&flat, &flatten(&next));
            let mut c: Vec<Scalar> = coeffs.into_iter().map(|x| -x).collect();
            assert_eq!(c.len(), d);
            c.push(Scalar::one(tag));
            return poly(tag, c);
        }
        powers.push(next);
    }
}

/// Coefficients `c` with `Σ c_k v_k = target`, assuming the `v_k` are
/// independent and the system is consistent.
fn solve_combination(vectors: &[Vec<Scalar>], target: &[Scalar]) -> Vec<Scalar> {
    let k = vectors.len();
    let len = target.len();
    let tag = target[0].tag();
    // augmented rows: one per coordinate, columns are the vectors then target
    let mut rows: Vec<Vec<Scalar>> = (0..len)
        .map(|i| {
            let mut r: Vec<Scalar> = vectors.iter().map(|v| v[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..len).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..len {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=k {
                    let v = &rows[i][j] - &(&f * &rows[r][j]);
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = vec![Scalar::zero(tag); k];
    for (row, &c) in pivots.iter().enumerate() {
        out[c] = rows[row][k].clone();
    }
    out
}

/// Whether `p(A) = 0`, evaluated with explicit powers.
pub fn annihilates(p: &Poly, a: &Matrix) -> bool {
    let tag = a.tag();
    let n = a.rows();
    let mut acc = Matrix::zeros(tag, n, n);
    let mut power = Matrix::identity(tag, n);
    for c in p.coeffs() {
        acc = acc.add(&power.scale(c)).unwrap();
        power = mat_mul(&power, a);
    }
    acc.is_zero()
}

/// All monic polynomials of exactly the given degree over `F_p`.
pub fn monic_polys(tag: FieldTag, degree: usize) -> Vec<Poly> {
    let field = tag.elements().expect("finite field");
    let mut out = vec![vec![]];
    for _ in 0..degree {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Scalar>| {
                field.iter().map(move |s| {
                    let mut w = v.clone();
                    w.push(s.clone());
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|mut c| {
            c.push(Scalar::one(tag));
            poly(tag, c)
        })
        .collect()
}

/// Trial division by every monic polynomial of degree `1 ..= deg/2`.
pub fn is_irreducible_by_trial(f: &Poly) -> bool {
    let tag = f.tag();
    let d = f.degree().expect("nonzero");
    if d == 0 {
        return false;
    }
    for k in 1..=d / 2 {
        for g in monic_polys(tag, k) {
            if long_division(f, &g).1.is_zero() {
                return false;
            }
        }
    }
    true
}

/// `A ⊗ I − I ⊗ B` written out entry by entry, index `i·m + j`.
pub fn explicit_sylvester(a: &Matrix, b: &Matrix) -> Matrix {
    let tag = a.tag();
    let (n, m) = (a.rows(), b.rows());
    let mut s = Matrix::zeros(tag, n * m, n * m);
    for i in 0..n {
        for j in 0..m {
            for k in 0..n {
                for l in 0..m {
                    let mut v = Scalar::zero(tag);
                    if j == l {
                        v = &v + a.get(i, k);
                    }
                    if i == k {
                        v = &v - b.get(j, l);
                    }
                    s.set(i * m + j, k * m + l, v);
                }
            }
        }
    }
    s
}

/// Dimension of the kernel of the explicit Sylvester matrix.
pub fn sylvester_nullity(a: &Matrix, b: &Matrix) -> usize {
    let s = explicit_sylvester(a, b);
    s.cols() - rank(&s)
}

/// Number of pairs `(i, j)` with `a_i = b_j`.
pub fn spectrum_matches(a: &[Scalar], b: &[Scalar]) -> usize {
    a.iter().map(|x| b.iter().filter(|y| x == *y).count()).sum()
}

/// For diagonal `A`, `B` the relation space is spanned by the basis
/// tensors `e_i ⊗ f_j` with `a_i ≠ b_j`, so membership means every
/// coordinate at a matched position vanishes.
pub fn diagonal_relation_contains(a: &[Scalar], b: &[Scalar], coords: &[Scalar]) -> bool {
    let m = b.len();
    a.iter().enumerate().all(|(i, ai)| {
        b.iter()
            .enumerate()
            .all(|(j, bj)| ai != bj || coords[i * m + j].is_zero())
    })
}

/// Coordinates of `x ⊗ y` in the `i·m + j` ordering.
pub fn outer(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

/// Σ x_i ⊗ y_i over explicit pairs.
pub fn linearize_pairs(pairs: &[(Vec<Scalar>, Vec<Scalar>)]) -> Vec<Scalar> {
    let (x0, y0) = &pairs[0];
    let tag = x0[0].tag();
    let mut acc = vec![Scalar::zero(tag); x0.len() * y0.len()];
    for (x, y) in pairs {
        for (a, b) in acc.iter_mut().zip(outer(x, y)) {
            *a = &*a + &b;
        }
    }
    acc
}

/// Rank of the `n × m` coefficient matrix of a tensor.
pub fn reshaped_rank(coords: &[Scalar], n: usize, m: usize) -> usize {
    let rows: Vec<Vec<Scalar>> = (0..n).map(|i| coords[i * m..(i + 1) * m].to_vec()).collect();
    rank_of_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldTag = FieldTag::Rational;

    #[test]
    fn oracles_on_known_values() {
        let a = Matrix::from_i64_rows(Q, &[&[0, -1], &[1, 0]]);
        assert_eq!(charpoly(&a), Poly::from_i64s(Q, &[1, 0, 1]));
        assert_eq!(krylov_minimal_polynomial(&a), Poly::from_i64s(Q, &[1, 0, 1]));
        let id = Matrix::identity(Q, 3);
        assert_eq!(krylov_minimal_polynomial(&id), Poly::from_i64s(Q, &[-1, 1]));
        let f2 = FieldTag::prime(2).unwrap();
        assert!(is_irreducible_by_trial(&Poly::from_i64s(f2, &[1, 1, 1])));
        assert!(!is_irreducible_by_trial(&Poly::from_i64s(f2, &[1, 0, 1])));
        let d = PolyMatrix::diagonal(Q, &[Poly::from_i64s(Q, &[-1, 1]), Poly::from_i64s(Q, &[-2, 1])]).unwrap();
        assert_eq!(smith_diagonal(&d), vec![Poly::one(Q), Poly::from_i64s(Q, &[2, -3, 1])]);
        let s = |v| Scalar::from_i64(Q, v);
        assert_eq!(spectrum_matches(&[s(1), s(2)], &[s(1), s(1)]), 2);
        let a = Matrix::diagonal(Q, &[s(1), s(2)]).unwrap();
        let b = Matrix::diagonal(Q, &[s(1), s(1)]).unwrap();
        assert_eq!(sylvester_nullity(&a, &b), 2);
    }
}
