//! Dense matrices over a field and over `K[ξ]`.
//!
//! Tensor coordinates use one fixed basis ordering throughout the crate:
//! `e_i ⊗ f_j` sits at flat index `i * m + j` (zero based), which is also
//! the ordering [`Matrix::kronecker`] produces.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::poly::Poly;
use crate::scalar::{FieldTag, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    tag: FieldTag,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form with its pivot structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonResult {
    pub reduced: Matrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(tag: FieldTag, rows: usize, cols: usize) -> Self {
        Matrix {
            tag,
            rows,
            cols,
            entries: vec![Scalar::zero(tag); rows * cols],
        }
    }

    pub fn identity(tag: FieldTag, n: usize) -> Self {
        let mut m = Self::zeros(tag, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(tag);
        }
        m
    }

    pub fn diagonal(tag: FieldTag, diag: &[Scalar]) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zeros(tag, n, n);
        for (i, d) in diag.iter().enumerate() {
            tag.ensure_same(d.tag())?;
            m.entries[i * n + i] = d.clone();
        }
        Ok(m)
    }

    pub fn from_rows(tag: FieldTag, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgebraError::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            for s in row {
                tag.ensure_same(s.tag())?;
                entries.push(s);
            }
        }
        Ok(Matrix {
            tag,
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn from_i64_rows(tag: FieldTag, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(tag, v)).collect())
            .collect();
        Self::from_rows(tag, rows).expect("well-formed integer rows")
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(tag: FieldTag, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(tag, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(AlgebraError::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, s) in col.iter().enumerate() {
                tag.ensure_same(s.tag())?;
                m.entries[i * m.cols + j] = s.clone();
            }
        }
        Ok(m)
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.tag(), self.tag, "matrix field mismatch");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.tag, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    fn ensure_shape(&self, other: &Matrix) -> Result<()> {
        self.tag.ensure_same(other.tag)?;
        if self.rows != other.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        if self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.ensure_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.with_entries(entries))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.ensure_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.with_entries(entries))
    }

    fn with_entries(&self, entries: Vec<Scalar>) -> Matrix {
        Matrix {
            tag: self.tag,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        self.with_entries(self.entries.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.tag.ensure_same(other.tag)?;
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.tag, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        for s in x {
            self.tag.ensure_same(s.tag())?;
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Scalar::zero(self.tag), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.tag, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(AlgebraError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> EchelonResult {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.entries[idx] = &m.entries[idx] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = &(m.get(r, j) * &factor);
                    let idx = i * m.cols + j;
                    m.entries[idx] = &m.entries[idx] - v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        EchelonResult {
            reduced: m,
            rank: pivots.len(),
            pivot_columns: pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let ech = self.rref();
        let free = (0..self.cols).filter(|c| !ech.pivot_columns.contains(c));
        free.map(|f| {
            let mut v = vec![Scalar::zero(self.tag); self.cols];
            v[f] = Scalar::one(self.tag);
            for (row, &pc) in ech.pivot_columns.iter().enumerate() {
                v[pc] = -ech.reduced.get(row, f);
            }
            v
        })
        .collect()
    }

    /// Some solution of `self · x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        if b.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = Self::zeros(self.tag, self.rows, self.cols + 1);
        for i in 0..self.rows {
            self.tag.ensure_same(b[i].tag())?;
            for j in 0..self.cols {
                aug.entries[i * (self.cols + 1) + j] = self.get(i, j).clone();
            }
            aug.entries[i * (self.cols + 1) + self.cols] = b[i].clone();
        }
        let ech = aug.rref();
        if ech.pivot_columns.last() == Some(&self.cols) {
            return Err(AlgebraError::NoSolution);
        }
        let mut x = vec![Scalar::zero(self.tag); self.cols];
        for (row, &pc) in ech.pivot_columns.iter().enumerate() {
            x[pc] = ech.reduced.get(row, self.cols).clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Self::zeros(self.tag, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.entries[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.entries[i * 2 * n + n + i] = Scalar::one(self.tag);
        }
        let ech = aug.rref();
        if ech.pivot_columns.iter().take(n).copied().ne(0..n) {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut inv = Self::zeros(self.tag, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.entries[i * n + j] = ech.reduced.get(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    /// Kronecker product; block `(i, j)` is `self[i][j] · other`.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.tag.ensure_same(other.tag)?;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(self.tag, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.entries[(i * other.rows + k) * c + j * other.cols + l] =
                            a * other.get(k, l);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `A ⊗ I_m − I_n ⊗ B`, the coordinate form of `T ↦ A T − T Bᵀ`.
    pub fn sylvester(a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.require_square()?;
        b.require_square()?;
        a.tag.ensure_same(b.tag)?;
        let left = a.kronecker(&Matrix::identity(a.tag, b.rows))?;
        let right = Matrix::identity(a.tag, a.rows).kronecker(b)?;
        left.sub(&right)
    }

    /// Companion matrix of a monic polynomial (subdiagonal ones, last column
    /// the negated coefficients).
    pub fn companion(p: &Poly) -> Result<Matrix> {
        let k = match p.degree() {
            None | Some(0) => return Err(AlgebraError::ConstantPolynomial),
            Some(k) => k,
        };
        if !p.is_monic() {
            return Err(AlgebraError::NotMonic);
        }
        let tag = p.tag();
        let mut m = Self::zeros(tag, k, k);
        for i in 1..k {
            m.entries[i * k + i - 1] = Scalar::one(tag);
        }
        for i in 0..k {
            m.entries[i * k + k - 1] = -&p.coeff(i);
        }
        Ok(m)
    }

    /// Block diagonal sum.
    pub fn direct_sum(blocks: &[Matrix]) -> Result<Matrix> {
        let tag = blocks.first().map(|b| b.tag).unwrap_or(FieldTag::Rational);
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(tag, n, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            tag.ensure_same(b.tag)?;
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.entries[(r0 + i) * c + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// `ξ I − A` over `K[ξ]`.
    pub fn characteristic_matrix(&self) -> Result<PolyMatrix> {
        self.require_square()?;
        let n = self.rows;
        let mut out = PolyMatrix::zeros(self.tag, n, n);
        for i in 0..n {
            for j in 0..n {
                let mut p = Poly::constant(-self.get(i, j));
                if i == j {
                    p = &p + &Poly::xi(self.tag);
                }
                out.set(i, j, p);
            }
        }
        Ok(out)
    }
}

impl Poly {
    /// `Σ α_i A^i` by Horner's scheme on matrices.
    pub fn eval_operator(&self, a: &Matrix) -> Result<Matrix> {
        a.require_square()?;
        self.tag().ensure_same(a.tag())?;
        let n = a.rows();
        let mut acc = Matrix::zeros(a.tag(), n, n);
        for c in self.coeffs().iter().rev() {
            acc = acc.mul(a)?;
            for i in 0..n {
                let idx = i * n + i;
                acc.entries[idx] = &acc.entries[idx] + c;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense matrix with polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    tag: FieldTag,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(tag: FieldTag, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            tag,
            rows,
            cols,
            entries: vec![Poly::zero(tag); rows * cols],
        }
    }

    pub fn identity(tag: FieldTag, n: usize) -> Self {
        let mut m = Self::zeros(tag, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one(tag);
        }
        m
    }

    pub fn from_rows(tag: FieldTag, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(tag, rows, r, c)
    }

    /// Like [`PolyMatrix::from_rows`] but with the column count explicit,
    /// so that `g × 0` presentations are representable.
    pub fn from_rows_with_cols(
        tag: FieldTag,
        rows: Vec<Vec<Poly>>,
        r: usize,
        c: usize,
    ) -> Result<Self> {
        if rows.len() != r {
            return Err(AlgebraError::DimensionMismatch {
                expected: r,
                found: rows.len(),
            });
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgebraError::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            for p in row {
                tag.ensure_same(p.tag())?;
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            tag,
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn diagonal(tag: FieldTag, diag: &[Poly]) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zeros(tag, n, n);
        for (i, p) in diag.iter().enumerate() {
            tag.ensure_same(p.tag())?;
            m.entries[i * n + i] = p.clone();
        }
        Ok(m)
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert_eq!(p.tag(), self.tag, "matrix field mismatch");
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.tag.ensure_same(other.tag)?;
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.tag, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Entries `(k, k)` for `k < min(rows, cols)`.
    pub fn diagonal_entries(&self) -> Vec<Poly> {
        (0..self.rows.min(self.cols))
            .map(|k| self.get(k, k).clone())
            .collect()
    }

    /// Evaluates every entry at a scalar.
    pub fn eval_at(&self, x: &Scalar) -> Result<Matrix> {
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if self.cols == 0 {
            return Ok(Matrix::zeros(self.tag, self.rows, 0));
        }
        Matrix::from_rows(self.tag, rows)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(AlgebraError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.entries.clone();
        let mut sign = false;
        let mut prev = Poly::one(self.tag);
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i * n + k].is_zero()) else {
                return Ok(Poly::zero(self.tag));
            };
            if p != k {
                for j in 0..n {
                    m.swap(p * n + j, k * n + j);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i * n + j] * &m[k * n + k]) - &(&m[i * n + k] * &m[k * n + j]);
                    m[i * n + j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k * n + k].clone();
        }
        let det = if n == 0 { Poly::one(self.tag) } else { prev };
        Ok(if sign { -&det } else { det })
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Poly::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldTag = FieldTag::Rational;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Q, 3);
        let e = id.rref();
        assert_eq!(e.reduced, id);
        assert_eq!(e.rank, 3);
        let z = Matrix::zeros(Q, 2, 3).rref();
        assert_eq!((z.rank, z.pivot_columns.len()), (0, 0));
        let m = Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::from_i64_rows(Q, &[&[2, 1], &[1, 1]]).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(Q, 3, 3).kernel_basis().len(), 3);
        let k = Matrix::from_i64_rows(Q, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![s(-1), s(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![s(3), s(-1)];
        assert_eq!(Matrix::identity(Q, 2).solve(&b).unwrap(), b);
        assert_eq!(Matrix::zeros(Q, 2, 2).solve(&b), Err(AlgebraError::NoSolution));
        let m = Matrix::from_i64_rows(Q, &[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let x0 = vec![s(1), s(-2), s(5)];
        let b = m.apply(&x0).unwrap();
        assert_eq!(m.solve(&b).unwrap(), x0);
    }

    #[test]
    fn kronecker_and_sylvester() {
        let i2 = Matrix::identity(Q, 2);
        assert_eq!(i2.kronecker(&i2).unwrap(), Matrix::identity(Q, 4));
        let a = Matrix::diagonal(Q, &[s(2), s(3)]).unwrap();
        let b = Matrix::diagonal(Q, &[s(5), s(7)]).unwrap();
        assert_eq!(
            a.kronecker(&b).unwrap(),
            Matrix::diagonal(Q, &[s(10), s(14), s(15), s(21)]).unwrap()
        );
        assert_eq!(
            Matrix::sylvester(&a, &b).unwrap(),
            Matrix::diagonal(Q, &[s(-3), s(-5), s(-2), s(-4)]).unwrap()
        );
        assert!(Matrix::sylvester(&i2, &i2).unwrap().is_zero());
        let one = Matrix::from_i64_rows(Q, &[&[4]]);
        let two = Matrix::from_i64_rows(Q, &[&[9]]);
        assert_eq!(Matrix::sylvester(&one, &two).unwrap(), Matrix::from_i64_rows(Q, &[&[-5]]));
    }

    #[test]
    fn companion_examples() {
        let c = Matrix::companion(&Poly::from_i64s(Q, &[-3, 1])).unwrap();
        assert_eq!(c, Matrix::from_i64_rows(Q, &[&[3]]));
        let c = Matrix::companion(&Poly::from_i64s(Q, &[1, 0, 1])).unwrap();
        assert_eq!(c, Matrix::from_i64_rows(Q, &[&[0, -1], &[1, 0]]));
        assert_eq!(
            Matrix::companion(&Poly::from_i64s(Q, &[1, 2])),
            Err(AlgebraError::NotMonic)
        );
        assert_eq!(
            Matrix::companion(&Poly::from_i64s(Q, &[1])),
            Err(AlgebraError::ConstantPolynomial)
        );
    }

    #[test]
    fn operator_evaluation() {
        let a = Matrix::from_i64_rows(Q, &[&[1, 2], &[3, 4]]);
        assert_eq!(Poly::xi(Q).eval_operator(&a).unwrap(), a);
        assert_eq!(Poly::one(Q).eval_operator(&a).unwrap(), Matrix::identity(Q, 2));
        let d = Matrix::diagonal(Q, &[s(2), s(-1)]).unwrap();
        let pi = Poly::from_i64s(Q, &[1, 0, 1]);
        assert_eq!(
            pi.eval_operator(&d).unwrap(),
            Matrix::diagonal(Q, &[s(5), s(2)]).unwrap()
        );
        let rect = Matrix::zeros(Q, 2, 3);
        assert!(matches!(pi.eval_operator(&rect), Err(AlgebraError::NonSquare { .. })));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64_rows(Q, &[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Q, 2));
        assert!(Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn poly_determinant() {
        let c = Matrix::companion(&Poly::from_i64s(Q, &[6, -5, -2, 1])).unwrap();
        let det = c.characteristic_matrix().unwrap().determinant().unwrap();
        assert_eq!(det, Poly::from_i64s(Q, &[6, -5, -2, 1]));
    }
}
