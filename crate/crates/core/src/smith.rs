//! Smith normal form over `K[ξ]` by unimodular row and column operations.
//!
//! Pivoting always picks a nonzero entry of minimal degree in the active
//! submatrix, ties broken by smallest `(row, col)`. The pivot clears its row
//! and column by Euclidean division; nonzero remainders have strictly smaller
//! degree and trigger a new pivot search. After diagonalization a repair pass
//! restores the divisibility chain: if `d_k ∤ d_{k+1}`, column `k+1` is added
//! to column `k` and the block from `k` onward is reduced again, which
//! replaces `d_k` by `gcd(d_k, d_{k+1})`.
//!
//! Only polynomial operations are used, no fraction-field arithmetic.

use crate::error::Result;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// `U · P · V = D` with `U`, `V` unimodular and `D` diagonal in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | …`, units included.
    pub fn nonzero_diagonal(&self) -> Vec<Poly> {
        self.d
            .diagonal_entries()
            .into_iter()
            .filter(|p| !p.is_zero())
            .collect()
    }

    /// Nonconstant diagonal entries: the invariant factors of the cokernel.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        self.nonzero_diagonal()
            .into_iter()
            .filter(|p| !p.is_unit())
            .collect()
    }

    /// Checks `U·P·V = D` exactly, the shape of `D`, unit determinants of
    /// `U` and `V`, and the monic divisibility chain.
    pub fn verify(&self, p: &PolyMatrix) -> Result<bool> {
        let upv = self.u.mul(p)?.mul(&self.v)?;
        if upv != self.d || !self.d.is_diagonal() {
            return Ok(false);
        }
        if !self.u.determinant()?.is_unit() || !self.v.determinant()?.is_unit() {
            return Ok(false);
        }
        let diag = self.d.diagonal_entries();
        let nonzero = diag.iter().take_while(|d| !d.is_zero()).count();
        if diag[nonzero..].iter().any(|d| !d.is_zero()) {
            return Ok(false);
        }
        let chain = diag[..nonzero]
            .windows(2)
            .all(|w| w[0].divides(&w[1]));
        Ok(chain && diag[..nonzero].iter().all(Poly::is_monic))
    }
}

struct Reducer {
    m: PolyMatrix,
    u: PolyMatrix,
    v: PolyMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for mat in [&mut self.m, &mut self.u] {
            for j in 0..mat.cols() {
                let x = mat.get(a, j).clone();
                let y = mat.get(b, j).clone();
                mat.set(a, j, y);
                mat.set(b, j, x);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for mat in [&mut self.m, &mut self.v] {
            for i in 0..mat.rows() {
                let x = mat.get(i, a).clone();
                let y = mat.get(i, b).clone();
                mat.set(i, a, y);
                mat.set(i, b, x);
            }
        }
    }

    /// row_target -= q · row_source
    fn row_axpy(&mut self, target: usize, source: usize, q: &Poly) {
        for mat in [&mut self.m, &mut self.u] {
            for j in 0..mat.cols() {
                let v = mat.get(target, j) - &(q * mat.get(source, j));
                mat.set(target, j, v);
            }
        }
    }

    /// col_target -= q · col_source
    fn col_axpy(&mut self, target: usize, source: usize, q: &Poly) {
        for mat in [&mut self.m, &mut self.v] {
            for i in 0..mat.rows() {
                let v = mat.get(i, target) - &(mat.get(i, source) * q);
                mat.set(i, target, v);
            }
        }
    }

    fn scale_row(&mut self, row: usize, c: &Scalar) {
        let c = Poly::constant(c.clone());
        for mat in [&mut self.m, &mut self.u] {
            for j in 0..mat.cols() {
                let v = mat.get(row, j) * &c;
                mat.set(row, j, v);
            }
        }
    }

    /// Minimal-degree nonzero entry of the submatrix starting at `(t, t)`.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                if let Some(d) = self.m.get(i, j).degree() {
                    if best.map_or(true, |(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Diagonalizes from position `start` onward.
    fn diagonalize(&mut self, start: usize) -> Result<()> {
        let limit = self.m.rows().min(self.m.cols());
        let mut t = start;
        while t < limit {
            let Some((pi, pj)) = self.pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let pivot = self.m.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..self.m.rows() {
                if self.m.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = self.m.get(i, t).divmod(&pivot)?;
                self.row_axpy(i, t, &q);
                dirty |= !r.is_zero();
            }
            for j in t + 1..self.m.cols() {
                if self.m.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = self.m.get(t, j).divmod(&pivot)?;
                self.col_axpy(j, t, &q);
                dirty |= !r.is_zero();
            }
            if dirty {
                // a remainder of smaller degree is now the best pivot
                continue;
            }
            let lc = pivot.leading_coeff().expect("pivot is nonzero").inv();
            self.scale_row(t, &lc);
            t += 1;
        }
        Ok(())
    }

    fn repair_chain(&mut self) -> Result<()> {
        loop {
            let diag = self.m.diagonal_entries();
            let nonzero = diag.iter().take_while(|d| !d.is_zero()).count();
            let broken = (0..nonzero.saturating_sub(1)).find(|&k| !diag[k].divides(&diag[k + 1]));
            let Some(k) = broken else {
                return Ok(());
            };
            // column k += column k+1
            self.col_axpy(k, k + 1, &-&Poly::one(self.m.tag()));
            self.diagonalize(k)?;
        }
    }
}

pub fn smith_normal_form(p: &PolyMatrix) -> Result<SmithForm> {
    let tag = p.tag();
    let mut r = Reducer {
        m: p.clone(),
        u: PolyMatrix::identity(tag, p.rows()),
        v: PolyMatrix::identity(tag, p.cols()),
    };
    r.diagonalize(0)?;
    r.repair_chain()?;
    Ok(SmithForm {
        u: r.u,
        d: r.m,
        v: r.v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::FieldTag;

    const Q: FieldTag = FieldTag::Rational;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(Q, c)
    }

    #[test]
    fn already_smith() {
        let m = PolyMatrix::diagonal(Q, &[p(&[0, 1]), p(&[0, 0, 1])]).unwrap();
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.d, m);
        assert!(snf.verify(&m).unwrap());
    }

    #[test]
    fn divisibility_repair() {
        let m = PolyMatrix::diagonal(Q, &[p(&[0, 0, 1]), p(&[0, 1])]).unwrap();
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.d.diagonal_entries(), vec![p(&[0, 1]), p(&[0, 0, 1])]);
        assert!(snf.verify(&m).unwrap());
        // coprime entries need the column-add repair
        let m = PolyMatrix::diagonal(Q, &[p(&[-1, 1]), p(&[-2, 1])]).unwrap();
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.d.diagonal_entries(), vec![p(&[1]), p(&[2, -3, 1])]);
        assert!(snf.verify(&m).unwrap());
    }

    #[test]
    fn companion_characteristic_matrix() {
        let f = p(&[1, 0, 1]);
        let c = Matrix::companion(&f).unwrap();
        let m = c.characteristic_matrix().unwrap();
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.d.diagonal_entries(), vec![p(&[1]), f]);
        assert!(snf.verify(&m).unwrap());
    }

    #[test]
    fn rectangular_and_empty() {
        let m = PolyMatrix::from_rows(Q, vec![vec![p(&[0, 1])], vec![p(&[0, 1])]]).unwrap();
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.invariant_factors(), vec![p(&[0, 1])]);
        assert!(snf.verify(&m).unwrap());
        let empty = PolyMatrix::from_rows_with_cols(Q, vec![vec![], vec![]], 2, 0).unwrap();
        let snf = smith_normal_form(&empty).unwrap();
        assert!(snf.nonzero_diagonal().is_empty());
        assert!(snf.verify(&empty).unwrap());
    }
}
