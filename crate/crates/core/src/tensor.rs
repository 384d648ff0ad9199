//! Generalized tensor products as quotients of `E ⊗ F`.
//!
//! Every product here is `(E ⊗ F) / W` for an explicitly computed relation
//! subspace `W ⊆ K^{nm}`:
//!
//! * standard: `W = 0`;
//! * operator pair `(A, B)`: `W = im(A ⊗ I − I ⊗ B)`;
//! * subring `K[p(ξ)]`: `W = im(p(A) ⊗ I − I ⊗ p(B))`;
//! * branching along `ξ ↦ φ(ξ)`, `ξ ↦ ψ(ξ)`: `W = im(φ(A) ⊗ I − I ⊗ ψ(B))`;
//! * scaled branching `g(c) = a·c`: `W = (1 − a)(E ⊗ F)`.
//!
//! The rule "replace `(π x, y)` by `(x, π y)`" for every polynomial `π` only
//! needs its degree-one instance, since
//! `M^k x⊗y − x⊗N^k y = Σ_{i<k} (M^{i+1}x ⊗ N^{k−1−i}y − M^i x ⊗ N^{k−i}y)`
//! and each summand is `(M ⊗ I − I ⊗ N)` applied to `M^i x ⊗ N^{k−1−i} y`.
//! The rewrite oracle in [`crate::rewrite`] checks this reading against the
//! rules applied literally.
//!
//! Coset representatives are canonical: the coordinates at the pivot
//! columns of `W`'s echelon form are eliminated and the remaining
//! coordinates are kept.

use crate::error::{AlgebraError, Result};
use crate::matrix::{EchelonResult, Matrix};
use crate::poly::Poly;
use crate::scalar::{FieldTag, Scalar};

/// Coordinates of an element of `E ⊗ F` in the basis `e_i ⊗ f_j ↦ i·m + j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    tag: FieldTag,
    n: usize,
    m: usize,
    coords: Vec<Scalar>,
}

impl TensorElement {
    pub fn zero(tag: FieldTag, n: usize, m: usize) -> Self {
        TensorElement {
            tag,
            n,
            m,
            coords: vec![Scalar::zero(tag); n * m],
        }
    }

    pub fn from_coords(tag: FieldTag, n: usize, m: usize, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != n * m {
            return Err(AlgebraError::DimensionMismatch {
                expected: n * m,
                found: coords.len(),
            });
        }
        for c in &coords {
            tag.ensure_same(c.tag())?;
        }
        Ok(TensorElement { tag, n, m, coords })
    }

    /// The simple tensor `x ⊗ y`.
    pub fn simple(x: &[Scalar], y: &[Scalar]) -> Result<Self> {
        let tag = x
            .first()
            .or(y.first())
            .map(Scalar::tag)
            .ok_or(AlgebraError::DimensionMismatch { expected: 1, found: 0 })?;
        let mut coords = Vec::with_capacity(x.len() * y.len());
        for xi in x {
            tag.ensure_same(xi.tag())?;
            for yj in y {
                tag.ensure_same(yj.tag())?;
                coords.push(xi * yj);
            }
        }
        Ok(TensorElement {
            tag,
            n: x.len(),
            m: y.len(),
            coords,
        })
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn ensure_compatible(&self, other: &TensorElement) -> Result<()> {
        self.tag.ensure_same(other.tag)?;
        if (self.n, self.m) != (other.n, other.m) {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n * self.m,
                found: other.n * other.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.ensure_compatible(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(TensorElement { coords, ..self.clone() })
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.ensure_compatible(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(TensorElement { coords, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        TensorElement {
            coords: self.coords.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    /// The `n × m` coefficient matrix.
    pub fn as_matrix(&self) -> Matrix {
        let rows = self.coords.chunks(self.m.max(1)).map(<[Scalar]>::to_vec).collect();
        if self.m == 0 {
            return Matrix::zeros(self.tag, self.n, 0);
        }
        Matrix::from_rows(self.tag, rows).expect("consistent shape")
    }

    /// Rank of the coefficient matrix: 0 for zero, 1 exactly for nonzero
    /// simple tensors, at least 2 for entangled elements.
    pub fn schmidt_rank(&self) -> usize {
        self.as_matrix().rank()
    }

    /// `(A ⊗ B) t`.
    pub fn apply_local(&self, a: &Matrix, b: &Matrix) -> Result<TensorElement> {
        if a.cols() != self.n || b.cols() != self.m {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n * self.m,
                found: a.cols() * b.cols(),
            });
        }
        let coords = a.kronecker(b)?.apply(&self.coords)?;
        TensorElement::from_coords(self.tag, a.rows(), b.rows(), coords)
    }
}

/// Which relations define the quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorKind {
    Standard,
    OperatorPair {
        a: Matrix,
        b: Matrix,
    },
    /// Scalars restricted to the subring `K[p(ξ)]`.
    Subring {
        a: Matrix,
        b: Matrix,
        generator: Poly,
    },
    /// Scalar actions pulled back along `ξ ↦ φ(ξ)` on `E` and `ξ ↦ ψ(ξ)` on `F`.
    Branching {
        a: Matrix,
        b: Matrix,
        phi: Poly,
        psi: Poly,
    },
    /// `(c x, y) ~ (x, a c y)` for all scalars `c`, taken literally.
    ScaledBranching {
        scale: Scalar,
    },
}

impl TensorKind {
    pub fn name(&self) -> &'static str {
        match self {
            TensorKind::Standard => "standard",
            TensorKind::OperatorPair { .. } => "opair",
            TensorKind::Subring { .. } => "subring",
            TensorKind::Branching { .. } | TensorKind::ScaledBranching { .. } => "branching",
        }
    }

    /// The pair `(M, N)` whose Sylvester operator spans the relations, for
    /// every kind except the scaled one.
    pub fn operator_pair(&self, tag: FieldTag, n: usize, m: usize) -> Result<Option<(Matrix, Matrix)>> {
        Ok(match self {
            TensorKind::Standard => Some((Matrix::identity(tag, n), Matrix::identity(tag, m))),
            TensorKind::OperatorPair { a, b } => Some((a.clone(), b.clone())),
            TensorKind::Subring { a, b, generator } => {
                Some((generator.eval_operator(a)?, generator.eval_operator(b)?))
            }
            TensorKind::Branching { a, b, phi, psi } => {
                Some((phi.eval_operator(a)?, psi.eval_operator(b)?))
            }
            TensorKind::ScaledBranching { .. } => None,
        })
    }

    /// Warning text when the scalar maps are not ring homomorphisms.
    pub fn caveat(&self) -> Option<String> {
        match self {
            TensorKind::ScaledBranching { scale } if !scale.is_zero() && !scale.is_one() => {
                Some(format!(
                    "g(c) = {scale}*c is not multiplicative (g(c*c') != g(c)*g(c')); \
                     relation taken literally, not as a ring homomorphism"
                ))
            }
            _ => None,
        }
    }

    fn check_dims(&self, tag: FieldTag, n: usize, m: usize) -> Result<()> {
        let pair = match self {
            TensorKind::Standard => return Ok(()),
            TensorKind::ScaledBranching { scale } => return tag.ensure_same(scale.tag()),
            TensorKind::OperatorPair { a, b }
            | TensorKind::Subring { a, b, .. }
            | TensorKind::Branching { a, b, .. } => (a, b),
        };
        for (mat, size) in [(pair.0, n), (pair.1, m)] {
            mat.require_square()?;
            tag.ensure_same(mat.tag())?;
            if mat.rows() != size {
                return Err(AlgebraError::DimensionMismatch {
                    expected: size,
                    found: mat.rows(),
                });
            }
        }
        if let TensorKind::Subring { generator, .. } = self {
            tag.ensure_same(generator.tag())?;
        }
        if let TensorKind::Branching { phi, psi, .. } = self {
            tag.ensure_same(phi.tag())?;
            tag.ensure_same(psi.tag())?;
        }
        Ok(())
    }
}

/// `W ⊆ K^{nm}` together with its echelon data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSubspace {
    kind: TensorKind,
    tag: FieldTag,
    n: usize,
    m: usize,
    generators: Matrix,
    echelon: EchelonResult,
}

/// A coset of `W`, identified by its canonical coordinates on the
/// non-pivot positions. Only comparable between classes of the same `W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientClass {
    pub canonical: Vec<Scalar>,
}

impl QuotientClass {
    pub fn is_zero(&self) -> bool {
        self.canonical.iter().all(Scalar::is_zero)
    }
}

impl RelationSubspace {
    pub fn new(kind: TensorKind, tag: FieldTag, n: usize, m: usize) -> Result<Self> {
        kind.check_dims(tag, n, m)?;
        let generators = match &kind {
            TensorKind::ScaledBranching { scale } => {
                Matrix::identity(tag, n * m).scale(&(&Scalar::one(tag) - scale))
            }
            _ => {
                let (left, right) = kind
                    .operator_pair(tag, n, m)?
                    .expect("non-scaled kinds have an operator pair");
                Matrix::sylvester(&left, &right)?
            }
        };
        let echelon = generators.transpose().rref();
        Ok(RelationSubspace {
            kind,
            tag,
            n,
            m,
            generators,
            echelon,
        })
    }

    pub fn kind(&self) -> &TensorKind {
        &self.kind
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    /// Columns span `W`.
    pub fn generator_matrix(&self) -> &Matrix {
        &self.generators
    }

    pub fn echelon(&self) -> &EchelonResult {
        &self.echelon
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.echelon.pivot_columns
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank
    }

    pub fn quotient_dim(&self) -> usize {
        self.n * self.m - self.rank()
    }

    /// Flat indices of the basis tensors that survive in the quotient.
    pub fn canonical_basis(&self) -> Vec<usize> {
        (0..self.n * self.m)
            .filter(|c| !self.echelon.pivot_columns.contains(c))
            .collect()
    }

    fn reduce(&self, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        if coords.len() != self.n * self.m {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n * self.m,
                found: coords.len(),
            });
        }
        let mut t = coords.to_vec();
        for (row, &pc) in self.echelon.pivot_columns.iter().enumerate() {
            if t[pc].is_zero() {
                continue;
            }
            let c = t[pc].clone();
            for (j, w) in self.echelon.reduced.row(row).iter().enumerate() {
                if !w.is_zero() {
                    t[j] = &t[j] - &(&c * w);
                }
            }
        }
        Ok(t)
    }

    /// The surjection `E ⊗ F → (E ⊗ F)/W`; linear with kernel exactly `W`.
    pub fn project(&self, t: &TensorElement) -> Result<QuotientClass> {
        self.tag.ensure_same(t.tag)?;
        if t.dims() != (self.n, self.m) {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n * self.m,
                found: t.n * t.m,
            });
        }
        let reduced = self.reduce(&t.coords)?;
        Ok(QuotientClass {
            canonical: self.canonical_basis().into_iter().map(|k| reduced[k].clone()).collect(),
        })
    }

    pub fn contains(&self, coords: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(coords)?.iter().all(Scalar::is_zero))
    }

    /// The canonical representative of a class as an element of `E ⊗ F`.
    pub fn lift(&self, class: &QuotientClass) -> Result<TensorElement> {
        let basis = self.canonical_basis();
        if class.canonical.len() != basis.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: basis.len(),
                found: class.canonical.len(),
            });
        }
        let mut coords = vec![Scalar::zero(self.tag); self.n * self.m];
        for (k, c) in basis.into_iter().zip(&class.canonical) {
            coords[k] = c.clone();
        }
        TensorElement::from_coords(self.tag, self.n, self.m, coords)
    }

    fn basis_tensor(&self, flat: usize) -> TensorElement {
        let mut t = TensorElement::zero(self.tag, self.n, self.m);
        t.coords[flat] = Scalar::one(self.tag);
        t
    }

    /// Matrix of a map `E ⊗ F → E ⊗ F` that preserves `W`, on canonical
    /// coordinates.
    fn descend(&self, f: impl Fn(&TensorElement) -> Result<TensorElement>) -> Result<Matrix> {
        let basis = self.canonical_basis();
        let columns = basis
            .iter()
            .map(|&k| Ok(self.project(&f(&self.basis_tensor(k))?)?.canonical))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.tag, basis.len(), &columns)
    }

    /// The ξ-action on the operator-pair quotient, computed from `A ⊗ I`.
    pub fn induced_operator(&self) -> Result<Matrix> {
        let TensorKind::OperatorPair { a, .. } = &self.kind else {
            return Err(AlgebraError::WrongKind { expected: "operator-pair" });
        };
        let id = Matrix::identity(self.tag, self.m);
        self.descend(|t| t.apply_local(a, &id))
    }

    /// The same action computed from `I ⊗ B`; equal to
    /// [`RelationSubspace::induced_operator`] on every input.
    pub fn induced_operator_right(&self) -> Result<Matrix> {
        let TensorKind::OperatorPair { b, .. } = &self.kind else {
            return Err(AlgebraError::WrongKind { expected: "operator-pair" });
        };
        let id = Matrix::identity(self.tag, self.n);
        self.descend(|t| t.apply_local(&id, b))
    }

    /// Whether `self.W ⊆ other.W`.
    pub fn is_subspace_of(&self, other: &RelationSubspace) -> Result<bool> {
        for j in 0..self.generators.cols() {
            if !other.contains(&self.generators.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The natural surjection `(E⊗F)/W → (E⊗F)/W'` for `W ⊆ W'`, on
    /// canonical coordinates. Fails with `NoSolution` if `W ⊄ W'`.
    pub fn surjection_onto(&self, other: &RelationSubspace) -> Result<Matrix> {
        if self.dims() != other.dims() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.n * self.m,
                found: other.n * other.m,
            });
        }
        if !self.is_subspace_of(other)? {
            return Err(AlgebraError::NoSolution);
        }
        let basis = self.canonical_basis();
        let columns = basis
            .iter()
            .map(|&k| Ok(other.project(&self.basis_tensor(k))?.canonical))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.tag, other.quotient_dim(), &columns)
    }
}

/// Both sides of the diagonal two-qubit example and their classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalExampleReport {
    pub a: Matrix,
    pub b: Matrix,
    pub pi: Poly,
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    /// `(π(A) x) ⊗ y`
    pub lhs: TensorElement,
    /// `x ⊗ (π(B) y)`
    pub rhs: TensorElement,
    pub relation_rank: usize,
    pub quotient_dim: usize,
    pub difference_in_relations: bool,
    pub lhs_class: QuotientClass,
    pub rhs_class: QuotientClass,
    /// Whether the two sides already agree in the standard product.
    pub standard_equal: bool,
}

impl DiagonalExampleReport {
    pub fn classes_equal(&self) -> bool {
        self.lhs_class == self.rhs_class
    }

    pub fn all_checks_pass(&self) -> bool {
        self.difference_in_relations && self.classes_equal()
    }
}

/// `A = diag(a, b)`, `B = diag(c, d)`, `x = (u, v)`, `y = (w, z)`:
/// compares `(π(A)x) ⊗ y` with `x ⊗ (π(B)y)` in `⊗_{A,B}` and in `⊗`.
#[allow(clippy::too_many_arguments)]
pub fn diagonal_example_report(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    pi: &Poly,
    u: &Scalar,
    v: &Scalar,
    w: &Scalar,
    z: &Scalar,
) -> Result<DiagonalExampleReport> {
    let tag = pi.tag();
    let left = Matrix::diagonal(tag, &[a.clone(), b.clone()])?;
    let right = Matrix::diagonal(tag, &[c.clone(), d.clone()])?;
    let x = vec![u.clone(), v.clone()];
    let y = vec![w.clone(), z.clone()];
    let lhs = TensorElement::simple(&pi.eval_operator(&left)?.apply(&x)?, &y)?;
    let rhs = TensorElement::simple(&x, &pi.eval_operator(&right)?.apply(&y)?)?;
    let w_space = RelationSubspace::new(
        TensorKind::OperatorPair {
            a: left.clone(),
            b: right.clone(),
        },
        tag,
        2,
        2,
    )?;
    let difference = lhs.sub(&rhs)?;
    Ok(DiagonalExampleReport {
        relation_rank: w_space.rank(),
        quotient_dim: w_space.quotient_dim(),
        difference_in_relations: w_space.contains(difference.coords())?,
        lhs_class: w_space.project(&lhs)?,
        rhs_class: w_space.project(&rhs)?,
        standard_equal: difference.is_zero(),
        a: left,
        b: right,
        pi: pi.clone(),
        x,
        y,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldTag = FieldTag::Rational;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    fn diag(v: &[i64]) -> Matrix {
        Matrix::diagonal(Q, &v.iter().map(|&k| s(k)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn coordinates() {
        let t = TensorElement::simple(&[s(1), s(0)], &[s(1), s(0)]).unwrap();
        assert_eq!(t.coords(), &[s(1), s(0), s(0), s(0)]);
        let t = TensorElement::simple(&[s(1), s(2)], &[s(3), s(4)]).unwrap();
        assert_eq!(t.coords(), &[s(3), s(4), s(6), s(8)]);
        let c = s(5);
        let x = [s(1), s(-2)];
        let y = [s(3), s(7), s(1)];
        let cx: Vec<_> = x.iter().map(|v| v * &c).collect();
        let cy: Vec<_> = y.iter().map(|v| v * &c).collect();
        assert_eq!(
            TensorElement::simple(&cx, &y).unwrap(),
            TensorElement::simple(&x, &cy).unwrap()
        );
        let f5 = FieldTag::prime(5).unwrap();
        assert!(TensorElement::simple(&[s(1)], &[Scalar::one(f5)]).is_err());
    }

    #[test]
    fn relation_kinds() {
        let std = RelationSubspace::new(TensorKind::Standard, Q, 2, 2).unwrap();
        assert_eq!((std.rank(), std.quotient_dim()), (0, 4));
        let id = RelationSubspace::new(
            TensorKind::OperatorPair { a: diag(&[1, 1]), b: diag(&[1, 1]) },
            Q,
            2,
            2,
        )
        .unwrap();
        assert_eq!(id.quotient_dim(), 4);
        let w = RelationSubspace::new(
            TensorKind::OperatorPair { a: diag(&[1, 2]), b: diag(&[1, 3]) },
            Q,
            2,
            2,
        )
        .unwrap();
        assert_eq!(w.rank(), 3);
        assert_eq!(w.canonical_basis(), vec![0]);
        let bad = RelationSubspace::new(
            TensorKind::OperatorPair { a: diag(&[1, 2, 3]), b: diag(&[1, 3]) },
            Q,
            2,
            2,
        );
        assert!(matches!(bad, Err(AlgebraError::DimensionMismatch { .. })));
    }

    #[test]
    fn scaled_branching() {
        for (a, dim) in [(1, 1), (2, 0), (0, 0), (-1, 0)] {
            let w = RelationSubspace::new(TensorKind::ScaledBranching { scale: s(a) }, Q, 1, 1)
                .unwrap();
            assert_eq!(w.quotient_dim(), dim, "a = {a}");
        }
        let half = Scalar::from_fraction(Q, 1, 2).unwrap();
        let kind = TensorKind::ScaledBranching { scale: half };
        assert!(kind.caveat().is_some());
        assert_eq!(RelationSubspace::new(kind, Q, 1, 1).unwrap().quotient_dim(), 0);
        assert!(TensorKind::ScaledBranching { scale: s(1) }.caveat().is_none());
    }

    #[test]
    fn projection_kernel_is_w() {
        let w = RelationSubspace::new(
            TensorKind::OperatorPair {
                a: Matrix::from_i64_rows(Q, &[&[0, 1], &[1, 0]]),
                b: diag(&[1, -1]),
            },
            Q,
            2,
            2,
        )
        .unwrap();
        for j in 0..w.generator_matrix().cols() {
            let g = TensorElement::from_coords(Q, 2, 2, w.generator_matrix().column(j)).unwrap();
            assert!(w.project(&g).unwrap().is_zero());
        }
        for k in w.canonical_basis() {
            let mut coords = vec![s(0); 4];
            coords[k] = s(1);
            let e = TensorElement::from_coords(Q, 2, 2, coords).unwrap();
            assert!(!w.project(&e).unwrap().is_zero());
            assert_eq!(w.lift(&w.project(&e).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn induced_operator_examples() {
        let w = RelationSubspace::new(
            TensorKind::OperatorPair { a: diag(&[1, 1]), b: diag(&[1, 1]) },
            Q,
            2,
            2,
        )
        .unwrap();
        assert_eq!(w.induced_operator().unwrap(), Matrix::identity(Q, 4));
        let w = RelationSubspace::new(
            TensorKind::OperatorPair { a: diag(&[1, 2]), b: diag(&[1, 3]) },
            Q,
            2,
            2,
        )
        .unwrap();
        assert_eq!(w.induced_operator().unwrap(), Matrix::from_i64_rows(Q, &[&[1]]));
        assert_eq!(w.induced_operator_right().unwrap(), w.induced_operator().unwrap());
        let std = RelationSubspace::new(TensorKind::Standard, Q, 2, 2).unwrap();
        assert!(matches!(std.induced_operator(), Err(AlgebraError::WrongKind { .. })));
    }

    #[test]
    fn schmidt_examples() {
        let t = TensorElement::simple(&[s(1), s(2)], &[s(3), s(-1)]).unwrap();
        assert_eq!(t.schmidt_rank(), 1);
        let bell = TensorElement::from_coords(Q, 2, 2, vec![s(1), s(0), s(0), s(1)]).unwrap();
        assert_eq!(bell.schmidt_rank(), 2);
        assert_eq!(TensorElement::zero(Q, 2, 3).schmidt_rank(), 0);
    }

    #[test]
    fn diagonal_example() {
        let pi = Poly::from_i64s(Q, &[1, 0, 1]);
        let r = diagonal_example_report(
            &s(2), &s(3), &s(-1), &s(5), &pi, &s(1), &s(4), &s(-2), &s(7),
        )
        .unwrap();
        assert!(r.all_checks_pass());
        assert!(!r.standard_equal);
        let r = diagonal_example_report(
            &s(2), &s(3), &s(2), &s(3), &Poly::constant(s(4)), &s(1), &s(4), &s(-2), &s(7),
        )
        .unwrap();
        assert!(r.standard_equal && r.all_checks_pass());
        let r = diagonal_example_report(
            &s(2), &s(3), &s(-1), &s(5), &Poly::zero(Q), &s(1), &s(4), &s(-2), &s(7),
        )
        .unwrap();
        assert!(r.lhs.is_zero() && r.lhs_class.is_zero() && r.rhs_class.is_zero());
    }
}
