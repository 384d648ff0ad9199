//! `K[ξ]`-modules: the structure a linear operator induces on its space,
//! finitely presented modules, and their invariant-factor and
//! elementary-divisor decompositions.

use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::factor::factor_irreducible;
use crate::matrix::{Matrix, PolyMatrix};
use crate::poly::Poly;
use crate::scalar::{FieldTag, Scalar};
use crate::smith::smith_normal_form;

/// A finite-dimensional space `K^n` made into a `K[ξ]`-module by letting
/// `π(ξ)` act as `π(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorModule {
    operator: Matrix,
}

impl OperatorModule {
    pub fn new(operator: Matrix) -> Result<Self> {
        operator.require_square()?;
        if operator.rows() == 0 {
            return Err(AlgebraError::EmptyModule);
        }
        Ok(OperatorModule { operator })
    }

    pub fn dim(&self) -> usize {
        self.operator.rows()
    }

    pub fn tag(&self) -> FieldTag {
        self.operator.tag()
    }

    pub fn operator(&self) -> &Matrix {
        &self.operator
    }

    /// `π · x = π(A) x`.
    pub fn act(&self, pi: &Poly, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        pi.eval_operator(&self.operator)?.apply(x)
    }

    /// Invariant factors via the Smith form of `ξI − A`. The module is
    /// torsion, so the free rank is always 0.
    pub fn decompose(&self) -> Result<ModuleDecomposition> {
        let snf = smith_normal_form(&self.operator.characteristic_matrix()?)?;
        Ok(ModuleDecomposition {
            free_rank: 0,
            invariant_factors: snf.invariant_factors(),
        })
    }

    /// Characteristic polynomial `det(ξI − A)`.
    pub fn characteristic_polynomial(&self) -> Result<Poly> {
        self.operator.characteristic_matrix()?.determinant()
    }
}

/// Reconstructs the operator of a module action from the action itself:
/// column `j` is `ξ · e_j`. The action is spot-checked on `ξ²`.
pub fn operator_from_action<F>(tag: FieldTag, dim: usize, act: F) -> Result<Matrix>
where
    F: Fn(&Poly, &[Scalar]) -> Result<Vec<Scalar>>,
{
    if dim == 0 {
        return Err(AlgebraError::EmptyModule);
    }
    let xi = Poly::xi(tag);
    let basis = |j: usize| -> Vec<Scalar> {
        (0..dim)
            .map(|i| if i == j { Scalar::one(tag) } else { Scalar::zero(tag) })
            .collect()
    };
    let columns = (0..dim)
        .map(|j| act(&xi, &basis(j)))
        .collect::<Result<Vec<_>>>()?;
    let a = Matrix::from_columns(tag, dim, &columns)?;
    let xi2 = xi.pow(2);
    for (j, col) in columns.iter().enumerate() {
        let expected = a.apply(col)?;
        if act(&xi2, &basis(j))? != expected {
            return Err(AlgebraError::InconsistentAction { column: j });
        }
    }
    Ok(a)
}

/// `R^g` modulo the column span of a `g × k` polynomial matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedModule {
    presentation: PolyMatrix,
}

impl PresentedModule {
    pub fn new(presentation: PolyMatrix) -> Result<Self> {
        if presentation.rows() == 0 {
            return Err(AlgebraError::EmptyModule);
        }
        Ok(PresentedModule { presentation })
    }

    /// Free module of rank `g` (no relations).
    pub fn free(tag: FieldTag, generators: usize) -> Result<Self> {
        Self::new(PolyMatrix::zeros(tag, generators, 0))
    }

    pub fn generators(&self) -> usize {
        self.presentation.rows()
    }

    pub fn presentation(&self) -> &PolyMatrix {
        &self.presentation
    }

    pub fn decompose(&self) -> Result<ModuleDecomposition> {
        let snf = smith_normal_form(&self.presentation)?;
        let nonzero = snf.nonzero_diagonal().len();
        Ok(ModuleDecomposition {
            free_rank: self.generators() - nonzero,
            invariant_factors: snf.invariant_factors(),
        })
    }
}

/// `R^s ⊕ R/(a_1) ⊕ … ⊕ R/(a_r)` with `a_1 | … | a_r` monic and nonconstant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleDecomposition {
    pub free_rank: usize,
    pub invariant_factors: Vec<Poly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorsionFlags {
    pub is_torsion: bool,
    pub is_torsion_free: bool,
    pub is_free: bool,
}

impl ModuleDecomposition {
    pub fn torsion_info(&self) -> TorsionFlags {
        let torsion_free = self.invariant_factors.is_empty();
        TorsionFlags {
            is_torsion: self.free_rank == 0,
            is_torsion_free: torsion_free,
            // over a PID a finitely generated module is free iff torsion free
            is_free: torsion_free,
        }
    }

    /// Size of a smallest generating set, `s + r`.
    pub fn minimal_generator_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Whether the invariant factors are monic, nonconstant, and form a
    /// divisibility chain.
    pub fn is_canonical(&self) -> bool {
        self.invariant_factors
            .iter()
            .all(|a| a.is_monic() && a.degree().unwrap_or(0) > 0)
            && self
                .invariant_factors
                .windows(2)
                .all(|w| w[0].divides(&w[1]))
    }

    /// Elementary divisors grouped by prime.
    pub fn primary_decomposition(&self) -> Result<PrimaryDecomposition> {
        let mut by_prime: BTreeMap<(usize, Poly), Vec<u32>> = BTreeMap::new();
        for a in &self.invariant_factors {
            for (prime, e) in factor_irreducible(a)? {
                by_prime
                    .entry((prime.degree().unwrap_or(0), prime))
                    .or_default()
                    .push(e);
            }
        }
        let components = by_prime
            .into_iter()
            .map(|((_, prime), mut exponents)| {
                exponents.sort_unstable();
                PrimaryComponent { prime, exponents }
            })
            .collect();
        Ok(PrimaryDecomposition { components })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimaryComponent {
    pub prime: Poly,
    /// Nondecreasing exponents `α_1 ≤ … ≤ α_k`.
    pub exponents: Vec<u32>,
}

/// `⊕ R/(p_i^{α_ij})`, primes pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimaryDecomposition {
    pub components: Vec<PrimaryComponent>,
}

impl PrimaryDecomposition {
    /// All prime powers `p^α`.
    pub fn elementary_divisors(&self) -> Vec<Poly> {
        self.components
            .iter()
            .flat_map(|c| c.exponents.iter().map(|&e| c.prime.pow(e as u64)))
            .collect()
    }

    /// Chinese-remainder recombination into the invariant-factor chain: the
    /// k-th factor from the end multiplies the k-th largest power of each prime.
    pub fn recombine(&self, tag: FieldTag) -> Vec<Poly> {
        let r = self
            .components
            .iter()
            .map(|c| c.exponents.len())
            .max()
            .unwrap_or(0);
        let mut factors = vec![Poly::one(tag); r];
        for c in &self.components {
            let offset = r - c.exponents.len();
            for (k, &e) in c.exponents.iter().enumerate() {
                factors[offset + k] = &factors[offset + k] * &c.prime.pow(e as u64);
            }
        }
        factors
    }
}

/// Some operator `A` with `A x = y`: maps `x` onto `y` through a coordinate
/// where `x` is nonzero and sends the remaining basis vectors to zero.
pub fn cyclic_witness(x: &[Scalar], y: &[Scalar]) -> Result<Matrix> {
    if x.len() != y.len() {
        return Err(AlgebraError::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let k = x
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(AlgebraError::ZeroVector)?;
    let tag = x[k].tag();
    let n = x.len();
    let inv = x[k].inv();
    let mut a = Matrix::zeros(tag, n, n);
    for (i, yi) in y.iter().enumerate() {
        tag.ensure_same(yi.tag())?;
        a.set(i, k, yi * &inv);
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldTag = FieldTag::Rational;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(Q, c)
    }

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    #[test]
    fn action_examples() {
        let a = Matrix::diagonal(Q, &[s(2), s(3)]).unwrap();
        let m = OperatorModule::new(a.clone()).unwrap();
        let x = vec![s(5), s(7)];
        assert_eq!(m.act(&Poly::constant(s(4)), &x).unwrap(), vec![s(20), s(28)]);
        assert_eq!(m.act(&Poly::xi(Q), &x).unwrap(), a.apply(&x).unwrap());
        // π = ξ² + 1: (5·5, 7·10)
        assert_eq!(m.act(&p(&[1, 0, 1]), &x).unwrap(), vec![s(25), s(70)]);
        assert!(matches!(
            m.act(&Poly::xi(Q), &[s(1)]),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
        assert_eq!(
            OperatorModule::new(Matrix::zeros(Q, 0, 0)),
            Err(AlgebraError::EmptyModule)
        );
    }

    #[test]
    fn operator_recovery() {
        let a = Matrix::from_i64_rows(Q, &[&[1, 2], &[0, 3]]);
        let m = OperatorModule::new(a.clone()).unwrap();
        assert_eq!(operator_from_action(Q, 2, |pi, x| m.act(pi, x)).unwrap(), a);
        let zero = operator_from_action(Q, 2, |pi, x| {
            let c = pi.coeff(0);
            Ok(x.iter().map(|v| v * &c).collect())
        })
        .unwrap();
        assert!(zero.is_zero());
        // ξ acts as A but ξ² as the identity; e_0 is fixed by A so e_1 is caught
        let bogus = operator_from_action(Q, 2, |pi, x| {
            if pi.degree() == Some(1) {
                a.apply(x)
            } else {
                Ok(x.to_vec())
            }
        });
        assert_eq!(bogus, Err(AlgebraError::InconsistentAction { column: 1 }));
    }

    #[test]
    fn operator_decompositions() {
        let f = p(&[2, -1, 0, 1]);
        let m = OperatorModule::new(Matrix::companion(&f).unwrap()).unwrap();
        assert_eq!(m.decompose().unwrap().invariant_factors, vec![f]);
        let m = OperatorModule::new(Matrix::identity(Q, 2)).unwrap();
        assert_eq!(
            m.decompose().unwrap().invariant_factors,
            vec![p(&[-1, 1]), p(&[-1, 1])]
        );
        let m = OperatorModule::new(Matrix::zeros(Q, 1, 1)).unwrap();
        let dec = m.decompose().unwrap();
        assert_eq!(dec.invariant_factors, vec![p(&[0, 1])]);
        assert!(dec.torsion_info().is_torsion);
    }

    #[test]
    fn presented_decompositions() {
        let free = PresentedModule::free(Q, 2).unwrap().decompose().unwrap();
        assert_eq!(free.free_rank, 2);
        assert!(free.invariant_factors.is_empty());
        let flags = free.torsion_info();
        assert!(flags.is_free && flags.is_torsion_free && !flags.is_torsion);
        assert_eq!(free.minimal_generator_count(), 2);

        let pm = PolyMatrix::diagonal(Q, &[p(&[1]), p(&[0, 0, 1])]).unwrap();
        let dec = PresentedModule::new(pm).unwrap().decompose().unwrap();
        assert_eq!((dec.free_rank, dec.invariant_factors.clone()), (0, vec![p(&[0, 0, 1])]));
        assert_eq!(dec.minimal_generator_count(), 1);

        let pm = PolyMatrix::from_rows(Q, vec![vec![p(&[0, 1])], vec![p(&[0, 1])]]).unwrap();
        let dec = PresentedModule::new(pm).unwrap().decompose().unwrap();
        assert_eq!((dec.free_rank, dec.invariant_factors.clone()), (1, vec![p(&[0, 1])]));
        let flags = dec.torsion_info();
        assert!(!flags.is_torsion && !flags.is_torsion_free && !flags.is_free);
    }

    #[test]
    fn mixed_generator_count() {
        let dec = ModuleDecomposition {
            free_rank: 1,
            invariant_factors: vec![p(&[0, 1]), p(&[0, 0, 1])],
        };
        assert_eq!(dec.minimal_generator_count(), 3);
    }

    #[test]
    fn primary_examples() {
        let x = p(&[0, 1]);
        let x1 = p(&[-1, 1]);
        let dec = ModuleDecomposition {
            free_rank: 0,
            invariant_factors: vec![&x * &x1, &x * &x1.pow(2)],
        };
        let prim = dec.primary_decomposition().unwrap();
        let got: Vec<_> = prim
            .components
            .iter()
            .map(|c| (c.prime.clone(), c.exponents.clone()))
            .collect();
        assert!(got.contains(&(x.clone(), vec![1, 1])));
        assert!(got.contains(&(x1.clone(), vec![1, 2])));
        assert_eq!(prim.recombine(Q), dec.invariant_factors);

        let f2 = FieldTag::prime(2).unwrap();
        let f = Poly::from_i64s(f2, &[1, 1, 1]);
        let dec = ModuleDecomposition {
            free_rank: 0,
            invariant_factors: vec![f.clone()],
        };
        let prim = dec.primary_decomposition().unwrap();
        assert_eq!(prim.components.len(), 1);
        assert_eq!((prim.components[0].prime.clone(), prim.components[0].exponents.clone()), (f, vec![1]));
    }

    #[test]
    fn witness_examples() {
        let e1 = vec![s(1), s(0), s(0)];
        let y = vec![s(4), s(-1), s(2)];
        let a = cyclic_witness(&e1, &y).unwrap();
        assert_eq!(a.column(0), y);
        assert_eq!(a.apply(&e1).unwrap(), y);
        let x = vec![s(0), s(3), s(1)];
        assert_eq!(cyclic_witness(&x, &x).unwrap().apply(&x).unwrap(), x);
        assert_eq!(cyclic_witness(&[s(0), s(0)], &[s(1), s(1)]), Err(AlgebraError::ZeroVector));
    }
}
