//! Exact computer algebra for operator-induced `K[ξ]`-modules.
//!
//! A linear operator `A` on `K^n` turns the space into a module over the
//! polynomial ring `K[ξ]` by `π · x = π(A) x`. This crate computes the
//! structure of such modules (invariant factors via the Smith normal form,
//! elementary divisors via factorization), generalized tensor products
//! `E ⊗_{A,B} F` as explicit quotient spaces, and equivalence of formal
//! sequences of pairs under the corresponding rewriting rules.
//!
//! Supported fields are the rationals, the Gaussian rationals `Q(i)` and
//! prime fields `F_p`. All arithmetic is exact.

pub mod error;
pub mod factor;
pub mod json;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod rewrite;
pub mod scalar;
pub mod smith;
pub mod tensor;

pub use error::{AlgebraError, Result};
pub use factor::{factor_irreducible, squarefree_decomposition};
pub use matrix::{EchelonResult, Matrix, PolyMatrix};
pub use module::{
    cyclic_witness, operator_from_action, ModuleDecomposition, OperatorModule, PresentedModule,
    PrimaryComponent, PrimaryDecomposition, TorsionFlags,
};
pub use poly::Poly;
pub use rewrite::{
    closure_oracle, decide_equiv, parse_expression, EquivalenceDecider, FormalPair, FormalSequence,
    OracleBudget, RewriteStep, RuleSet,
};
pub use scalar::{FieldOp, FieldTag, Scalar};
pub use smith::{smith_normal_form, SmithForm};
pub use tensor::{
    diagonal_example_report, DiagonalExampleReport, QuotientClass, RelationSubspace, TensorElement,
    TensorKind,
};
