//! Reference implementations and generators for tests.
//!
//! The oracles here deliberately avoid the library's elimination, Smith
//! form and factorization code. They only rely on scalar field operations
//! and on the `Poly`/`Matrix` containers, and use slow textbook methods:
//! cofactor expansion, determinantal divisors, Krylov dependence, trial
//! division.

pub mod gen;
pub mod oracle;
