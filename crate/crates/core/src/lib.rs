//! Exact computer algebra for the fermionic realization of `U_q(su(N))`.
//!
//! The crate is layered bottom-up: exact scalars, the fermion algebra
//! `A(N)` in normal form, its Fock representation, Z₂-graded tensor powers,
//! the quantum-group generators and coproduct, the family of tensor
//! homomorphisms `A(N) → A(N) ⊗ A(N)`, and the free-fermion spectrum solver
//! built on top of them. Verification routines return [`report::Report`]s.

pub mod algebra;
pub mod clifford;
pub mod config;
pub mod error;
pub mod fock;
pub mod homs;
pub mod linalg;
pub mod qgroup;
pub mod report;
pub mod scalar;
pub mod spectra;
pub mod tensor;

pub use error::{Error, Result};
