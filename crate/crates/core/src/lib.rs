//! Executable constructions for finite-dimensional C*-dynamical systems.
//!
//! A system is a block algebra `A = ⊕ M_{n_i}` acting on `C^d`, a
//! *-endomorphism `δ` given by a multiplicity matrix, and an ideal `J`
//! (a set of blocks). The crate computes the reduction chain `J_n` and its
//! limit `J_∞`, the reduced and canonical systems, the classification
//! predicates, and realizes truncated Fock representations of the bimodule
//! `E = δ(1)A` to check the Toeplitz, covariance and (*)-relations numerically.
//!
//! ```
//! use pimsner_lab::{BlockAlgebra, DynSystem, Endomorphism, reduce_system};
//!
//! let a = BlockAlgebra::new(&[1, 2]).unwrap();
//! let delta = Endomorphism::new(&a, vec![vec![1, 0], vec![2, 0]]).unwrap();
//! let system = DynSystem::new(delta, a.full_ideal()).unwrap();
//! let reduced = reduce_system(&system).unwrap();
//! assert_eq!(reduced.j_infinity().to_string(), "{2}");
//! ```

pub mod algebra;
pub mod bimodule;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fock;
pub mod reduction;
pub mod sweep;

pub type C64 = nalgebra::Complex<f64>;
pub type CMatrix = nalgebra::DMatrix<C64>;

pub use algebra::{direct_sum, quotient, AlgebraElement, BlockAlgebra, DirectSum, Ideal, QuotientData};
pub use bimodule::CorrespondenceShape;
pub use dynamics::{
    canonical_extension, canonical_system, classify, CanonicalExtension, Classification, DynSystem, Endomorphism,
};
pub use error::{Error, Result};
pub use fock::{fock_rep, ConcreteBimodule, CovariantPair, FockRep, ToeplitzPair};
pub use reduction::{reduce_system, ReductionResult};
