//! Finite-scale Weyl systems on Hilbert modules over matrix algebras.
//!
//! Everything is computed at desk scale: a finite abelian group `G`, the
//! coefficient algebra `M_d(C)`, and an action of `G` on `M_d` by inner
//! automorphisms. On top of that the crate builds the function module
//! `L2(G, M_d, alpha)`, covariant representation quadruples and their
//! validator, the generalized Fourier transform, finite crossed-product
//! convolution algebras, rank-one reduction of modules to Hilbert spaces,
//! and an executable uniqueness theorem: every valid representation
//! quadruple is decomposed into a direct sum of copies of the canonical one
//! by an explicitly constructed unitary, with machine-checkable residuals.
//!
//! ```
//! use modweyl::{Action, FiniteAbelianGroup};
//! use modweyl::svn::{decompose, random_heisenberg};
//! use modweyl::weyl::{schrodinger, validate_heisenberg};
//!
//! // the system: Z_4 acting on M_2 through diag(1, i)
//! let group = FiniteAbelianGroup::cyclic(4)?;
//! let mut gen = modweyl::linalg::identity(2);
//! gen[(1, 1)] = num_complex::Complex64::new(0.0, 1.0);
//! let action = Action::from_generators(group, &[gen])?;
//!
//! // the canonical quadruple satisfies all seven axioms
//! let rep = schrodinger(&action)?;
//! assert!(validate_heisenberg(&rep, 1e-10)?.passed());
//!
//! // a seeded triple-multiplicity oracle decomposes back to 3 copies
//! let oracle = random_heisenberg(&action, 3, 7)?;
//! let dec = decompose(&oracle, 1e-10)?;
//! assert_eq!(dec.multiplicity, 3);
//! assert!(dec.worst_residual() < 1e-8);
//! # Ok::<(), modweyl::Error>(())
//! ```

pub mod algebra;
pub mod crossed;
pub mod error;
pub mod group;
pub mod harness;
pub mod hilbert;
pub mod linalg;
pub mod reduction;
pub mod rng;
pub mod svn;
pub mod weyl;

pub use algebra::{op_norm, rank_one, validate_action, Action, DEFAULT_TOL};
pub use error::{Error, Result};
pub use group::{Character, FiniteAbelianGroup, GroupElement};
pub use hilbert::{
    direct_sum_copies, direct_sum_modules, direct_sum_operators, direct_sum_vectors, theta,
    HModule, ModuleOperator, ModuleVector,
};
pub use linalg::{CMat, CVec};
