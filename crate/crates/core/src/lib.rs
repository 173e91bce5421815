//! Indefinite theta functions on complex tori.
//!
//! The crate evaluates cone-restricted theta sums for period matrices whose
//! imaginary part has signature `(k, n - k)`, transforms them under the theta
//! group, and checks the surrounding identities either numerically (heat
//! equation, quasi-periodicity, contour coboundaries) or exactly (Koszul
//! resolutions over the group ring of the lattice).
//!
//! Start from [`theta::cone_sum`] for evaluation, [`modular`] for the group
//! action and [`harness`] for the verification suites behind the `theta` binary.

pub mod error;
pub mod harness;
pub mod heat;
pub mod koszul;
pub mod lattice;
pub mod modular;
pub mod numeric;
pub mod reduced;
pub mod theta;

pub use error::{Error, Result};
