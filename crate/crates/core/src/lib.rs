//! Exact construction, verification and classification of rank-one modules
//! that are free over the Cartan part of the Nappi-Witten algebra `H4`, its
//! affinization, `Vir(0,0)` and the affine-Virasoro Nappi-Witten algebra.
//!
//! Scalars are exact rationals and module elements are sparse polynomials,
//! so every check in this crate is an exact identity, never a tolerance.

pub mod classify;
pub mod error;
pub mod exactpoly;
pub mod irreducible;
pub mod liealg;
pub mod modfam;
pub mod specdsl;
pub mod verify;

pub use error::{Error, Result};
