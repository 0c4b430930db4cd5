//! Rank-metric MRD codes of the family `H_{n,k,σ}(f1, f2)` and explicit
//! received words whose decoding lists are exponentially large.
//!
//! The crate is organised bottom-up:
//!
//! * [`galois`]: the field tower `F_p ⊆ F_q ⊆ F_{q^n} ⊆ F_{q^m}`.
//! * [`linearized`]: σ-linearized polynomials, Moore matrices, subspace polynomials.
//! * [`codes`]: Gabidulin, twisted and Trombetti–Zhou codes as evaluation codes.
//! * [`constructions`]: families of subspace polynomials agreeing on top coefficients.
//! * [`adversary`]: list-size bounds and the received-word builders.
//! * [`oracle`]: brute-force ground truth used to certify the builders.
//! * [`descriptor`]: JSON forms of codes, experiments and reports.
//! * [`selftest`]: the acceptance suite.

pub mod adversary;
pub mod codes;
pub mod constructions;
pub mod descriptor;
pub mod error;
pub mod galois;
pub mod linalg;
pub mod linearized;
pub mod oracle;
pub mod selftest;

pub use error::{Error, Result};
pub use galois::{Fe, FieldElement, FieldTower, GaloisField, Level, NormTarget};
pub use linearized::{SigmaPoly, Subspace};
