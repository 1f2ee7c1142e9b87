//! qrlab: exact computation and batch verification of quadratic-residue
//! products, quartic Gauss and Jacobi sums, Stickelberger congruences,
//! class numbers, fundamental units and Dirichlet L-values at negative
//! integers, over ranges of odd primes.
//!
//! The crate is organized around six layers:
//!
//! - [`modcore`] - residue symbols, factorials, primitive roots, modular
//!   square roots; the substrate everything else uses.
//! - [`classfield`] - fundamental units, class numbers, B_{2,chi},
//!   exact L(-1,chi) and the residue sums A_p, B_p.
//! - [`quartic`] - p = a^2 + 16 b^2, the quartic character chi_pi, exact
//!   Jacobi sums, the sign constant C_p.
//! - [`cyclotomic`] - Gauss sums as cyclotomic integers and their
//!   (zeta_p - 1)-adic expansions (Stickelberger).
//! - [`analytic`] - arbitrary-precision numeric checks of the Gauss-sum
//!   and cyclotomic-product identities (plus [`bigcomplex`] underneath).
//! - [`verify`] / [`scan`] / [`table`] / [`report`] - theorem runners,
//!   the batch scanner and its persisted reports.

pub mod analytic;
pub mod bigcomplex;
pub mod classfield;
pub mod cyclotomic;
pub mod error;
pub mod modcore;
pub mod quartic;
pub mod report;
pub mod scan;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
