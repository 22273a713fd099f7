//! Exact computations around ideals of the form J = (z) + I_n(phi) in a
//! bigraded polynomial ring S = k[x_1..x_n, y_1..y_p], where z = x * phi for
//! an n x m matrix phi of y-linear forms.
//!
//! The crate provides four layers:
//!
//! * sparse bihomogeneous polynomials and dense exact linear algebra over
//!   prime fields or the rationals ([`bipoly`], [`exactla`]);
//! * free complexes with shift bookkeeping: Koszul complexes, x-graded
//!   strands, graded duals, and the Eagon-Northcott complex of a y-linear
//!   matrix ([`freecomplex`], [`en`]);
//! * closed-form bigraded Betti data for S/J together with a brute-force
//!   Koszul-homology oracle that recomputes the same numbers from generators
//!   ([`bkm`], [`oracle`]);
//! * diagonal subalgebra certificates (Cohen-Macaulay, Koszul) and the Rees
//!   algebra pipeline that produces J from a Hilbert-Burch presentation
//!   ([`diagonal`], [`rees`]).
//!
//! Everything is exact: no floating point, no randomized algorithms, and all
//! iteration orders are deterministic.

pub mod bipoly;
pub mod bkm;
pub(crate) mod comb;
pub mod diagonal;
pub mod en;
mod error;
pub mod exactla;
pub mod field;
pub mod formats;
pub mod freecomplex;
pub mod oracle;
pub mod rees;

pub use error::{Error, Result};
