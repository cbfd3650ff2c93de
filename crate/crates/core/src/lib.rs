//! Hodge–Deligne polynomials of moduli spaces of coherent systems of type
//! `(n, d, k)` with `n - k = 2`, the spaces they are built from, discrete
//! invariants of the quotient-classifying sets, and a finite-field oracle.

pub mod bipoly;
pub mod checks;
pub mod counts;
pub mod error;
pub mod fforacle;
pub mod moduli;
pub mod report;
pub mod spaces;
pub mod strata;

pub use bipoly::{BiPoly, PolyError, UniPoly};
pub use error::{HodgeError, Result};
pub use moduli::{ClosedFormReading, GlReport};
pub use report::CheckReport;
pub use strata::{ModuliParams, StratumSpec};
