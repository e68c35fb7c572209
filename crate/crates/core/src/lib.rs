//! Exact integer machinery for the maximal dimension of compact
//! subvarieties of `A_g`, `M_g^ct` and related moduli spaces.
//!
//! The crate computes `dmax(g)`, the Satake classification data, the
//! dominated-pair dynamic program `mdsp*`, the multiset efficiency test and
//! the final recursions, and re-verifies each finite lemma exhaustively.
//! Every verifier returns a [`VerificationReport`].
//!
//! ```
//! use agbound::{dmax, moduli::dmc_ag};
//! assert_eq!(dmax(18).unwrap(), 20);
//! assert_eq!(dmc_ag(18).unwrap().dmc, 20);
//! ```

pub mod arith;
pub mod efficiency;
pub mod error;
pub mod moduli;
pub mod pairs;
pub mod parse;
pub mod report;
pub mod satake;
pub mod tables;

pub use arith::{dmax, half_product, keel_sadun_bound, BoundKind, GenusValue, Pair};
pub use error::{Error, Result};
pub use parse::GenusRange;
pub use report::{Status, VerificationReport};
