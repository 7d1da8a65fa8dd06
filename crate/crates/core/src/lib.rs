//! Importance measures for the elements of a small ground set with respect
//! to a monotonically increasing predicate.
//!
//! The building blocks are an evaluation-counting [`Oracle`], extraction of
//! single minimal sets and minimal breaks ([`minimal`]), enumeration of
//! whole families and their hitting-set duality ([`enumerate`]), exact
//! Shapley-Shubik, Banzhaf and Deegan-Packel indices ([`indices`]), and
//! Monte-Carlo estimates ([`sampling`]).

pub mod enumerate;
pub mod error;
pub mod family;
pub mod generate;
pub mod indices;
pub mod instances;
pub mod io;
pub mod minimal;
pub mod oracle;
pub mod rng;
pub mod sampling;
pub mod subset;

pub use error::{Error, Result};
pub use family::{min_msp_size, FamilyKind, MinimalFamily};
pub use instances::Instance;
pub use oracle::{Oracle, Predicate};
pub use subset::{GroundSet, Subset};
