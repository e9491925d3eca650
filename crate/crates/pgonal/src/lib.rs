//! Exact combinatorics of cyclic p-gonal branch data.
//!
//! The crate classifies monodromy exponent tuples of cyclic p-fold covers of
//! the sphere into equisymmetric strata, pinches chain pants decompositions
//! of the quotient sphere into symbolic stable nodal surfaces, and answers
//! adjacency and isolation questions about the strata through their boundary
//! points. Everything is exact integer arithmetic; the only floating-point
//! value anywhere is the collar length bound.
//!
//! The core is `no_std` (with `alloc`); IO, CLI and serialization live in the
//! companion `pgonal-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod boundary_graph;
pub mod connector;
pub mod degeneration;
pub mod monodromy;
pub mod oracle;
pub mod residue;
pub mod strata;

pub use boundary_graph::{BoundaryPoint, StrataGraph};
pub use connector::TrigonalArrangement;
pub use degeneration::{LiftedComponent, NodalSurface, PieceLabel, QuotientPiece};
pub use monodromy::{MonodromyTuple, SignedCounts};
pub use residue::{PrimeModulus, Residue};
pub use strata::{R4TypeTag, StratumClass};
