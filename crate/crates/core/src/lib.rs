//! Finite pointed racks, finite groups, and crossed modules of both.
//!
//! Everything is table-driven and checked exhaustively: constructors
//! validate their outputs, and the certification routines enumerate whole
//! candidate spaces rather than trusting algebraic arguments.

pub mod cli;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod functors;
pub mod group;
pub mod group_xmod;
pub mod iso;
pub mod pullback;
pub mod rack;
pub mod xmod;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom};
pub use rack::{FiniteRack, RackHom, UnpointedRack};
