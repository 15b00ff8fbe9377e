//! Traffic grooming on bidirectional WDM rings with symmetric shortest-path
//! routing.
//!
//! The clockwise half of the problem is a partition of the shortest-path
//! tournament `T_N` into blocks whose per-arc load stays within the grooming
//! factor `C`; the cost is the total number of block vertices (ADMs).

pub mod bounds;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod io;
pub mod ring;
pub mod solver;

pub use error::{GroomingError, Result};
pub use ring::{Arc, Block, GroomingSolution, HalfArcRule, Node, Provenance, RingInstance};
