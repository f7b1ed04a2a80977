//! Combinatorics of strict partitions for spin representations of the
//! double covers of symmetric and alternating groups, mostly in
//! characteristic 3.

pub mod bars;
pub mod branching;
pub mod classify;
pub mod decimal;
pub mod dimensions;
pub mod error;
pub mod families;
pub mod ladders;
pub mod partitions;
pub mod tableaux;
pub mod verify;
pub mod wreath;

pub use error::{Error, Result};
pub use partitions::{OddPrime, Partition};
