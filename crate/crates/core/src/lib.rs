//! Finite discrete dynamical systems on products of chains under the
//! cooperative order.

pub mod antichain;
pub mod constructions;
pub mod dynamics;
pub mod embedding;
pub mod error;
pub mod irreducibility;
pub mod mapfile;
pub mod monotone;
pub mod report;
pub mod smale;
pub mod state;
pub mod verify;

pub use dynamics::{orbit_decompose, Dynamics, OrbitDecomposition, TotalMap};
pub use error::{Error, Result};
pub use state::{Comparison, Direction, Relation, State, StateSpace};
