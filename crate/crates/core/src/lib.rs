//! Combinatorial analysis of reduced nodal curves through their dual
//! graphs: arithmetic genus, connectivity, Clifford index bounds with
//! witness sheaves, and predicted Koszul table shapes.

pub mod clifford;
pub mod connectivity;
pub mod curve;
pub mod error;
pub mod format;
pub mod generators;
pub mod koszul;

pub use connectivity::{connectivity_number, Answer, Connectivity, ConnectivityReport};
pub use curve::{ComponentId, ComponentRecord, CurveGraph, Decomposition, Flag, SetPartition, Subcurve};
pub use error::{Error, Result};
