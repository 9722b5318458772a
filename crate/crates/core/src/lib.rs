//! Region crossing changes on link diagrams.
//!
//! A region crossing change at a face of a link diagram switches every
//! crossing on that face's boundary. This crate decides which crossing sets
//! are reachable by such moves, produces region sets that turn proper links
//! into descending (hence trivial) diagrams, and computes the Arf invariant of
//! proper links both from a Goeritz determinant and from the region signs
//! `A(R)`.

pub mod arf;
pub mod cli;
pub mod codec;
pub mod diagram;
pub mod error;
pub mod gf2;
pub mod region_solver;
pub mod sample;
pub mod unknotter;

pub use codec::{OrientedPDCode, PdCrossing, Sign};
pub use diagram::{Color, Diagram, LinkingMatrix, Region};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use region_solver::{CrossingSelection, IncidenceMatrix, RegionSelection};
pub use unknotter::BasePointOrdering;
