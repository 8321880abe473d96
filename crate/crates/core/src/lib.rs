//! Finite combinatorial 2-complexes, group actions, covers and equivariant
//! tower liftings.

pub mod actions;
pub mod checkers;
pub mod complex;
pub mod coset;
pub mod cover;
pub mod diagrams;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod io;
pub mod lazy;
pub mod maps;
pub mod oracle;
pub mod pi1;
pub mod reduction;
pub mod simplicial;
pub mod tower;

pub use actions::{EqMap, FinAction};
pub use complex::{Cell, Complex2, LinkGraph, Subcomplex, ValidationReport};
pub use error::{Error, Result};
pub use group::FinGroup;
pub use maps::{CombMap, FaceImage};
pub use simplicial::SimpComplex;
