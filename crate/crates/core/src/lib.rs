//! Crystallizations of PL manifolds: edge-colored graphs, their dual
//! pseudotriangulations, invariants, connected sums, bistellar simplification
//! and exhaustive census of small cases.

pub mod anneal;
pub mod catalog;
pub mod census;
pub mod complex;
pub mod graph;
pub mod group;
pub mod invariants;
pub mod io;
pub mod moves;
pub mod surgery;
mod unionfind;

pub use anneal::{simplify, AnnealConfig, AnnealError, MoveLog, Outcome, Target};
pub use complex::{CellComplex, ComplexError, FVector, Gluing, Perm, Tier, ValidationReport};
pub use graph::{are_isomorphic, CanonicalCode, ColorSet, ColoredGraph, GraphError};
pub use group::{abelianize, gagliardi_presentation, tietze_simplify, Abelianization, GroupPresentation, TietzeStatus};
pub use invariants::{InvariantReport, SphereCertificate};
pub use moves::{Move, MoveKind};
