//! Cell decompositions of CP^1, the Fermat curve, CP^2 and the Fermat
//! surface, with integral homology, symmetry actions and mesh export.

pub mod chain;
pub mod chart;
pub mod cp2;
pub mod cp2_chart;
pub mod curve;
pub mod error;
pub mod export;
pub mod homology;
pub mod label;
pub mod projective;
pub mod realize;
pub mod report;
pub mod sparse;
pub mod surface;
pub mod symmetry;
pub mod verify;

pub use chain::{build_complex, orient_chain, Cell, CellComplex, ChainComplex, SpaceTag};
pub use error::{Error, Result};
pub use export::{ExportOptions, MeshBundle, ProjectionSpec, Selection};
pub use homology::{betti_numbers, HomologyResult};
pub use label::{CellKind, CellLabel, Cp1Label, Cp2Label, CurveLabel, Family, Side, SurfaceLabel};
pub use projective::{ProjectivePoint, C64};
pub use report::ValidationReport;
pub use sparse::SparseMatrix;
pub use surface::PVertex;
pub use symmetry::{CellPermutation, GroupElement, OrbitReport, SymmetryContext};
