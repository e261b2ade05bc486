//! Finite fuzzy simplicial sets and extended pseudo-metric spaces, the
//! finite metric realization and singular nerve between them, and a small
//! exact UMAP built on top.

pub mod epmet;
pub mod error;
pub mod fuzzy;
pub mod graph;
pub mod json;
pub mod realization;
pub mod simplicial;
pub mod umap;

pub use epmet::{Distance, FiniteEPMet, Lipschitz, Partition, PointMap};
pub use error::{Error, Result};
pub use fuzzy::{ClassicalFuzzySet, Level, LevelFunction, TConorm};
pub use graph::FuzzyGraph;
pub use realization::{AdjunctionReport, NerveResult, RealizationResult};
pub use simplicial::{SimplexMorphism, TruncatedSimplicialFuzzySet, Violation};
pub use umap::{Dataset, Embedding, UmapParams};
