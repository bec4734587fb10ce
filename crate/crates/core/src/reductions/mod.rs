//! Polynomial reductions and their witness maps.
//!
//! * [`coloring`]: planar 3-colouring to three-part set splitting.
//! * [`gadget`]: set splitting to a square-root instance.
//! * [`tails`]: detection of the pendant tail pattern that pins down
//!   neighbourhoods in every square root.
//! * [`witness`]: partitions to roots and roots back to partitions.

pub mod coloring;
pub mod gadget;
pub mod tails;
pub mod witness;

use thiserror::Error;

use crate::graph::GraphError;
use crate::setsplit::{SetSplitError, Violation};

pub use coloring::{
    color_to_setsplit, coloring_to_partition, extend_coloring, find_3_coloring, partition_to_coloring,
    ColorReduction, Coloring3, ColoringInstance, ElementOrigin,
};
pub use gadget::{classify_edge, setsplit_to_graph, EdgeFamily, LabeledGadgetGraph, RoleEntry, RoleMap, VertexRole};
pub use tails::{detect_tails, TailMatch};
pub use witness::{partition_to_root, root_to_partition, splitting_representatives, APEX_LABELS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("input graph is not planar")]
    NotPlanar,
    #[error("input graph has no edges")]
    EmptyEdgeSet,
    #[error("generated label {0:?} collides with an existing vertex")]
    LabelCollision(String),
    #[error("colouring is not proper or not total: {0}")]
    ImproperColoring(String),
    #[error("partition is not a valid splitting: {0}")]
    InvalidPartition(String),
    #[error("instance is invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidInstance(Vec<Violation>),
    #[error("the collection of subsets is empty")]
    EmptyCollection,
    #[error("graph is not a square root of the gadget graph")]
    NotASquareRoot,
    #[error("element {0:?} is adjacent to more than one a-vertex in a square root")]
    DisjointnessViolated(String),
    #[error("extracted partition fails to split subset {0}")]
    ExtractionInvalid(usize),
    #[error("constructed root failed its self-check: {0}")]
    ConstructionSelfCheckFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    SetSplit(#[from] SetSplitError),
}
