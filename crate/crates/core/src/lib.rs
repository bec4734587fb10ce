//! Graph square roots and the hardness pipeline around them: planar
//! 3-colouring to three-part set splitting, set splitting to a square-root
//! instance, witness translation in both directions, and an exact
//! square-root search driven by forced tails.

pub mod dot;
pub mod graph;
pub mod io;
pub mod planarity;
pub mod reductions;
pub mod report;
pub mod rootsolver;
pub mod setsplit;

pub use graph::{
    is_subgraph, neighborhood_clique_check, square, square_discrepancy, verify_square_root, Graph,
    GraphBuilder, GraphError, SquareDiscrepancy, VertexPair,
};
pub use planarity::{find_apex_set, is_apex_with, is_planar, ApexCertificate};
pub use rootsolver::{certify_no_root, solve_square_root, SolveOptions, SolveOutcome, SolveReport};
pub use setsplit::{
    incidence_graph, solve_setsplit_bruteforce, validate_instance, verify_partition, Partition3,
    SetSplitInstance, Violation,
};
