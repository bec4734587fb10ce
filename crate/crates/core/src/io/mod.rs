//! File formats shared by the CLI and the FFI layer.

pub mod edgelist;

pub use edgelist::{parse_edge_list, write_canonical_edge_list, write_edge_list, ParseError};
