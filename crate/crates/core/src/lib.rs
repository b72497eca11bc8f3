//! Exact analysis of longest paths in small graphs: the longest-path set,
//! distance sums from path triples to vertices, crossing counts between
//! paths, predicate checks for the known bounds on those quantities, and
//! the pendant-plus-subdivision construction that scales them.

pub mod bitset;
pub mod checks;
pub mod error;
pub mod exec;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod path;
pub mod report;
pub mod scan;
pub mod search;
pub mod subdivision;
pub mod triple;

pub use bitset::{VertexSet, MAX_VERTICES};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{DistanceVector, Graph};
pub use graph6::{parse_graph6, to_graph6};
pub use path::Path;
pub use report::{emit_analysis, emit_report, Format};
pub use scan::{analyze_one, scan, AnalyzeOptions, GraphAnalysis, ScanConfig, ScanReport, Source, TripleMode};
pub use triple::{CrossingConvention, PathTriple, TripleAnalysis};
pub use search::{
    enumerate_all_simple_paths_oracle, enumerate_longest_paths, has_hamiltonian_path,
    longest_path_length, LongestPathSet, DEFAULT_PATH_CAP,
};
