//! Walk entropy, subgraph centrality and the Estrada index of simple
//! undirected graphs, with an exact integer decision procedure for
//! walk-regularity.
//!
//! For a graph with adjacency matrix `A` and inverse temperature `beta > 0`,
//! the subgraph centralities `y_i = (e^{beta A})_ii` sum to the Estrada index
//! `Z = tr(e^{beta A})`, and the walk entropy is the Shannon entropy of
//! `p_i = y_i / Z`. It equals `ln n` for walk-regular graphs (every
//! `diag(A^k)` constant), stays strictly below `ln n` for other graphs, and
//! [`classify`] places every graph in one of three classes accordingly.
//!
//! ```
//! use walkgauge::{classify, generate, FamilySpec, WalkClass};
//!
//! let g = generate(&FamilySpec::TwinK4e).unwrap();
//! let c = classify(&g).unwrap();
//! assert_eq!(c.class, WalkClass::RegularNotWalkRegular);
//! assert_eq!(c.witness.unwrap().k, 3);
//! ```

pub mod classify;
pub mod entropy;
pub mod error;
pub mod exact;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod grid;
pub mod report;
pub mod spectral;
pub mod verify;

pub use classify::{
    classify, classify_with_grid, walk_regularity_equivalence_check, Classification,
    EquivalenceReport, WalkClass,
};
pub use entropy::{
    bg_bound_check, bg_constant, diagonal_variance, entropy_profile, entropy_via_z,
    limit_infinity_entropy, sigma_d_profile, walk_entropy, Analyzer, EntropyPoint, EntropyProfile,
    LimitEntropy,
};
pub use error::{Error, Result};
pub use exact::{
    characteristic_polynomial, diagonal_sequence, hamilton_reduction_check, is_walk_regular_exact,
    DiagonalSequence, WalkRegularity, Witness,
};
pub use families::{expected_class, generate, search_regular_not_walk_regular, FamilySpec};
pub use graph::{
    connected_components, emit_edge_list, is_connected, is_regular, parse_edge_list,
    AdjacencyMatrix, Graph, DEFAULT_MAX_DENSE_N,
};
pub use graph6::{emit_graph6, parse_graph6, parse_graph6_lines};
pub use grid::{BetaGrid, Scale};
pub use spectral::{
    eigendecompose, exp_diagonal, partition_function, subgraph_centrality, ExpDiagonal,
    PartitionFunction, Spectrum,
};
pub use verify::{run_battery, run_battery_with, CheckResult, Tolerances};
