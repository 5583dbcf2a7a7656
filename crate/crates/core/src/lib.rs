//! Exact computation, construction, and verification of multicolor Ramsey
//! numbers `R(K_{1,n_1}, ..., K_{1,n_c}, P_m)`: closed-form values and
//! bounds, explicit lower-bound colorings with machine-checkable
//! certificates, and an exhaustive search engine for small orders.

pub mod coloring;
pub mod graph;
pub mod hamilton;
pub mod path;
pub mod ramsey;
pub mod search;
pub mod witness;

pub use coloring::{
    bounded_degree_decomposition, delta_edge_coloring_multipartite, parse_coloring_text,
    proper_edge_coloring, ColoringError, EdgeColoring,
};
pub use graph::{
    complete_multipartite, disjoint_union_cliques, Graph, GraphError, MultipartiteSpec, MAX_ORDER,
};
pub use hamilton::{hamiltonian_decomposition, HamDecomposition, HamError};
pub use path::{contains_path, contains_star, longest_path_order, PathReport};
pub use ramsey::{
    classify, predicted_value, stars_only_value, Clause, InstanceError, InstanceProfile,
    Prediction, StarPathInstance, ValueOrBounds,
};
pub use search::{
    arrowing_search, enumerate_instances, oracle_sweep, ramsey_exact, search_witness, Budget,
    ExactOutcome, SearchOutcome, SearchResult, SearchStats, SweepLimits, SweepReport, SweepRow,
};
pub use witness::{
    build_witness, verify_certificate, verify_raw, CertificateData, CertificateParseError,
    CheckFailure, VerifyReport, WitnessCertificate, WitnessError,
};
