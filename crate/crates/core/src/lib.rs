//! Token graphs and their cut-generated automorphisms.
//!
//! The library builds the k-token graph of a base graph (vertices are
//! k-subsets, adjacent when they differ by one token slid along a base
//! edge), finds the 2-vertex cuts whose endpoints share all outside
//! neighbours, and materializes the automorphism families those cuts
//! generate: per-cut token flips, their products across all cuts, maps
//! induced by base symmetries, and the complement at half filling. A
//! brute-force oracle and a claim registry turn the published structural
//! facts about these groups into runnable checks.

pub mod cuts;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod report;
pub mod symmetry;
pub mod token;

pub use cuts::{find_cuts, Cut, CutFamily, TupleUniverse};
pub use error::{Error, Result};
pub use graph::{connected_components, is_four_cycle, Graph};
pub use group::{closure, predicted_order, verify_theorem, PermGroup, TheoremReport};
pub use oracle::{brute_force_aut, same_group};
pub use report::{prepare, summarize, ClaimStatus, Pipeline, Summary, VerifyRun};
pub use symmetry::{induce, is_automorphism, phi, psi, AlphaSet, BetaSet, Permutation};
pub use token::{build_token_graph, complement_permutation, TokenGraph};
