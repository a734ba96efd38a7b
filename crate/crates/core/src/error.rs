//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Edge-list or graph6 input that cannot be turned into a graph.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A vertex label or index that does not exist in the graph.
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),

    /// Operation requires a connected graph.
    #[error("graph is not connected")]
    Disconnected,

    /// Token count outside 1..=n-1.
    #[error("invalid token count k={k} for n={n} vertices")]
    InvalidK { k: usize, n: usize },

    /// The bitset representation holds at most 64 base vertices.
    #[error("graph has {0} vertices; token operations support at most 64")]
    TooManyVertices(usize),

    /// C(n,k) exceeds the configured construction cap.
    #[error("token graph would have {needed} vertices, above the cap of {cap}")]
    TokenGraphTooLarge { needed: u128, cap: usize },

    /// The flat tuple index is a 64-bit set; more distribution tuples than
    /// that cannot be addressed.
    #[error("tuple universe has {0} members; at most 63 are supported")]
    TooManyTuples(usize),

    /// Group enumeration (closure or automorphism search) hit its cap.
    #[error("element cap {cap} exceeded ({found} elements found so far)")]
    CapExceeded { cap: usize, found: usize },

    /// Brute-force search is restricted to small carriers.
    #[error("graph has {n} vertices; brute-force search is limited to {limit}")]
    OracleTooLarge { n: usize, limit: usize },

    /// A map that was required to be an automorphism is not one.
    #[error("{0} is not an automorphism of the graph")]
    NotAutomorphism(String),

    /// `verify_commutation` requires a member of the x-label stabilizer.
    #[error("permutation does not stabilize the cut x-labels")]
    NotInStabilizer,

    /// A token move needs exactly one token on the cut.
    #[error("configuration meets the cut in {0} vertices, expected exactly 1")]
    BadCutIntersection(usize),

    /// Complement arithmetic on tuples needs k = n/2.
    #[error("complement on tuples requires k = n/2 (got k={k}, n={n})")]
    HalfComplementRequired { k: usize, n: usize },

    /// Predicted order and the wreath comparison need at least one cut.
    #[error("graph has no same-neighbour 2-cut; the order formula is vacuous")]
    TheoremVacuous,

    /// Two permutations or groups live on different carriers.
    #[error("carrier mismatch: degree {0} vs {1}")]
    CarrierMismatch(usize, usize),

    /// Configuration popcount does not match the token count.
    #[error("configuration has {got} tokens, expected {expected}")]
    BadConfigSize { got: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
