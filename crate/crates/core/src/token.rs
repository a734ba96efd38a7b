//! k-token graphs: vertices are the k-subsets of a base graph's vertices,
//! adjacent when their symmetric difference is a base edge. Configurations
//! are 64-bit bitsets ordered by colexicographic rank.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symmetry::Permutation;

/// Default cap on the number of configurations a build will materialize.
pub const DEFAULT_TOKEN_CAP: usize = 1_000_000;

/// A placement of k tokens: bit v set means a token sits on base vertex v.
pub type TokenConfig = u64;

/// Binomial coefficient with no overflow for the supported range (n <= 64).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Colexicographic rank of a configuration: for members a_1 < ... < a_k,
/// rank = sum of C(a_i, i).
pub fn rank(c: TokenConfig) -> usize {
    let mut r: u128 = 0;
    let mut i = 0usize;
    let mut bits = c;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        i += 1;
        r += binomial(v, i);
    }
    r as usize
}

/// Inverse of `rank` for the k-subsets of {0..n-1}.
pub fn unrank(mut r: usize, n: usize, k: usize) -> TokenConfig {
    let mut c: TokenConfig = 0;
    let mut hi = n;
    for i in (1..=k).rev() {
        // Largest a with C(a, i) <= r; members are found high to low.
        let mut a = hi - 1;
        while binomial(a, i) > r as u128 {
            a -= 1;
        }
        c |= 1 << a;
        r -= binomial(a, i) as usize;
        hi = a;
    }
    c
}

/// Members of a configuration, ascending.
pub fn config_members(c: TokenConfig) -> Vec<usize> {
    let mut out = Vec::with_capacity(c.count_ones() as usize);
    let mut bits = c;
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    out
}

/// Human-readable name of a configuration, e.g. `{x1,w}`.
pub fn config_label(g: &Graph, c: TokenConfig) -> String {
    let names: Vec<&str> = config_members(c).iter().map(|&v| g.label(v)).collect();
    format!("{{{}}}", names.join(","))
}

/// The k-token graph of a base graph. Vertex i is the configuration of
/// colex rank i; adjacency is "slide one token along a base edge".
#[derive(Debug, Clone)]
pub struct TokenGraph {
    base: Graph,
    k: usize,
    verts: Vec<TokenConfig>,
    adj: Vec<Vec<usize>>,
}

/// Build with the default construction cap.
pub fn build_token_graph(g: &Graph, k: usize) -> Result<TokenGraph> {
    build_token_graph_with_cap(g, k, DEFAULT_TOKEN_CAP)
}

/// Build F_k(g), refusing to materialize more than `cap` configurations.
pub fn build_token_graph_with_cap(g: &Graph, k: usize, cap: usize) -> Result<TokenGraph> {
    let n = g.n();
    if n > 64 {
        return Err(Error::TooManyVertices(n));
    }
    if k == 0 || k >= n {
        return Err(Error::InvalidK { k, n });
    }
    let count = binomial(n, k);
    if count > cap as u128 {
        return Err(Error::TokenGraphTooLarge { needed: count, cap });
    }
    let count = count as usize;
    let mut verts = Vec::with_capacity(count);
    for r in 0..count {
        verts.push(unrank(r, n, k));
    }
    let mut adj = vec![Vec::new(); count];
    for (i, &a) in verts.iter().enumerate() {
        let mut occupied = a;
        while occupied != 0 {
            let v = occupied.trailing_zeros() as usize;
            occupied &= occupied - 1;
            for &u in g.neighbours(v) {
                if a & (1 << u) == 0 {
                    let b = a ^ (1 << v) ^ (1 << u);
                    adj[i].push(rank(b));
                }
            }
        }
        adj[i].sort_unstable();
    }
    Ok(TokenGraph { base: g.clone(), k, verts, adj })
}

impl TokenGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of configurations, C(n,k).
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn config(&self, i: usize) -> TokenConfig {
        self.verts[i]
    }

    pub fn configs(&self) -> &[TokenConfig] {
        &self.verts
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Index of a configuration (its colex rank), checking the popcount.
    pub fn index_of(&self, c: TokenConfig) -> Result<usize> {
        let got = c.count_ones() as usize;
        if got != self.k {
            return Err(Error::BadConfigSize { got, expected: self.k });
        }
        Ok(rank(c))
    }

    /// Label of the i-th configuration, e.g. `{x1,w}`.
    pub fn label(&self, i: usize) -> String {
        config_label(&self.base, self.verts[i])
    }

    /// Whether the token count is exactly half the base vertex count — the
    /// regime where complementation is itself a symmetry.
    pub fn is_half(&self) -> bool {
        2 * self.k == self.base.n()
    }

    /// Materialize as a plain labelled graph (for search or emission).
    pub fn as_graph(&self) -> Graph {
        let labels: Vec<String> = (0..self.len()).map(|i| self.label(i)).collect();
        let edges: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
            .collect();
        Graph::from_labeled_edges(labels, &edges)
    }
}

/// The map sending every configuration to its complement, as a permutation
/// of F_k. Only defined when k = n/2 (otherwise the complement has n-k
/// tokens and lives in a different token graph).
pub fn complement_permutation(tg: &TokenGraph) -> Result<Permutation> {
    let n = tg.base().n();
    if !tg.is_half() {
        return Err(Error::HalfComplementRequired { k: tg.k(), n });
    }
    let full: TokenConfig = if n == 64 { !0 } else { (1 << n) - 1 };
    let map: Vec<u32> = tg.configs().iter().map(|&c| rank(full ^ c) as u32).collect();
    Ok(Permutation::from_images(map))
}

/// The complement bijection from F_k onto F_{n-k} over the same base graph:
/// entry i is the target index of source configuration i. Verified to carry
/// edges to edges in both directions.
pub fn complement_map_to(from: &TokenGraph, to: &TokenGraph) -> Result<Vec<usize>> {
    let n = from.base().n();
    if to.base() != from.base() {
        return Err(Error::CarrierMismatch(from.base().n(), to.base().n()));
    }
    if to.k() != n - from.k() {
        return Err(Error::InvalidK { k: to.k(), n });
    }
    let full: TokenConfig = if n == 64 { !0 } else { (1 << n) - 1 };
    let map: Vec<usize> = from.configs().iter().map(|&c| rank(full ^ c)).collect();
    for i in 0..from.len() {
        for &j in from.neighbours(i) {
            if !to.has_edge(map[i], map[j]) {
                return Err(Error::NotAutomorphism("complement map".into()));
            }
        }
    }
    // Edge counts agree, so an injective edge-preserving map is onto edges.
    if from.edge_count() != to.edge_count() {
        return Err(Error::NotAutomorphism("complement map".into()));
    }
    Ok(map)
}
