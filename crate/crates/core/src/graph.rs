//! Simple undirected graphs with dense 0-based vertex indices and a label
//! table. Parsing accepts a whitespace-separated edge list (one edge per
//! line, `#` comments, blank lines ignored) or graph6.

use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Undirected simple graph. Vertex indices are dense and 0-based; labels are
/// kept in a side table so output can speak the input's language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph with `n` vertices and no edges, labelled `0..n`.
    pub fn edgeless(n: usize) -> Graph {
        Graph {
            labels: (0..n).map(|i| i.to_string()).collect(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Build from explicit edges over `0..n`, with default numeric labels.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from a complete label table and an edge list over its indices.
    /// Used to materialize derived graphs whose labels are already fixed;
    /// edges are trusted to be simple and unique.
    pub fn from_labeled_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Graph {
        let mut adj = vec![Vec::new(); labels.len()];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Graph { labels, adj }
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n() || v >= self.n() {
            return Err(Error::UnknownVertex(u.max(v).to_string()));
        }
        if u == v {
            return Err(Error::Parse { line: 0, msg: format!("self-loop at vertex {u}") });
        }
        // Keep adjacency sorted: `has_edge` binary-searches it.
        let pos = match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(Error::Parse { line: 0, msg: format!("duplicate edge {u}-{v}") }),
            Err(pos) => pos,
        };
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).expect_err("mirror edge absent");
        self.adj[v].insert(pos, u);
        Ok(())
    }

    /// Parse the edge-list format: one edge per line as two whitespace
    /// separated labels; lines whose first non-blank character is `#` are
    /// comments; blank lines are ignored. Vertices are numbered in order of
    /// first appearance.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut edges: Vec<(usize, usize, usize)> = Vec::new(); // (u, v, line)
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut parts = trimmed.split_whitespace();
            let a = parts.next().unwrap();
            let b = parts.next().ok_or_else(|| Error::Parse {
                line,
                msg: format!("expected two labels, got {trimmed:?}"),
            })?;
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected two labels, got {trimmed:?}"),
                });
            }
            let mut id = |lab: &str| -> usize {
                *index.entry(lab.to_string()).or_insert_with(|| {
                    labels.push(lab.to_string());
                    labels.len() - 1
                })
            };
            let (u, v) = (id(a), id(b));
            if u == v {
                return Err(Error::Parse { line, msg: format!("self-loop at {a:?}") });
            }
            if edges.iter().any(|&(x, y, _)| (x, y) == (u, v) || (x, y) == (v, u)) {
                return Err(Error::Parse { line, msg: format!("duplicate edge {a:?} {b:?}") });
            }
            edges.push((u, v, line));
        }
        let mut g = Graph { labels, adj: Vec::new() };
        g.adj = vec![Vec::new(); g.labels.len()];
        for (u, v, _) in edges {
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for l in &mut g.adj {
            l.sort_unstable();
        }
        Ok(g)
    }

    /// Parse graph6 (optionally preceded by the `>>graph6<<` header).
    /// Vertices get numeric labels.
    pub fn parse_graph6(text: &str) -> Result<Graph> {
        let s = text.trim();
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes: Vec<u8> = s.bytes().collect();
        if bytes.is_empty() {
            return Err(Error::Parse { line: 1, msg: "empty graph6 string".into() });
        }
        let pos: usize;
        let val = |b: u8| -> Result<u64> {
            if !(63..=126).contains(&b) {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("invalid graph6 byte {b:#x}"),
                });
            }
            Ok((b - 63) as u64)
        };
        let n: usize = if bytes[0] != 126 {
            pos = 1;
            val(bytes[0])? as usize
        } else if bytes.len() >= 4 && bytes[1] != 126 {
            pos = 4;
            ((val(bytes[1])? << 12) | (val(bytes[2])? << 6) | val(bytes[3])?) as usize
        } else if bytes.len() >= 8 {
            pos = 8;
            let mut n = 0u64;
            for &b in &bytes[2..8] {
                n = (n << 6) | val(b)?;
            }
            n as usize
        } else {
            return Err(Error::Parse { line: 1, msg: "truncated graph6 header".into() });
        };
        let needed_bits = n * n.saturating_sub(1) / 2;
        let needed_bytes = needed_bits.div_ceil(6);
        if bytes.len() < pos + needed_bytes {
            return Err(Error::Parse { line: 1, msg: "truncated graph6 body".into() });
        }
        let mut g = Graph::edgeless(n);
        let mut bit = 0usize;
        // Upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
        for i in 1..n {
            for j in 0..i {
                let b = val(bytes[pos + bit / 6])?;
                if (b >> (5 - bit % 6)) & 1 == 1 {
                    g.adj[i].push(j);
                    g.adj[j].push(i);
                }
                bit += 1;
            }
        }
        for l in &mut g.adj {
            l.sort_unstable();
        }
        Ok(g)
    }

    /// Render as the edge-list format `parse` accepts. Isolated vertices do
    /// not appear (the format cannot express them).
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    e.push((u, v));
                }
            }
        }
        e
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, lab: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == lab)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || connected_components(self).components.len() == 1
    }

    /// Apply a relabelling permutation: vertex v becomes perm[v].
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        let mut labels = vec![String::new(); n];
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
            adj[perm[v]] = self.adj[v].iter().map(|&u| perm[u]).collect();
            adj[perm[v]].sort_unstable();
        }
        Graph { labels, adj }
    }
}

/// Partition of the vertex set into connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Component index of every vertex.
    pub component_id: Vec<usize>,
    /// Vertex lists, each ascending; components ordered by smallest member.
    pub components: Vec<Vec<usize>>,
}

/// Connected components by breadth-first search, in deterministic order
/// (components sorted by their smallest vertex, members ascending).
pub fn connected_components(g: &Graph) -> ComponentPartition {
    let n = g.n();
    let mut component_id = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if component_id[start] != usize::MAX {
            continue;
        }
        let cid = components.len();
        let mut queue = vec![start];
        let mut members = Vec::new();
        component_id[start] = cid;
        while let Some(v) = queue.pop() {
            members.push(v);
            for &u in g.neighbours(v) {
                if component_id[u] == usize::MAX {
                    component_id[u] = cid;
                    queue.push(u);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    ComponentPartition { component_id, components }
}

/// Result of deleting vertices: the induced subgraph plus the map from its
/// dense indices back to the parent graph.
#[derive(Debug, Clone)]
pub struct VertexDeletion {
    pub graph: Graph,
    /// `original[i]` is the parent index of the subgraph's vertex `i`.
    pub original: Vec<usize>,
}

/// Induced subgraph on the complement of `remove` (labels preserved).
pub fn delete_vertices(g: &Graph, remove: &[usize]) -> Result<VertexDeletion> {
    for &v in remove {
        if v >= g.n() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
    }
    let keep: Vec<usize> = (0..g.n()).filter(|v| !remove.contains(v)).collect();
    let mut new_id = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    let mut adj = vec![Vec::new(); keep.len()];
    for (i, &v) in keep.iter().enumerate() {
        for &u in g.neighbours(v) {
            if new_id[u] != usize::MAX {
                adj[i].push(new_id[u]);
            }
        }
        adj[i].sort_unstable();
    }
    Ok(VertexDeletion {
        graph: Graph {
            labels: keep.iter().map(|&v| g.label(v).to_string()).collect(),
            adj,
        },
        original: keep,
    })
}

/// The one degenerate shape for the cross-cut lemmas: connected, 4 vertices,
/// all of degree 2.
pub fn is_four_cycle(g: &Graph) -> bool {
    g.n() == 4 && (0..4).all(|v| g.degree(v) == 2) && g.is_connected()
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOUBLE_CUT: &str = include_str!("../../../fixtures/double_cut.txt");

    #[test]
    fn parse_assigns_first_appearance_indices() {
        let g = Graph::parse(DOUBLE_CUT).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.labels(), &["x1", "w", "y1", "x2", "y2", "z"]);
        assert!(g.has_edge(0, 1)); // x1-w
        assert!(!g.has_edge(0, 2)); // x1,y1 not adjacent
        assert!(g.is_connected());
    }

    #[test]
    fn parse_rejects_bad_lines() {
        let dup = Graph::parse("a b\nb a\n");
        assert!(matches!(dup, Err(Error::Parse { line: 2, .. })));
        let selfloop = Graph::parse("a b\nc c\n");
        assert!(matches!(selfloop, Err(Error::Parse { line: 2, .. })));
        let malformed = Graph::parse("a\n");
        assert!(matches!(malformed, Err(Error::Parse { line: 1, .. })));
        let too_many = Graph::parse("a b c\n");
        assert!(matches!(too_many, Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let g = Graph::parse("# header\n\n  # indented comment\na b\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn components_of_double_cut_after_cut_removal() {
        let g = Graph::parse(DOUBLE_CUT).unwrap();
        // Remove {x1,y1} = {0,2}: components {w} and {x2,z,y2}.
        let del = delete_vertices(&g, &[0, 2]).unwrap();
        let comps = connected_components(&del.graph);
        let named: Vec<Vec<&str>> = comps
            .components
            .iter()
            .map(|c| c.iter().map(|&v| del.graph.label(v)).collect())
            .collect();
        assert_eq!(named, vec![vec!["w"], vec!["x2", "y2", "z"]]);
        // Remove {x2,y2} = {3,4}: components {x1,w,y1} and {z}.
        let del = delete_vertices(&g, &[3, 4]).unwrap();
        let comps = connected_components(&del.graph);
        let named: Vec<Vec<&str>> = comps
            .components
            .iter()
            .map(|c| c.iter().map(|&v| del.graph.label(v)).collect())
            .collect();
        assert_eq!(named, vec![vec!["x1", "w", "y1"], vec!["z"]]);
    }

    #[test]
    fn edgeless_graph_has_singleton_components() {
        let g = Graph::edgeless(3);
        assert_eq!(connected_components(&g).components.len(), 3);
    }

    #[test]
    fn delete_nothing_is_identity() {
        let g = Graph::parse(DOUBLE_CUT).unwrap();
        let del = delete_vertices(&g, &[]).unwrap();
        assert_eq!(del.graph, g);
        assert_eq!(del.original, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn four_cycle_detection() {
        let c4 = Graph::parse("a b\nb c\nc d\nd a\n").unwrap();
        assert!(is_four_cycle(&c4));
        let p4 = Graph::parse("a b\nb c\nc d\n").unwrap();
        assert!(!is_four_cycle(&p4));
        // 2-regular on 4 vertices but disconnected is impossible; a triangle
        // plus isolated vertex is not 2-regular everywhere.
        let k4 = Graph::parse("a b\nb c\nc d\nd a\na c\nb d\n").unwrap();
        assert!(!is_four_cycle(&k4));
    }

    #[test]
    fn graph6_parses_small_graphs() {
        // n = 'D'-63 = 5; body "Qc" = 18, 36 -> bits 010010 100100.
        // Pair order: (0,1) (0,2) (1,2) (0,3) (1,3) (2,3) (0,4) (1,4) (2,4) (3,4)
        let g = Graph::parse_graph6("DQc").unwrap();
        assert_eq!(g.n(), 5);
        let expect = [(0, 2), (0, 4), (1, 3), (3, 4)];
        assert_eq!(g.edges(), expect);
        let with_header = Graph::parse_graph6(">>graph6<<DQc").unwrap();
        assert_eq!(with_header, g);
    }

    #[test]
    fn graph6_c4_matches_edge_list() {
        // Edges (0,1),(1,2),(2,3),(0,3) give bits 101101 = 45 -> 'l'.
        let g = Graph::parse_graph6("Cl").unwrap();
        assert_eq!(g.edges(), [(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!(is_four_cycle(&g));
    }

    #[test]
    fn render_round_trips_labels_and_edges() {
        let g = Graph::parse(DOUBLE_CUT).unwrap();
        let h = Graph::parse(&g.render()).unwrap();
        let edge_labels = |g: &Graph| {
            let mut e: Vec<(String, String)> = g
                .edges()
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (g.label(u).to_string(), g.label(v).to_string());
                    if a < b { (a, b) } else { (b, a) }
                })
                .collect();
            e.sort();
            e
        };
        assert_eq!(edge_labels(&g), edge_labels(&h));
        assert_eq!(g.n(), h.n());
    }
}
