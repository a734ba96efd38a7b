//! The edge-list corpus bundled into the crate, so tests and downstream
//! tooling can exercise every structural branch without touching the
//! filesystem: multiple cuts, the degenerate 4-cycle, half filling, a
//! single planted cut, and cut-free controls.

/// A bundled graph with the token count its interesting behaviour shows at.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
    pub suggested_k: usize,
    pub blurb: &'static str,
}

pub const FIXTURES: [Fixture; 8] = [
    Fixture {
        name: "double_cut",
        text: include_str!("../../../fixtures/double_cut.txt"),
        suggested_k: 2,
        blurb: "six vertices, two crossing same-neighbour cuts; the running example",
    },
    Fixture {
        name: "c4",
        text: include_str!("../../../fixtures/c4.txt"),
        suggested_k: 2,
        blurb: "the 4-cycle: both diagonals are cuts, the degenerate excluded case",
    },
    Fixture {
        name: "k23",
        text: include_str!("../../../fixtures/k23.txt"),
        suggested_k: 2,
        blurb: "complete bipartite K_{2,3}: one cut with three singleton components",
    },
    Fixture {
        name: "k24",
        text: include_str!("../../../fixtures/k24.txt"),
        suggested_k: 3,
        blurb: "complete bipartite K_{2,4} at half filling",
    },
    Fixture {
        name: "p3",
        text: include_str!("../../../fixtures/p3.txt"),
        suggested_k: 2,
        blurb: "three-vertex path: no cuts, every cut-dependent check is vacuous",
    },
    Fixture {
        name: "planted_half",
        text: include_str!("../../../fixtures/planted_half.txt"),
        suggested_k: 3,
        blurb: "six vertices, one planted cut, k = n/2 so the complement applies",
    },
    Fixture {
        name: "planted_asym",
        text: include_str!("../../../fixtures/planted_asym.txt"),
        suggested_k: 2,
        blurb: "seven vertices, one planted cut, trivial x-label stabilizer",
    },
    Fixture {
        name: "asym_tree",
        text: include_str!("../../../fixtures/asym_tree.txt"),
        suggested_k: 2,
        blurb: "asymmetric tree: trivial automorphism group and no cuts",
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn every_fixture_parses_and_is_connected() {
        for f in &FIXTURES {
            let g = Graph::parse(f.text).unwrap_or_else(|e| panic!("{}: {e}", f.name));
            assert!(g.is_connected(), "{} must be connected", f.name);
            assert!(f.suggested_k >= 1 && f.suggested_k < g.n(), "{}", f.name);
        }
    }

    #[test]
    fn lookup_by_name() {
        assert!(fixture("c4").is_some());
        assert!(fixture("missing").is_none());
    }
}
