//! Independent ground truth: exhaustive automorphism search by vertex
//! backtracking, pruned with degree-refinement signatures. Deliberately
//! separate from the constructive machinery so the two can be compared.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{closure, PermGroup};
use crate::symmetry::Permutation;

/// Graphs past this many vertices are refused by default; the search is
/// exponential in the worst case and meant for desk-scale cross-checks.
pub const DEFAULT_VERTEX_LIMIT: usize = 40;

/// Exhaustively enumerate the automorphism group, erroring past
/// `element_cap` group elements or [`DEFAULT_VERTEX_LIMIT`] vertices.
pub fn brute_force_aut(g: &Graph, element_cap: usize) -> Result<PermGroup> {
    brute_force_aut_with_limit(g, element_cap, DEFAULT_VERTEX_LIMIT)
}

/// As [`brute_force_aut`] with a caller-chosen vertex ceiling.
pub fn brute_force_aut_with_limit(
    g: &Graph,
    element_cap: usize,
    vertex_limit: usize,
) -> Result<PermGroup> {
    if g.n() > vertex_limit {
        return Err(Error::OracleTooLarge { n: g.n(), limit: vertex_limit });
    }
    let sigs = signatures(g);
    let n = g.n();
    let mut images: Vec<u32> = vec![0; n];
    let mut used = vec![false; n];
    let mut found: Vec<Permutation> = Vec::new();
    search(g, &sigs, 0, &mut images, &mut used, &mut found, element_cap)?;
    Ok(PermGroup::from_elements(n, found))
}

/// Per-vertex invariant preserved by any automorphism: own degree plus the
/// sorted multiset of neighbour degrees (one refinement round).
fn signatures(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    (0..g.n())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbours(v).iter().map(|&u| g.degree(u)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

fn search(
    g: &Graph,
    sigs: &[(usize, Vec<usize>)],
    v: usize,
    images: &mut Vec<u32>,
    used: &mut Vec<bool>,
    found: &mut Vec<Permutation>,
    element_cap: usize,
) -> Result<()> {
    if v == g.n() {
        if found.len() >= element_cap {
            return Err(Error::CapExceeded { cap: element_cap, found: found.len() + 1 });
        }
        found.push(Permutation::from_images(images.clone()));
        return Ok(());
    }
    for w in 0..g.n() {
        if used[w] || sigs[w] != sigs[v] {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(images[u] as usize, w)) {
            continue;
        }
        images[v] = w as u32;
        used[w] = true;
        search(g, sigs, v + 1, images, used, found, element_cap)?;
        used[w] = false;
    }
    Ok(())
}

/// Whether two groups have identical element sets.
pub fn same_group(a: &PermGroup, b: &PermGroup) -> bool {
    a.degree() == b.degree() && a.elements() == b.elements()
}

/// Greedily strip a full element list down to a generating set, for
/// human-readable output. Not guaranteed minimal, only irredundant in order.
pub fn reduce_generators(group: &PermGroup) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span = PermGroup::trivial(group.degree());
    for p in group.elements() {
        if !span.contains(p) {
            gens.push(p.clone());
            span = closure(group.degree(), &gens, group.order())
                .expect("generated subgroup cannot exceed the group");
        }
        if span.order() == group.order() {
            break;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::find_cuts;
    use crate::group::x_stabilizer;

    const DOUBLE_CUT: &str = include_str!("../../../fixtures/double_cut.txt");
    const C4: &str = include_str!("../../../fixtures/c4.txt");
    const K23: &str = include_str!("../../../fixtures/k23.txt");
    const PLANTED_HALF: &str = include_str!("../../../fixtures/planted_half.txt");
    const PLANTED_ASYM: &str = include_str!("../../../fixtures/planted_asym.txt");
    const ASYM_TREE: &str = include_str!("../../../fixtures/asym_tree.txt");

    fn complete_graph(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn known_group_orders() {
        let path = Graph::parse("a b\nb c\n").unwrap();
        assert_eq!(brute_force_aut(&path, 100).unwrap().order(), 2);
        assert_eq!(brute_force_aut(&complete_graph(4), 100).unwrap().order(), 24);
        let g = Graph::parse(C4).unwrap();
        assert_eq!(brute_force_aut(&g, 100).unwrap().order(), 8);
        let g = Graph::parse(K23).unwrap();
        assert_eq!(brute_force_aut(&g, 100).unwrap().order(), 12);
        let g = Graph::parse(ASYM_TREE).unwrap();
        assert_eq!(brute_force_aut(&g, 100).unwrap().order(), 1);
    }

    #[test]
    fn result_is_closed_under_composition() {
        let g = Graph::parse(DOUBLE_CUT).unwrap();
        let auts = brute_force_aut(&g, 1 << 16).unwrap();
        assert_eq!(auts.order(), 8);
        let regenerated = closure(g.n(), auts.elements(), 1 << 16).unwrap();
        assert!(same_group(&auts, &regenerated));
    }

    #[test]
    fn base_group_splits_as_pair_swaps_times_stabilizer() {
        // |Aut| = 2^{cuts} · |stabilizer| on every cut-bearing fixture:
        // each cut contributes an independent pair swap.
        for (text, q) in [(DOUBLE_CUT, 2), (C4, 2), (K23, 1), (PLANTED_HALF, 1), (PLANTED_ASYM, 1)] {
            let g = Graph::parse(text).unwrap();
            let fam = find_cuts(&g).unwrap();
            assert_eq!(fam.len(), q);
            let auts = brute_force_aut(&g, 1 << 16).unwrap();
            let stab = x_stabilizer(&g, &fam, &auts);
            assert_eq!(auts.order(), (1 << q) * stab.order(), "fixture {text:?}");
        }
    }

    #[test]
    fn limits_are_enforced() {
        let g = complete_graph(5);
        assert!(matches!(
            brute_force_aut_with_limit(&g, 1 << 16, 4),
            Err(Error::OracleTooLarge { n: 5, limit: 4 })
        ));
        assert!(matches!(
            brute_force_aut(&g, 100),
            Err(Error::CapExceeded { cap: 100, .. })
        ));
    }

    #[test]
    fn reduced_generators_still_generate() {
        let g = Graph::parse(DOUBLE_CUT).unwrap();
        let auts = brute_force_aut(&g, 1 << 16).unwrap();
        let gens = reduce_generators(&auts);
        assert!(gens.len() <= 3);
        let span = closure(g.n(), &gens, 1 << 16).unwrap();
        assert!(same_group(&auts, &span));
    }
}
