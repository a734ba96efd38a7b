//! Permutation-group plumbing (closure, membership) and the structural
//! verification: the subgroup generated by the flip maps, the induced
//! x-label stabilizer, and the complement realizes the predicted
//! semidirect-product order, with unique factorization.

use std::collections::HashSet;

use crate::cuts::{CutFamily, TupleUniverse};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symmetry::{
    induce, is_graph_automorphism, phi, psi, stabilizes_x_labels, BetaSet, Permutation,
};
use crate::token::{complement_permutation, TokenGraph};

/// Default ceiling on closure enumeration.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;

/// A finite permutation group held as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup { degree, elements: vec![Permutation::identity(degree)] }
    }

    /// Wrap an element list (sorted and deduplicated here; closure is the
    /// caller's responsibility).
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> PermGroup {
        elements.push(Permutation::identity(degree));
        elements.sort();
        elements.dedup();
        PermGroup { degree, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.iter().all(|p| other.contains(p))
    }

    /// Elements present in both groups.
    pub fn intersection(&self, other: &PermGroup) -> Vec<Permutation> {
        self.elements
            .iter()
            .filter(|p| other.contains(p))
            .cloned()
            .collect()
    }

    /// Whether conjugating `normal` by every element here stays inside it.
    /// Checking this group's generators would suffice; elements are few at
    /// the scales involved, so check them all.
    pub fn normalizes(&self, normal: &PermGroup) -> bool {
        self.elements.iter().all(|g| {
            let ginv = g.inverse();
            normal
                .elements
                .iter()
                .all(|n| normal.contains(&g.compose(n).compose(&ginv)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.elements.iter().enumerate().all(|(i, a)| {
            self.elements[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    pub fn all_involutions(&self) -> bool {
        self.elements
            .iter()
            .all(|p| p.compose(p).is_identity())
    }
}

/// Breadth-first closure of a generating set under composition. Errors once
/// more than `cap` distinct elements appear.
pub fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<PermGroup> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let identity = Permutation::identity(degree);
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in generators {
            debug_assert_eq!(g.degree(), degree);
            let q = g.compose(&p);
            if !seen.contains(&q) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded { cap, found: seen.len() + 1 });
                }
                seen.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(PermGroup { degree, elements })
}

/// The subgroup of base automorphisms that map x-vertices to x-vertices
/// across the cut family. With no cuts at all this is the whole group.
pub fn x_stabilizer(g: &Graph, fam: &CutFamily, base_auts: &PermGroup) -> PermGroup {
    let elements: Vec<Permutation> = base_auts
        .elements()
        .iter()
        .filter(|f| stabilizes_x_labels(g, fam, f))
        .cloned()
        .collect();
    PermGroup { degree: base_auts.degree(), elements }
}

/// Rewrite an induced automorphism over the stabilizer: returns (beta, f')
/// with ι(f) = ψ_β ∘ ι(f'), where beta is the union of the full tuple
/// blocks of the image cuts on which f crosses pair orientation, and f' is
/// f corrected by those image-pair swaps.
pub fn decompose_induced(
    g: &Graph,
    fam: &CutFamily,
    uni: &TupleUniverse,
    f: &Permutation,
) -> Result<(BetaSet, Permutation)> {
    if !is_graph_automorphism(f, g) {
        return Err(Error::NotAutomorphism("decomposition".into()));
    }
    let mut beta = BetaSet::empty();
    let mut fixup = Permutation::identity(g.n());
    for cut in &fam.cuts {
        let j = fam
            .index_of_pair(f.apply(cut.x), f.apply(cut.y))
            .ok_or_else(|| Error::NotAutomorphism("image of a cut is not a cut".into()))?;
        let image = &fam.cuts[j];
        if f.apply(cut.x) != image.x {
            let block = uni.block(j);
            beta = beta.union(&BetaSet::from_indices(
                &(block.start..block.end).collect::<Vec<_>>(),
            ));
            let mut swap: Vec<u32> = (0..g.n() as u32).collect();
            swap[image.x] = image.y as u32;
            swap[image.y] = image.x as u32;
            fixup = fixup.compose(&Permutation::from_images(swap));
        }
    }
    let corrected = fixup.compose(f);
    debug_assert!(stabilizes_x_labels(g, fam, &corrected));
    Ok((beta, corrected))
}

/// Predicted order of the generated subgroup: one independent flip per
/// tuple, times the stabilizer, doubled by the complement at half filling.
pub fn predicted_order(n: usize, k: usize, tuple_count: usize, stab_order: usize) -> u128 {
    let half = if 2 * k == n { 2u128 } else { 1 };
    (1u128 << tuple_count) * stab_order as u128 * half
}

/// Everything the structural claims need, computed by enumeration.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    /// 2^{tuples} · |stabilizer| · (2 at half filling).
    pub predicted: u128,
    /// Order of ⟨flips ∪ induced stabilizer ∪ complement⟩.
    pub closure_order: usize,
    /// Order of the flip subgroup ⟨all single-tuple flips⟩.
    pub flip_order: usize,
    pub flip_abelian: bool,
    pub flip_all_involutions: bool,
    /// Flip subgroup is normal in the generated group.
    pub flip_normal: bool,
    /// ⟨induced stabilizer ∪ complement⟩ meets the flip subgroup trivially.
    pub intersection_trivial: bool,
    /// Every induced base automorphism lies in the generated group.
    pub contains_induced: bool,
    /// The products ψ_β ∘ 𝔠^ε ∘ ι(f') are pairwise distinct and exhaust
    /// the generated group.
    pub factorization_unique: bool,
    /// Every base automorphism decomposes as ι(f) = ψ_β ∘ ι(f').
    pub decomposition_ok: bool,
    /// 𝔠 ∘ ι(f) = ι(f) ∘ 𝔠 for every base automorphism (half filling only).
    pub complement_commutes: Option<bool>,
    pub stab_order: usize,
    pub tuple_count: usize,
}

/// Verify the structural description of the generated subgroup against a
/// full list of base automorphisms. Errors when the cut family is empty
/// (nothing to generate) or enumeration exceeds `cap`.
pub fn verify_theorem(
    g: &Graph,
    tg: &TokenGraph,
    fam: &CutFamily,
    uni: &TupleUniverse,
    base_auts: &PermGroup,
    cap: usize,
) -> Result<TheoremReport> {
    if fam.is_empty() {
        return Err(Error::TheoremVacuous);
    }
    let stab = x_stabilizer(g, fam, base_auts);
    let predicted = predicted_order(g.n(), tg.k(), uni.len(), stab.order());

    let flip_gens: Vec<Permutation> = (0..uni.len())
        .map(|t| {
            let beta = BetaSet::singleton(t);
            let (cut, _) = uni.tuple(t);
            phi(tg, fam, uni, &beta.restrict(uni, cut))
        })
        .collect();
    let flips = closure(tg.len(), &flip_gens, cap)?;

    let induced_stab: Vec<Permutation> = stab
        .elements()
        .iter()
        .map(|f| induce(f, tg))
        .collect::<Result<_>>()?;
    let comp = if tg.is_half() {
        Some(complement_permutation(tg)?)
    } else {
        None
    };

    let mut gens = flip_gens.clone();
    gens.extend(induced_stab.iter().cloned());
    if let Some(c) = &comp {
        gens.push(c.clone());
    }
    let generated = closure(tg.len(), &gens, cap)?;

    let mut top_gens = induced_stab.clone();
    if let Some(c) = &comp {
        top_gens.push(c.clone());
    }
    let top = closure(tg.len(), &top_gens, cap)?;
    let intersection_trivial = top.intersection(&flips).len() == 1;

    let contains_induced = base_auts
        .elements()
        .iter()
        .map(|f| induce(f, tg))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|p| generated.contains(p));

    if predicted > cap as u128 {
        return Err(Error::CapExceeded { cap, found: cap + 1 });
    }
    let mut products: HashSet<Permutation> = HashSet::new();
    let mut all_inside = true;
    let eps_range = if comp.is_some() { 2 } else { 1 };
    for bits in 0..1u64 << uni.len() {
        let psi_b = psi(tg, fam, uni, &BetaSet { bits });
        for eps in 0..eps_range {
            let left = if eps == 1 {
                psi_b.compose(comp.as_ref().expect("eps only at half filling"))
            } else {
                psi_b.clone()
            };
            for ind in &induced_stab {
                let p = left.compose(ind);
                all_inside &= generated.contains(&p);
                products.insert(p);
            }
        }
    }
    let factorization_unique = products.len() as u128 == predicted
        && all_inside
        && products.len() == generated.order();

    let mut decomposition_ok = true;
    for f in base_auts.elements() {
        let (beta, corrected) = decompose_induced(g, fam, uni, f)?;
        if !stabilizes_x_labels(g, fam, &corrected) {
            decomposition_ok = false;
            break;
        }
        let lhs = induce(f, tg)?;
        let rhs = psi(tg, fam, uni, &beta).compose(&induce(&corrected, tg)?);
        if lhs != rhs {
            decomposition_ok = false;
            break;
        }
    }

    let complement_commutes = comp.as_ref().map(|c| {
        base_auts.elements().iter().all(|f| {
            let ind = induce(f, tg).expect("elements are automorphisms");
            c.compose(&ind) == ind.compose(c)
        })
    });

    Ok(TheoremReport {
        predicted,
        closure_order: generated.order(),
        flip_order: flips.order(),
        flip_abelian: flips.is_abelian(),
        flip_all_involutions: flips.all_involutions(),
        flip_normal: generated.normalizes(&flips),
        intersection_trivial,
        contains_induced,
        factorization_unique,
        decomposition_ok,
        complement_commutes,
        stab_order: stab.order(),
        tuple_count: uni.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::find_cuts;
    use crate::oracle::brute_force_aut;
    use crate::token::build_token_graph;

    const DOUBLE_CUT: &str = include_str!("../../../fixtures/double_cut.txt");
    const C4: &str = include_str!("../../../fixtures/c4.txt");
    const PLANTED_HALF: &str = include_str!("../../../fixtures/planted_half.txt");

    struct Fixture {
        g: Graph,
        tg: TokenGraph,
        fam: CutFamily,
        uni: TupleUniverse,
    }

    fn load(text: &str, k: usize) -> Fixture {
        let g = Graph::parse(text).unwrap();
        let tg = build_token_graph(&g, k).unwrap();
        let fam = find_cuts(&g).unwrap();
        let uni = TupleUniverse::new(&fam, k).unwrap();
        Fixture { g, tg, fam, uni }
    }

    #[test]
    fn closure_of_adjacent_transpositions_is_symmetric_group() {
        let s1 = Permutation::from_images(vec![1, 0, 2, 3]);
        let s2 = Permutation::from_images(vec![0, 2, 1, 3]);
        let s3 = Permutation::from_images(vec![0, 1, 3, 2]);
        let group = closure(4, &[s1.clone(), s2, s3], 100).unwrap();
        assert_eq!(group.order(), 24);
        assert!(group.contains(&s1));
        assert!(!group.is_abelian());
        let cyclic = closure(4, &[Permutation::from_images(vec![1, 2, 3, 0])], 100).unwrap();
        assert_eq!(cyclic.order(), 4);
        assert!(cyclic.is_abelian());
        assert!(cyclic.is_subgroup_of(&group));
        assert!(!group.is_subgroup_of(&cyclic));
    }

    #[test]
    fn closure_respects_cap() {
        let rot = Permutation::from_images(vec![1, 2, 3, 4, 5, 0]);
        match closure(6, &[rot], 3) {
            Err(Error::CapExceeded { cap: 3, .. }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn stabilizer_of_six_vertex_fixture_is_the_crossing_pair() {
        let fx = load(DOUBLE_CUT, 2);
        let auts = brute_force_aut(&fx.g, 1 << 16).unwrap();
        assert_eq!(auts.order(), 8);
        let stab = x_stabilizer(&fx.g, &fx.fam, &auts);
        assert_eq!(stab.order(), 2);
        let cross = stab.elements().iter().find(|p| !p.is_identity()).unwrap();
        // The non-trivial member swaps the two cut pairs and the two
        // singleton components coherently.
        let lab = |s: &str| fx.g.vertex_by_label(s).unwrap();
        assert_eq!(cross.apply(lab("x1")), lab("x2"));
        assert_eq!(cross.apply(lab("x2")), lab("x1"));
        assert_eq!(cross.apply(lab("y1")), lab("y2"));
        assert_eq!(cross.apply(lab("w")), lab("z"));
    }

    #[test]
    fn every_base_automorphism_decomposes_over_the_stabilizer() {
        let fx = load(DOUBLE_CUT, 2);
        let auts = brute_force_aut(&fx.g, 1 << 16).unwrap();
        for f in auts.elements() {
            let (beta, corrected) = decompose_induced(&fx.g, &fx.fam, &fx.uni, f).unwrap();
            assert!(stabilizes_x_labels(&fx.g, &fx.fam, &corrected));
            assert!(beta.is_per_cut_pure(&fx.uni));
            let lhs = induce(f, &fx.tg).unwrap();
            let rhs = psi(&fx.tg, &fx.fam, &fx.uni, &beta)
                .compose(&induce(&corrected, &fx.tg).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pair_swap_decomposes_to_full_block_and_identity() {
        let fx = load(DOUBLE_CUT, 2);
        let lab = |s: &str| fx.g.vertex_by_label(s).unwrap() as u32;
        let mut images: Vec<u32> = (0..fx.g.n() as u32).collect();
        images[lab("x1") as usize] = lab("y1");
        images[lab("y1") as usize] = lab("x1");
        let swap = Permutation::from_images(images);
        let (beta, corrected) = decompose_induced(&fx.g, &fx.fam, &fx.uni, &swap).unwrap();
        let block = fx.uni.block(0);
        assert_eq!(
            beta.members(),
            (block.start..block.end).collect::<Vec<_>>()
        );
        assert!(corrected.is_identity());
    }

    #[test]
    fn six_vertex_fixture_matches_prediction() {
        let fx = load(DOUBLE_CUT, 2);
        let auts = brute_force_aut(&fx.g, 1 << 16).unwrap();
        let rep = verify_theorem(
            &fx.g,
            &fx.tg,
            &fx.fam,
            &fx.uni,
            &auts,
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(rep.predicted, 32);
        assert_eq!(rep.closure_order, 32);
        assert_eq!(rep.flip_order, 16);
        assert!(rep.flip_abelian && rep.flip_all_involutions);
        assert!(rep.flip_normal);
        assert!(rep.intersection_trivial);
        assert!(rep.contains_induced);
        assert!(rep.factorization_unique);
        assert!(rep.decomposition_ok);
        assert_eq!(rep.complement_commutes, None);
    }

    #[test]
    fn half_filled_fixture_doubles_through_the_complement() {
        let fx = load(PLANTED_HALF, 3);
        let auts = brute_force_aut(&fx.g, 1 << 16).unwrap();
        assert_eq!(auts.order(), 2);
        let rep = verify_theorem(
            &fx.g,
            &fx.tg,
            &fx.fam,
            &fx.uni,
            &auts,
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(rep.predicted, 8);
        assert_eq!(rep.closure_order, 8);
        assert_eq!(rep.stab_order, 1);
        assert!(rep.factorization_unique);
        assert_eq!(rep.complement_commutes, Some(true));
    }

    #[test]
    fn four_cycle_breaks_the_count_but_keeps_normality() {
        // The degenerate case: single-tuple flips across the two diagonal
        // cuts generate overlapping transpositions, so the flip subgroup
        // grows past the independent-flip count and the product formula
        // overshoots the actual closure.
        let fx = load(C4, 2);
        let auts = brute_force_aut(&fx.g, 1 << 16).unwrap();
        assert_eq!(auts.order(), 8);
        let rep = verify_theorem(
            &fx.g,
            &fx.tg,
            &fx.fam,
            &fx.uni,
            &auts,
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(rep.predicted, 64);
        assert_eq!(rep.closure_order, 48);
        assert_eq!(rep.flip_order, 24);
        assert!(!rep.flip_abelian);
        assert!(!rep.intersection_trivial);
        assert!(!rep.factorization_unique);
        assert!(rep.flip_normal);
        assert!(rep.contains_induced);
        assert!(rep.decomposition_ok);
        assert_eq!(rep.complement_commutes, Some(true));
    }

    #[test]
    fn theorem_is_vacuous_without_cuts() {
        let g = Graph::parse("a b\nb c\n").unwrap();
        let tg = build_token_graph(&g, 2).unwrap();
        let fam = find_cuts(&g).unwrap();
        let uni = TupleUniverse::new(&fam, 2).unwrap();
        let auts = brute_force_aut(&g, 1 << 16).unwrap();
        assert!(matches!(
            verify_theorem(&g, &tg, &fam, &uni, &auts, DEFAULT_CLOSURE_CAP),
            Err(Error::TheoremVacuous)
        ));
    }

    #[test]
    fn predicted_order_formula() {
        assert_eq!(predicted_order(6, 2, 4, 2), 32);
        assert_eq!(predicted_order(6, 3, 4, 2), 64);
        assert_eq!(predicted_order(4, 2, 4, 2), 64);
        assert_eq!(predicted_order(5, 2, 3, 6), 48);
        assert_eq!(predicted_order(7, 2, 0, 1), 1);
    }
}
