//! Automorphism machinery for token graphs: permutations, the per-cut flip
//! maps (phi), their products across all cuts (psi), automorphisms induced
//! by base-graph symmetries, and the transport of distribution tuples.

use crate::cuts::{token_move, Cut, CutFamily, TupleUniverse};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::token::{complement_permutation, rank, TokenGraph};

/// Permutation as a dense image array: `i` maps to `images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Wrap an image array that is already known to be a bijection.
    pub fn from_images(images: Vec<u32>) -> Permutation {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&v| {
                let ok = (v as usize) < seen.len() && !seen[v as usize];
                if ok {
                    seen[v as usize] = true;
                }
                ok
            })
        });
        Permutation { images }
    }

    /// Validate and wrap an image array.
    pub fn try_from_images(images: Vec<u32>) -> Result<Permutation> {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v as usize >= images.len() || seen[v as usize] {
                return Err(Error::NotAutomorphism("image array is not a bijection".into()));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&v| self.images[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Non-trivial cycles, each rotated to start at its smallest member,
    /// listed by that member.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut v = self.apply(start);
            while v != start {
                seen[v] = true;
                cyc.push(v);
                v = self.apply(v);
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle notation with caller-supplied point names; identity prints `e`.
    pub fn format_cycles(&self, name: impl Fn(usize) -> String) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "e".to_string();
        }
        cycles
            .iter()
            .map(|cyc| {
                let inner: Vec<String> = cyc.iter().map(|&v| name(v)).collect();
                format!("({})", inner.join(" "))
            })
            .collect::<Vec<_>>()
            .join("")
    }

    /// Apply to a configuration bitset: tokens move with their vertices.
    pub fn apply_config(&self, c: u64) -> u64 {
        let mut out = 0u64;
        let mut bits = c;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= 1 << self.images[v];
        }
        out
    }
}

/// Whether a permutation of the base vertices preserves the base edge set
/// (checked in both directions).
pub fn is_graph_automorphism(f: &Permutation, g: &Graph) -> bool {
    if f.degree() != g.n() {
        return false;
    }
    let inv = f.inverse();
    for (u, v) in g.edges() {
        if !g.has_edge(f.apply(u), f.apply(v)) {
            return false;
        }
        if !g.has_edge(inv.apply(u), inv.apply(v)) {
            return false;
        }
    }
    true
}

/// Whether a permutation of the configurations preserves the token-graph
/// edge set (checked in both directions).
pub fn is_automorphism(p: &Permutation, tg: &TokenGraph) -> bool {
    if p.degree() != tg.len() {
        return false;
    }
    let inv = p.inverse();
    for i in 0..tg.len() {
        for &j in tg.neighbours(i) {
            if !tg.has_edge(p.apply(i), p.apply(j)) {
                return false;
            }
            if !tg.has_edge(inv.apply(i), inv.apply(j)) {
                return false;
            }
        }
    }
    true
}

/// The automorphism of F_k obtained by pushing every token through a base
/// automorphism. Injective in the base map.
pub fn induce(f: &Permutation, tg: &TokenGraph) -> Result<Permutation> {
    if !is_graph_automorphism(f, tg.base()) {
        return Err(Error::NotAutomorphism("base map".into()));
    }
    let images: Vec<u32> = tg
        .configs()
        .iter()
        .map(|&c| rank(f.apply_config(c)) as u32)
        .collect();
    let p = Permutation::from_images(images);
    debug_assert!(is_automorphism(&p, tg));
    Ok(p)
}

/// Subset of one cut's distribution tuples, as a bitset over the cut's
/// lexicographic tuple order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphaSet {
    pub cut: usize,
    pub bits: u64,
}

impl AlphaSet {
    pub fn empty(cut: usize) -> AlphaSet {
        AlphaSet { cut, bits: 0 }
    }

    pub fn full(cut: usize, uni: &TupleUniverse) -> AlphaSet {
        AlphaSet { cut, bits: mask(uni.per_cut[cut].len()) }
    }

    pub fn contains(&self, local: usize) -> bool {
        self.bits >> local & 1 == 1
    }

    pub fn symmetric_difference(&self, other: &AlphaSet) -> AlphaSet {
        debug_assert_eq!(self.cut, other.cut);
        AlphaSet { cut: self.cut, bits: self.bits ^ other.bits }
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Whether this is one of the two flip sets realized by base symmetries:
    /// no tuples at all, or every tuple of the cut.
    pub fn is_trivial_or_full(&self, uni: &TupleUniverse) -> bool {
        self.bits == 0 || self.bits == mask(uni.per_cut[self.cut].len())
    }
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        !0
    } else {
        (1 << len) - 1
    }
}

/// Subset of the whole tuple universe, as a bitset over the global index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BetaSet {
    pub bits: u64,
}

impl BetaSet {
    pub fn empty() -> BetaSet {
        BetaSet { bits: 0 }
    }

    pub fn full(uni: &TupleUniverse) -> BetaSet {
        BetaSet { bits: mask(uni.len()) }
    }

    pub fn singleton(global: usize) -> BetaSet {
        BetaSet { bits: 1 << global }
    }

    pub fn from_indices(indices: &[usize]) -> BetaSet {
        BetaSet { bits: indices.iter().fold(0, |acc, &i| acc | 1 << i) }
    }

    pub fn contains(&self, global: usize) -> bool {
        self.bits >> global & 1 == 1
    }

    pub fn members(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut bits = self.bits;
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
        out
    }

    pub fn union(&self, other: &BetaSet) -> BetaSet {
        BetaSet { bits: self.bits | other.bits }
    }

    pub fn symmetric_difference(&self, other: &BetaSet) -> BetaSet {
        BetaSet { bits: self.bits ^ other.bits }
    }

    /// Restriction to one cut's block, as that cut's local flip set.
    pub fn restrict(&self, uni: &TupleUniverse, cut: usize) -> AlphaSet {
        let block = uni.block(cut);
        let width = block.end - block.start;
        AlphaSet { cut, bits: (self.bits >> block.start) & mask(width) }
    }

    /// Whether every cut's restriction is empty or full — the shape realized
    /// by base symmetries (products of cut-pair swaps).
    pub fn is_per_cut_pure(&self, uni: &TupleUniverse) -> bool {
        (0..uni.per_cut.len()).all(|c| self.restrict(uni, c).is_trivial_or_full(uni))
    }
}

/// The flip map of one cut: configurations whose distribution tuple lies in
/// the chosen set get their pair token moved across; everything else stays.
pub fn phi(
    tg: &TokenGraph,
    fam: &CutFamily,
    uni: &TupleUniverse,
    alpha: &AlphaSet,
) -> Permutation {
    let cut = &fam.cuts[alpha.cut];
    let tuples = &uni.per_cut[alpha.cut];
    let images: Vec<u32> = tg
        .configs()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let (counts, on_cut) = cut.classify(a);
            if on_cut {
                if let Ok(local) = tuples.binary_search_by(|t| t.as_slice().cmp(&counts)) {
                    if alpha.contains(local) {
                        return rank(token_move(cut, a).expect("flag checked")) as u32;
                    }
                }
            }
            i as u32
        })
        .collect();
    let p = Permutation::from_images(images);
    debug_assert!(is_automorphism(&p, tg));
    p
}

/// The product of every cut's flip map, rightmost cut applied first.
pub fn psi(tg: &TokenGraph, fam: &CutFamily, uni: &TupleUniverse, beta: &BetaSet) -> Permutation {
    let order: Vec<usize> = (0..fam.len()).collect();
    psi_with_cut_order(tg, fam, uni, beta, &order)
}

/// As `psi`, but composing the per-cut flips in a caller-chosen cut order
/// (first listed cut is the outermost factor, so the last is applied first).
pub fn psi_with_cut_order(
    tg: &TokenGraph,
    fam: &CutFamily,
    uni: &TupleUniverse,
    beta: &BetaSet,
    order: &[usize],
) -> Permutation {
    let mut p = Permutation::identity(tg.len());
    for &c in order {
        p = p.compose(&phi(tg, fam, uni, &beta.restrict(uni, c)));
    }
    p
}

/// How a token-graph permutation relates to the base graph's symmetries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InducedKind {
    /// Equal to the automorphism induced by the witness base map.
    Induced(Permutation),
    /// Equal to complement-after-induced for the witness base map
    /// (only possible when k = n/2).
    ComplementInduced(Permutation),
    NotInduced,
}

impl InducedKind {
    pub fn is_induced(&self) -> bool {
        !matches!(self, InducedKind::NotInduced)
    }
}

/// Classify a token-graph permutation against a full list of base
/// automorphisms: induced, complement-induced, or neither.
pub fn is_induced(
    p: &Permutation,
    tg: &TokenGraph,
    base_auts: &[Permutation],
) -> Result<InducedKind> {
    let comp = if tg.is_half() {
        Some(complement_permutation(tg)?)
    } else {
        None
    };
    for f in base_auts {
        let ind = induce(f, tg)?;
        if &ind == p {
            return Ok(InducedKind::Induced(f.clone()));
        }
        if let Some(c) = &comp {
            if c.compose(&ind) == *p {
                return Ok(InducedKind::ComplementInduced(f.clone()));
            }
        }
    }
    Ok(InducedKind::NotInduced)
}

/// Transport a distribution tuple along a base automorphism: the tuple of
/// cut i moves to the image cut, each component's count travelling to that
/// component's image. Satisfies: A has tuple t at cut i exactly when f(A)
/// has tuple ft at the image cut.
pub fn act_on_tuple(
    g: &Graph,
    fam: &CutFamily,
    f: &Permutation,
    cut: usize,
    entries: &[u32],
) -> Result<(usize, Vec<u32>)> {
    if !is_graph_automorphism(f, g) {
        return Err(Error::NotAutomorphism("tuple transport".into()));
    }
    let source = &fam.cuts[cut];
    let target_idx = fam
        .index_of_pair(f.apply(source.x), f.apply(source.y))
        .ok_or_else(|| Error::NotAutomorphism("image of a cut is not a cut".into()))?;
    let target = &fam.cuts[target_idx];
    let mut out = vec![0u32; target.components.len()];
    for (ci, comp) in source.components.iter().enumerate() {
        let image_vertex = f.apply(comp[0]);
        let ti = target
            .component_of(image_vertex)
            .ok_or_else(|| Error::NotAutomorphism("component image straddles the cut".into()))?;
        debug_assert_eq!(comp.len(), target.components[ti].len());
        out[ti] = entries[ci];
    }
    Ok((target_idx, out))
}

/// Transport a whole flip set along a base automorphism, member by member.
pub fn act_on_beta(
    g: &Graph,
    fam: &CutFamily,
    uni: &TupleUniverse,
    f: &Permutation,
    beta: &BetaSet,
) -> Result<BetaSet> {
    let mut out = BetaSet::empty();
    for gidx in beta.members() {
        let (cut, entries) = uni.tuple(gidx);
        let (tcut, tentries) = act_on_tuple(g, fam, f, cut, entries)?;
        let timg = uni
            .global_index(tcut, &tentries)
            .ok_or_else(|| Error::NotAutomorphism("transported tuple left the universe".into()))?;
        out = out.union(&BetaSet::singleton(timg));
    }
    Ok(out)
}

/// Complement action on a tuple: each component's count flips to the number
/// of its unoccupied vertices. Stays within the same cut; requires k = n/2
/// so the result is again a distribution tuple.
pub fn complement_on_tuple(cut: &Cut, entries: &[u32]) -> Result<Vec<u32>> {
    let sizes = cut.sizes();
    let k = entries.iter().map(|&e| e as usize).sum::<usize>() + 1;
    let n = sizes.iter().sum::<usize>() + 2;
    if 2 * k != n {
        return Err(Error::HalfComplementRequired { k, n });
    }
    Ok(entries
        .iter()
        .zip(sizes.iter())
        .map(|(&e, &s)| s as u32 - e)
        .collect())
}

/// Complement action on a whole flip set, member by member.
pub fn complement_on_beta(
    fam: &CutFamily,
    uni: &TupleUniverse,
    beta: &BetaSet,
) -> Result<BetaSet> {
    let mut out = BetaSet::empty();
    for gidx in beta.members() {
        let (cut, entries) = uni.tuple(gidx);
        let centries = complement_on_tuple(&fam.cuts[cut], entries)?;
        let timg = uni
            .global_index(cut, &centries)
            .ok_or_else(|| Error::NotAutomorphism("complemented tuple left the universe".into()))?;
        out = out.union(&BetaSet::singleton(timg));
    }
    Ok(out)
}

/// Whether f maps every cut's x-vertex to the x-vertex of the image cut.
/// (Every automorphism maps cut pairs to cut pairs; membership here is about
/// respecting the within-pair orientation.)
pub fn stabilizes_x_labels(g: &Graph, fam: &CutFamily, f: &Permutation) -> bool {
    if !is_graph_automorphism(f, g) {
        return false;
    }
    fam.cuts.iter().all(|c| {
        match fam.index_of_pair(f.apply(c.x), f.apply(c.y)) {
            Some(j) => f.apply(c.x) == fam.cuts[j].x,
            None => false,
        }
    })
}

/// Outcome of the conjugation identities for one (f, beta) instance.
#[derive(Debug, Clone)]
pub struct CommutationReport {
    /// ι(f)∘ψ_β = ψ_{fβ}∘ι(f).
    pub holds_induced: bool,
    /// 𝔠∘ψ_β = ψ_{𝔠β}∘𝔠, when k = n/2.
    pub holds_complement: Option<bool>,
}

impl CommutationReport {
    pub fn all_hold(&self) -> bool {
        self.holds_induced && self.holds_complement.unwrap_or(true)
    }
}

/// Check the conjugation identities for a member of the x-label stabilizer:
/// pushing a flip product through the induced map transports its flip set,
/// and likewise through the complement when k = n/2.
pub fn verify_commutation(
    g: &Graph,
    tg: &TokenGraph,
    fam: &CutFamily,
    uni: &TupleUniverse,
    f: &Permutation,
    beta: &BetaSet,
) -> Result<CommutationReport> {
    if !stabilizes_x_labels(g, fam, f) {
        return Err(Error::NotInStabilizer);
    }
    let ind = induce(f, tg)?;
    let psi_b = psi(tg, fam, uni, beta);
    let f_beta = act_on_beta(g, fam, uni, f, beta)?;
    let holds_induced = ind.compose(&psi_b) == psi(tg, fam, uni, &f_beta).compose(&ind);
    let holds_complement = if tg.is_half() {
        let c = complement_permutation(tg)?;
        let c_beta = complement_on_beta(fam, uni, beta)?;
        Some(c.compose(&psi_b) == psi(tg, fam, uni, &c_beta).compose(&c))
    } else {
        None
    };
    Ok(CommutationReport { holds_induced, holds_complement })
}
