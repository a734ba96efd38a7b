//! Same-neighbour 2-cuts: vertex pairs {x,y} whose removal disconnects the
//! graph and whose members have identical neighbourhoods outside the pair.
//! Each cut carries the component partition of the punctured graph and the
//! distribution tuples that drive the flip automorphisms.

use crate::error::{Error, Result};
use crate::graph::{connected_components, delete_vertices, is_four_cycle, Graph};
use crate::token::TokenConfig;

/// One same-neighbour 2-cut {x,y} with x < y, plus the components of the
/// punctured graph in a fixed order (smaller component first, ties broken by
/// smallest vertex). The order is what gives distribution tuples a meaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub x: usize,
    pub y: usize,
    /// Vertex sets of the components of G - {x,y}, original indices.
    pub components: Vec<Vec<usize>>,
    /// Component index of every vertex (None for x and y).
    comp_of: Vec<Option<usize>>,
    /// Bitmask of each component, aligned with `components`.
    comp_masks: Vec<u64>,
}

impl Cut {
    fn new(g: &Graph, x: usize, y: usize, mut components: Vec<Vec<usize>>) -> Cut {
        components.sort_by_key(|c| (c.len(), c[0]));
        let mut comp_of = vec![None; g.n()];
        let mut comp_masks = vec![0u64; components.len()];
        for (ci, comp) in components.iter().enumerate() {
            for &v in comp {
                comp_of[v] = Some(ci);
                if v < 64 {
                    comp_masks[ci] |= 1 << v;
                }
            }
        }
        Cut { x, y, components, comp_of, comp_masks }
    }

    /// Component sizes in the fixed order.
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// Bitmask over {x, y}.
    pub fn pair_mask(&self) -> u64 {
        (1 << self.x) | (1 << self.y)
    }

    /// Component index of a vertex, None for the cut pair itself.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.comp_of[v]
    }

    /// Per-component token counts of a configuration, plus whether those
    /// counts form a distribution tuple (equivalently: exactly one token on
    /// the cut pair, since the counts always sum to k minus that overlap).
    pub fn classify(&self, a: TokenConfig) -> (Vec<u32>, bool) {
        let counts: Vec<u32> = self
            .comp_masks
            .iter()
            .map(|&m| (a & m).count_ones())
            .collect();
        let on_pair = (a & self.pair_mask()).count_ones();
        (counts, on_pair == 1)
    }
}

/// Move the single token sitting on the cut pair to the pair's other vertex.
/// Errors unless the configuration meets the pair in exactly one vertex.
pub fn token_move(cut: &Cut, a: TokenConfig) -> Result<TokenConfig> {
    let on_pair = (a & cut.pair_mask()).count_ones();
    if on_pair != 1 {
        return Err(Error::BadCutIntersection(on_pair as usize));
    }
    // XOR with the pair mask clears the occupied side and sets the other.
    Ok(a ^ cut.pair_mask())
}

/// All same-neighbour 2-cuts of a connected graph, ordered by (x, y).
#[derive(Debug, Clone)]
pub struct CutFamily {
    pub cuts: Vec<Cut>,
}

impl CutFamily {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    /// Index of the cut whose pair is {u, v}, if any.
    pub fn index_of_pair(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.cuts.iter().position(|c| c.x == a && c.y == b)
    }
}

/// Find every same-neighbour 2-cut. The graph must be connected.
pub fn find_cuts(g: &Graph) -> Result<CutFamily> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut cuts = Vec::new();
    for x in 0..g.n() {
        for y in (x + 1)..g.n() {
            let nx: Vec<usize> = g.neighbours(x).iter().copied().filter(|&v| v != y).collect();
            let ny: Vec<usize> = g.neighbours(y).iter().copied().filter(|&v| v != x).collect();
            if nx != ny {
                continue;
            }
            let del = delete_vertices(g, &[x, y])?;
            let parts = connected_components(&del.graph);
            if parts.components.len() < 2 {
                continue;
            }
            let components: Vec<Vec<usize>> = parts
                .components
                .iter()
                .map(|c| c.iter().map(|&v| del.original[v]).collect())
                .collect();
            cuts.push(Cut::new(g, x, y, components));
        }
    }
    Ok(CutFamily { cuts })
}

/// Outcome of the two structural checks on the cut family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    /// Check failed; the string names a witness.
    Fail(String),
    /// The graph is a 4-cycle, the documented exception to the
    /// same-side property.
    Exempt(String),
    /// Fewer than two cuts: nothing to check.
    Vacuous,
}

impl CheckOutcome {
    pub fn is_ok(&self) -> bool {
        !matches!(self, CheckOutcome::Fail(_))
    }
}

/// Report for the pairwise structure of distinct cuts: (a) disjointness and
/// (b) both vertices of one cut in a single component of the other's
/// puncture (which fails precisely on the 4-cycle).
#[derive(Debug, Clone)]
pub struct TwoCutReport {
    pub disjoint: CheckOutcome,
    pub same_side: CheckOutcome,
}

/// Check (a) distinct cuts are disjoint, and (b) unless the graph is a
/// 4-cycle, the pair of every other cut lies inside one component.
pub fn verify_lemma_2cut(g: &Graph, fam: &CutFamily) -> TwoCutReport {
    if fam.len() < 2 {
        return TwoCutReport { disjoint: CheckOutcome::Vacuous, same_side: CheckOutcome::Vacuous };
    }
    let mut disjoint = CheckOutcome::Pass;
    'outer_a: for (i, a) in fam.cuts.iter().enumerate() {
        for b in fam.cuts.iter().skip(i + 1) {
            if a.x == b.x || a.x == b.y || a.y == b.x || a.y == b.y {
                disjoint = CheckOutcome::Fail(format!(
                    "cuts {{{},{}}} and {{{},{}}} share a vertex",
                    a.x, a.y, b.x, b.y
                ));
                break 'outer_a;
            }
        }
    }
    if is_four_cycle(g) {
        let why = "4-cycle: the two vertices of each diagonal straddle the \
                   other diagonal's components"
            .to_string();
        return TwoCutReport { disjoint, same_side: CheckOutcome::Exempt(why) };
    }
    let mut same_side = CheckOutcome::Pass;
    'outer_b: for (i, s) in fam.cuts.iter().enumerate() {
        for (j, t) in fam.cuts.iter().enumerate() {
            if i == j {
                continue;
            }
            let (cx, cy) = (s.component_of(t.x), s.component_of(t.y));
            if cx.is_none() || cy.is_none() || cx != cy {
                same_side = CheckOutcome::Fail(format!(
                    "cut {{{},{}}} does not lie inside one component of the \
                     puncture at {{{},{}}}",
                    t.x, t.y, s.x, s.y
                ));
                break 'outer_b;
            }
        }
    }
    TwoCutReport { disjoint, same_side }
}

/// Distribution tuples for one cut at token count k: all ways to spread the
/// k-1 off-pair tokens over the components without exceeding any component's
/// size. Lexicographically ascending.
pub fn tuple_set(cut: &Cut, k: usize) -> Vec<Vec<u32>> {
    let sizes = cut.sizes();
    let mut out = Vec::new();
    let mut current = vec![0u32; sizes.len()];
    fill(&sizes, k - 1, 0, &mut current, &mut out);
    return out;

    fn fill(
        sizes: &[usize],
        remaining: usize,
        pos: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == sizes.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let tail: usize = sizes[pos + 1..].iter().sum();
        let lo = remaining.saturating_sub(tail);
        let hi = remaining.min(sizes[pos]);
        for v in lo..=hi {
            current[pos] = v as u32;
            fill(sizes, remaining - v, pos + 1, current, out);
        }
        current[pos] = 0;
    }
}

/// The disjoint union of every cut's distribution tuples, with a dense
/// global index (cuts in family order, tuples lexicographic within a cut).
/// Flip sets over this index fit in a 64-bit word, so at most 63 tuples are
/// supported.
#[derive(Debug, Clone)]
pub struct TupleUniverse {
    pub k: usize,
    /// `per_cut[i]` is the tuple list of cut i, lexicographic.
    pub per_cut: Vec<Vec<Vec<u32>>>,
    /// `offsets[i]` is the global index of cut i's first tuple.
    pub offsets: Vec<usize>,
    total: usize,
}

impl TupleUniverse {
    pub fn new(fam: &CutFamily, k: usize) -> Result<TupleUniverse> {
        let per_cut: Vec<Vec<Vec<u32>>> =
            fam.cuts.iter().map(|c| tuple_set(c, k)).collect();
        let mut offsets = Vec::with_capacity(per_cut.len());
        let mut total = 0usize;
        for ts in &per_cut {
            offsets.push(total);
            total += ts.len();
        }
        if total > 63 {
            return Err(Error::TooManyTuples(total));
        }
        Ok(TupleUniverse { k, per_cut, offsets, total })
    }

    /// Total number of distribution tuples across all cuts.
    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Global index of a tuple of the given cut, if the tuple exists.
    pub fn global_index(&self, cut: usize, entries: &[u32]) -> Option<usize> {
        self.per_cut[cut]
            .binary_search_by(|t| t.as_slice().cmp(entries))
            .ok()
            .map(|local| self.offsets[cut] + local)
    }

    /// (cut index, tuple entries) of a global index.
    pub fn tuple(&self, global: usize) -> (usize, &[u32]) {
        let cut = match self.offsets.binary_search(&global) {
            Ok(c) => c,
            Err(c) => c - 1,
        };
        (cut, &self.per_cut[cut][global - self.offsets[cut]])
    }

    /// Global index range of one cut's block.
    pub fn block(&self, cut: usize) -> std::ops::Range<usize> {
        let end = if cut + 1 < self.offsets.len() {
            self.offsets[cut + 1]
        } else {
            self.total
        };
        self.offsets[cut]..end
    }
}
