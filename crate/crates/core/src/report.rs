//! Named verification claims over one (graph, k) input: each claim checks
//! one published property of the flip-map machinery by exhaustive
//! computation at desk scale and reports pass/fail with witness detail.

use std::time::Instant;

use serde::Serialize;

use crate::cuts::{
    find_cuts, token_move, verify_lemma_2cut, CheckOutcome, CutFamily, TupleUniverse,
};
use crate::error::{Error, Result};
use crate::graph::{is_four_cycle, Graph};
use crate::group::{
    closure, predicted_order, verify_theorem, x_stabilizer, PermGroup, TheoremReport,
};
use crate::oracle::{brute_force_aut, brute_force_aut_with_limit};
use crate::symmetry::{
    act_on_beta, act_on_tuple, complement_on_beta, induce, is_automorphism, is_induced,
    phi, psi, psi_with_cut_order, AlphaSet, BetaSet, Permutation,
};
use crate::token::{build_token_graph_with_cap, complement_permutation, TokenGraph};

pub const SCHEMA_VERSION: u32 = 1;

/// Every claim id, in emission order (sorted, so reports are deterministic).
pub const CLAIM_IDS: [&str; 24] = [
    "action-axioms",
    "cor-2cut-commute",
    "cor-psi-aut",
    "cor-psi-induced",
    "dagger-action",
    "eq-1-commute",
    "eq-2-ns-order",
    "eq-id-involution",
    "lemma-2cut-a",
    "lemma-2cut-b",
    "lemma-psi-commute-a",
    "lemma-psi-commute-b",
    "n-group-order",
    "phi-xor-law",
    "prop-varphi-aut",
    "prop-varphi-induced",
    "psi-order-independence",
    "star-action",
    "thm-main-contains-induced",
    "thm-main-decompose",
    "thm-main-factorization",
    "thm-main-intersection",
    "thm-main-normal",
    "thm-main-order",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Vacuous,
    Exempt,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub id: &'static str,
    pub status: ClaimStatus,
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRun {
    pub schema: u32,
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub half_filling: bool,
    pub four_cycle: bool,
    pub claims: Vec<ClaimReport>,
}

impl VerifyRun {
    /// 0 when nothing failed (vacuous/exempt/skipped count as non-failures).
    pub fn exit_code(&self) -> i32 {
        if self.claims.iter().any(|c| c.status == ClaimStatus::Fail) {
            1
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CutSummary {
    pub x: String,
    pub y: String,
    pub component_sizes: Vec<usize>,
    pub tuple_count: usize,
}

/// The machine-readable summary behind `report` and `order`.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub n: usize,
    pub k: usize,
    pub token_vertices: usize,
    pub token_edges: usize,
    pub half_filling: bool,
    pub four_cycle: bool,
    pub q: usize,
    pub cuts: Vec<CutSummary>,
    pub tuple_total: usize,
    /// |Aut| of the base graph, when the oracle completed.
    pub aut_order: Option<usize>,
    /// Order of the x-label stabilizer inside that group.
    pub stab_order: Option<usize>,
    /// Product formula 2^{tuples} · |stabilizer| · (2 at half filling),
    /// as a decimal string.
    pub predicted: Option<String>,
    /// Materialized order of the generated subgroup.
    pub closure: Option<usize>,
    /// |Aut| of the token graph itself, when requested and feasible.
    pub token_aut_order: Option<usize>,
}

enum TheoremState {
    Ready(TheoremReport),
    Vacuous,
    Skipped(String),
}

/// Shared artifacts for one verification run. Construction performs the
/// hard-error steps (parse-level problems surface before any claim runs);
/// oracle or closure blowups degrade to skipped claims instead.
pub struct Pipeline {
    pub g: Graph,
    pub k: usize,
    pub tg: TokenGraph,
    pub fam: CutFamily,
    pub uni: TupleUniverse,
    pub four_cycle: bool,
    pub cap: usize,
    oracle: Option<PermGroup>,
    oracle_note: String,
    flips: Option<PermGroup>,
    flips_note: String,
    theorem: TheoremState,
}

pub fn prepare(g: Graph, k: usize, cap: usize) -> Result<Pipeline> {
    let tg = build_token_graph_with_cap(&g, k, cap)?;
    let fam = find_cuts(&g)?;
    let uni = TupleUniverse::new(&fam, k)?;
    let four_cycle = is_four_cycle(&g);

    let (oracle, oracle_note) = match brute_force_aut(&g, cap) {
        Ok(group) => (Some(group), String::new()),
        Err(e) => (None, e.to_string()),
    };

    let (flips, flips_note) = if fam.is_empty() {
        (None, String::new())
    } else {
        let gens: Vec<Permutation> = (0..uni.len())
            .map(|t| {
                let beta = BetaSet::singleton(t);
                let (cut, _) = uni.tuple(t);
                phi(&tg, &fam, &uni, &beta.restrict(&uni, cut))
            })
            .collect();
        match closure(tg.len(), &gens, cap) {
            Ok(group) => (Some(group), String::new()),
            Err(e) => (None, format!("cap: {e}")),
        }
    };

    let theorem = if fam.is_empty() {
        TheoremState::Vacuous
    } else if let Some(auts) = &oracle {
        match verify_theorem(&g, &tg, &fam, &uni, auts, cap) {
            Ok(rep) => TheoremState::Ready(rep),
            Err(e @ Error::CapExceeded { .. }) => TheoremState::Skipped(format!("cap: {e}")),
            Err(e) => return Err(e),
        }
    } else {
        TheoremState::Skipped(format!("base oracle unavailable ({oracle_note})"))
    };

    Ok(Pipeline {
        g,
        k,
        tg,
        fam,
        uni,
        four_cycle,
        cap,
        oracle,
        oracle_note,
        flips,
        flips_note,
        theorem,
    })
}

impl Pipeline {
    /// Run every claim (or the given subset), emitting reports in claim-id
    /// order.
    pub fn run(&self, filter: Option<&[String]>) -> VerifyRun {
        let mut claims = Vec::new();
        for id in CLAIM_IDS {
            if let Some(wanted) = filter {
                if !wanted.iter().any(|w| w == id) {
                    continue;
                }
            }
            let start = Instant::now();
            let (status, detail) = self.evaluate(id);
            claims.push(ClaimReport {
                id,
                status,
                detail,
                millis: start.elapsed().as_millis(),
            });
        }
        VerifyRun {
            schema: SCHEMA_VERSION,
            n: self.g.n(),
            k: self.k,
            q: self.fam.len(),
            half_filling: self.tg.is_half(),
            four_cycle: self.four_cycle,
            claims,
        }
    }

    fn evaluate(&self, id: &str) -> (ClaimStatus, String) {
        match id {
            "action-axioms" => self.action_axioms(),
            "cor-2cut-commute" => self.cor_2cut_commute(),
            "cor-psi-aut" => self.cor_psi_aut(),
            "cor-psi-induced" => self.cor_psi_induced(),
            "dagger-action" => self.dagger_action(),
            "eq-1-commute" => self.eq_1_commute(),
            "eq-2-ns-order" => self.eq_2_ns_order(),
            "eq-id-involution" => self.eq_id_involution(),
            "lemma-2cut-a" => self.lemma_2cut(true),
            "lemma-2cut-b" => self.lemma_2cut(false),
            "lemma-psi-commute-a" => self.lemma_psi_commute_a(),
            "lemma-psi-commute-b" => self.lemma_psi_commute_b(),
            "n-group-order" => self.n_group_order(),
            "phi-xor-law" => self.phi_xor_law(),
            "prop-varphi-aut" => self.prop_varphi_aut(),
            "prop-varphi-induced" => self.prop_varphi_induced(),
            "psi-order-independence" => self.psi_order_independence(),
            "star-action" => self.star_action(),
            "thm-main-contains-induced" => self.thm_claim(id),
            "thm-main-decompose" => self.thm_claim(id),
            "thm-main-factorization" => self.thm_claim(id),
            "thm-main-intersection" => self.thm_claim(id),
            "thm-main-normal" => self.thm_claim(id),
            "thm-main-order" => self.thm_claim(id),
            _ => unreachable!("unknown claim id {id}"),
        }
    }

    fn no_cuts(&self) -> Option<(ClaimStatus, String)> {
        if self.fam.is_empty() {
            Some((
                ClaimStatus::Vacuous,
                "no same-neighbour 2-cuts in this graph".to_string(),
            ))
        } else {
            None
        }
    }

    fn fewer_than_two_cuts(&self) -> Option<(ClaimStatus, String)> {
        if self.fam.len() < 2 {
            Some((
                ClaimStatus::Vacuous,
                format!("{} same-neighbour 2-cut(s); needs at least two", self.fam.len()),
            ))
        } else {
            None
        }
    }

    fn need_oracle(&self) -> std::result::Result<&PermGroup, (ClaimStatus, String)> {
        self.oracle.as_ref().ok_or((
            ClaimStatus::Skipped,
            format!("base oracle unavailable ({})", self.oracle_note),
        ))
    }

    /// All flip subsets of a width-w tuple set, or a deterministic sample
    /// (empty, full, singletons, adjacent pairs) once 2^w would be large.
    fn alpha_masks(w: usize) -> (Vec<u64>, bool) {
        if w <= 10 {
            ((0..1u64 << w).collect(), true)
        } else {
            let mut masks = vec![0, mask_of(w)];
            masks.extend((0..w).map(|i| 1u64 << i));
            masks.extend((0..w - 1).map(|i| 3u64 << i));
            (masks, false)
        }
    }

    /// All global flip sets, or a sample that still includes every
    /// per-cut-pure combination.
    fn beta_masks(&self) -> (Vec<BetaSet>, bool) {
        let total = self.uni.len();
        if total <= 10 {
            return ((0..1u64 << total).map(|bits| BetaSet { bits }).collect(), true);
        }
        let mut masks = vec![0u64];
        masks.extend((0..total).map(|i| 1u64 << i));
        masks.extend((0..total - 1).map(|i| 3u64 << i));
        if self.fam.len() <= 10 {
            let blocks: Vec<u64> = (0..self.fam.len())
                .map(|c| {
                    let b = self.uni.block(c);
                    (b.start..b.end).fold(0u64, |acc, i| acc | 1 << i)
                })
                .collect();
            for combo in 0..1u64 << self.fam.len() {
                let bits = blocks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| combo >> i & 1 == 1)
                    .fold(0u64, |acc, (_, b)| acc | b);
                masks.push(bits);
            }
        }
        masks.sort_unstable();
        masks.dedup();
        (masks.into_iter().map(|bits| BetaSet { bits }).collect(), false)
    }

    fn sample_note(exhaustive: bool) -> &'static str {
        if exhaustive {
            ""
        } else {
            " (sampled flip sets)"
        }
    }

    fn lemma_2cut(&self, disjoint_half: bool) -> (ClaimStatus, String) {
        if let Some(v) = self.fewer_than_two_cuts() {
            return v;
        }
        let rep = verify_lemma_2cut(&self.g, &self.fam);
        let outcome = if disjoint_half { rep.disjoint } else { rep.same_side };
        match outcome {
            CheckOutcome::Pass => {
                let pairs = self.fam.len() * (self.fam.len() - 1) / 2;
                let what = if disjoint_half {
                    "vertex-disjoint"
                } else {
                    "contained in one deletion component of the other"
                };
                (ClaimStatus::Pass, format!("all {pairs} cut pairs are {what}"))
            }
            CheckOutcome::Fail(w) => (ClaimStatus::Fail, w),
            CheckOutcome::Exempt(w) => (ClaimStatus::Exempt, w),
            CheckOutcome::Vacuous => (ClaimStatus::Vacuous, "fewer than two cuts".into()),
        }
    }

    fn cor_2cut_commute(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.fewer_than_two_cuts() {
            return v;
        }
        let mut configs = 0usize;
        let mut pairs = 0usize;
        for i in 0..self.fam.len() {
            for j in i + 1..self.fam.len() {
                pairs += 1;
                let ci = &self.fam.cuts[i];
                let cj = &self.fam.cuts[j];
                for idx in 0..self.tg.len() {
                    let a = self.tg.config(idx);
                    if (a & ci.pair_mask()).count_ones() != 1
                        || (a & cj.pair_mask()).count_ones() != 1
                    {
                        continue;
                    }
                    configs += 1;
                    let ij = token_move(cj, token_move(ci, a).expect("one token on cut"));
                    let ji = token_move(ci, token_move(cj, a).expect("one token on cut"));
                    match (ij, ji) {
                        (Ok(x), Ok(y)) if x == y => {}
                        _ => {
                            return (
                                ClaimStatus::Fail,
                                format!(
                                    "double move disagrees on {} across cuts {} and {}",
                                    self.tg.label(idx),
                                    i + 1,
                                    j + 1
                                ),
                            );
                        }
                    }
                }
            }
        }
        (
            ClaimStatus::Pass,
            format!("double moves agree on {configs} configurations across {pairs} cut pairs"),
        )
    }

    fn prop_varphi_aut(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let mut total = 0usize;
        let mut exhaustive = true;
        for cut in 0..self.fam.len() {
            let (masks, exact) = Self::alpha_masks(self.uni.per_cut[cut].len());
            exhaustive &= exact;
            for bits in masks {
                let p = phi(&self.tg, &self.fam, &self.uni, &AlphaSet { cut, bits });
                if !is_automorphism(&p, &self.tg) {
                    return (
                        ClaimStatus::Fail,
                        format!("flip map of cut {} with set {bits:#b} breaks adjacency", cut + 1),
                    );
                }
                total += 1;
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "{total} flip maps preserve adjacency{}",
                Self::sample_note(exhaustive)
            ),
        )
    }

    fn prop_varphi_induced(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let auts = match self.need_oracle() {
            Ok(a) => a,
            Err(s) => return s,
        };
        let mut total = 0usize;
        let mut exhaustive = true;
        for cut in 0..self.fam.len() {
            let (masks, exact) = Self::alpha_masks(self.uni.per_cut[cut].len());
            exhaustive &= exact;
            for bits in masks {
                let alpha = AlphaSet { cut, bits };
                let p = phi(&self.tg, &self.fam, &self.uni, &alpha);
                let kind = match is_induced(&p, &self.tg, auts.elements()) {
                    Ok(k) => k,
                    Err(e) => return (ClaimStatus::Fail, e.to_string()),
                };
                if kind.is_induced() != alpha.is_trivial_or_full(&self.uni) {
                    return (
                        ClaimStatus::Fail,
                        format!(
                            "cut {} set {bits:#b}: induced={} but trivial-or-full={}",
                            cut + 1,
                            kind.is_induced(),
                            alpha.is_trivial_or_full(&self.uni)
                        ),
                    );
                }
                total += 1;
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "induced exactly on empty or full flip sets ({total} checked){}",
                Self::sample_note(exhaustive)
            ),
        )
    }

    fn eq_id_involution(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let mut total = 0usize;
        let mut exhaustive = true;
        for cut in 0..self.fam.len() {
            let (masks, exact) = Self::alpha_masks(self.uni.per_cut[cut].len());
            exhaustive &= exact;
            for bits in masks {
                let p = phi(&self.tg, &self.fam, &self.uni, &AlphaSet { cut, bits });
                if !p.compose(&p).is_identity() {
                    return (
                        ClaimStatus::Fail,
                        format!("flip map of cut {} with set {bits:#b} is not an involution", cut + 1),
                    );
                }
                total += 1;
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "{total} flip maps square to the identity{}",
                Self::sample_note(exhaustive)
            ),
        )
    }

    fn phi_xor_law(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let mut pairs = 0usize;
        let mut exhaustive = true;
        for cut in 0..self.fam.len() {
            let w = self.uni.per_cut[cut].len();
            let (masks, exact) = if w <= 6 {
                ((0..1u64 << w).collect::<Vec<_>>(), true)
            } else {
                Self::alpha_masks(w)
            };
            exhaustive &= exact && w <= 6;
            for &a in &masks {
                let pa = phi(&self.tg, &self.fam, &self.uni, &AlphaSet { cut, bits: a });
                for &b in &masks {
                    let pb = phi(&self.tg, &self.fam, &self.uni, &AlphaSet { cut, bits: b });
                    let pxor =
                        phi(&self.tg, &self.fam, &self.uni, &AlphaSet { cut, bits: a ^ b });
                    if pa.compose(&pb) != pxor {
                        return (
                            ClaimStatus::Fail,
                            format!(
                                "cut {}: composing sets {a:#b} and {b:#b} differs from their symmetric difference",
                                cut + 1
                            ),
                        );
                    }
                    pairs += 1;
                }
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "{pairs} same-cut compositions match the symmetric-difference flip{}",
                Self::sample_note(exhaustive)
            ),
        )
    }

    fn eq_2_ns_order(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let mut per_cut = Vec::new();
        for cut in 0..self.fam.len() {
            let w = self.uni.per_cut[cut].len();
            let gens: Vec<Permutation> = (0..w)
                .map(|t| phi(&self.tg, &self.fam, &self.uni, &AlphaSet { cut, bits: 1 << t }))
                .collect();
            let group = match closure(self.tg.len(), &gens, self.cap) {
                Ok(g) => g,
                Err(e) => return (ClaimStatus::Skipped, format!("cap: {e}")),
            };
            let expected = 1usize << w;
            if group.order() != expected || !group.is_abelian() || !group.all_involutions() {
                return (
                    ClaimStatus::Fail,
                    format!(
                        "cut {}: flip group order {} (expected {expected}), abelian={}, involutions={}",
                        cut + 1,
                        group.order(),
                        group.is_abelian(),
                        group.all_involutions()
                    ),
                );
            }
            per_cut.push(format!("cut {}: 2^{w}", cut + 1));
        }
        (
            ClaimStatus::Pass,
            format!(
                "per-cut flip groups are elementary abelian of full rank ({})",
                per_cut.join(", ")
            ),
        )
    }

    fn eq_1_commute(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.fewer_than_two_cuts() {
            return v;
        }
        let mut pairs = 0usize;
        let mut bad = 0usize;
        let mut witness = String::new();
        for i in 0..self.fam.len() {
            for j in i + 1..self.fam.len() {
                for ti in 0..self.uni.per_cut[i].len() {
                    let pi = phi(
                        &self.tg,
                        &self.fam,
                        &self.uni,
                        &AlphaSet { cut: i, bits: 1 << ti },
                    );
                    for tj in 0..self.uni.per_cut[j].len() {
                        let pj = phi(
                            &self.tg,
                            &self.fam,
                            &self.uni,
                            &AlphaSet { cut: j, bits: 1 << tj },
                        );
                        pairs += 1;
                        if pi.compose(&pj) != pj.compose(&pi) {
                            bad += 1;
                            if witness.is_empty() {
                                witness = format!(
                                    "cuts {} and {}, tuple indices {ti} and {tj}",
                                    i + 1,
                                    j + 1
                                );
                            }
                        }
                    }
                }
            }
        }
        if self.four_cycle {
            return (
                ClaimStatus::Exempt,
                format!(
                    "excluded degenerate 4-cycle ({bad} of {pairs} cross-cut singleton pairs do not commute)"
                ),
            );
        }
        if bad > 0 {
            (
                ClaimStatus::Fail,
                format!("{bad} of {pairs} cross-cut singleton pairs do not commute; first: {witness}"),
            )
        } else {
            (
                ClaimStatus::Pass,
                format!("{pairs} cross-cut singleton flip pairs commute"),
            )
        }
    }

    fn psi_order_independence(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.fewer_than_two_cuts() {
            return v;
        }
        let (betas, exhaustive) = self.beta_masks();
        let q = self.fam.len();
        let reversed: Vec<usize> = (0..q).rev().collect();
        let rotated: Vec<usize> = (0..q).map(|i| (i + 1) % q).collect();
        let mut bad = 0usize;
        let mut witness = String::new();
        for beta in &betas {
            let canonical = psi(&self.tg, &self.fam, &self.uni, beta);
            for order in [&reversed, &rotated] {
                let other = psi_with_cut_order(&self.tg, &self.fam, &self.uni, beta, order);
                if other != canonical {
                    bad += 1;
                    if witness.is_empty() {
                        witness = format!("flip set {:#b} under order {order:?}", beta.bits);
                    }
                }
            }
        }
        if self.four_cycle {
            return (
                ClaimStatus::Exempt,
                format!(
                    "excluded degenerate 4-cycle ({bad} of {} reorderings disagree)",
                    betas.len() * 2
                ),
            );
        }
        if bad > 0 {
            (
                ClaimStatus::Fail,
                format!("{bad} reorderings disagree; first: {witness}"),
            )
        } else {
            (
                ClaimStatus::Pass,
                format!(
                    "{} flip products agree under reversed and rotated cut orders{}",
                    betas.len(),
                    Self::sample_note(exhaustive)
                ),
            )
        }
    }

    fn n_group_order(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let flips = match &self.flips {
            Some(f) => f,
            None => return (ClaimStatus::Skipped, self.flips_note.clone()),
        };
        let expected = 1u128 << self.uni.len();
        let ok = flips.order() as u128 == expected
            && flips.is_abelian()
            && flips.all_involutions();
        if self.four_cycle {
            return (
                ClaimStatus::Exempt,
                format!(
                    "excluded degenerate 4-cycle (observed flip-group order {}, formula gives {expected})",
                    flips.order()
                ),
            );
        }
        if ok {
            (
                ClaimStatus::Pass,
                format!(
                    "flip group is elementary abelian of order 2^{} = {}",
                    self.uni.len(),
                    flips.order()
                ),
            )
        } else {
            (
                ClaimStatus::Fail,
                format!(
                    "flip group order {} (expected {expected}), abelian={}, involutions={}",
                    flips.order(),
                    flips.is_abelian(),
                    flips.all_involutions()
                ),
            )
        }
    }

    fn cor_psi_aut(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let (betas, exhaustive) = self.beta_masks();
        for beta in &betas {
            let p = psi(&self.tg, &self.fam, &self.uni, beta);
            if !is_automorphism(&p, &self.tg) {
                return (
                    ClaimStatus::Fail,
                    format!("flip product of set {:#b} breaks adjacency", beta.bits),
                );
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "{} flip products preserve adjacency{}",
                betas.len(),
                Self::sample_note(exhaustive)
            ),
        )
    }

    fn cor_psi_induced(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let auts = match self.need_oracle() {
            Ok(a) => a,
            Err(s) => return s,
        };
        let (betas, exhaustive) = self.beta_masks();
        for beta in &betas {
            let p = psi(&self.tg, &self.fam, &self.uni, beta);
            let kind = match is_induced(&p, &self.tg, auts.elements()) {
                Ok(k) => k,
                Err(e) => return (ClaimStatus::Fail, e.to_string()),
            };
            if kind.is_induced() != beta.is_per_cut_pure(&self.uni) {
                return (
                    ClaimStatus::Fail,
                    format!(
                        "flip set {:#b}: induced={} but per-cut-pure={}",
                        beta.bits,
                        kind.is_induced(),
                        beta.is_per_cut_pure(&self.uni)
                    ),
                );
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "induced exactly when every cut's share is empty or full ({} checked){}",
                betas.len(),
                Self::sample_note(exhaustive)
            ),
        )
    }

    fn star_action(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let auts = match self.need_oracle() {
            Ok(a) => a,
            Err(s) => return s,
        };
        for f in auts.elements() {
            for cut in 0..self.fam.len() {
                for entries in &self.uni.per_cut[cut] {
                    let (tcut, tentries) =
                        match act_on_tuple(&self.g, &self.fam, f, cut, entries) {
                            Ok(x) => x,
                            Err(e) => return (ClaimStatus::Fail, e.to_string()),
                        };
                    for idx in 0..self.tg.len() {
                        let a = self.tg.config(idx);
                        let (ca, fa) = self.fam.cuts[cut].classify(a);
                        let in_class = fa && &ca == entries;
                        let b = f.apply_config(a);
                        let (cb, fb) = self.fam.cuts[tcut].classify(b);
                        let in_image = fb && cb == tentries;
                        if in_class != in_image {
                            return (
                                ClaimStatus::Fail,
                                format!(
                                    "configuration {} disagrees with transported class at cut {}",
                                    self.tg.label(idx),
                                    cut + 1
                                ),
                            );
                        }
                    }
                }
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "class membership transports along all {} base maps × {} classes × {} configurations",
                auts.order(),
                self.uni.len(),
                self.tg.len()
            ),
        )
    }

    fn dagger_action(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        if !self.tg.is_half() {
            return (
                ClaimStatus::Vacuous,
                format!(
                    "requires half filling (k = {}, n = {})",
                    self.k,
                    self.g.n()
                ),
            );
        }
        let full = if self.g.n() == 64 { !0u64 } else { (1u64 << self.g.n()) - 1 };
        for cut in 0..self.fam.len() {
            for entries in &self.uni.per_cut[cut] {
                let centries =
                    match crate::symmetry::complement_on_tuple(&self.fam.cuts[cut], entries) {
                        Ok(x) => x,
                        Err(e) => return (ClaimStatus::Fail, e.to_string()),
                    };
                for idx in 0..self.tg.len() {
                    let a = self.tg.config(idx);
                    let (ca, fa) = self.fam.cuts[cut].classify(a);
                    let in_class = fa && &ca == entries;
                    let b = full ^ a;
                    let (cb, fb) = self.fam.cuts[cut].classify(b);
                    let in_image = fb && cb == centries;
                    if in_class != in_image {
                        return (
                            ClaimStatus::Fail,
                            format!(
                                "complement of {} leaves the transported class at cut {}",
                                self.tg.label(idx),
                                cut + 1
                            ),
                        );
                    }
                }
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "class membership transports through the complement for {} classes × {} configurations",
                self.uni.len(),
                self.tg.len()
            ),
        )
    }

    fn action_axioms(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let auts = match self.need_oracle() {
            Ok(a) => a,
            Err(s) => return s,
        };
        let e = Permutation::identity(self.g.n());
        for cut in 0..self.fam.len() {
            for entries in &self.uni.per_cut[cut] {
                match act_on_tuple(&self.g, &self.fam, &e, cut, entries) {
                    Ok((tcut, tentries)) if tcut == cut && &tentries == entries => {}
                    _ => {
                        return (
                            ClaimStatus::Fail,
                            format!("identity moves a class of cut {}", cut + 1),
                        );
                    }
                }
            }
        }
        let mut pairs = 0usize;
        for f in auts.elements() {
            for g2 in auts.elements() {
                pairs += 1;
                let fg = f.compose(g2);
                for cut in 0..self.fam.len() {
                    for entries in &self.uni.per_cut[cut] {
                        let step = act_on_tuple(&self.g, &self.fam, g2, cut, entries)
                            .and_then(|(c1, e1)| act_on_tuple(&self.g, &self.fam, f, c1, &e1));
                        let direct = act_on_tuple(&self.g, &self.fam, &fg, cut, entries);
                        match (step, direct) {
                            (Ok(a), Ok(b)) if a == b => {}
                            _ => {
                                return (
                                    ClaimStatus::Fail,
                                    format!(
                                        "composition transport disagrees at cut {}",
                                        cut + 1
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "identity fixes all {} classes; {pairs} composition pairs transport consistently",
                self.uni.len()
            ),
        )
    }

    fn lemma_psi_commute_a(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        let auts = match self.need_oracle() {
            Ok(a) => a,
            Err(s) => return s,
        };
        let stab = x_stabilizer(&self.g, &self.fam, auts);
        let mut checked = 0usize;
        for f in stab.elements() {
            let ind = match induce(f, &self.tg) {
                Ok(p) => p,
                Err(e) => return (ClaimStatus::Fail, e.to_string()),
            };
            for t in 0..self.uni.len() {
                let beta = BetaSet::singleton(t);
                let fbeta = match act_on_beta(&self.g, &self.fam, &self.uni, f, &beta) {
                    Ok(b) => b,
                    Err(e) => return (ClaimStatus::Fail, e.to_string()),
                };
                let lhs = ind.compose(&psi(&self.tg, &self.fam, &self.uni, &beta));
                let rhs = psi(&self.tg, &self.fam, &self.uni, &fbeta).compose(&ind);
                if lhs != rhs {
                    return (
                        ClaimStatus::Fail,
                        format!("conjugation mismatch for singleton flip set {t}"),
                    );
                }
                checked += 1;
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "conjugation transports flip sets for {} stabilizer maps × {} singletons ({checked} checks)",
                stab.order(),
                self.uni.len()
            ),
        )
    }

    fn lemma_psi_commute_b(&self) -> (ClaimStatus, String) {
        if let Some(v) = self.no_cuts() {
            return v;
        }
        if !self.tg.is_half() {
            return (
                ClaimStatus::Vacuous,
                format!(
                    "requires half filling (k = {}, n = {})",
                    self.k,
                    self.g.n()
                ),
            );
        }
        let comp = match complement_permutation(&self.tg) {
            Ok(c) => c,
            Err(e) => return (ClaimStatus::Fail, e.to_string()),
        };
        for t in 0..self.uni.len() {
            let beta = BetaSet::singleton(t);
            let cbeta = match complement_on_beta(&self.fam, &self.uni, &beta) {
                Ok(b) => b,
                Err(e) => return (ClaimStatus::Fail, e.to_string()),
            };
            let lhs = comp.compose(&psi(&self.tg, &self.fam, &self.uni, &beta));
            let rhs = psi(&self.tg, &self.fam, &self.uni, &cbeta).compose(&comp);
            if lhs != rhs {
                return (
                    ClaimStatus::Fail,
                    format!("complement conjugation mismatch for singleton flip set {t}"),
                );
            }
        }
        (
            ClaimStatus::Pass,
            format!(
                "complement conjugation transports all {} singleton flip sets",
                self.uni.len()
            ),
        )
    }

    fn thm_claim(&self, id: &str) -> (ClaimStatus, String) {
        let rep = match &self.theorem {
            TheoremState::Vacuous => {
                return (
                    ClaimStatus::Vacuous,
                    "no same-neighbour 2-cuts in this graph".to_string(),
                )
            }
            TheoremState::Skipped(note) => return (ClaimStatus::Skipped, note.clone()),
            TheoremState::Ready(rep) => rep,
        };
        let exempt = |ok: bool, observed: String| {
            if self.four_cycle {
                (
                    ClaimStatus::Exempt,
                    format!("excluded degenerate 4-cycle ({observed})"),
                )
            } else if ok {
                (ClaimStatus::Pass, observed)
            } else {
                (ClaimStatus::Fail, observed)
            }
        };
        match id {
            "thm-main-order" => exempt(
                rep.closure_order as u128 == rep.predicted,
                format!(
                    "closure order {} vs formula 2^{} · {}{} = {}",
                    rep.closure_order,
                    rep.tuple_count,
                    rep.stab_order,
                    if self.tg.is_half() { " · 2" } else { "" },
                    rep.predicted
                ),
            ),
            "thm-main-intersection" => exempt(
                rep.intersection_trivial,
                format!(
                    "flip group ∩ induced{} factor trivial: {}",
                    if self.tg.is_half() { "-and-complement" } else { "" },
                    rep.intersection_trivial
                ),
            ),
            "thm-main-factorization" => exempt(
                rep.factorization_unique,
                format!(
                    "distinct flip∘complement-power∘induced products exhaust the group: {}",
                    rep.factorization_unique
                ),
            ),
            "thm-main-normal" => {
                if rep.flip_normal {
                    (
                        ClaimStatus::Pass,
                        format!(
                            "flip group (order {}) is normal in the generated group (order {})",
                            rep.flip_order, rep.closure_order
                        ),
                    )
                } else {
                    (ClaimStatus::Fail, "a conjugate leaves the flip group".into())
                }
            }
            "thm-main-contains-induced" => {
                if rep.contains_induced {
                    (
                        ClaimStatus::Pass,
                        "every induced base map lies in the generated group".into(),
                    )
                } else {
                    (
                        ClaimStatus::Fail,
                        "an induced base map escapes the generated group".into(),
                    )
                }
            }
            "thm-main-decompose" => {
                if rep.decomposition_ok {
                    (
                        ClaimStatus::Pass,
                        "every base map rewrites as flip product ∘ induced stabilizer map".into(),
                    )
                } else {
                    (
                        ClaimStatus::Fail,
                        "a base map does not rewrite over the stabilizer".into(),
                    )
                }
            }
            _ => unreachable!(),
        }
    }
}

fn mask_of(len: usize) -> u64 {
    if len >= 64 {
        !0
    } else {
        (1 << len) - 1
    }
}

/// Build the numeric summary, optionally attempting the token-graph oracle.
pub fn summarize(p: &Pipeline, with_token_oracle: bool) -> Summary {
    let cuts: Vec<CutSummary> = p
        .fam
        .cuts
        .iter()
        .enumerate()
        .map(|(i, c)| CutSummary {
            x: p.g.label(c.x).to_string(),
            y: p.g.label(c.y).to_string(),
            component_sizes: c.sizes(),
            tuple_count: p.uni.per_cut[i].len(),
        })
        .collect();

    let (aut_order, stab_order) = match &p.oracle {
        Some(auts) => {
            let stab = x_stabilizer(&p.g, &p.fam, auts);
            (Some(auts.order()), Some(stab.order()))
        }
        None => (None, None),
    };
    let predicted = stab_order
        .map(|s| predicted_order(p.g.n(), p.k, p.uni.len(), s).to_string());

    let closure_order = match &p.theorem {
        TheoremState::Ready(rep) => Some(rep.closure_order),
        TheoremState::Vacuous => p.oracle.as_ref().and_then(|auts| {
            // No cuts: the generated group is just the induced copy of the
            // base group, doubled by the complement at half filling.
            let mut gens: Vec<Permutation> = auts
                .elements()
                .iter()
                .map(|f| induce(f, &p.tg))
                .collect::<Result<_>>()
                .ok()?;
            if p.tg.is_half() {
                gens.push(complement_permutation(&p.tg).ok()?);
            }
            closure(p.tg.len(), &gens, p.cap).ok().map(|g| g.order())
        }),
        TheoremState::Skipped(_) => None,
    };

    let token_aut_order = if with_token_oracle {
        brute_force_aut(&p.tg.as_graph(), p.cap)
            .ok()
            .map(|g| g.order())
    } else {
        None
    };

    Summary {
        schema: SCHEMA_VERSION,
        n: p.g.n(),
        k: p.k,
        token_vertices: p.tg.len(),
        token_edges: p.tg.edge_count(),
        half_filling: p.tg.is_half(),
        four_cycle: p.four_cycle,
        q: p.fam.len(),
        cuts,
        tuple_total: p.uni.len(),
        aut_order,
        stab_order,
        predicted,
        closure: closure_order,
        token_aut_order,
    }
}

/// Token-graph oracle with the vertex ceiling widened to the configuration
/// count; still subject to the element cap.
pub fn token_oracle(tg: &TokenGraph, cap: usize) -> Result<PermGroup> {
    brute_force_aut_with_limit(&tg.as_graph(), cap, tg.len().max(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOUBLE_CUT: &str = include_str!("../../../fixtures/double_cut.txt");
    const C4: &str = include_str!("../../../fixtures/c4.txt");
    const P3: &str = include_str!("../../../fixtures/p3.txt");
    const PLANTED_HALF: &str = include_str!("../../../fixtures/planted_half.txt");

    fn run(text: &str, k: usize) -> VerifyRun {
        let g = Graph::parse(text).unwrap();
        let p = prepare(g, k, 1 << 20).unwrap();
        p.run(None)
    }

    fn status(run: &VerifyRun, id: &str) -> ClaimStatus {
        run.claims.iter().find(|c| c.id == id).unwrap().status
    }

    #[test]
    fn registry_is_sorted_and_complete() {
        let mut sorted = CLAIM_IDS.to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, CLAIM_IDS.to_vec());
        assert_eq!(CLAIM_IDS.len(), 24);
    }

    #[test]
    fn six_vertex_fixture_passes_everything_applicable() {
        let run = run(DOUBLE_CUT, 2);
        assert_eq!(run.claims.len(), 24);
        assert_eq!(run.exit_code(), 0);
        for claim in &run.claims {
            let expected = if claim.id == "dagger-action" || claim.id == "lemma-psi-commute-b" {
                ClaimStatus::Vacuous // k = 2 of n = 6 is not half filling
            } else {
                ClaimStatus::Pass
            };
            assert_eq!(claim.status, expected, "{}: {}", claim.id, claim.detail);
        }
    }

    #[test]
    fn half_filled_fixture_exercises_complement_claims() {
        let run = run(PLANTED_HALF, 3);
        assert_eq!(run.exit_code(), 0);
        assert_eq!(status(&run, "dagger-action"), ClaimStatus::Pass);
        assert_eq!(status(&run, "lemma-psi-commute-b"), ClaimStatus::Pass);
        assert_eq!(status(&run, "thm-main-order"), ClaimStatus::Pass);
        // Single cut: the two-cut interaction claims are vacuous.
        assert_eq!(status(&run, "lemma-2cut-a"), ClaimStatus::Vacuous);
        assert_eq!(status(&run, "eq-1-commute"), ClaimStatus::Vacuous);
        assert_eq!(status(&run, "cor-2cut-commute"), ClaimStatus::Vacuous);
        assert_eq!(status(&run, "psi-order-independence"), ClaimStatus::Vacuous);
    }

    #[test]
    fn four_cycle_exemptions_are_exact() {
        let run = run(C4, 2);
        assert_eq!(run.exit_code(), 0, "exemptions must not fail the run");
        let exempt = [
            "lemma-2cut-b",
            "eq-1-commute",
            "psi-order-independence",
            "n-group-order",
            "thm-main-order",
            "thm-main-intersection",
            "thm-main-factorization",
        ];
        for claim in &run.claims {
            if exempt.contains(&claim.id) {
                assert_eq!(
                    claim.status,
                    ClaimStatus::Exempt,
                    "{}: {}",
                    claim.id,
                    claim.detail
                );
            } else {
                assert!(
                    claim.status == ClaimStatus::Pass || claim.status == ClaimStatus::Vacuous,
                    "{}: {:?} {}",
                    claim.id,
                    claim.status,
                    claim.detail
                );
            }
        }
        // The structural facts that survive the degeneracy really run.
        assert_eq!(status(&run, "thm-main-normal"), ClaimStatus::Pass);
        assert_eq!(status(&run, "thm-main-contains-induced"), ClaimStatus::Pass);
        assert_eq!(status(&run, "thm-main-decompose"), ClaimStatus::Pass);
        assert_eq!(status(&run, "cor-psi-induced"), ClaimStatus::Pass);
        assert_eq!(status(&run, "lemma-psi-commute-a"), ClaimStatus::Pass);
        assert_eq!(status(&run, "lemma-psi-commute-b"), ClaimStatus::Pass);
        assert_eq!(status(&run, "dagger-action"), ClaimStatus::Pass);
    }

    #[test]
    fn cutless_graph_is_fully_vacuous() {
        let run = run(P3, 2);
        assert_eq!(run.exit_code(), 0);
        for claim in &run.claims {
            assert_eq!(
                claim.status,
                ClaimStatus::Vacuous,
                "{}: {}",
                claim.id,
                claim.detail
            );
        }
    }

    #[test]
    fn verify_json_is_deterministic_modulo_timing() {
        let strip = |mut run: VerifyRun| {
            for c in &mut run.claims {
                c.millis = 0;
            }
            serde_json::to_string(&run).unwrap()
        };
        assert_eq!(strip(run(DOUBLE_CUT, 2)), strip(run(DOUBLE_CUT, 2)));
    }

    #[test]
    fn claim_filter_limits_output() {
        let g = Graph::parse(DOUBLE_CUT).unwrap();
        let p = prepare(g, 2, 1 << 20).unwrap();
        let run = p.run(Some(&["thm-main-order".to_string()]));
        assert_eq!(run.claims.len(), 1);
        assert_eq!(run.claims[0].id, "thm-main-order");
    }

    #[test]
    fn summary_reports_the_expected_numbers() {
        let g = Graph::parse(DOUBLE_CUT).unwrap();
        let p = prepare(g, 2, 1 << 20).unwrap();
        let s = summarize(&p, true);
        assert_eq!(s.schema, 1);
        assert_eq!((s.n, s.k, s.q), (6, 2, 2));
        assert_eq!(s.token_vertices, 15);
        assert_eq!(s.token_edges, 32);
        assert_eq!(s.tuple_total, 4);
        assert_eq!(s.aut_order, Some(8));
        assert_eq!(s.stab_order, Some(2));
        assert_eq!(s.predicted.as_deref(), Some("32"));
        assert_eq!(s.closure, Some(32));
        // C(6,2) = 15 vertices is within the token-oracle ceiling.
        assert!(s.token_aut_order.is_some());
        assert_eq!(s.cuts[0].component_sizes, vec![1, 3]);
        assert_eq!(s.cuts[1].component_sizes, vec![1, 3]);
    }

    #[test]
    fn cutless_summary_still_reports_closure() {
        let g = Graph::parse(P3).unwrap();
        let p = prepare(g, 2, 1 << 20).unwrap();
        let s = summarize(&p, false);
        assert_eq!(s.q, 0);
        assert_eq!(s.aut_order, Some(2));
        assert_eq!(s.stab_order, Some(2));
        assert_eq!(s.predicted.as_deref(), Some("2"));
        // F_2(P_3) ≅ P_3: the induced copy of the base group.
        assert_eq!(s.closure, Some(2));
        assert_eq!(s.token_aut_order, None);
    }
}
