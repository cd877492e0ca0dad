//! Collections with false cards, and the clique-union pairs that share many cards.
//!
//! A [`MixedCollection`] holds `n` cards of which `k_false` are arbitrary
//! graphs of order `n - 1`. Any two graphs consistent with it share at least
//! `n - 2 k_false` cards, which is what [`solve_mixed`] exploits: small orders
//! are settled by checking every graph, larger ones by running the partial
//! deck pipeline on many subsets of `n - 2 k_false` cards.

use crate::deck::{deal, parse_cards, parse_header, serialize_cards_with_header, CardProfile, PartialDeck};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, generate, pair_count, Graph};
use crate::oracle::{self, catalog::sorted_overlap};
use crate::reconstruct::pipeline::{elapsed_ms, reconstruct_profiles, Diagnostics, ReconstructionReport, Route};
use crate::reconstruct::ParamOverrides;
use crate::rng::{self, SeededRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCollection {
    n: usize,
    cards: Vec<Graph>,
    k_false: usize,
}

impl MixedCollection {
    pub fn new(n: usize, cards: Vec<Graph>, k_false: usize) -> Result<Self> {
        if cards.len() != n {
            return Err(Error::InvalidParameter(format!("collection needs {n} cards, got {}", cards.len())));
        }
        if let Some(c) = cards.iter().find(|c| c.order() + 1 != n) {
            return Err(Error::InvalidParameter(format!("card of order {} for n = {n}", c.order())));
        }
        if k_false > n {
            return Err(Error::InvalidParameter(format!("k_false = {k_false} exceeds n = {n}")));
        }
        Ok(MixedCollection { n, cards, k_false })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cards(&self) -> &[Graph] {
        &self.cards
    }

    pub fn k_false(&self) -> usize {
        self.k_false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForgeStrategy {
    /// Each false card is `G(n-1, 1/2)`.
    RandomGnp,
    /// A true card with one pair toggled.
    PerturbTrue,
    /// A true card with `n - 2` edges added or removed, so the collection's
    /// edge total matches a graph with one more or one fewer edge per false card.
    SizeDecoy,
}

impl FromStr for ForgeStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random_gnp" => Ok(ForgeStrategy::RandomGnp),
            "perturb_true" => Ok(ForgeStrategy::PerturbTrue),
            "size_decoy" => Ok(ForgeStrategy::SizeDecoy),
            _ => Err(Error::InvalidParameter(format!(
                "forgery `{s}`: expected random_gnp, perturb_true or size_decoy"
            ))),
        }
    }
}

impl fmt::Display for ForgeStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForgeStrategy::RandomGnp => "random_gnp",
            ForgeStrategy::PerturbTrue => "perturb_true",
            ForgeStrategy::SizeDecoy => "size_decoy",
        })
    }
}

/// What the solver must not see: which positions hold false cards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForgeryTruth {
    pub false_positions: Vec<usize>,
    pub m_true: u64,
}

fn random_pair(rng: &mut SeededRng, order: usize) -> (usize, usize) {
    let u = rng::below(rng, order);
    let mut v = rng::below(rng, order - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}

/// Moves the edge count of `card` to `target`: removes random edges or adds
/// random non-edges.
fn retarget_edges(card: &mut Graph, target: u64, rng: &mut SeededRng) {
    let mut count = card.edge_count();
    if count > target {
        let mut edges = card.edges();
        rng::shuffle(rng, &mut edges);
        for &(u, v) in &edges[..(count - target) as usize] {
            card.set_edge(u, v, false);
        }
        return;
    }
    while count < target {
        let (u, v) = random_pair(rng, card.order());
        if !card.has_edge(u, v) {
            card.set_edge(u, v, true);
            count += 1;
        }
    }
}

/// `n - k` true cards of `g` and `k` forged ones, shuffled.
pub fn forge_collection(g: &Graph, k: usize, strategy: ForgeStrategy, seed: u64) -> Result<(MixedCollection, ForgeryTruth)> {
    let n = g.order();
    if k > n {
        return Err(Error::InvalidParameter(format!("cannot forge {k} of {n} cards")));
    }
    if strategy != ForgeStrategy::RandomGnp && k > 0 && n < 3 {
        return Err(Error::InvalidParameter(format!("{strategy} needs cards with at least two vertices")));
    }
    let mut rng = rng::seeded(seed);
    let deck = deal(g)?;
    let all: Vec<&Graph> = deck.graphs().collect();
    let dropped = rng::sample_indices(&mut rng, n, k);
    let dropped_set: BTreeSet<usize> = dropped.iter().copied().collect();
    let mut cards: Vec<(Graph, bool)> =
        (0..n).filter(|i| !dropped_set.contains(i)).map(|i| (all[i].clone(), false)).collect();
    let decoy_sign_up = rng::below(&mut rng, 2) == 0;
    for &i in &dropped {
        let forged = match strategy {
            ForgeStrategy::RandomGnp => generate::gnp(n - 1, 0.5, &mut rng),
            ForgeStrategy::PerturbTrue => {
                let mut c = all[rng::below(&mut rng, n)].clone();
                let (u, v) = random_pair(&mut rng, n - 1);
                c.toggle_edge(u, v);
                c
            }
            ForgeStrategy::SizeDecoy => {
                let mut c = all[i].clone();
                let max = pair_count(n - 1) as u64;
                let e = c.edge_count();
                let shift = n as u64 - 2;
                let target = if decoy_sign_up { (e + shift).min(max) } else { e.saturating_sub(shift) };
                retarget_edges(&mut c, target, &mut rng);
                c
            }
        };
        cards.push((forged, true));
    }
    rng::shuffle(&mut rng, &mut cards);
    let false_positions = cards.iter().enumerate().filter(|(_, (_, f))| *f).map(|(i, _)| i).collect();
    let collection = MixedCollection::new(n, cards.into_iter().map(|(c, _)| c).collect(), k)?;
    Ok((collection, ForgeryTruth { false_positions, m_true: g.edge_count() }))
}

/// Largest order settled by checking every graph.
pub const EXHAUSTIVE_MAX_ORDER: usize = oracle::MAX_CATALOG_ORDER;
pub const EXHAUSTIVE_MAX_FALSE: usize = 2;
/// Subset attempts in the heuristic mode.
pub const HEURISTIC_ATTEMPTS: usize = 50;
const HEURISTIC_SEED: u64 = 0x5eed_cafe;

pub fn solve_mixed(c: &MixedCollection) -> ReconstructionReport {
    solve_mixed_with(c, &ParamOverrides::default())
}

pub fn solve_mixed_with(c: &MixedCollection, overrides: &ParamOverrides) -> ReconstructionReport {
    let start = Instant::now();
    let (n, kf) = (c.n, c.k_false);
    let mut report = if kf == 0 {
        match PartialDeck::from_graphs(n, c.cards.clone()) {
            Ok(deck) => crate::reconstruct::reconstruct_size_with(&deck, overrides),
            Err(e) => ReconstructionReport::failed("input", e.to_string(), Diagnostics::default()),
        }
    } else if n < 2 * kf + 3 {
        let detail = format!("n = {n} leaves fewer than one usable card after excluding 2 k_false = {}", 2 * kf);
        ReconstructionReport::failed("input", detail, Diagnostics::default())
    } else if n <= EXHAUSTIVE_MAX_ORDER && kf <= EXHAUSTIVE_MAX_FALSE {
        solve_exhaustive(c)
    } else {
        solve_heuristic(c, overrides)
    };
    report.diagnostics.elapsed_ms = elapsed_ms(start);
    report
}

fn solve_exhaustive(c: &MixedCollection) -> ReconstructionReport {
    let mut diag = Diagnostics { route: Some(Route::Exhaustive), ..Diagnostics::default() };
    let survivors = match oracle::graphs_sharing_cards(c.n, c.cards.iter(), c.n - c.k_false) {
        Ok(s) => s,
        Err(e) => return ReconstructionReport::failed("exhaustive", e.to_string(), diag),
    };
    let sizes: BTreeSet<u64> = survivors.iter().map(|g| g.edge_count()).collect();
    let mut iter = sizes.iter();
    match (iter.next(), iter.next()) {
        (Some(&m), None) => ReconstructionReport::exact(m, diag),
        (None, _) => ReconstructionReport::failed(
            "exhaustive",
            format!("no graph on {} vertices shares {} cards with the collection", c.n, c.n - c.k_false),
            diag,
        ),
        _ => {
            diag.route = None;
            ReconstructionReport::ambiguous("exhaustive", format!("consistent sizes {sizes:?}"), diag)
        }
    }
}

/// Card positions ordered from the most to the least unusual edge count.
fn outlier_ranking(profiles: &[CardProfile]) -> Vec<usize> {
    let mut edges: Vec<u64> = profiles.iter().map(|p| p.edges).collect();
    edges.sort_unstable();
    let median = edges[edges.len() / 2];
    let mut order: Vec<usize> = (0..profiles.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(profiles[i].edges.abs_diff(median)), i));
    order
}

/// Positions to leave out in attempt `attempt`: the most unusual cards first,
/// then random picks weighted towards unusual ones.
fn excluded(ranking: &[usize], count: usize, attempt: usize) -> Vec<usize> {
    if attempt == 0 {
        return ranking[..count].to_vec();
    }
    let mut rng = rng::seeded(rng::split_seed(HEURISTIC_SEED, attempt as u64));
    let len = ranking.len();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rank = rng::below(&mut rng, len).min(rng::below(&mut rng, len));
        if !out.contains(&ranking[rank]) {
            out.push(ranking[rank]);
        }
    }
    out
}

fn solve_heuristic(c: &MixedCollection, overrides: &ParamOverrides) -> ReconstructionReport {
    let n = c.n;
    let kf = c.k_false;
    let profiles: Vec<CardProfile> = c.cards.iter().map(CardProfile::of).collect();
    let ranking = outlier_ranking(&profiles);
    // A true m puts m - e(card) in 0..n for every true card.
    let plausible = |m: u64| profiles.iter().filter(|p| m.checked_sub(p.edges).is_some_and(|d| d < n as u64)).count() >= n - kf;
    let answers: Vec<Option<u64>> = (0..HEURISTIC_ATTEMPTS)
        .into_par_iter()
        .map(|attempt| {
            let skip = excluded(&ranking, 2 * kf, attempt);
            let subset: Vec<CardProfile> =
                (0..n).filter(|i| !skip.contains(i)).map(|i| profiles[i].clone()).collect();
            reconstruct_profiles(n, &subset, overrides).exact_size().filter(|&m| plausible(m))
        })
        .collect();
    let found: BTreeSet<u64> = answers.iter().flatten().copied().collect();
    let successes = answers.iter().flatten().count();
    let diag = Diagnostics { heuristic: true, ..Diagnostics::default() };
    let mut iter = found.iter();
    match (iter.next(), iter.next()) {
        (Some(&m), None) => {
            log::info!("{successes} of {HEURISTIC_ATTEMPTS} subsets certified m = {m}");
            ReconstructionReport::exact(m, Diagnostics { route: Some(Route::Subsets), ..diag })
        }
        (None, _) => ReconstructionReport::ambiguous(
            "no-consistent-subset",
            format!("none of {HEURISTIC_ATTEMPTS} subsets of {} cards certified a size", n - 2 * kf),
            diag,
        ),
        _ => ReconstructionReport::ambiguous("subsets-disagree", format!("subsets certified sizes {found:?}"), diag),
    }
}

/// Size of the multiset intersection of two card lists under isomorphism.
pub fn common_cards(a: &[Graph], b: &[Graph]) -> Result<usize> {
    let forms = |cards: &[Graph]| -> Result<Vec<_>> {
        let mut f = cards.iter().map(canonical_form).collect::<Result<Vec<_>>>()?;
        f.sort_unstable();
        Ok(f)
    };
    Ok(sorted_overlap(&forms(a)?, &forms(b)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbfPair {
    pub p: usize,
    pub n: usize,
    /// `2 K_{p+1} + K_{p-1}`.
    pub g: Graph,
    /// `K_{p+1} + 2 K_p`.
    pub h: Graph,
    pub edges_g: u64,
    pub edges_h: u64,
    pub common: usize,
}

/// Two graphs on `3p + 1` vertices with different sizes and at least `2p`
/// common cards: deleting a vertex from a `K_{p+1}` of `G` or from a `K_p`
/// of `H` leaves `K_{p+1} + K_p + K_{p-1}` either way.
pub fn bbf_pair(p: usize) -> Result<BbfPair> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("p = {p} must be at least 2")));
    }
    let g = Graph::clique_union(&[p + 1, p + 1, p - 1]);
    let h = Graph::clique_union(&[p + 1, p, p]);
    let dg: Vec<Graph> = deal(&g)?.graphs().cloned().collect();
    let dh: Vec<Graph> = deal(&h)?.graphs().cloned().collect();
    let common = common_cards(&dg, &dh)?;
    Ok(BbfPair { p, n: 3 * p + 1, edges_g: g.edge_count(), edges_h: h.edge_count(), g, h, common })
}

/// Collection file: `MIXED n=<n> cards=<n> kfalse=<k>` then one graph6 line per card.
pub fn serialize_mixed(c: &MixedCollection) -> String {
    serialize_cards_with_header(&format!("MIXED n={} cards={} kfalse={}", c.n, c.cards.len(), c.k_false), &c.cards)
}

pub fn parse_mixed(text: &str) -> Result<MixedCollection> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let v = parse_header(header, "MIXED", &["n", "cards", "kfalse"])?;
    let (n, count, k_false) = (v[0], v[1], v[2]);
    if count != n {
        return Err(Error::Parse { line: 1, msg: format!("a collection holds n = {n} cards, header says {count}") });
    }
    MixedCollection::new(n, parse_cards(lines, n, count)?, k_false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_graph, Model};
    use crate::reconstruct::reconstruct_size;

    #[test]
    fn no_forgery_is_a_shuffled_deck() {
        let g = Graph::path(6);
        let (c, truth) = forge_collection(&g, 0, ForgeStrategy::RandomGnp, 1).unwrap();
        assert!(truth.false_positions.is_empty());
        let dealt: Vec<Graph> = deal(&g).unwrap().graphs().cloned().collect();
        assert_eq!(common_cards(c.cards(), &dealt).unwrap(), 6);
        assert_eq!(solve_mixed(&c).exact_size(), Some(5));
        let direct = reconstruct_size(&PartialDeck::from_graphs(6, dealt).unwrap());
        assert_eq!(direct.exact_size(), Some(5));
    }

    #[test]
    fn perturbed_card_is_one_edit_away() {
        let g = Graph::path(4);
        let dealt: Vec<Graph> = deal(&g).unwrap().graphs().cloned().collect();
        for seed in 0..20 {
            let (c, truth) = forge_collection(&g, 1, ForgeStrategy::PerturbTrue, seed).unwrap();
            let forged = &c.cards()[truth.false_positions[0]];
            let close = dealt.iter().any(|t| {
                let diff = (0..3).flat_map(|j| (0..j).map(move |i| (i, j))).filter(|&(i, j)| t.has_edge(i, j) != forged.has_edge(i, j)).count();
                diff == 1
            });
            assert!(close, "seed {seed}");
            let true_cards: Vec<Graph> =
                (0..4).filter(|i| !truth.false_positions.contains(i)).map(|i| c.cards()[i].clone()).collect();
            assert_eq!(common_cards(&true_cards, &dealt).unwrap(), 3);
        }
    }

    #[test]
    fn size_decoy_shifts_total_by_n_minus_2() {
        let g = gen_graph(&Model::Gnp(0.5), 12, 4).unwrap();
        let dealt: u64 = deal(&g).unwrap().graphs().map(Graph::edge_count).sum();
        for seed in 0..10 {
            let (c, _) = forge_collection(&g, 1, ForgeStrategy::SizeDecoy, seed).unwrap();
            let total: u64 = c.cards().iter().map(Graph::edge_count).sum();
            assert_eq!(total.abs_diff(dealt), 10);
        }
    }

    #[test]
    fn exhaustive_mode_returns_true_size() {
        for seed in 0..10 {
            let g = gen_graph(&Model::Gnp(0.5), 7, seed).unwrap();
            let (c, truth) = forge_collection(&g, 1, ForgeStrategy::RandomGnp, seed).unwrap();
            let r = solve_mixed(&c);
            if let Some(m) = r.exact_size() {
                assert_eq!(m, truth.m_true);
            }
        }
    }

    #[test]
    fn bbf_small_cases() {
        let b = bbf_pair(3).unwrap();
        assert_eq!((b.n, b.edges_g, b.edges_h), (10, 13, 12));
        assert!(b.common >= 6);
        assert!(bbf_pair(1).is_err());
    }

    #[test]
    fn common_cards_of_k4_and_c4() {
        let a: Vec<Graph> = deal(&Graph::complete(4)).unwrap().graphs().cloned().collect();
        let b: Vec<Graph> = deal(&Graph::cycle(4)).unwrap().graphs().cloned().collect();
        assert_eq!(common_cards(&a, &b).unwrap(), 0);
    }

    #[test]
    fn mixed_file_round_trip() {
        let g = gen_graph(&Model::Gnp(0.4), 9, 2).unwrap();
        let (c, _) = forge_collection(&g, 2, ForgeStrategy::RandomGnp, 3).unwrap();
        let back = parse_mixed(&serialize_mixed(&c)).unwrap();
        assert_eq!(back.k_false(), 2);
        assert_eq!(common_cards(back.cards(), c.cards()).unwrap(), 9);
        assert!(parse_mixed("MIXED n=3 cards=2 kfalse=0\nA_\nA_\n").is_err());
    }
}
