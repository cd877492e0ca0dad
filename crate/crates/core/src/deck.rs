//! Decks of vertex-deleted cards.
//!
//! A [`PartialDeck`] holds the `n - k` cards we were given for a graph of
//! order `n`. Cards are blinded by default: the removed vertex is known only
//! to test code that dealt with [`deal_unblinded`], and it is never written
//! to a deck file.

use crate::error::{Error, Result};
use crate::graph::{canonical_form, graph6, Graph, MAX_CANON_ORDER};
use crate::rng;
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Card {
    pub graph: Graph,
    /// Removed vertex, present only for unblinded test decks.
    pub provenance: Option<usize>,
}

impl Card {
    pub fn blind(graph: Graph) -> Self {
        Card { graph, provenance: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialDeck {
    original_order: usize,
    cards: Vec<Card>,
}

impl PartialDeck {
    pub fn new(original_order: usize, cards: Vec<Card>) -> Result<Self> {
        if cards.is_empty() || cards.len() > original_order {
            return Err(Error::InvalidParameter(format!(
                "a deck of a graph of order {original_order} holds 1..={original_order} cards, got {}",
                cards.len()
            )));
        }
        if let Some(bad) = cards.iter().find(|c| c.graph.order() + 1 != original_order) {
            return Err(Error::InvalidParameter(format!(
                "card of order {} in a deck for order {original_order}",
                bad.graph.order()
            )));
        }
        Ok(PartialDeck { original_order, cards })
    }

    pub fn from_graphs(original_order: usize, graphs: Vec<Graph>) -> Result<Self> {
        PartialDeck::new(original_order, graphs.into_iter().map(Card::blind).collect())
    }

    pub fn original_order(&self) -> usize {
        self.original_order
    }

    pub fn cards(&self) -> &[Card] {
        &self.cards
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    /// Number of missing cards.
    pub fn missing(&self) -> usize {
        self.original_order - self.cards.len()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.cards.iter().map(|c| &c.graph)
    }

    /// Drops provenance from every card.
    pub fn blinded(mut self) -> Self {
        for c in &mut self.cards {
            c.provenance = None;
        }
        self
    }

    /// Blinds and shuffles the cards.
    pub fn shuffled(mut self, seed: u64) -> Self {
        let mut r = rng::seeded(seed);
        rng::shuffle(&mut r, &mut self.cards);
        self.blinded()
    }
}

fn deal_cards(g: &Graph, keep_provenance: bool) -> Result<PartialDeck> {
    let n = g.order();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("cannot deal a graph of order {n}")));
    }
    let cards = (0..n)
        .map(|v| {
            Ok(Card { graph: g.card(v)?, provenance: keep_provenance.then_some(v) })
        })
        .collect::<Result<Vec<_>>>()?;
    PartialDeck::new(n, cards)
}

/// The full deck, cards in vertex order, blinded.
pub fn deal(g: &Graph) -> Result<PartialDeck> {
    deal_cards(g, false)
}

/// The full deck with each card tagged by its removed vertex.
pub fn deal_unblinded(g: &Graph) -> Result<PartialDeck> {
    deal_cards(g, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DropStrategy {
    Random,
    First,
    MaxEdges,
    MinEdges,
}

impl FromStr for DropStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(DropStrategy::Random),
            "first" => Ok(DropStrategy::First),
            "max_edges" => Ok(DropStrategy::MaxEdges),
            "min_edges" => Ok(DropStrategy::MinEdges),
            _ => Err(Error::InvalidParameter(format!(
                "drop strategy `{s}`: expected random, first, max_edges or min_edges"
            ))),
        }
    }
}

impl std::fmt::Display for DropStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DropStrategy::Random => "random",
            DropStrategy::First => "first",
            DropStrategy::MaxEdges => "max_edges",
            DropStrategy::MinEdges => "min_edges",
        })
    }
}

/// Removes `k` cards. The extreme-edge strategies break ties by card index;
/// surviving cards keep their relative order.
pub fn drop_cards(deck: &PartialDeck, k: usize, strategy: DropStrategy, seed: u64) -> Result<PartialDeck> {
    let len = deck.len();
    if k + 1 > len {
        return Err(Error::TooManyDropped { k, len });
    }
    let edges: Vec<u64> = deck.graphs().map(Graph::edge_count).collect();
    let dropped: Vec<usize> = match strategy {
        DropStrategy::First => (0..k).collect(),
        DropStrategy::Random => rng::sample_indices(&mut rng::seeded(seed), len, k),
        DropStrategy::MaxEdges => {
            let mut idx: Vec<usize> = (0..len).collect();
            idx.sort_by_key(|&i| (std::cmp::Reverse(edges[i]), i));
            idx.truncate(k);
            idx
        }
        DropStrategy::MinEdges => {
            let mut idx: Vec<usize> = (0..len).collect();
            idx.sort_by_key(|&i| (edges[i], i));
            idx.truncate(k);
            idx
        }
    };
    let mut gone = vec![false; len];
    for i in dropped {
        gone[i] = true;
    }
    let cards = deck.cards.iter().zip(&gone).filter(|(_, &g)| !g).map(|(c, _)| c.clone()).collect();
    PartialDeck::new(deck.original_order, cards)
}

/// Edge count and degree spectrum of one card: everything the size
/// reconstruction reads from a card.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardProfile {
    pub edges: u64,
    /// `spectrum[t]` = vertices of degree `t` on the card, `t` in `0..n-1`.
    pub spectrum: Vec<u64>,
}

impl CardProfile {
    pub fn of(card: &Graph) -> Self {
        let spectrum = card.degree_spectrum().counts().to_vec();
        let edges = spectrum.iter().enumerate().map(|(t, &c)| t as u64 * c).sum::<u64>() / 2;
        CardProfile { edges, spectrum }
    }
}

pub fn profiles(deck: &PartialDeck) -> Vec<CardProfile> {
    deck.graphs().map(CardProfile::of).collect()
}

/// Aggregate statistics of the given cards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardStats {
    pub n: usize,
    pub k: usize,
    pub per_card_edges: Vec<u64>,
    /// `s_t`: vertices of degree `t` summed over the cards, `t` in `0..n`.
    pub degree_seen: Vec<u64>,
    /// `max_i d_t(G_i)`, `t` in `0..n`.
    pub degree_max: Vec<u64>,
}

impl CardStats {
    pub fn from_profiles(n: usize, profiles: &[CardProfile]) -> Result<Self> {
        if profiles.is_empty() || profiles.len() > n {
            return Err(Error::InvalidParameter(format!("{} cards for order {n}", profiles.len())));
        }
        let mut degree_seen = vec![0u64; n];
        let mut degree_max = vec![0u64; n];
        for p in profiles {
            if p.spectrum.len() + 1 != n {
                return Err(Error::InvalidParameter(format!(
                    "card profile of order {} for order {n}",
                    p.spectrum.len()
                )));
            }
            for (t, &c) in p.spectrum.iter().enumerate() {
                degree_seen[t] += c;
                degree_max[t] = degree_max[t].max(c);
            }
        }
        Ok(CardStats {
            n,
            k: n - profiles.len(),
            per_card_edges: profiles.iter().map(|p| p.edges).collect(),
            degree_seen,
            degree_max,
        })
    }

    pub fn card_count(&self) -> usize {
        self.per_card_edges.len()
    }

    pub fn edge_sum(&self) -> u64 {
        self.per_card_edges.iter().sum()
    }

    /// Statistics of the complemented cards `complement(G_i) = complement(G) - v_i`.
    /// A vertex of degree `x` on a card has degree `n - 2 - x` on its complement.
    pub fn complemented(&self) -> CardStats {
        let n = self.n;
        let reflect = |v: &[u64]| -> Vec<u64> {
            (0..n).map(|j| if j + 2 <= n { v[n - 2 - j] } else { 0 }).collect()
        };
        let card_pairs = crate::graph::pair_count(n - 1) as u64;
        CardStats {
            n,
            k: self.k,
            per_card_edges: self.per_card_edges.iter().map(|&e| card_pairs - e).collect(),
            degree_seen: reflect(&self.degree_seen),
            degree_max: reflect(&self.degree_max),
        }
    }
}

pub fn card_stats(deck: &PartialDeck) -> CardStats {
    CardStats::from_profiles(deck.original_order(), &profiles(deck)).expect("deck invariants hold")
}

/// Canonical sort key used for deck files; `None` past the canonical range.
fn file_order(deck_cards: &[Graph]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..deck_cards.len()).collect();
    if deck_cards.first().is_some_and(|g| g.order() <= MAX_CANON_ORDER) {
        let keys: Vec<_> = deck_cards.iter().map(|g| canonical_form(g).expect("within range")).collect();
        idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
    }
    idx
}

fn write_cards(out: &mut String, cards: &[Graph]) {
    for i in file_order(cards) {
        out.push_str(&graph6::encode(&cards[i]));
        out.push('\n');
    }
}

/// Deck file: `DECK n=<n> cards=<c>` then one graph6 line per card. Cards are
/// sorted by canonical form while their order is at most 64, so the file
/// carries no trace of which vertex each card came from.
pub fn serialize_deck(deck: &PartialDeck) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "DECK n={} cards={}", deck.original_order(), deck.len());
    let graphs: Vec<Graph> = deck.graphs().cloned().collect();
    write_cards(&mut out, &graphs);
    out
}

pub(crate) fn parse_header(line: &str, tag: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let err = |msg: String| Error::Parse { line: 1, msg };
    let mut words = line.split(' ');
    if words.next() != Some(tag) {
        return Err(err(format!("expected header starting with `{tag}`")));
    }
    let mut values = Vec::with_capacity(keys.len());
    for key in keys {
        let word = words.next().ok_or_else(|| err(format!("missing `{key}=`")))?;
        let value = word
            .strip_prefix(key)
            .and_then(|w| w.strip_prefix('='))
            .ok_or_else(|| err(format!("expected `{key}=<int>`, found `{word}`")))?;
        values.push(value.parse().map_err(|_| err(format!("`{key}` is not a non-negative integer")))?);
    }
    if words.next().is_some() {
        return Err(err("trailing fields in header".into()));
    }
    Ok(values)
}

pub(crate) fn parse_cards<'a>(lines: impl Iterator<Item = &'a str>, n: usize, count: usize) -> Result<Vec<Graph>> {
    let mut cards = Vec::with_capacity(count);
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let g = graph6::decode(line).map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })?;
        if g.order() + 1 != n {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("card order {} inconsistent with n = {n}", g.order()),
            });
        }
        cards.push(g);
    }
    if cards.len() != count {
        return Err(Error::Parse { line: 1, msg: format!("header promises {count} cards, found {}", cards.len()) });
    }
    Ok(cards)
}

pub fn parse_deck(text: &str) -> Result<PartialDeck> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let v = parse_header(header, "DECK", &["n", "cards"])?;
    let (n, count) = (v[0], v[1]);
    if count == 0 || count > n {
        return Err(Error::Parse { line: 1, msg: format!("cards = {count} outside 1..={n}") });
    }
    let cards = parse_cards(lines, n, count)?;
    PartialDeck::from_graphs(n, cards)
}

pub(crate) fn serialize_cards_with_header(header: &str, cards: &[Graph]) -> String {
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    write_cards(&mut out, cards);
    out
}
