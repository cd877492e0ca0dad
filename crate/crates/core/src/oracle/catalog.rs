//! All graphs of small order up to isomorphism.

use crate::deck::PartialDeck;
use crate::error::{Error, Result};
use crate::graph::{canonical_form, graph6, CanonicalForm, Graph};
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};
use std::path::Path;
use std::sync::OnceLock;

pub const MAX_CATALOG_ORDER: usize = 8;

/// One representative per isomorphism class, sorted by canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCatalog {
    order: usize,
    forms: Vec<CanonicalForm>,
    graphs: Vec<Graph>,
}

impl GraphCatalog {
    fn from_forms(order: usize, forms: Vec<CanonicalForm>) -> Self {
        let graphs = forms.iter().map(CanonicalForm::to_graph).collect();
        GraphCatalog { order, forms, graphs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn forms(&self) -> &[CanonicalForm] {
        &self.forms
    }

    /// Position of the class of `g`.
    pub fn class_of(&self, g: &Graph) -> Result<usize> {
        let form = canonical_form(g)?;
        self.forms
            .binary_search(&form)
            .map_err(|_| Error::InvalidParameter(format!("graph of order {} not in catalog", g.order())))
    }

    /// One graph6 line per class.
    pub fn to_text(&self) -> String {
        self.forms.iter().flat_map(|f| [f.as_graph6(), "\n"]).collect()
    }

    pub fn from_text(order: usize, text: &str) -> Result<Self> {
        let mut forms = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let g = graph6::decode(line).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
            if g.order() != order {
                return Err(Error::Parse { line: i + 1, msg: format!("order {} in catalog of order {order}", g.order()) });
            }
            forms.push(canonical_form(&g)?);
        }
        forms.sort_unstable();
        forms.dedup();
        Ok(GraphCatalog::from_forms(order, forms))
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_CATALOG_ORDER {
        return Err(Error::Unsupported { what: "graph enumeration", order: n, limit: MAX_CATALOG_ORDER });
    }
    Ok(())
}

/// Every graph on `n` vertices arises from one on `n - 1` by adding a vertex,
/// so the classes of order `n` are the canonical forms of all one-vertex
/// extensions of the previous catalog.
fn build(n: usize) -> Result<GraphCatalog> {
    if n <= 1 {
        let form = canonical_form(&Graph::empty(n))?;
        return Ok(GraphCatalog::from_forms(n, vec![form]));
    }
    let parent = enumerate_graphs(n - 1)?;
    let forms: BTreeSet<CanonicalForm> = parent
        .graphs()
        .par_iter()
        .map(|g| {
            let edges = g.edges();
            (0u32..1 << (n - 1))
                .map(|mask| {
                    let mut h = Graph::empty(n);
                    for &(u, v) in &edges {
                        h.set_edge(u, v, true);
                    }
                    for u in 0..n - 1 {
                        if mask >> u & 1 == 1 {
                            h.set_edge(u, n - 1, true);
                        }
                    }
                    canonical_form(&h).expect("order within canonical range")
                })
                .collect::<BTreeSet<_>>()
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(GraphCatalog::from_forms(n, forms.into_iter().collect()))
}

/// The catalog of order `n <= 8`, built once per process.
pub fn enumerate_graphs(n: usize) -> Result<&'static GraphCatalog> {
    check_order(n)?;
    static CACHE: [OnceLock<GraphCatalog>; MAX_CATALOG_ORDER + 1] = [const { OnceLock::new() }; MAX_CATALOG_ORDER + 1];
    if let Some(c) = CACHE[n].get() {
        return Ok(c);
    }
    let built = build(n)?;
    Ok(CACHE[n].get_or_init(|| built))
}

/// Reads `dir/graphs<n>.g6`, writing it first if absent.
pub fn cached_catalog(n: usize, dir: &Path) -> Result<GraphCatalog> {
    check_order(n)?;
    let path = dir.join(format!("graphs{n}.g6"));
    if path.exists() {
        return GraphCatalog::from_text(n, &std::fs::read_to_string(&path)?);
    }
    let cat = enumerate_graphs(n)?.clone();
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, cat.to_text())?;
    Ok(cat)
}

/// For each graph of a catalog, its deck as sorted card class ids.
#[derive(Debug)]
pub struct DeckIndex {
    pub order: usize,
    pub decks: Vec<Vec<u32>>,
}

/// The deck index of order `2 <= n <= 8`, built once per process.
pub fn deck_index(n: usize) -> Result<&'static DeckIndex> {
    check_order(n)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("decks need order at least 2, got {n}")));
    }
    static CACHE: [OnceLock<DeckIndex>; MAX_CATALOG_ORDER + 1] = [const { OnceLock::new() }; MAX_CATALOG_ORDER + 1];
    if let Some(d) = CACHE[n].get() {
        return Ok(d);
    }
    let cards = enumerate_graphs(n - 1)?;
    let lookup: HashMap<&CanonicalForm, u32> = cards.forms().iter().enumerate().map(|(i, f)| (f, i as u32)).collect();
    let decks = enumerate_graphs(n)?
        .graphs()
        .par_iter()
        .map(|g| {
            let mut ids: Vec<u32> = (0..n)
                .map(|v| lookup[&canonical_form(&g.card(v).expect("vertex in range")).expect("small order")])
                .collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    Ok(CACHE[n].get_or_init(|| DeckIndex { order: n, decks }))
}

/// Size of the multiset intersection of two sorted sequences.
pub(crate) fn sorted_overlap<T: Ord>(a: &[T], b: &[T]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    common
}

/// Sorted class ids of `cards`, all of order `n - 1`.
pub(crate) fn card_classes<'a>(n: usize, cards: impl Iterator<Item = &'a Graph>) -> Result<Vec<u32>> {
    let cat = enumerate_graphs(n - 1)?;
    let mut ids = cards.map(|c| cat.class_of(c).map(|i| i as u32)).collect::<Result<Vec<_>>>()?;
    ids.sort_unstable();
    Ok(ids)
}

/// Graphs of order `n` sharing at least `min_common` cards with `cards`.
pub fn graphs_sharing_cards<'a>(n: usize, cards: impl Iterator<Item = &'a Graph>, min_common: usize) -> Result<Vec<&'static Graph>> {
    let given = card_classes(n, cards)?;
    let index = deck_index(n)?;
    let cat = enumerate_graphs(n)?;
    Ok(index
        .decks
        .iter()
        .zip(cat.graphs())
        .filter(|(deck, _)| sorted_overlap(deck, &given) >= min_common)
        .map(|(_, g)| g)
        .collect())
}

pub const CONSISTENT_MAX_MISSING: usize = 2;

/// Edge counts of every graph whose deck contains the given cards.
pub fn consistent_sizes(deck: &PartialDeck) -> Result<BTreeSet<u64>> {
    let n = deck.original_order();
    if deck.missing() > CONSISTENT_MAX_MISSING {
        return Err(Error::InvalidParameter(format!(
            "consistent sizes supports at most {CONSISTENT_MAX_MISSING} missing cards, got {}",
            deck.missing()
        )));
    }
    Ok(graphs_sharing_cards(n, deck.graphs(), deck.len())?.into_iter().map(Graph::edge_count).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::{deal, drop_cards, DropStrategy};

    #[test]
    fn small_catalog_sizes() {
        let sizes: Vec<usize> = (0..=5).map(|n| enumerate_graphs(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 4, 11, 34]);
        assert!(enumerate_graphs(9).is_err());
    }

    #[test]
    fn three_k2_cards_force_a_triangle() {
        let d = PartialDeck::from_graphs(3, vec![Graph::complete(2); 3]).unwrap();
        assert_eq!(consistent_sizes(&d).unwrap(), BTreeSet::from([3]));
    }

    #[test]
    fn own_size_is_consistent() {
        let g = Graph::path(5);
        let full = deal(&g).unwrap();
        assert!(consistent_sizes(&full).unwrap().contains(&4));
        let d = drop_cards(&full, 1, DropStrategy::First, 0).unwrap();
        assert!(consistent_sizes(&d).unwrap().contains(&4));
    }

    #[test]
    fn text_round_trip_and_cache() {
        let cat = enumerate_graphs(4).unwrap();
        assert_eq!(&GraphCatalog::from_text(4, &cat.to_text()).unwrap(), cat);
        let dir = tempfile::tempdir().unwrap();
        let first = cached_catalog(4, dir.path()).unwrap();
        assert!(dir.path().join("graphs4.g6").exists());
        assert_eq!(&cached_catalog(4, dir.path()).unwrap(), cat);
        assert_eq!(&first, cat);
    }

    #[test]
    fn overlap_counts_multiplicity() {
        assert_eq!(sorted_overlap(&[1, 1, 2, 5], &[1, 2, 2, 5, 5]), 3);
        assert_eq!(sorted_overlap::<u32>(&[], &[1]), 0);
    }
}
