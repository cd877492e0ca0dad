//! Ground truth for small orders: exhaustive catalogs and Kelly counts.

pub mod catalog;
pub mod kelly;

pub use catalog::{
    cached_catalog, consistent_sizes, deck_index, enumerate_graphs, graphs_sharing_cards, DeckIndex, GraphCatalog,
    MAX_CATALOG_ORDER,
};
pub use kelly::{complete_degrees_via_stars, kelly_count, subgraph_count};
