//! Reconstructing the number of edges of a graph from an incomplete deck of
//! vertex-deleted cards.

pub mod adversary;
pub mod cli;
pub mod deck;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod oracle;
pub mod reconstruct;
pub mod rng;

pub use deck::{card_stats, deal, drop_cards, parse_deck, serialize_deck, Card, CardStats, DropStrategy, PartialDeck};
pub use error::{Error, Result};
pub use graph::{canonical_form, gen_graph, CanonicalForm, DegreeSpectrum, Graph, Model};
pub use reconstruct::{reconstruct_size, reconstruct_size_with, Outcome, ReconstructionReport};
