//! Deal a deck, lose some cards and write the deck file.

use deckrecon::{deal, drop_cards, gen_graph, parse_deck, serialize_deck, DropStrategy, Graph, Model};

fn main() -> deckrecon::Result<()> {
    let g = gen_graph(&Model::Gnp(0.4), 9, 21)?;
    let deck = deal(&g)?;
    let edges: Vec<u64> = deck.graphs().map(Graph::edge_count).collect();
    println!("graph: {} edges; card edge counts {:?}", g.edge_count(), edges);
    println!("sum over cards = {} = (n - 2) m", edges.iter().sum::<u64>());

    for strategy in [DropStrategy::Random, DropStrategy::MaxEdges, DropStrategy::MinEdges] {
        let partial = drop_cards(&deck, 2, strategy, 5)?;
        let kept: Vec<u64> = partial.graphs().map(Graph::edge_count).collect();
        println!("{strategy:>9}: kept {kept:?}");
    }

    let partial = drop_cards(&deck, 2, DropStrategy::Random, 5)?;
    let text = serialize_deck(&partial);
    print!("{text}");
    assert_eq!(serialize_deck(&parse_deck(&text)?), text);
    Ok(())
}
