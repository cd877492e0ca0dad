//! Edge count of a cubic graph from all but one of its cards.

use deckrecon::{deal, drop_cards, gen_graph, reconstruct_size, DropStrategy, Model};

fn main() -> deckrecon::Result<()> {
    let n = 1000;
    let g = gen_graph(&Model::Regular(3), n, 7)?;
    let deck = drop_cards(&deal(&g)?, 1, DropStrategy::Random, 1)?;
    let report = reconstruct_size(&deck);
    println!("{}", report.to_json());
    println!("true m = {}, reported {:?}", g.edge_count(), report.exact_size());

    // A dense graph: the complement with one pair flipped.
    let mut dense = g.complement();
    dense.set_edge(0, 1, !dense.has_edge(0, 1));
    let report = reconstruct_size(&drop_cards(&deal(&dense)?, 1, DropStrategy::First, 0)?);
    println!("near-complete graph: true m = {}, reported {:?}", dense.edge_count(), report.exact_size());
    Ok(())
}
