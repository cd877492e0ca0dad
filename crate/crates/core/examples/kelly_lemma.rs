//! Small subgraph counts read off a full deck, and hidden degrees from star counts.

use deckrecon::oracle::{complete_degrees_via_stars, kelly_count, subgraph_count};
use deckrecon::{deal, gen_graph, Graph, Model};

fn main() -> deckrecon::Result<()> {
    let g = gen_graph(&Model::Gnp(0.5), 10, 17)?;
    let deck = deal(&g)?;
    for (name, h) in [("K2", Graph::complete(2)), ("P3", Graph::path(3)), ("K3", Graph::complete(3)), ("K1,3", Graph::star(4)), ("C4", Graph::cycle(4))] {
        println!("{name:>5}: from deck {:>4}, direct {:>4}", kelly_count(&deck, &h)?, subgraph_count(&g, &h)?);
    }

    let mut degrees = g.degrees();
    let hidden: Vec<usize> = degrees.drain(..2).collect();
    let all = complete_degrees_via_stars(&deck, &degrees, g.edge_count())?;
    println!("hid degrees {hidden:?}; completed sequence {all:?}");
    Ok(())
}
