//! The floor-average estimate and the histogram of estimated degrees.

use deckrecon::reconstruct::{estimate_size, estimated_histogram};
use deckrecon::{card_stats, deal, drop_cards, gen_graph, DropStrategy, Model};

fn main() -> deckrecon::Result<()> {
    let n = 60;
    let g = gen_graph(&Model::Gnp(0.2), n, 8)?;
    println!("true m = {}", g.edge_count());
    for k in [0, 1, 3, 10] {
        let deck = drop_cards(&deal(&g)?, k, DropStrategy::MaxEdges, 0)?;
        let stats = card_stats(&deck);
        let est = estimate_size(&stats)?;
        let hist = estimated_histogram(&stats, &est)?;
        let alpha = est.m_tilde - g.edge_count();
        println!(
            "k = {k:>2}: m~ = {}, alpha = {alpha}, bound = {}, histogram total {}",
            est.m_tilde,
            est.alpha_max,
            hist.total()
        );
    }
    Ok(())
}
