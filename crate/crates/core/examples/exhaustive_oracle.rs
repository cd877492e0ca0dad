//! Every graph on up to 7 vertices, checked against the catalog after losing one card.

use deckrecon::oracle::{consistent_sizes, enumerate_graphs};
use deckrecon::{reconstruct_size, PartialDeck};

fn main() -> deckrecon::Result<()> {
    for n in 4..=7 {
        let cat = enumerate_graphs(n)?;
        let (mut exact, mut ambiguous_sizes, mut total) = (0, 0, 0);
        for g in cat.graphs() {
            let cards: Vec<_> = (1..n).map(|v| g.card(v)).collect::<deckrecon::Result<_>>()?;
            let deck = PartialDeck::from_graphs(n, cards)?;
            let sizes = consistent_sizes(&deck)?;
            total += 1;
            if sizes.len() > 1 {
                ambiguous_sizes += 1;
            }
            if let Some(m) = reconstruct_size(&deck).exact_size() {
                assert!(sizes.contains(&m));
                exact += 1;
            }
        }
        println!(
            "n = {n}: {} classes; {ambiguous_sizes} decks minus a card fit several sizes; pipeline exact on {exact}/{total}",
            cat.len()
        );
    }
    Ok(())
}
