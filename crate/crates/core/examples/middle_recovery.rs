//! Certified degree counts in the middle range, then extended outwards.

use deckrecon::reconstruct::{extend_known, recover_exact_middle, DegreeStatus, RecoveryParams};
use deckrecon::{card_stats, deal, drop_cards, gen_graph, DropStrategy, Model};

fn describe(statuses: &[DegreeStatus]) -> String {
    statuses
        .iter()
        .map(|s| match s {
            DegreeStatus::Exact(0) => '0',
            DegreeStatus::Exact(_) => '#',
            DegreeStatus::Large => 'L',
            DegreeStatus::Unknown => '.',
        })
        .collect()
}

fn main() -> deckrecon::Result<()> {
    let n = 120;
    let g = gen_graph(&Model::Regular(4), n, 2)?;
    let deck = drop_cards(&deal(&g)?, 2, DropStrategy::Random, 9)?;
    let stats = card_stats(&deck);
    let params = RecoveryParams::new(n, 2);
    println!("K = {}, window [{}, {}]", params.cap, params.lo, params.hi);

    let middle = recover_exact_middle(&stats, &params);
    println!("middle:   {}", describe(middle.statuses()));
    let known = extend_known(&stats, &middle);
    println!("extended: {}", describe(known.statuses()));
    println!("(0 = certified zero, # = certified nonzero, L = certified large, . = unknown)");
    println!("summary: {:?}", known.summary());
    Ok(())
}
