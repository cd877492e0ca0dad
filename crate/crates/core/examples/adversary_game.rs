//! Collections with false cards: exhaustive at n = 8, subset search at n = 300.

use deckrecon::adversary::{forge_collection, solve_mixed, ForgeStrategy};
use deckrecon::{gen_graph, Model};

fn main() -> deckrecon::Result<()> {
    for (model, n) in [(Model::Gnp(0.5), 8), (Model::Regular(3), 300)] {
        let g = gen_graph(&model, n, 3)?;
        for strategy in [ForgeStrategy::RandomGnp, ForgeStrategy::PerturbTrue, ForgeStrategy::SizeDecoy] {
            let (collection, truth) = forge_collection(&g, 1, strategy, 11)?;
            let report = solve_mixed(&collection);
            println!(
                "n = {n:>3} {strategy:<12} false card at {:?}: true m = {}, outcome {} {:?} via {:?}",
                truth.false_positions,
                truth.m_true,
                report.outcome_tag(),
                report.exact_size(),
                report.diagnostics.route
            );
        }
    }
    Ok(())
}
