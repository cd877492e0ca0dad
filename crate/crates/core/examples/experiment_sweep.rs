//! A seeded sweep over drop counts, written as CSV to stdout.

use deckrecon::experiment::{run_experiment, write_csv, ExperimentConfig, Tally};
use deckrecon::Model;

fn main() -> deckrecon::Result<()> {
    let mut rows = Vec::new();
    for k in [1, 2, 4] {
        let cfg = ExperimentConfig::new(Model::Regular(3), 300, k, 0, Some("random"), 10, 42)?;
        let batch = run_experiment(&cfg)?;
        eprintln!("k = {k}: {}", Tally::of(&batch));
        rows.extend(batch);
    }
    write_csv(&rows, std::io::stdout().lock())
}
