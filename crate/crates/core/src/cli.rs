//! The `deckrecon` command line.
//!
//! Exit codes: 0 for an exact answer or a passed check, 2 for an ambiguous or
//! failed reconstruction or a failed check, 1 for usage and I/O errors.

use crate::adversary::{bbf_pair, forge_collection, parse_mixed, serialize_mixed, solve_mixed_with, ForgeStrategy};
use crate::deck::{deal, drop_cards, parse_deck, serialize_deck, DropStrategy};
use crate::error::{Error, Result};
use crate::experiment::{run_experiment, write_csv, ExperimentConfig, Tally};
use crate::graph::{gen_graph, graph6, Model};
use crate::oracle;
use crate::reconstruct::{reconstruct_size, reconstruct_size_with, ParamOverrides, ReconstructionReport};
use crate::rng;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "deckrecon", version, about = "Edge counts from incomplete decks of vertex-deleted cards")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph and write it as one graph6 line.
    Gen(GenArgs),
    /// Write the full deck of a graph6 graph.
    Deal(IoArgs),
    /// Remove cards from a deck.
    Drop(DropArgs),
    /// Reconstruct the edge count from a DECK or MIXED file; prints a JSON report.
    Reconstruct(ReconstructArgs),
    /// Forge a collection with false cards and solve it.
    Game(GameArgs),
    /// Report the clique-union pair sharing 2p cards.
    Bbf(BbfArgs),
    /// Run the exhaustive and Kelly checks.
    Verify(VerifyArgs),
    /// Run a seeded sweep and write one CSV row per trial.
    Experiment(ExperimentArgs),
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// gnp:P, regular:D, clique_union:A,B,.., path, star, empty or complete.
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: usize,
    /// Edge probability for `--model gnp`.
    #[arg(long)]
    p: Option<f64>,
}

impl ModelArgs {
    fn model(&self) -> Result<Model> {
        match (self.model.as_str(), self.p) {
            ("gnp", Some(p)) => Ok(Model::Gnp(p)),
            (_, Some(_)) if !self.model.starts_with("gnp") => {
                Err(Error::InvalidParameter("--p only applies to --model gnp".into()))
            }
            (m, _) => m.parse(),
        }
    }
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IoArgs {
    /// Input file; standard input when absent.
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DropArgs {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long)]
    k: usize,
    /// random, first, max_edges or min_edges.
    #[arg(long, default_value = "random")]
    strategy: String,
    #[arg(long)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Overrides such as `beta=0.5,K=4,lo=10,hi=20`.
    #[arg(long)]
    params: Option<String>,
}

#[derive(Args, Debug)]
struct GameArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    kfalse: usize,
    /// random_gnp, perturb_true or size_decoy.
    #[arg(long, default_value = "random_gnp")]
    strategy: String,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    params: Option<String>,
    /// Also write the collection here, and the false positions to `<out>.truth.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BbfArgs {
    #[arg(long)]
    p: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Largest order for the exhaustive checks (at most 8).
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random graphs in the Kelly check.
    #[arg(long, default_value_t = 20)]
    trials: usize,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    kfalse: usize,
    /// Drop strategy, or forgery strategy when `--kfalse` is positive.
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    params: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match dispatch(cli.command, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)?),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn overrides(params: &Option<String>) -> Result<ParamOverrides> {
    params.as_deref().map_or(Ok(ParamOverrides::default()), str::parse)
}

fn report_code(report: &ReconstructionReport) -> i32 {
    if report.exact_size().is_some() {
        0
    } else {
        2
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Gen(a) => {
            let g = gen_graph(&a.model.model()?, a.model.n, a.seed)?;
            emit(&a.out, &format!("{}\n", graph6::encode(&g)), out)?;
            Ok(0)
        }
        Command::Deal(a) => {
            let text = read_input(&a.input, stdin)?;
            let line = text.lines().next().ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
            let g = graph6::decode(line).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
            emit(&a.out, &serialize_deck(&deal(&g)?), out)?;
            Ok(0)
        }
        Command::Drop(a) => {
            let deck = parse_deck(&read_input(&a.io.input, stdin)?)?;
            let strategy: DropStrategy = a.strategy.parse()?;
            emit(&a.io.out, &serialize_deck(&drop_cards(&deck, a.k, strategy, a.seed)?), out)?;
            Ok(0)
        }
        Command::Reconstruct(a) => {
            let text = read_input(&a.io.input, stdin)?;
            let ov = overrides(&a.params)?;
            let report = if text.starts_with("MIXED") {
                solve_mixed_with(&parse_mixed(&text)?, &ov)
            } else {
                reconstruct_size_with(&parse_deck(&text)?, &ov)
            };
            emit(&a.io.out, &format!("{}\n", report.to_json()), out)?;
            Ok(report_code(&report))
        }
        Command::Game(a) => {
            let g = gen_graph(&a.model.model()?, a.model.n, rng::split_seed(a.seed, 0))?;
            let strategy: ForgeStrategy = a.strategy.parse()?;
            let (collection, truth) = forge_collection(&g, a.kfalse, strategy, rng::split_seed(a.seed, 1))?;
            if let Some(path) = &a.out {
                std::fs::write(path, serialize_mixed(&collection))?;
                let mut sidecar = path.clone().into_os_string();
                sidecar.push(".truth.json");
                std::fs::write(sidecar, serde_json::to_string(&truth).expect("truth serializes") + "\n")?;
            }
            let report = solve_mixed_with(&collection, &overrides(&a.params)?);
            writeln!(out, "{}", report.to_json())?;
            match report.exact_size() {
                Some(m) if m == truth.m_true => {
                    writeln!(err, "m_true={} verdict=exact_correct", truth.m_true)?;
                    Ok(0)
                }
                Some(_) => {
                    writeln!(err, "m_true={} verdict=exact_wrong", truth.m_true)?;
                    Ok(2)
                }
                None => {
                    writeln!(err, "m_true={} verdict={}", truth.m_true, report.outcome_tag())?;
                    Ok(2)
                }
            }
        }
        Command::Bbf(a) => {
            let b = bbf_pair(a.p)?;
            writeln!(out, "p={} n={}", b.p, b.n)?;
            writeln!(out, "G = 2K_{} + K_{}: {} edges", b.p + 1, b.p - 1, b.edges_g)?;
            writeln!(out, "H = K_{} + 2K_{}: {} edges", b.p + 1, b.p, b.edges_h)?;
            writeln!(out, "common cards: {} (at least {})", b.common, 2 * b.p)?;
            Ok(if b.common >= 2 * b.p && b.edges_g.abs_diff(b.edges_h) == 1 { 0 } else { 2 })
        }
        Command::Verify(a) => {
            let checks = verify(a.n, a.seed, a.trials)?;
            let mut ok = true;
            for (name, passed, detail) in &checks {
                writeln!(out, "{} {name}: {detail}", if *passed { "PASS" } else { "FAIL" })?;
                ok &= passed;
            }
            Ok(if ok { 0 } else { 2 })
        }
        Command::Experiment(a) => {
            let mut cfg = ExperimentConfig::new(
                a.model.model()?,
                a.model.n,
                a.k,
                a.kfalse,
                a.strategy.as_deref(),
                a.trials,
                a.seed,
            )?;
            cfg.params = overrides(&a.params)?;
            let rows = run_experiment(&cfg)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            emit(&a.out, std::str::from_utf8(&buf).expect("csv is utf-8"), out)?;
            let tally = Tally::of(&rows);
            writeln!(err, "{tally}")?;
            Ok(if tally.exact_wrong == 0 { 0 } else { 2 })
        }
    }
}

/// Classical counts of graphs on 0..=8 vertices up to isomorphism.
pub const UNLABELLED_COUNTS: [usize; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];

fn verify(max_n: usize, seed: u64, trials: usize) -> Result<Vec<(String, bool, String)>> {
    if max_n > oracle::MAX_CATALOG_ORDER {
        return Err(Error::Unsupported { what: "verify", order: max_n, limit: oracle::MAX_CATALOG_ORDER });
    }
    let mut checks = Vec::new();
    for n in 1..=max_n {
        let got = oracle::enumerate_graphs(n)?.len();
        checks.push((format!("catalog n={n}"), got == UNLABELLED_COUNTS[n], format!("{got} classes")));
    }
    for n in 3..=max_n {
        let cat = oracle::enumerate_graphs(n)?;
        let (mut full_ok, mut drop_exact, mut drop_bad) = (0, 0, 0);
        for g in cat.graphs() {
            let full = deal(g)?;
            if reconstruct_size(&full).exact_size() == Some(g.edge_count()) {
                full_ok += 1;
            }
            for v in 0..n {
                let cards: Vec<_> = full.graphs().enumerate().filter(|&(i, _)| i != v).map(|(_, c)| c.clone()).collect();
                let deck = crate::deck::PartialDeck::from_graphs(n, cards)?;
                if let Some(m) = reconstruct_size(&deck).exact_size() {
                    drop_exact += 1;
                    if !oracle::consistent_sizes(&deck)?.contains(&m) {
                        drop_bad += 1;
                    }
                }
            }
        }
        checks.push((
            format!("oracle agreement n={n}"),
            full_ok == cat.len() && drop_bad == 0,
            format!("full decks {full_ok}/{}, single drops exact {drop_exact}, outside consistent sizes {drop_bad}", cat.len()),
        ));
    }
    let patterns = [
        ("K_2", crate::graph::Graph::complete(2)),
        ("P_3", crate::graph::Graph::path(3)),
        ("K_3", crate::graph::Graph::complete(3)),
        ("K_1,3", crate::graph::Graph::star(4)),
    ];
    let mut mismatches = 0;
    for i in 0..trials {
        let s = rng::split_seed(seed, i as u64);
        let n = 5 + (s % 8) as usize;
        let g = gen_graph(&Model::Gnp(0.5), n, s)?;
        let full = deal(&g)?;
        for (_, h) in &patterns {
            if oracle::kelly_count(&full, h)? != oracle::subgraph_count(&g, h)? {
                mismatches += 1;
            }
        }
    }
    checks.push((
        "kelly identity".into(),
        mismatches == 0,
        format!("{} graphs x {} patterns, {mismatches} mismatches", trials, patterns.len()),
    ));
    let b = bbf_pair(3)?;
    checks.push((
        "bbf p=3".into(),
        b.common >= 6 && b.edges_g.abs_diff(b.edges_h) == 1,
        format!("sizes {} and {}, {} common cards", b.edges_g, b.edges_h, b.common),
    ));
    Ok(checks)
}
