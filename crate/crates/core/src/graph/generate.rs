//! Seeded graph generators.

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::{self, SeededRng};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// Restarts of sequential pairing before regular generation gives up.
pub const REGULAR_RETRIES: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    /// Each pair independently with probability `p`.
    Gnp(f64),
    /// Random `d`-regular graph by sequential pairing of degree points.
    Regular(usize),
    /// Disjoint cliques with the given sizes.
    CliqueUnion(Vec<usize>),
    Path,
    Star,
    Empty,
    Complete,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Gnp(p) => write!(f, "gnp:{p}"),
            Model::Regular(d) => write!(f, "regular:{d}"),
            Model::CliqueUnion(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "clique_union:{}", parts.join(","))
            }
            Model::Path => f.write_str("path"),
            Model::Star => f.write_str("star"),
            Model::Empty => f.write_str("empty"),
            Model::Complete => f.write_str("complete"),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidParameter(format!("model `{s}`: {why}"));
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        match (name, arg) {
            ("gnp", Some(a)) => {
                let p: f64 = a.parse().map_err(|_| bad("p is not a number"))?;
                Ok(Model::Gnp(p))
            }
            ("regular", Some(a)) => Ok(Model::Regular(a.parse().map_err(|_| bad("degree is not an integer"))?)),
            ("clique_union", Some(a)) => {
                let parts = a
                    .split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("part sizes must be integers"))?;
                Ok(Model::CliqueUnion(parts))
            }
            ("path", None) => Ok(Model::Path),
            ("star", None) => Ok(Model::Star),
            ("empty", None) => Ok(Model::Empty),
            ("complete", None) => Ok(Model::Complete),
            _ => Err(bad("expected gnp:P, regular:D, clique_union:A,B,.., path, star, empty or complete")),
        }
    }
}

pub fn gen_graph(model: &Model, n: usize, seed: u64) -> Result<Graph> {
    let mut rng = rng::seeded(seed);
    match model {
        Model::Gnp(p) => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::InvalidParameter(format!("gnp probability {p} outside [0, 1]")));
            }
            Ok(gnp(n, *p, &mut rng))
        }
        Model::Regular(d) => regular(n, *d, &mut rng),
        Model::CliqueUnion(parts) => {
            if parts.iter().sum::<usize>() != n {
                return Err(Error::InvalidParameter(format!("clique parts {parts:?} do not sum to n = {n}")));
            }
            Ok(Graph::clique_union(parts))
        }
        Model::Path => Ok(Graph::path(n)),
        Model::Star => Ok(Graph::star(n)),
        Model::Empty => Ok(Graph::empty(n)),
        Model::Complete => Ok(Graph::complete(n)),
    }
}

pub(crate) fn gnp(n: usize, p: f64, rng: &mut SeededRng) -> Graph {
    let mut g = Graph::empty(n);
    if p <= 0.0 {
        return g;
    }
    for j in 1..n {
        for i in 0..j {
            if rng.gen::<f64>() < p {
                g.set_edge(i, j, true);
            }
        }
    }
    g
}

/// Random picks tried before scanning the remaining points for a valid pair.
const PICKS_BEFORE_SCAN: usize = 64;

/// Sequential pairing: points are joined two at a time, only ever between
/// distinct non-adjacent vertices, restarting when no valid pair remains.
fn regular(n: usize, d: usize, rng: &mut SeededRng) -> Result<Graph> {
    if d >= n.max(1) || !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("no {d}-regular graph on {n} vertices")));
    }
    'attempt: for _ in 0..REGULAR_RETRIES {
        let mut free: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut g = Graph::empty(n);
        while !free.is_empty() {
            let ok = |g: &Graph, i: usize, j: usize| free[i] != free[j] && !g.has_edge(free[i], free[j]);
            let mut chosen = None;
            for _ in 0..PICKS_BEFORE_SCAN {
                let i = rng::below(rng, free.len());
                let j = rng::below(rng, free.len());
                if ok(&g, i, j) {
                    chosen = Some((i, j));
                    break;
                }
            }
            if chosen.is_none() {
                let valid: Vec<(usize, usize)> =
                    (0..free.len()).flat_map(|i| (i + 1..free.len()).map(move |j| (i, j))).filter(|&(i, j)| ok(&g, i, j)).collect();
                if valid.is_empty() {
                    continue 'attempt;
                }
                chosen = Some(valid[rng::below(rng, valid.len())]);
            }
            let (i, j) = chosen.expect("a pair was chosen");
            g.set_edge(free[i], free[j], true);
            free.swap_remove(i.max(j));
            free.swap_remove(i.min(j));
        }
        return Ok(g);
    }
    Err(Error::RegularGenerationFailed { order: n, degree: d, attempts: REGULAR_RETRIES })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_models() {
        assert_eq!(gen_graph(&Model::Complete, 5, 0).unwrap().edge_count(), 10);
        let g = gen_graph(&Model::CliqueUnion(vec![4, 4, 2]), 10, 0).unwrap();
        assert_eq!(g.edge_count(), 13);
        for s in 0..20 {
            assert_eq!(gen_graph(&Model::Gnp(0.0), 8, s).unwrap(), Graph::empty(8));
        }
    }

    #[test]
    fn regular_is_regular_and_deterministic() {
        let g = gen_graph(&Model::Regular(3), 60, 11).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert_eq!(g, gen_graph(&Model::Regular(3), 60, 11).unwrap());
        assert_ne!(g, gen_graph(&Model::Regular(3), 60, 12).unwrap());
        for (n, d) in [(92, 6), (500, 4), (30, 25), (8, 7), (200, 20)] {
            let g = gen_graph(&Model::Regular(d), n, 1).unwrap();
            assert!(g.degrees().iter().all(|&x| x == d), "n = {n}, d = {d}");
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(gen_graph(&Model::Regular(3), 7, 0).is_err());
        assert!(gen_graph(&Model::CliqueUnion(vec![2, 2]), 5, 0).is_err());
        assert!(gen_graph(&Model::Gnp(1.5), 5, 0).is_err());
    }

    #[test]
    fn model_strings_round_trip() {
        for s in ["gnp:0.5", "regular:3", "clique_union:4,4,2", "path", "star", "empty", "complete"] {
            let m: Model = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
        assert!("regular".parse::<Model>().is_err());
        assert!("gnp:x".parse::<Model>().is_err());
    }
}
