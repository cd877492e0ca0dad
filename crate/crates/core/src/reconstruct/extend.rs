//! Certified extension of known degree counts outward.
//!
//! From `s_t = (n-1-t) d_t + (t+1) d_{t+1} - eps_t` with
//! `0 <= eps_t <= k (d_t + d_{t+1})`, an exact `d_{t+1}` confines `d_t` to
//!
//! ```text
//! N / D  <=  d_t  <=  (N + k d_{t+1}) / (D - k),   N = s_t - (t+1) d_{t+1},  D = n-1-t.
//! ```
//!
//! One integer in the interval makes `d_t` exact; a lower end above `sqrt(n)`
//! makes it large. The rightward direction is the same step on the
//! complemented cards.

use super::known::KnownDegrees;
use crate::deck::CardStats;

/// Result of one leftward step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Exact(u64),
    Large,
    Unknown,
    /// The interval is empty; no graph has these cards.
    Infeasible,
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -(-a).div_euclid(b)
}

/// Certified `d_t` from `s_t` and an exact `d_{t+1}`.
pub fn step_left(n: usize, k: usize, t: usize, s_t: u64, d_next: u64) -> Step {
    let d = (n - 1 - t) as i128;
    let k = k as i128;
    if d <= k {
        return Step::Unknown;
    }
    let num = s_t as i128 - (t + 1) as i128 * d_next as i128;
    let lo = ceil_div(num, d).max(0);
    let hi = (num + k * d_next as i128).div_euclid(d - k);
    if lo == hi {
        return Step::Exact(lo as u64);
    }
    if lo > hi {
        return Step::Infeasible;
    }
    if num > 0 && num * num > n as i128 * d * d {
        Step::Large
    } else {
        Step::Unknown
    }
}

/// One leftward sweep. Returns whether anything changed.
fn sweep_left(stats: &CardStats, known: &mut KnownDegrees) -> bool {
    let n = stats.n;
    let mut changed = false;
    for t in (0..n.saturating_sub(1)).rev() {
        let Some(next) = known.exact(t + 1) else { continue };
        let before = known.status(t);
        match step_left(n, stats.k, t, stats.degree_seen[t], next) {
            Step::Exact(v) => known.set_exact(t, v),
            Step::Large => known.set_large(t),
            Step::Infeasible => known.mark_conflict(),
            Step::Unknown => {}
        }
        changed |= known.status(t) != before;
    }
    changed
}

/// Extends `known` in both directions until nothing changes.
pub fn extend_known(stats: &CardStats, known: &KnownDegrees) -> KnownDegrees {
    let comp = stats.complemented();
    let mut cur = known.clone();
    loop {
        let mut changed = sweep_left(stats, &mut cur);
        let mut mirrored = cur.reflected();
        if sweep_left(&comp, &mut mirrored) {
            changed = true;
        }
        cur = mirrored.reflected();
        if !changed || cur.has_conflict() {
            return cur;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::{card_stats, deal, drop_cards, DropStrategy};
    use crate::graph::{gen_graph, Graph, Model};
    use crate::reconstruct::known::DegreeStatus;

    #[test]
    fn planted_step_at_forty() {
        // d_40 = 5, d_41 = 3, eps = 10: s_40 = 59*5 + 41*3 - 10 = 408.
        // Interval [285/59, 291/57] = [4.83.., 5.10..] holds only 5.
        assert_eq!(step_left(100, 2, 40, 408, 3), Step::Exact(5));
        for eps in 0..=16 {
            let s = 59 * 5 + 41 * 3 - eps;
            let got = step_left(100, 2, 40, s, 3);
            assert!(matches!(got, Step::Exact(5) | Step::Unknown), "eps {eps}: {got:?}");
        }
    }

    #[test]
    fn exact_without_slack() {
        for (n, t, dt, dn) in [(10usize, 3usize, 4u64, 2u64), (50, 0, 7, 0), (7, 5, 1, 6)] {
            let s = (n - 1 - t) as u64 * dt + (t + 1) as u64 * dn;
            assert_eq!(step_left(n, 0, t, s, dn), Step::Exact(dt));
        }
    }

    #[test]
    fn large_is_flagged_on_cubic_graph() {
        let n = 900;
        let g = gen_graph(&Model::Regular(3), n, 3).unwrap();
        let d = drop_cards(&deal(&g).unwrap(), 1, DropStrategy::First, 0).unwrap();
        let stats = card_stats(&d);
        let mut known = KnownDegrees::unknown(n);
        for t in 300..=600 {
            known.set_exact(t, 0);
        }
        let out = extend_known(&stats, &known);
        for t in 4..n {
            assert_eq!(out.status(t), DegreeStatus::Exact(0), "t = {t}");
        }
        assert_eq!(out.status(3), DegreeStatus::Large);
        assert_eq!(out.status(2), DegreeStatus::Unknown);
    }

    #[test]
    fn full_deck_recovers_spectrum_from_any_anchor() {
        for seed in 0..10 {
            let g = gen_graph(&Model::Gnp(0.4), 30, seed).unwrap();
            let truth = g.degree_spectrum();
            let stats = card_stats(&deal(&g).unwrap());
            for anchor in [0, 7, 15, 29] {
                let mut known = KnownDegrees::unknown(30);
                known.set_exact(anchor, truth.get(anchor));
                let out = extend_known(&stats, &known);
                let got: Vec<u64> = (0..30).map(|t| out.exact(t).unwrap()).collect();
                assert_eq!(got, truth.counts());
            }
        }
    }

    #[test]
    fn complement_of_matching_extends_to_zero() {
        let n = 40;
        let mut g = Graph::complete(n);
        for i in 0..n / 2 {
            g.set_edge(2 * i, 2 * i + 1, false);
        }
        let d = drop_cards(&deal(&g).unwrap(), 1, DropStrategy::First, 0).unwrap();
        let stats = card_stats(&d);
        let mut known = KnownDegrees::unknown(n);
        known.set_exact(20, 0);
        let out = extend_known(&stats, &known);
        for t in 0..n - 2 {
            assert_eq!(out.exact(t), Some(0), "t = {t}");
        }
        assert_eq!(out.status(n - 2), DegreeStatus::Large);
    }
}
