//! Window search and shift detection.
//!
//! The estimated histogram is the true spectrum shifted right by
//! `alpha = m~ - m`, less the `k` missing vertices. Capping both at
//! `C = ceil(sqrt(n))` and comparing over a stretch of certified counts, the
//! true shift always scores at most `k`. When the stretch reaches a large
//! count on one side and a run of small counts on the other, every other
//! shift scores more than `k`.

use super::estimate::{EstimatedDegreeHistogram, SizeEstimate};
use super::known::{ceil_sqrt, DegreeStatus, KnownDegrees};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftResult {
    pub alpha: u64,
    /// Inclusive range of `t` compared.
    pub window: (usize, usize),
    pub scores: BTreeMap<u64, u64>,
    pub cap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftError {
    /// No candidate scored at most `k`.
    NoShift(BTreeMap<u64, u64>),
    /// Several candidates scored at most `k`.
    MultiShift(BTreeMap<u64, u64>),
}

impl ShiftError {
    pub fn scores(&self) -> &BTreeMap<u64, u64> {
        match self {
            ShiftError::NoShift(s) | ShiftError::MultiShift(s) => s,
        }
    }
}

/// Leftmost run of `max(2k, 2)` exact, small counts inside `[lo, hi]`.
pub fn find_window(known: &KnownDegrees, k: usize, lo: usize, hi: usize) -> Option<(usize, usize)> {
    let len = (2 * k).max(2);
    let hi = hi.min(known.n().saturating_sub(1));
    let mut run = 0;
    for t in lo..=hi {
        run = if known.is_small(t) { run + 1 } else { 0 };
        if run == len {
            return Some((t + 1 - len, t));
        }
    }
    None
}

/// Maximal run of non-unknown statuses around `window`.
pub fn certified_span(known: &KnownDegrees, window: (usize, usize)) -> (usize, usize) {
    let certified = |t: usize| known.status(t) != DegreeStatus::Unknown;
    let mut l = window.0;
    while l > 0 && certified(l - 1) {
        l -= 1;
    }
    let mut r = window.1;
    while r + 1 < known.n() && certified(r + 1) {
        r += 1;
    }
    (l, r)
}

/// Scores every shift in `0..=alpha_max` over `span` and returns the unique
/// one scoring at most `k`.
pub fn detect_shift(
    known: &KnownDegrees,
    hist: &EstimatedDegreeHistogram,
    span: (usize, usize),
    k: usize,
    est: &SizeEstimate,
) -> Result<ShiftResult, ShiftError> {
    let cap = ceil_sqrt(known.n());
    let capped = |t: usize| match known.status(t) {
        DegreeStatus::Exact(v) => v.min(cap),
        DegreeStatus::Large => cap,
        DegreeStatus::Unknown => unreachable!("span holds certified statuses only"),
    };
    let scores: BTreeMap<u64, u64> = (0..=est.alpha_max)
        .map(|s| {
            let score = (span.0..=span.1)
                .map(|t| capped(t).abs_diff(hist.get(t + s as usize).min(cap)))
                .sum();
            (s, score)
        })
        .collect();
    let hits: Vec<u64> = scores.iter().filter(|&(_, &v)| v <= k as u64).map(|(&s, _)| s).collect();
    match hits.as_slice() {
        [alpha] => Ok(ShiftResult { alpha: *alpha, window: span, scores, cap }),
        [] => Err(ShiftError::NoShift(scores)),
        _ => Err(ShiftError::MultiShift(scores)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::{card_stats, deal, drop_cards, DropStrategy};
    use crate::graph::{gen_graph, Model};
    use crate::reconstruct::estimate::{estimate_size, estimated_histogram};
    use crate::reconstruct::known::is_small_value;

    #[test]
    fn window_is_leftmost_small_run() {
        let n = 400;
        let mut known = KnownDegrees::unknown(n);
        for t in 134..=266 {
            known.set_exact(t, 0);
        }
        assert_eq!(find_window(&known, 1, 134, 266), Some((134, 135)));
        assert_eq!(find_window(&known, 3, 134, 266), Some((134, 139)));
        assert_eq!(find_window(&KnownDegrees::unknown(n), 1, 134, 266), None);
    }

    #[test]
    fn window_skips_planted_non_small_block() {
        let n = 900;
        let c = ceil_sqrt(n);
        assert!(!is_small_value(c, n));
        let mut known = KnownDegrees::unknown(n);
        for t in 300..=450 {
            known.set_exact(t, c);
        }
        for t in 451..=600 {
            known.set_exact(t, 0);
        }
        let (l, r) = find_window(&known, 2, 300, 600).unwrap();
        assert!(l > 450);
        assert_eq!((l, r), (451, 454));
    }

    #[test]
    fn span_stops_at_unknown() {
        let mut known = KnownDegrees::unknown(10);
        for t in 2..8 {
            known.set_exact(t, 0);
        }
        known.set_large(1);
        assert_eq!(certified_span(&known, (4, 5)), (1, 7));
    }

    #[test]
    fn full_deck_has_zero_shift() {
        let g = gen_graph(&Model::Regular(3), 100, 1).unwrap();
        let stats = card_stats(&deal(&g).unwrap());
        let est = estimate_size(&stats).unwrap();
        let hist = estimated_histogram(&stats, &est).unwrap();
        let truth = g.degree_spectrum();
        let known = KnownDegrees::from_statuses(truth.counts().iter().map(|&v| DegreeStatus::Exact(v)).collect());
        let r = detect_shift(&known, &hist, (0, 99), 0, &est).unwrap();
        assert_eq!(r.alpha, 0);
        assert_eq!(r.scores[&0], 0);
    }

    #[test]
    fn cubic_graph_shift_scores() {
        let n = 400;
        let g = gen_graph(&Model::Regular(3), n, 9).unwrap();
        let d = drop_cards(&deal(&g).unwrap(), 1, DropStrategy::Random, 4).unwrap();
        let stats = card_stats(&d);
        let est = estimate_size(&stats).unwrap();
        let hist = estimated_histogram(&stats, &est).unwrap();
        let alpha = est.m_tilde - g.edge_count();
        let mut statuses = vec![DegreeStatus::Unknown; n];
        statuses[3] = DegreeStatus::Large;
        for s in statuses.iter_mut().skip(4) {
            *s = DegreeStatus::Exact(0);
        }
        let known = KnownDegrees::from_statuses(statuses);
        let r = detect_shift(&known, &hist, (3, n - 1), 1, &est).unwrap();
        assert_eq!(r.alpha, alpha);
        for (&s, &score) in &r.scores {
            if s != alpha {
                assert!(score >= 5, "shift {s} scored {score}");
            }
        }
    }

    #[test]
    fn planted_shift_of_two() {
        let n = 100usize;
        // Large run on t < 10, zeros from 10 on.
        let mut truth = vec![0u64; n];
        for v in truth.iter_mut().take(10) {
            *v = 10;
        }
        let alpha_max = 4;
        let mut hist = vec![0u64; n + alpha_max];
        for t in 0..n {
            hist[t + 2] = truth[t];
        }
        hist[5] -= 1;
        hist[7] -= 1;
        let hist = EstimatedDegreeHistogram::from_counts(hist, n, 2);
        let est = SizeEstimate { m_tilde: 0, alpha_max: alpha_max as u64, n, k: 2 };
        let mut statuses: Vec<DegreeStatus> = truth.iter().map(|&v| DegreeStatus::Exact(v)).collect();
        statuses[9] = DegreeStatus::Large;
        let known = KnownDegrees::from_statuses(statuses);
        let r = detect_shift(&known, &hist, (9, 99), 2, &est).unwrap();
        assert_eq!(r.alpha, 2);
        assert!(r.scores[&2] <= 2);
    }

    #[test]
    fn ambiguity_is_reported_with_scores() {
        let n = 16;
        let known = KnownDegrees::from_statuses(vec![DegreeStatus::Exact(0); n]);
        let hist = EstimatedDegreeHistogram::from_counts(vec![0; n + 2], n, 1);
        let est = SizeEstimate { m_tilde: 0, alpha_max: 2, n, k: 1 };
        let err = detect_shift(&known, &hist, (4, 8), 1, &est).unwrap_err();
        assert!(matches!(err, ShiftError::MultiShift(_)));
        assert_eq!(err.scores().len(), 3);
    }
}
