//! Exact recovery of small degree counts in the middle range of degrees.
//!
//! For `t` in `[lo, hi]` the observed `s_t` is `V(d_t, d_{t+1}) - eps_t` with
//! `V(a, b) = (n-1-t) a + (t+1) b` and `0 <= eps_t <= 2kK` whenever both counts
//! are below `K`. The pair is read off as the candidate in `{0..K-1}^2` whose
//! `V` is nearest to `s_t`, and accepted only when every other candidate is
//! more than `2 * 2kK` away from it.

use super::known::{DtStarTable, KnownDegrees, RecoveryParams};
use crate::deck::CardStats;

/// `V(a, b) = (n-1-t) a + (t+1) b`.
fn weighted(n: usize, t: usize, a: u64, b: u64) -> i128 {
    (n - 1 - t) as i128 * a as i128 + (t + 1) as i128 * b as i128
}

/// The candidate pair nearest to `s_t`, provided it is separated from every
/// other candidate by more than `2 * eps`.
pub fn nearest_pair(n: usize, t: usize, s_t: u64, cap: u64, eps: u64) -> Option<(u64, u64)> {
    let target = s_t as i128;
    let mut best: Option<((u64, u64), i128)> = None;
    for a in 0..cap {
        for b in 0..cap {
            let v = weighted(n, t, a, b);
            let dist = (v - target).abs();
            if best.is_none_or(|(_, d)| dist < d) {
                best = Some(((a, b), dist));
            }
        }
    }
    let ((a, b), _) = best?;
    let vb = weighted(n, t, a, b);
    let margin = 2 * eps as i128;
    for c in 0..cap {
        for d in 0..cap {
            if (c, d) != (a, b) && (weighted(n, t, c, d) - vb).abs() <= margin {
                return None;
            }
        }
    }
    Some((a, b))
}

/// Whether `q = (t+1)/n` lies within `2 eps / n` of some `x/y` with
/// `y <= 2K - 2`.
pub fn in_s_set(n: usize, t: usize, cap: u64, eps: u64) -> bool {
    let (n, t1, eps) = (n as i128, (t + 1) as i128, eps as i128);
    (1..=(2 * cap as i128 - 2)).any(|y| (0..=y).any(|x| (t1 * y - x * n).abs() < 2 * eps * y))
}

/// `A = { t : 4 (d_t* + 1) >= K }`, the degrees whose count may exceed `K - 1`.
fn in_a_set(star: &DtStarTable, t: usize, cap: u64) -> bool {
    t < star.values.len() && 4 * (star.get(t) + 1) >= cap
}

pub fn recover_exact_middle(stats: &CardStats, params: &RecoveryParams) -> KnownDegrees {
    let (n, k) = (stats.n, stats.k);
    let mut known = KnownDegrees::unknown(n);
    let s = &stats.degree_seen;
    // With s_t = 0 every vertex of degree t or t+1 appears on at most k cards
    // with that degree, so none can exist once n-1-t > k and t+1 > k.
    for t in params.lo..=params.hi.min(n - 1) {
        if s[t] == 0 && n - 1 - t > k && t + 1 > k {
            known.set_exact(t, 0);
            if t + 1 < n {
                known.set_exact(t + 1, 0);
            }
        }
    }
    if 3 * k > n {
        log::debug!("nearest-point step skipped: k = {k} > n/3");
        return known;
    }
    let star = DtStarTable::from_stats(stats);
    let eps = params.epsilon_bound;
    for t in params.lo..=params.hi.min(n - 2) {
        if in_a_set(&star, t, params.cap) || in_a_set(&star, t + 1, params.cap) {
            continue;
        }
        if in_s_set(n, t, params.cap, eps) {
            continue;
        }
        if let Some((a, b)) = nearest_pair(n, t, s[t], params.cap, eps) {
            known.set_exact(t, a);
            known.set_exact(t + 1, b);
        }
    }
    known
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::{card_stats, deal, drop_cards, DropStrategy};
    use crate::graph::{gen_graph, Model};
    use crate::reconstruct::known::{DegreeStatus, ParamOverrides};

    #[test]
    fn zero_rule_on_cubic_graph() {
        let g = gen_graph(&Model::Regular(3), 60, 5).unwrap();
        let d = drop_cards(&deal(&g).unwrap(), 1, DropStrategy::Random, 2).unwrap();
        let stats = card_stats(&d);
        let known = recover_exact_middle(&stats, &RecoveryParams::new(60, 1));
        for t in 20..=40 {
            assert_eq!(known.status(t), DegreeStatus::Exact(0));
        }
        assert!(!known.has_conflict());
    }

    #[test]
    fn half_is_in_s_set() {
        for n in [10, 60, 1000] {
            assert!(in_s_set(n, n / 2 - 1, 2, 4));
        }
    }

    #[test]
    fn planted_pair_at_399_is_not_certified() {
        // 400/1000 = 2/5 with denominator <= 8, and V(2,3) = V(4,0) = 2400.
        let (n, t) = (1000, 399);
        assert!(in_s_set(n, t, 5, 10));
        let s_t = 600 * 2 + 400 * 3 - 7;
        assert_eq!(s_t, 2393);
        assert_eq!(nearest_pair(n, t, s_t, 5, 10), None);
    }

    #[test]
    fn planted_pair_off_the_s_set_is_recovered() {
        let (n, t) = (1000, 61);
        assert!(!in_s_set(n, t, 5, 10));
        let s_t = (n - 1 - t) as u64 * 2 + (t + 1) as u64 * 3 - 7;
        assert_eq!(nearest_pair(n, t, s_t, 5, 10), Some((2, 3)));
        for eps in 0..=10 {
            let s = (n - 1 - t) as u64 * 2 + (t + 1) as u64 * 3 - eps;
            assert_eq!(nearest_pair(n, t, s, 5, 10), Some((2, 3)));
        }
    }

    #[test]
    fn nearest_pair_matches_brute_force_distance() {
        let (n, t, cap) = (500, 200, 4);
        for s_t in 0..2000u64 {
            if let Some((a, b)) = nearest_pair(n, t, s_t, cap, 0) {
                let d = (weighted(n, t, a, b) - s_t as i128).abs();
                for c in 0..cap {
                    for e in 0..cap {
                        assert!((weighted(n, t, c, e) - s_t as i128).abs() >= d);
                    }
                }
            }
        }
    }

    #[test]
    fn recovered_values_are_true_on_sparse_random_graphs() {
        let ov: ParamOverrides = "K=8".parse().unwrap();
        for seed in 0..20 {
            let g = gen_graph(&Model::Gnp(0.01), 300, seed).unwrap();
            let truth = g.degree_spectrum();
            let d = drop_cards(&deal(&g).unwrap(), 1, DropStrategy::Random, seed).unwrap();
            let stats = card_stats(&d);
            let params = RecoveryParams::resolve(300, 1, &ov).unwrap();
            let known = recover_exact_middle(&stats, &params);
            for t in 0..300 {
                if let Some(v) = known.exact(t) {
                    assert_eq!(v, truth.get(t), "seed {seed} t {t}");
                }
            }
        }
    }
}
