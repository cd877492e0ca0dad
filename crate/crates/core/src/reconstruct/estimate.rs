use crate::deck::CardStats;
use crate::error::{Error, Result};

/// Floor-average size estimate `m~` and the bound on its excess over `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeEstimate {
    pub m_tilde: u64,
    /// `floor(k(n-1) / (n-2-k))`; the true excess `m~ - m` lies in `0..=alpha_max`.
    pub alpha_max: u64,
    pub n: usize,
    pub k: usize,
}

/// Every edge of `G` lies on `n - 2` cards, and the card of `v` misses
/// `deg(v)` edges, so `sum e(G_i)` over the given cards is
/// `(n-2-k) m + (degrees of the missing vertices)`. Dividing by `n-2-k` and
/// flooring overshoots `m` by at most `floor(k(n-1)/(n-2-k))`.
pub fn estimate_size(stats: &CardStats) -> Result<SizeEstimate> {
    let (n, k) = (stats.n, stats.k);
    if n < k + 3 {
        return Err(Error::TooFewCards { n, k });
    }
    let divisor = (n - 2 - k) as u64;
    Ok(SizeEstimate {
        m_tilde: stats.edge_sum() / divisor,
        alpha_max: (k as u64 * (n as u64 - 1)) / divisor,
        n,
        k,
    })
}

/// Histogram of the estimated degrees `m~ - e(G_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EstimatedDegreeHistogram {
    /// Indices `0..=n-1+alpha_max`.
    counts: Vec<u64>,
    pub n: usize,
    pub k: usize,
}

impl EstimatedDegreeHistogram {
    /// A histogram built directly, for planted examples.
    pub fn from_counts(counts: Vec<u64>, n: usize, k: usize) -> Self {
        EstimatedDegreeHistogram { counts, n, k }
    }

    /// `d~_t`; zero past the stored range.
    pub fn get(&self, t: usize) -> u64 {
        self.counts.get(t).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn estimated_histogram(stats: &CardStats, est: &SizeEstimate) -> Result<EstimatedDegreeHistogram> {
    let len = stats.n + est.alpha_max as usize;
    let mut counts = vec![0u64; len];
    for (i, &e) in stats.per_card_edges.iter().enumerate() {
        let Some(d) = est.m_tilde.checked_sub(e) else {
            return Err(Error::InconsistentDeck(format!(
                "card {i} has {e} edges, more than the estimate {}",
                est.m_tilde
            )));
        };
        let slot = counts.get_mut(d as usize).ok_or_else(|| {
            Error::InconsistentDeck(format!("card {i} implies degree {d}, beyond {}", len - 1))
        })?;
        *slot += 1;
    }
    Ok(EstimatedDegreeHistogram { counts, n: stats.n, k: stats.k })
}
