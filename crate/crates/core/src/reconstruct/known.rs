use crate::deck::CardStats;
use crate::error::{Error, Result};
use std::str::FromStr;

/// `d_t` is large when `d_t^2 > n`.
#[inline]
pub fn is_large_value(v: u64, n: usize) -> bool {
    u128::from(v) * u128::from(v) > n as u128
}

/// `d_t` is small when `d_t <= (3/4) sqrt(n)`, i.e. `16 d_t^2 <= 9 n`.
#[inline]
pub fn is_small_value(v: u64, n: usize) -> bool {
    16 * u128::from(v) * u128::from(v) <= 9 * n as u128
}

/// `ceil(sqrt(n))`.
pub fn ceil_sqrt(n: usize) -> u64 {
    let r = (n as u64).isqrt();
    if r * r == n as u64 {
        r
    } else {
        r + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeStatus {
    Exact(u64),
    /// Certified `d_t^2 > n`, exact value unknown.
    Large,
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct KnownSummary {
    pub exact: usize,
    pub large: usize,
    pub unknown: usize,
}

/// What is known about each `d_t`, `t` in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownDegrees {
    n: usize,
    status: Vec<DegreeStatus>,
    conflict: bool,
}

impl KnownDegrees {
    pub fn unknown(n: usize) -> Self {
        KnownDegrees { n, status: vec![DegreeStatus::Unknown; n], conflict: false }
    }

    pub fn from_statuses(status: Vec<DegreeStatus>) -> Self {
        KnownDegrees { n: status.len(), status, conflict: false }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn status(&self, t: usize) -> DegreeStatus {
        self.status[t]
    }

    pub fn statuses(&self) -> &[DegreeStatus] {
        &self.status
    }

    pub fn exact(&self, t: usize) -> Option<u64> {
        match self.status.get(t) {
            Some(DegreeStatus::Exact(v)) => Some(*v),
            _ => None,
        }
    }

    /// Large status, or an exact value that is large.
    pub fn is_large(&self, t: usize) -> bool {
        match self.status[t] {
            DegreeStatus::Large => true,
            DegreeStatus::Exact(v) => is_large_value(v, self.n),
            DegreeStatus::Unknown => false,
        }
    }

    pub fn is_small(&self, t: usize) -> bool {
        matches!(self.status[t], DegreeStatus::Exact(v) if is_small_value(v, self.n))
    }

    pub fn all_exact(&self) -> bool {
        self.status.iter().all(|s| matches!(s, DegreeStatus::Exact(_)))
    }

    /// Set when two certified derivations disagreed, which can only happen
    /// if the cards did not come from one graph.
    pub fn has_conflict(&self) -> bool {
        self.conflict
    }

    pub fn set_exact(&mut self, t: usize, v: u64) {
        match self.status[t] {
            DegreeStatus::Exact(old) if old != v => self.conflict = true,
            DegreeStatus::Large if !is_large_value(v, self.n) => self.conflict = true,
            _ => self.status[t] = DegreeStatus::Exact(v),
        }
    }

    pub fn set_large(&mut self, t: usize) {
        match self.status[t] {
            DegreeStatus::Unknown => self.status[t] = DegreeStatus::Large,
            DegreeStatus::Exact(v) if !is_large_value(v, self.n) => self.conflict = true,
            _ => {}
        }
    }

    pub(crate) fn mark_conflict(&mut self) {
        self.conflict = true;
    }

    /// The view from the complement graph: index `t` becomes `n - 1 - t`.
    pub fn reflected(&self) -> Self {
        let mut status = self.status.clone();
        status.reverse();
        KnownDegrees { n: self.n, status, conflict: self.conflict }
    }

    pub fn summary(&self) -> KnownSummary {
        let mut s = KnownSummary::default();
        for st in &self.status {
            match st {
                DegreeStatus::Exact(_) => s.exact += 1,
                DegreeStatus::Large => s.large += 1,
                DegreeStatus::Unknown => s.unknown += 1,
            }
        }
        s
    }
}

/// User overrides for [`RecoveryParams`], parsed from `beta=..,K=..,lo=..,hi=..`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamOverrides {
    pub beta: Option<f64>,
    pub cap: Option<u64>,
    pub lo: Option<usize>,
    pub hi: Option<usize>,
}

impl FromStr for ParamOverrides {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = ParamOverrides::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let bad = || Error::InvalidParameter(format!("bad parameter `{item}`"));
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "beta" => out.beta = Some(value.parse().map_err(|_| bad())?),
                "K" => out.cap = Some(value.parse().map_err(|_| bad())?),
                "lo" => out.lo = Some(value.parse().map_err(|_| bad())?),
                "hi" => out.hi = Some(value.parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        Ok(out)
    }
}

/// Parameters of the exact middle recovery.
#[derive(Clone, Debug, PartialEq)]
pub struct RecoveryParams {
    pub beta: f64,
    /// `3/4 + beta/4`.
    pub gamma: f64,
    /// `K`: candidate counts range over `0..K`.
    pub cap: u64,
    /// `2kK`, the uniform bound on the degree-count slack `eps_t`.
    pub epsilon_bound: u64,
    pub lo: usize,
    pub hi: usize,
}

pub const DEFAULT_BETA: f64 = 0.5;

impl RecoveryParams {
    pub fn new(n: usize, k: usize) -> Self {
        Self::resolve(n, k, &ParamOverrides::default()).expect("defaults are valid")
    }

    pub fn resolve(n: usize, k: usize, ov: &ParamOverrides) -> Result<Self> {
        let beta = ov.beta.unwrap_or(DEFAULT_BETA);
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!("beta = {beta} outside [0, 1)")));
        }
        let gamma = 0.75 + beta / 4.0;
        // K = n^(1 - gamma); only a default, so floating point is fine here.
        let cap = ov.cap.unwrap_or_else(|| ((n as f64).powf(1.0 - gamma).ceil() as u64).max(2));
        if cap < 2 {
            return Err(Error::InvalidParameter(format!("K = {cap} must be at least 2")));
        }
        let lo = ov.lo.unwrap_or(n.div_ceil(3));
        let hi = ov.hi.unwrap_or(2 * n / 3);
        if lo > hi || hi >= n {
            return Err(Error::InvalidParameter(format!("interval [{lo}, {hi}] invalid for n = {n}")));
        }
        Ok(RecoveryParams { beta, gamma, cap, epsilon_bound: 2 * k as u64 * cap, lo, hi })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarSide {
    /// `t < n/2`: maximum over the given cards.
    Direct,
    /// `t >= n/2`: computed on the complemented cards at index `n - 1 - t`.
    Complement,
}

/// The proxies `d_t*`, each within `[d_t/4 - 1, d_{t-1} + d_t + d_{t+1}]`
/// whenever `k <= n/3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtStarTable {
    pub values: Vec<u64>,
    pub side: Vec<StarSide>,
    /// Whether `k <= n/3`, under which the lower bound is guaranteed.
    pub hypothesis_holds: bool,
}

impl DtStarTable {
    pub fn from_stats(stats: &CardStats) -> Self {
        let n = stats.n;
        let hypothesis_holds = 3 * stats.k <= n;
        if !hypothesis_holds {
            log::warn!("d_t* with k = {} > n/3 = {}: lower bound not guaranteed", stats.k, n / 3);
        }
        let comp = stats.complemented();
        let (values, side) = (0..n)
            .map(|t| {
                if 2 * t < n {
                    (stats.degree_max[t], StarSide::Direct)
                } else {
                    (comp.degree_max[n - 1 - t], StarSide::Complement)
                }
            })
            .unzip();
        DtStarTable { values, side, hypothesis_holds }
    }

    pub fn get(&self, t: usize) -> u64 {
        self.values[t]
    }
}

pub fn dt_star(deck: &crate::deck::PartialDeck) -> DtStarTable {
    DtStarTable::from_stats(&crate::deck::card_stats(deck))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::{deal, drop_cards, DropStrategy};
    use crate::graph::Graph;

    #[test]
    fn thresholds_are_exact_integers() {
        assert!(is_large_value(31, 900) && !is_large_value(30, 900));
        // (3/4) * 30 = 22.5
        assert!(is_small_value(22, 900) && !is_small_value(23, 900));
        assert_eq!(ceil_sqrt(400), 20);
        assert_eq!(ceil_sqrt(401), 21);
        assert_eq!(ceil_sqrt(1000), 32);
    }

    #[test]
    fn star_values_on_small_decks() {
        let p4 = deal(&Graph::path(4)).unwrap();
        let without_last = drop_cards(&p4, 1, DropStrategy::MaxEdges, 0).unwrap();
        // MaxEdges with ties by index drops the first P_3; both P_3 cards look alike.
        let t = dt_star(&without_last);
        assert_eq!(t.get(1), 2);

        let k5 = dt_star(&deal(&Graph::complete(5)).unwrap());
        assert_eq!(k5.side[3], StarSide::Complement);
        assert_eq!(k5.get(3), 0);
        assert_eq!(k5.get(4), 4);

        let e = dt_star(&deal(&Graph::empty(7)).unwrap());
        assert_eq!(e.values, vec![6, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn complement_side_is_shifted_max() {
        // For t >= n/2 the complemented cards give max_i d_{t-1}(G_i).
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4), (5, 6), (2, 5)]).unwrap();
        let stats = crate::deck::card_stats(&deal(&g).unwrap());
        let table = DtStarTable::from_stats(&stats);
        for t in 4..7 {
            assert_eq!(table.get(t), stats.degree_max[t - 1]);
        }
    }

    #[test]
    fn params_defaults_and_overrides() {
        let p = RecoveryParams::new(1000, 1);
        assert_eq!(p.cap, 3);
        assert_eq!((p.lo, p.hi), (334, 666));
        assert_eq!(p.epsilon_bound, 6);
        let ov: ParamOverrides = "beta=0.25,K=5".parse().unwrap();
        let q = RecoveryParams::resolve(1000, 2, &ov).unwrap();
        assert_eq!((q.cap, q.epsilon_bound), (5, 20));
        assert!((q.gamma - 0.8125).abs() < 1e-12);
        assert!("K=1".parse::<ParamOverrides>().map(|o| RecoveryParams::resolve(10, 0, &o)).unwrap().is_err());
        assert!("beta=1".parse::<ParamOverrides>().map(|o| RecoveryParams::resolve(10, 0, &o)).unwrap().is_err());
        assert!("gamma=1".parse::<ParamOverrides>().is_err());
    }

    #[test]
    fn conflicting_exact_values_are_flagged() {
        let mut k = KnownDegrees::unknown(10);
        k.set_exact(3, 2);
        k.set_exact(3, 2);
        assert!(!k.has_conflict());
        k.set_exact(3, 1);
        assert!(k.has_conflict());
        assert_eq!(k.exact(3), Some(2));
    }
}
