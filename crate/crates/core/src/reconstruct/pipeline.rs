use super::estimate::{estimate_size, estimated_histogram, EstimatedDegreeHistogram};
use super::extend::extend_known;
use super::known::{KnownDegrees, KnownSummary, ParamOverrides, RecoveryParams};
use super::middle::recover_exact_middle;
use super::shift::{certified_span, detect_shift, find_window, ShiftError};
use crate::deck::{profiles, CardProfile, CardStats, PartialDeck};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

/// Set this variable to record wall-clock times; otherwise `elapsed_ms` is 0
/// so that reports are reproducible byte for byte.
pub const TIMING_ENV: &str = "DECKRECON_TIMING";

pub(crate) fn timing_enabled() -> bool {
    static ON: OnceLock<bool> = OnceLock::new();
    *ON.get_or_init(|| std::env::var_os(TIMING_ENV).is_some())
}

pub(crate) fn elapsed_ms(start: Instant) -> u64 {
    if timing_enabled() {
        start.elapsed().as_millis() as u64
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    ExactSize(u64),
    Ambiguous { stage: String, detail: String },
    Failed { stage: String, detail: String },
}

/// How an exact answer was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// No missing cards: the estimate is exact.
    FullDeck,
    /// Every `d_t` certified; `m` is half the degree sum.
    DegreeSequence,
    /// `m = m~ - alpha` with `alpha` from shift detection.
    Shift,
    /// All graphs of the order checked against the cards.
    Exhaustive,
    /// Agreement of subset runs on a collection with false cards.
    Subsets,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub m_tilde: Option<u64>,
    pub alpha_max: Option<u64>,
    pub alpha: Option<u64>,
    pub known: Option<KnownSummary>,
    pub window: Option<(usize, usize)>,
    pub scores: BTreeMap<u64, u64>,
    pub route: Option<Route>,
    /// Set when the answer rests on a search that is not exhaustive.
    pub heuristic: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub outcome: Outcome,
    pub diagnostics: Diagnostics,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    outcome: &'static str,
    m: Option<u64>,
    m_tilde: Option<u64>,
    alpha: Option<u64>,
    stage: Option<&'a str>,
    detail: Option<&'a str>,
    window: Option<[usize; 2]>,
    scores: &'a BTreeMap<u64, u64>,
    known_summary: Option<KnownSummary>,
    route: Option<Route>,
    heuristic: bool,
    elapsed_ms: u64,
}

impl ReconstructionReport {
    pub fn exact(m: u64, diagnostics: Diagnostics) -> Self {
        ReconstructionReport { outcome: Outcome::ExactSize(m), diagnostics }
    }

    pub fn failed(stage: &str, detail: impl Into<String>, diagnostics: Diagnostics) -> Self {
        ReconstructionReport {
            outcome: Outcome::Failed { stage: stage.to_owned(), detail: detail.into() },
            diagnostics,
        }
    }

    pub fn ambiguous(stage: &str, detail: impl Into<String>, diagnostics: Diagnostics) -> Self {
        ReconstructionReport {
            outcome: Outcome::Ambiguous { stage: stage.to_owned(), detail: detail.into() },
            diagnostics,
        }
    }

    pub fn exact_size(&self) -> Option<u64> {
        match self.outcome {
            Outcome::ExactSize(m) => Some(m),
            _ => None,
        }
    }

    pub fn stage(&self) -> Option<&str> {
        match &self.outcome {
            Outcome::ExactSize(_) => None,
            Outcome::Ambiguous { stage, .. } | Outcome::Failed { stage, .. } => Some(stage),
        }
    }

    pub fn outcome_tag(&self) -> &'static str {
        match self.outcome {
            Outcome::ExactSize(_) => "exact_size",
            Outcome::Ambiguous { .. } => "ambiguous",
            Outcome::Failed { .. } => "failed",
        }
    }

    /// Single-line JSON object.
    pub fn to_json(&self) -> String {
        let detail = match &self.outcome {
            Outcome::ExactSize(_) => None,
            Outcome::Ambiguous { detail, .. } | Outcome::Failed { detail, .. } => Some(detail.as_str()),
        };
        let d = &self.diagnostics;
        let json = ReportJson {
            outcome: self.outcome_tag(),
            m: self.exact_size(),
            m_tilde: d.m_tilde,
            alpha: d.alpha,
            stage: self.stage(),
            detail,
            window: d.window.map(|(l, r)| [l, r]),
            scores: &d.scores,
            known_summary: d.known,
            route: d.route,
            heuristic: d.heuristic,
            elapsed_ms: d.elapsed_ms,
        };
        serde_json::to_string(&json).expect("report serializes")
    }
}

pub fn reconstruct_size(deck: &PartialDeck) -> ReconstructionReport {
    reconstruct_size_with(deck, &ParamOverrides::default())
}

pub fn reconstruct_size_with(deck: &PartialDeck, overrides: &ParamOverrides) -> ReconstructionReport {
    reconstruct_profiles(deck.original_order(), &profiles(deck), overrides)
}

/// The pipeline on card profiles, which carry everything it reads.
pub fn reconstruct_profiles(n: usize, cards: &[CardProfile], overrides: &ParamOverrides) -> ReconstructionReport {
    let start = Instant::now();
    let mut report = run(n, cards, overrides);
    report.diagnostics.elapsed_ms = elapsed_ms(start);
    report
}

fn run(n: usize, cards: &[CardProfile], overrides: &ParamOverrides) -> ReconstructionReport {
    let mut diag = Diagnostics::default();
    let stats = match CardStats::from_profiles(n, cards) {
        Ok(s) => s,
        Err(e) => return ReconstructionReport::failed("input", e.to_string(), diag),
    };
    let k = stats.k;
    let est = match estimate_size(&stats) {
        Ok(e) => e,
        Err(e) => return ReconstructionReport::failed("estimate", e.to_string(), diag),
    };
    diag.m_tilde = Some(est.m_tilde);
    diag.alpha_max = Some(est.alpha_max);
    let hist = match estimated_histogram(&stats, &est) {
        Ok(h) => h,
        Err(e) => return ReconstructionReport::failed("histogram", e.to_string(), diag),
    };
    let params = match RecoveryParams::resolve(n, k, overrides) {
        Ok(p) => p,
        Err(e) => return ReconstructionReport::failed("params", e.to_string(), diag),
    };

    if est.alpha_max == 0 {
        // Only k = 0 gets here; the histogram is then the spectrum itself.
        let total: u64 = hist.total();
        let degree_sum: u64 = hist.counts().iter().enumerate().map(|(t, &c)| t as u64 * c).sum();
        diag.alpha = Some(0);
        if total != n as u64 || degree_sum != 2 * est.m_tilde {
            let detail = format!("degree sum {degree_sum} of {total} cards against m~ = {}", est.m_tilde);
            return ReconstructionReport::failed("cross-check", detail, diag);
        }
        diag.route = Some(Route::FullDeck);
        return ReconstructionReport::exact(est.m_tilde, diag);
    }

    let middle = recover_exact_middle(&stats, &params);
    let known = extend_known(&stats, &middle);
    diag.known = Some(known.summary());
    if known.has_conflict() {
        return ReconstructionReport::failed("cross-check", "certified degree counts contradict each other", diag);
    }

    if known.all_exact() {
        return match degree_sequence_size(&known, &hist, est.m_tilde, est.alpha_max, k) {
            Ok((m, alpha)) => {
                diag.alpha = Some(alpha);
                diag.window = Some((0, n - 1));
                diag.route = Some(Route::DegreeSequence);
                ReconstructionReport::exact(m, diag)
            }
            Err(detail) => ReconstructionReport::failed("cross-check", detail, diag),
        };
    }

    let Some(window) = find_window(&known, k, params.lo, params.hi) else {
        let detail = format!("no {} consecutive small exact counts in [{}, {}]", (2 * k).max(2), params.lo, params.hi);
        return ReconstructionReport::failed("window", detail, diag);
    };
    let span = certified_span(&known, window);
    diag.window = Some(span);
    if !(span.0..=span.1).any(|t| known.is_large(t)) {
        let detail = format!("certified span [{}, {}] reaches no large count", span.0, span.1);
        return ReconstructionReport::failed("extension", detail, diag);
    }
    match detect_shift(&known, &hist, span, k, &est) {
        Ok(shift) => {
            diag.scores = shift.scores;
            diag.alpha = Some(shift.alpha);
            diag.route = Some(Route::Shift);
            ReconstructionReport::exact(est.m_tilde - shift.alpha, diag)
        }
        Err(e) => {
            let stage = match e {
                ShiftError::NoShift(_) => "no-shift",
                ShiftError::MultiShift(_) => "multi-shift",
            };
            diag.scores = e.scores().clone();
            let detail = format!("scores over [{}, {}] with tolerance k = {k}", span.0, span.1);
            ReconstructionReport::ambiguous(stage, detail, diag)
        }
    }
}

/// `m` from a fully certified spectrum, checked against the estimate.
fn degree_sequence_size(
    known: &KnownDegrees,
    hist: &EstimatedDegreeHistogram,
    m_tilde: u64,
    alpha_max: u64,
    k: usize,
) -> Result<(u64, u64), String> {
    let n = known.n();
    let d: Vec<u64> = (0..n).map(|t| known.exact(t).expect("all exact")).collect();
    let count: u64 = d.iter().sum();
    if count != n as u64 {
        return Err(format!("recovered spectrum counts {count} vertices, not {n}"));
    }
    let degree_sum: u64 = d.iter().enumerate().map(|(t, &c)| t as u64 * c).sum();
    if !degree_sum.is_multiple_of(2) {
        return Err(format!("odd degree sum {degree_sum}"));
    }
    let m = degree_sum / 2;
    let Some(alpha) = m_tilde.checked_sub(m).filter(|&a| a <= alpha_max) else {
        return Err(format!("m = {m} outside [m~ - {alpha_max}, m~] with m~ = {m_tilde}"));
    };
    // Each given card carries its vertex's degree shifted by alpha, and each
    // missing card removes one vertex, so the L1 distance is exactly k.
    let len = hist.counts().len().max(n + alpha as usize);
    let l1: u64 = (0..len)
        .map(|j| {
            let truth = j.checked_sub(alpha as usize).and_then(|t| d.get(t)).copied().unwrap_or(0);
            truth.abs_diff(hist.get(j))
        })
        .sum();
    if l1 != k as u64 {
        return Err(format!("shifted histogram differs from the spectrum by {l1}, expected {k}"));
    }
    Ok((m, alpha))
}
