//! Corpus statistics, threshold subsets, characteristic maps, correlation
//! and threshold calibration over per-pair scores.

mod render;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Scalar;

pub use render::{read_ratings, render_reports, Rating, ReportFiles};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("no scores to aggregate")]
    EmptyCorpus,
    #[error("series of length {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("series has zero variance")]
    ZeroVariance,
    #[error("labels contain a single class")]
    SingleClassInput,
}

/// All scores of one pair. Semantic fields are absent when their inputs were
/// not configured or the pair could not be embedded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreVector<F> {
    pub pair_id: u64,
    pub rouge1: F,
    #[serde(rename = "rougeL")]
    pub rouge_l: F,
    pub bleu: F,
    pub syn_avg: F,
    pub wms: Option<F>,
    pub bert_f: Option<F>,
    pub st: Option<F>,
    pub sem_avg: Option<F>,
    pub delta: Option<F>,
    pub len_a: usize,
    pub len_b: usize,
}

impl<F: Scalar> ScoreVector<F> {
    pub fn mean_len(&self) -> F {
        F::from_count(self.len_a + self.len_b) / F::lit(2.0)
    }
}

/// Pairs whose sentence score exceeds a threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSubset<F> {
    pub kept: Vec<ScoreVector<F>>,
    /// Kept pairs over pairs that have a sentence score.
    pub fraction: F,
    /// Pairs without a sentence score, excluded from the fraction.
    pub unscored: usize,
}

/// Keeps vectors with `st > tau`.
pub fn threshold_subset<F: Scalar>(scores: &[ScoreVector<F>], tau: F) -> ThresholdSubset<F> {
    let scored = scores.iter().filter(|s| s.st.is_some()).count();
    let kept: Vec<ScoreVector<F>> = scores
        .iter()
        .filter(|s| s.st.is_some_and(|st| st > tau))
        .cloned()
        .collect();
    let fraction = if scored == 0 {
        F::zero()
    } else {
        F::from_count(kept.len()) / F::from_count(scored)
    };
    ThresholdSubset {
        kept,
        fraction,
        unscored: scores.len() - scored,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd<F> {
    pub mean: F,
    /// Population standard deviation.
    pub std: F,
}

impl<F: Scalar> MeanStd<F> {
    pub fn of(values: &[F]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = F::from_count(values.len());
        let mean = values.iter().fold(F::zero(), |s, &v| s + v) / n;
        let var = values.iter().fold(F::zero(), |s, &v| s + (v - mean) * (v - mean)) / n;
        Some(MeanStd { mean, std: var.sqrt() })
    }
}

/// Named score columns, in report order.
pub const METRICS: [&str; 9] = [
    "rouge1", "rougeL", "bleu", "syn_avg", "wms", "bert_f", "st", "sem_avg", "delta",
];

impl<F: Scalar> ScoreVector<F> {
    pub fn metric(&self, name: &str) -> Option<F> {
        match name {
            "rouge1" => Some(self.rouge1),
            "rougeL" => Some(self.rouge_l),
            "bleu" => Some(self.bleu),
            "syn_avg" => Some(self.syn_avg),
            "wms" => self.wms,
            "bert_f" => self.bert_f,
            "st" => self.st,
            "sem_avg" => self.sem_avg,
            "delta" => self.delta,
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusReport<F> {
    pub n: usize,
    /// Fraction of pairs with a sentence score above the threshold.
    pub pct_over_threshold: F,
    pub length: MeanStd<F>,
    /// One entry per name in [`METRICS`]; `None` when no pair has the score.
    pub metrics: Vec<(&'static str, Option<MeanStd<F>>)>,
}

impl<F: Scalar> CorpusReport<F> {
    pub fn metric(&self, name: &str) -> Option<MeanStd<F>> {
        self.metrics.iter().find(|(n, _)| *n == name).and_then(|(_, m)| *m)
    }
}

pub fn corpus_stats<F: Scalar>(scores: &[ScoreVector<F>], tau: F) -> Result<CorpusReport<F>, AnalysisError> {
    if scores.is_empty() {
        return Err(AnalysisError::EmptyCorpus);
    }
    let lengths: Vec<F> = scores.iter().map(ScoreVector::mean_len).collect();
    let metrics = METRICS
        .iter()
        .map(|&name| {
            let values: Vec<F> = scores.iter().filter_map(|s| s.metric(name)).collect();
            (name, MeanStd::of(&values))
        })
        .collect();
    Ok(CorpusReport {
        n: scores.len(),
        pct_over_threshold: threshold_subset(scores, tau).fraction,
        length: MeanStd::of(&lengths).expect("non-empty"),
        metrics,
    })
}

/// Upper edges of levels 0 to 3; level 4 is `[0.8, 1]`.
pub const BIN_EDGES: [f64; 4] = [0.2, 0.4, 0.6, 0.8];

pub fn level<F: Scalar>(x: F) -> usize {
    BIN_EDGES.iter().filter(|&&e| x >= F::lit(e)).count()
}

/// Joint counts of syntactic level (rows) by semantic level (columns).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicMap {
    pub grid: [[u64; 5]; 5],
}

impl CharacteristicMap {
    pub fn from_levels(levels: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut map = CharacteristicMap::default();
        for (syn, sem) in levels {
            map.grid[syn.min(4)][sem.min(4)] += 1;
        }
        map
    }

    pub fn total(&self) -> u64 {
        self.grid.iter().flatten().sum()
    }

    pub fn syn_marginal(&self) -> [u64; 5] {
        self.grid.map(|row| row.iter().sum())
    }

    pub fn sem_marginal(&self) -> [u64; 5] {
        std::array::from_fn(|j| self.grid.iter().map(|row| row[j]).sum())
    }
}

/// Bins `(syn_avg, sem_avg)` of every pair that has both.
pub fn characteristic_map<F: Scalar>(scores: &[ScoreVector<F>]) -> CharacteristicMap {
    CharacteristicMap::from_levels(
        scores
            .iter()
            .filter_map(|s| s.sem_avg.map(|sem| (level(s.syn_avg), level(sem)))),
    )
}

/// Sample Pearson correlation.
pub fn pearson<F: Scalar>(x: &[F], y: &[F]) -> Result<F, AnalysisError> {
    if x.len() != y.len() {
        return Err(AnalysisError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(AnalysisError::ZeroVariance);
    }
    let n = F::from_count(x.len());
    let mx = x.iter().fold(F::zero(), |s, &v| s + v) / n;
    let my = y.iter().fold(F::zero(), |s, &v| s + v) / n;
    let (mut sxy, mut sxx, mut syy) = (F::zero(), F::zero(), F::zero());
    for (&a, &b) in x.iter().zip(y) {
        sxy = sxy + (a - mx) * (b - my);
        sxx = sxx + (a - mx) * (a - mx);
        syy = syy + (b - my) * (b - my);
    }
    if sxx == F::zero() || syy == F::zero() {
        return Err(AnalysisError::ZeroVariance);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).max(-F::one()).min(F::one()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration<F> {
    pub threshold: F,
    pub precision: F,
    pub recall: F,
    pub f1: F,
}

/// Precision and recall of the classifier `st >= tau`.
pub fn precision_recall_at<F: Scalar>(labeled: &[(F, bool)], tau: F) -> Calibration<F> {
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut fneg = 0usize;
    for &(st, positive) in labeled {
        match (st >= tau, positive) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fneg += 1,
            (false, false) => {}
        }
    }
    let ratio = |a: usize, b: usize| {
        if b == 0 {
            F::zero()
        } else {
            F::from_count(a) / F::from_count(b)
        }
    };
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fneg);
    let f1 = if precision + recall == F::zero() {
        F::zero()
    } else {
        F::lit(2.0) * precision * recall / (precision + recall)
    };
    Calibration {
        threshold: tau,
        precision,
        recall,
        f1,
    }
}

/// Sweeps the threshold over the observed scores and returns the one with
/// the highest F1; ties go to the higher threshold.
pub fn calibrate_threshold<F: Scalar>(labeled: &[(F, bool)]) -> Result<Calibration<F>, AnalysisError> {
    let positives = labeled.iter().filter(|(_, p)| *p).count();
    if positives == 0 || positives == labeled.len() {
        return Err(AnalysisError::SingleClassInput);
    }
    let mut taus: Vec<F> = labeled.iter().map(|(s, _)| *s).collect();
    taus.sort_by(|a, b| a.partial_cmp(b).expect("finite scores"));
    taus.dedup();
    let mut best: Option<Calibration<F>> = None;
    for tau in taus {
        let c = precision_recall_at(labeled, tau);
        if best.is_none_or(|b| c.f1 >= b.f1) {
            best = Some(c);
        }
    }
    Ok(best.expect("at least two labeled points"))
}
