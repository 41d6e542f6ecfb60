//! Reference-count and caption filters, clustering by image, pairing and
//! deduplication.

mod pipeline;
mod report;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dump::DumpMode;
use crate::pos::{classify_caption, has_verb, Tagger};
use crate::text::{near_dup_key, word_count};
use crate::wikitext::{CaptionType, ImageReference};

pub use pipeline::{cluster_references, run_filters, run_pipeline, PipelineError, PipelineOutput};
pub use report::{FilterReport, FilterRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Gold,
    Silver,
    Bronze,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Gold => "gold",
            Tier::Silver => "silver",
            Tier::Bronze => "bronze",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tier {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gold" => Ok(Tier::Gold),
            "silver" => Ok(Tier::Silver),
            "bronze" => Ok(Tier::Bronze),
            other => Err(ConfigError::UnknownTier(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaptionFilter {
    /// The ordered sentence rules.
    SentenceRules,
    /// Any verb or modal tag.
    VerbOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("unknown tier {0:?} (expected gold, silver or bronze)")]
    UnknownTier(String),
    #[error("reference bounds must satisfy 2 <= min <= max, got min={min} max={max}")]
    BadBounds { min: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TierConfig {
    pub tier: Tier,
    pub min_refs: usize,
    pub max_refs: usize,
    pub caption_filter: CaptionFilter,
    pub dump_mode: DumpMode,
    /// References counted per page toward the bounds; `None` counts all.
    pub max_refs_per_page: Option<usize>,
    pub min_words: usize,
}

impl TierConfig {
    pub fn gold() -> Self {
        TierConfig {
            tier: Tier::Gold,
            min_refs: 2,
            max_refs: 10,
            caption_filter: CaptionFilter::SentenceRules,
            dump_mode: DumpMode::LatestOnly,
            max_refs_per_page: None,
            min_words: 6,
        }
    }

    pub fn silver() -> Self {
        TierConfig {
            tier: Tier::Silver,
            caption_filter: CaptionFilter::VerbOnly,
            ..Self::gold()
        }
    }

    pub fn bronze() -> Self {
        TierConfig {
            tier: Tier::Bronze,
            max_refs: 180,
            caption_filter: CaptionFilter::VerbOnly,
            dump_mode: DumpMode::AllRevisions,
            max_refs_per_page: Some(18),
            ..Self::gold()
        }
    }

    pub fn preset(tier: Tier) -> Self {
        match tier {
            Tier::Gold => Self::gold(),
            Tier::Silver => Self::silver(),
            Tier::Bronze => Self::bronze(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.min_refs < 2 || self.min_refs > self.max_refs {
            return Err(ConfigError::BadBounds {
                min: self.min_refs,
                max: self.max_refs,
            });
        }
        Ok(())
    }
}

/// One cleaned caption or alt text of one reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaptionRecord {
    pub text: String,
    pub kind: CaptionType,
    pub page_title: String,
    pub page_id: u64,
    pub revision_id: u64,
    pub word_count: usize,
    /// Index of the reference this record came from, unique within one run.
    pub ref_id: usize,
}

impl CaptionRecord {
    pub fn new(text: &str, kind: CaptionType, reference: &ImageReference, ref_id: usize) -> Self {
        CaptionRecord {
            text: text.to_owned(),
            kind,
            page_title: reference.page_title.clone(),
            page_id: reference.page_id,
            revision_id: reference.revision_id,
            word_count: word_count(text),
            ref_id,
        }
    }

    fn order_key(&self) -> (&str, u64, u64, &str, usize) {
        (
            &self.text,
            self.page_id,
            self.revision_id,
            &self.page_title,
            self.ref_id,
        )
    }
}

/// A reference inside a cluster with whatever caption records survive so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterRef {
    pub id: usize,
    pub page_id: u64,
    pub records: Vec<CaptionRecord>,
}

/// All references to one image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaptionCluster {
    pub image_uri: String,
    pub refs: Vec<ClusterRef>,
}

impl CaptionCluster {
    pub fn records(&self) -> impl Iterator<Item = &CaptionRecord> {
        self.refs.iter().flat_map(|r| r.records.iter())
    }

    /// Reference count used against the tier bounds. With a per-page cap,
    /// each page contributes at most `cap` references.
    pub fn bounded_ref_count(&self, per_page: Option<usize>) -> usize {
        match per_page {
            None => self.refs.len(),
            Some(cap) => {
                let mut per: HashMap<u64, usize> = HashMap::new();
                for r in &self.refs {
                    *per.entry(r.page_id).or_default() += 1;
                }
                per.values().map(|&n| n.min(cap)).sum()
            }
        }
    }

    /// Σ over caption types of C(k, 2).
    pub fn candidate_count(&self) -> u64 {
        CaptionType::ALL
            .iter()
            .map(|kind| {
                let k = self.records().filter(|r| r.kind == *kind).count() as u64;
                k * k.saturating_sub(1) / 2
            })
            .sum()
    }
}

/// Keeps clusters whose bounded reference count lies in `min..=max`.
pub fn filter_by_ref_count(
    clusters: Vec<CaptionCluster>,
    min: usize,
    max: usize,
    per_page: Option<usize>,
) -> Vec<CaptionCluster> {
    clusters
        .into_iter()
        .filter(|c| (min..=max).contains(&c.bounded_ref_count(per_page)))
        .collect()
}

/// The tier's caption-content test on one record.
pub fn caption_passes(record: &CaptionRecord, filter: CaptionFilter, tagger: &dyn Tagger) -> bool {
    let tagged = match tagger.tag(&record.text) {
        Ok(t) => t,
        Err(e) => {
            log::debug!("untaggable caption {:?}: {e}", record.text);
            return false;
        }
    };
    match filter {
        CaptionFilter::SentenceRules => classify_caption(&tagged).is_sentence,
        CaptionFilter::VerbOnly => has_verb(&tagged),
    }
}

/// Drops empty records, records under the word minimum, and records that fail
/// the tier's caption test.
pub fn filter_captions(records: Vec<CaptionRecord>, config: &TierConfig, tagger: &dyn Tagger) -> Vec<CaptionRecord> {
    records
        .into_iter()
        .filter(|r| !r.text.is_empty())
        .filter(|r| r.word_count >= config.min_words)
        .filter(|r| caption_passes(r, config.caption_filter, tagger))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePair {
    pub image_uri: String,
    pub kind: CaptionType,
    pub tier: Tier,
    /// `a.text <= b.text`.
    pub a: CaptionRecord,
    pub b: CaptionRecord,
}

impl CandidatePair {
    fn new(image_uri: &str, tier: Tier, x: &CaptionRecord, y: &CaptionRecord) -> Self {
        let (a, b) = if x.order_key() <= y.order_key() { (x, y) } else { (y, x) };
        CandidatePair {
            image_uri: image_uri.to_owned(),
            kind: a.kind,
            tier,
            a: a.clone(),
            b: b.clone(),
        }
    }

    /// Total order used for output and for picking duplicate representatives.
    pub fn sort_key(&self) -> impl Ord + '_ {
        (&self.image_uri, self.kind, self.a.order_key(), self.b.order_key())
    }
}

/// All same-type unordered pairs of the cluster's records.
pub fn build_pairs(cluster: &CaptionCluster, tier: Tier) -> Vec<CandidatePair> {
    let mut out = Vec::new();
    for kind in CaptionType::ALL {
        let records: Vec<&CaptionRecord> = cluster.records().filter(|r| r.kind == kind).collect();
        for (i, x) in records.iter().enumerate() {
            for y in &records[i + 1..] {
                out.push(CandidatePair::new(&cluster.image_uri, tier, x, y));
            }
        }
    }
    out
}

/// Keeps the smallest pair (by [`CandidatePair::sort_key`]) of every group
/// sharing `key`, in sorted order.
fn keep_first_by<K: Ord>(mut pairs: Vec<CandidatePair>, key: impl Fn(&CandidatePair) -> K) -> Vec<CandidatePair> {
    pairs.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    let mut seen: BTreeMap<K, ()> = BTreeMap::new();
    pairs.retain(|p| seen.insert(key(p), ()).is_none());
    pairs
}

/// Filter row 7: one pair per distinct `(type, a.text, b.text)` across the corpus.
pub fn unique_candidates(pairs: Vec<CandidatePair>) -> Vec<CandidatePair> {
    keep_first_by(pairs, |p| (p.kind, p.a.text.clone(), p.b.text.clone()))
}

/// Filter row 8: drops pairs with byte-identical texts.
pub fn divergent_captions(pairs: Vec<CandidatePair>) -> Vec<CandidatePair> {
    pairs.into_iter().filter(|p| p.a.text != p.b.text).collect()
}

/// Filter row 9: drops near-duplicates, then keeps one pair per distinct
/// normalized unordered pair.
pub fn significant_diff(pairs: Vec<CandidatePair>) -> Vec<CandidatePair> {
    let pairs: Vec<CandidatePair> = pairs
        .into_iter()
        .filter(|p| near_dup_key(&p.a.text) != near_dup_key(&p.b.text))
        .collect();
    keep_first_by(pairs, |p| {
        let (x, y) = (near_dup_key(&p.a.text), near_dup_key(&p.b.text));
        (p.kind, x.clone().min(y.clone()), x.max(y))
    })
}

/// Rows 7 to 9 in order.
pub fn dedup_pairs(pairs: Vec<CandidatePair>) -> Vec<CandidatePair> {
    significant_diff(divergent_captions(unique_candidates(pairs)))
}

/// One side of a pair in the dataset JSONL.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSide {
    pub text: String,
    pub page: String,
    pub rev_id: u64,
}

/// A dataset JSONL line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairLine {
    pub image: String,
    #[serde(rename = "type")]
    pub kind: CaptionType,
    pub tier: Tier,
    pub a: PairSide,
    pub b: PairSide,
}

impl From<&CandidatePair> for PairLine {
    fn from(p: &CandidatePair) -> Self {
        let side = |r: &CaptionRecord| PairSide {
            text: r.text.clone(),
            page: r.page_title.clone(),
            rev_id: r.revision_id,
        };
        PairLine {
            image: p.image_uri.clone(),
            kind: p.kind,
            tier: p.tier,
            a: side(&p.a),
            b: side(&p.b),
        }
    }
}
