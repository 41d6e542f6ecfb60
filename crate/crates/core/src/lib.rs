//! Mining and analysis of paraphrase candidates from reused image captions.
//!
//! An image that appears on several encyclopedia pages usually carries a
//! different caption on each page. This crate treats the shared image as a
//! pivot: it streams a MediaWiki XML export, pulls image references and
//! captions out of the Wikitext, filters them, pairs the captions that
//! describe the same image, and scores every pair for syntactic and semantic
//! similarity.
//!
//! The stages, in pipeline order:
//!
//! | module | stage |
//! |--------|-------|
//! | [`dump`] | stream pages and revisions out of an export dump |
//! | [`wikitext`] | extract image references, captions and alt texts |
//! | [`pos`] | tag captions and classify sentences vs. fragments |
//! | [`pairs`] | reference-count and caption filters, clustering, pairing, dedup |
//! | [`syntactic`] | ROUGE-1, ROUGE-L, BLEU |
//! | [`semantic`] | Word Mover similarity, greedy token matching, sentence cosine |
//! | [`embedding`] | word-vector files and the embedding service protocol |
//! | [`analysis`] | corpus statistics, characteristic maps, correlation, reports |
//!
//! The numeric modules are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! command-line tool uses.

pub mod analysis;
pub mod dump;
pub mod embedding;
pub mod pairs;
pub mod pos;
pub mod score;
pub mod semantic;
pub mod syntactic;
pub mod text;
pub mod wikitext;

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point type the similarity and statistics code is written against.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Lossy conversion from `f64`, used for literals and counts.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {}

pub use dump::{count_dump_stats, stream_pages, DumpError, DumpMode, DumpStats, WikiPage};
pub use pairs::{CandidatePair, CaptionRecord, FilterReport, Tier, TierConfig};
pub use pos::{PennTag, SentenceVerdict, TaggedCaption, Tagger};
pub use wikitext::{clean_caption, normalize_image_uri, CaptionType, ImageReference};

/// Word-vector table over `f64`.
pub type WordVectors = semantic::WordVectorTable<f64>;
/// Optimal transport plan over `f64`.
pub type Plan = semantic::TransportPlan<f64>;
/// Per-pair score record over `f64`.
pub type Scores = analysis::ScoreVector<f64>;
/// Corpus statistics over `f64`.
pub type Report = analysis::CorpusReport<f64>;
/// Threshold calibration result over `f64`.
pub type Calibration = analysis::Calibration<f64>;
