//! Scores candidate pairs with every configured metric.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::analysis::ScoreVector;
use crate::embedding::{EmbeddingError, EmbeddingSource, TokenVector};
use crate::pairs::PairLine;
use crate::semantic::{delta, greedy_match_f, sem_avg, sentence_cos, wmd, wms, WordVectorTable};
use crate::syntactic::{syntactic_scores, TokenSeq};
use crate::text::word_count;
use crate::Scalar;

/// What to compute beyond the syntactic scores.
pub struct Scorer<'a, F> {
    /// Static word vectors for Word Mover similarity.
    pub vectors: Option<&'a WordVectorTable<F>>,
    /// Contextual embeddings for the greedy-matching and sentence scores.
    pub embeddings: Option<&'a dyn EmbeddingSource>,
    /// Baseline rescaling of the greedy-matching score.
    pub baseline: F,
}

impl<F: Scalar> Default for Scorer<'_, F> {
    fn default() -> Self {
        Scorer {
            vectors: None,
            embeddings: None,
            baseline: F::zero(),
        }
    }
}

/// Scored pairs plus the ids of pairs that could not be scored at all.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRun<F> {
    pub scores: Vec<ScoreVector<F>>,
    pub unscored: Vec<u64>,
}

struct Embedded {
    sentences: HashMap<String, Vec<f64>>,
    tokens: HashMap<String, Vec<TokenVector>>,
}

fn to_scalar<F: Scalar>(v: &[f64]) -> Vec<F> {
    v.iter().map(|&x| F::lit(x)).collect()
}

impl<F: Scalar> Scorer<'_, F> {
    fn embed(&self, pairs: &[PairLine]) -> Result<Option<Embedded>, EmbeddingError> {
        let Some(source) = self.embeddings else {
            return Ok(None);
        };
        let texts: Vec<String> = pairs
            .iter()
            .flat_map(|p| [p.a.text.clone(), p.b.text.clone()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let sentences = source.sentence_vectors(&texts)?;
        let tokens = source.token_vectors(&texts)?;
        Ok(Some(Embedded {
            sentences: texts.iter().cloned().zip(sentences).collect(),
            tokens: texts.into_iter().zip(tokens).collect(),
        }))
    }

    /// Scores pairs; `pair_id` is the position in `pairs`.
    pub fn score(&self, pairs: &[PairLine]) -> Result<ScoreRun<F>, EmbeddingError> {
        let embedded = self.embed(pairs)?;
        let results: Vec<Result<ScoreVector<F>, u64>> = pairs
            .par_iter()
            .enumerate()
            .map(|(i, p)| self.score_one(i as u64, p, embedded.as_ref()).ok_or(i as u64))
            .collect();
        let mut run = ScoreRun {
            scores: Vec::with_capacity(pairs.len()),
            unscored: Vec::new(),
        };
        for r in results {
            match r {
                Ok(s) => run.scores.push(s),
                Err(id) => run.unscored.push(id),
            }
        }
        Ok(run)
    }

    fn score_one(&self, pair_id: u64, p: &PairLine, embedded: Option<&Embedded>) -> Option<ScoreVector<F>> {
        let (ta, tb) = (TokenSeq::new(&p.a.text), TokenSeq::new(&p.b.text));
        let syn = match syntactic_scores::<F>(&ta, &tb) {
            Ok(s) => s,
            Err(e) => {
                log::warn!("pair {pair_id} not scored: {e}");
                return None;
            }
        };
        let wms_score = self
            .vectors
            .and_then(|v| wmd(&ta, &tb, v).map_err(|e| log::debug!("pair {pair_id}: {e}")).ok())
            .and_then(|d| wms(d).ok());
        let (bert_f, st) = match embedded {
            None => (None, None),
            Some(e) => {
                let tok = |t: &str| -> Vec<Vec<F>> {
                    e.tokens
                        .get(t)
                        .map(|v| v.iter().map(|tv| to_scalar(&tv.vector)).collect())
                        .unwrap_or_default()
                };
                let bert = greedy_match_f(&tok(&p.a.text), &tok(&p.b.text), self.baseline).ok();
                let st = match (e.sentences.get(&p.a.text), e.sentences.get(&p.b.text)) {
                    (Some(x), Some(y)) => sentence_cos(&to_scalar::<F>(x), &to_scalar(y)).ok(),
                    _ => None,
                };
                (bert, st)
            }
        };
        let sem = match (wms_score, bert_f, st) {
            (Some(w), Some(b), Some(s)) => sem_avg(w, b, s).ok(),
            _ => None,
        };
        Some(ScoreVector {
            pair_id,
            rouge1: syn.rouge1,
            rouge_l: syn.rouge_l,
            bleu: syn.bleu,
            syn_avg: syn.avg,
            wms: wms_score,
            bert_f,
            st,
            sem_avg: sem,
            delta: sem.and_then(|s| delta(s, syn.avg).ok()),
            len_a: word_count(&p.a.text),
            len_b: word_count(&p.b.text),
        })
    }
}
