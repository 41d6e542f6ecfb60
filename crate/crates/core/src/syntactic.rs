//! Lexical and structural overlap: ROUGE-1, ROUGE-L and BLEU.
//!
//! ROUGE scores are F1 values. BLEU is the mean of both directions so that
//! every score is symmetric in its arguments.

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::text::tokenize;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MetricError {
    #[error("text has no tokens")]
    EmptyText,
    #[error("score {0} outside [0, 1]")]
    OutOfRange(f64),
}

/// Lowercased word tokens of one caption.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TokenSeq {
    tokens: Vec<String>,
}

impl TokenSeq {
    pub fn new(text: &str) -> Self {
        TokenSeq { tokens: tokenize(text) }
    }

    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        TokenSeq {
            tokens: tokens.into_iter().map(Into::into).collect(),
        }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

fn non_empty(a: &TokenSeq, b: &TokenSeq) -> Result<(), MetricError> {
    if a.is_empty() || b.is_empty() {
        Err(MetricError::EmptyText)
    } else {
        Ok(())
    }
}

fn counts<T: Hash + Eq>(items: impl Iterator<Item = T>) -> HashMap<T, usize> {
    let mut map = HashMap::new();
    for item in items {
        *map.entry(item).or_default() += 1;
    }
    map
}

/// F1 from an overlap size and the two lengths.
fn f1<F: Scalar>(overlap: usize, len_a: usize, len_b: usize) -> F {
    if overlap == 0 {
        return F::zero();
    }
    let m = F::from_count(overlap);
    let p = m / F::from_count(len_b);
    let r = m / F::from_count(len_a);
    F::lit(2.0) * p * r / (p + r)
}

/// Unigram-overlap F1.
pub fn rouge1<F: Scalar>(a: &TokenSeq, b: &TokenSeq) -> Result<F, MetricError> {
    non_empty(a, b)?;
    let ca = counts(a.tokens.iter());
    let cb = counts(b.tokens.iter());
    let overlap = ca.iter().map(|(w, n)| (*n).min(cb.get(w).copied().unwrap_or(0))).sum();
    Ok(f1(overlap, a.len(), b.len()))
}

/// Length of the longest common subsequence.
pub fn lcs_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut row = vec![0usize; b.len() + 1];
    for x in a {
        let mut diag = 0;
        for (j, y) in b.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[b.len()]
}

/// LCS-based F1.
pub fn rouge_l<F: Scalar>(a: &TokenSeq, b: &TokenSeq) -> Result<F, MetricError> {
    non_empty(a, b)?;
    Ok(f1(lcs_len(&a.tokens, &b.tokens), a.len(), b.len()))
}

/// Clipped n-gram matches of `cand` against `refr`, and the number of n-grams in `cand`.
fn ngram_overlap(cand: &[String], refr: &[String], n: usize) -> (usize, usize) {
    if cand.len() < n {
        return (0, 0);
    }
    let cc = counts(cand.windows(n));
    let rc = if refr.len() < n {
        HashMap::new()
    } else {
        counts(refr.windows(n))
    };
    let matched = cc.iter().map(|(g, k)| (*k).min(rc.get(g).copied().unwrap_or(0))).sum();
    (matched, cand.len() + 1 - n)
}

fn bleu_directed<F: Scalar>(cand: &[String], refr: &[String], max_n: usize) -> F {
    let mut log_sum = F::zero();
    for n in 1..=max_n {
        let (num, den) = ngram_overlap(cand, refr, n);
        let p = if n == 1 {
            F::from_count(num) / F::from_count(den)
        } else if num == 0 {
            F::one() / F::from_count(den + 1)
        } else {
            F::from_count(num) / F::from_count(den)
        };
        if p == F::zero() {
            return F::zero();
        }
        log_sum = log_sum + p.ln();
    }
    let geo = (log_sum / F::from_count(max_n)).exp();
    let (c, r) = (cand.len(), refr.len());
    let bp = if c < r {
        (F::one() - F::from_count(r) / F::from_count(c)).exp()
    } else {
        F::one()
    };
    bp * geo
}

/// Symmetric BLEU up to `max_n`-grams with add-one smoothing for empty
/// higher-order matches.
pub fn bleu<F: Scalar>(a: &TokenSeq, b: &TokenSeq, max_n: usize) -> Result<F, MetricError> {
    non_empty(a, b)?;
    let max_n = max_n.max(1);
    let ab: F = bleu_directed(&a.tokens, &b.tokens, max_n);
    let ba: F = bleu_directed(&b.tokens, &a.tokens, max_n);
    Ok((ab + ba) / F::lit(2.0))
}

pub(crate) fn check_unit<F: Scalar>(v: F) -> Result<F, MetricError> {
    if v >= F::zero() && v <= F::one() {
        Ok(v)
    } else {
        Err(MetricError::OutOfRange(v.to_f64().unwrap_or(f64::NAN)))
    }
}

/// Mean of the three syntactic scores.
pub fn syn_avg<F: Scalar>(rouge1: F, rouge_l: F, bleu: F) -> Result<F, MetricError> {
    Ok((check_unit(rouge1)? + check_unit(rouge_l)? + check_unit(bleu)?) / F::lit(3.0))
}

/// All syntactic scores of one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntacticScores<F> {
    pub rouge1: F,
    pub rouge_l: F,
    pub bleu: F,
    pub avg: F,
}

pub fn syntactic_scores<F: Scalar>(a: &TokenSeq, b: &TokenSeq) -> Result<SyntacticScores<F>, MetricError> {
    let rouge1 = rouge1(a, b)?;
    let rouge_l = rouge_l(a, b)?;
    let bleu = bleu(a, b, 4)?;
    Ok(SyntacticScores {
        rouge1,
        rouge_l,
        bleu,
        avg: syn_avg(rouge1, rouge_l, bleu)?,
    })
}
