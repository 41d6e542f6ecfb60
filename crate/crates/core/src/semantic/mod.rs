//! Semantic similarity over supplied embeddings: Word Mover similarity,
//! greedy token matching and sentence-vector cosine.

mod transport;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::syntactic::{check_unit, MetricError, TokenSeq};
use crate::Scalar;

pub use transport::{solve_transport, TransportPlan};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SemanticError {
    #[error("no token of the text has a word vector")]
    NoEmbeddableTokens,
    #[error("distance {0} is negative")]
    NegativeDistance(f64),
    #[error("token list is empty")]
    EmptyTokenList,
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("vectors of dimension {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OovPolicy {
    /// Out-of-vocabulary tokens are dropped from the distribution.
    #[default]
    Skip,
    /// Out-of-vocabulary tokens sit at the origin.
    ZeroVector,
}

/// Static word vectors sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct WordVectorTable<F> {
    dim: usize,
    entries: HashMap<String, Vec<F>>,
    pub oov_policy: OovPolicy,
}

impl<F: Scalar> WordVectorTable<F> {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "word vectors need at least one dimension");
        WordVectorTable {
            dim,
            entries: HashMap::new(),
            oov_policy: OovPolicy::Skip,
        }
    }

    /// Adds a vector; returns false and keeps the existing one if `word` is present.
    pub fn insert(&mut self, word: impl Into<String>, vector: Vec<F>) -> Result<bool, SemanticError> {
        if vector.len() != self.dim {
            return Err(SemanticError::DimensionMismatch(self.dim, vector.len()));
        }
        let word = word.into();
        if self.entries.contains_key(&word) {
            return Ok(false);
        }
        self.entries.insert(word, vector);
        Ok(true)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[F]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    /// Normalized bag of words: distinct embeddable tokens in sorted order
    /// with relative frequencies.
    fn bag<'a>(&'a self, text: &'a TokenSeq) -> Result<Vec<(&'a str, F)>, SemanticError> {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for t in text.tokens() {
            if self.entries.contains_key(t) || self.oov_policy == OovPolicy::ZeroVector {
                *counts.entry(t).or_default() += 1;
            }
        }
        let total: usize = counts.values().sum();
        if total == 0 {
            return Err(SemanticError::NoEmbeddableTokens);
        }
        let total = F::from_count(total);
        Ok(counts.into_iter().map(|(w, c)| (w, F::from_count(c) / total)).collect())
    }

    fn vector_or_zero(&self, word: &str) -> Vec<F> {
        self.get(word).map_or_else(|| vec![F::zero(); self.dim], <[F]>::to_vec)
    }
}

pub fn euclidean<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |s, (&x, &y)| s + (x - y) * (x - y))
        .sqrt()
}

/// Optimal transport plan between the normalized bags of words of `a` and `b`
/// under Euclidean ground cost.
pub fn wmd_plan<F: Scalar>(
    a: &TokenSeq,
    b: &TokenSeq,
    vecs: &WordVectorTable<F>,
) -> Result<TransportPlan<F>, SemanticError> {
    let bag_a = vecs.bag(a)?;
    let bag_b = vecs.bag(b)?;
    let va: Vec<Vec<F>> = bag_a.iter().map(|(w, _)| vecs.vector_or_zero(w)).collect();
    let vb: Vec<Vec<F>> = bag_b.iter().map(|(w, _)| vecs.vector_or_zero(w)).collect();
    let cost: Vec<Vec<F>> = va
        .iter()
        .map(|x| vb.iter().map(|y| euclidean(x, y)).collect())
        .collect();
    let supply: Vec<F> = bag_a.iter().map(|(_, m)| *m).collect();
    let demand: Vec<F> = bag_b.iter().map(|(_, m)| *m).collect();
    Ok(solve_transport(&supply, &demand, &cost))
}

/// Word Mover distance.
pub fn wmd<F: Scalar>(a: &TokenSeq, b: &TokenSeq, vecs: &WordVectorTable<F>) -> Result<F, SemanticError> {
    Ok(wmd_plan(a, b, vecs)?.cost.max(F::zero()))
}

/// Word Mover similarity, `1 / (1 + d)`.
pub fn wms<F: Scalar>(d: F) -> Result<F, SemanticError> {
    if d < F::zero() || d.is_nan() {
        return Err(SemanticError::NegativeDistance(d.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(F::one() / (F::one() + d))
}

fn norm<F: Scalar>(v: &[F]) -> F {
    v.iter().fold(F::zero(), |s, &x| s + x * x).sqrt()
}

fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |s, (&x, &y)| s + x * y)
}

/// Cosine clamped to `[0, 1]`; a zero vector scores 0.
fn clamped_cosine<F: Scalar>(a: &[F], b: &[F]) -> F {
    let d = norm(a) * norm(b);
    if d == F::zero() {
        return F::zero();
    }
    (dot(a, b) / d).max(F::zero()).min(F::one())
}

/// Greedy-matching F-score over token embeddings. Each token is matched to
/// its most similar token on the other side; `baseline` rescales the result
/// as `(x - b) / (1 - b)`, clamped to `[0, 1]`.
pub fn greedy_match_f<F: Scalar, V: AsRef<[F]>>(a: &[V], b: &[V], baseline: F) -> Result<F, SemanticError> {
    if a.is_empty() || b.is_empty() {
        return Err(SemanticError::EmptyTokenList);
    }
    let dim = a[0].as_ref().len();
    if let Some(v) = a.iter().chain(b).find(|v| v.as_ref().len() != dim) {
        return Err(SemanticError::DimensionMismatch(dim, v.as_ref().len()));
    }
    let best = |from: &[V], to: &[V]| {
        let sum = from.iter().fold(F::zero(), |s, x| {
            s + to
                .iter()
                .map(|y| clamped_cosine(x.as_ref(), y.as_ref()))
                .fold(F::zero(), F::max)
        });
        sum / F::from_count(from.len())
    };
    let recall = best(a, b);
    let precision = best(b, a);
    let f = if precision + recall == F::zero() {
        F::zero()
    } else {
        F::lit(2.0) * precision * recall / (precision + recall)
    };
    if baseline == F::zero() {
        return Ok(f);
    }
    Ok(((f - baseline) / (F::one() - baseline)).max(F::zero()).min(F::one()))
}

/// Sentence-vector cosine, negative values mapped to 0.
pub fn sentence_cos<F: Scalar>(a: &[F], b: &[F]) -> Result<F, SemanticError> {
    if a.len() != b.len() {
        return Err(SemanticError::DimensionMismatch(a.len(), b.len()));
    }
    if norm(a) == F::zero() || norm(b) == F::zero() {
        return Err(SemanticError::ZeroVector);
    }
    Ok(clamped_cosine(a, b))
}

/// Mean of the three semantic scores.
pub fn sem_avg<F: Scalar>(wms: F, bert_f: F, st: F) -> Result<F, SemanticError> {
    Ok((check_unit(wms)? + check_unit(bert_f)? + check_unit(st)?) / F::lit(3.0))
}

/// `sem_avg - syn_avg`.
pub fn delta<F: Scalar>(sem_avg: F, syn_avg: F) -> Result<F, SemanticError> {
    Ok(check_unit(sem_avg)? - check_unit(syn_avg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(words: &[(&str, [f64; 2])]) -> WordVectorTable<f64> {
        let mut t = WordVectorTable::new(2);
        for (w, v) in words {
            t.insert(*w, v.to_vec()).unwrap();
        }
        t
    }

    fn seq(s: &str) -> TokenSeq {
        TokenSeq::from_tokens(s.split_whitespace())
    }

    #[test]
    fn wmd_identity_and_single_words() {
        let t = table(&[("u", [0.0, 0.0]), ("v", [3.0, 4.0]), ("w", [1.0, 0.0])]);
        assert_eq!(wmd(&seq("u v"), &seq("v u"), &t).unwrap(), 0.0);
        assert!((wmd(&seq("u"), &seq("v"), &t).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn wmd_two_by_two_hand_optimum() {
        // a = {u, v}, b = {w, x}; matching u-w and v-x costs (1 + 1)/2.
        let t = table(&[
            ("u", [0.0, 0.0]),
            ("v", [0.0, 2.0]),
            ("w", [1.0, 0.0]),
            ("x", [1.0, 2.0]),
        ]);
        let d = wmd(&seq("u v"), &seq("w x"), &t).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        assert!((wms(d).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn oov_policies() {
        let mut t = table(&[("u", [1.0, 0.0])]);
        assert_eq!(wmd(&seq("zz"), &seq("u"), &t), Err(SemanticError::NoEmbeddableTokens));
        assert_eq!(wmd(&seq("u zz"), &seq("u"), &t).unwrap(), 0.0);
        t.oov_policy = OovPolicy::ZeroVector;
        assert!((wmd(&seq("zz"), &seq("u"), &t).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn duplicate_insert_keeps_first() {
        let mut t = table(&[("u", [1.0, 0.0])]);
        assert!(!t.insert("u", vec![5.0, 5.0]).unwrap());
        assert_eq!(t.get("u").unwrap(), [1.0, 0.0]);
        assert!(t.insert("v", vec![1.0]).is_err());
    }

    #[test]
    fn wms_values() {
        assert_eq!(wms(0.0f64).unwrap(), 1.0);
        assert_eq!(wms(1.0f64).unwrap(), 0.5);
        assert!(wms(-0.1f64).is_err());
    }

    #[test]
    fn greedy_match_cases() {
        let v = [vec![1.0f64, 0.0], vec![0.0, 1.0]];
        assert!((greedy_match_f(&v, &v, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let a = [vec![1.0f64, 0.0]];
        let b = [vec![0.0f64, 1.0], vec![0.0, 2.0]];
        assert_eq!(greedy_match_f(&a, &b, 0.0).unwrap(), 0.0);
        // R: a0 best 0.6; P: b0 -> 0.6, b1 -> 0.0 gives 0.3; F = 2 * 0.18 / 0.9.
        let a = [vec![1.0f64, 0.0]];
        let b = [vec![0.6f64, 0.8], vec![-1.0, 0.0]];
        assert!((greedy_match_f(&a, &b, 0.0).unwrap() - 0.4).abs() < 1e-12);
        assert!((greedy_match_f(&a, &b, 0.2).unwrap() - 0.25).abs() < 1e-12);
        let empty: [Vec<f64>; 0] = [];
        assert_eq!(greedy_match_f(&empty, &b, 0.0), Err(SemanticError::EmptyTokenList));
    }

    #[test]
    fn sentence_cosine_cases() {
        let v = [0.3f64, 0.4];
        assert!((sentence_cos(&v, &v).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(sentence_cos(&[1.0f64, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert_eq!(sentence_cos(&v, &[-0.3, -0.4]).unwrap(), 0.0);
        assert_eq!(sentence_cos(&[0.0f64, 0.0], &v), Err(SemanticError::ZeroVector));
    }

    #[test]
    fn averages_and_delta() {
        let sem = sem_avg(0.76f64, 0.76, 0.90).unwrap();
        let syn = crate::syntactic::syn_avg(0.53f64, 0.13, 0.14).unwrap();
        assert!((delta(sem, syn).unwrap() - 0.54).abs() < 0.01);
        assert_eq!(delta(0.4f64, 0.4).unwrap(), 0.0);
        assert!(sem_avg(1.5f64, 0.0, 0.0).is_err());
    }

    fn vectors(n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 3), n)
    }

    proptest! {
        #[test]
        fn cosine_scores_symmetric_and_scale_invariant(a in vectors(3), b in vectors(2), c in 0.1f64..10.0) {
            let ab = greedy_match_f(&a, &b, 0.0).unwrap();
            prop_assert!((ab - greedy_match_f(&b, &a, 0.0).unwrap()).abs() < 1e-12);
            let scale = |v: &[Vec<f64>]| v.iter().map(|x| x.iter().map(|y| y * c).collect()).collect::<Vec<Vec<f64>>>();
            prop_assert!((ab - greedy_match_f(&scale(&a), &scale(&b), 0.0).unwrap()).abs() < 1e-9);
            prop_assert!((0.0..=1.0).contains(&ab));
            if let (Ok(s), Ok(t)) = (sentence_cos(&a[0], &b[0]), sentence_cos(&b[0], &a[0])) {
                prop_assert!((s - t).abs() < 1e-12);
                let sc = sentence_cos(&scale(&a)[0], &scale(&b)[0]).unwrap();
                prop_assert!((s - sc).abs() < 1e-9);
                prop_assert!((0.0..=1.0).contains(&s));
            }
        }

        #[test]
        fn wmd_between_bounds(xs in vectors(4), ys in vectors(4), wa in prop::collection::vec(1usize..4, 4), wb in prop::collection::vec(1usize..4, 4)) {
            let mut t = WordVectorTable::new(3);
            let mut a = Vec::new();
            let mut b = Vec::new();
            for i in 0..4 {
                t.insert(format!("a{i}"), xs[i].clone()).unwrap();
                t.insert(format!("b{i}"), ys[i].clone()).unwrap();
                a.extend(std::iter::repeat_n(format!("a{i}"), wa[i]));
                b.extend(std::iter::repeat_n(format!("b{i}"), wb[i]));
            }
            let (sa, sb) = (TokenSeq::from_tokens(a), TokenSeq::from_tokens(b));
            let plan = wmd_plan(&sa, &sb, &t).unwrap();
            let ta: f64 = wa.iter().sum::<usize>() as f64;
            let tb: f64 = wb.iter().sum::<usize>() as f64;
            let cost = |i: usize, j: usize| euclidean(&xs[i], &ys[j]);
            let uniform: f64 = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| wa[i] as f64 / ta * wb[j] as f64 / tb * cost(i, j)).sum();
            let rows: f64 = (0..4).map(|i| wa[i] as f64 / ta * (0..4).map(|j| cost(i, j)).fold(f64::INFINITY, f64::min)).sum();
            let cols: f64 = (0..4).map(|j| wb[j] as f64 / tb * (0..4).map(|i| cost(i, j)).fold(f64::INFINITY, f64::min)).sum();
            prop_assert!(plan.cost <= uniform + 1e-9);
            prop_assert!(plan.cost >= rows.max(cols) - 1e-9);
            for (s, i) in plan.row_sums().iter().zip(0..) {
                prop_assert!((s - wa[i] as f64 / ta).abs() < 1e-9);
            }
            for (s, j) in plan.col_sums().iter().zip(0..) {
                prop_assert!((s - wb[j] as f64 / tb).abs() < 1e-9);
            }
            prop_assert!(plan.flows.iter().flatten().all(|&f| f >= -1e-12));
        }
    }
}
