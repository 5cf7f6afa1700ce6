//! Sentence-level BLEU and ROUGE over token sequences.
//!
//! All scores are returned on a 0-100 scale.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::EvalError;

const MAX_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BleuScore {
    pub bleu: f64,
    /// Modified n-gram precision for n = 1..=4.
    pub precisions: [f64; MAX_ORDER],
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RougeScore {
    pub rouge_1: f64,
    pub rouge_2: f64,
    pub rouge_l: f64,
}

fn ngram_counts<T: Eq + Hash>(tokens: &[T], n: usize) -> HashMap<&[T], usize> {
    let mut counts = HashMap::new();
    if n > 0 && tokens.len() >= n {
        for w in tokens.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

/// (clipped matches, hypothesis n-grams, reference n-grams)
fn overlap<T: Eq + Hash>(hyp: &[T], reference: &[T], n: usize) -> (usize, usize, usize) {
    let h = ngram_counts(hyp, n);
    let r = ngram_counts(reference, n);
    let matched = h
        .iter()
        .map(|(g, c)| (*c).min(r.get(g).copied().unwrap_or(0)))
        .sum();
    (
        matched,
        hyp.len().saturating_sub(n - 1),
        reference.len().saturating_sub(n - 1),
    )
}

/// BLEU with brevity penalty and add-one smoothing on orders 2..=4 that
/// have no matches.
///
/// Reported per-order precisions are unsmoothed. An order the hypothesis is
/// too short to contain scores 0, unless the reference is equally short, in
/// which case it repeats the previous order.
pub fn bleu<T: Eq + Hash>(hyp: &[T], reference: &[T]) -> Result<BleuScore, EvalError> {
    if reference.is_empty() {
        return Err(EvalError::EmptyReference);
    }
    let mut precisions = [0.0; MAX_ORDER];
    let mut log_sum = 0.0;
    let mut zero_unigram = false;
    for n in 1..=MAX_ORDER {
        let (m, h, r) = overlap(hyp, reference, n);
        precisions[n - 1] = if h > 0 {
            m as f64 / h as f64
        } else if r == 0 && n > 1 {
            precisions[n - 2]
        } else {
            0.0
        };
        let smoothed = if n == 1 {
            if m == 0 {
                zero_unigram = true;
                0.0
            } else {
                m as f64 / h as f64
            }
        } else if m == 0 {
            1.0 / (h as f64 + 1.0)
        } else {
            m as f64 / h as f64
        };
        if !zero_unigram {
            log_sum += smoothed.ln();
        }
    }
    let bleu = if zero_unigram {
        0.0
    } else {
        brevity_penalty(hyp.len(), reference.len()) * (log_sum / MAX_ORDER as f64).exp()
    };
    Ok(BleuScore {
        bleu: bleu * 100.0,
        precisions: precisions.map(|p| p * 100.0),
    })
}

fn brevity_penalty(hyp_len: usize, ref_len: usize) -> f64 {
    if hyp_len == 0 {
        0.0
    } else if hyp_len >= ref_len {
        1.0
    } else {
        (1.0 - ref_len as f64 / hyp_len as f64).exp()
    }
}

fn f1(matched: usize, hyp_total: usize, ref_total: usize) -> f64 {
    if hyp_total == 0 && ref_total == 0 {
        return 1.0;
    }
    if matched == 0 || hyp_total == 0 || ref_total == 0 {
        return 0.0;
    }
    let p = matched as f64 / hyp_total as f64;
    let r = matched as f64 / ref_total as f64;
    2.0 * p * r / (p + r)
}

pub fn lcs_len<T: Eq>(a: &[T], b: &[T]) -> usize {
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

/// ROUGE-1, ROUGE-2 (n-gram overlap F1) and ROUGE-L (LCS F1).
pub fn rouge<T: Eq + Hash>(hyp: &[T], reference: &[T]) -> Result<RougeScore, EvalError> {
    if reference.is_empty() {
        return Err(EvalError::EmptyReference);
    }
    let (m1, h1, r1) = overlap(hyp, reference, 1);
    let (m2, h2, r2) = overlap(hyp, reference, 2);
    let rouge_l = if hyp.is_empty() {
        0.0
    } else {
        f1(lcs_len(hyp, reference), hyp.len(), reference.len())
    };
    Ok(RougeScore {
        rouge_1: f1(m1, h1, r1) * 100.0,
        rouge_2: f1(m2, h2, r2) * 100.0,
        rouge_l: rouge_l * 100.0,
    })
}
