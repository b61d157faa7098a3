//! BLEU-4, per-instance max-over-references BLEU, and Self-BLEU.
//!
//! Contract pinned for bit-reproducible scores:
//! - modified n-gram precisions for n = 1..4, clipped against the maximum
//!   per-reference count;
//! - brevity penalty `min(1, exp(1 - r/c))` where `r` is the reference length
//!   closest to the candidate length `c`, ties resolved toward the shorter
//!   reference;
//! - any zero precision is floored at `SMOOTH_EPS` before the geometric mean.

use super::tokenize::TokenSeq;
use std::collections::HashMap;
use thiserror::Error;

/// Floor applied to zero n-gram precisions. Part of the external contract.
pub const SMOOTH_EPS: f64 = 1e-9;

/// Highest n-gram order scored.
pub const MAX_ORDER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BleuError {
    #[error("candidate and references must be nonempty token sequences")]
    EmptyInput,
    #[error("at least one reference is required")]
    EmptyReferences,
    #[error("corpus must contain at least one instance")]
    EmptyCorpus,
    #[error("self-BLEU group must contain exactly 3 sequences, found {0}")]
    GroupSize(usize),
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Clipped n-gram precision; 0.0 when the candidate has no n-grams of this
/// order or nothing matches.
fn modified_precision(candidate: &[String], references: &[&TokenSeq], n: usize) -> f64 {
    let total = candidate.len().saturating_sub(n - 1);
    if total == 0 {
        return 0.0;
    }
    let cand_counts = ngram_counts(candidate, n);
    let ref_counts: Vec<HashMap<&[String], usize>> = references
        .iter()
        .map(|r| ngram_counts(r.tokens(), n))
        .collect();
    let mut matched = 0usize;
    for (gram, &count) in &cand_counts {
        let max_ref = ref_counts
            .iter()
            .map(|rc| rc.get(gram).copied().unwrap_or(0))
            .max()
            .unwrap_or(0);
        matched += count.min(max_ref);
    }
    matched as f64 / total as f64
}

/// Reference length closest to the candidate length, ties toward the shorter.
fn closest_reference_length(candidate_len: usize, references: &[&TokenSeq]) -> usize {
    references
        .iter()
        .map(|r| r.len())
        .min_by_key(|&len| (len.abs_diff(candidate_len), len))
        .expect("references checked nonempty")
}

fn brevity_penalty(candidate_len: usize, reference_len: usize) -> f64 {
    if candidate_len >= reference_len {
        1.0
    } else {
        (1.0 - reference_len as f64 / candidate_len as f64).exp()
    }
}

/// Sentence-level BLEU-4 with uniform quarter weights, on `[0, 1]`.
pub fn bleu4(candidate: &TokenSeq, references: &[TokenSeq]) -> Result<f64, BleuError> {
    if references.is_empty() {
        return Err(BleuError::EmptyReferences);
    }
    if candidate.is_empty() || references.iter().any(TokenSeq::is_empty) {
        return Err(BleuError::EmptyInput);
    }
    let refs: Vec<&TokenSeq> = references.iter().collect();
    let mut log_sum = 0.0;
    for n in 1..=MAX_ORDER {
        let p = modified_precision(candidate.tokens(), &refs, n);
        let p = if p == 0.0 { SMOOTH_EPS } else { p };
        log_sum += p.ln() / MAX_ORDER as f64;
    }
    let r = closest_reference_length(candidate.len(), &refs);
    Ok(brevity_penalty(candidate.len(), r) * log_sum.exp())
}

/// Max of single-reference BLEU-4 over all references, on `[0, 1]`.
pub fn instance_bleu4(candidate: &TokenSeq, references: &[TokenSeq]) -> Result<f64, BleuError> {
    if references.is_empty() {
        return Err(BleuError::EmptyReferences);
    }
    let mut best = 0.0f64;
    for reference in references {
        best = best.max(bleu4(candidate, std::slice::from_ref(reference))?);
    }
    Ok(best)
}

/// Mean per-instance max BLEU-4 over a corpus, on `[0, 100]`.
pub fn corpus_bleu4(pairs: &[(TokenSeq, Vec<TokenSeq>)]) -> Result<f64, BleuError> {
    if pairs.is_empty() {
        return Err(BleuError::EmptyCorpus);
    }
    let mut sum = 0.0;
    for (candidate, references) in pairs {
        sum += instance_bleu4(candidate, references)?;
    }
    Ok(100.0 * sum / pairs.len() as f64)
}

/// Self-BLEU of a three-sentence group, on `[0, 100]`. Lower is more diverse.
///
/// Each sentence is scored as a candidate against its two siblings as
/// references; the three scores are averaged.
pub fn self_bleu4(group: &[TokenSeq]) -> Result<f64, BleuError> {
    if group.len() != 3 {
        return Err(BleuError::GroupSize(group.len()));
    }
    let mut scores = [0.0f64; 3];
    for i in 0..3 {
        let references: Vec<TokenSeq> = group
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, s)| s.clone())
            .collect();
        scores[i] = bleu4(&group[i], &references)?;
    }
    // Summing in value order keeps the result bit-identical under any
    // permutation of the group.
    scores.sort_by(f64::total_cmp);
    Ok(100.0 * (scores[0] + scores[1] + scores[2]) / 3.0)
}

/// Mean group Self-BLEU over a corpus of three-sentence groups, on `[0, 100]`.
pub fn corpus_self_bleu4(groups: &[Vec<TokenSeq>]) -> Result<f64, BleuError> {
    if groups.is_empty() {
        return Err(BleuError::EmptyCorpus);
    }
    let mut sum = 0.0;
    for group in groups {
        sum += self_bleu4(group)?;
    }
    Ok(sum / groups.len() as f64)
}
