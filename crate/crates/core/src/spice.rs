//! SPICE-lite: proposition extraction and tuple F-score for the constrained
//! spatial-description grammar.
//!
//! Sentences in this domain are two noun phrases joined by one of the nine
//! sentence-style prepositions, so a rule parser recovers the semantic
//! content without dependency parsing: the phrase before the first matched
//! preposition becomes the subject, the phrase after it the object, and
//! leading modifiers become attributes. Matching between candidate and
//! reference tuples is exact-string; there is no synonym handling, which
//! keeps every match auditable but means e.g. "picture" and "painting" never
//! match.

use crate::metrics::tokenize::{is_punctuation, tokenize};
use crate::relation::{surface_for, SurfaceStyle, ALL_LABELS};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

/// Propositions extracted from one sentence: bare object mentions,
/// (object, attribute) pairs, and (subject, relation, object) triples.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TripleSet {
    pub objects: BTreeSet<String>,
    pub attributes: BTreeSet<(String, String)>,
    pub relations: BTreeSet<(String, String, String)>,
}

impl TripleSet {
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() && self.attributes.is_empty() && self.relations.is_empty()
    }

    /// Total tuple count across the three pools.
    pub fn len(&self) -> usize {
        self.objects.len() + self.attributes.len() + self.relations.len()
    }

    fn intersection_size(&self, other: &TripleSet) -> usize {
        self.objects.intersection(&other.objects).count()
            + self.attributes.intersection(&other.attributes).count()
            + self.relations.intersection(&other.relations).count()
    }
}

/// Stoplists used when reducing a token span to a noun phrase.
#[derive(Debug, Clone)]
pub struct ParserConfig {
    /// Determiners and existential glue dropped from phrases.
    pub determiners: BTreeSet<String>,
    /// Copular/posture verbs that carry no spatial content.
    pub filler_verbs: BTreeSet<String>,
}

const DEFAULT_DETERMINERS: [&str; 6] = ["a", "an", "the", "there", "is", "are"];
const DEFAULT_FILLER_VERBS: [&str; 8] = [
    "sitting", "standing", "floating", "hanging", "shown", "swimming", "lying", "leaning",
];

impl Default for ParserConfig {
    fn default() -> Self {
        ParserConfig {
            determiners: DEFAULT_DETERMINERS.iter().map(|s| s.to_string()).collect(),
            filler_verbs: DEFAULT_FILLER_VERBS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl ParserConfig {
    fn keeps(&self, token: &str) -> bool {
        !is_punctuation(token)
            && !self.determiners.contains(token)
            && !self.filler_verbs.contains(token)
    }
}

/// Sentence-style preposition forms as token sequences, longest first so that
/// e.g. "in front of" wins over "in" at the same position.
fn preposition_lexicon() -> Vec<(Vec<&'static str>, &'static str)> {
    let mut lex: Vec<(Vec<&'static str>, &'static str)> = ALL_LABELS
        .iter()
        .map(|&l| {
            let surface = surface_for(l, SurfaceStyle::Sentence);
            (surface.split(' ').collect(), surface)
        })
        .collect();
    lex.sort_by_key(|(tokens, _)| std::cmp::Reverse(tokens.len()));
    lex
}

fn find_preposition(tokens: &[String]) -> Option<(usize, usize, &'static str)> {
    let lexicon = preposition_lexicon();
    for start in 0..tokens.len() {
        for (parts, surface) in &lexicon {
            if start + parts.len() <= tokens.len()
                && parts.iter().zip(&tokens[start..]).all(|(p, t)| *p == t)
            {
                return Some((start, parts.len(), surface));
            }
        }
    }
    None
}

/// Reduces a token span to its content words, returning (attributes, head).
fn noun_phrase(span: &[String], cfg: &ParserConfig) -> Option<(Vec<String>, String)> {
    let kept: Vec<String> = span.iter().filter(|t| cfg.keeps(t)).cloned().collect();
    let (head, modifiers) = kept.split_last()?;
    Some((modifiers.to_vec(), head.clone()))
}

/// Extracts propositions with the default stoplists.
pub fn extract_triples(sentence: &str) -> TripleSet {
    extract_triples_with(sentence, &ParserConfig::default())
}

/// Extracts propositions from one sentence. Total: unparseable sentences
/// yield a sparse or empty set, never an error.
pub fn extract_triples_with(sentence: &str, cfg: &ParserConfig) -> TripleSet {
    let tokens = tokenize(sentence);
    let tokens = tokens.tokens();
    let mut out = TripleSet::default();
    if tokens.is_empty() {
        return out;
    }

    let parsed = find_preposition(tokens).and_then(|(start, len, surface)| {
        let subject = noun_phrase(&tokens[..start], cfg)?;
        // The object phrase ends where a further preposition begins, so
        // nested sentences keep a sensible first relation.
        let rest = &tokens[start + len..];
        let object_span = match find_preposition(rest) {
            Some((next, _, _)) => &rest[..next],
            None => rest,
        };
        let object = noun_phrase(object_span, cfg)?;
        Some((subject, object, surface))
    });

    match parsed {
        Some(((subj_mods, subj_head), (obj_mods, obj_head), surface)) => {
            for m in subj_mods {
                out.attributes.insert((subj_head.clone(), m));
            }
            for m in obj_mods {
                out.attributes.insert((obj_head.clone(), m));
            }
            out.relations
                .insert((subj_head.clone(), surface.to_string(), obj_head.clone()));
            out.objects.insert(subj_head);
            out.objects.insert(obj_head);
        }
        None => {
            // No usable preposition split: keep every surviving content word
            // as a bare mention.
            for token in tokens.iter().filter(|t| cfg.keeps(t)) {
                out.objects.insert(token.clone());
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpiceError {
    #[error("at least one reference is required")]
    EmptyReferences,
    #[error("corpus must contain at least one instance")]
    EmptyCorpus,
}

/// F-score between two pooled tuple sets, on `[0, 1]`.
///
/// Both empty scores 1.0; exactly one empty scores 0.0.
pub fn tuple_fscore(cand: &TripleSet, reference: &TripleSet) -> f64 {
    match (cand.is_empty(), reference.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        (false, false) => {}
    }
    let matched = cand.intersection_size(reference) as f64;
    let precision = matched / cand.len() as f64;
    let recall = matched / reference.len() as f64;
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

/// Max tuple F-score of a candidate sentence against each reference, `[0, 1]`.
pub fn instance_spice(candidate: &str, references: &[String]) -> Result<f64, SpiceError> {
    if references.is_empty() {
        return Err(SpiceError::EmptyReferences);
    }
    let cand = extract_triples(candidate);
    Ok(references
        .iter()
        .map(|r| tuple_fscore(&cand, &extract_triples(r)))
        .fold(0.0, f64::max))
}

/// Mean instance score over single-sentence candidates, on `[0, 100]`.
pub fn corpus_spice(pairs: &[(String, Vec<String>)]) -> Result<f64, SpiceError> {
    if pairs.is_empty() {
        return Err(SpiceError::EmptyCorpus);
    }
    let mut sum = 0.0;
    for (candidate, references) in pairs {
        sum += instance_spice(candidate, references)?;
    }
    Ok(100.0 * sum / pairs.len() as f64)
}

/// Correctness score of a three-sentence group: the mean over the three
/// sentences of their per-sentence instance score, on `[0, 1]`.
pub fn triple_group_spice(sentences: &[String], references: &[String]) -> Result<f64, SpiceError> {
    if sentences.is_empty() {
        return Err(SpiceError::EmptyCorpus);
    }
    let mut sum = 0.0;
    for sentence in sentences {
        sum += instance_spice(sentence, references)?;
    }
    Ok(sum / sentences.len() as f64)
}
