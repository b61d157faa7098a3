//! Multi-label F1 over the closed relation vocabulary.

use crate::relation::RelationLabel;
use std::collections::BTreeSet;
use thiserror::Error;

/// A set of relation labels attached to one instance. Gold sets must be
/// nonempty; prediction sets may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelSet {
    labels: BTreeSet<RelationLabel>,
}

impl LabelSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: RelationLabel) -> Self {
        LabelSet { labels: BTreeSet::from([label]) }
    }

    pub fn insert(&mut self, label: RelationLabel) {
        self.labels.insert(label);
    }

    pub fn contains(&self, label: RelationLabel) -> bool {
        self.labels.contains(&label)
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = RelationLabel> + '_ {
        self.labels.iter().copied()
    }

    fn intersection_size(&self, other: &LabelSet) -> usize {
        self.labels.intersection(&other.labels).count()
    }
}

impl FromIterator<RelationLabel> for LabelSet {
    fn from_iter<I: IntoIterator<Item = RelationLabel>>(iter: I) -> Self {
        LabelSet { labels: iter.into_iter().collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F1Error {
    #[error("gold and prediction lists differ in length: {golds} vs {preds}")]
    LengthMismatch { golds: usize, preds: usize },
    #[error("gold label set at instance {0} is empty")]
    EmptyGold(usize),
    #[error("at least one instance is required")]
    EmptyCorpus,
}

fn check_inputs(golds: &[LabelSet], preds: &[LabelSet]) -> Result<(), F1Error> {
    if golds.len() != preds.len() {
        return Err(F1Error::LengthMismatch { golds: golds.len(), preds: preds.len() });
    }
    if golds.is_empty() {
        return Err(F1Error::EmptyCorpus);
    }
    if let Some(idx) = golds.iter().position(LabelSet::is_empty) {
        return Err(F1Error::EmptyGold(idx));
    }
    Ok(())
}

fn f1_from_counts(tp: usize, fp: usize, fn_: usize) -> f64 {
    let precision = if tp + fp == 0 { 0.0 } else { tp as f64 / (tp + fp) as f64 };
    let recall = if tp + fn_ == 0 { 0.0 } else { tp as f64 / (tp + fn_) as f64 };
    if precision + recall == 0.0 {
        0.0
    } else {
        200.0 * precision * recall / (precision + recall)
    }
}

/// Micro-averaged multi-label F1 on `[0, 100]`: counts are pooled over all
/// instances before the harmonic mean.
pub fn micro_f1(golds: &[LabelSet], preds: &[LabelSet]) -> Result<f64, F1Error> {
    check_inputs(golds, preds)?;
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut fn_ = 0usize;
    for (gold, pred) in golds.iter().zip(preds) {
        let hit = gold.intersection_size(pred);
        tp += hit;
        fp += pred.len() - hit;
        fn_ += gold.len() - hit;
    }
    Ok(f1_from_counts(tp, fp, fn_))
}

/// Macro-averaged multi-label F1 on `[0, 100]`: per-label F1 averaged over
/// the labels observed in the gold or prediction sets.
pub fn macro_f1(golds: &[LabelSet], preds: &[LabelSet]) -> Result<f64, F1Error> {
    check_inputs(golds, preds)?;
    let observed: BTreeSet<RelationLabel> = golds
        .iter()
        .chain(preds)
        .flat_map(LabelSet::iter)
        .collect();
    let mut sum = 0.0;
    for label in &observed {
        let mut tp = 0usize;
        let mut fp = 0usize;
        let mut fn_ = 0usize;
        for (gold, pred) in golds.iter().zip(preds) {
            match (gold.contains(*label), pred.contains(*label)) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fn_ += 1,
                (false, false) => {}
            }
        }
        sum += f1_from_counts(tp, fp, fn_);
    }
    Ok(sum / observed.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use RelationLabel::*;

    fn singles(labels: &[RelationLabel]) -> Vec<LabelSet> {
        labels.iter().map(|&l| LabelSet::single(l)).collect()
    }

    #[test]
    fn perfect_predictions_score_100() {
        let golds = singles(&[On, Under, Left]);
        assert_eq!(micro_f1(&golds, &golds.clone()).unwrap(), 100.0);
        assert_eq!(macro_f1(&golds, &golds).unwrap(), 100.0);
    }

    #[test]
    fn hand_counted_confusion() {
        // TP=1 FP=1 FN=1 -> P=R=0.5 -> F1=50
        let golds = singles(&[On, Under]);
        let preds = singles(&[On, Above]);
        assert_eq!(micro_f1(&golds, &preds).unwrap(), 50.0);
    }

    #[test]
    fn single_label_micro_f1_equals_accuracy() {
        let golds = singles(&[On, In, Left, Right]);
        let preds = singles(&[On, In, Left, Under]);
        assert_eq!(micro_f1(&golds, &preds).unwrap(), 75.0);
    }

    #[test]
    fn empty_prediction_sets_are_allowed() {
        let golds = singles(&[On, In]);
        let preds = vec![LabelSet::single(On), LabelSet::new()];
        // TP=1 FP=0 FN=1 -> P=1 R=0.5 -> F1=2/3
        let got = micro_f1(&golds, &preds).unwrap();
        assert!((got - 200.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn multi_label_sets_pool_counts() {
        let golds = vec![[On, In].into_iter().collect::<LabelSet>()];
        let preds = vec![[On, Above, Left].into_iter().collect::<LabelSet>()];
        // TP=1 FP=2 FN=1 -> P=1/3 R=1/2 -> F1=40
        assert!((micro_f1(&golds, &preds).unwrap() - 40.0).abs() < 1e-12);
    }

    #[test]
    fn instance_order_invariance() {
        let golds = singles(&[On, In, Left, Right, Next]);
        let preds = singles(&[On, Under, Left, Above, Next]);
        let base = micro_f1(&golds, &preds).unwrap();
        let perm = [4, 2, 0, 3, 1];
        let golds_p: Vec<LabelSet> = perm.iter().map(|&i| golds[i].clone()).collect();
        let preds_p: Vec<LabelSet> = perm.iter().map(|&i| preds[i].clone()).collect();
        assert_eq!(micro_f1(&golds_p, &preds_p).unwrap(), base);
    }

    #[test]
    fn error_paths() {
        let golds = singles(&[On]);
        assert_eq!(
            micro_f1(&golds, &[]),
            Err(F1Error::LengthMismatch { golds: 1, preds: 0 })
        );
        assert_eq!(micro_f1(&[], &[]), Err(F1Error::EmptyCorpus));
        assert_eq!(
            micro_f1(&[LabelSet::new()], &[LabelSet::single(On)]),
            Err(F1Error::EmptyGold(0))
        );
    }

    #[test]
    fn macro_differs_from_micro_under_imbalance() {
        // 3 "on" instances all correct, 1 "under" instance wrong.
        let golds = singles(&[On, On, On, Under]);
        let preds = singles(&[On, On, On, On]);
        let micro = micro_f1(&golds, &preds).unwrap();
        let macro_ = macro_f1(&golds, &preds).unwrap();
        // micro: TP=3 FP=1 FN=1 -> 2*3/(2*3+1+1) = 75
        assert!((micro - 75.0).abs() < 1e-12);
        // per-label: on TP=3 FP=1 -> 6/7; under F1=0 -> mean = 3/7
        assert!((macro_ - 100.0 * 3.0 / 7.0).abs() < 1e-12);
    }
}
