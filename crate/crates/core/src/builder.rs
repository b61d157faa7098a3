//! Compiles corpus items into instruction-following records for the three
//! tasks, with seeded template sampling.
//!
//! Reproducibility contract: every sampling decision for item `i` and task
//! `t` draws from an RNG stream derived from `(seed, i, t)`, so editing one
//! corpus line never perturbs the records built from the others, and the
//! final output is byte-identical across runs and across any internal
//! parallelism.

use crate::corpus::CorpusStats;
use crate::item::{InstructRecord, TaskId, VsdItem};
use crate::relation::label_list_sentence;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Placeholder for the subject tag in question templates.
pub const SUBJ: &str = "{SUBJ}";
/// Placeholder for the object tag in question templates.
pub const OBJ: &str = "{OBJ}";
/// Placeholder for the fixed nine-way choice list (task 1 only).
pub const LABEL_LIST: &str = "{LABEL_LIST}";

/// Default end-of-turn marker in the plain-text rendering.
pub const DEFAULT_STOP_TOKEN: &str = "<STOP>";

// The first template of each pool is the canonical question wording; the
// rest are authored paraphrases so sampling has something to sample.
const TASK1_TEMPLATES: [&str; 5] = [
    "Given the image, choose the most appropriate preposition to complete the sentence: 'The {SUBJ} is [BLANK] the {OBJ}'. Select from: {LABEL_LIST}.",
    "Look at the image and pick the preposition that best completes: 'The {SUBJ} is [BLANK] the {OBJ}'. Options: {LABEL_LIST}.",
    "Which preposition best fills the blank in 'The {SUBJ} is [BLANK] the {OBJ}'? Choose one of: {LABEL_LIST}.",
    "From the image, select the preposition completing 'The {SUBJ} is [BLANK] the {OBJ}'. Candidates: {LABEL_LIST}.",
    "Complete the sentence 'The {SUBJ} is [BLANK] the {OBJ}' using the most fitting preposition among: {LABEL_LIST}.",
];

const TASK2_TEMPLATES: [&str; 5] = [
    "Based on the image, provide a concise textual description or phrase of the single spatial relationship between the two objects {SUBJ} and {OBJ}.",
    "Describe in one short sentence the spatial relationship between the {SUBJ} and the {OBJ} shown in the image.",
    "Looking at the image, state briefly how the {SUBJ} is positioned relative to the {OBJ}.",
    "Give a single concise phrase describing where the {SUBJ} is with respect to the {OBJ} in the image.",
    "In one sentence, describe the spatial relation between the two objects {SUBJ} and {OBJ} in the image.",
];

const TASK3_TEMPLATES: [&str; 5] = [
    "Using the image as a reference, generate three detailed and diverse textual descriptions that describe the spatial relationship between the two objects {SUBJ} and {OBJ}.",
    "From the image, write three varied descriptions of the spatial relationship between the {SUBJ} and the {OBJ}.",
    "Produce three distinct sentences describing how the {SUBJ} relates spatially to the {OBJ} in the image.",
    "Generate three different textual descriptions of the spatial relationship between the two objects {SUBJ} and {OBJ} shown in the image.",
    "Based on the image, provide three diverse sentences that describe where the {SUBJ} is relative to the {OBJ}.",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("template pool for {task} is empty")]
    EmptyPool { task: TaskId },
    #[error("template {index} for {task} is missing placeholder {placeholder}")]
    MissingPlaceholder { task: TaskId, index: usize, placeholder: &'static str },
    #[error("stop_token must be nonempty")]
    EmptyStopToken,
    #[error("record {id}: {detail}")]
    BadConversation { id: String, detail: String },
}

/// Question templates for the three tasks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TemplatePools {
    pub task1: Vec<String>,
    pub task2: Vec<String>,
    pub task3: Vec<String>,
}

impl Default for TemplatePools {
    fn default() -> Self {
        let own = |s: &[&str]| s.iter().map(|t| t.to_string()).collect();
        TemplatePools {
            task1: own(&TASK1_TEMPLATES),
            task2: own(&TASK2_TEMPLATES),
            task3: own(&TASK3_TEMPLATES),
        }
    }
}

impl TemplatePools {
    pub fn pool(&self, task: TaskId) -> &[String] {
        match task {
            TaskId::Task1 => &self.task1,
            TaskId::Task2 => &self.task2,
            TaskId::Task3 => &self.task3,
        }
    }

    /// Every template needs {SUBJ} and {OBJ}; task-1 templates also need the
    /// {LABEL_LIST} choice list.
    pub fn validate(&self) -> Result<(), BuildError> {
        for task in TaskId::ALL {
            let pool = self.pool(task);
            if pool.is_empty() {
                return Err(BuildError::EmptyPool { task });
            }
            for (index, template) in pool.iter().enumerate() {
                for placeholder in [SUBJ, OBJ] {
                    if !template.contains(placeholder) {
                        return Err(BuildError::MissingPlaceholder { task, index, placeholder });
                    }
                }
                if task == TaskId::Task1 && !template.contains(LABEL_LIST) {
                    return Err(BuildError::MissingPlaceholder {
                        task,
                        index,
                        placeholder: LABEL_LIST,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Seed, stop token, and template pools for one dataset build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct BuildConfig {
    pub seed: u64,
    pub stop_token: String,
    pub template_pools: TemplatePools,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            seed: 0,
            stop_token: DEFAULT_STOP_TOKEN.to_string(),
            template_pools: TemplatePools::default(),
        }
    }
}

impl BuildConfig {
    pub fn with_seed(seed: u64) -> Self {
        BuildConfig { seed, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        if self.stop_token.is_empty() {
            return Err(BuildError::EmptyStopToken);
        }
        self.template_pools.validate()
    }
}

fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// RNG stream for one (item, task) cell, independent of every other cell.
pub fn derive_stream(seed: u64, item_index: usize, task: TaskId) -> ChaCha8Rng {
    let task_code = match task {
        TaskId::Task1 => 1u64,
        TaskId::Task2 => 2,
        TaskId::Task3 => 3,
    };
    ChaCha8Rng::seed_from_u64(mix64(mix64(seed) ^ mix64(item_index as u64) ^ task_code))
}

fn record_id(task: TaskId, item_index: usize, k: usize) -> String {
    format!("{task}-{item_index}-{k}")
}

fn sample_question(pool: &[String], item: &VsdItem, rng: &mut ChaCha8Rng) -> String {
    let template = &pool[rng.gen_range(0..pool.len())];
    template
        .replace(SUBJ, &item.subject_tag)
        .replace(OBJ, &item.object_tag)
        .replace(LABEL_LIST, &label_list_sentence())
}

/// The task-3 first answer line: subject tag, sentence-style relation,
/// object tag, trailing period.
pub fn stacked_sentence(item: &VsdItem) -> String {
    format!("{} {} {}.", item.subject_tag, item.relation.sentence(), item.object_tag)
}

/// One classification record: sampled question, short-form label answer.
pub fn build_task1_record(
    item: &VsdItem,
    item_index: usize,
    cfg: &BuildConfig,
    rng: &mut ChaCha8Rng,
) -> InstructRecord {
    InstructRecord {
        id: record_id(TaskId::Task1, item_index, 0),
        image: item.image.clone(),
        task: TaskId::Task1,
        question: sample_question(cfg.template_pools.pool(TaskId::Task1), item, rng),
        answer: item.relation.short().to_string(),
    }
}

/// One description record per v1 description, each paired with exactly one
/// description so the whole set is covered without replacement.
pub fn build_task2_records(
    item: &VsdItem,
    item_index: usize,
    cfg: &BuildConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<InstructRecord> {
    item.descriptions_v1
        .iter()
        .enumerate()
        .map(|(k, description)| InstructRecord {
            id: record_id(TaskId::Task2, item_index, k),
            image: item.image.clone(),
            task: TaskId::Task2,
            question: sample_question(cfg.template_pools.pool(TaskId::Task2), item, rng),
            answer: description.clone(),
        })
        .collect()
}

/// One open-ended record with a three-line answer: the stacked sentence, a
/// v1 sample, and a v2 sample. With no v2 descriptions the third line falls
/// back to a second v1 sample, distinct from the second line when possible.
pub fn build_task3_record(
    item: &VsdItem,
    item_index: usize,
    cfg: &BuildConfig,
    rng: &mut ChaCha8Rng,
) -> InstructRecord {
    let v1 = &item.descriptions_v1;
    let line2_idx = rng.gen_range(0..v1.len());
    let line3 = if !item.descriptions_v2.is_empty() {
        item.descriptions_v2[rng.gen_range(0..item.descriptions_v2.len())].clone()
    } else if v1.len() >= 2 {
        let mut j = rng.gen_range(0..v1.len() - 1);
        if j >= line2_idx {
            j += 1;
        }
        v1[j].clone()
    } else {
        v1[0].clone()
    };
    InstructRecord {
        id: record_id(TaskId::Task3, item_index, 0),
        image: item.image.clone(),
        task: TaskId::Task3,
        question: sample_question(cfg.template_pools.pool(TaskId::Task3), item, rng),
        answer: format!("{}\n{}\n{}", stacked_sentence(item), v1[line2_idx], line3),
    }
}

/// Renders a record in the single-round plain-text conversation format.
pub fn render_plain(rec: &InstructRecord, cfg: &BuildConfig) -> String {
    format!(
        "Human: <image> {} {stop}\nAssistant: {} {stop}\n",
        rec.question,
        rec.answer,
        stop = cfg.stop_token
    )
}

fn build_indexed(items: &[VsdItem], cfg: &BuildConfig) -> Vec<(usize, InstructRecord)> {
    let mut out = Vec::with_capacity(CorpusStats::from_items(items).total_expected());
    for task in TaskId::ALL {
        for (item_index, item) in items.iter().enumerate() {
            let mut rng = derive_stream(cfg.seed, item_index, task);
            match task {
                TaskId::Task1 => {
                    out.push((item_index, build_task1_record(item, item_index, cfg, &mut rng)));
                }
                TaskId::Task2 => {
                    for rec in build_task2_records(item, item_index, cfg, &mut rng) {
                        out.push((item_index, rec));
                    }
                }
                TaskId::Task3 => {
                    out.push((item_index, build_task3_record(item, item_index, cfg, &mut rng)));
                }
            }
        }
    }
    out
}

/// Builds the full record set, ordered by (task, item index, k).
///
/// The output length is always `2 * items.len() + sum(|descriptions_v1|)`.
pub fn build_corpus(items: &[VsdItem], cfg: &BuildConfig) -> Vec<InstructRecord> {
    build_indexed(items, cfg).into_iter().map(|(_, rec)| rec).collect()
}

/// One conversation-format line of the structured output schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversationTurn {
    pub from: String,
    pub value: String,
}

/// Structured export record. Besides the conversation turns it carries the
/// subject/object tags so downstream passes (like description rewriting) can
/// reconstruct prompts without re-reading the source corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversationRecord {
    pub id: String,
    pub image: String,
    pub task: TaskId,
    pub subject: String,
    pub object: String,
    pub conversations: Vec<ConversationTurn>,
}

/// Prefix of the human turn marking where the image is injected.
pub const IMAGE_TOKEN_PREFIX: &str = "<image>\n";

impl ConversationRecord {
    pub fn from_record(rec: &InstructRecord, subject: &str, object: &str) -> Self {
        ConversationRecord {
            id: rec.id.clone(),
            image: rec.image.clone(),
            task: rec.task,
            subject: subject.to_string(),
            object: object.to_string(),
            conversations: vec![
                ConversationTurn {
                    from: "human".to_string(),
                    value: format!("{IMAGE_TOKEN_PREFIX}{}", rec.question),
                },
                ConversationTurn { from: "gpt".to_string(), value: rec.answer.clone() },
            ],
        }
    }

    pub fn to_record(&self) -> Result<InstructRecord, BuildError> {
        let bad = |detail: &str| BuildError::BadConversation {
            id: self.id.clone(),
            detail: detail.to_string(),
        };
        if self.conversations.len() != 2 {
            return Err(bad("expected exactly 2 conversation turns"));
        }
        let (human, gpt) = (&self.conversations[0], &self.conversations[1]);
        if human.from != "human" || gpt.from != "gpt" {
            return Err(bad("turns must be [human, gpt]"));
        }
        let question = human
            .value
            .strip_prefix(IMAGE_TOKEN_PREFIX)
            .unwrap_or(&human.value)
            .to_string();
        let rec = InstructRecord {
            id: self.id.clone(),
            image: self.image.clone(),
            task: self.task,
            question,
            answer: gpt.value.clone(),
        };
        rec.validate().map_err(|e| bad(&e.to_string()))?;
        Ok(rec)
    }
}

/// Builds the structured export: one conversation record per instruct record,
/// same order and determinism guarantees as [`build_corpus`].
pub fn build_conversation_corpus(items: &[VsdItem], cfg: &BuildConfig) -> Vec<ConversationRecord> {
    build_indexed(items, cfg)
        .into_iter()
        .map(|(item_index, rec)| {
            let item = &items[item_index];
            ConversationRecord::from_record(&rec, &item.subject_tag, &item.object_tag)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bbox::BBox;
    use crate::relation::RelationLabel;
    use std::collections::BTreeSet;

    fn full_example_item() -> VsdItem {
        VsdItem {
            image: "000001.jpg".into(),
            subject_tag: "yellow ball".into(),
            object_tag: "water".into(),
            relation: RelationLabel::In,
            subject_bbox: BBox::new(650, 680, 394, 424).unwrap(),
            object_bbox: BBox::new(5, 677, 0, 992).unwrap(),
            descriptions_v1: vec![
                "yellow ball in water".into(),
                "a yellow ball is floating in the water.".into(),
                "a yellow ball is in the water.".into(),
                "there is a yellow ball in the water.".into(),
                "a yellow ball is swimming in the water.".into(),
            ],
            descriptions_v2: vec!["The yellow ball in front of the ship is in the water.".into()],
        }
    }

    fn item_with_descriptions(v1: &[&str], v2: &[&str]) -> VsdItem {
        VsdItem {
            image: "img.jpg".into(),
            subject_tag: "subject".into(),
            object_tag: "object".into(),
            relation: RelationLabel::On,
            subject_bbox: BBox::new(0, 10, 0, 10).unwrap(),
            object_bbox: BBox::new(10, 20, 0, 10).unwrap(),
            descriptions_v1: v1.iter().map(|s| s.to_string()).collect(),
            descriptions_v2: v2.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn canonical_cfg() -> BuildConfig {
        // Single-template pools: sampling becomes deterministic regardless of
        // seed, which pins the canonical wording for golden checks.
        let defaults = TemplatePools::default();
        BuildConfig {
            seed: 7,
            stop_token: DEFAULT_STOP_TOKEN.into(),
            template_pools: TemplatePools {
                task1: vec![defaults.task1[0].clone()],
                task2: vec![defaults.task2[0].clone()],
                task3: vec![defaults.task3[0].clone()],
            },
        }
    }

    #[test]
    fn default_config_is_valid() {
        BuildConfig::default().validate().unwrap();
    }

    #[test]
    fn template_validation_catches_missing_placeholders() {
        let mut pools = TemplatePools::default();
        pools.task1[0] = "Pick a preposition for {SUBJ} and {OBJ}.".into();
        assert_eq!(
            pools.validate(),
            Err(BuildError::MissingPlaceholder {
                task: TaskId::Task1,
                index: 0,
                placeholder: LABEL_LIST
            })
        );
        pools.task1.clear();
        assert_eq!(pools.validate(), Err(BuildError::EmptyPool { task: TaskId::Task1 }));
    }

    #[test]
    fn task1_canonical_question_and_answer() {
        let item = full_example_item();
        let cfg = canonical_cfg();
        let mut rng = derive_stream(cfg.seed, 0, TaskId::Task1);
        let rec = build_task1_record(&item, 0, &cfg, &mut rng);
        assert_eq!(
            rec.question,
            "Given the image, choose the most appropriate preposition to complete the sentence: \
             'The yellow ball is [BLANK] the water'. Select from: on, in, next to, under, above, \
             behind, in front of, to the left of, to the right of."
        );
        assert_eq!(rec.answer, "in");
        assert_eq!(rec.id, "task1-0-0");
    }

    #[test]
    fn task1_answer_is_always_short_form() {
        let mut item = full_example_item();
        item.relation = RelationLabel::Left;
        let cfg = BuildConfig::with_seed(3);
        let mut rng = derive_stream(cfg.seed, 0, TaskId::Task1);
        assert_eq!(build_task1_record(&item, 0, &cfg, &mut rng).answer, "left");
    }

    #[test]
    fn same_seed_builds_identical_records() {
        let item = full_example_item();
        let cfg = BuildConfig::with_seed(42);
        let a = build_corpus(std::slice::from_ref(&item), &cfg);
        let b = build_corpus(&[item], &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn task2_covers_every_description_exactly_once() {
        let item = item_with_descriptions(&["d1", "d2"], &[]);
        let cfg = BuildConfig::with_seed(5);
        let mut rng = derive_stream(cfg.seed, 0, TaskId::Task2);
        let recs = build_task2_records(&item, 0, &cfg, &mut rng);
        let answers: BTreeSet<&str> = recs.iter().map(|r| r.answer.as_str()).collect();
        assert_eq!(recs.len(), 2);
        assert_eq!(answers, BTreeSet::from(["d1", "d2"]));
        assert_eq!(recs[0].id, "task2-0-0");
        assert_eq!(recs[1].id, "task2-0-1");
    }

    #[test]
    fn task2_full_example_contains_paper_answer() {
        let item = full_example_item();
        let cfg = canonical_cfg();
        let mut rng = derive_stream(cfg.seed, 0, TaskId::Task2);
        let recs = build_task2_records(&item, 0, &cfg, &mut rng);
        assert_eq!(recs.len(), 5);
        assert!(recs.iter().any(|r| r.answer == "a yellow ball is floating in the water."));
        assert!(recs.iter().all(|r| r.question.contains("yellow ball and water")));
    }

    #[test]
    fn task3_answer_has_stacked_first_line() {
        let item = full_example_item();
        let cfg = BuildConfig::with_seed(11);
        let mut rng = derive_stream(cfg.seed, 0, TaskId::Task3);
        let rec = build_task3_record(&item, 0, &cfg, &mut rng);
        let lines = rec.answer_lines();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "yellow ball in water.");
        assert!(item.descriptions_v1.iter().any(|d| d == lines[1]));
        assert_eq!(lines[2], "The yellow ball in front of the ship is in the water.");
        rec.validate().unwrap();
    }

    #[test]
    fn paper_triple_is_reachable_under_some_seed() {
        let item = full_example_item();
        let want_line2 = "there is a yellow ball in the water.";
        let found = (0..200u64).any(|seed| {
            let cfg = BuildConfig::with_seed(seed);
            let mut rng = derive_stream(cfg.seed, 0, TaskId::Task3);
            let rec = build_task3_record(&item, 0, &cfg, &mut rng);
            rec.answer_lines()[1] == want_line2
        });
        assert!(found, "expected second line to be reachable within 200 seeds");
    }

    #[test]
    fn stacked_line_for_above_pair() {
        let mut item = item_with_descriptions(&["there are many power lines above the train."], &[]);
        item.subject_tag = "power lines".into();
        item.object_tag = "train".into();
        item.relation = RelationLabel::Above;
        assert_eq!(stacked_sentence(&item), "power lines above train.");
    }

    #[test]
    fn task3_fallback_repeats_single_description() {
        let item = item_with_descriptions(&["only one"], &[]);
        let cfg = BuildConfig::with_seed(9);
        let mut rng = derive_stream(cfg.seed, 0, TaskId::Task3);
        let rec = build_task3_record(&item, 0, &cfg, &mut rng);
        let lines = rec.answer_lines();
        assert_eq!(lines[1], "only one");
        assert_eq!(lines[2], "only one");
    }

    #[test]
    fn task3_fallback_prefers_distinct_v1_sample() {
        let item = item_with_descriptions(&["first", "second", "third"], &[]);
        for seed in 0..50 {
            let cfg = BuildConfig::with_seed(seed);
            let mut rng = derive_stream(cfg.seed, 0, TaskId::Task3);
            let lines_owned = build_task3_record(&item, 0, &cfg, &mut rng).answer;
            let lines: Vec<&str> = lines_owned.split('\n').collect();
            assert_ne!(lines[1], lines[2], "seed {seed} repeated a line");
        }
    }

    #[test]
    fn render_plain_matches_format() {
        let cfg = canonical_cfg();
        let item = full_example_item();
        let mut rng = derive_stream(cfg.seed, 0, TaskId::Task1);
        let rec = build_task1_record(&item, 0, &cfg, &mut rng);
        let text = render_plain(&rec, &cfg);
        assert!(text.starts_with("Human: <image> Given the image, choose"));
        assert!(text.contains("Assistant: in <STOP>\n"));
        assert_eq!(text.matches("<STOP>").count(), 2);

        let custom = BuildConfig { stop_token: "###".into(), ..canonical_cfg() };
        let text = render_plain(&rec, &custom);
        assert!(!text.contains("<STOP>"));
        assert_eq!(text.matches("###").count(), 2);
    }

    #[test]
    fn corpus_count_law_and_order() {
        let items = vec![
            item_with_descriptions(&["a", "b"], &[]),
            item_with_descriptions(&["c", "d", "e"], &["x"]),
            item_with_descriptions(&["f", "g", "h", "i"], &[]),
        ];
        let cfg = BuildConfig::with_seed(1);
        let recs = build_corpus(&items, &cfg);
        assert_eq!(recs.len(), 2 * 3 + (2 + 3 + 4));
        let ids: Vec<&str> = recs.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "task1-0-0", "task1-1-0", "task1-2-0",
                "task2-0-0", "task2-0-1", "task2-1-0", "task2-1-1", "task2-1-2",
                "task2-2-0", "task2-2-1", "task2-2-2", "task2-2-3",
                "task3-0-0", "task3-1-0", "task3-2-0",
            ]
        );
    }

    #[test]
    fn full_example_builds_seven_records() {
        let recs = build_corpus(&[full_example_item()], &BuildConfig::with_seed(0));
        assert_eq!(recs.len(), 7);
    }

    #[test]
    fn empty_corpus_builds_nothing() {
        assert!(build_corpus(&[], &BuildConfig::default()).is_empty());
    }

    #[test]
    fn item_edits_do_not_perturb_other_items() {
        let items = vec![
            item_with_descriptions(&["a", "b", "c"], &["v"]),
            item_with_descriptions(&["d", "e"], &[]),
        ];
        let cfg = BuildConfig::with_seed(99);
        let before = build_corpus(&items, &cfg);
        let mut edited = items.clone();
        edited[0].descriptions_v1.push("extra".into());
        let after = build_corpus(&edited, &cfg);
        let before_item1: Vec<_> = before.iter().filter(|r| r.id.contains("-1-")).collect();
        let after_item1: Vec<_> = after.iter().filter(|r| r.id.contains("-1-")).collect();
        assert_eq!(before_item1, after_item1);
    }

    #[test]
    fn conversation_round_trip() {
        let items = vec![full_example_item()];
        let cfg = BuildConfig::with_seed(3);
        let conv = build_conversation_corpus(&items, &cfg);
        let plain = build_corpus(&items, &cfg);
        assert_eq!(conv.len(), plain.len());
        for (c, p) in conv.iter().zip(&plain) {
            assert_eq!(c.subject, "yellow ball");
            assert_eq!(c.object, "water");
            assert_eq!(&c.to_record().unwrap(), p);
            assert!(c.conversations[0].value.starts_with(IMAGE_TOKEN_PREFIX));
        }
        let line = serde_json::to_string(&conv[0]).unwrap();
        let back: ConversationRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, conv[0]);
    }
}
