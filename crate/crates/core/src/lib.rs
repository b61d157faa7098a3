//! Toolkit for visual spatial description corpora: loading and validating
//! annotated items, compiling them into three-task instruction-following
//! datasets, scoring predictions (BLEU-4, SPICE-lite, Self-BLEU, multi-label
//! F1), composing the weighted ranking score, and rewriting descriptions for
//! diversity through a pluggable chat-completion transport.
//!
//! The corpus line format is JSONL, one object per line:
//!
//! ```json
//! {"image": "000001.jpg", "subject": "yellow ball", "object": "water",
//!  "relation": "in", "subject_bbox": [650, 680, 394, 424],
//!  "object_bbox": [5, 677, 0, 992],
//!  "descriptions_v1": ["yellow ball in water"], "descriptions_v2": []}
//! ```
//!
//! Bounding boxes are `[y_min, y_max, x_min, x_max]` with y growing downward.

pub mod baseline;
pub mod bbox;
pub mod builder;
pub mod corpus;
pub mod diversify;
pub mod item;
pub mod metrics;
pub mod relation;
pub mod scoring;
pub mod spice;

pub use baseline::{predict_relation, predict_relation_explained, GeoConfig, GeoPrediction};
pub use bbox::{BBox, BBoxError};
pub use builder::{
    build_conversation_corpus, build_corpus, render_plain, stacked_sentence, BuildConfig,
    ConversationRecord, TemplatePools,
};
pub use corpus::{load_corpus, write_corpus, CorpusError, CorpusStats, LoadMode, LoadOutcome};
pub use diversify::{
    build_prompt, diversify_corpus, diversify_record, validate_diversity, ChatRequest,
    ChatTransport, DiversifyConfig, DiversifyOutcome, StubTransport, TransportError,
};
pub use item::{InstructRecord, TaskId, VsdItem};
pub use metrics::{
    bleu4, corpus_bleu4, corpus_self_bleu4, instance_bleu4, macro_f1, micro_f1, self_bleu4,
    tokenize, LabelSet, TokenSeq,
};
pub use relation::{
    label_from_surface, label_list_sentence, surface_for, RelationLabel, SurfaceStyle,
    UnknownLabel, ALL_LABELS,
};
pub use scoring::{compose_scores, fmt4, score_ablation, MetricReport, ScoreError};
pub use spice::{
    corpus_spice, extract_triples, instance_spice, triple_group_spice, tuple_fscore, TripleSet,
};
