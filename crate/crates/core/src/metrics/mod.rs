//! Lexical evaluation metrics: tokenization, BLEU-4 variants, and
//! multi-label F1.

pub mod bleu;
pub mod f1;
pub mod tokenize;

pub use bleu::{
    bleu4, corpus_bleu4, corpus_self_bleu4, instance_bleu4, self_bleu4, BleuError, MAX_ORDER,
    SMOOTH_EPS,
};
pub use f1::{macro_f1, micro_f1, F1Error, LabelSet};
pub use tokenize::{is_punctuation, tokenize, TokenSeq};
