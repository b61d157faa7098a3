//! Description rewriting through an external chat-completion endpoint.
//!
//! For each open-ended (task 3) record, the second answer sentence is sent as
//! the base of a rewrite prompt; a response is accepted only if it shares no
//! word bigram with the base. Accepted responses replace the configured
//! answer line, otherwise the record is kept unchanged. The transport is an
//! injected interface, so tests and offline runs use a deterministic stub.

use crate::item::{InstructRecord, TaskId};
use crate::metrics::tokenize::tokenize;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use thiserror::Error;

/// Rewrite-pass configuration. The API key is read from the environment
/// variable named here, never from a config file body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DiversifyConfig {
    /// Chat-completions endpoint; the `stub:` scheme selects the built-in
    /// offline rewriter.
    pub endpoint_url: String,
    pub model_name: String,
    pub api_key_env_var: String,
    /// Extra attempts after the first one.
    pub max_retries: u32,
    pub timeout_secs: u64,
    pub max_concurrency: usize,
    /// Which of the three answer lines the accepted rewrite replaces (1-3).
    pub replace_index: usize,
    pub temperature: f64,
}

impl Default for DiversifyConfig {
    fn default() -> Self {
        DiversifyConfig {
            endpoint_url: "stub:".to_string(),
            model_name: "stub-rewriter".to_string(),
            api_key_env_var: "VSD_API_KEY".to_string(),
            max_retries: 3,
            timeout_secs: 30,
            max_concurrency: 4,
            replace_index: 3,
            temperature: 0.7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiversifyError {
    #[error("prompt field {0} must be nonempty")]
    EmptyField(&'static str),
    #[error("record {id}: not a rewritable record: {detail}")]
    MalformedRecord { id: String, detail: String },
    #[error("replace_index must be 1, 2, or 3, got {0}")]
    BadReplaceIndex(usize),
    #[error("max_concurrency must be at least 1")]
    BadConcurrency,
}

impl DiversifyConfig {
    pub fn validate(&self) -> Result<(), DiversifyError> {
        if !(1..=3).contains(&self.replace_index) {
            return Err(DiversifyError::BadReplaceIndex(self.replace_index));
        }
        if self.max_concurrency == 0 {
            return Err(DiversifyError::BadConcurrency);
        }
        Ok(())
    }
}

/// One message of a chat-completion request body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

/// Wire shape of a chat-completion request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model: String,
    pub messages: Vec<ChatMessage>,
    pub temperature: f64,
}

impl ChatRequest {
    pub fn user(model: &str, prompt: String, temperature: f64) -> Self {
        ChatRequest {
            model: model.to_string(),
            messages: vec![ChatMessage { role: "user".to_string(), content: prompt }],
            temperature,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error("network failure: {0}")]
    Network(String),
    #[error("endpoint returned status {status}: {detail}")]
    Status { status: u16, detail: String },
    #[error("malformed endpoint response: {0}")]
    BadResponse(String),
}

/// Anything that can answer a chat request with the first choice's text.
pub trait ChatTransport: Sync {
    fn complete(&self, request: &ChatRequest) -> Result<String, TransportError>;
}

/// Builds the rewrite prompt for one base description.
pub fn build_prompt(subject: &str, object: &str, description: &str) -> Result<String, DiversifyError> {
    if subject.trim().is_empty() {
        return Err(DiversifyError::EmptyField("subject"));
    }
    if object.trim().is_empty() {
        return Err(DiversifyError::EmptyField("object"));
    }
    if description.trim().is_empty() {
        return Err(DiversifyError::EmptyField("description"));
    }
    Ok(format!(
        "Given the image and a concise spatial relationship description between {subject} and \
         {object}: '{description}', generate a simpler sentence with a similar meaning. Keep the \
         main structure of the sentence, but replace words or phrases with simpler adjectives, \
         verbs, or synonyms, ensuring no consecutive words from the original description remain \
         the same"
    ))
}

fn word_bigrams(s: &str) -> HashSet<(String, String)> {
    let seq = tokenize(s);
    let words: Vec<&str> = seq.words().collect();
    words
        .windows(2)
        .map(|w| (w[0].to_string(), w[1].to_string()))
        .collect()
}

/// True iff the rewrite has at least one content word and shares no word
/// bigram with the base (punctuation tokens excluded).
pub fn validate_diversity(base: &str, rewrite: &str) -> bool {
    if tokenize(rewrite).words().next().is_none() {
        return false;
    }
    word_bigrams(base).is_disjoint(&word_bigrams(rewrite))
}

/// What happened to one record during the rewrite pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiversifyOutcome {
    Replaced,
    FallbackKeptOriginal,
    TransportError,
}

/// Audit-log line for one processed record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordAudit {
    pub id: String,
    pub base: String,
    /// Last response received, if any.
    pub response: Option<String>,
    pub outcome: DiversifyOutcome,
    pub attempts: u32,
}

/// A rewritten (or preserved) record plus its audit entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiversifiedRecord {
    pub record: InstructRecord,
    pub audit: RecordAudit,
}

fn collapse_single_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Rewrites one task-3 record. The base of the prompt is always the second
/// answer line; an accepted response replaces line `cfg.replace_index`.
/// Transport failures and rejected responses never alter the record.
pub fn diversify_record(
    rec: &InstructRecord,
    subject: &str,
    object: &str,
    cfg: &DiversifyConfig,
    transport: &dyn ChatTransport,
) -> Result<DiversifiedRecord, DiversifyError> {
    cfg.validate()?;
    let malformed = |detail: &str| DiversifyError::MalformedRecord {
        id: rec.id.clone(),
        detail: detail.to_string(),
    };
    if rec.task != TaskId::Task3 {
        return Err(malformed(&format!("task is {}, expected task3", rec.task)));
    }
    let lines: Vec<String> = rec.answer.split('\n').map(str::to_string).collect();
    if lines.len() != 3 || lines.iter().any(|l| l.trim().is_empty()) {
        return Err(malformed("answer must have exactly 3 nonempty lines"));
    }
    let base = &lines[1];
    let prompt = build_prompt(subject, object, base)?;
    let request = ChatRequest::user(&cfg.model_name, prompt, cfg.temperature);

    let mut attempts = 0u32;
    let mut last_response: Option<String> = None;
    let mut any_response = false;
    while attempts <= cfg.max_retries {
        attempts += 1;
        match transport.complete(&request) {
            Ok(raw) => {
                any_response = true;
                let rewrite = collapse_single_line(&raw);
                last_response = Some(rewrite.clone());
                if validate_diversity(base, &rewrite) {
                    let mut new_lines = lines.clone();
                    new_lines[cfg.replace_index - 1] = rewrite.clone();
                    let record = InstructRecord {
                        answer: new_lines.join("\n"),
                        ..rec.clone()
                    };
                    return Ok(DiversifiedRecord {
                        record,
                        audit: RecordAudit {
                            id: rec.id.clone(),
                            base: base.clone(),
                            response: Some(rewrite),
                            outcome: DiversifyOutcome::Replaced,
                            attempts,
                        },
                    });
                }
            }
            Err(err) => {
                last_response = Some(err.to_string());
            }
        }
    }
    let outcome = if any_response {
        DiversifyOutcome::FallbackKeptOriginal
    } else {
        DiversifyOutcome::TransportError
    };
    Ok(DiversifiedRecord {
        record: rec.clone(),
        audit: RecordAudit {
            id: rec.id.clone(),
            base: base.clone(),
            response: last_response,
            outcome,
            attempts,
        },
    })
}

/// Per-outcome tallies for a corpus pass; the three counts always partition
/// the processed record set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct OutcomeCounts {
    pub replaced: usize,
    pub fallback_kept_original: usize,
    pub transport_error: usize,
}

impl OutcomeCounts {
    pub fn total(&self) -> usize {
        self.replaced + self.fallback_kept_original + self.transport_error
    }

    fn add(&mut self, outcome: DiversifyOutcome) {
        match outcome {
            DiversifyOutcome::Replaced => self.replaced += 1,
            DiversifyOutcome::FallbackKeptOriginal => self.fallback_kept_original += 1,
            DiversifyOutcome::TransportError => self.transport_error += 1,
        }
    }
}

/// Result of a whole-corpus rewrite pass; output order equals input order.
#[derive(Debug, Clone)]
pub struct CorpusDiversifyResult {
    pub records: Vec<InstructRecord>,
    pub audits: Vec<RecordAudit>,
    pub counts: OutcomeCounts,
}

/// Rewrites a corpus of task-3 records, `(record, subject, object)` each,
/// with up to `cfg.max_concurrency` requests in flight.
pub fn diversify_corpus(
    inputs: &[(InstructRecord, String, String)],
    cfg: &DiversifyConfig,
    transport: &dyn ChatTransport,
) -> Result<CorpusDiversifyResult, DiversifyError> {
    cfg.validate()?;
    let workers = cfg.max_concurrency.min(inputs.len()).max(1);
    let next = AtomicUsize::new(0);
    let mut worker_outputs: Vec<Vec<(usize, Result<DiversifiedRecord, DiversifyError>)>> =
        Vec::new();

    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                let next = &next;
                scope.spawn(move || {
                    let mut local = Vec::new();
                    loop {
                        let idx = next.fetch_add(1, Ordering::Relaxed);
                        if idx >= inputs.len() {
                            break;
                        }
                        let (rec, subject, object) = &inputs[idx];
                        local.push((idx, diversify_record(rec, subject, object, cfg, transport)));
                    }
                    local
                })
            })
            .collect();
        for handle in handles {
            worker_outputs.push(handle.join().expect("diversify worker panicked"));
        }
    });

    let mut slots: Vec<Option<DiversifiedRecord>> = vec![None; inputs.len()];
    let mut first_error: Option<(usize, DiversifyError)> = None;
    for (idx, result) in worker_outputs.into_iter().flatten() {
        match result {
            Ok(done) => slots[idx] = Some(done),
            Err(err) => {
                if first_error.as_ref().is_none_or(|(i, _)| idx < *i) {
                    first_error = Some((idx, err));
                }
            }
        }
    }
    if let Some((_, err)) = first_error {
        return Err(err);
    }

    let mut records = Vec::with_capacity(inputs.len());
    let mut audits = Vec::with_capacity(inputs.len());
    let mut counts = OutcomeCounts::default();
    for slot in slots {
        let done = slot.expect("every index processed");
        counts.add(done.audit.outcome);
        records.push(done.record);
        audits.push(done.audit);
    }
    Ok(CorpusDiversifyResult { records, audits, counts })
}

// --- offline stub ----------------------------------------------------------

/// Deterministic offline rewriter.
///
/// Every word of the base description is replaced by a fixed synonym, or an
/// `alt-` prefixed copy when no synonym exists or the synonym collides with a
/// word of the base. No output word ever equals a base word, so validation
/// always accepts the first attempt.
#[derive(Debug, Default, Clone, Copy)]
pub struct StubTransport;

const STUB_SYNONYMS: [(&str, &str); 24] = [
    ("a", "one"),
    ("an", "one"),
    ("the", "that"),
    ("this", "that"),
    ("is", "appears"),
    ("are", "appear"),
    ("there", "here"),
    ("in", "inside"),
    ("on", "atop"),
    ("under", "beneath"),
    ("below", "beneath"),
    ("above", "over"),
    ("behind", "beyond"),
    ("front", "fore"),
    ("next", "close"),
    ("to", "toward"),
    ("of", "from"),
    ("left", "leftward"),
    ("right", "rightward"),
    ("ball", "sphere"),
    ("water", "liquid"),
    ("yellow", "golden"),
    ("big", "large"),
    ("small", "little"),
];

impl StubTransport {
    /// Pulls the quoted base description back out of the rewrite prompt.
    pub fn base_from_prompt(prompt: &str) -> Option<&str> {
        let start = prompt.find(": '")? + 3;
        let end = prompt.rfind("', generate")?;
        (start <= end).then(|| &prompt[start..end])
    }

    pub fn rewrite(base: &str) -> String {
        let seq = tokenize(base);
        let base_words: HashSet<&str> = seq.words().collect();
        let mut out: Vec<String> = Vec::new();
        for token in seq.tokens() {
            if crate::metrics::tokenize::is_punctuation(token) {
                out.push(token.clone());
                continue;
            }
            let mut mapped = STUB_SYNONYMS
                .iter()
                .find(|(from, _)| from == token)
                .map(|(_, to)| to.to_string())
                .filter(|to| !base_words.contains(to.as_str()))
                .unwrap_or_else(|| format!("alt-{token}"));
            // Keep prefixing until the word is guaranteed absent from the base.
            while base_words.contains(mapped.as_str()) {
                mapped = format!("alt-{mapped}");
            }
            out.push(mapped);
        }
        out.join(" ")
    }
}

impl ChatTransport for StubTransport {
    fn complete(&self, request: &ChatRequest) -> Result<String, TransportError> {
        let prompt = request
            .messages
            .last()
            .map(|m| m.content.as_str())
            .unwrap_or_default();
        let base = Self::base_from_prompt(prompt)
            .ok_or_else(|| TransportError::BadResponse("prompt carries no description".into()))?;
        Ok(Self::rewrite(base))
    }
}
