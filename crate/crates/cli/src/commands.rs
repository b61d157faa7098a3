//! Implementations of the CLI subcommands. Each returns the process exit
//! code: 0 success, 1 input/validation error (raised as `Err`), 2 transport
//! failures under `--strict`.

use crate::predictions::load_predictions;
use crate::transport::transport_for;
use anyhow::{anyhow, bail, Context, Result};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use vsd_core::builder::{build_conversation_corpus, render_plain, BuildConfig, ConversationRecord};
use vsd_core::corpus::{load_corpus, LoadMode, LoadOutcome};
use vsd_core::diversify::{diversify_corpus, DiversifyConfig};
use vsd_core::scoring::compose_scores;
use vsd_core::spice::extract_triples;
use vsd_core::{predict_relation, GeoConfig, InstructRecord, TaskId};

fn open_corpus(path: &Path, mode: LoadMode) -> Result<LoadOutcome> {
    let file = File::open(path).with_context(|| format!("opening corpus {}", path.display()))?;
    let outcome = load_corpus(BufReader::new(file), mode)
        .with_context(|| format!("loading corpus {}", path.display()))?;
    for err in &outcome.skipped {
        eprintln!("warning: skipped {err}");
    }
    Ok(outcome)
}

fn create_out(path: &Path) -> Result<BufWriter<File>> {
    let file =
        File::create(path).with_context(|| format!("creating output {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn load_mode(lenient: bool) -> LoadMode {
    if lenient {
        LoadMode::Lenient
    } else {
        LoadMode::Strict
    }
}

pub fn cmd_build(
    corpus: &Path,
    config: Option<&Path>,
    out: &Path,
    seed: Option<u64>,
    plain: bool,
    lenient: bool,
) -> Result<i32> {
    let mut cfg: BuildConfig = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("parsing config {}", path.display()))?
        }
        None => BuildConfig::default(),
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    cfg.validate()?;

    let outcome = open_corpus(corpus, load_mode(lenient))?;
    let records = build_conversation_corpus(&outcome.items, &cfg);
    let mut writer = create_out(out)?;
    if plain {
        for record in &records {
            let rec = record.to_record().expect("built records are always well-formed");
            writer.write_all(render_plain(&rec, &cfg).as_bytes())?;
        }
    } else {
        for record in &records {
            serde_json::to_writer(&mut writer, record)?;
            writer.write_all(b"\n")?;
        }
    }
    writer.flush()?;

    println!("{}", serde_json::to_string(&outcome.stats)?);
    eprintln!("wrote {} records to {}", records.len(), out.display());
    Ok(0)
}

pub fn cmd_baseline(
    corpus: &Path,
    out: &Path,
    containment_threshold: f64,
    contact_tolerance: u32,
    lenient: bool,
) -> Result<i32> {
    let cfg = GeoConfig::new(containment_threshold, contact_tolerance)?;
    let outcome = open_corpus(corpus, load_mode(lenient))?;
    let mut writer = create_out(out)?;
    for (i, item) in outcome.items.iter().enumerate() {
        let label = predict_relation(&item.subject_bbox, &item.object_bbox, &cfg);
        let line = serde_json::json!({
            "id": crate::predictions::gold_id(i),
            "label": label.short(),
        });
        serde_json::to_writer(&mut writer, &line)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;
    eprintln!("wrote {} predictions to {}", outcome.items.len(), out.display());
    Ok(0)
}

pub fn cmd_eval(task: TaskId, gold: &Path, predictions: &Path, use_macro_f1: bool) -> Result<i32> {
    let outcome = open_corpus(gold, LoadMode::Strict)?;
    let file = File::open(predictions)
        .with_context(|| format!("opening predictions {}", predictions.display()))?;
    let preds = load_predictions(BufReader::new(file), task)
        .with_context(|| format!("loading predictions {}", predictions.display()))?;
    let fragment = crate::evaluate::evaluate(task, &outcome.items, &preds, use_macro_f1)?;
    println!("{fragment}");
    Ok(0)
}

/// Collects the five metric values from fragment files and flag overrides.
pub struct ScoreInputs {
    pub f1: Option<f64>,
    pub bleu4: Option<f64>,
    pub spice_t2: Option<f64>,
    pub mbleu4: Option<f64>,
    pub spice_t3: Option<f64>,
}

pub fn cmd_score(flags: ScoreInputs, fragments: &[PathBuf]) -> Result<i32> {
    let mut values: [(&str, Option<f64>); 5] = [
        ("f1", None),
        ("bleu4", None),
        ("spice_t2", None),
        ("mbleu4", None),
        ("spice_t3", None),
    ];
    for path in fragments {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading fragment {}", path.display()))?;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let json: serde_json::Value = serde_json::from_str(line)
                .with_context(|| format!("parsing fragment {}", path.display()))?;
            for (name, slot) in values.iter_mut() {
                if let Some(v) = json.get(*name).and_then(serde_json::Value::as_f64) {
                    *slot = Some(v);
                }
            }
        }
    }
    for (name, flag) in [
        ("f1", flags.f1),
        ("bleu4", flags.bleu4),
        ("spice_t2", flags.spice_t2),
        ("mbleu4", flags.mbleu4),
        ("spice_t3", flags.spice_t3),
    ] {
        if flag.is_some() {
            let slot = values.iter_mut().find(|(n, _)| *n == name).expect("known name");
            slot.1 = flag;
        }
    }
    let missing: Vec<&str> =
        values.iter().filter(|(_, v)| v.is_none()).map(|(n, _)| *n).collect();
    if !missing.is_empty() {
        bail!("missing metric values: {}", missing.join(", "));
    }
    let [f1, bleu4, spice_t2, mbleu4, spice_t3] = values.map(|(_, v)| v.unwrap());
    let report = compose_scores(f1, bleu4, spice_t2, mbleu4, spice_t3)?;
    println!("{}", report.to_json());
    eprint!("{}", report.text_table());
    Ok(0)
}

fn read_conversation_records(path: &Path) -> Result<Vec<ConversationRecord>> {
    let file = File::open(path).with_context(|| format!("opening records {}", path.display()))?;
    let mut records = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let text = line?;
        if text.trim().is_empty() {
            continue;
        }
        let record: ConversationRecord = serde_json::from_str(&text)
            .with_context(|| format!("{}:{}: malformed record", path.display(), idx + 1))?;
        records.push(record);
    }
    Ok(records)
}

pub fn cmd_diversify(
    records_path: &Path,
    config: Option<&Path>,
    out: &Path,
    strict: bool,
    endpoint: Option<String>,
    model: Option<String>,
    api_key_env: Option<String>,
) -> Result<i32> {
    let mut cfg: DiversifyConfig = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("parsing config {}", path.display()))?
        }
        None => DiversifyConfig::default(),
    };
    if let Some(endpoint) = endpoint {
        cfg.endpoint_url = endpoint;
    }
    if let Some(model) = model {
        cfg.model_name = model;
    }
    if let Some(var) = api_key_env {
        cfg.api_key_env_var = var;
    }
    cfg.validate()?;

    let conversations = read_conversation_records(records_path)?;
    let inputs: Vec<(InstructRecord, String, String)> = conversations
        .iter()
        .map(|c| {
            let rec = c.to_record()?;
            Ok((rec, c.subject.clone(), c.object.clone()))
        })
        .collect::<Result<_, vsd_core::builder::BuildError>>()?;

    let transport = transport_for(&cfg);
    let result = diversify_corpus(&inputs, &cfg, transport.as_ref())?;

    let mut writer = create_out(out)?;
    for (conversation, record) in conversations.iter().zip(&result.records) {
        let mut updated = conversation.clone();
        updated.conversations[1].value = record.answer.clone();
        serde_json::to_writer(&mut writer, &updated)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;

    let audit_path = audit_path_for(out);
    let mut audit = create_out(&audit_path)?;
    for entry in &result.audits {
        serde_json::to_writer(&mut audit, entry)?;
        audit.write_all(b"\n")?;
    }
    audit.flush()?;

    println!("{}", serde_json::to_string(&result.counts)?);
    eprintln!(
        "wrote {} records to {} (audit: {})",
        result.records.len(),
        out.display(),
        audit_path.display()
    );
    if strict && result.counts.transport_error > 0 {
        eprintln!("error: {} transport failures under --strict", result.counts.transport_error);
        return Ok(2);
    }
    Ok(0)
}

/// Sidecar audit log path: `<out>.audit.jsonl`.
pub fn audit_path_for(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_os_string();
    s.push(".audit.jsonl");
    PathBuf::from(s)
}

pub fn cmd_parse_debug(sentence: &str) -> Result<i32> {
    let triples = extract_triples(sentence);
    println!(
        "{}",
        serde_json::to_string_pretty(&triples).map_err(|e| anyhow!("serializing triples: {e}"))?
    );
    Ok(0)
}
