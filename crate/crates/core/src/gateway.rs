//! Populates a corpus with model-generated solutions by posting task
//! descriptions to an HTTP completion endpoint and extracting Java code from
//! the replies.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::corpus::{save_manifest, Corpus, GeneratedSolution};
use crate::fsutil::write_atomic;
use crate::java::{parse_str, ParseOutcome};

pub const GENERATION_LOG: &str = "generation.log.jsonl";

#[derive(Debug, Error)]
pub enum GatewayError {
    #[error("invalid generation request: {0}")]
    InvalidRequest(String),
    #[error("invalid endpoint config: {0}")]
    Config(String),
    #[error("refusing to overwrite existing solution {0}")]
    SolutionExists(PathBuf),
    #[error("unknown task {0}")]
    UnknownTask(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// How to reach one completion endpoint.
///
/// `request_template` is any JSON value; string leaves have `{{model}}` and
/// `{{prompt}}` substituted. `response_pointer` is a JSON pointer to the
/// generated text in the reply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EndpointConfig {
    pub url: String,
    /// Name of the environment variable holding a bearer token.
    pub api_key_env: Option<String>,
    pub request_template: Value,
    pub response_pointer: String,
    pub timeout_secs: u64,
    pub max_retries: u32,
    /// Pause between consecutive requests of a batch.
    pub delay_ms: u64,
}

impl Default for EndpointConfig {
    fn default() -> Self {
        Self {
            url: String::new(),
            api_key_env: None,
            request_template: serde_json::json!({ "model": "{{model}}", "prompt": "{{prompt}}" }),
            response_pointer: "/text".into(),
            timeout_secs: 60,
            max_retries: 2,
            delay_ms: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationRequest {
    pub task_id: String,
    pub prompt: String,
    pub model_id: String,
    pub endpoint: String,
    pub timeout: Duration,
    pub max_retries: u32,
}

impl GenerationRequest {
    pub fn new(
        task_id: impl Into<String>,
        prompt: impl Into<String>,
        model_id: impl Into<String>,
        endpoint: impl Into<String>,
        timeout: Duration,
        max_retries: u32,
    ) -> Result<Self, GatewayError> {
        let req = Self {
            task_id: task_id.into(),
            prompt: prompt.into(),
            model_id: model_id.into(),
            endpoint: endpoint.into(),
            timeout,
            max_retries,
        };
        if req.prompt.trim().is_empty() {
            return Err(GatewayError::InvalidRequest(format!(
                "task {}: empty prompt",
                req.task_id
            )));
        }
        if req.timeout.is_zero() {
            return Err(GatewayError::InvalidRequest("timeout must be positive".into()));
        }
        Ok(req)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenerationStatus {
    Ok,
    NoCodeFound,
    TransportError,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub task_id: String,
    pub model_id: String,
    pub raw_response: String,
    pub extracted_code: Option<String>,
    pub status: GenerationStatus,
    pub attempts: u32,
    /// Last transport failure, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

struct Fence<'a> {
    tag: &'a str,
    body: String,
}

fn fence_open(line: &str) -> Option<&str> {
    let indent = line.len() - line.trim_start_matches(' ').len();
    let rest = line[indent..].strip_prefix("```")?;
    (indent <= 3).then(|| rest.trim_start_matches('`').trim())
}

fn fences(text: &str) -> Vec<Fence<'_>> {
    let mut out = Vec::new();
    let mut open: Option<(&str, Vec<&str>)> = None;
    for line in text.lines() {
        match (&mut open, fence_open(line)) {
            (None, Some(info)) => open = Some((info.split_whitespace().next().unwrap_or(""), Vec::new())),
            (None, None) => {}
            (Some(_), Some("")) => {
                let (tag, lines) = open.take().unwrap();
                out.push(Fence {
                    tag,
                    body: lines.join("\n"),
                });
            }
            (Some((_, lines)), _) => lines.push(line),
        }
    }
    // An unterminated fence runs to the end of the text.
    if let Some((tag, lines)) = open {
        out.push(Fence {
            tag,
            body: lines.join("\n"),
        });
    }
    out
}

/// Java code in a model reply: all `java` fences joined by a blank line,
/// else the largest untagged fence, else the whole text if it parses.
pub fn extract_code(response: &str) -> Option<String> {
    let blocks = fences(response);
    let java: Vec<&str> = blocks
        .iter()
        .filter(|f| f.tag.eq_ignore_ascii_case("java") && !f.body.trim().is_empty())
        .map(|f| f.body.as_str())
        .collect();
    if !java.is_empty() {
        return Some(java.join("\n\n"));
    }
    let mut largest: Option<&str> = None;
    for f in blocks.iter().filter(|f| f.tag.is_empty() && !f.body.trim().is_empty()) {
        if largest.is_none_or(|l| f.body.len() > l.len()) {
            largest = Some(&f.body);
        }
    }
    if let Some(body) = largest {
        return Some(body.to_string());
    }
    if response.trim().is_empty() {
        return None;
    }
    match parse_str(response) {
        ParseOutcome::Parsed(_) => Some(response.to_string()),
        ParseOutcome::Failed { .. } => None,
    }
}

fn fill(template: &Value, model: &str, prompt: &str) -> Value {
    match template {
        Value::String(s) => Value::String(s.replace("{{model}}", model).replace("{{prompt}}", prompt)),
        Value::Array(items) => Value::Array(items.iter().map(|v| fill(v, model, prompt)).collect()),
        Value::Object(map) => Value::Object(map.iter().map(|(k, v)| (k.clone(), fill(v, model, prompt))).collect()),
        other => other.clone(),
    }
}

enum Failure {
    Timeout(String),
    Transport(String),
}

fn is_timeout(e: &ureq::Error) -> bool {
    match e {
        ureq::Error::Timeout(_) => true,
        ureq::Error::Io(io) => io.kind() == std::io::ErrorKind::TimedOut,
        _ => false,
    }
}

/// Client for one endpoint.
#[derive(Debug, Clone)]
pub struct Gateway {
    pub config: EndpointConfig,
}

impl Gateway {
    pub fn new(config: EndpointConfig) -> Result<Self, GatewayError> {
        if config.url.is_empty() {
            return Err(GatewayError::Config("endpoint url is empty".into()));
        }
        if config.timeout_secs == 0 {
            return Err(GatewayError::Config("timeout_secs must be positive".into()));
        }
        if !config.response_pointer.is_empty() && !config.response_pointer.starts_with('/') {
            return Err(GatewayError::Config(format!(
                "bad response pointer `{}`",
                config.response_pointer
            )));
        }
        Ok(Self { config })
    }

    pub fn request(&self, task_id: &str, prompt: &str, model_id: &str) -> Result<GenerationRequest, GatewayError> {
        GenerationRequest::new(
            task_id,
            prompt,
            model_id,
            self.config.url.clone(),
            Duration::from_secs(self.config.timeout_secs),
            self.config.max_retries,
        )
    }

    fn attempt(&self, agent: &ureq::Agent, req: &GenerationRequest) -> Result<String, Failure> {
        let body = fill(&self.config.request_template, &req.model_id, &req.prompt);
        let mut call = agent.post(&req.endpoint);
        if let Some(key) = self.config.api_key_env.as_deref().and_then(|v| std::env::var(v).ok()) {
            call = call.header("Authorization", &format!("Bearer {key}"));
        }
        let classify = |e: ureq::Error| {
            if is_timeout(&e) {
                Failure::Timeout(e.to_string())
            } else {
                Failure::Transport(e.to_string())
            }
        };
        let mut resp = call.send_json(&body).map_err(classify)?;
        let status = resp.status().as_u16();
        let text = resp.body_mut().read_to_string().map_err(classify)?;
        if status >= 400 {
            return Err(Failure::Transport(format!("HTTP {status}: {text}")));
        }
        let json: Value =
            serde_json::from_str(&text).map_err(|e| Failure::Transport(format!("reply is not JSON: {e}")))?;
        match json.pointer(&self.config.response_pointer) {
            Some(Value::String(s)) => Ok(s.clone()),
            _ => Err(Failure::Transport(format!(
                "reply has no text at `{}`",
                self.config.response_pointer
            ))),
        }
    }

    /// Sends `req`, retrying transport failures up to `max_retries` times.
    /// Never fails: problems are encoded in the record's status.
    pub fn generate_solution(&self, req: &GenerationRequest) -> GenerationRecord {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(req.timeout))
            .http_status_as_error(false)
            .build()
            .into();
        let mut record = GenerationRecord {
            task_id: req.task_id.clone(),
            model_id: req.model_id.clone(),
            raw_response: String::new(),
            extracted_code: None,
            status: GenerationStatus::TransportError,
            attempts: 0,
            error: None,
        };
        for _ in 0..=req.max_retries {
            record.attempts += 1;
            match self.attempt(&agent, req) {
                Ok(text) => {
                    record.extracted_code = extract_code(&text);
                    record.status = if record.extracted_code.is_some() {
                        GenerationStatus::Ok
                    } else {
                        GenerationStatus::NoCodeFound
                    };
                    record.raw_response = text;
                    record.error = None;
                    return record;
                }
                Err(Failure::Timeout(m)) => {
                    record.status = GenerationStatus::Timeout;
                    record.error = Some(m);
                }
                Err(Failure::Transport(m)) => {
                    record.status = GenerationStatus::TransportError;
                    record.error = Some(m);
                }
            }
        }
        record
    }
}

/// Relative path of a generated solution inside the corpus.
pub fn solution_path(model_id: &str, task_id: &str) -> String {
    format!("solutions/{model_id}/{task_id}.java")
}

/// Appends `record` to the generation log and, when it carries code, writes
/// the solution file and registers it in the manifest. Existing solution
/// files are never replaced.
pub fn persist_record(corpus: &mut Corpus, record: &GenerationRecord) -> Result<Option<PathBuf>, GatewayError> {
    let log = corpus.root.join(GENERATION_LOG);
    append_line(&log, &serde_json::to_string(record).expect("record serializes"))?;
    let Some(code) = record
        .extracted_code
        .as_deref()
        .filter(|_| record.status == GenerationStatus::Ok)
    else {
        return Ok(None);
    };
    let task = corpus
        .tasks
        .iter_mut()
        .find(|t| t.task_id == record.task_id)
        .ok_or_else(|| GatewayError::UnknownTask(record.task_id.clone()))?;
    let rel = solution_path(&record.model_id, &record.task_id);
    let path = corpus.root.join(&rel);
    if path.exists() || task.solution(&record.model_id).is_some() {
        return Err(GatewayError::SolutionExists(path));
    }
    let mut text = code.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    write_atomic(&path, text.as_bytes()).map_err(|source| GatewayError::Io {
        path: path.clone(),
        source,
    })?;
    task.solutions.push(GeneratedSolution {
        model_id: record.model_id.clone(),
        path: rel,
        correct: None,
    });
    corpus.models.insert(record.model_id.clone());
    save_manifest(corpus, &corpus.root.clone()).map_err(|source| GatewayError::Io {
        path: corpus.root.join(crate::corpus::MANIFEST_FILE),
        source,
    })?;
    Ok(Some(path))
}

fn append_line(path: &Path, line: &str) -> Result<(), GatewayError> {
    let io = |source| GatewayError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    f.write_all(format!("{line}\n").as_bytes()).map_err(io)
}

/// Generates solutions of `model_id` for every task that lacks one, one
/// request at a time. The task description is sent verbatim.
pub fn generate_corpus(
    gateway: &Gateway,
    corpus: &mut Corpus,
    model_id: &str,
) -> Result<Vec<GenerationRecord>, GatewayError> {
    let pending: Vec<(String, String)> = corpus
        .tasks
        .iter()
        .filter(|t| t.solution(model_id).is_none())
        .map(|t| (t.task_id.clone(), t.description.clone()))
        .collect();
    let mut records = Vec::new();
    for (i, (task_id, prompt)) in pending.iter().enumerate() {
        if i > 0 && gateway.config.delay_ms > 0 {
            thread::sleep(Duration::from_millis(gateway.config.delay_ms));
        }
        let req = gateway.request(task_id, prompt, model_id)?;
        let record = gateway.generate_solution(&req);
        persist_record(corpus, &record)?;
        records.push(record);
    }
    Ok(records)
}
