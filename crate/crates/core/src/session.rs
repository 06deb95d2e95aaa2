//! The liveness loop: edit/focus triggers, inspections, applies and the
//! append-only refactoring log.
//!
//! [`Session`] is a plain single-owner state machine. Callers that need
//! concurrency (the server, the watcher) wrap it in a lock, which gives the
//! one-writer discipline: an apply and an inspection of the same file never
//! interleave.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::candidates::analyze;
use crate::error::{Error, Result};
use crate::extraction::apply_extract_method;
use crate::frontend::parse_source;
use crate::{Config, MetricsReport};

pub const LOG_FILE: &str = "refactoring-log.jsonl";

pub type AnalysisResult = crate::candidates::AnalysisResult<f64>;

/// One applied refactoring, as stored in the log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotRecord {
    /// UTC milliseconds since the epoch.
    pub timestamp: u64,
    pub file: String,
    pub candidate_id: String,
    pub method_name: String,
    pub before: MetricsReport,
    pub after_host: MetricsReport,
    pub after_new: MetricsReport,
    /// Time from publication of the candidate set to the apply request.
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EditOutcome {
    Triggered,
    Accumulated,
}

/// The latest published inspection of one file.
#[derive(Debug, Clone)]
pub struct Published {
    pub text: String,
    pub result: AnalysisResult,
    /// Increases with every publication in the session, across files.
    pub generation: u64,
    pub published_at: Instant,
}

pub fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

pub struct Session {
    root: PathBuf,
    cfg: Config,
    current: HashMap<PathBuf, Published>,
    pending: HashMap<PathBuf, u32>,
    generation: u64,
    inspections: u64,
}

impl Session {
    pub fn new(root: impl Into<PathBuf>, cfg: Config) -> Self {
        Session {
            root: root.into(),
            cfg,
            current: HashMap::new(),
            pending: HashMap::new(),
            generation: 0,
            inspections: 0,
        }
    }

    /// Session over `root` with its `liveref.json` (or defaults). Returns
    /// config warnings alongside.
    pub fn open(root: impl Into<PathBuf>) -> Result<(Self, Vec<String>)> {
        let root = root.into();
        let (cfg, warnings) = Config::load_workspace(&root)?;
        Ok((Session::new(root, cfg), warnings))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    pub fn log_path(&self) -> PathBuf {
        self.root.join(LOG_FILE)
    }

    /// Number of inspections run so far.
    pub fn inspections(&self) -> u64 {
        self.inspections
    }

    pub fn resolve(&self, file: impl AsRef<Path>) -> PathBuf {
        let file = file.as_ref();
        if file.is_absolute() {
            file.to_path_buf()
        } else {
            self.root.join(file)
        }
    }

    /// Path as shown in documents and records: relative to the root when possible.
    fn display(&self, path: &Path) -> String {
        path.strip_prefix(&self.root).unwrap_or(path).to_string_lossy().replace('\\', "/")
    }

    pub fn current(&self, file: impl AsRef<Path>) -> Option<&Published> {
        self.current.get(&self.resolve(file))
    }

    /// Count an edit toward the trigger threshold without inspecting.
    pub fn record_edit(&mut self, file: impl AsRef<Path>, changed_chars: u32) -> EditOutcome {
        let key = self.resolve(file);
        let pending = self.pending.entry(key).or_insert(0);
        if self.cfg.accumulate_edits {
            *pending += changed_chars;
        } else {
            *pending = changed_chars;
        }
        if *pending >= self.cfg.edit_trigger_chars {
            *pending = 0;
            EditOutcome::Triggered
        } else {
            EditOutcome::Accumulated
        }
    }

    /// Record an edit and inspect immediately if it crosses the threshold.
    pub fn on_edit(&mut self, file: impl AsRef<Path>, changed_chars: u32) -> Result<EditOutcome> {
        let file = file.as_ref();
        let outcome = self.record_edit(file, changed_chars);
        if outcome == EditOutcome::Triggered {
            self.run_inspection(file)?;
        }
        Ok(outcome)
    }

    /// Focus changes always inspect.
    pub fn on_focus(&mut self, file: impl AsRef<Path>) -> Result<&Published> {
        self.run_inspection(file)
    }

    /// Read the file, run the whole pipeline and publish the result.
    pub fn run_inspection(&mut self, file: impl AsRef<Path>) -> Result<&Published> {
        let path = self.resolve(file);
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Ok(self.inspect_text(&path, text))
    }

    fn inspect_text(&mut self, path: &Path, text: String) -> &Published {
        let shown = self.display(path);
        let (unit, diagnostics) = parse_source(&text, &shown);
        let result = analyze(&unit, &diagnostics, &self.cfg, now_ms());
        self.generation += 1;
        self.inspections += 1;
        let published = Published { text, result, generation: self.generation, published_at: Instant::now() };
        self.current.insert(path.to_path_buf(), published);
        &self.current[path]
    }

    /// Apply a published candidate: rewrite, persist atomically, log the
    /// snapshot, and re-inspect.
    pub fn apply_refactoring(
        &mut self,
        file: impl AsRef<Path>,
        candidate_id: &str,
        name: Option<&str>,
    ) -> Result<SnapshotRecord> {
        let path = self.resolve(file);
        let stale = || Error::StaleCandidate { id: candidate_id.to_string() };
        let published = self.current.get(&path).ok_or_else(|| Error::NoAnalysis(path.clone()))?;
        let candidate = published.result.candidate(candidate_id).ok_or_else(stale)?.clone();
        let on_disk = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        if on_disk != published.text {
            return Err(stale());
        }
        let elapsed_ms = published.published_at.elapsed().as_millis() as u64;
        let (unit, _) = parse_source(&published.text, self.display(&path));
        let rewrite = apply_extract_method(&unit, &candidate, name)?;

        write_atomically(&path, &rewrite.new_text)?;
        let record = SnapshotRecord {
            timestamp: now_ms(),
            file: self.display(&path),
            candidate_id: candidate.id.clone(),
            method_name: candidate.method_name.clone(),
            before: rewrite.host_before,
            after_host: rewrite.host_after,
            after_new: rewrite.extracted,
            elapsed_ms,
        };
        append_record(&self.log_path(), &record)?;
        self.pending.remove(&path);
        self.inspect_text(&path, rewrite.new_text);
        Ok(record)
    }
}

fn write_atomically(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.liveref-tmp"));
    let result = fs::write(&tmp, text).and_then(|_| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(|e| Error::io(path, e))
}

pub fn append_record(log: &Path, record: &SnapshotRecord) -> Result<()> {
    let line = serde_json::to_string(record).expect("records serialize");
    let mut f = OpenOptions::new().create(true).append(true).open(log).map_err(|e| Error::io(log, e))?;
    writeln!(f, "{line}").map_err(|e| Error::io(log, e))
}

/// Every record in a log file; a missing file is an empty log.
pub fn read_log(log: &Path) -> Result<Vec<SnapshotRecord>> {
    let text = match fs::read_to_string(log) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::io(log, e)),
    };
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Log { line: i + 1, message: e.to_string() }))
        .collect()
}

/// Metrics tracked in log summaries, in display order.
pub const SUMMARY_METRICS: [&str; 6] = ["loc", "cc", "cog", "volume", "effort", "mi"];

fn metric(m: &MetricsReport, key: &str) -> f64 {
    match key {
        "loc" => m.loc as f64,
        "cc" => m.cc as f64,
        "cog" => m.cog as f64,
        "volume" => m.halstead.volume,
        "effort" => m.halstead.effort,
        "mi" => m.mi,
        _ => unreachable!("unknown summary metric {key}"),
    }
}

/// Percentage improvement of the host method for one metric. Lower is
/// better for every metric except MI.
pub fn improvement(key: &str, before: &MetricsReport, after: &MetricsReport) -> f64 {
    let (b, a) = (metric(before, key), metric(after, key));
    if b == 0.0 {
        return 0.0;
    }
    if key == "mi" {
        (a - b) / b * 100.0
    } else {
        (b - a) / b * 100.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogSummary {
    pub refactorings: usize,
    /// Mean percentage improvement per metric; empty when there are no records.
    pub mean_improvement: BTreeMap<String, f64>,
}

impl LogSummary {
    pub fn from_records(records: &[SnapshotRecord]) -> Self {
        let mut mean_improvement = BTreeMap::new();
        if !records.is_empty() {
            for key in SUMMARY_METRICS {
                let sum: f64 = records.iter().map(|r| improvement(key, &r.before, &r.after_host)).sum();
                mean_improvement.insert(key.to_string(), sum / records.len() as f64);
            }
        }
        LogSummary { refactorings: records.len(), mean_improvement }
    }

    pub fn replay(log: &Path) -> Result<Self> {
        Ok(Self::from_records(&read_log(log)?))
    }
}
