//! Batch commands: `analyze`, `apply` and `export-html`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use liveref_core::candidates::analyze;
use liveref_core::config::Mode;
use liveref_core::document::{render_html, AnalysisDocument};
use liveref_core::frontend::parse_source;
use liveref_core::session::{now_ms, Session, SnapshotRecord};
use liveref_core::{Config, Error, Result};
use walkdir::WalkDir;

use crate::exit;

/// Configuration from `--config`, else `liveref.json` in `root`, with an
/// optional `--mode` override. Warnings go to stderr.
pub fn load_config(root: &Path, explicit: Option<&Path>, mode: Option<Mode>) -> Result<Config> {
    let (mut cfg, warnings) = match explicit {
        Some(p) => Config::load(p)?,
        None => Config::load_workspace(root)?,
    };
    for w in warnings {
        eprintln!("warning: {w}");
    }
    if let Some(m) = mode {
        cfg.mode = m;
    }
    Ok(cfg)
}

/// Java files named directly or found under the given directories, in a
/// stable order. A missing path is an error.
pub fn java_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_file() {
            out.push(p.clone());
        } else if p.is_dir() {
            let mut found: Vec<PathBuf> = WalkDir::new(p)
                .into_iter()
                .filter_map(|e| e.ok())
                .filter(|e| e.file_type().is_file() && e.path().extension().is_some_and(|x| x == "java"))
                .map(|e| e.into_path())
                .collect();
            found.sort();
            out.extend(found);
        } else {
            return Err(Error::io(p, std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or directory")));
        }
    }
    Ok(out)
}

/// Analyze one file exactly as the live session would.
pub fn analyze_file(path: &Path, cfg: &Config) -> Result<AnalysisDocument> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let shown = path.to_string_lossy().replace('\\', "/");
    let (unit, diagnostics) = parse_source(&text, &shown);
    Ok(AnalysisDocument::from(&analyze(&unit, &diagnostics, cfg, now_ms())))
}

pub fn analyze_paths(paths: &[PathBuf], cfg: &Config) -> Result<Vec<AnalysisDocument>> {
    java_files(paths)?.iter().map(|p| analyze_file(p, cfg)).collect()
}

fn summary(out: &mut impl Write, doc: &AnalysisDocument) -> std::io::Result<()> {
    writeln!(
        out,
        "{}: {} methods, {} eligible, {} candidates",
        doc.file,
        doc.metrics.len(),
        doc.eligible_methods.len(),
        doc.candidates.len()
    )?;
    for e in &doc.diagnostics.errors {
        writeln!(out, "  parse error at line {}: {}", e.line, e.message)?;
    }
    for c in &doc.candidates {
        writeln!(
            out,
            "  #{:<3} severity {:>2}  {}.{}  lines {}-{}  {} statements  id {}",
            c.rank, c.severity, c.class_name, c.method_name, c.first_line, c.last_line, c.stmt_count, c.id
        )?;
    }
    Ok(())
}

/// Write each document (JSON Lines with `json`, a readable summary otherwise)
/// and return the exit code.
pub fn run_analyze(docs: &[AnalysisDocument], json: bool, out: &mut impl Write) -> std::io::Result<i32> {
    for doc in docs {
        if json {
            writeln!(out, "{}", doc.to_json())?;
        } else {
            summary(out, doc)?;
        }
    }
    Ok(if docs.iter().any(|d| !d.parse_ok) { exit::PARSE } else { exit::OK })
}

/// Inspect `file` and apply `candidate_id`, logging under `root`.
pub fn run_apply(root: &Path, file: &Path, candidate_id: &str, name: Option<&str>, cfg: Config) -> Result<SnapshotRecord> {
    // Every id a fresh `analyze` can print is in the full list.
    let cfg = Config { mode: Mode::All, ..cfg };
    let mut session = Session::new(root, cfg);
    session.run_inspection(file)?;
    session.apply_refactoring(file, candidate_id, name)
}

pub const REPORT_FILE: &str = "liveref-report.html";

/// Write the HTML report into `out_dir` and return its path.
pub fn run_export(docs: &[AnalysisDocument], out_dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let path = out_dir.join(REPORT_FILE);
    fs::write(&path, render_html(docs)).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}
