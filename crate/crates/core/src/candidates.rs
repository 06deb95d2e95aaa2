//! Finding, ranking and grading Extract Method opportunities.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Float;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{Config, Mode};
use crate::extraction::{plan, MethodSignature};
use crate::frontend::ParseDiagnostics;
use crate::metrics::{fragment_cognitive, fragment_cyclomatic, lcom4, method_metrics, MetricsReport};
use crate::model::{method_statement_count, sibling_runs, statement_count, BlockPath, SourceUnit, Span};

/// Gutter colors from severity 1 (mild green) to 10 (dark red).
pub const PALETTE: [&str; 10] = [
    "#ACE97C", "#91D96A", "#B8D45A", "#D8CC4E", "#E8B944", "#EF9D3A", "#EF7D31", "#E65527", "#D32F20", "#8B0000",
];

pub fn severity_color(severity: u8) -> &'static str {
    PALETTE[(severity.clamp(1, 10) - 1) as usize]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub id: String,
    pub class_name: String,
    pub class_index: usize,
    pub method_index: usize,
    pub method_name: String,
    pub parent_block: BlockPath,
    /// Child indices `start..end` within `parent_block`.
    pub start: usize,
    pub end: usize,
    pub span: Span,
    pub first_line: u32,
    pub last_line: u32,
    pub stmt_count: usize,
    pub frag_cc: u32,
    pub frag_cog: u32,
    pub class_lcom4: u32,
    pub signature: MethodSignature,
    /// 1-based position in the ranking.
    pub rank: usize,
    pub severity: u8,
    /// Hash of the source text the candidate was computed from.
    pub content_hash: String,
}

impl Candidate {
    pub fn run(&self) -> crate::model::SiblingRun {
        crate::model::SiblingRun { block: self.parent_block.clone(), start: self.start, end: self.end }
    }
}

/// Short hex digest of a source text.
pub fn content_hash(text: &str) -> String {
    hex::encode(&Sha256::digest(text.as_bytes())[..8])
}

/// Stable identifier of a statement run in a given version of a file.
#[allow(clippy::too_many_arguments)]
pub fn candidate_id(
    path: &Path,
    content_hash: &str,
    class_index: usize,
    method_index: usize,
    method_name: &str,
    block: &BlockPath,
    start: usize,
    end: usize,
) -> String {
    // Only the file name: the same file reached through different relative
    // paths must yield the same ids.
    let name = path.file_name().map(|n| n.to_string_lossy()).unwrap_or_default();
    let key = format!("{name}\0{content_hash}\0{class_index}\0{method_index}\0{method_name}\0{block}\0{start}\0{end}");
    hex::encode(&Sha256::digest(key.as_bytes())[..8])
}

/// A method that passed every metric threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EligibleMethod {
    pub class_index: usize,
    pub method_index: usize,
    pub class_name: String,
    pub method_name: String,
    pub first_line: u32,
    pub last_line: u32,
}

/// Strictly above every minimum: LOC, CC, cognitive complexity and Halstead effort.
pub fn is_eligible<T: Float>(m: &MetricsReport<T>, cfg: &Config<T>) -> bool {
    m.loc > cfg.min_method_loc
        && m.cc > cfg.min_cyclomatic
        && m.cog > cfg.min_cognitive
        && m.halstead.effort > cfg.min_halstead_effort
}

/// Methods passing [`is_eligible`]. Nothing is eligible in an unparsable unit.
pub fn eligible_methods<T: Float>(unit: &SourceUnit, cfg: &Config<T>) -> Vec<EligibleMethod> {
    if !unit.parse_ok {
        return Vec::new();
    }
    unit.methods()
        .filter(|(_, _, c, m)| m.body_span.is_some() && is_eligible(&method_metrics::<T>(m, c), cfg))
        .map(|(ci, mi, c, m)| EligibleMethod {
            class_index: ci,
            method_index: mi,
            class_name: c.name.clone(),
            method_name: m.name.clone(),
            first_line: m.line_range.0,
            last_line: m.line_range.1,
        })
        .collect()
}

/// All legal sibling runs of one method that are large enough to matter but
/// leave a meaningful remainder. Unranked: `rank` and `severity` are 0.
pub fn enumerate_candidates<T: Float>(
    unit: &SourceUnit,
    class_index: usize,
    method_index: usize,
    cfg: &Config<T>,
) -> Vec<Candidate> {
    let Some(class) = unit.classes.get(class_index) else { return Vec::new() };
    let Some(method) = class.methods.get(method_index) else { return Vec::new() };
    let hash = content_hash(&unit.text);
    let total = method_statement_count(method);
    let cap = cfg.max_candidate_fraction * T::from(total).unwrap();
    let lcom = lcom4(class);

    let mut out = Vec::new();
    for run in sibling_runs(method) {
        let stmts = method.run(&run).expect("runs come from the method");
        let count = statement_count(stmts);
        if count < cfg.min_candidate_statements as usize || T::from(count).unwrap() > cap {
            continue;
        }
        let Ok(p) = plan(method, class, &run) else { continue };
        let span = Span::new(stmts[0].span.start, stmts[stmts.len() - 1].span.end);
        out.push(Candidate {
            id: candidate_id(&unit.path, &hash, class_index, method_index, &method.name, &run.block, run.start, run.end),
            class_name: class.name.clone(),
            class_index,
            method_index,
            method_name: method.name.clone(),
            parent_block: run.block.clone(),
            start: run.start,
            end: run.end,
            span,
            first_line: stmts[0].lines.0,
            last_line: stmts[stmts.len() - 1].lines.1,
            stmt_count: count,
            frag_cc: fragment_cyclomatic(stmts),
            frag_cog: fragment_cognitive(stmts, &method.name),
            class_lcom4: lcom,
            signature: p.signature,
            rank: 0,
            severity: 0,
            content_hash: hash.clone(),
        });
    }
    out
}

/// Ranking order: bigger fragments first, then more complex ones, then
/// less cohesive classes; position breaks the remaining ties.
pub fn compare(a: &Candidate, b: &Candidate) -> Ordering {
    b.stmt_count
        .cmp(&a.stmt_count)
        .then((b.frag_cc + b.frag_cog).cmp(&(a.frag_cc + a.frag_cog)))
        .then(b.class_lcom4.cmp(&a.class_lcom4))
        .then(a.span.start.cmp(&b.span.start))
        .then(a.span.end.cmp(&b.span.end))
        .then(a.id.cmp(&b.id))
}

/// Sort by [`compare`] and number the ranks from 1.
pub fn rank_candidates(candidates: &mut [Candidate]) {
    candidates.sort_by(compare);
    for (i, c) in candidates.iter_mut().enumerate() {
        c.rank = i + 1;
    }
}

/// Severity of rank `i` (1-based) among `n`: linear from 10 down to 1,
/// rounded half up.
pub fn severity_for(i: usize, n: usize) -> u8 {
    if n <= 1 {
        return 10;
    }
    let (i, n) = (i as i64, n as i64);
    let num = 2 * (10 * (n - 1) - 9 * (i - 1)) + (n - 1);
    (num.div_euclid(2 * (n - 1))).clamp(1, 10) as u8
}

/// Fill in `severity` from `rank` for an already ranked list.
pub fn assign_severity(candidates: &mut [Candidate]) {
    let n = candidates.len();
    for c in candidates.iter_mut() {
        c.severity = severity_for(c.rank, n);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlayEntry {
    pub severity: u8,
    pub color: String,
    /// Candidates covering the line, most severe first.
    pub candidates: Vec<String>,
}

/// Per-line gutter: the most severe candidate covering each line wins the color.
pub fn build_overlay(candidates: &[Candidate]) -> BTreeMap<u32, OverlayEntry> {
    let mut lines: BTreeMap<u32, Vec<&Candidate>> = BTreeMap::new();
    for c in candidates {
        for line in c.first_line..=c.last_line {
            lines.entry(line).or_default().push(c);
        }
    }
    lines
        .into_iter()
        .map(|(line, mut cs)| {
            cs.sort_by(|a, b| b.severity.cmp(&a.severity).then(a.rank.cmp(&b.rank)));
            let severity = cs[0].severity;
            let entry = OverlayEntry {
                severity,
                color: severity_color(severity).to_string(),
                candidates: cs.iter().map(|c| c.id.clone()).collect(),
            };
            (line, entry)
        })
        .collect()
}

/// One complete inspection of a file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisResult<T> {
    pub file: String,
    pub content_hash: String,
    pub timestamp_ms: u64,
    pub parse_ok: bool,
    pub diagnostics: ParseDiagnostics,
    pub eligible_methods: Vec<EligibleMethod>,
    pub metrics: Vec<MetricsReport<T>>,
    pub candidates: Vec<Candidate>,
    pub line_overlay: BTreeMap<u32, OverlayEntry>,
}

impl<T> AnalysisResult<T> {
    pub fn candidate(&self, id: &str) -> Option<&Candidate> {
        self.candidates.iter().find(|c| c.id == id)
    }
}

/// Metrics, eligibility, candidates, ranking, severity and overlay for one unit.
pub fn analyze<T: Float>(
    unit: &SourceUnit,
    diagnostics: &ParseDiagnostics,
    cfg: &Config<T>,
    timestamp_ms: u64,
) -> AnalysisResult<T> {
    let metrics = if unit.parse_ok {
        unit.methods().map(|(_, _, c, m)| method_metrics::<T>(m, c)).collect()
    } else {
        Vec::new()
    };
    let eligible = eligible_methods(unit, cfg);
    let mut candidates: Vec<Candidate> = eligible
        .iter()
        .flat_map(|e| enumerate_candidates(unit, e.class_index, e.method_index, cfg))
        .collect();
    rank_candidates(&mut candidates);
    if cfg.mode == Mode::Top1 {
        candidates.truncate(1);
    }
    assign_severity(&mut candidates);
    let line_overlay = build_overlay(&candidates);
    AnalysisResult {
        file: unit.path.to_string_lossy().into_owned(),
        content_hash: content_hash(&unit.text),
        timestamp_ms,
        parse_ok: unit.parse_ok,
        diagnostics: diagnostics.clone(),
        eligible_methods: eligible,
        metrics,
        candidates,
        line_overlay,
    }
}
