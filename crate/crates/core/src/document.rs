//! Wire format of an analysis, and the static HTML report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::candidates::{severity_color, Candidate, EligibleMethod, OverlayEntry};
use crate::frontend::ParseDiagnostics;
use crate::session::AnalysisResult;
use crate::MetricsReport;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub schema_version: String,
    pub file: String,
    /// UTC milliseconds when the analysis ran.
    pub generated_at: u64,
    pub content_hash: String,
    pub parse_ok: bool,
    pub eligible_methods: Vec<EligibleMethod>,
    /// Rank order.
    pub candidates: Vec<Candidate>,
    pub line_overlay: BTreeMap<u32, OverlayEntry>,
    pub metrics: Vec<MetricsReport>,
    pub diagnostics: ParseDiagnostics,
}

impl From<&AnalysisResult> for AnalysisDocument {
    fn from(r: &AnalysisResult) -> Self {
        AnalysisDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            file: r.file.clone(),
            generated_at: r.timestamp_ms,
            content_hash: r.content_hash.clone(),
            parse_ok: r.parse_ok,
            eligible_methods: r.eligible_methods.clone(),
            candidates: r.candidates.clone(),
            line_overlay: r.line_overlay.clone(),
            metrics: r.metrics.clone(),
            diagnostics: r.diagnostics.clone(),
        }
    }
}

impl AnalysisDocument {
    /// Compact single-line JSON; the CLI and the server both emit exactly this.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

const STYLE: &str = "body{font-family:sans-serif;margin:2em}table{border-collapse:collapse}\
td,th{border:1px solid #ccc;padding:4px 8px;text-align:left}\
.swatch{display:inline-block;width:1em;height:1em;vertical-align:middle;margin-right:4px}\
.no-candidates{font-style:italic}";

/// Self-contained report listing every candidate of every document.
pub fn render_html(docs: &[AnalysisDocument]) -> String {
    let mut html = String::new();
    html.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    html.push_str("<title>Extract Method candidates</title>\n");
    let _ = writeln!(html, "<style>{STYLE}</style>\n</head>\n<body>\n<h1>Extract Method candidates</h1>");

    let total: usize = docs.iter().map(|d| d.candidates.len()).sum();
    if total == 0 {
        html.push_str("<p class=\"no-candidates\">No candidates found.</p>\n");
    } else {
        html.push_str("<table>\n<thead><tr><th>Severity</th><th>File</th><th>Class</th><th>Method</th>");
        html.push_str("<th>Lines</th><th>Statements</th><th>Proposed signature</th><th>Id</th></tr></thead>\n<tbody>\n");
        for doc in docs {
            for c in &doc.candidates {
                let color = severity_color(c.severity);
                let _ = writeln!(
                    html,
                    "<tr class=\"candidate\" data-severity=\"{sev}\" data-color=\"{color}\">\
                     <td><span class=\"swatch\" style=\"background:{color}\"></span>{sev}</td>\
                     <td>{file}</td><td>{class}</td><td>{method}</td><td>{first}&ndash;{last}</td>\
                     <td>{stmts}</td><td><code>{sig}</code></td><td><code>{id}</code></td></tr>",
                    sev = c.severity,
                    file = escape(&doc.file),
                    class = escape(&c.class_name),
                    method = escape(&c.method_name),
                    first = c.first_line,
                    last = c.last_line,
                    stmts = c.stmt_count,
                    sig = escape(&c.signature.header()),
                    id = escape(&c.id),
                );
            }
        }
        html.push_str("</tbody>\n</table>\n");
    }
    for doc in docs.iter().filter(|d| !d.diagnostics.errors.is_empty()) {
        let _ = writeln!(html, "<h2>Parse errors in {}</h2>\n<ul>", escape(&doc.file));
        for e in &doc.diagnostics.errors {
            let _ = writeln!(html, "<li>line {}: {}</li>", e.line, escape(&e.message));
        }
        html.push_str("</ul>\n");
    }
    html.push_str("</body>\n</html>\n");
    html
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_doc() -> AnalysisDocument {
        AnalysisDocument {
            schema_version: SCHEMA_VERSION.into(),
            file: "A<1>.java".into(),
            generated_at: 0,
            content_hash: String::new(),
            parse_ok: true,
            eligible_methods: vec![],
            candidates: vec![],
            line_overlay: BTreeMap::new(),
            metrics: vec![],
            diagnostics: ParseDiagnostics::default(),
        }
    }

    #[test]
    fn no_candidate_marker() {
        let html = render_html(&[empty_doc()]);
        assert!(html.contains("class=\"no-candidates\""));
        assert!(!html.contains("class=\"candidate\""));
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b>&\"'"), "a&lt;b&gt;&amp;&quot;&#39;");
    }

    #[test]
    fn schema_version_serialized() {
        let json = empty_doc().to_json();
        assert!(json.starts_with("{\"schema_version\":\"1\""));
        assert!(!json.contains('\n'));
    }
}
