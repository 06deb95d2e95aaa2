//! Source rewrite for Extract Method, and its inverse.

use serde::{Deserialize, Serialize};
use tree_sitter::Node;

use super::plan::{plan, CallForm, MethodSignature};
use crate::candidates::{candidate_id, content_hash, Candidate};
use crate::error::{Error, Result};
use crate::frontend::{body_variable_refs, parse_source, parse_tree};
use crate::metrics::method_metrics;
use crate::model::{SourceUnit, Span};
use crate::MetricsReport;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RewriteResult {
    pub new_text: String,
    pub signature: MethodSignature,
    pub class_index: usize,
    /// Index of the host method; the new method follows it at `method_index + 1`.
    pub method_index: usize,
    /// The call statement that replaced the fragment.
    pub call_site: Span,
    /// The inserted method declaration.
    pub extracted_method: Span,
    pub host_before: MetricsReport,
    pub host_after: MetricsReport,
    pub extracted: MetricsReport,
}

const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const", "continue",
    "default", "do", "double", "else", "enum", "extends", "final", "finally", "float", "for", "goto", "if",
    "implements", "import", "instanceof", "int", "interface", "long", "native", "new", "package", "private",
    "protected", "public", "return", "short", "static", "strictfp", "super", "switch", "synchronized", "this",
    "throw", "throws", "transient", "try", "void", "volatile", "while", "true", "false", "null", "_", "var",
    "yield", "record",
];

fn check_name(name: &str, taken: &[&str]) -> Result<()> {
    let bad = |reason: &str| Err(Error::Naming { name: name.to_string(), reason: reason.to_string() });
    let mut chars = name.chars();
    let Some(first) = chars.next() else { return bad("empty name") };
    if !(first.is_alphabetic() || first == '_' || first == '$') || !chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
    {
        return bad("not a Java identifier");
    }
    if KEYWORDS.contains(&name) {
        return bad("reserved word");
    }
    if taken.contains(&name) {
        return bad("a method with this name already exists in the class");
    }
    Ok(())
}

/// Leading whitespace of the line containing `offset`.
fn line_indent(text: &str, offset: usize) -> &str {
    let start = text[..offset].rfind('\n').map_or(0, |i| i + 1);
    let line = &text[start..];
    &line[..line.len() - line.trim_start_matches([' ', '\t']).len()]
}

/// Shift a fragment from its original column to `indent`.
fn reindent(fragment: &str, column: usize, indent: &str) -> String {
    let mut out = String::new();
    for (i, line) in fragment.split('\n').enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let body = if i == 0 {
            line
        } else {
            let ws = line.len() - line.trim_start_matches([' ', '\t']).len();
            &line[ws.min(column)..]
        };
        if !body.trim().is_empty() {
            out.push_str(indent);
            out.push_str(body);
        }
    }
    out
}

/// Replace `candidate`'s fragment with a call to a new private method.
///
/// `name` defaults to the first free `extractedN`. Fails with
/// [`Error::StaleCandidate`] if `unit` is not the text the candidate was
/// computed from.
pub fn apply_extract_method(unit: &SourceUnit, candidate: &Candidate, name: Option<&str>) -> Result<RewriteResult> {
    let stale = || Error::StaleCandidate { id: candidate.id.clone() };
    let hash = content_hash(&unit.text);
    let expected = candidate_id(
        &unit.path,
        &hash,
        candidate.class_index,
        candidate.method_index,
        &candidate.method_name,
        &candidate.parent_block,
        candidate.start,
        candidate.end,
    );
    if hash != candidate.content_hash || expected != candidate.id {
        return Err(stale());
    }
    let class = unit.classes.get(candidate.class_index).ok_or_else(stale)?;
    let host = class.methods.get(candidate.method_index).ok_or_else(stale)?;
    let run = candidate.run();
    let mut signature = plan(host, class, &run).map_err(Error::Legality)?.signature;
    if let Some(n) = name {
        let taken: Vec<&str> = class.methods.iter().map(|m| m.name.as_str()).collect();
        check_name(n, &taken)?;
        signature.name = n.to_string();
    }

    let stmts = host.run(&run).ok_or_else(stale)?;
    let text = &unit.text;
    let frag = Span::new(stmts[0].span.start, stmts[stmts.len() - 1].span.end);
    let method_indent = line_indent(text, host.span.start).to_string();
    let first_body_stmt = host.body.first().map(|s| s.span.start);
    let unit_indent = match first_body_stmt.map(|o| line_indent(text, o)) {
        Some(i) if i.len() > method_indent.len() && i.starts_with(&method_indent) => i[method_indent.len()..].to_string(),
        _ => "    ".to_string(),
    };
    let body_indent = format!("{method_indent}{unit_indent}");

    let fragment_text = &text[frag.start..frag.end];
    let line_start = text[..frag.start].rfind('\n').map_or(0, |i| i + 1);
    let prefix = &text[line_start..frag.start];
    let column = if prefix.trim().is_empty() { prefix.len() } else { 0 };
    // Text blocks are whitespace-sensitive; leave them exactly as written.
    let moved = if fragment_text.contains("\"\"\"") {
        format!("{body_indent}{fragment_text}")
    } else {
        reindent(fragment_text, column, &body_indent)
    };

    let mut method_text = format!("{} {{\n", signature.header());
    for l in &signature.locals {
        method_text.push_str(&format!("{body_indent}{} {};\n", l.type_text, l.name));
    }
    method_text.push_str(&moved);
    method_text.push('\n');
    if let Some(v) = &signature.return_var {
        method_text.push_str(&format!("{body_indent}return {v};\n"));
    }
    method_text.push_str(&method_indent);
    method_text.push('}');

    let args: Vec<&str> = signature.params.iter().map(|p| p.name.as_str()).collect();
    let call = format!("{}({})", signature.name, args.join(", "));
    let call_text = match signature.call_form {
        CallForm::Statement => format!("{call};"),
        CallForm::Assign => format!("{} = {call};", signature.return_var.as_deref().unwrap_or_default()),
        CallForm::Declare => {
            format!("{} {} = {call};", signature.return_type, signature.return_var.as_deref().unwrap_or_default())
        }
        CallForm::Return => format!("return {call};"),
    };

    let mut new_text = String::with_capacity(text.len() + method_text.len() + call_text.len() + 8);
    new_text.push_str(&text[..frag.start]);
    new_text.push_str(&call_text);
    new_text.push_str(&text[frag.end..host.span.end]);
    new_text.push_str("\n\n");
    new_text.push_str(&method_indent);
    let method_start = new_text.len();
    new_text.push_str(&method_text);
    let method_end = new_text.len();
    new_text.push_str(&text[host.span.end..]);

    let (after, diagnostics) = parse_source(&new_text, &unit.path);
    if !after.parse_ok {
        let first = diagnostics.errors.first().map(|e| format!("line {}: {}", e.line, e.message));
        return Err(Error::Rewrite(first.unwrap_or_else(|| "parse failed".into())));
    }
    let new_class = &after.classes[candidate.class_index];
    let host_after = new_class.methods.get(candidate.method_index);
    let extracted = new_class.methods.get(candidate.method_index + 1);
    let (Some(host_after), Some(extracted)) = (host_after, extracted) else {
        return Err(Error::Rewrite("rewritten methods not found".into()));
    };
    Ok(RewriteResult {
        signature,
        class_index: candidate.class_index,
        method_index: candidate.method_index,
        call_site: Span::new(frag.start, frag.start + call_text.len()),
        extracted_method: Span::new(method_start, method_end),
        host_before: method_metrics(host, class),
        host_after: method_metrics(host_after, new_class),
        extracted: method_metrics(extracted, new_class),
        new_text,
    })
}

fn named_children(node: Node) -> Vec<Node> {
    let mut cursor = node.walk();
    node.named_children(&mut cursor).filter(|c| !c.kind().ends_with("comment")).collect()
}

fn find_call<'t>(node: Node<'t>, within: Span, name: &str, src: &str) -> Option<Node<'t>> {
    if node.end_byte() <= within.start || node.start_byte() >= within.end {
        return None;
    }
    if node.kind() == "method_invocation"
        && node.child_by_field_name("object").is_none()
        && node.child_by_field_name("name").is_some_and(|n| &src[n.byte_range()] == name)
    {
        return Some(node);
    }
    let mut cursor = node.walk();
    let kids: Vec<Node> = node.children(&mut cursor).collect();
    kids.into_iter().find_map(|c| find_call(c, within, name, src))
}

/// Undo a rewrite: put the extracted body back at the call site, with
/// parameters renamed to the call arguments, and delete the new method.
/// Used to check that extraction preserves the program's tokens.
pub fn inline_back(result: &RewriteResult) -> Result<String> {
    let text = &result.new_text;
    let sig = &result.signature;
    let tree = parse_tree(text);
    let root = tree.root_node();
    let missing = |what: &str| Error::Rewrite(format!("inline: {what} not found"));

    let method = root
        .descendant_for_byte_range(result.extracted_method.start, result.extracted_method.end)
        .filter(|n| n.kind() == "method_declaration")
        .ok_or_else(|| missing("extracted method"))?;
    let body = method.child_by_field_name("body").ok_or_else(|| missing("method body"))?;
    let stmts = named_children(body);
    let skip_tail = usize::from(sig.return_var.is_some());
    let kept = stmts
        .get(sig.locals.len()..stmts.len().saturating_sub(skip_tail))
        .filter(|k| !k.is_empty())
        .ok_or_else(|| missing("fragment statements"))?;
    let moved = Span::new(kept[0].start_byte(), kept[kept.len() - 1].end_byte());

    let call = find_call(root, result.call_site, &sig.name, text).ok_or_else(|| missing("call"))?;
    let args_node = call.child_by_field_name("arguments").ok_or_else(|| missing("arguments"))?;
    let args: Vec<&str> = named_children(args_node).iter().map(|a| &text[a.byte_range()]).collect();
    if args.len() != sig.params.len() {
        return Err(Error::Rewrite("inline: argument count does not match the parameters".into()));
    }

    let mut refs: Vec<(Span, String)> = body_variable_refs(&tree, text, Span::new(method.start_byte(), method.end_byte()))
        .into_iter()
        .filter(|(s, _)| moved.contains(*s))
        .collect();
    refs.sort_by_key(|(s, _)| s.start);
    let mut restored = String::new();
    let mut at = moved.start;
    for (span, name) in refs {
        if let Some(i) = sig.params.iter().position(|p| p.name == name) {
            restored.push_str(&text[at..span.start]);
            restored.push_str(args[i]);
            at = span.end;
        }
    }
    restored.push_str(&text[at..moved.end]);

    let delete_from = text[..method.start_byte()].trim_end().len();
    let mut out = String::with_capacity(text.len());
    out.push_str(&text[..result.call_site.start]);
    out.push_str(&restored);
    out.push_str(&text[result.call_site.end..delete_from]);
    out.push_str(&text[method.end_byte()..]);
    Ok(out)
}
