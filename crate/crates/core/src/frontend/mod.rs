//! Java frontend: tree-sitter parse tree to [`SourceUnit`].

pub(crate) mod extent;

use std::path::Path;

use serde::{Deserialize, Serialize};
use tree_sitter::{Node, Parser, Tree};

use crate::error::{Error, Result};
use crate::model::{
    ClassModel, MethodModel, SourceUnit, Span, StatementNode, StmtKind, LoopKind, TokenBag, VarDecl,
};
use extent::{is_comment, is_token, span_of, text, Walker};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseError {
    pub line: u32,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseDiagnostics {
    pub errors: Vec<ParseError>,
    /// The parser produced a tree despite the errors.
    pub recovered: bool,
}

pub(crate) fn parse_tree(text: &str) -> Tree {
    let mut parser = Parser::new();
    parser
        .set_language(&tree_sitter_java::LANGUAGE.into())
        .expect("bundled Java grammar matches the tree-sitter ABI");
    parser.parse(text, None).expect("parser has a language and no timeout")
}

/// Parse Java source text into a [`SourceUnit`].
pub fn parse_source(text: &str, path: impl AsRef<Path>) -> (SourceUnit, ParseDiagnostics) {
    let tree = parse_tree(text);
    let root = tree.root_node();
    let mut diagnostics = ParseDiagnostics::default();
    collect_errors(root, text, &mut diagnostics.errors);
    diagnostics.recovered = !diagnostics.errors.is_empty();

    let builder = Builder::new(text);
    let mut classes = Vec::new();
    let mut cursor = root.walk();
    for child in root.named_children(&mut cursor) {
        if let Some(c) = builder.class(child) {
            classes.push(c);
        }
    }
    let unit = SourceUnit {
        path: path.as_ref().to_path_buf(),
        text: text.to_string(),
        classes,
        parse_ok: diagnostics.errors.is_empty(),
    };
    (unit, diagnostics)
}

/// Read and parse a file. I/O failures are reported as [`Error::Io`], not as
/// parse diagnostics.
pub fn parse_file(path: impl AsRef<Path>) -> Result<(SourceUnit, ParseDiagnostics)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_source(&text, path))
}

fn collect_errors(node: Node, src: &str, out: &mut Vec<ParseError>) {
    if node.is_missing() {
        out.push(ParseError {
            line: node.start_position().row as u32 + 1,
            message: format!("missing `{}`", node.kind()),
        });
        return;
    }
    if node.is_error() {
        let snippet: String = text(&node, src).chars().take(24).collect();
        out.push(ParseError {
            line: node.start_position().row as u32 + 1,
            message: format!("syntax error near `{}`", snippet.trim()),
        });
        return;
    }
    if node.has_error() {
        let mut cursor = node.walk();
        for child in node.children(&mut cursor) {
            collect_errors(child, src, out);
        }
    }
}

/// A method or a statement, for token classification.
#[derive(Debug, Clone, Copy)]
pub enum NodeRef<'a> {
    Method(&'a MethodModel),
    Statement(&'a StatementNode),
}

impl<'a> From<&'a MethodModel> for NodeRef<'a> {
    fn from(m: &'a MethodModel) -> Self {
        NodeRef::Method(m)
    }
}

impl<'a> From<&'a StatementNode> for NodeRef<'a> {
    fn from(s: &'a StatementNode) -> Self {
        NodeRef::Statement(s)
    }
}

/// Operator/operand multisets of a method or statement subtree.
pub fn classify_tokens<'a>(node: impl Into<NodeRef<'a>>) -> TokenBag {
    let mut bag = TokenBag::default();
    match node.into() {
        NodeRef::Method(m) => {
            bag.merge(&m.tokens);
            for s in m.walk() {
                bag.merge(&s.tokens);
            }
        }
        NodeRef::Statement(s) => {
            for n in s.walk() {
                bag.merge(&n.tokens);
            }
        }
    }
    bag
}

/// Lexical tokens of `text` with whitespace and comments removed.
pub fn normalized_tokens(text: &str) -> Vec<String> {
    let tree = parse_tree(text);
    let mut out = Vec::new();
    let mut stack = vec![tree.root_node()];
    while let Some(node) = stack.pop() {
        if is_comment(&node) {
            continue;
        }
        if is_token(&node) {
            if node.start_byte() < node.end_byte() {
                out.push(extent::text(&node, text).to_string());
            }
            continue;
        }
        let mut cursor = node.walk();
        let kids: Vec<Node> = node.children(&mut cursor).collect();
        stack.extend(kids.into_iter().rev());
    }
    out
}

/// Variable references inside the body of the method declared at `method_span`.
pub(crate) fn body_variable_refs(tree: &Tree, text: &str, method_span: Span) -> Vec<(Span, String)> {
    let Some(method) = tree
        .root_node()
        .descendant_for_byte_range(method_span.start, method_span.end)
        .filter(|n| n.kind() == "method_declaration")
    else {
        return Vec::new();
    };
    let Some(body) = method.child_by_field_name("body") else {
        return Vec::new();
    };
    Walker::new(text, span_of(&body), &[], &[]).run(body).refs
}

struct Builder<'s> {
    src: &'s str,
    line_starts: Vec<usize>,
}

impl<'s> Builder<'s> {
    fn new(src: &'s str) -> Self {
        let mut line_starts = vec![0];
        line_starts.extend(src.match_indices('\n').map(|(i, _)| i + 1));
        Builder { src, line_starts }
    }

    fn line(&self, offset: usize) -> u32 {
        self.line_starts.partition_point(|&s| s <= offset) as u32
    }

    fn lines(&self, span: Span) -> (u32, u32) {
        let first = self.line(span.start);
        let last = if span.is_empty() { first } else { self.line(span.end - 1) };
        (first, last)
    }

    fn class(&self, node: Node) -> Option<ClassModel> {
        let body = match node.kind() {
            "class_declaration" => node.child_by_field_name("body")?,
            "enum_declaration" => {
                let enum_body = node.child_by_field_name("body")?;
                let mut cursor = enum_body.walk();
                let decls = enum_body.named_children(&mut cursor).find(|c| c.kind() == "enum_body_declarations");
                match decls {
                    Some(d) => d,
                    None => enum_body,
                }
            }
            _ => return None,
        };
        let name = text(&node.child_by_field_name("name")?, self.src).to_string();
        let mut fields = Vec::new();
        let mut field_types = Vec::new();
        let mut methods = Vec::new();
        let mut cursor = body.walk();
        for member in body.named_children(&mut cursor) {
            match member.kind() {
                "field_declaration" => {
                    let ty = member.child_by_field_name("type").map(|t| text(&t, self.src)).unwrap_or("");
                    let mut c = member.walk();
                    for decl in member.children_by_field_name("declarator", &mut c) {
                        if let Some(n) = decl.child_by_field_name("name") {
                            let n = text(&n, self.src).to_string();
                            if !fields.contains(&n) {
                                fields.push(n);
                                field_types.push(ty.to_string());
                            }
                        }
                    }
                }
                "method_declaration" => methods.push(self.method(member)),
                _ => {}
            }
        }
        Some(ClassModel { name, fields, field_types, methods, span: span_of(&node) })
    }

    fn method(&self, node: Node) -> MethodModel {
        let src = self.src;
        let name = node.child_by_field_name("name").map(|n| text(&n, src).to_string()).unwrap_or_default();
        let mut params = Vec::new();
        if let Some(fp) = node.child_by_field_name("parameters") {
            let mut cursor = fp.walk();
            for p in fp.named_children(&mut cursor) {
                match p.kind() {
                    "formal_parameter" => {
                        let ty = p.child_by_field_name("type").map(|t| text(&t, src)).unwrap_or("");
                        let dims = p.child_by_field_name("dimensions").map(|t| text(&t, src)).unwrap_or("");
                        if let Some(n) = p.child_by_field_name("name") {
                            params.push(VarDecl { name: text(&n, src).to_string(), type_text: format!("{ty}{dims}") });
                        }
                    }
                    "spread_parameter" => {
                        let mut c = p.walk();
                        let ty = p
                            .named_children(&mut c)
                            .find(|k| k.kind() != "modifiers" && k.kind() != "variable_declarator")
                            .map(|t| text(&t, src).to_string())
                            .unwrap_or_default();
                        let mut c = p.walk();
                        let declarator = p.named_children(&mut c).find(|k| k.kind() == "variable_declarator");
                        if let Some(n) = declarator.and_then(|d| d.child_by_field_name("name")) {
                            params.push(VarDecl { name: text(&n, src).to_string(), type_text: format!("{ty}[]") });
                        }
                    }
                    _ => {}
                }
            }
        }
        let return_type = node.child_by_field_name("type").map(|t| text(&t, src).to_string()).unwrap_or_default();
        let type_params = node.child_by_field_name("type_parameters").map(|t| text(&t, src).to_string());
        let mut cursor = node.walk();
        let mut throws = None;
        let mut is_static = false;
        for child in node.named_children(&mut cursor) {
            match child.kind() {
                "throws" => {
                    let t = text(&child, src);
                    throws = Some(t.trim_start_matches("throws").trim().to_string());
                }
                "modifiers" => {
                    let mut c = child.walk();
                    is_static = child.children(&mut c).any(|m| text(&m, src) == "static");
                }
                _ => {}
            }
        }
        let body_node = node.child_by_field_name("body");
        let body = body_node.map(|b| self.statements(b)).unwrap_or_default();
        let span = span_of(&node);
        let skip: Vec<Span> = body.iter().map(|s| s.span).collect();
        let roots = [node.id()];
        let tokens = Walker::new(src, span, &skip, &roots).run(node).tokens;

        let mut code_lines = Vec::new();
        let mut stack = vec![node];
        while let Some(n) = stack.pop() {
            if is_comment(&n) {
                continue;
            }
            if is_token(&n) {
                if n.start_byte() < n.end_byte() {
                    let (a, b) = self.lines(span_of(&n));
                    code_lines.extend(a..=b);
                }
                continue;
            }
            let mut c = n.walk();
            stack.extend(n.children(&mut c));
        }
        code_lines.sort_unstable();
        code_lines.dedup();

        MethodModel {
            name,
            params,
            return_type,
            type_params,
            throws,
            is_static,
            body,
            body_span: body_node.map(|b| span_of(&b)),
            span,
            line_range: self.lines(span),
            code_lines,
            tokens,
        }
    }

    fn statements(&self, block: Node) -> Vec<StatementNode> {
        let mut cursor = block.walk();
        let kids: Vec<Node> = block.named_children(&mut cursor).collect();
        kids.into_iter().filter_map(|k| self.statement(k)).collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn make(
        &self,
        kind: StmtKind,
        span: Span,
        label: Option<String>,
        walk_from: Node,
        range: Span,
        roots: &[usize],
        children: Vec<StatementNode>,
    ) -> StatementNode {
        let skip: Vec<Span> = children.iter().map(|c| c.span).collect();
        let facts = Walker::new(self.src, range, &skip, roots).run(walk_from);
        StatementNode {
            kind,
            children,
            span,
            lines: self.lines(span),
            label,
            tokens: facts.tokens,
            decl_vars: facts.decl_vars,
            used_vars: facts.used_vars,
            written_vars: facts.written_vars,
            flow: facts.flow,
        }
    }

    /// Body of an `if` branch or loop, wrapped as a block container.
    fn branch_block(&self, body: Node) -> Option<StatementNode> {
        if body.kind() == "block" {
            return self.statement(body);
        }
        let inner = self.statement(body)?;
        let span = inner.span;
        let empty = Span::new(span.start, span.start);
        Some(self.make(StmtKind::Block, span, None, body, empty, &[], vec![inner]))
    }

    fn statement(&self, node: Node) -> Option<StatementNode> {
        if is_comment(&node) || !node.is_named() {
            return None;
        }
        let src = self.src;
        let (label, inner) = if node.kind() == "labeled_statement" {
            let mut cursor = node.walk();
            let kids: Vec<Node> = node.named_children(&mut cursor).filter(|c| !is_comment(c)).collect();
            let label = kids.first().map(|l| text(l, src).to_string());
            (label, *kids.last()?)
        } else {
            (None, node)
        };
        let span = span_of(&node);
        let roots = [node.id(), inner.id()];
        let stmt = |kind: StmtKind, children: Vec<StatementNode>| {
            self.make(kind, span, label.clone(), node, span, &roots, children)
        };
        let node = match inner.kind() {
            "block" => stmt(StmtKind::Block, self.statements(inner)),
            "if_statement" => {
                let mut kids = Vec::new();
                if let Some(then) = inner.child_by_field_name("consequence").and_then(|c| self.branch_block(c)) {
                    kids.push(then);
                }
                if let Some(alt) = inner.child_by_field_name("alternative") {
                    let mut cursor = inner.walk();
                    let else_kw = inner.children(&mut cursor).find(|c| c.kind() == "else");
                    let start = else_kw.map(|e| e.start_byte()).unwrap_or(alt.start_byte());
                    let else_span = Span::new(start, alt.end_byte());
                    let children = if alt.kind() == "block" {
                        self.statements(alt)
                    } else {
                        self.statement(alt).into_iter().collect()
                    };
                    let mut branch = self.make(StmtKind::ElseBranch, else_span, None, inner, else_span, &[], children);
                    branch.flow.else_if = alt.kind() == "if_statement";
                    kids.push(branch);
                }
                stmt(StmtKind::If, kids)
            }
            "for_statement" | "enhanced_for_statement" | "while_statement" | "do_statement" => {
                let kind = match inner.kind() {
                    "while_statement" => LoopKind::While,
                    "do_statement" => LoopKind::Do,
                    _ => LoopKind::For,
                };
                let body = inner.child_by_field_name("body").and_then(|b| self.branch_block(b));
                stmt(StmtKind::Loop(kind), body.into_iter().collect())
            }
            "switch_expression" | "switch_statement" => {
                let mut cases = Vec::new();
                if let Some(body) = inner.child_by_field_name("body") {
                    let mut cursor = body.walk();
                    let groups: Vec<Node> = body.named_children(&mut cursor).collect();
                    for g in groups {
                        if let Some(c) = self.case(g) {
                            cases.push(c);
                        }
                    }
                }
                stmt(StmtKind::Switch, cases)
            }
            "try_statement" | "try_with_resources_statement" => {
                let mut kids = Vec::new();
                let mut cursor = inner.walk();
                let parts: Vec<Node> = inner.named_children(&mut cursor).collect();
                for part in parts {
                    match part.kind() {
                        "block" => kids.extend(self.statement(part)),
                        "catch_clause" => {
                            let children = part.child_by_field_name("body").map(|b| self.statements(b)).unwrap_or_default();
                            let s = span_of(&part);
                            kids.push(self.make(StmtKind::Catch, s, None, part, s, &[part.id()], children));
                        }
                        "finally_clause" => {
                            let mut c = part.walk();
                            let block = part.named_children(&mut c).find(|b| b.kind() == "block");
                            let children = block.map(|b| self.statements(b)).unwrap_or_default();
                            let s = span_of(&part);
                            kids.push(self.make(StmtKind::Finally, s, None, part, s, &[part.id()], children));
                        }
                        _ => {}
                    }
                }
                stmt(StmtKind::Try, kids)
            }
            "return_statement" => stmt(StmtKind::Return, vec![]),
            "break_statement" => stmt(StmtKind::Break, vec![]),
            "continue_statement" => stmt(StmtKind::Continue, vec![]),
            "throw_statement" => stmt(StmtKind::Throw, vec![]),
            "local_variable_declaration" => stmt(StmtKind::LocalDecl, vec![]),
            "expression_statement" => stmt(StmtKind::Expr, vec![]),
            _ => stmt(StmtKind::Simple, vec![]),
        };
        Some(node)
    }

    fn case(&self, group: Node) -> Option<StatementNode> {
        let span = span_of(&group);
        let children = match group.kind() {
            "switch_block_statement_group" => {
                let mut cursor = group.walk();
                let kids: Vec<Node> = group.named_children(&mut cursor).filter(|c| c.kind() != "switch_label").collect();
                kids.into_iter().filter_map(|k| self.statement(k)).collect()
            }
            "switch_rule" => {
                let mut cursor = group.walk();
                let body = group.named_children(&mut cursor).filter(|c| !is_comment(c)).last()?;
                match body.kind() {
                    "block" => self.statements(body),
                    "switch_label" => Vec::new(),
                    _ => self.statement(body).into_iter().collect(),
                }
            }
            _ => return None,
        };
        Some(self.make(StmtKind::Case, span, None, group, span, &[group.id()], children))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::method_statement_count;

    fn parse(src: &str) -> SourceUnit {
        let (unit, diag) = parse_source(src, "T.java");
        assert!(unit.parse_ok, "{diag:?}");
        unit
    }

    fn first_stmt_bag(body: &str) -> TokenBag {
        let unit = parse(&format!("class A {{ void m() {{ {body} }} }}"));
        classify_tokens(&unit.classes[0].methods[0].body[0])
    }

    #[test]
    fn minimal_class() {
        let unit = parse("class A { void m() { int x = 1; } }");
        assert_eq!(unit.classes.len(), 1);
        assert_eq!(unit.classes[0].methods.len(), 1);
        assert_eq!(method_statement_count(&unit.classes[0].methods[0]), 1);
    }

    #[test]
    fn malformed_input_reports_errors() {
        let (unit, diag) = parse_source("class A { void m( }", "Bad.java");
        assert!(!unit.parse_ok);
        assert!(!diag.errors.is_empty());
        assert_eq!(diag.errors[0].line, 1);
        assert!(diag.recovered);
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = parse_file("/nonexistent/dir/Nope.java").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn assignment_tokens() {
        let bag = first_stmt_bag("a = b + c;");
        assert_eq!((bag.total_operators(), bag.distinct_operators()), (3, 3));
        assert_eq!((bag.total_operands(), bag.distinct_operands()), (3, 3));
        assert!(bag.operators.contains_key("=") && bag.operators.contains_key("+") && bag.operators.contains_key(";"));
    }

    #[test]
    fn return_tokens() {
        let bag = first_stmt_bag("return;");
        assert_eq!(bag.operators.keys().collect::<Vec<_>>(), [";", "return"]);
        assert!(bag.operands.is_empty());
    }

    #[test]
    fn empty_block_has_empty_bag() {
        assert!(first_stmt_bag("{}").is_empty());
    }

    #[test]
    fn parent_bag_is_disjoint_union() {
        let unit = parse("class A { void m() { if (x > 1) { y = 2; } else { z(); } } }");
        let if_node = &unit.classes[0].methods[0].body[0];
        let own = &if_node.tokens;
        assert_eq!(own.operators.get("if"), Some(&1));
        assert_eq!(own.operators.get("()"), Some(&1));
        assert!(!own.operators.contains_key("else"));
        let total = classify_tokens(if_node);
        assert_eq!(total.operators.get("else"), Some(&1));
        assert_eq!(total.operators.get("()"), Some(&2));
        assert_eq!(total.total(), 13);
    }

    #[test]
    fn if_else_shape() {
        let unit = parse("class A { void m() { if (a) { b(); c(); } else d(); } }");
        let m = &unit.classes[0].methods[0];
        let if_node = &m.body[0];
        assert_eq!(if_node.kind, StmtKind::If);
        assert_eq!(if_node.children[0].kind, StmtKind::Block);
        assert_eq!(if_node.children[1].kind, StmtKind::ElseBranch);
        assert_eq!(method_statement_count(m), 4);
    }

    #[test]
    fn variable_sets() {
        let unit = parse(
            "class A { int f; void m(int p) { int x = p + f; x += 2; y = x; for (int i = 0; i < 3; i++) g(i); } }",
        );
        let body = &unit.classes[0].methods[0].body;
        assert_eq!(body[0].decl_vars, vec![VarDecl { name: "x".into(), type_text: "int".into() }]);
        assert!(body[0].used_vars.contains("p") && body[0].written_vars.contains("x"));
        assert!(body[1].used_vars.contains("x") && body[1].written_vars.contains("x"));
        assert!(body[2].written_vars.contains("y") && !body[2].used_vars.contains("y"));
        assert_eq!(body[3].decl_vars[0].name, "i");
        assert!(!body[3].used_vars.contains("g"));
    }

    #[test]
    fn lambda_parameters_are_not_outer_uses() {
        let unit = parse("class A { void m(int k) { run(x -> x + k); } }");
        let s = &unit.classes[0].methods[0].body[0];
        assert!(s.used_vars.contains("k"));
        assert!(!s.used_vars.contains("x"));
        assert_eq!(s.flow.calls, vec!["run".to_string()]);
    }

    #[test]
    fn labels_and_switch_cases() {
        let unit = parse(
            "class A { void m(int k) { outer: for (;;) { switch (k) { case 1: case 2, 3: break outer; default: k++; } } } }",
        );
        let m = &unit.classes[0].methods[0];
        let lp = &m.body[0];
        assert_eq!(lp.label.as_deref(), Some("outer"));
        assert_eq!(lp.kind, StmtKind::Loop(LoopKind::For));
        let switch = &lp.children[0].children[0];
        assert_eq!(switch.kind, StmtKind::Switch);
        let cases: u32 = switch.children.iter().map(|c| c.flow.decisions).sum();
        assert_eq!(cases, 3);
        let brk = m.walk().find(|s| s.kind == StmtKind::Break).unwrap();
        assert_eq!(brk.flow.jump_label.as_deref(), Some("outer"));
    }

    #[test]
    fn code_lines_skip_comments_and_blanks() {
        let unit = parse("class A {\n  void m() {\n\n    // note\n    x();\n  }\n}\n");
        assert_eq!(unit.classes[0].methods[0].code_lines, vec![2, 5, 6]);
    }

    #[test]
    fn normalized_tokens_ignore_layout() {
        assert_eq!(normalized_tokens("class A{void m(){x=1;}}"), normalized_tokens("class A {\n  void m() { // c\n x = 1; }\n}"));
    }
}
