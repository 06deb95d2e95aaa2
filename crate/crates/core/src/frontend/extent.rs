//! Walks the "own extent" of a statement: the part of its syntax that is
//! not covered by child statements. Collects Halstead tokens, variable
//! declarations/reads/writes and control-flow facts in a single pass.

use std::collections::{BTreeSet, HashSet};

use tree_sitter::Node;

use crate::model::{CognitiveEvent, FlowFacts, Span, TokenBag, VarDecl};

const OPERAND_KINDS: &[&str] = &[
    "identifier",
    "type_identifier",
    "decimal_integer_literal",
    "hex_integer_literal",
    "octal_integer_literal",
    "binary_integer_literal",
    "decimal_floating_point_literal",
    "hex_floating_point_literal",
    "string_literal",
    "character_literal",
    "text_block",
    "null_literal",
    "true",
    "false",
];

/// Literal nodes whose internal structure is not tokenized further.
const ATOMIC_KINDS: &[&str] = &["string_literal", "character_literal", "text_block"];

pub(crate) fn is_comment(node: &Node) -> bool {
    matches!(node.kind(), "line_comment" | "block_comment")
}

pub(crate) fn is_token(node: &Node) -> bool {
    node.child_count() == 0 || ATOMIC_KINDS.contains(&node.kind())
}

/// Halstead classification of a single lexical token.
pub(crate) enum Lexeme<'s> {
    Operand(&'s str),
    Operator(&'s str),
}

pub(crate) fn classify<'s>(node: &Node, src: &'s str) -> Option<Lexeme<'s>> {
    if is_comment(node) || node.start_byte() == node.end_byte() {
        return None;
    }
    let text = &src[node.byte_range()];
    if OPERAND_KINDS.contains(&node.kind()) {
        return Some(Lexeme::Operand(text));
    }
    match text {
        "(" => Some(Lexeme::Operator("()")),
        "[" => Some(Lexeme::Operator("[]")),
        ")" | "]" | "{" | "}" => None,
        _ => Some(Lexeme::Operator(text)),
    }
}

pub(crate) fn span_of(node: &Node) -> Span {
    Span::new(node.start_byte(), node.end_byte())
}

pub(crate) fn text<'s>(node: &Node, src: &'s str) -> &'s str {
    &src[node.byte_range()]
}

fn children(node: Node) -> Vec<(Option<&'static str>, Node)> {
    let mut out = Vec::with_capacity(node.child_count());
    let mut cursor = node.walk();
    if cursor.goto_first_child() {
        loop {
            out.push((cursor.field_name(), cursor.node()));
            if !cursor.goto_next_sibling() {
                break;
            }
        }
    }
    out
}

fn is_logical(node: &Node, src: &str) -> bool {
    node.kind() == "binary_expression"
        && node
            .child_by_field_name("operator")
            .is_some_and(|op| matches!(text(&op, src), "&&" | "||"))
}

fn logical_ops<'s>(node: Node, src: &'s str, out: &mut Vec<&'s str>) {
    if is_logical(&node, src) {
        if let Some(l) = node.child_by_field_name("left") {
            logical_ops(l, src, out);
        }
        out.push(text(&node.child_by_field_name("operator").unwrap(), src));
        if let Some(r) = node.child_by_field_name("right") {
            logical_ops(r, src, out);
        }
    }
}

/// Everything gathered from one own extent.
#[derive(Debug, Default)]
pub(crate) struct ExtentFacts {
    pub tokens: TokenBag,
    pub decl_vars: Vec<VarDecl>,
    pub used_vars: BTreeSet<String>,
    pub written_vars: BTreeSet<String>,
    pub flow: FlowFacts,
    /// Positions of variable references, in source order.
    pub refs: Vec<(Span, String)>,
}

#[derive(Clone, Copy)]
struct Ctx {
    depth: u32,
    var: bool,
}

pub(crate) struct Walker<'a> {
    src: &'a str,
    range: Span,
    skip: &'a [Span],
    roots: &'a [usize],
    opaque: Vec<HashSet<String>>,
    facts: ExtentFacts,
}

impl<'a> Walker<'a> {
    /// `roots` are node ids that stand for the statement itself; they count
    /// toward cyclomatic complexity but not toward cognitive events, which
    /// the statement tree accounts for.
    pub(crate) fn new(src: &'a str, range: Span, skip: &'a [Span], roots: &'a [usize]) -> Self {
        Walker { src, range, skip, roots, opaque: Vec::new(), facts: ExtentFacts::default() }
    }

    pub(crate) fn run(mut self, start: Node) -> ExtentFacts {
        self.visit(start, Ctx { depth: 0, var: true });
        self.facts
    }

    fn skipped(&self, node: &Node) -> bool {
        let s = span_of(node);
        if s.is_empty() || s.end <= self.range.start || s.start >= self.range.end {
            return true;
        }
        self.skip.iter().any(|k| k.contains(s))
    }

    fn inside(&self, node: &Node) -> bool {
        self.range.contains(span_of(node))
    }

    fn is_root(&self, node: &Node) -> bool {
        self.roots.contains(&node.id())
    }

    fn record_token(&mut self, node: &Node) {
        if !self.inside(node) {
            return;
        }
        match classify(node, self.src) {
            Some(Lexeme::Operand(s)) => self.facts.tokens.add_operand(s),
            Some(Lexeme::Operator(s)) => self.facts.tokens.add_operator(s),
            None => {}
        }
    }

    fn shadowed(&self, name: &str) -> bool {
        self.opaque.iter().any(|s| s.contains(name))
    }

    fn use_var(&mut self, node: &Node) {
        let name = text(node, self.src);
        if !self.shadowed(name) {
            self.facts.used_vars.insert(name.to_string());
            self.facts.refs.push((span_of(node), name.to_string()));
        }
    }

    fn write_var(&mut self, node: &Node, also_read: bool) {
        let name = text(node, self.src);
        if !self.shadowed(name) {
            self.facts.written_vars.insert(name.to_string());
            if also_read {
                self.facts.used_vars.insert(name.to_string());
            }
            self.facts.refs.push((span_of(node), name.to_string()));
        }
    }

    fn declare(&mut self, name: &str, type_text: String, initialized: bool) {
        if let Some(scope) = self.opaque.last_mut() {
            scope.insert(name.to_string());
            return;
        }
        self.facts.decl_vars.push(VarDecl { name: name.to_string(), type_text });
        if initialized {
            self.facts.written_vars.insert(name.to_string());
        }
    }

    fn event(&mut self, node: &Node, ev: CognitiveEvent) {
        if self.inside(node) && !self.is_root(node) {
            self.facts.flow.cognitive.push(ev);
        }
    }

    fn decision(&mut self, node: &Node, n: u32) {
        if self.inside(node) {
            self.facts.flow.decisions += n;
        }
    }

    fn visit(&mut self, node: Node, ctx: Ctx) {
        if is_comment(&node) || self.skipped(&node) {
            return;
        }
        if is_token(&node) {
            self.record_token(&node);
            if ctx.var && node.kind() == "identifier" && self.inside(&node) {
                self.use_var(&node);
            }
            return;
        }
        let src = self.src;
        let d = ctx.depth;
        let plain = Ctx { depth: d, var: true };
        let nested = Ctx { depth: d + 1, var: true };
        let names = Ctx { depth: d, var: false };
        match node.kind() {
            "if_statement" => {
                self.decision(&node, 1);
                let is_else_if = node.parent().is_some_and(|p| {
                    p.kind() == "if_statement" && p.child_by_field_name("alternative") == Some(node)
                });
                self.event(&node, if is_else_if { CognitiveEvent::Flat } else { CognitiveEvent::Nesting { depth: d } });
                for (field, child) in children(node) {
                    match field {
                        Some("consequence") => self.visit(child, nested),
                        Some("alternative") if child.kind() == "if_statement" => self.visit(child, plain),
                        Some("alternative") => {
                            self.event(&node, CognitiveEvent::Flat);
                            self.visit(child, nested)
                        }
                        _ => self.visit(child, plain),
                    }
                }
            }
            "for_statement" | "enhanced_for_statement" | "while_statement" | "do_statement" => {
                self.decision(&node, 1);
                self.event(&node, CognitiveEvent::Nesting { depth: d });
                let foreach = node.kind() == "enhanced_for_statement";
                for (field, child) in children(node) {
                    match field {
                        Some("body") => self.visit(child, nested),
                        Some("name") if foreach => {
                            let ty = node.child_by_field_name("type").map(|t| text(&t, src)).unwrap_or("");
                            let dims = node.child_by_field_name("dimensions").map(|t| text(&t, src)).unwrap_or("");
                            self.declare(text(&child, src), format!("{ty}{dims}"), true);
                            self.visit(child, names);
                        }
                        Some("type") | Some("dimensions") => self.visit(child, names),
                        _ => self.visit(child, plain),
                    }
                }
            }
            "switch_expression" | "switch_statement" => {
                self.event(&node, CognitiveEvent::Nesting { depth: d });
                let opaque = !self.is_root(&node);
                if opaque {
                    self.opaque.push(HashSet::new());
                }
                for (field, child) in children(node) {
                    match field {
                        Some("body") => self.visit(child, nested),
                        _ => self.visit(child, plain),
                    }
                }
                if opaque {
                    self.opaque.pop();
                }
            }
            "switch_label" => {
                let values = node.named_child_count() as u32;
                self.decision(&node, values);
                self.visit_children(node, plain);
            }
            "catch_clause" => {
                self.decision(&node, 1);
                self.event(&node, CognitiveEvent::Nesting { depth: d });
                for (field, child) in children(node) {
                    match field {
                        Some("body") => self.visit(child, nested),
                        _ => self.visit(child, plain),
                    }
                }
            }
            "catch_formal_parameter" => {
                let ty = node
                    .named_children(&mut node.walk())
                    .find(|c| c.kind() == "catch_type")
                    .map(|c| text(&c, src).to_string())
                    .unwrap_or_default();
                if let Some(name) = node.child_by_field_name("name") {
                    self.declare(text(&name, src), ty, true);
                }
                self.visit_children(node, names);
            }
            "ternary_expression" => {
                self.decision(&node, 1);
                self.event(&node, CognitiveEvent::Nesting { depth: d });
                self.visit_children(node, nested);
            }
            "binary_expression" if is_logical(&node, src) => {
                self.decision(&node, 1);
                let chain_root = !node.parent().is_some_and(|p| is_logical(&p, src));
                if chain_root {
                    let mut ops = Vec::new();
                    logical_ops(node, src, &mut ops);
                    let runs = 1 + ops.windows(2).filter(|w| w[0] != w[1]).count();
                    for _ in 0..runs {
                        self.event(&node, CognitiveEvent::Flat);
                    }
                }
                self.visit_children(node, plain);
            }
            "lambda_expression" => {
                self.opaque.push(HashSet::new());
                for (field, child) in children(node) {
                    match field {
                        Some("parameters") => {
                            self.lambda_params(child);
                            self.visit(child, names);
                        }
                        Some("body") => self.visit(child, nested),
                        _ => self.visit(child, plain),
                    }
                }
                self.opaque.pop();
            }
            "class_body" => {
                self.opaque.push(HashSet::new());
                self.visit_children(node, nested);
                self.opaque.pop();
            }
            "method_declaration" | "constructor_declaration" => {
                // Members of anonymous or local classes.
                for (field, child) in children(node) {
                    match field {
                        Some("name") | Some("type") | Some("type_parameters") => self.visit(child, names),
                        _ => self.visit(child, plain),
                    }
                }
            }
            "formal_parameter" | "spread_parameter" => {
                if let Some(name) = node.child_by_field_name("name").or_else(|| {
                    node.named_children(&mut node.walk())
                        .find(|c| c.kind() == "variable_declarator")
                        .and_then(|v| v.child_by_field_name("name"))
                }) {
                    let n = text(&name, src).to_string();
                    if let Some(scope) = self.opaque.last_mut() {
                        scope.insert(n);
                    }
                }
                self.visit_children(node, names);
            }
            "local_variable_declaration" | "field_declaration" => {
                let ty = node.child_by_field_name("type").map(|t| text(&t, src).to_string()).unwrap_or_default();
                for (field, child) in children(node) {
                    match field {
                        Some("declarator") => self.declarator(child, &ty, ctx),
                        _ => self.visit(child, names),
                    }
                }
            }
            "resource" => {
                if let Some(name) = node.child_by_field_name("name") {
                    let ty = node.child_by_field_name("type").map(|t| text(&t, src).to_string()).unwrap_or_default();
                    self.declare(text(&name, src), ty, true);
                    for (field, child) in children(node) {
                        match field {
                            Some("value") => self.visit(child, plain),
                            _ => self.visit(child, names),
                        }
                    }
                } else {
                    self.visit_children(node, plain);
                }
            }
            "instanceof_expression" => {
                for (field, child) in children(node) {
                    match field {
                        Some("left") => self.visit(child, plain),
                        Some("name") => {
                            let ty = node.child_by_field_name("right").map(|t| text(&t, src).to_string()).unwrap_or_default();
                            self.declare(text(&child, src), ty, true);
                            self.visit(child, names);
                        }
                        _ => self.visit(child, names),
                    }
                }
            }
            "assignment_expression" => {
                let compound = node.child_by_field_name("operator").is_some_and(|op| text(&op, src) != "=");
                for (field, child) in children(node) {
                    match field {
                        Some("left") if child.kind() == "identifier" => {
                            self.record_token(&child);
                            if self.inside(&child) {
                                self.write_var(&child, compound);
                            }
                        }
                        _ => self.visit(child, plain),
                    }
                }
            }
            "update_expression" => {
                for (_, child) in children(node) {
                    if child.kind() == "identifier" {
                        self.record_token(&child);
                        if self.inside(&child) {
                            self.write_var(&child, true);
                        }
                    } else {
                        self.visit(child, plain);
                    }
                }
            }
            "method_invocation" => {
                let object = node.child_by_field_name("object");
                if object.is_none() || object.is_some_and(|o| o.kind() == "this") {
                    if let Some(name) = node.child_by_field_name("name") {
                        if self.inside(&node) {
                            self.facts.flow.calls.push(text(&name, src).to_string());
                        }
                    }
                }
                for (field, child) in children(node) {
                    match field {
                        Some("name") | Some("type_arguments") => self.visit(child, names),
                        _ => self.visit(child, plain),
                    }
                }
            }
            "field_access" => {
                let object = node.child_by_field_name("object");
                if object.is_some_and(|o| o.kind() == "this") && self.inside(&node) {
                    if let Some(f) = node.child_by_field_name("field") {
                        self.facts.flow.this_fields.push(text(&f, src).to_string());
                    }
                }
                for (field, child) in children(node) {
                    match field {
                        Some("field") => self.visit(child, names),
                        _ => self.visit(child, plain),
                    }
                }
            }
            "method_reference" => {
                // `expr::name`: only the part before `::` can be a variable.
                let mut before = true;
                for (_, child) in children(node) {
                    if text(&child, src) == "::" {
                        before = false;
                    }
                    self.visit(child, if before { plain } else { names });
                }
            }
            "break_statement" | "continue_statement" => {
                let label = node.named_children(&mut node.walk()).find(|c| c.kind() == "identifier");
                if let Some(l) = label {
                    if self.is_root(&node) {
                        self.facts.flow.jump_label = Some(text(&l, src).to_string());
                    }
                    if self.inside(&node) {
                        self.facts.flow.cognitive.push(CognitiveEvent::Flat);
                    }
                }
                self.visit_children(node, names);
            }
            "labeled_statement" => {
                for (_, child) in children(node) {
                    if child.kind() == "identifier" {
                        self.visit(child, names);
                    } else {
                        self.visit(child, plain);
                    }
                }
            }
            "marker_annotation" | "annotation" | "scoped_identifier" | "scoped_type_identifier" | "generic_type"
            | "type_arguments" | "type_parameters" | "array_type" | "dimensions" => {
                for (field, child) in children(node) {
                    match field {
                        Some("arguments") => self.visit(child, plain),
                        _ => self.visit(child, names),
                    }
                }
            }
            "object_creation_expression" | "array_creation_expression" | "cast_expression" => {
                for (field, child) in children(node) {
                    match field {
                        Some("type") => self.visit(child, names),
                        _ => self.visit(child, plain),
                    }
                }
            }
            _ => self.visit_children(node, ctx),
        }
    }

    fn visit_children(&mut self, node: Node, ctx: Ctx) {
        for (_, child) in children(node) {
            self.visit(child, ctx);
        }
    }

    fn declarator(&mut self, node: Node, ty: &str, ctx: Ctx) {
        let src = self.src;
        if self.skipped(&node) {
            return;
        }
        let name = node.child_by_field_name("name");
        let dims = node.child_by_field_name("dimensions").map(|d| text(&d, src)).unwrap_or("");
        if let Some(n) = name {
            if self.inside(&n) {
                let initialized = node.child_by_field_name("value").is_some();
                self.declare(text(&n, src), format!("{ty}{dims}"), initialized);
            }
        }
        for (field, child) in children(node) {
            match field {
                Some("value") => self.visit(child, Ctx { var: true, ..ctx }),
                _ => self.visit(child, Ctx { var: false, ..ctx }),
            }
        }
    }

    fn lambda_params(&mut self, params: Node) {
        let src = self.src;
        let scope = self.opaque.last_mut().expect("lambda scope");
        if params.kind() == "identifier" {
            scope.insert(text(&params, src).to_string());
            return;
        }
        let mut cursor = params.walk();
        for child in params.named_children(&mut cursor) {
            match child.kind() {
                "identifier" => {
                    scope.insert(text(&child, src).to_string());
                }
                "formal_parameter" | "spread_parameter" => {
                    if let Some(n) = child.child_by_field_name("name") {
                        scope.insert(text(&n, src).to_string());
                    }
                }
                _ => {}
            }
        }
    }
}
