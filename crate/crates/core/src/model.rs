//! Normalized, parser-independent view of a Java source file.
//!
//! Statement trees alternate between *statements* (`if`, loops, simple
//! statements, ...) and *containers* (blocks, else-branches, case groups,
//! catch and finally bodies). Only container children form sibling lists;
//! containers are never counted as statements themselves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// Half-open byte range into the owning unit's text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn contains_offset(&self, offset: usize) -> bool {
        self.start <= offset && offset < self.end
    }
}

/// Operator and operand multisets of some extent of code.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenBag {
    pub operators: BTreeMap<String, u32>,
    pub operands: BTreeMap<String, u32>,
}

impl TokenBag {
    pub fn add_operator(&mut self, lexeme: &str) {
        *self.operators.entry(lexeme.to_string()).or_insert(0) += 1;
    }

    pub fn add_operand(&mut self, lexeme: &str) {
        *self.operands.entry(lexeme.to_string()).or_insert(0) += 1;
    }

    pub fn merge(&mut self, other: &TokenBag) {
        for (k, v) in &other.operators {
            *self.operators.entry(k.clone()).or_insert(0) += v;
        }
        for (k, v) in &other.operands {
            *self.operands.entry(k.clone()).or_insert(0) += v;
        }
    }

    /// n1
    pub fn distinct_operators(&self) -> u32 {
        self.operators.len() as u32
    }

    /// n2
    pub fn distinct_operands(&self) -> u32 {
        self.operands.len() as u32
    }

    /// N1
    pub fn total_operators(&self) -> u32 {
        self.operators.values().sum()
    }

    /// N2
    pub fn total_operands(&self) -> u32 {
        self.operands.values().sum()
    }

    pub fn total(&self) -> u32 {
        self.total_operators() + self.total_operands()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty() && self.operands.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopKind {
    For,
    While,
    Do,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StmtKind {
    Simple,
    If,
    ElseBranch,
    Loop(LoopKind),
    Switch,
    Case,
    Try,
    Catch,
    Finally,
    Block,
    Return,
    Break,
    Continue,
    Throw,
    LocalDecl,
    Expr,
}

impl StmtKind {
    /// Containers hold sibling lists and are not statements in their own right.
    pub fn is_container(self) -> bool {
        matches!(
            self,
            StmtKind::Block | StmtKind::ElseBranch | StmtKind::Case | StmtKind::Catch | StmtKind::Finally
        )
    }

    pub fn is_loop(self) -> bool {
        matches!(self, StmtKind::Loop(_))
    }
}

/// A local variable or parameter declaration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarDecl {
    pub name: String,
    pub type_text: String,
}

/// Increment contributed to cognitive complexity by an expression-level
/// construct in a node's own extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CognitiveEvent {
    /// +1 plus the enclosing nesting level plus `depth` (nesting added by
    /// lambdas or ternaries between the statement and the construct).
    Nesting { depth: u32 },
    /// +1 regardless of nesting.
    Flat,
}

/// Control-flow facts about a node's own (non-child) extent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowFacts {
    /// Cyclomatic decision points.
    pub decisions: u32,
    pub cognitive: Vec<CognitiveEvent>,
    /// Names of unqualified or `this.`-qualified method invocations.
    pub calls: Vec<String>,
    /// Fields accessed through an explicit `this.`.
    pub this_fields: Vec<String>,
    /// Target label of a `break`/`continue`.
    pub jump_label: Option<String>,
    /// Set on an else-branch whose body is directly another `if`.
    pub else_if: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatementNode {
    pub kind: StmtKind,
    pub children: Vec<StatementNode>,
    pub span: Span,
    /// 1-based first and last source line.
    pub lines: (u32, u32),
    pub label: Option<String>,
    pub tokens: TokenBag,
    pub decl_vars: Vec<VarDecl>,
    pub used_vars: BTreeSet<String>,
    pub written_vars: BTreeSet<String>,
    pub flow: FlowFacts,
}

impl StatementNode {
    /// Pre-order iterator over this node and all descendants.
    pub fn walk(&self) -> Walk<'_> {
        Walk { stack: vec![self] }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

pub struct Walk<'a> {
    stack: Vec<&'a StatementNode>,
}

impl<'a> Iterator for Walk<'a> {
    type Item = &'a StatementNode;

    fn next(&mut self) -> Option<Self::Item> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children.iter().rev());
        Some(node)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodModel {
    pub name: String,
    pub params: Vec<VarDecl>,
    pub return_type: String,
    pub type_params: Option<String>,
    pub throws: Option<String>,
    pub is_static: bool,
    pub body: Vec<StatementNode>,
    /// Span of the `{ ... }` body; `None` for abstract or native methods.
    pub body_span: Option<Span>,
    pub span: Span,
    pub line_range: (u32, u32),
    /// Lines inside `line_range` carrying at least one non-comment token.
    pub code_lines: Vec<u32>,
    /// Tokens of the declaration outside the body statements.
    pub tokens: TokenBag,
}

impl MethodModel {
    pub fn walk(&self) -> impl Iterator<Item = &StatementNode> {
        self.body.iter().flat_map(StatementNode::walk)
    }

    /// Sibling list addressed by `block`.
    pub fn list(&self, block: &BlockPath) -> Option<&[StatementNode]> {
        let mut list: &[StatementNode] = &self.body;
        let mut last: Option<&StatementNode> = None;
        for &i in &block.0 {
            let node = list.get(i)?;
            list = &node.children;
            last = Some(node);
        }
        match last {
            None => Some(list),
            // The addressed node must be a container.
            Some(n) if n.kind.is_container() => Some(list),
            Some(_) => None,
        }
    }

    /// Statements of `run`, if it addresses a valid range.
    pub fn run(&self, run: &SiblingRun) -> Option<&[StatementNode]> {
        self.list(&run.block)?.get(run.start..run.end)
    }

    /// Chain of nodes from the body down to (and including) the container at `block`.
    pub fn ancestors(&self, block: &BlockPath) -> Vec<&StatementNode> {
        let mut out = Vec::with_capacity(block.0.len());
        let mut list: &[StatementNode] = &self.body;
        for &i in &block.0 {
            match list.get(i) {
                Some(n) => {
                    out.push(n);
                    list = &n.children;
                }
                None => break,
            }
        }
        out
    }

    pub fn is_void(&self) -> bool {
        self.return_type == "void"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassModel {
    pub name: String,
    pub fields: Vec<String>,
    pub field_types: Vec<String>,
    pub methods: Vec<MethodModel>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceUnit {
    pub path: PathBuf,
    pub text: String,
    pub classes: Vec<ClassModel>,
    pub parse_ok: bool,
}

impl SourceUnit {
    pub fn methods(&self) -> impl Iterator<Item = (usize, usize, &ClassModel, &MethodModel)> {
        self.classes.iter().enumerate().flat_map(|(ci, c)| {
            c.methods.iter().enumerate().map(move |(mi, m)| (ci, mi, c, m))
        })
    }

    /// 1-based line of a byte offset.
    pub fn line_of(&self, offset: usize) -> u32 {
        self.text.as_bytes()[..offset.min(self.text.len())].iter().filter(|&&b| b == b'\n').count() as u32 + 1
    }
}

/// Path of child indices from a method body to a container node. Empty
/// means the method body itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BlockPath(pub Vec<usize>);

impl BlockPath {
    pub fn top() -> Self {
        BlockPath(Vec::new())
    }

    pub fn child(&self, index: usize) -> Self {
        let mut v = self.0.clone();
        v.push(index);
        BlockPath(v)
    }

    pub fn is_top(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BlockPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("top");
        }
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

impl std::str::FromStr for BlockPath {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "top" {
            return Ok(BlockPath::top());
        }
        s.split('.').map(str::parse).collect::<Result<Vec<_>, _>>().map(BlockPath)
    }
}

impl Serialize for BlockPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BlockPath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A contiguous run `start..end` of one sibling list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SiblingRun {
    pub block: BlockPath,
    pub start: usize,
    pub end: usize,
}

impl SiblingRun {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

/// Every contiguous run of siblings at every nesting depth, pre-order by list.
pub fn sibling_runs(method: &MethodModel) -> Vec<SiblingRun> {
    let mut out = Vec::new();
    collect_runs(&method.body, &BlockPath::top(), &mut out);
    out
}

fn collect_runs(list: &[StatementNode], block: &BlockPath, out: &mut Vec<SiblingRun>) {
    let k = list.len();
    for start in 0..k {
        for end in start + 1..=k {
            out.push(SiblingRun { block: block.clone(), start, end });
        }
    }
    for (i, node) in list.iter().enumerate() {
        collect_nested(node, &block.child(i), out);
    }
}

fn collect_nested(node: &StatementNode, path: &BlockPath, out: &mut Vec<SiblingRun>) {
    if node.kind.is_container() {
        collect_runs(&node.children, path, out);
    } else {
        for (i, child) in node.children.iter().enumerate() {
            collect_nested(child, &path.child(i), out);
        }
    }
}

/// Statements in the given subtrees, containers excluded.
pub fn statement_count(nodes: &[StatementNode]) -> usize {
    nodes.iter().flat_map(StatementNode::walk).filter(|n| !n.kind.is_container()).count()
}

pub fn method_statement_count(method: &MethodModel) -> usize {
    statement_count(&method.body)
}
