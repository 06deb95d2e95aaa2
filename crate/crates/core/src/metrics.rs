//! Code-quality metrics over the normalized model.
//!
//! All functions are pure: the same model always yields the same numbers.
//! Real-valued results are generic over [`num_traits::Float`].

use std::collections::{BTreeSet, HashSet};

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::frontend::classify_tokens;
use crate::model::{ClassModel, CognitiveEvent, MethodModel, StatementNode, StmtKind, TokenBag};

fn lit<T: Float>(x: f64) -> T {
    T::from(x).expect("literal representable in every float type")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalsteadMetrics<T> {
    #[serde(rename = "n1")]
    pub distinct_operators: u32,
    #[serde(rename = "n2")]
    pub distinct_operands: u32,
    #[serde(rename = "N1")]
    pub total_operators: u32,
    #[serde(rename = "N2")]
    pub total_operands: u32,
    pub vocabulary: u32,
    pub length: u32,
    pub volume: T,
    pub difficulty: T,
    pub effort: T,
}

impl<T: Float> HalsteadMetrics<T> {
    pub fn from_counts(n1: u32, n2: u32, big_n1: u32, big_n2: u32) -> Self {
        let vocabulary = n1 + n2;
        let length = big_n1 + big_n2;
        let volume = if vocabulary >= 1 {
            lit::<T>(length as f64) * lit::<T>(vocabulary as f64).log2()
        } else {
            T::zero()
        };
        let difficulty = (lit::<T>(n1 as f64) / lit(2.0)) * (lit::<T>(big_n2 as f64) / lit(n2.max(1) as f64));
        HalsteadMetrics {
            distinct_operators: n1,
            distinct_operands: n2,
            total_operators: big_n1,
            total_operands: big_n2,
            vocabulary,
            length,
            volume,
            difficulty,
            effort: difficulty * volume,
        }
    }

    pub fn from_bag(bag: &TokenBag) -> Self {
        Self::from_counts(
            bag.distinct_operators(),
            bag.distinct_operands(),
            bag.total_operators(),
            bag.total_operands(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport<T> {
    pub method_name: String,
    pub loc: u32,
    pub cc: u32,
    pub cog: u32,
    pub halstead: HalsteadMetrics<T>,
    pub mi: T,
    pub class_lcom4: u32,
}

/// Lines of the method that hold code (comments and blank lines excluded).
pub fn loc(method: &MethodModel) -> u32 {
    let (first, last) = method.line_range;
    method.code_lines.iter().filter(|&&l| l >= first && l <= last).count() as u32
}

/// Extended McCabe: 1 + branches, loops, case labels, catches, ternaries,
/// `&&` and `||`.
pub fn cyclomatic(method: &MethodModel) -> u32 {
    fragment_cyclomatic(&method.body)
}

/// Cyclomatic complexity of statements treated as a method body.
pub fn fragment_cyclomatic(stmts: &[StatementNode]) -> u32 {
    1 + stmts.iter().flat_map(StatementNode::walk).map(|n| n.flow.decisions).sum::<u32>()
}

pub fn cognitive(method: &MethodModel) -> u32 {
    fragment_cognitive(&method.body, &method.name)
}

/// Cognitive complexity of statements treated as a method body named `host`
/// (calls to `host` count as recursion).
pub fn fragment_cognitive(stmts: &[StatementNode], host: &str) -> u32 {
    stmts.iter().map(|s| cognitive_node(s, 0, host, false)).sum()
}

fn own_cognitive(node: &StatementNode, nesting: u32, host: &str) -> u32 {
    let events: u32 = node
        .flow
        .cognitive
        .iter()
        .map(|ev| match *ev {
            CognitiveEvent::Nesting { depth } => 1 + nesting + depth,
            CognitiveEvent::Flat => 1,
        })
        .sum();
    events + node.flow.calls.iter().filter(|c| *c == host).count() as u32
}

fn cognitive_node(node: &StatementNode, nesting: u32, host: &str, else_if: bool) -> u32 {
    let mut total = own_cognitive(node, nesting, host);
    let children = |nest: u32| -> u32 { node.children.iter().map(|c| cognitive_node(c, nest, host, false)).sum() };
    match node.kind {
        StmtKind::If if else_if => total += 1 + children(nesting),
        StmtKind::If | StmtKind::Loop(_) | StmtKind::Switch | StmtKind::Catch => {
            total += 1 + nesting + children(nesting + 1)
        }
        StmtKind::ElseBranch if node.flow.else_if => {
            total += node
                .children
                .iter()
                .map(|c| cognitive_node(c, nesting, host, c.kind == StmtKind::If))
                .sum::<u32>()
        }
        StmtKind::ElseBranch => total += 1 + children(nesting),
        _ => total += children(nesting),
    }
    total
}

/// Halstead metrics of statements.
pub fn fragment_halstead<T: Float>(stmts: &[StatementNode]) -> HalsteadMetrics<T> {
    let mut bag = TokenBag::default();
    for s in stmts {
        bag.merge(&classify_tokens(s));
    }
    HalsteadMetrics::from_bag(&bag)
}

/// Fields of `class` accessed by `method`, ignoring names shadowed by
/// parameters or locals.
fn accessed_fields(method: &MethodModel, class: &ClassModel) -> BTreeSet<String> {
    let mut locals: HashSet<&str> = method.params.iter().map(|p| p.name.as_str()).collect();
    for s in method.walk() {
        locals.extend(s.decl_vars.iter().map(|d| d.name.as_str()));
    }
    let fields: HashSet<&str> = class.fields.iter().map(String::as_str).collect();
    let mut out = BTreeSet::new();
    for s in method.walk() {
        for name in s.used_vars.iter().chain(&s.written_vars) {
            if fields.contains(name.as_str()) && !locals.contains(name.as_str()) {
                out.insert(name.clone());
            }
        }
        for name in &s.flow.this_fields {
            if fields.contains(name.as_str()) {
                out.insert(name.clone());
            }
        }
    }
    out
}

/// Connected components of the method graph, where methods are linked when
/// they share a field or one calls the other.
pub fn lcom4(class: &ClassModel) -> u32 {
    let n = class.methods.len();
    if n == 0 {
        return 0;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    fn union(parent: &mut [usize], a: usize, b: usize) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }

    let fields: Vec<BTreeSet<String>> = class.methods.iter().map(|m| accessed_fields(m, class)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !fields[i].is_disjoint(&fields[j]) {
                union(&mut parent, i, j);
            }
        }
    }
    for (i, m) in class.methods.iter().enumerate() {
        let calls: HashSet<&str> = m.walk().flat_map(|s| s.flow.calls.iter().map(String::as_str)).collect();
        for (j, other) in class.methods.iter().enumerate() {
            if i != j && calls.contains(other.name.as_str()) {
                union(&mut parent, i, j);
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count() as u32
}

/// 100-point maintainability index, clamped to `[0, 100]`.
pub fn maintainability_index<T: Float>(volume: T, cc: u32, loc: u32) -> T {
    let raw = lit::<T>(171.0)
        - lit::<T>(5.2) * volume.max(T::one()).ln()
        - lit::<T>(0.23) * lit(cc as f64)
        - lit::<T>(16.2) * lit::<T>(loc.max(1) as f64).ln();
    (raw * lit(100.0) / lit(171.0)).max(T::zero()).min(lit(100.0))
}

/// Every metric of one method, from one model snapshot.
pub fn method_metrics<T: Float>(method: &MethodModel, class: &ClassModel) -> MetricsReport<T> {
    let loc = loc(method);
    let cc = cyclomatic(method);
    let halstead = HalsteadMetrics::from_bag(&classify_tokens(method));
    MetricsReport {
        method_name: method.name.clone(),
        loc,
        cc,
        cog: cognitive(method),
        mi: maintainability_index(halstead.volume, cc, loc),
        halstead,
        class_lcom4: lcom4(class),
    }
}
