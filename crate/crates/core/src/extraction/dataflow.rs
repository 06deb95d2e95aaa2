//! Name-based liveness over the statement tree.
//!
//! Java forbids a local from shadowing another local that is still in
//! scope, so inside one method a name refers to at most one variable at
//! any program point. That makes a name-keyed analysis exact enough for
//! deciding parameters and the return value of an extracted method.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::model::{MethodModel, SiblingRun, StatementNode, StmtKind, VarDecl};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataFlow {
    /// Read in the fragment before any write there, and declared before it.
    pub live_in: BTreeSet<String>,
    /// Written or initialized anywhere in the fragment.
    pub defined_in: BTreeSet<String>,
    /// Written in the fragment and possibly read after it.
    pub live_out: BTreeSet<String>,
}

/// Where a variable visible at the fragment was declared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Origin {
    Param,
    /// A local statement in the list at this path level, before the path element.
    List(usize),
    /// The own extent of the ancestor at this level (for-init, catch parameter, resource).
    Ancestor(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Visible {
    pub decl: VarDecl,
    pub origin: Origin,
    /// Declaration order, for a stable parameter order.
    pub order: usize,
}

/// Everything the analysis needs about a fragment's position in its method.
pub(crate) struct Frame<'m> {
    pub run: &'m SiblingRun,
    pub stmts: &'m [StatementNode],
    /// Sibling lists along the path; `lists[0]` is the body, the last is the run's list.
    pub lists: Vec<&'m [StatementNode]>,
    /// `ancestors[j]` is `lists[j][path[j]]`.
    pub ancestors: Vec<&'m StatementNode>,
    pub visible: BTreeMap<String, Visible>,
}

impl<'m> Frame<'m> {
    pub fn new(method: &'m MethodModel, run: &'m SiblingRun) -> Option<Self> {
        let stmts = method.run(run)?;
        let path = &run.block.0;
        let mut lists: Vec<&[StatementNode]> = vec![&method.body];
        let mut ancestors = Vec::with_capacity(path.len());
        for &i in path {
            let node = lists.last().unwrap().get(i)?;
            ancestors.push(node);
            lists.push(&node.children);
        }

        let mut visible = BTreeMap::new();
        let mut order = 0;
        let mut add = |decl: &VarDecl, origin: Origin, visible: &mut BTreeMap<String, Visible>| {
            visible.insert(decl.name.clone(), Visible { decl: decl.clone(), origin, order });
            order += 1;
        };
        for p in &method.params {
            add(p, Origin::Param, &mut visible);
        }
        for level in 0..lists.len() {
            let upto = if level < path.len() { path[level] } else { run.start };
            let list = lists[level];
            let parent = level.checked_sub(1).map(|p| ancestors[p]);
            // Locals of earlier case groups stay in scope in later ones.
            if parent.is_some_and(|p| p.kind == StmtKind::Switch) {
                for case in &list[..upto.min(list.len())] {
                    for s in case.children.iter().filter(|s| s.kind == StmtKind::LocalDecl) {
                        for d in &s.decl_vars {
                            add(d, Origin::List(level), &mut visible);
                        }
                    }
                }
            } else {
                for s in list[..upto.min(list.len())].iter().filter(|s| s.kind == StmtKind::LocalDecl) {
                    for d in &s.decl_vars {
                        add(d, Origin::List(level), &mut visible);
                    }
                }
            }
            if level < ancestors.len() {
                for d in &ancestors[level].decl_vars {
                    add(d, Origin::Ancestor(level), &mut visible);
                }
            }
        }
        Some(Frame { run, stmts, lists, ancestors, visible })
    }

    fn path_index(&self, level: usize) -> usize {
        self.run.block.0[level]
    }
}

fn reads(nodes: &[StatementNode], var: &str) -> bool {
    nodes.iter().flat_map(StatementNode::walk).any(|n| n.used_vars.contains(var))
}

fn has_jump(node: &StatementNode) -> bool {
    node.walk().any(|n| {
        matches!(n.kind, StmtKind::Break | StmtKind::Continue | StmtKind::Return | StmtKind::Throw)
    })
}

enum Scan {
    Read,
    Killed,
    Neither,
}

/// First event for `var` in straight-line order through `stmts`.
fn scan(stmts: &[StatementNode], var: &str) -> Scan {
    let mut may_jump = false;
    for s in stmts {
        if reads(std::slice::from_ref(s), var) {
            return Scan::Read;
        }
        if s.is_leaf() && s.written_vars.contains(var) && !may_jump {
            return Scan::Killed;
        }
        may_jump |= has_jump(s);
    }
    Scan::Neither
}

/// Could the value of `var` leaving the fragment be read later?
fn live_after(frame: &Frame, var: &str, origin: Origin) -> bool {
    let run_level = frame.lists.len() - 1;
    match scan(&frame.lists[run_level][frame.run.end..], var) {
        Scan::Read => return true,
        Scan::Killed => return false,
        Scan::Neither => {}
    }
    if origin == Origin::List(run_level) {
        return false;
    }
    for level in (0..frame.ancestors.len()).rev() {
        let anc = frame.ancestors[level];
        let came_from = frame.path_index(level);
        match anc.kind {
            StmtKind::Loop(_) if reads(std::slice::from_ref(anc), var) => return true,
            StmtKind::Try | StmtKind::Switch if reads(&anc.children[came_from + 1..], var) => return true,
            _ => {}
        }
        if origin == Origin::Ancestor(level) {
            return false;
        }
        match scan(&frame.lists[level][came_from + 1..], var) {
            Scan::Read => return true,
            Scan::Killed => return false,
            Scan::Neither => {}
        }
        if origin == Origin::List(level) {
            return false;
        }
    }
    false
}

/// Reads in `stmts` not preceded by a definite write within them.
fn exposed_reads(stmts: &[StatementNode], assigned: &mut BTreeSet<String>, out: &mut BTreeSet<String>) {
    for s in stmts {
        let own_decls: BTreeSet<&str> = s.decl_vars.iter().map(|d| d.name.as_str()).collect();
        for v in &s.used_vars {
            if !assigned.contains(v) && !own_decls.contains(v.as_str()) {
                out.insert(v.clone());
            }
        }
        if s.is_leaf() {
            assigned.extend(s.written_vars.iter().cloned());
        } else {
            let mut inner = assigned.clone();
            inner.extend(s.written_vars.iter().cloned());
            if s.kind.is_container() {
                exposed_reads(&s.children, &mut inner, out);
            } else {
                for child in &s.children {
                    exposed_reads(std::slice::from_ref(child), &mut inner.clone(), out);
                }
            }
        }
    }
}

/// Does every path through `stmts` end in `return` or `throw`?
pub(crate) fn definitely_returns(stmts: &[StatementNode]) -> bool {
    let Some(last) = stmts.last() else { return false };
    match last.kind {
        StmtKind::Return | StmtKind::Throw => true,
        StmtKind::Block | StmtKind::ElseBranch | StmtKind::Finally | StmtKind::Catch | StmtKind::Case => {
            definitely_returns(&last.children)
        }
        StmtKind::If => {
            last.children.len() == 2 && last.children.iter().all(|c| definitely_returns(std::slice::from_ref(c)))
        }
        StmtKind::Try => {
            let finally = last.children.iter().find(|c| c.kind == StmtKind::Finally);
            if finally.is_some_and(|f| definitely_returns(&f.children)) {
                return true;
            }
            last.children
                .iter()
                .filter(|c| c.kind != StmtKind::Finally)
                .all(|c| definitely_returns(std::slice::from_ref(c)))
        }
        _ => false,
    }
}

pub(crate) fn compute(frame: &Frame) -> DataFlow {
    let mut exposed = BTreeSet::new();
    exposed_reads(frame.stmts, &mut BTreeSet::new(), &mut exposed);
    let live_in: BTreeSet<String> = exposed.into_iter().filter(|v| frame.visible.contains_key(v)).collect();

    let defined_in: BTreeSet<String> =
        frame.stmts.iter().flat_map(StatementNode::walk).flat_map(|n| n.written_vars.iter().cloned()).collect();

    let mut live_out = BTreeSet::new();
    if !definitely_returns(frame.stmts) {
        for v in &defined_in {
            if let Some(vis) = frame.visible.get(v) {
                if live_after(frame, v, vis.origin) {
                    live_out.insert(v.clone());
                }
            }
        }
        // A declaration moved into the new method leaves its name undeclared
        // for the rest of the list, so any later mention keeps it alive.
        let rest = &frame.lists[frame.lists.len() - 1][frame.run.end..];
        for s in frame.stmts.iter().filter(|s| s.kind == StmtKind::LocalDecl) {
            for d in &s.decl_vars {
                let mentioned = rest
                    .iter()
                    .flat_map(StatementNode::walk)
                    .any(|n| n.used_vars.contains(&d.name) || n.written_vars.contains(&d.name));
                if mentioned {
                    live_out.insert(d.name.clone());
                }
            }
        }
    }
    DataFlow { live_in, defined_in, live_out }
}

/// Liveness summary of a contiguous sibling run.
pub fn dataflow(method: &MethodModel, run: &SiblingRun) -> DataFlow {
    Frame::new(method, run).map(|f| compute(&f)).unwrap_or_default()
}
