//! Legality of a fragment and the signature of the method it would become.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::dataflow::{compute, definitely_returns, DataFlow, Frame};
use crate::model::{ClassModel, MethodModel, SiblingRun, StatementNode, StmtKind, VarDecl};

/// How the call replaces the fragment in the host method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CallForm {
    /// `name(args);`
    Statement,
    /// `v = name(args);`
    Assign,
    /// `T v = name(args);`
    Declare,
    /// `return name(args);`
    Return,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodSignature {
    pub name: String,
    pub params: Vec<VarDecl>,
    pub return_type: String,
    /// Variable whose value is handed back to the host.
    pub return_var: Option<String>,
    /// Host variables the fragment only assigns; they become plain locals.
    pub locals: Vec<VarDecl>,
    pub call_form: CallForm,
    pub is_static: bool,
    pub type_params: Option<String>,
    pub throws: Option<String>,
}

impl MethodSignature {
    /// Declaration header, e.g. `private double amountFor(Rental each)`.
    pub fn header(&self) -> String {
        let mut out = String::from("private ");
        if self.is_static {
            out.push_str("static ");
        }
        if let Some(tp) = &self.type_params {
            out.push_str(tp);
            out.push(' ');
        }
        let params: Vec<String> = self.params.iter().map(|p| format!("{} {}", p.type_text, p.name)).collect();
        out.push_str(&format!("{} {}({})", self.return_type, self.name, params.join(", ")));
        if let Some(t) = &self.throws {
            out.push_str(" throws ");
            out.push_str(t);
        }
        out
    }
}

/// A legal fragment: its data flow and the method it becomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub dataflow: DataFlow,
    pub signature: MethodSignature,
}

/// Would a `break`/`continue` inside `stmts` transfer control outside them?
fn escaping_jump(stmts: &[StatementNode], loops: u32, breakables: u32, labels: &mut Vec<String>) -> bool {
    for s in stmts {
        let target = s.flow.jump_label.as_ref();
        match s.kind {
            StmtKind::Break => match target {
                Some(l) if !labels.contains(l) => return true,
                None if breakables == 0 => return true,
                _ => {}
            },
            StmtKind::Continue => match target {
                Some(l) if !labels.contains(l) => return true,
                None if loops == 0 => return true,
                _ => {}
            },
            _ => {}
        }
        let pushed = s.label.clone().map(|l| labels.push(l)).is_some();
        let (l, b) = match s.kind {
            StmtKind::Loop(_) => (loops + 1, breakables + 1),
            StmtKind::Switch => (loops, breakables + 1),
            _ => (loops, breakables),
        };
        let escapes = escaping_jump(&s.children, l, b, labels);
        if pushed {
            labels.pop();
        }
        if escapes {
            return true;
        }
    }
    false
}

fn spelled_type(decl: &VarDecl) -> Result<(), String> {
    let t = decl.type_text.trim();
    if t.is_empty() || t == "var" || t.contains('|') {
        return Err(format!("the type of `{}` is not spelled out in the source", decl.name));
    }
    Ok(())
}

/// First `extractedN` (N ≥ 1) not already a method of `class`.
pub fn default_name(class: &ClassModel) -> String {
    let taken: BTreeSet<&str> = class.methods.iter().map(|m| m.name.as_str()).collect();
    (1..).map(|k| format!("extracted{k}")).find(|n| !taken.contains(n.as_str())).unwrap()
}

/// Check that `run` can be extracted from `method` and derive the new
/// method's signature. The error is a human-readable reason.
pub fn plan(method: &MethodModel, class: &ClassModel, run: &SiblingRun) -> Result<Plan, String> {
    let frame = Frame::new(method, run).ok_or_else(|| "range does not address a statement run".to_string())?;
    let stmts = frame.stmts;
    if stmts.is_empty() {
        return Err("empty fragment".into());
    }
    if escaping_jump(stmts, 0, 0, &mut Vec::new()) {
        return Err("a break or continue would leave the fragment".into());
    }

    let has_return = stmts.iter().flat_map(StatementNode::walk).any(|n| n.kind == StmtKind::Return);
    let all_return = has_return && definitely_returns(stmts);
    let is_tail = run.block.is_top() && run.end == method.body.len();
    if has_return {
        if method.is_void() {
            if !is_tail {
                return Err("return statements are only extractable from the end of a void method".into());
            }
        } else if !all_return {
            return Err("the fragment returns on some paths but not all".into());
        }
    }

    let dataflow = compute(&frame);
    if dataflow.live_out.len() > 1 {
        let names: Vec<&str> = dataflow.live_out.iter().map(String::as_str).collect();
        return Err(format!("more than one value flows out of the fragment: {}", names.join(", ")));
    }

    let referenced: BTreeSet<&String> = stmts
        .iter()
        .flat_map(StatementNode::walk)
        .flat_map(|n| n.used_vars.iter().chain(&n.written_vars))
        .collect();
    let out = dataflow.live_out.iter().next();
    let mut outer: Vec<_> = frame.visible.values().filter(|v| referenced.contains(&v.decl.name)).collect();
    outer.sort_by_key(|v| v.order);
    let mut params = Vec::new();
    let mut locals = Vec::new();
    for v in outer {
        spelled_type(&v.decl)?;
        if dataflow.live_in.contains(&v.decl.name) || out == Some(&v.decl.name) {
            params.push(v.decl.clone());
        } else {
            locals.push(v.decl.clone());
        }
    }

    let (call_form, return_type) = match out {
        Some(name) => {
            let (decl, form) = match frame.visible.get(name) {
                Some(v) => (v.decl.clone(), CallForm::Assign),
                None => {
                    let d = stmts
                        .iter()
                        .flat_map(|s| &s.decl_vars)
                        .find(|d| &d.name == name)
                        .cloned()
                        .ok_or_else(|| format!("cannot find the declaration of `{name}`"))?;
                    (d, CallForm::Declare)
                }
            };
            spelled_type(&decl)?;
            (form, decl.type_text)
        }
        None if all_return && !method.is_void() => (CallForm::Return, method.return_type.clone()),
        None => (CallForm::Statement, "void".to_string()),
    };

    let signature = MethodSignature {
        name: default_name(class),
        params,
        return_type,
        return_var: out.cloned(),
        locals,
        call_form,
        is_static: method.is_static,
        type_params: method.type_params.clone(),
        throws: method.throws.clone(),
    };
    Ok(Plan { dataflow, signature })
}

/// Is `run` extractable from `method`?
pub fn is_legal(method: &MethodModel, class: &ClassModel, run: &SiblingRun) -> bool {
    plan(method, class, run).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;
    use crate::model::BlockPath;

    fn class(src: &str) -> ClassModel {
        let (mut u, d) = parse_source(src, "T.java");
        assert!(u.parse_ok, "{d:?}");
        u.classes.remove(0)
    }

    fn top(start: usize, end: usize) -> SiblingRun {
        SiblingRun { block: BlockPath::top(), start, end }
    }

    #[test]
    fn two_outputs_rejected() {
        let c = class("class A { void m() { int a = 1; int b = 2; use(a, b); } }");
        let err = plan(&c.methods[0], &c, &top(0, 2)).unwrap_err();
        assert!(err.contains("a, b"), "{err}");
    }

    #[test]
    fn declared_output_becomes_declaration_call() {
        let c = class("class A { int m(int x) { int a = x + 1; int b = a * 2; return b; } }");
        let p = plan(&c.methods[0], &c, &top(0, 2)).unwrap();
        let s = &p.signature;
        assert_eq!(s.call_form, CallForm::Declare);
        assert_eq!(s.return_type, "int");
        assert_eq!(s.return_var.as_deref(), Some("b"));
        assert_eq!(s.params, vec![VarDecl { name: "x".into(), type_text: "int".into() }]);
        assert_eq!(s.header(), "private int extracted1(int x)");
    }

    #[test]
    fn escaping_break_rejected_but_inner_loop_ok() {
        let c = class(
            "class A { void m(int[] xs) { for (int x : xs) { if (x > 0) break; use(x); } \
             for (int y : xs) { a(); } } }",
        );
        let m = &c.methods[0];
        let inner = SiblingRun { block: BlockPath(vec![0, 0]), start: 0, end: 1 };
        assert!(plan(m, &c, &inner).unwrap_err().contains("break"));
        assert!(is_legal(m, &c, &top(0, 1)));
    }

    #[test]
    fn labeled_continue_to_outer_loop_rejected() {
        let c = class(
            "class A { void m(int n) { outer: for (int i = 0; i < n; i++) { for (int j = 0; j < n; j++) { \
             if (j == i) continue outer; use(j); } } } }",
        );
        let m = &c.methods[0];
        let body = SiblingRun { block: BlockPath(vec![0, 0]), start: 0, end: 1 };
        assert!(!is_legal(m, &c, &body));
        assert!(is_legal(m, &c, &top(0, 1)));
    }

    #[test]
    fn partial_return_rejected() {
        let c = class("class A { int m(int x) { if (x > 0) { return 1; } x++; return x; } }");
        let m = &c.methods[0];
        assert!(plan(m, &c, &top(0, 2)).unwrap_err().contains("some paths"));
        let p = plan(m, &c, &top(0, 3)).unwrap();
        assert_eq!(p.signature.call_form, CallForm::Return);
        assert_eq!(p.signature.return_type, "int");
    }

    #[test]
    fn void_return_only_at_tail() {
        let c = class("class A { void m(int x) { if (x > 0) { return; } a(); b(); } }");
        let m = &c.methods[0];
        assert!(!is_legal(m, &c, &top(0, 2)));
        let p = plan(m, &c, &top(0, 3)).unwrap();
        assert_eq!(p.signature.call_form, CallForm::Statement);
    }

    #[test]
    fn write_only_host_variable_becomes_local() {
        let c = class("class A { void m() { int t; t = 3; use(t); done(); } }");
        let s = plan(&c.methods[0], &c, &top(1, 3)).unwrap().signature;
        assert!(s.params.is_empty());
        assert_eq!(s.locals[0].name, "t");
    }

    #[test]
    fn var_typed_parameter_rejected() {
        let c = class("class A { void m() { var t = 3; use(t); } }");
        assert!(plan(&c.methods[0], &c, &top(1, 2)).unwrap_err().contains("spelled"));
    }

    #[test]
    fn default_name_skips_taken() {
        let c = class("class A { void extracted1() {} void extracted3() {} }");
        assert_eq!(default_name(&c), "extracted2");
    }

    #[test]
    fn static_generic_host_carries_over() {
        let c = class(
            "class A { static <T> T m(java.util.List<T> xs) throws Exception { T a = xs.get(0); T b = a; return b; } }",
        );
        let s = plan(&c.methods[0], &c, &top(0, 2)).unwrap().signature;
        assert_eq!(s.header(), "private static <T> T extracted1(java.util.List<T> xs) throws Exception");
    }
}
