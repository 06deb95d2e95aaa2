//! Random Java method generators.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

struct Scope {
    vars: Vec<String>,
    next_local: usize,
}

impl Scope {
    fn new() -> Self {
        Scope { vars: vec!["p0".into(), "p1".into()], next_local: 0 }
    }

    fn pick(&self, rng: &mut StdRng) -> String {
        self.vars[rng.gen_range(0..self.vars.len())].clone()
    }

    fn fresh(&mut self, prefix: &str) -> String {
        let name = format!("{prefix}{}", self.next_local);
        self.next_local += 1;
        name
    }
}

fn expr(rng: &mut StdRng, scope: &Scope) -> String {
    match rng.gen_range(0..4) {
        0 => rng.gen_range(0..100).to_string(),
        1 => scope.pick(rng),
        2 => format!("{} + {}", scope.pick(rng), scope.pick(rng)),
        _ => format!("{} * {}", scope.pick(rng), rng.gen_range(2..9)),
    }
}

fn simple_statement(rng: &mut StdRng, scope: &mut Scope, new_locals: &mut Vec<String>) -> String {
    match rng.gen_range(0..5) {
        0 => {
            let e = expr(rng, scope);
            let v = scope.fresh("v");
            new_locals.push(v.clone());
            format!("int {v} = {e};")
        }
        1 => format!("{} = {};", scope.pick(rng), expr(rng, scope)),
        2 => format!("{} += {};", scope.pick(rng), expr(rng, scope)),
        3 => format!("System.out.println({});", expr(rng, scope)),
        _ => format!("{}++;", scope.pick(rng)),
    }
}

fn wrap(class: &str, returns: bool, body: &[String]) -> String {
    let mut out = format!("class {class} {{\n    {} m(int p0, int p1) {{\n", if returns { "int" } else { "void" });
    for line in body {
        out.push_str("        ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str("    }\n}\n");
    out
}

/// A class holding one method `m` whose body is `n` straight-line statements.
pub fn flat_method(rng: &mut StdRng, class: &str, n: usize) -> String {
    let mut scope = Scope::new();
    let returns = n > 0 && rng.gen_bool(0.3);
    let mut lines = Vec::with_capacity(n);
    for i in 0..n {
        if returns && i + 1 == n {
            lines.push(format!("return {};", expr(rng, &scope)));
            break;
        }
        let mut declared = Vec::new();
        lines.push(simple_statement(rng, &mut scope, &mut declared));
        scope.vars.extend(declared);
    }
    wrap(class, returns, &lines)
}

fn block(rng: &mut StdRng, scope: &mut Scope, depth: usize, budget: &mut usize, in_loop: bool) -> Vec<String> {
    let mut lines = Vec::new();
    let outer_len = scope.vars.len();
    let len = rng.gen_range(1..=5);
    for _ in 0..len {
        if *budget == 0 {
            break;
        }
        *budget -= 1;
        let roll = rng.gen_range(0..10);
        if depth < 2 && roll == 0 {
            let cond = format!("{} > {}", scope.pick(rng), rng.gen_range(0..50));
            let then = block(rng, scope, depth + 1, budget, in_loop);
            lines.push(format!("if ({cond}) {{"));
            lines.extend(then.into_iter().map(|l| format!("    {l}")));
            if rng.gen_bool(0.5) {
                let other = block(rng, scope, depth + 1, budget, in_loop);
                lines.push("} else {".into());
                lines.extend(other.into_iter().map(|l| format!("    {l}")));
            }
            lines.push("}".into());
        } else if depth < 2 && roll == 1 {
            let i = scope.fresh("i");
            let bound = scope.pick(rng);
            scope.vars.push(i.clone());
            let body = block(rng, scope, depth + 1, budget, true);
            scope.vars.retain(|v| v != &i);
            lines.push(format!("for (int {i} = 0; {i} < {bound}; {i}++) {{"));
            lines.extend(body.into_iter().map(|l| format!("    {l}")));
            lines.push("}".into());
        } else if in_loop && roll == 2 {
            let cond = format!("{} == {}", scope.pick(rng), rng.gen_range(0..9));
            lines.push(format!("if ({cond}) {{"));
            lines.push(format!("    {};", if rng.gen_bool(0.5) { "break" } else { "continue" }));
            lines.push("}".into());
        } else {
            let mut declared = Vec::new();
            lines.push(simple_statement(rng, scope, &mut declared));
            scope.vars.extend(declared);
        }
    }
    scope.vars.truncate(outer_len);
    lines
}

/// A class holding one method `m` with nested ifs and loops, about `n` statements.
pub fn structured_method(rng: &mut StdRng, class: &str, n: usize) -> String {
    let mut scope = Scope::new();
    let mut budget = n;
    let mut lines = Vec::new();
    while budget > 0 {
        let part = block(rng, &mut scope, 0, &mut budget, false);
        // Keep top-level locals in scope for the rest of the body.
        for line in &part {
            if let Some(rest) = line.strip_prefix("int ") {
                if let Some(name) = rest.split(' ').next() {
                    scope.vars.push(name.to_string());
                }
            }
        }
        lines.extend(part);
    }
    wrap(class, false, &lines)
}
