//! Brute-force candidate windows for straight-line methods built by
//! [`crate::gen::flat_method`]. Works from the source lines alone, with its
//! own read/write rules, so it shares nothing with the analyzer.

use std::collections::BTreeSet;

use crate::lexer::lexemes;

const NOT_VARIABLES: &[&str] = &["int", "return", "System", "out", "println"];

#[derive(Debug, Default)]
struct Line {
    reads: BTreeSet<String>,
    writes: BTreeSet<String>,
    declares: Option<String>,
    returns: bool,
}

fn idents(lex: &[String]) -> BTreeSet<String> {
    lex.iter()
        .filter(|l| l.chars().next().is_some_and(|c| c.is_alphabetic()) && !NOT_VARIABLES.contains(&l.as_str()))
        .cloned()
        .collect()
}

fn line(src: &str) -> Line {
    let lex = lexemes(src);
    let mut out = Line::default();
    match lex.first().map(String::as_str) {
        Some("int") => {
            out.declares = Some(lex[1].clone());
            out.writes.insert(lex[1].clone());
            out.reads = idents(&lex[3..]);
        }
        Some("return") => {
            out.returns = true;
            out.reads = idents(&lex);
        }
        Some("System") => out.reads = idents(&lex),
        Some(v) => {
            out.writes.insert(v.to_string());
            match lex[1].as_str() {
                "=" => out.reads = idents(&lex[2..]),
                _ => out.reads = idents(&lex),
            }
        }
        None => {}
    }
    out
}

/// Body statements of a generated flat method, one per line.
pub fn body_lines(src: &str) -> Vec<&str> {
    src.lines().filter(|l| l.starts_with("        ")).map(str::trim).collect()
}

/// Every window `(start, end)` of at least `min` statements and at most
/// `fraction` of the body that a single extracted method could replace.
pub fn legal_windows(src: &str, min: usize, fraction: f64) -> Vec<(usize, usize)> {
    let lines: Vec<Line> = body_lines(src).into_iter().map(line).collect();
    let n = lines.len();
    let mut out = Vec::new();
    for start in 0..n {
        for end in start + 1..=n {
            let len = end - start;
            if len < min || len as f64 > fraction * n as f64 {
                continue;
            }
            if lines[start..end].iter().any(|l| l.returns) {
                out.push((start, end));
                continue;
            }
            let mut outputs = BTreeSet::new();
            for w in lines[start..end].iter().flat_map(|l| &l.writes) {
                for later in &lines[end..] {
                    if later.reads.contains(w) {
                        outputs.insert(w.clone());
                        break;
                    }
                    if later.writes.contains(w) {
                        break;
                    }
                }
            }
            for d in lines[start..end].iter().filter_map(|l| l.declares.as_ref()) {
                if lines[end..].iter().any(|l| l.reads.contains(d) || l.writes.contains(d)) {
                    outputs.insert(d.clone());
                }
            }
            if outputs.len() <= 1 {
                out.push((start, end));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifies_lines() {
        let l = line("x += y * 2;");
        assert!(l.reads.contains("x") && l.reads.contains("y") && l.writes.contains("x"));
        let l = line("int v3 = p0 + p1;");
        assert_eq!(l.declares.as_deref(), Some("v3"));
        assert!(!l.reads.contains("v3"));
        let l = line("p0 = 4;");
        assert!(l.reads.is_empty());
        assert!(line("System.out.println(p1);").reads.contains("p1"));
    }

    #[test]
    fn two_outputs_excluded() {
        let src = "        int a = 1;\n        int b = 2;\n        int c = 3;\n        int d = 4;\n        System.out.println(a + b);\n";
        let w = legal_windows(src, 1, 1.0);
        assert!(!w.contains(&(0, 2)));
        assert!(w.contains(&(0, 1)));
        assert!(w.contains(&(2, 4)));
    }
}
