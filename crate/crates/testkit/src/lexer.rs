//! Brute-force Java token counter used as the Halstead oracle.
//!
//! Classification rule: identifiers and literals are operands; keywords,
//! operators and punctuation are operators. A `(`/`)` pair counts once as
//! `()`, a `[`/`]` pair once as `[]`, curly braces are not counted, and
//! comments and whitespace are skipped. `true`, `false` and `null` are
//! literals.

use std::collections::BTreeMap;

const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
    "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try",
    "void", "volatile", "while",
];

const LITERAL_WORDS: &[&str] = &["true", "false", "null"];

// Longest first.
const PUNCT: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "+", "-", "*", "/", "%",
    "=", "<", ">", "!", "~", "?", ":", ";", ",", ".", "&", "|", "^", "@",
];

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Counts {
    pub operators: BTreeMap<String, u32>,
    pub operands: BTreeMap<String, u32>,
}

impl Counts {
    pub fn distinct_operators(&self) -> u32 {
        self.operators.len() as u32
    }
    pub fn distinct_operands(&self) -> u32 {
        self.operands.len() as u32
    }
    pub fn total_operators(&self) -> u32 {
        self.operators.values().sum()
    }
    pub fn total_operands(&self) -> u32 {
        self.operands.values().sum()
    }

    /// Volume, difficulty and effort straight from the textbook formulas.
    pub fn volume_difficulty_effort(&self) -> (f64, f64, f64) {
        let vocabulary = (self.distinct_operators() + self.distinct_operands()) as f64;
        let length = (self.total_operators() + self.total_operands()) as f64;
        let volume = if vocabulary >= 1.0 { length * vocabulary.log2() } else { 0.0 };
        let difficulty = (self.distinct_operators() as f64 / 2.0)
            * (self.total_operands() as f64 / (self.distinct_operands().max(1) as f64));
        (volume, difficulty, difficulty * volume)
    }
}

fn bump(map: &mut BTreeMap<String, u32>, key: &str) {
    *map.entry(key.to_string()).or_insert(0) += 1;
}

/// Count every token of `src`.
pub fn count(src: &str) -> Counts {
    let mut out = Counts::default();
    for tok in tokenize(src) {
        match tok {
            Tok::Operand(s) => bump(&mut out.operands, &s),
            Tok::Operator(s) => bump(&mut out.operators, &s),
            Tok::Skip => {}
        }
    }
    out
}

/// Lexemes of `src` with comments and whitespace removed, in order.
pub fn lexemes(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    raw_lex(src, |s| out.push(s.to_string()));
    out
}

enum Tok {
    Operand(String),
    Operator(String),
    Skip,
}

fn tokenize(src: &str) -> Vec<Tok> {
    let mut toks = Vec::new();
    raw_lex(src, |lexeme| {
        let first = lexeme.chars().next().unwrap();
        let numeric = first.is_ascii_digit() || (first == '.' && lexeme.len() > 1 && lexeme.as_bytes()[1].is_ascii_digit());
        let tok = if first == '"' || first == '\'' || numeric {
            Tok::Operand(lexeme.to_string())
        } else if first.is_alphabetic() || first == '_' || first == '$' {
            if LITERAL_WORDS.contains(&lexeme) || !KEYWORDS.contains(&lexeme) {
                Tok::Operand(lexeme.to_string())
            } else {
                Tok::Operator(lexeme.to_string())
            }
        } else {
            match lexeme {
                "(" => Tok::Operator("()".into()),
                "[" => Tok::Operator("[]".into()),
                ")" | "]" | "{" | "}" => Tok::Skip,
                other => Tok::Operator(other.to_string()),
            }
        };
        toks.push(tok);
    });
    toks
}

fn raw_lex<'a>(src: &'a str, mut emit: impl FnMut(&'a str)) {
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if src[i..].starts_with("//") {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if src[i..].starts_with("/*") {
            let end = src[i + 2..].find("*/").map(|p| i + 2 + p + 2).unwrap_or(bytes.len());
            i = end;
        } else if c == b'"' || c == b'\'' {
            let start = i;
            i += 1;
            while i < bytes.len() && bytes[i] != c {
                if bytes[i] == b'\\' {
                    i += 1;
                }
                i += 1;
            }
            i = (i + 1).min(bytes.len());
            emit(&src[start..i]);
        } else if c.is_ascii_digit() || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            let start = i;
            while i < bytes.len() {
                let b = bytes[i];
                let exp_sign = (b == b'+' || b == b'-')
                    && matches!(bytes[i - 1], b'e' | b'E' | b'p' | b'P')
                    && !src[start..i].starts_with("0x");
                if b.is_ascii_alphanumeric() || b == b'.' || b == b'_' || exp_sign {
                    i += 1;
                } else {
                    break;
                }
            }
            emit(&src[start..i]);
        } else if c.is_ascii_alphabetic() || c == b'_' || c == b'$' || c >= 0x80 {
            let start = i;
            while i < bytes.len()
                && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'$' || bytes[i] >= 0x80)
            {
                i += 1;
            }
            emit(&src[start..i]);
        } else if let Some(p) = PUNCT.iter().find(|p| src[i..].starts_with(**p)) {
            emit(&src[i..i + p.len()]);
            i += p.len();
        } else {
            // Grouping characters are single-byte lexemes.
            emit(&src[i..i + 1]);
            i += 1;
        }
    }
}
