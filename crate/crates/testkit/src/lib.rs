//! Test-only oracles and generators for the liveref suites.
//!
//! Nothing in here depends on `liveref-core`: the lexer is a hand-written
//! brute-force tokenizer, and the generators only produce source text.

pub mod gen;
pub mod lexer;
pub mod windows;

use std::path::PathBuf;

/// Directory holding the committed `.java` fixtures.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixtures_dir().join(name)
}

pub fn read_fixture(name: &str) -> String {
    let path = fixture(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}
