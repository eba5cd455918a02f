//! Shared fixtures for the benchmarks.

use kacd_core::{parse_ext_word, parse_term, ExtWord, FragmentClass, Term};

pub fn term(s: &str) -> Term {
    parse_term(s, FragmentClass::KaFull).expect("fixture parses")
}

pub fn word(s: &str) -> ExtWord {
    parse_ext_word(s).expect("fixture parses")
}

/// Word inclusions `u ≤ t` of growing block count; all hold.
pub fn word_cases() -> Vec<(ExtWord, Term)> {
    [
        ("x", "x + y"),
        ("x !x", "!1 + 1"),
        ("x y !1", "(x + y + !1)*"),
        ("x !y x !1", "(x + !y + !1)*"),
        ("x !x x !x !1", "(x ; !x)* ; !1"),
    ]
    .iter()
    .map(|(u, t)| (word(u), term(t)))
    .collect()
}

/// Star-free inclusions that hold, so every level is enumerated.
pub fn starfree_cases() -> Vec<(Term, Term)> {
    [("x ; y + y", "(x + 1) ; y"), ("x ; !x", "!1 + x ; !x"), ("!x ; !1 ; y", "!1 ; (y + !y)")]
        .iter()
        .map(|(a, b)| (term(a), term(b)))
        .collect()
}
