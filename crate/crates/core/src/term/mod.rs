//! Terms of Kleene algebra with variable complements, the constant `!1`,
//! and (optionally) full complement.

mod glushkov;
pub(crate) mod parse;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use glushkov::{ext_language, sup_length};
pub use parse::{parse_ext_word, parse_term};

/// Abstract syntax of a term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    CoVar(String),
    One,
    Zero,
    CoOne,
    Plus(Box<Term>, Box<Term>),
    Seq(Box<Term>, Box<Term>),
    Star(Box<Term>),
    Compl(Box<Term>),
}

/// Syntactic fragments, ordered by inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FragmentClass {
    Ka,
    KaCx,
    KaCxC1,
    KaFull,
}

impl fmt::Display for FragmentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FragmentClass::Ka => "KA",
            FragmentClass::KaCx => "KA_CX",
            FragmentClass::KaCxC1 => "KA_CX_C1",
            FragmentClass::KaFull => "KA_FULL",
        })
    }
}

/// Letter of the extended alphabet: `x`, `!x` or `!1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtLetter {
    Pos(String),
    Neg(String),
    NotOne,
}

impl ExtLetter {
    pub fn to_term(&self) -> Term {
        match self {
            ExtLetter::Pos(x) => Term::Var(x.clone()),
            ExtLetter::Neg(x) => Term::CoVar(x.clone()),
            ExtLetter::NotOne => Term::CoOne,
        }
    }

    /// The variable underlying a `Pos`/`Neg` letter.
    pub fn var(&self) -> Option<&str> {
        match self {
            ExtLetter::Pos(x) | ExtLetter::Neg(x) => Some(x),
            ExtLetter::NotOne => None,
        }
    }

    /// `x` for `!x` and vice versa; `!1` has no dual letter.
    pub fn dual(&self) -> Option<ExtLetter> {
        match self {
            ExtLetter::Pos(x) => Some(ExtLetter::Neg(x.clone())),
            ExtLetter::Neg(x) => Some(ExtLetter::Pos(x.clone())),
            ExtLetter::NotOne => None,
        }
    }
}

impl fmt::Display for ExtLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtLetter::Pos(x) => f.write_str(x),
            ExtLetter::Neg(x) => write!(f, "!{x}"),
            ExtLetter::NotOne => f.write_str("!1"),
        }
    }
}

/// A word over the extended alphabet. The empty word stands for `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtWord(pub Vec<ExtLetter>);

impl ExtWord {
    pub fn new(letters: Vec<ExtLetter>) -> Self {
        ExtWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[ExtLetter] {
        &self.0
    }

    /// The word as a left-nested `;` chain, or `1` when empty.
    pub fn to_term(&self) -> Term {
        let mut it = self.0.iter().map(ExtLetter::to_term);
        match it.next() {
            None => Term::One,
            Some(first) => it.fold(first, Term::seq),
        }
    }

    /// Reads a term back as an extended word if it is a `;` chain of letters.
    pub fn from_term(t: &Term) -> Option<ExtWord> {
        fn go(t: &Term, out: &mut Vec<ExtLetter>) -> bool {
            match t {
                Term::Var(x) => out.push(ExtLetter::Pos(x.clone())),
                Term::CoVar(x) => out.push(ExtLetter::Neg(x.clone())),
                Term::CoOne => out.push(ExtLetter::NotOne),
                Term::Seq(a, b) => return go(a, out) && go(b, out),
                _ => return false,
            }
            true
        }
        let mut out = Vec::new();
        go(t, &mut out).then_some(ExtWord(out))
    }
}

impl fmt::Display for ExtWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<ExtLetter> for ExtWord {
    fn from_iter<I: IntoIterator<Item = ExtLetter>>(iter: I) -> Self {
        ExtWord(iter.into_iter().collect())
    }
}

/// Supremum of word lengths in the extended-alphabet language of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SupLength {
    Finite(usize),
    Omega,
}

impl SupLength {
    pub fn finite(self) -> Option<usize> {
        match self {
            SupLength::Finite(n) => Some(n),
            SupLength::Omega => None,
        }
    }
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn covar(name: &str) -> Term {
        Term::CoVar(name.to_string())
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::Plus(Box::new(a), Box::new(b))
    }

    pub fn seq(a: Term, b: Term) -> Term {
        Term::Seq(Box::new(a), Box::new(b))
    }

    pub fn star(a: Term) -> Term {
        Term::Star(Box::new(a))
    }

    pub fn compl(a: Term) -> Term {
        Term::Compl(Box::new(a))
    }

    /// `!0`, the full language.
    pub fn top() -> Term {
        Term::compl(Term::Zero)
    }

    /// Complement with the leaf normalization used by the parser.
    pub fn negate(self) -> Term {
        match self {
            Term::Var(x) => Term::CoVar(x),
            Term::CoVar(x) => Term::Var(x),
            Term::One => Term::CoOne,
            Term::CoOne => Term::One,
            Term::Compl(b) => *b,
            other => Term::compl(other),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Plus(a, b) | Term::Seq(a, b) => 1 + a.size() + b.size(),
            Term::Star(a) | Term::Compl(a) => 1 + a.size(),
            _ => 1,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) | Term::CoVar(x) => {
                out.insert(x.clone());
            }
            Term::Plus(a, b) | Term::Seq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Star(a) | Term::Compl(a) => a.collect_vars(out),
            Term::One | Term::Zero | Term::CoOne => {}
        }
    }

    /// Replaces every `!0` by `1 + !1`, which denotes the same language.
    pub fn expand_top(&self) -> Term {
        match self {
            Term::Compl(b) if **b == Term::Zero => Term::plus(Term::One, Term::CoOne),
            Term::Plus(a, b) => Term::plus(a.expand_top(), b.expand_top()),
            Term::Seq(a, b) => Term::seq(a.expand_top(), b.expand_top()),
            Term::Star(a) => Term::star(a.expand_top()),
            Term::Compl(a) => Term::compl(a.expand_top()),
            leaf => leaf.clone(),
        }
    }

    /// True when the term is `1 + !1`, `!1 + 1` or `!0`.
    pub fn is_top_pattern(&self) -> bool {
        match self {
            Term::Compl(b) => **b == Term::Zero,
            Term::Plus(a, b) => {
                matches!((&**a, &**b), (Term::One, Term::CoOne) | (Term::CoOne, Term::One))
            }
            _ => false,
        }
    }
}

/// Smallest fragment containing `t`.
pub fn classify_fragment(t: &Term) -> FragmentClass {
    match t {
        Term::Var(_) | Term::One | Term::Zero => FragmentClass::Ka,
        Term::CoVar(_) => FragmentClass::KaCx,
        Term::CoOne => FragmentClass::KaCxC1,
        Term::Compl(_) => FragmentClass::KaFull,
        Term::Plus(a, b) | Term::Seq(a, b) => classify_fragment(a).max(classify_fragment(b)),
        Term::Star(a) => classify_fragment(a),
    }
}

/// Fails with a fragment error when `t` is outside `allowed`.
pub fn require_fragment(t: &Term, allowed: FragmentClass) -> Result<()> {
    let found = classify_fragment(t);
    if found > allowed {
        return Err(Error::Fragment { found, allowed });
    }
    Ok(())
}

/// Every term of size at most `max_size` built from `atoms` with `+`, `;`
/// and `*`, grouped by size and in a fixed order within each size.
pub fn terms_up_to(atoms: &[Term], max_size: usize) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(), atoms.to_vec()];
    for n in 2..=max_size {
        let mut out: Vec<Term> = by_size[n - 1].iter().cloned().map(Term::star).collect();
        for l in 1..n - 1 {
            let r = n - 1 - l;
            for a in &by_size[l] {
                for b in &by_size[r] {
                    out.push(Term::plus(a.clone(), b.clone()));
                    out.push(Term::seq(a.clone(), b.clone()));
                }
            }
        }
        by_size.push(out);
    }
    by_size.into_iter().take(max_size + 1).flatten().collect()
}

/// `x, !x, …` for each variable, then `0`, `1`, `!1`.
pub fn cx_c1_atoms<S: AsRef<str>>(vars: &[S]) -> Vec<Term> {
    let mut out: Vec<Term> = vars.iter().flat_map(|x| [Term::var(x.as_ref()), Term::covar(x.as_ref())]).collect();
    out.extend([Term::Zero, Term::One, Term::CoOne]);
    out
}

pub fn is_star_free(t: &Term) -> bool {
    match t {
        Term::Star(_) => false,
        Term::Plus(a, b) | Term::Seq(a, b) => is_star_free(a) && is_star_free(b),
        Term::Compl(a) => is_star_free(a),
        _ => true,
    }
}

pub fn occ(w: &ExtWord) -> BTreeSet<ExtLetter> {
    w.0.iter().cloned().collect()
}

pub fn count(w: &ExtWord, xs: &BTreeSet<ExtLetter>) -> usize {
    w.0.iter().filter(|l| xs.contains(l)).count()
}

/// Concrete syntax for `t`; parses back to `t` whenever `t` is in the
/// parser's normal form (no `Compl` directly over a leaf or another `Compl`).
pub fn render_term(t: &Term) -> String {
    let mut out = String::new();
    render_into(t, 0, &mut out);
    out
}

// Levels: 0 sum, 1 cat, 2 unary, 3 atom.
fn render_into(t: &Term, level: u8, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::CoVar(x) => {
            out.push('!');
            out.push_str(x);
        }
        Term::One => out.push('1'),
        Term::Zero => out.push('0'),
        Term::CoOne => out.push_str("!1"),
        Term::Plus(a, b) => wrap(level > 0, out, |out| {
            render_into(a, 0, out);
            out.push_str(" + ");
            render_into(b, 1, out);
        }),
        Term::Seq(a, b) => wrap(level > 1, out, |out| {
            render_into(a, 1, out);
            out.push_str(" ; ");
            render_into(b, 2, out);
        }),
        Term::Star(a) => wrap(level > 2, out, |out| {
            render_into(a, 2, out);
            out.push('*');
        }),
        Term::Compl(a) => {
            out.push('!');
            render_into(a, 3, out);
        }
    }
}

fn wrap(parens: bool, out: &mut String, body: impl FnOnce(&mut String)) {
    if parens {
        out.push('(');
    }
    body(out);
    if parens {
        out.push(')');
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}
