#![allow(dead_code)]

use kacd_core::{Alphabet, Automaton, ExtLetter, ExtWord, Term, Valuation};
use proptest::prelude::*;

pub const VARS: [&str; 2] = ["x", "y"];

fn leaf(with_c: bool) -> BoxedStrategy<Term> {
    let mut leaves = vec![Just(Term::Zero).boxed(), Just(Term::One).boxed()];
    for x in VARS {
        leaves.push(Just(Term::var(x)).boxed());
        if with_c {
            leaves.push(Just(Term::covar(x)).boxed());
        }
    }
    if with_c {
        leaves.push(Just(Term::CoOne).boxed());
    }
    proptest::strategy::Union::new(leaves).boxed()
}

/// Terms over `x`, `y`; `complements` enables `!x` and `!1`, `full` adds
/// `!(t)` (built as the parser would), `star` allows Kleene star.
pub fn term(complements: bool, full: bool, star: bool) -> BoxedStrategy<Term> {
    sized_term(complements, full, star, 4, 24)
}

pub fn sized_term(complements: bool, full: bool, star: bool, depth: u32, nodes: u32) -> BoxedStrategy<Term> {
    leaf(complements)
        .prop_recursive(depth, nodes, 2, move |inner| {
            let mut ops = vec![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::plus(a, b)).boxed(),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::seq(a, b)).boxed(),
            ];
            if star {
                ops.push(inner.clone().prop_map(Term::star).boxed());
            }
            if full {
                ops.push(inner.prop_map(Term::negate).boxed());
            }
            proptest::strategy::Union::new(ops)
        })
        .boxed()
}

pub fn ext_letter() -> impl Strategy<Value = ExtLetter> {
    prop_oneof![
        Just(ExtLetter::Pos("x".into())),
        Just(ExtLetter::Neg("x".into())),
        Just(ExtLetter::Pos("y".into())),
        Just(ExtLetter::Neg("y".into())),
        Just(ExtLetter::NotOne),
    ]
}

pub fn ext_word(max: usize) -> impl Strategy<Value = ExtWord> {
    proptest::collection::vec(ext_letter(), 0..=max).prop_map(ExtWord::new)
}

pub fn word(k: usize, max: usize) -> BoxedStrategy<Vec<usize>> {
    if k == 0 {
        return Just(Vec::new()).boxed();
    }
    proptest::collection::vec(0..k, 0..=max).boxed()
}

/// A finite set of short words, or its complement.
pub fn value(alphabet: Alphabet) -> impl Strategy<Value = Automaton> {
    let k = alphabet.len();
    (proptest::collection::vec(word(k, 3), 0..=3), any::<bool>()).prop_map(move |(ws, co)| {
        let a = Automaton::from_words(&alphabet, &ws);
        if co {
            a.complement()
        } else {
            a
        }
    })
}

pub fn valuation(k: usize) -> impl Strategy<Value = Valuation> {
    let alphabet = Alphabet::latin(k);
    (value(alphabet.clone()), value(alphabet.clone())).prop_map(move |(a, b)| {
        Valuation::new(alphabet.clone()).with("x", a).unwrap().with("y", b).unwrap()
    })
}

pub fn same_language(a: &Automaton, b: &Automaton) -> bool {
    a.equivalent(b).unwrap().is_none()
}
