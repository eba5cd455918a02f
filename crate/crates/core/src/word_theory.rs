//! Equational theories of `LANG_0`, `LANG_1` and `LANG_α` (α ≥ 2) on
//! extended words, each with a syntactic decision and a separating valuation
//! for the unequal case.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, Automaton};
use crate::decide::{oracle_refute, OracleBudget};
use crate::error::{Error, Result};
use crate::semantics::{evaluate, Refutation, Side, Valuation};
use crate::term::{occ, ExtLetter, ExtWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordTheoryLevel {
    /// The empty alphabet.
    L0,
    /// One letter.
    L1,
    /// Two or more letters.
    L2,
}

/// A word cut at its `!1` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub prefix: ExtWord,
    pub segments: Vec<ExtWord>,
    pub suffix: ExtWord,
    pub notone_count: usize,
}

impl BlockDecomposition {
    pub fn reassemble(&self) -> ExtWord {
        let mut out = self.prefix.0.clone();
        if self.notone_count == 0 {
            return ExtWord(out);
        }
        out.push(ExtLetter::NotOne);
        for s in &self.segments {
            out.extend(s.0.iter().cloned());
            out.push(ExtLetter::NotOne);
        }
        out.extend(self.suffix.0.iter().cloned());
        ExtWord(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule")]
pub enum Justification {
    SyntacticEqual,
    /// Same letter sets, or both sides denote the empty language.
    OccRule,
    /// Same number of occurrences of every letter.
    ParikhRule,
    /// The listed `!1`-delimited segments are swapped.
    SwapRule { segments: Vec<usize> },
}

#[derive(Clone, Debug)]
pub enum WordVerdict {
    Equal(Justification),
    NotEqual(Refutation),
}

impl WordVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, WordVerdict::Equal(_))
    }
}

pub fn decompose_blocks(u: &ExtWord) -> BlockDecomposition {
    let mut parts: Vec<Vec<ExtLetter>> = vec![Vec::new()];
    for l in u.letters() {
        if *l == ExtLetter::NotOne {
            parts.push(Vec::new());
        } else {
            parts.last_mut().expect("non-empty").push(l.clone());
        }
    }
    let notone_count = parts.len() - 1;
    let prefix = ExtWord(parts.remove(0));
    let suffix = if parts.is_empty() { ExtWord::default() } else { ExtWord(parts.pop().expect("non-empty")) };
    BlockDecomposition { prefix, segments: parts.into_iter().map(ExtWord).collect(), suffix, notone_count }
}

/// Maximal runs of equal letters.
fn runs(s: &ExtWord) -> Vec<(&ExtLetter, usize)> {
    let mut out: Vec<(&ExtLetter, usize)> = Vec::new();
    for l in s.letters() {
        match out.last_mut() {
            Some((last, n)) if *last == l => *n += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

/// `z^c0 !z^d0 … z^ck !z^dk` ↦ `!z^d0 z^c0 … !z^dk z^ck`, defined when the
/// segment alternates between one letter and its dual in an even number of
/// non-empty runs.
pub fn segment_swap(s: &ExtWord) -> Option<ExtWord> {
    let rs = runs(s);
    if rs.is_empty() || rs.len() % 2 != 0 {
        return None;
    }
    let z = rs[0].0;
    let dual = z.dual()?;
    for (i, (l, _)) in rs.iter().enumerate() {
        if **l != if i % 2 == 0 { z.clone() } else { dual.clone() } {
            return None;
        }
    }
    let mut out = Vec::with_capacity(s.len());
    for pair in rs.chunks(2) {
        for (l, n) in [pair[1], pair[0]] {
            out.extend(std::iter::repeat(l.clone()).take(n));
        }
    }
    Some(ExtWord(out))
}

fn absorbing(o: &BTreeSet<ExtLetter>) -> bool {
    o.contains(&ExtLetter::NotOne)
        || o.iter().any(|l| matches!(l, ExtLetter::Pos(_)) && o.contains(&l.dual().expect("variable letter")))
}

fn counts(u: &ExtWord) -> BTreeMap<&ExtLetter, usize> {
    let mut m = BTreeMap::new();
    for l in u.letters() {
        *m.entry(l).or_insert(0) += 1;
    }
    m
}

pub fn decide_e0(u: &ExtWord, w: &ExtWord) -> Result<WordVerdict> {
    if u == w {
        return Ok(WordVerdict::Equal(Justification::SyntacticEqual));
    }
    let (ou, ow) = (occ(u), occ(w));
    if ou == ow || (absorbing(&ou) && absorbing(&ow)) {
        return Ok(WordVerdict::Equal(Justification::OccRule));
    }
    refuting_valuation(u, w, WordTheoryLevel::L0).map(WordVerdict::NotEqual)
}

pub fn decide_e1(u: &ExtWord, w: &ExtWord) -> Result<WordVerdict> {
    if u == w {
        return Ok(WordVerdict::Equal(Justification::SyntacticEqual));
    }
    if counts(u) == counts(w) {
        return Ok(WordVerdict::Equal(Justification::ParikhRule));
    }
    refuting_valuation(u, w, WordTheoryLevel::L1).map(WordVerdict::NotEqual)
}

pub fn decide_e2(u: &ExtWord, w: &ExtWord) -> Result<WordVerdict> {
    if u == w {
        return Ok(WordVerdict::Equal(Justification::SyntacticEqual));
    }
    let (du, dw) = (decompose_blocks(u), decompose_blocks(w));
    let same_frame =
        du.notone_count == dw.notone_count && du.prefix == dw.prefix && du.suffix == dw.suffix;
    if same_frame {
        let mut swapped = Vec::new();
        let mut ok = true;
        for (i, (a, b)) in du.segments.iter().zip(&dw.segments).enumerate() {
            if a == b {
                continue;
            }
            if segment_swap(a).as_ref() == Some(b) {
                swapped.push(i);
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(WordVerdict::Equal(Justification::SwapRule { segments: swapped }));
        }
    }
    refuting_valuation(u, w, WordTheoryLevel::L2).map(WordVerdict::NotEqual)
}

pub fn decide_word_theory(u: &ExtWord, w: &ExtWord, level: WordTheoryLevel) -> Result<WordVerdict> {
    match level {
        WordTheoryLevel::L0 => decide_e0(u, w),
        WordTheoryLevel::L1 => decide_e1(u, w),
        WordTheoryLevel::L2 => decide_e2(u, w),
    }
}

fn vars_of(u: &ExtWord, w: &ExtWord) -> BTreeSet<String> {
    u.letters().iter().chain(w.letters()).filter_map(|l| l.var().map(str::to_string)).collect()
}

/// The least word told apart by `v`, with the side holding it.
fn separate(u: &ExtWord, w: &ExtWord, v: Valuation) -> Option<Refutation> {
    let (a, b) = (evaluate(&u.to_term(), &v), evaluate(&w.to_term(), &v));
    let word = a.equivalent(&b).expect("shared alphabet")?;
    let side = if a.accepts(&word) { Side::LeftNotInRight } else { Side::RightNotInLeft };
    let witness = v.alphabet().spell(&word);
    Some(Refutation { valuation: v, witness, side })
}

/// Separating valuation for a pair of words that differ at `level`, built
/// as in the completeness arguments and checked before it is returned.
pub fn refuting_valuation(u: &ExtWord, w: &ExtWord, level: WordTheoryLevel) -> Result<Refutation> {
    let found = match level {
        WordTheoryLevel::L0 => l0_valuation(u, w),
        WordTheoryLevel::L1 => l1_valuation(u, w),
        WordTheoryLevel::L2 => l2_valuation(u, w),
    };
    let r = found.ok_or_else(|| Error::NotActuallyDistinct(format!("{u} and {w}")))?;
    if !r.verify(&u.to_term(), &w.to_term())? {
        return Err(Error::NotActuallyDistinct(format!("{u} and {w}")));
    }
    Ok(r)
}

/// Every variable is `∅` or `{ε}`; the profile satisfies one side's
/// literals and falsifies the other's.
fn l0_valuation(u: &ExtWord, w: &ExtWord) -> Option<Refutation> {
    let (ou, ow) = (occ(u), occ(w));
    // Satisfies `s` and, when possible, falsifies `extra`.
    let profile = |s: &BTreeSet<ExtLetter>, extra: Option<&ExtLetter>| {
        let mut p: BTreeMap<String, bool> = vars_of(u, w).into_iter().map(|x| (x, false)).collect();
        if let Some(ExtLetter::Neg(x)) = extra {
            p.insert(x.clone(), true);
        }
        for l in s {
            match l {
                ExtLetter::Pos(x) => p.insert(x.clone(), true),
                ExtLetter::Neg(x) => p.insert(x.clone(), false),
                ExtLetter::NotOne => None,
            };
        }
        p
    };
    let p = match (absorbing(&ou), absorbing(&ow)) {
        (false, true) => profile(&ou, None),
        (true, false) => profile(&ow, None),
        (false, false) => match ow.difference(&ou).next() {
            Some(l) => profile(&ou, Some(l)),
            None => profile(&ow, ou.difference(&ow).next()),
        },
        (true, true) => return None,
    };
    let alphabet = Alphabet::empty();
    let mut v = Valuation::new(alphabet.clone());
    for (x, b) in p {
        let value = if b { Automaton::epsilon(&alphabet) } else { Automaton::empty(&alphabet) };
        v.assign(&x, value).expect("shared alphabet");
    }
    separate(u, w, v)
}

/// `{aⁿ | n ≥ k}` over the one-letter alphabet.
fn at_least(alphabet: &Alphabet, k: usize) -> Automaton {
    Automaton::from_words(alphabet, &[vec![0; k]]).concat(&Automaton::universal(alphabet)).expect("shared alphabet")
}

/// One letter: the letter whose count differs gets `a^{≥m}`, every other
/// positive letter `a+`, so the shortest words of the two sides differ.
fn l1_valuation(u: &ExtWord, w: &ExtWord) -> Option<Refutation> {
    let (cu, cw) = (counts(u), counts(w));
    let letters: BTreeSet<&ExtLetter> = cu.keys().chain(cw.keys()).copied().collect();
    let differs = letters
        .iter()
        .find(|l| l.var().is_some() && cu.get(*l) != cw.get(*l))
        .copied()
        .cloned();
    let alphabet = Alphabet::latin(1);
    let plus = at_least(&alphabet, 1);
    let mut v = Valuation::new(alphabet.clone());
    for x in vars_of(u, w) {
        v.assign(&x, plus.clone()).expect("shared alphabet");
    }
    if let Some(l) = differs {
        let few = if cu.get(&l) < cw.get(&l) { u } else { w };
        // Letters of the shorter side that cost at least one `a`.
        let others = few
            .letters()
            .iter()
            .filter(|k| matches!(k, ExtLetter::Pos(_)) && k.var() != l.var() || **k == ExtLetter::NotOne)
            .count();
        let m = 1 + others;
        let x = l.var().expect("variable letter");
        let value = match l {
            ExtLetter::Pos(_) => at_least(&alphabet, m),
            _ => at_least(&alphabet, m).complement(),
        };
        v.assign(x, value).expect("shared alphabet");
    }
    separate(u, w, v)
}

/// Two letters. Counts that differ are already visible with one letter;
/// otherwise the negative-letter and positive-adjacency valuations are
/// tried under every choice of polarity, then a bounded search.
fn l2_valuation(u: &ExtWord, w: &ExtWord) -> Option<Refutation> {
    if counts(u) != counts(w) {
        return l1_valuation(u, w);
    }
    let vars: Vec<String> = vars_of(u, w).into_iter().collect();
    let alphabet = Alphabet::latin(2);
    let word = |ws: &[&[usize]]| Automaton::from_words(&alphabet, &ws.iter().map(|w| w.to_vec()).collect::<Vec<_>>());
    let eps_a = word(&[&[], &[0]]);
    let eps_b = word(&[&[], &[1]]);
    // Words over {a, b} starting and ending with a.
    let top = Automaton::universal(&alphabet);
    let a = word(&[&[0]]);
    let a_ends = a.concat(&top).unwrap().intersect(&top.concat(&a).unwrap()).unwrap().minimize();
    let masks: u64 = 1u64 << vars.len().min(16);
    let assign = |mask: u64, pick: &dyn Fn(&str) -> Automaton| {
        let mut v = Valuation::new(alphabet.clone());
        for (i, x) in vars.iter().enumerate() {
            let flipped = mask >> i & 1 == 1;
            let val = pick(x);
            v.assign(x, if flipped { val.complement() } else { val }).expect("shared alphabet");
        }
        v
    };
    for mask in 0..masks {
        for y in &vars {
            let v = assign(mask, &|x| if x == y { eps_a.clone() } else { eps_b.clone() });
            if let Some(r) = separate(u, w, v) {
                return Some(r);
            }
        }
    }
    for mask in 0..masks {
        let v = assign(mask, &|_| a_ends.clone());
        if let Some(r) = separate(u, w, v) {
            return Some(r);
        }
    }
    let budget = OracleBudget { max_alphabet: 2, max_value_len: 3, max_values_per_var: 3, ..Default::default() };
    let (tu, tw) = (u.to_term(), w.to_term());
    if let Some(r) = oracle_refute(&tu, &tw, &budget) {
        return Some(r);
    }
    oracle_refute(&tw, &tu, &budget).map(|r| Refutation { side: Side::RightNotInLeft, ..r })
}
