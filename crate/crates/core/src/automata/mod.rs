//! Finite automata over small concrete alphabets.
//!
//! Every language value in the crate is an [`Automaton`]. Operations are
//! pure; complement, inclusion and equivalence determinize on demand.

pub(crate) mod dfa;
pub(crate) mod nfa;
mod regex;

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::error::{Error, Result};
use dfa::Dfa;
use nfa::Nfa;

pub use regex::to_regex;

/// A word as letter indices into an [`Alphabet`].
pub type Word = Vec<usize>;

/// Ordered set of distinct symbols; symbol `i` is letter `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Alphabet> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet(symbols.into()))
    }

    pub fn empty() -> Alphabet {
        Alphabet(Arc::from(Vec::new()))
    }

    /// `l0, l1, …` as used for words-to-letters valuations.
    pub fn fresh_letters(m: usize) -> Alphabet {
        Alphabet((0..m).map(|i| format!("l{i}")).collect())
    }

    /// `a, b, c, …`, continuing with `a26, a27, …` past `z`.
    pub fn latin(m: usize) -> Alphabet {
        Alphabet((0..m).map(latin_letter).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.0.iter().position(|s| s == symbol)
    }

    pub fn encode<S: AsRef<str>>(&self, word: &[S]) -> Result<Word> {
        word.iter()
            .map(|s| {
                self.index_of(s.as_ref())
                    .ok_or_else(|| Error::UnknownSymbol(s.as_ref().to_string()))
            })
            .collect()
    }

    pub fn spell(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&a| self.0[a].clone()).collect()
    }

    /// Same symbols, with `from` renamed to `to`.
    pub fn rename(&self, from: &str, to: &str) -> Alphabet {
        Alphabet(self.0.iter().map(|s| if s == from { to.to_string() } else { s.clone() }).collect())
    }
}

pub(crate) fn latin_letter(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{i}")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A finite automaton; the `complete` flag marks a complete deterministic
/// automaton with a single initial state.
#[derive(Clone, Debug)]
pub struct Automaton {
    alphabet: Alphabet,
    nfa: Nfa,
    complete: bool,
}

impl Automaton {
    pub(crate) fn from_nfa(alphabet: Alphabet, nfa: Nfa) -> Automaton {
        debug_assert_eq!(alphabet.len(), nfa.m);
        Automaton { alphabet, nfa, complete: false }
    }

    pub(crate) fn from_dfa(alphabet: Alphabet, dfa: &Dfa) -> Automaton {
        debug_assert_eq!(alphabet.len(), dfa.m);
        Automaton { alphabet, nfa: dfa.to_nfa(), complete: true }
    }

    pub(crate) fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub(crate) fn to_dfa(&self) -> Dfa {
        if self.complete {
            let m = self.nfa.m;
            let mut next = Vec::with_capacity(self.nfa.n * m);
            for row in &self.nfa.trans {
                next.push(row[0]);
            }
            // The initial state may not be 0 after external construction.
            let d = Dfa { m, next, accept: self.nfa.accept.clone() };
            let start = self.nfa.initial[0];
            if start == 0 {
                d
            } else {
                Dfa::determinize(&self.nfa)
            }
        } else {
            Dfa::determinize(&self.nfa)
        }
    }

    /// The empty language.
    pub fn empty(alphabet: &Alphabet) -> Automaton {
        Automaton::from_dfa(alphabet.clone(), &Dfa::trivial(alphabet.len(), false))
    }

    /// `{ε}`.
    pub fn epsilon(alphabet: &Alphabet) -> Automaton {
        Automaton::from_words(alphabet, &[vec![]])
    }

    /// All words over the alphabet.
    pub fn universal(alphabet: &Alphabet) -> Automaton {
        Automaton::from_dfa(alphabet.clone(), &Dfa::trivial(alphabet.len(), true))
    }

    /// Finite language given as letter-index words (a trie).
    pub fn from_words(alphabet: &Alphabet, words: &[Word]) -> Automaton {
        let m = alphabet.len();
        let mut nfa = Nfa::new(m, 1);
        nfa.initial = vec![0];
        let mut children: HashMap<(u32, usize), u32> = HashMap::new();
        for w in words {
            let mut s = 0u32;
            for &a in w {
                assert!(a < m, "letter index {a} out of range");
                s = match children.get(&(s, a)) {
                    Some(&t) => t,
                    None => {
                        let t = nfa.add_state();
                        nfa.add(s, a, t);
                        children.insert((s, a), t);
                        t
                    }
                };
            }
            nfa.accept[s as usize] = true;
        }
        Automaton::from_nfa(alphabet.clone(), nfa)
    }

    /// Finite language given by symbol sequences.
    pub fn from_symbol_words<S: AsRef<str>>(alphabet: &Alphabet, words: &[Vec<S>]) -> Result<Automaton> {
        let encoded: Vec<Word> = words.iter().map(|w| alphabet.encode(w)).collect::<Result<_>>()?;
        Ok(Automaton::from_words(alphabet, &encoded))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.nfa.n
    }

    pub fn initial(&self) -> &[u32] {
        &self.nfa.initial
    }

    pub fn is_accepting(&self, state: u32) -> bool {
        self.nfa.accept[state as usize]
    }

    pub fn is_deterministic_complete(&self) -> bool {
        self.complete
    }

    /// All `(from, letter, to)` transitions.
    pub fn transitions(&self) -> impl Iterator<Item = (u32, usize, u32)> + '_ {
        let m = self.nfa.m;
        self.nfa.trans.iter().enumerate().flat_map(move |(i, row)| {
            row.iter().map(move |&t| ((i / m) as u32, i % m, t))
        })
    }

    fn check(&self, other: &Automaton) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn union(&self, other: &Automaton) -> Result<Automaton> {
        self.check(other)?;
        Ok(Automaton::from_nfa(self.alphabet.clone(), self.nfa.union(&other.nfa)))
    }

    pub fn concat(&self, other: &Automaton) -> Result<Automaton> {
        self.check(other)?;
        Ok(Automaton::from_nfa(self.alphabet.clone(), self.nfa.concat(&other.nfa)))
    }

    pub fn star(&self) -> Automaton {
        Automaton::from_nfa(self.alphabet.clone(), self.nfa.star())
    }

    pub fn intersect(&self, other: &Automaton) -> Result<Automaton> {
        self.check(other)?;
        Ok(Automaton::from_nfa(self.alphabet.clone(), self.nfa.intersect(&other.nfa)))
    }

    /// Complement relative to all words over the alphabet.
    pub fn complement(&self) -> Automaton {
        Automaton::from_dfa(self.alphabet.clone(), &self.to_dfa().complement())
    }

    /// The unique minimal complete automaton, states in breadth-first order.
    /// Structural equality of minimized automata is language equality.
    pub fn minimize(&self) -> Automaton {
        Automaton::from_dfa(self.alphabet.clone(), &self.to_dfa().canonical())
    }

    pub fn accepts(&self, w: &[usize]) -> bool {
        self.nfa.accepts(w)
    }

    pub fn membership<S: AsRef<str>>(&self, w: &[S]) -> Result<bool> {
        Ok(self.accepts(&self.alphabet.encode(w)?))
    }

    pub fn is_empty(&self) -> bool {
        !self.nfa.useful_states().iter().any(|&u| u)
    }

    /// Length-lexicographically least accepted word.
    pub fn shortest_word(&self) -> Option<Word> {
        self.to_dfa().shortest_accepted()
    }

    /// `None` if L(self) ⊆ L(other), else the length-lexicographically
    /// least word of L(self) \ L(other).
    pub fn includes(&self, other: &Automaton) -> Result<Option<Word>> {
        self.check(other)?;
        Ok(product_search(&self.to_dfa(), &other.to_dfa(), |a, b| a && !b))
    }

    /// `None` if the languages are equal, else the length-lexicographically
    /// least word in the symmetric difference.
    pub fn equivalent(&self, other: &Automaton) -> Result<Option<Word>> {
        self.check(other)?;
        Ok(product_search(&self.to_dfa(), &other.to_dfa(), |a, b| a != b))
    }

    /// All accepted words when the language is finite.
    pub fn finite_words(&self) -> Option<Vec<Word>> {
        self.nfa.longest_word()?;
        let d = self.to_dfa().canonical();
        let mut out = Vec::new();
        let mut frontier: Vec<(u32, Word)> = vec![(0, Vec::new())];
        let sink = (0..d.states() as u32)
            .find(|&s| !d.accept[s as usize] && (0..d.m).all(|a| d.step(s, a) == s));
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (s, w) in frontier {
                if d.accept[s as usize] {
                    out.push(w.clone());
                }
                for a in 0..d.m {
                    let t = d.step(s, a);
                    if Some(t) != sink {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((t, w2));
                    }
                }
            }
            frontier = next;
        }
        Some(out)
    }

    /// Keeps the alphabet symbols in `sub` (in `sub`'s order) and drops
    /// transitions on every other letter: the language L ∩ sub*.
    pub fn restrict_to(&self, sub: &Alphabet) -> Result<Automaton> {
        let map: Vec<usize> = sub
            .symbols()
            .iter()
            .map(|s| self.alphabet.index_of(s).ok_or_else(|| Error::NotASubset(s.clone())))
            .collect::<Result<_>>()?;
        let mut out = Nfa::new(sub.len(), self.nfa.n);
        out.initial = self.nfa.initial.clone();
        out.accept = self.nfa.accept.clone();
        for s in 0..self.nfa.n as u32 {
            for (b, &a) in map.iter().enumerate() {
                for &t in self.nfa.targets(s, a) {
                    out.add(s, b, t);
                }
            }
        }
        Ok(Automaton::from_nfa(sub.clone(), out))
    }

    /// The image under the monoid homomorphism sending letter `i` to the
    /// non-empty word `images[i]` over `target`.
    pub fn homomorphic_image(&self, target: &Alphabet, images: &[Word]) -> Automaton {
        assert_eq!(images.len(), self.alphabet.len());
        let mut out = Nfa::new(target.len(), self.nfa.n);
        out.initial = self.nfa.initial.clone();
        out.accept = self.nfa.accept.clone();
        for (s, a, t) in self.transitions().collect::<Vec<_>>() {
            let img = &images[a];
            assert!(!img.is_empty(), "homomorphism images must be non-empty");
            let mut cur = s;
            for &b in &img[..img.len() - 1] {
                let mid = out.add_state();
                out.add(cur, b, mid);
                cur = mid;
            }
            out.add(cur, img[img.len() - 1], t);
        }
        Automaton::from_nfa(target.clone(), out)
    }

    /// Same automaton over an alphabet with identical size and renamed
    /// symbols.
    pub fn relabel(&self, alphabet: &Alphabet) -> Automaton {
        assert_eq!(alphabet.len(), self.alphabet.len());
        Automaton { alphabet: alphabet.clone(), nfa: self.nfa.clone(), complete: self.complete }
    }

    /// GraphViz rendering for debugging.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph automaton {\n  rankdir=LR;\n");
        for q in 0..self.nfa.n {
            let shape = if self.nfa.accept[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  q{q} [shape={shape}];");
        }
        for &i in &self.nfa.initial {
            let _ = writeln!(s, "  start{i} [shape=point];\n  start{i} -> q{i};");
        }
        for (p, a, q) in self.transitions() {
            let _ = writeln!(s, "  q{p} -> q{q} [label=\"{}\"];", self.alphabet.symbol(a));
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn dfa_difference_witness(a: &Dfa, b: &Dfa) -> Option<Word> {
    product_search(a, b, |x, y| x && !y)
}

/// Breadth-first search of the product for the least word reaching a pair
/// of states marked bad by `bad`.
fn product_search(a: &Dfa, b: &Dfa, bad: impl Fn(bool, bool) -> bool) -> Option<Word> {
    let m = a.m;
    let nb = b.states();
    let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
    let start = 0usize;
    let mut seen = std::collections::HashSet::from([start]);
    let mut queue = VecDeque::from([(0u32, 0u32)]);
    while let Some((p, q)) = queue.pop_front() {
        let key = p as usize * nb + q as usize;
        if bad(a.accept[p as usize], b.accept[q as usize]) {
            let mut word = Vec::new();
            let mut cur = key;
            while let Some(&(prev, letter)) = parent.get(&cur) {
                word.push(letter);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for c in 0..m {
            let (tp, tq) = (a.step(p, c), b.step(q, c));
            let tkey = tp as usize * nb + tq as usize;
            if seen.insert(tkey) {
                parent.insert(tkey, (key, c));
                queue.push_back((tp, tq));
            }
        }
    }
    None
}
