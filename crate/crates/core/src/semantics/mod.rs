//! Valuations into language models and the evaluation of terms.

mod file;
pub(crate) mod program;
pub(crate) mod span;
pub(crate) mod store;

use std::collections::{BTreeMap, BTreeSet};

use crate::automata::{Alphabet, Automaton, Word};
use crate::error::{Error, Result};
use crate::term::{require_fragment, ExtWord, FragmentClass, Term};
use program::Program;
use span::SpanEval;
use store::LangStore;

pub use file::{decode_word, encode_word, ValuationFile, ValueSpec};

/// Symbol standing for every variable a term does not mention.
pub const SENTINEL: &str = "⊥";

/// An alphabet plus a language for each assigned variable. Unassigned
/// variables denote the empty language.
#[derive(Clone, Debug)]
pub struct Valuation {
    alphabet: Alphabet,
    assignment: BTreeMap<String, Automaton>,
}

impl Valuation {
    pub fn new(alphabet: Alphabet) -> Valuation {
        Valuation { alphabet, assignment: BTreeMap::new() }
    }

    pub fn assign(&mut self, var: &str, value: Automaton) -> Result<()> {
        if *value.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        self.assignment.insert(var.to_string(), value);
        Ok(())
    }

    pub fn with(mut self, var: &str, value: Automaton) -> Result<Valuation> {
        self.assign(var, value)?;
        Ok(self)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn assignment(&self) -> &BTreeMap<String, Automaton> {
        &self.assignment
    }

    /// The value of `var`, the empty language if unassigned.
    pub fn value(&self, var: &str) -> Automaton {
        self.assignment
            .get(var)
            .cloned()
            .unwrap_or_else(|| Automaton::empty(&self.alphabet))
    }

    pub fn profile(&self) -> EpsProfile {
        self.assignment.iter().map(|(x, a)| (x.clone(), a.accepts(&[]))).collect()
    }

    /// Renames one alphabet symbol, keeping every value.
    pub fn rename_symbol(&self, from: &str, to: &str) -> Valuation {
        let alphabet = self.alphabet.rename(from, to);
        let assignment = self
            .assignment
            .iter()
            .map(|(x, a)| (x.clone(), a.relabel(&alphabet)))
            .collect();
        Valuation { alphabet, assignment }
    }
}

/// Whether ε belongs to each variable's value.
pub type EpsProfile = BTreeMap<String, bool>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    LeftNotInRight,
    RightNotInLeft,
}

/// Evidence that an inclusion or equation fails: the witness lies in the
/// value of one side but not the other, as recorded by `side`.
#[derive(Clone, Debug)]
pub struct Refutation {
    pub valuation: Valuation,
    pub witness: Vec<String>,
    pub side: Side,
}

impl Refutation {
    /// Replays the witness through [`evaluate`] and automaton membership.
    pub fn verify(&self, lhs: &Term, rhs: &Term) -> Result<bool> {
        let l = evaluate(lhs, &self.valuation).membership(&self.witness)?;
        let r = evaluate(rhs, &self.valuation).membership(&self.witness)?;
        Ok(match self.side {
            Side::LeftNotInRight => l && !r,
            Side::RightNotInLeft => r && !l,
        })
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Holds,
    Refuted(Refutation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            Verdict::Holds => None,
            Verdict::Refuted(r) => Some(r),
        }
    }
}

/// An equation checked as two inclusions.
#[derive(Clone, Debug)]
pub struct EqVerdict {
    pub left_in_right: Verdict,
    pub right_in_left: Verdict,
}

impl EqVerdict {
    pub fn holds(&self) -> bool {
        self.left_in_right.holds() && self.right_in_left.holds()
    }
}

/// Value of `t` under `v`; every operator, including full complement.
pub fn evaluate(t: &Term, v: &Valuation) -> Automaton {
    let x = &v.alphabet;
    match t {
        Term::Var(name) => v.value(name),
        Term::CoVar(name) => v.value(name).complement(),
        Term::One => Automaton::epsilon(x),
        Term::Zero => Automaton::empty(x),
        Term::CoOne => Automaton::epsilon(x).complement(),
        Term::Plus(a, b) => evaluate(a, v).union(&evaluate(b, v)).expect("shared alphabet").minimize(),
        Term::Seq(a, b) => evaluate(a, v).concat(&evaluate(b, v)).expect("shared alphabet").minimize(),
        Term::Star(a) => evaluate(a, v).star().minimize(),
        Term::Compl(a) => evaluate(a, v).complement(),
    }
}

/// Memoizing evaluator for many terms under one valuation.
pub struct MemoEvaluator {
    alphabet: Alphabet,
    store: LangStore,
    prog: Program,
    leaves: Vec<store::LangId>,
    values: Vec<store::LangId>,
    valuation: Valuation,
}

impl MemoEvaluator {
    pub fn new(v: &Valuation) -> MemoEvaluator {
        let mut store = LangStore::new(v.alphabet.len());
        let mut prog = Program::default();
        let mut leaves = Vec::new();
        for (x, a) in &v.assignment {
            prog.var(x);
            leaves.push(store.add(&a.to_dfa()));
        }
        MemoEvaluator {
            alphabet: v.alphabet.clone(),
            store,
            prog,
            leaves,
            values: Vec::new(),
            valuation: v.clone(),
        }
    }

    fn id(&mut self, t: &Term) -> store::LangId {
        let root = self.prog.add(t);
        while self.leaves.len() < self.prog.vars.len() {
            self.leaves.push(self.store.empty);
        }
        if root as usize >= self.values.len() {
            self.values = self.store.eval(&self.prog, &self.leaves);
        }
        self.values[root as usize]
    }

    pub fn evaluate(&mut self, t: &Term) -> Automaton {
        let id = self.id(t);
        Automaton::from_dfa(self.alphabet.clone(), self.store.dfa(id))
    }

    /// `None` if the value of `lhs` is included in that of `rhs`, else a
    /// length-lexicographically least witness.
    pub fn includes(&mut self, lhs: &Term, rhs: &Term) -> Option<Word> {
        let (a, b) = (self.id(lhs), self.id(rhs));
        if self.store.includes(a, b) {
            return None;
        }
        crate::automata::dfa_difference_witness(self.store.dfa(a), self.store.dfa(b))
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }
}

/// Whether `w` (letter indices) belongs to the value of `t`, by dynamic
/// programming over the factors of `w`.
pub fn membership_dp(w: &[usize], t: &Term, v: &Valuation) -> Result<bool> {
    require_fragment(t, FragmentClass::KaCxC1)?;
    if let Some(&a) = w.iter().find(|&&a| a >= v.alphabet.len()) {
        return Err(Error::UnknownSymbol(format!("letter #{a}")));
    }
    let mut prog = Program::default();
    let root = prog.add(t);
    let n = w.len();
    let mut eval = SpanEval::new(n);
    let stride = eval.stride();
    let mut leaves = vec![0u64; prog.vars.len() * stride];
    for (k, x) in prog.vars.iter().enumerate() {
        let Some(value) = v.assignment.get(x) else { continue };
        let d = value.to_dfa();
        let rows = &mut leaves[k * stride..(k + 1) * stride];
        for i in 0..=n {
            let mut s = 0;
            for j in i..=n {
                if j > i {
                    s = d.step(s, w[j - 1]);
                }
                if d.accept[s as usize] {
                    eval.set(rows, i, j);
                }
            }
        }
    }
    eval.run(&prog, &leaves);
    Ok(eval.contains(root, 0, n))
}

/// Whether ε lies in the value of `t` under any valuation with profile `p`.
pub fn eps_membership(t: &Term, p: &EpsProfile) -> Result<bool> {
    Ok(match t {
        Term::Var(x) => *p.get(x).ok_or_else(|| Error::MissingVariable(x.clone()))?,
        Term::CoVar(x) => !*p.get(x).ok_or_else(|| Error::MissingVariable(x.clone()))?,
        Term::One => true,
        Term::Zero | Term::CoOne => false,
        Term::Plus(a, b) => eps_membership(a, p)? | eps_membership(b, p)?,
        Term::Seq(a, b) => eps_membership(a, p)? & eps_membership(b, p)?,
        Term::Star(_) => true,
        Term::Compl(_) => {
            return Err(Error::Fragment {
                found: FragmentClass::KaFull,
                allowed: FragmentClass::KaCxC1,
            })
        }
    })
}

/// The valuation over fresh letters `l0 … l{m-1}` assigning each variable
/// the blocks `l_i … l_{j-1}` whose source factor `w_i … w_{j-1}` lies in
/// its value. Empty blocks are rejected unless `allow_empty` is set.
pub fn words_to_letters(v: &Valuation, words: &[Word], allow_empty: bool) -> Result<Valuation> {
    let m = words.len();
    if !allow_empty {
        if let Some(i) = words.iter().position(|w| w.is_empty()) {
            return Err(Error::NonEmptyRequired(i));
        }
    }
    if words.iter().flatten().any(|&a| a >= v.alphabet.len()) {
        return Err(Error::AlphabetMismatch);
    }
    let letters = Alphabet::fresh_letters(m);
    let mut out = Valuation::new(letters.clone());
    for (x, value) in &v.assignment {
        let d = value.to_dfa();
        let mut blocks: Vec<Word> = Vec::new();
        if d.accept[0] {
            blocks.push(Vec::new());
        }
        for i in 0..m {
            let mut s = 0;
            for j in i + 1..=m {
                for &a in &words[j - 1] {
                    s = d.step(s, a);
                }
                if d.accept[s as usize] {
                    blocks.push((i..j).collect());
                }
            }
        }
        out.assign(x, Automaton::from_words(&letters, &blocks))?;
    }
    Ok(out)
}

/// Each value intersected with `sub*`, as a valuation over `sub`.
pub fn restrict_alphabet(v: &Valuation, sub: &Alphabet) -> Result<Valuation> {
    let mut out = Valuation::new(sub.clone());
    for (x, a) in &v.assignment {
        out.assign(x, a.restrict_to(sub)?)?;
    }
    Ok(out)
}

/// Every variable maps to the singleton of its own letter; with a sentinel
/// the alphabet also holds [`SENTINEL`], assigned to no variable.
pub fn standard_valuation<S: AsRef<str>>(vars: &[S], with_sentinel: bool) -> Valuation {
    standard_valuation_with_sentinels(vars, usize::from(with_sentinel))
}

/// As [`standard_valuation`] with `k` sentinel letters `⊥, ⊥1, ⊥2, …`.
pub fn standard_valuation_with_sentinels<S: AsRef<str>>(vars: &[S], k: usize) -> Valuation {
    let mut symbols: Vec<String> = vars
        .iter()
        .map(|s| s.as_ref().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let named = symbols.len();
    for i in 0..k {
        symbols.push(if i == 0 { SENTINEL.to_string() } else { format!("{SENTINEL}{i}") });
    }
    let alphabet = Alphabet::new(symbols.clone()).expect("distinct symbols");
    let mut v = Valuation::new(alphabet.clone());
    for (i, x) in symbols.iter().take(named).enumerate() {
        v.assign(x, Automaton::from_words(&alphabet, &[vec![i]])).expect("shared alphabet");
    }
    v
}

fn fresh_var(taken: &BTreeSet<String>) -> String {
    (0..).map(|i| format!("v{i}")).find(|s| !taken.contains(s)).expect("unbounded")
}

fn std_vars(t1: &Term, t2: &Term) -> BTreeSet<String> {
    let mut vars = t1.vars();
    vars.extend(t2.vars());
    vars
}

fn std_includes_with(t1: &Term, t2: &Term, sentinels: usize) -> Verdict {
    let vars = std_vars(t1, t2);
    let names: Vec<&String> = vars.iter().collect();
    let v = standard_valuation_with_sentinels(&names, sentinels);
    let mut memo = MemoEvaluator::new(&v);
    match memo.includes(t1, t2) {
        None => Verdict::Holds,
        Some(w) => {
            let fresh = fresh_var(&vars);
            let v = v.rename_symbol(SENTINEL, &fresh);
            let witness = v.alphabet.spell(&w);
            Verdict::Refuted(Refutation { valuation: v, witness, side: Side::LeftNotInRight })
        }
    }
}

/// Inclusion under the standard (regular expression) semantics. Variables
/// not mentioned by either term are folded into one sentinel letter, which
/// is reported under a fresh variable name.
pub fn std_lang_includes(t1: &Term, t2: &Term) -> Verdict {
    std_includes_with(t1, t2, 1)
}

pub fn std_lang_equiv(t1: &Term, t2: &Term) -> EqVerdict {
    EqVerdict {
        left_in_right: std_includes_with(t1, t2, 1),
        right_in_left: std_includes_with(t2, t1, 1),
    }
}

/// [`std_lang_equiv`] with `k` sentinel letters instead of one.
pub fn std_lang_equiv_with_sentinels(t1: &Term, t2: &Term, k: usize) -> EqVerdict {
    EqVerdict {
        left_in_right: std_includes_with(t1, t2, k),
        right_in_left: std_includes_with(t2, t1, k),
    }
}

/// Splits `w ∈ v̂(u)` into the non-empty factors matched by the letters of
/// `u`. The words-to-letters valuation of these blocks then contains
/// `l0 … l{m-1}` in the value of `u`.
pub fn split_into_blocks(u: &ExtWord, v: &Valuation, w: &[usize]) -> Option<Vec<Word>> {
    let n = w.len();
    let dfas: Vec<_> = u.letters().iter().map(|l| evaluate(&l.to_term(), v).to_dfa()).collect();
    // reach[k][p]: the first k letters of u can consume w[..p]; back[k][p]
    // is the start of the k-th factor.
    let mut reach = vec![vec![false; n + 1]; dfas.len() + 1];
    let mut back = vec![vec![usize::MAX; n + 1]; dfas.len() + 1];
    reach[0][0] = true;
    for (k, d) in dfas.iter().enumerate() {
        for p in 0..=n {
            if !reach[k][p] {
                continue;
            }
            let mut s = 0;
            for q in p..=n {
                if q > p {
                    s = d.step(s, w[q - 1]);
                }
                if d.accept[s as usize] && !reach[k + 1][q] {
                    reach[k + 1][q] = true;
                    back[k + 1][q] = p;
                }
            }
        }
    }
    if !reach[dfas.len()][n] {
        return None;
    }
    let mut blocks = Vec::new();
    let mut q = n;
    for k in (1..=dfas.len()).rev() {
        let p = back[k][q];
        if p < q {
            blocks.push(w[p..q].to_vec());
        }
        q = p;
    }
    blocks.reverse();
    Some(blocks)
}
