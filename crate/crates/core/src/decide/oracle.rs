//! Bounded brute-force refutation over small latin alphabets, independent
//! of the block construction used by the decision procedures.

use std::time::{Duration, Instant};

use crate::automata::{dfa_difference_witness, Alphabet, Automaton, Word};
use crate::semantics::program::{Op, Program};
use crate::semantics::store::{LangId, LangStore};
use crate::semantics::{Refutation, Side, Valuation};
use crate::term::Term;

#[derive(Clone, Debug)]
pub struct OracleBudget {
    /// Alphabets `{a}`, `{a, b}`, … up to this size are tried, starting at 0.
    pub max_alphabet: usize,
    /// Longest word in a finite candidate value.
    pub max_value_len: usize,
    /// Most words in a finite candidate value.
    pub max_values_per_var: usize,
    pub time: Option<Duration>,
    /// Also try the complement of every finite candidate.
    pub include_cofinite: bool,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_alphabet: 2,
            max_value_len: 2,
            max_values_per_var: 2,
            time: None,
            include_cofinite: true,
        }
    }
}

/// Words over `k` letters of length at most `len`, length-lex ordered.
fn words_upto(k: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..k {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    if k == 0 {
        out.truncate(1);
    }
    out
}

/// Index combinations of `n` items of size `r`, lexicographic.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

/// Candidate values over `k` letters, interned in `store`: finite sets by
/// size, then their complements, dropping repeated languages.
fn candidates(store: &mut LangStore, k: usize, budget: &OracleBudget) -> Vec<LangId> {
    let alphabet = Alphabet::latin(k);
    let words = words_upto(k, budget.max_value_len);
    let mut finite = Vec::new();
    for r in 0..=budget.max_values_per_var.min(words.len()) {
        for combo in combinations(words.len(), r) {
            let set: Vec<Word> = combo.iter().map(|&i| words[i].clone()).collect();
            finite.push(store.add(&Automaton::from_words(&alphabet, &set).to_dfa()));
        }
    }
    let mut all = finite.clone();
    if budget.include_cofinite {
        all.extend(finite.iter().map(|&id| store.compl(id)));
    }
    let mut seen = rustc_hash::FxHashSet::default();
    all.retain(|id| seen.insert(*id));
    all
}

/// Searches for a valuation and word separating `t1` from `t2`.
pub fn oracle_refute(t1: &Term, t2: &Term, budget: &OracleBudget) -> Option<Refutation> {
    oracle_refute_batch(&[(t1, t2, budget.max_alphabet)], budget).pop().flatten()
}

/// Runs the search for many pairs at once, each with its own alphabet
/// limit. Every pair gets the same answer as a lone [`oracle_refute`]; the
/// time limit applies to the whole batch.
pub fn oracle_refute_batch(pairs: &[(&Term, &Term, usize)], budget: &OracleBudget) -> Vec<Option<Refutation>> {
    let deadline = budget.time.map(|d| Instant::now() + d);
    let mut vars = std::collections::BTreeSet::new();
    for (l, r, _) in pairs {
        vars.extend(l.vars());
        vars.extend(r.vars());
    }
    let vars: Vec<String> = vars.into_iter().collect();
    let mut prog = Program::new(&vars);
    let roots: Vec<(u32, u32)> = pairs.iter().map(|(l, r, _)| (prog.add(l), prog.add(r))).collect();
    let pair_vars: Vec<Vec<usize>> = pairs
        .iter()
        .map(|(l, r, _)| {
            let mut vs = l.vars();
            vs.extend(r.vars());
            vs.iter().map(|v| vars.binary_search(v).expect("collected")).collect()
        })
        .collect();

    let mut out: Vec<Option<Refutation>> = vec![None; pairs.len()];
    let max_k = pairs.iter().map(|p| p.2).max().unwrap_or(0);
    let nv = vars.len();
    'levels: for k in 0..=max_k {
        let mut active: Vec<usize> = (0..pairs.len()).filter(|&i| out[i].is_none() && pairs[i].2 >= k).collect();
        if active.is_empty() {
            continue;
        }
        let mut store = LangStore::new(k);
        let cands = candidates(&mut store, k, budget);
        let n = cands.len() as u128;
        let total = n.checked_pow(nv as u32).unwrap_or(u128::MAX);
        let mut needed = needed_ops(&prog, &roots, &active);
        let mut vals: Vec<LangId> = vec![0; prog.ops.len()];
        let mut leaves: Vec<LangId> = vec![0; nv];
        let mut digits = vec![0usize; nv];
        let mut idx: u128 = 0;
        while idx < total {
            if let Some(d) = deadline {
                if idx % 64 == 0 && Instant::now() >= d {
                    break 'levels;
                }
            }
            for v in 0..nv {
                leaves[v] = cands[digits[v]];
            }
            eval_needed(&mut store, &prog, &leaves, &needed, &mut vals);
            let before = active.len();
            active.retain(|&p| {
                let (l, r) = roots[p];
                let (a, b) = (vals[l as usize], vals[r as usize]);
                if store.includes(a, b) {
                    return true;
                }
                let w = dfa_difference_witness(store.dfa(a), store.dfa(b)).expect("not included");
                out[p] = Some(build(k, &vars, &pair_vars[p], &digits, &cands, &store, &w));
                false
            });
            if active.is_empty() {
                break;
            }
            if active.len() != before {
                needed = needed_ops(&prog, &roots, &active);
            }
            // Mixed radix increment, last variable least significant.
            idx += 1;
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < cands.len() {
                    break;
                }
                *d = 0;
            }
        }
    }
    out
}

fn needed_ops(prog: &Program, roots: &[(u32, u32)], active: &[usize]) -> Vec<bool> {
    let mut need = vec![false; prog.ops.len()];
    for &p in active {
        need[roots[p].0 as usize] = true;
        need[roots[p].1 as usize] = true;
    }
    for i in (0..prog.ops.len()).rev() {
        if !need[i] {
            continue;
        }
        match prog.ops[i] {
            Op::Plus(a, b) | Op::Seq(a, b) => {
                need[a as usize] = true;
                need[b as usize] = true;
            }
            Op::Star(a) | Op::Compl(a) => need[a as usize] = true,
            _ => {}
        }
    }
    need
}

fn eval_needed(store: &mut LangStore, prog: &Program, leaves: &[LangId], need: &[bool], vals: &mut [LangId]) {
    for (i, op) in prog.ops.iter().enumerate() {
        if !need[i] {
            continue;
        }
        vals[i] = match *op {
            Op::Var(x) => leaves[x as usize],
            Op::CoVar(x) => store.compl(leaves[x as usize]),
            Op::One => store.eps,
            Op::Zero => store.empty,
            Op::CoOne => store.non_eps,
            Op::Plus(a, b) => store.union(vals[a as usize], vals[b as usize]),
            Op::Seq(a, b) => store.concat(vals[a as usize], vals[b as usize]),
            Op::Star(a) => store.star(vals[a as usize]),
            Op::Compl(a) => store.compl(vals[a as usize]),
        };
    }
}

fn build(
    k: usize,
    vars: &[String],
    used: &[usize],
    digits: &[usize],
    cands: &[LangId],
    store: &LangStore,
    witness: &[usize],
) -> Refutation {
    let alphabet = Alphabet::latin(k);
    let mut valuation = Valuation::new(alphabet.clone());
    for &v in used {
        let value = Automaton::from_dfa(alphabet.clone(), store.dfa(cands[digits[v]]));
        valuation.assign(&vars[v], value).expect("shared alphabet");
    }
    Refutation { witness: alphabet.spell(witness), valuation, side: Side::LeftNotInRight }
}
