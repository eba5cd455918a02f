//! Enumeration of words-to-letters valuations: for `m` fresh letters, each
//! variable takes a set of contiguous blocks `l_i … l_{j-1}`.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{DecideConfig, EnumerationMode};
use crate::automata::dfa::Dfa;
use crate::automata::{dfa_difference_witness, Alphabet, Automaton, Word};
use crate::error::{Error, Result};
use crate::semantics::program::Program;
use crate::semantics::span::SpanEval;
use crate::semantics::store::{LangId, LangStore};
use crate::semantics::{Refutation, Side, Valuation, Verdict};
use crate::term::Term;

/// Blocks for `m` letters: `ε` first, then `(i, j)` with `i < j` in
/// lexicographic order.
pub(crate) fn blocks(m: usize) -> Vec<(usize, usize)> {
    let mut out = vec![(0, 0)];
    for i in 0..m {
        for j in i + 1..=m {
            out.push((i, j));
        }
    }
    out
}

fn block_word((i, j): (usize, usize)) -> Word {
    (i..j).collect()
}

/// The valuation assigning `vars[v]` the blocks selected by `codes[v]`.
pub(crate) fn block_valuation(m: usize, vars: &[String], codes: &[u64]) -> Valuation {
    let alphabet = Alphabet::fresh_letters(m);
    let bs = blocks(m);
    let mut v = Valuation::new(alphabet.clone());
    for (x, &code) in vars.iter().zip(codes) {
        let words: Vec<Word> = (0..bs.len()).filter(|b| code >> b & 1 == 1).map(|b| block_word(bs[b])).collect();
        v.assign(x, Automaton::from_words(&alphabet, &words)).expect("shared alphabet");
    }
    v
}

/// Per-`m` language stores reused across calls in inclusion mode.
#[derive(Default)]
pub(crate) struct InclusionCache {
    stores: FxHashMap<usize, (LangStore, FxHashMap<u64, LangId>)>,
}

impl InclusionCache {
    fn level(&mut self, m: usize) -> &mut (LangStore, FxHashMap<u64, LangId>) {
        self.stores.entry(m).or_insert_with(|| (LangStore::new(m), FxHashMap::default()))
    }

    fn leaf(&mut self, m: usize, code: u64) -> (&mut LangStore, LangId) {
        let (store, leaves) = self.level(m);
        let id = *leaves.entry(code).or_insert_with(|| {
            let alphabet = Alphabet::fresh_letters(m);
            let bs = blocks(m);
            let words: Vec<Word> =
                (0..bs.len()).filter(|b| code >> b & 1 == 1).map(|b| block_word(bs[b])).collect();
            store.add(&Dfa::determinize(Automaton::from_words(&alphabet, &words).nfa()))
        });
        (store, id)
    }
}

pub(crate) struct Instance<'a> {
    pub lhs: &'a Term,
    pub rhs: &'a Term,
    /// Sorted; the first variable is the most significant digit.
    pub vars: Vec<String>,
    pub bound: usize,
}

fn codes_of(idx: u64, b: usize, k: usize) -> impl Iterator<Item = u64> {
    let mask = if b >= 64 { u64::MAX } else { (1u64 << b) - 1 };
    (0..k).map(move |v| (idx >> (b * (k - 1 - v))) & mask)
}

pub(crate) fn run(inst: &Instance, config: &DecideConfig, cache: &mut InclusionCache) -> Result<Verdict> {
    if inst.bound > config.max_block_count {
        return Err(Error::BudgetExceeded {
            needed: format!("{} blocks", inst.bound),
            limit: format!("{} blocks", config.max_block_count),
        });
    }
    let mut prog = Program::new(&inst.vars);
    let l = prog.add(inst.lhs);
    let r = prog.add(inst.rhs);
    debug_assert_eq!(prog.vars.len(), inst.vars.len());
    let k = inst.vars.len();
    for m in 0..=inst.bound {
        let b = blocks(m).len();
        let bits = b * k;
        if bits > 62 || (1u64 << bits) > config.max_valuations {
            return Err(Error::BudgetExceeded {
                needed: format!("2^{bits} valuations over {m} letters"),
                limit: format!("{} valuations", config.max_valuations),
            });
        }
        let total = 1u64 << bits;
        let found = match config.enumeration_mode {
            EnumerationMode::FullWordWitness => full_word_level(&prog, l, r, m, k, total, config.parallel),
            EnumerationMode::FullInclusion => inclusion_level(&prog, l, r, m, k, total, cache),
        };
        if let Some((idx, witness)) = found {
            let codes: Vec<u64> = codes_of(idx, b, k).collect();
            let valuation = block_valuation(m, &inst.vars, &codes);
            let witness = valuation.alphabet().spell(&witness);
            return Ok(Verdict::Refuted(Refutation { valuation, witness, side: Side::LeftNotInRight }));
        }
    }
    Ok(Verdict::Holds)
}

/// Span rows contributed by each block: `(row, bit)`.
fn block_bits(m: usize) -> Vec<Vec<(usize, u64)>> {
    blocks(m)
        .into_iter()
        .map(|(i, j)| {
            if (i, j) == (0, 0) {
                (0..=m).map(|r| (r, 1u64 << r)).collect()
            } else {
                vec![(i, 1u64 << j)]
            }
        })
        .collect()
}

struct WordChecker<'a> {
    prog: &'a Program,
    l: u32,
    r: u32,
    m: usize,
    k: usize,
    b: usize,
    bits: Vec<Vec<(usize, u64)>>,
    eval: SpanEval,
    leaves: Vec<u64>,
}

impl WordChecker<'_> {
    fn refutes(&mut self, idx: u64) -> bool {
        let stride = self.m + 1;
        self.leaves.iter_mut().for_each(|x| *x = 0);
        for (v, code) in codes_of(idx, self.b, self.k).enumerate() {
            let rows = &mut self.leaves[v * stride..(v + 1) * stride];
            let mut c = code;
            while c != 0 {
                let blk = c.trailing_zeros() as usize;
                c &= c - 1;
                for &(row, bit) in &self.bits[blk] {
                    rows[row] |= bit;
                }
            }
        }
        self.eval.run(self.prog, &self.leaves);
        self.eval.contains(self.l, 0, self.m) && !self.eval.contains(self.r, 0, self.m)
    }
}

fn full_word_level(
    prog: &Program,
    l: u32,
    r: u32,
    m: usize,
    k: usize,
    total: u64,
    parallel: bool,
) -> Option<(u64, Word)> {
    assert!(m < 64, "span rows hold at most 63 letters");
    let make = || WordChecker {
        prog,
        l,
        r,
        m,
        k,
        b: blocks(m).len(),
        bits: block_bits(m),
        eval: SpanEval::new(m),
        leaves: vec![0; k * (m + 1)],
    };
    let witness: Word = (0..m).collect();
    const CHUNK: u64 = 1 << 12;
    let idx = if parallel && total > CHUNK {
        let chunks = total.div_ceil(CHUNK);
        (0..chunks)
            .into_par_iter()
            .map_init(make, |c, ch| (ch * CHUNK..((ch + 1) * CHUNK).min(total)).find(|&i| c.refutes(i)))
            .find_first(Option::is_some)
            .flatten()
    } else {
        let mut c = make();
        (0..total).find(|&i| c.refutes(i))
    };
    idx.map(|i| (i, witness))
}

fn inclusion_level(
    prog: &Program,
    l: u32,
    r: u32,
    m: usize,
    k: usize,
    total: u64,
    cache: &mut InclusionCache,
) -> Option<(u64, Word)> {
    let b = blocks(m).len();
    let mut leaves: Vec<LangId> = vec![0; k];
    for idx in 0..total {
        for (v, code) in codes_of(idx, b, k).enumerate() {
            leaves[v] = cache.leaf(m, code).1;
        }
        let store = &mut cache.level(m).0;
        let values = store.eval(prog, &leaves);
        let (a, c) = (values[l as usize], values[r as usize]);
        if !store.includes(a, c) {
            let w = dfa_difference_witness(store.dfa(a), store.dfa(c)).expect("inclusion fails");
            return Some((idx, w));
        }
    }
    None
}
