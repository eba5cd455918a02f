//! Hash-consed languages over one alphabet. Every language is kept as its
//! canonical minimal automaton, so identifiers are equal iff languages are,
//! and each operation on a pair of identifiers is computed once.

use rustc_hash::FxHashMap;

use super::program::{Op, Program};
use crate::automata::dfa::Dfa;

pub(crate) type LangId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Code {
    Union,
    Concat,
    Star,
    Compl,
}

pub(crate) struct LangStore {
    m: usize,
    langs: Vec<Dfa>,
    index: FxHashMap<Dfa, LangId>,
    memo: FxHashMap<(Code, LangId, LangId), LangId>,
    pub empty: LangId,
    pub eps: LangId,
    pub non_eps: LangId,
}

impl LangStore {
    pub fn new(m: usize) -> LangStore {
        let mut s = LangStore {
            m,
            langs: Vec::new(),
            index: FxHashMap::default(),
            memo: FxHashMap::default(),
            empty: 0,
            eps: 0,
            non_eps: 0,
        };
        s.empty = s.intern(Dfa::trivial(m, false));
        let eps = Dfa {
            m,
            next: (0..2 * m).map(|_| 1).collect(),
            accept: vec![true, false],
        };
        s.eps = s.intern(eps.canonical());
        s.non_eps = s.compl(s.eps);
        s
    }

    /// Interns an automaton (any complete DFA over the store's alphabet).
    pub fn add(&mut self, d: &Dfa) -> LangId {
        self.intern(d.canonical())
    }

    fn intern(&mut self, d: Dfa) -> LangId {
        debug_assert_eq!(d.m, self.m);
        if let Some(&id) = self.index.get(&d) {
            return id;
        }
        let id = self.langs.len() as LangId;
        self.langs.push(d.clone());
        self.index.insert(d, id);
        id
    }

    pub fn dfa(&self, id: LangId) -> &Dfa {
        &self.langs[id as usize]
    }

    fn apply(&mut self, code: Code, a: LangId, b: LangId) -> LangId {
        if let Some(&id) = self.memo.get(&(code, a, b)) {
            return id;
        }
        let (da, db) = (&self.langs[a as usize], &self.langs[b as usize]);
        let d = match code {
            Code::Union => da.product(db, |x, y| x || y).canonical(),
            Code::Concat => Dfa::determinize(&da.to_nfa().concat(&db.to_nfa())).canonical(),
            Code::Star => Dfa::determinize(&da.to_nfa().star()).canonical(),
            // Complementing a canonical automaton keeps it canonical.
            Code::Compl => da.complement(),
        };
        let id = self.intern(d);
        self.memo.insert((code, a, b), id);
        id
    }

    pub fn union(&mut self, a: LangId, b: LangId) -> LangId {
        if a == b || b == self.empty {
            return a;
        }
        if a == self.empty {
            return b;
        }
        let (a, b) = (a.min(b), a.max(b));
        self.apply(Code::Union, a, b)
    }

    pub fn concat(&mut self, a: LangId, b: LangId) -> LangId {
        if a == self.empty || b == self.empty {
            return self.empty;
        }
        if a == self.eps {
            return b;
        }
        if b == self.eps {
            return a;
        }
        self.apply(Code::Concat, a, b)
    }

    pub fn star(&mut self, a: LangId) -> LangId {
        if a == self.empty || a == self.eps {
            return self.eps;
        }
        self.apply(Code::Star, a, 0)
    }

    pub fn compl(&mut self, a: LangId) -> LangId {
        self.apply(Code::Compl, a, 0)
    }

    /// L(a) ⊆ L(b).
    pub fn includes(&mut self, a: LangId, b: LangId) -> bool {
        self.union(a, b) == b
    }

    /// Values of every instruction, given the value of each program variable.
    pub fn eval(&mut self, prog: &Program, leaves: &[LangId]) -> Vec<LangId> {
        let mut val: Vec<LangId> = Vec::with_capacity(prog.ops.len());
        for op in &prog.ops {
            let id = match *op {
                Op::Var(x) => leaves[x as usize],
                Op::CoVar(x) => self.compl(leaves[x as usize]),
                Op::One => self.eps,
                Op::Zero => self.empty,
                Op::CoOne => self.non_eps,
                Op::Plus(a, b) => self.union(val[a as usize], val[b as usize]),
                Op::Seq(a, b) => self.concat(val[a as usize], val[b as usize]),
                Op::Star(a) => self.star(val[a as usize]),
                Op::Compl(a) => self.compl(val[a as usize]),
            };
            val.push(id);
        }
        val
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_are_languages() {
        let mut s = LangStore::new(1);
        let top = s.union(s.eps, s.non_eps);
        let a_star = s.star(s.non_eps);
        assert_eq!(top, a_star);
        let nn = s.concat(s.non_eps, s.non_eps);
        assert!(s.includes(nn, s.non_eps));
        assert!(!s.includes(s.non_eps, nn));
        let c = s.compl(nn);
        assert_eq!(s.compl(c), nn);
    }

    #[test]
    fn empty_alphabet_store() {
        let mut s = LangStore::new(0);
        assert_eq!(s.non_eps, s.empty);
        assert_eq!(s.compl(s.empty), s.eps);
        assert_eq!(s.star(s.empty), s.eps);
    }
}
