//! Complete deterministic automata with start state 0, used for every
//! operation that needs determinism.

use std::collections::VecDeque;

use rustc_hash::FxHashMap as HashMap;

use super::nfa::Nfa;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Dfa {
    pub m: usize,
    /// `next[s * m + a]`
    pub next: Vec<u32>,
    pub accept: Vec<bool>,
}

impl Dfa {
    pub fn states(&self) -> usize {
        self.accept.len()
    }

    #[inline]
    pub fn step(&self, s: u32, a: usize) -> u32 {
        self.next[s as usize * self.m + a]
    }

    /// One state, accepting or not.
    pub fn trivial(m: usize, accept: bool) -> Dfa {
        Dfa { m, next: vec![0; m], accept: vec![accept] }
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            m: self.m,
            next: self.next.clone(),
            accept: self.accept.iter().map(|a| !a).collect(),
        }
    }

    /// Reachable part of the synchronous product, accepting by `f`.
    pub fn product(&self, other: &Dfa, f: impl Fn(bool, bool) -> bool) -> Dfa {
        debug_assert_eq!(self.m, other.m);
        let m = self.m;
        let nb = other.states();
        let mut ids: HashMap<usize, u32> = HashMap::default();
        let mut pairs: Vec<(u32, u32)> = vec![(0, 0)];
        ids.insert(0, 0);
        let mut next = Vec::new();
        let mut accept = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            accept.push(f(self.accept[p as usize], other.accept[q as usize]));
            for a in 0..m {
                let t = (self.step(p, a), other.step(q, a));
                let key = t.0 as usize * nb + t.1 as usize;
                let id = *ids.entry(key).or_insert_with(|| {
                    pairs.push(t);
                    (pairs.len() - 1) as u32
                });
                next.push(id);
            }
            i += 1;
        }
        Dfa { m, next, accept }
    }

    /// Minimal automaton with states numbered in breadth-first order from
    /// the start state, letters in alphabet order. Two automata accept the
    /// same language iff their canonical forms are equal.
    pub fn canonical(&self) -> Dfa {
        let m = self.m;
        let n = self.states();
        // Moore refinement over all states; unreachable ones are dropped by
        // the final renumbering.
        let mut class: Vec<u32> = self.accept.iter().map(|&a| a as u32).collect();
        let mut classes = if self.accept.iter().all(|&a| a) || self.accept.iter().all(|&a| !a) {
            class.iter_mut().for_each(|c| *c = 0);
            1
        } else {
            2
        };
        let mut sig: Vec<u32> = Vec::with_capacity(m + 1);
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity_and_hasher(n, Default::default());
            let mut refined = Vec::with_capacity(n);
            for s in 0..n {
                sig.clear();
                sig.push(class[s]);
                sig.extend((0..m).map(|a| class[self.next[s * m + a] as usize]));
                let fresh = ids.len() as u32;
                refined.push(*ids.entry(sig.clone()).or_insert(fresh));
            }
            let count = ids.len();
            class = refined;
            if count == classes {
                break;
            }
            classes = count;
        }
        // Breadth-first renumbering of the quotient.
        let mut order: Vec<u32> = vec![u32::MAX; classes];
        let mut rep: Vec<usize> = vec![usize::MAX; classes];
        for s in 0..n {
            if rep[class[s] as usize] == usize::MAX {
                rep[class[s] as usize] = s;
            }
        }
        let mut queue = VecDeque::new();
        let mut seq: Vec<u32> = Vec::new();
        order[class[0] as usize] = 0;
        seq.push(class[0]);
        queue.push_back(class[0]);
        while let Some(c) = queue.pop_front() {
            let s = rep[c as usize];
            for a in 0..m {
                let d = class[self.next[s * m + a] as usize];
                if order[d as usize] == u32::MAX {
                    order[d as usize] = seq.len() as u32;
                    seq.push(d);
                    queue.push_back(d);
                }
            }
        }
        let mut next = Vec::with_capacity(seq.len() * m);
        let mut accept = Vec::with_capacity(seq.len());
        for &c in &seq {
            let s = rep[c as usize];
            accept.push(self.accept[s]);
            for a in 0..m {
                next.push(order[class[self.next[s * m + a] as usize] as usize]);
            }
        }
        Dfa { m, next, accept }
    }

    /// Length-lexicographically least accepted word.
    pub fn shortest_accepted(&self) -> Option<Vec<usize>> {
        let n = self.states();
        let mut parent: Vec<Option<(u32, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        while let Some(s) = queue.pop_front() {
            if self.accept[s as usize] {
                let mut word = Vec::new();
                let mut cur = s;
                while let Some((p, a)) = parent[cur as usize] {
                    word.push(a);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for a in 0..self.m {
                let t = self.step(s, a);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((s, a));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    #[cfg(test)]
    pub fn accepts(&self, w: &[usize]) -> bool {
        let mut s = 0;
        for &a in w {
            s = self.step(s, a);
        }
        self.accept[s as usize]
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.m, self.states());
        for s in 0..self.states() {
            for a in 0..self.m {
                nfa.add(s as u32, a, self.step(s as u32, a));
            }
        }
        nfa.initial = vec![0];
        nfa.accept = self.accept.clone();
        nfa
    }

    /// Subset construction; the empty subset becomes the sink.
    pub fn determinize(nfa: &Nfa) -> Dfa {
        let m = nfa.m;
        let words = nfa.n.div_ceil(64).max(1);
        let mut start = vec![0u64; words];
        for &i in &nfa.initial {
            start[i as usize / 64] |= 1 << (i % 64);
        }
        let mut ids: HashMap<Vec<u64>, u32> = HashMap::default();
        let mut sets: Vec<Vec<u64>> = vec![start.clone()];
        ids.insert(start, 0);
        let mut next = Vec::new();
        let mut accept = Vec::new();
        let mut i = 0;
        let mut target = vec![0u64; words];
        while i < sets.len() {
            let set = sets[i].clone();
            accept.push(bits(&set).any(|s| nfa.accept[s]));
            for a in 0..m {
                target.iter_mut().for_each(|w| *w = 0);
                for s in bits(&set) {
                    for &t in &nfa.trans[s * m + a] {
                        target[t as usize / 64] |= 1 << (t % 64);
                    }
                }
                let id = match ids.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len() as u32;
                        ids.insert(target.clone(), id);
                        sets.push(target.clone());
                        id
                    }
                };
                next.push(id);
            }
            i += 1;
        }
        Dfa { m, next, accept }
    }
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(w * 64 + b)
        })
    })
}
