//! Epsilon-free nondeterministic automata and the constructions that do
//! not need determinism.

use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Nfa {
    pub m: usize,
    pub n: usize,
    /// `trans[s * m + a]`, sorted and deduplicated.
    pub trans: Vec<Vec<u32>>,
    pub initial: Vec<u32>,
    pub accept: Vec<bool>,
}

impl Nfa {
    pub fn new(m: usize, n: usize) -> Nfa {
        Nfa {
            m,
            n,
            trans: vec![Vec::new(); n * m],
            initial: Vec::new(),
            accept: vec![false; n],
        }
    }

    pub fn add_state(&mut self) -> u32 {
        self.n += 1;
        self.trans.extend(std::iter::repeat_with(Vec::new).take(self.m));
        self.accept.push(false);
        (self.n - 1) as u32
    }

    pub fn add(&mut self, from: u32, a: usize, to: u32) {
        let row = &mut self.trans[from as usize * self.m + a];
        if let Err(pos) = row.binary_search(&to) {
            row.insert(pos, to);
        }
    }

    pub fn targets(&self, s: u32, a: usize) -> &[u32] {
        &self.trans[s as usize * self.m + a]
    }

    pub fn accepts_empty(&self) -> bool {
        self.initial.iter().any(|&i| self.accept[i as usize])
    }

    pub fn accepts(&self, w: &[usize]) -> bool {
        let mut cur = vec![false; self.n];
        for &i in &self.initial {
            cur[i as usize] = true;
        }
        for &a in w {
            let mut nxt = vec![false; self.n];
            for s in 0..self.n {
                if cur[s] {
                    for &t in self.targets(s as u32, a) {
                        nxt[t as usize] = true;
                    }
                }
            }
            cur = nxt;
        }
        (0..self.n).any(|s| cur[s] && self.accept[s])
    }

    /// Copies `other` in with its states shifted; returns the offset.
    fn absorb(&mut self, other: &Nfa) -> u32 {
        let off = self.n as u32;
        self.trans.extend(
            other
                .trans
                .iter()
                .map(|row| row.iter().map(|t| t + off).collect::<Vec<_>>()),
        );
        self.accept.extend_from_slice(&other.accept);
        self.n += other.n;
        off
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        let mut out = self.clone();
        let off = out.absorb(other);
        out.initial.extend(other.initial.iter().map(|i| i + off));
        out
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        let m = self.m;
        let mut out = self.clone();
        let off = out.absorb(other);
        let second: Vec<u32> = other.initial.iter().map(|i| i + off).collect();
        if self.accepts_empty() {
            out.initial.extend(&second);
        }
        for s in 0..self.n as u32 {
            for a in 0..m {
                if self.targets(s, a).iter().any(|&t| self.accept[t as usize]) {
                    for &i in &second {
                        out.add(s, a, i);
                    }
                }
            }
        }
        let eps_second = other.accepts_empty();
        for s in 0..self.n {
            out.accept[s] = self.accept[s] && eps_second;
        }
        out
    }

    pub fn star(&self) -> Nfa {
        let m = self.m;
        let mut out = self.clone();
        // Loop back: entering an accepting state may also restart.
        for s in 0..self.n as u32 {
            for a in 0..m {
                if self.targets(s, a).iter().any(|&t| self.accept[t as usize]) {
                    for &i in &self.initial {
                        out.add(s, a, i);
                    }
                }
            }
        }
        let fresh = out.add_state();
        out.accept[fresh as usize] = true;
        for &i in &self.initial {
            for a in 0..m {
                let ts = out.targets(i, a).to_vec();
                for t in ts {
                    out.add(fresh, a, t);
                }
            }
        }
        out.initial = vec![fresh];
        out
    }

    pub fn intersect(&self, other: &Nfa) -> Nfa {
        let m = self.m;
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = Vec::new();
        let mut out = Nfa::new(m, 0);
        for &p in &self.initial {
            for &q in &other.initial {
                let id = out.add_state();
                ids.insert((p, q), id);
                pairs.push((p, q));
                out.initial.push(id);
            }
        }
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            out.accept[i] = self.accept[p as usize] && other.accept[q as usize];
            for a in 0..m {
                for &tp in self.targets(p, a) {
                    for &tq in other.targets(q, a) {
                        let id = match ids.get(&(tp, tq)) {
                            Some(&id) => id,
                            None => {
                                let id = out.add_state();
                                ids.insert((tp, tq), id);
                                pairs.push((tp, tq));
                                id
                            }
                        };
                        out.add(i as u32, a, id);
                    }
                }
            }
            i += 1;
        }
        out
    }

    /// States reachable from an initial state and co-reachable to an
    /// accepting one.
    pub fn useful_states(&self) -> Vec<bool> {
        let mut fwd = vec![false; self.n];
        let mut stack: Vec<u32> = self.initial.clone();
        for &i in &self.initial {
            fwd[i as usize] = true;
        }
        while let Some(s) = stack.pop() {
            for a in 0..self.m {
                for &t in self.targets(s, a) {
                    if !fwd[t as usize] {
                        fwd[t as usize] = true;
                        stack.push(t);
                    }
                }
            }
        }
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); self.n];
        for s in 0..self.n {
            for a in 0..self.m {
                for &t in self.targets(s as u32, a) {
                    preds[t as usize].push(s as u32);
                }
            }
        }
        let mut bwd = self.accept.clone();
        let mut stack: Vec<u32> = (0..self.n as u32).filter(|&s| bwd[s as usize]).collect();
        while let Some(s) = stack.pop() {
            for &p in &preds[s as usize] {
                if !bwd[p as usize] {
                    bwd[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
    }

    /// `None` if the trimmed automaton has a cycle (infinite language),
    /// otherwise the length of the longest accepted word (0 if empty).
    pub fn longest_word(&self) -> Option<usize> {
        let useful = self.useful_states();
        // Longest path by DFS with colors; a back edge means a cycle.
        let mut color = vec![0u8; self.n];
        let mut longest: Vec<Option<usize>> = vec![None; self.n];
        fn visit(
            nfa: &Nfa,
            useful: &[bool],
            s: u32,
            color: &mut [u8],
            longest: &mut [Option<usize>],
        ) -> bool {
            color[s as usize] = 1;
            let mut best = 0;
            for a in 0..nfa.m {
                for &t in nfa.targets(s, a) {
                    if !useful[t as usize] {
                        continue;
                    }
                    match color[t as usize] {
                        1 => return false,
                        0 => {
                            if !visit(nfa, useful, t, color, longest) {
                                return false;
                            }
                        }
                        _ => {}
                    }
                    best = best.max(1 + longest[t as usize].unwrap_or(0));
                }
            }
            color[s as usize] = 2;
            longest[s as usize] = Some(best);
            true
        }
        let mut result = 0;
        for &i in &self.initial {
            if !useful[i as usize] {
                continue;
            }
            if color[i as usize] == 0 && !visit(self, &useful, i, &mut color, &mut longest) {
                return None;
            }
            result = result.max(longest[i as usize].unwrap_or(0));
        }
        Some(result)
    }
}
