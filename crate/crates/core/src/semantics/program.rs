//! Terms compiled to a hash-consed instruction list, shared by the span
//! evaluator and the language store.

use std::collections::HashMap;

use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Op {
    Var(u32),
    CoVar(u32),
    One,
    Zero,
    CoOne,
    Plus(u32, u32),
    Seq(u32, u32),
    Star(u32),
    Compl(u32),
}

/// Instructions in dependency order; operands always precede their users.
#[derive(Clone, Debug, Default)]
pub(crate) struct Program {
    pub ops: Vec<Op>,
    pub vars: Vec<String>,
    var_index: HashMap<String, u32>,
    index: HashMap<Op, u32>,
}

impl Program {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Program {
        let mut p = Program::default();
        for v in vars {
            p.var(v.as_ref());
        }
        p
    }

    pub fn var(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.var_index.get(name) {
            return i;
        }
        let i = self.vars.len() as u32;
        self.vars.push(name.to_string());
        self.var_index.insert(name.to_string(), i);
        i
    }

    fn push(&mut self, op: Op) -> u32 {
        if let Some(&i) = self.index.get(&op) {
            return i;
        }
        let i = self.ops.len() as u32;
        self.ops.push(op);
        self.index.insert(op, i);
        i
    }

    /// Adds `t`, returning the instruction computing it.
    pub fn add(&mut self, t: &Term) -> u32 {
        let op = match t {
            Term::Var(x) => Op::Var(self.var(x)),
            Term::CoVar(x) => Op::CoVar(self.var(x)),
            Term::One => Op::One,
            Term::Zero => Op::Zero,
            Term::CoOne => Op::CoOne,
            Term::Plus(a, b) => {
                let (a, b) = (self.add(a), self.add(b));
                Op::Plus(a, b)
            }
            Term::Seq(a, b) => {
                let (a, b) = (self.add(a), self.add(b));
                Op::Seq(a, b)
            }
            Term::Star(a) => Op::Star(self.add(a)),
            Term::Compl(a) => Op::Compl(self.add(a)),
        };
        self.push(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{parse_term, FragmentClass};

    #[test]
    fn shares_subterms() {
        let mut p = Program::new(&["y"]);
        let a = p.add(&parse_term("x ; x + x", FragmentClass::Ka).unwrap());
        let b = p.add(&parse_term("x ; x", FragmentClass::Ka).unwrap());
        assert_eq!(p.ops.len(), 3);
        assert_eq!(p.vars, vec!["y", "x"]);
        assert_eq!(a, 2);
        assert_eq!(b, 1);
    }
}
