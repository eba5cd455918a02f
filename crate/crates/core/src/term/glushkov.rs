//! Position automaton of a term read as a regular expression over the
//! extended alphabet.

use std::collections::BTreeSet;

use super::{ExtLetter, FragmentClass, SupLength, Term};
use crate::automata::nfa::Nfa;
use crate::automata::{Alphabet, Automaton};
use crate::error::{Error, Result};

struct Builder {
    letters: Vec<ExtLetter>,
    follow: Vec<(usize, usize)>,
}

struct Info {
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
}

impl Builder {
    fn visit(&mut self, t: &Term) -> Result<Info> {
        let leaf = |b: &mut Builder, l: ExtLetter| {
            b.letters.push(l);
            let p = b.letters.len() - 1;
            Info { nullable: false, first: vec![p], last: vec![p] }
        };
        Ok(match t {
            Term::Var(x) => leaf(self, ExtLetter::Pos(x.clone())),
            Term::CoVar(x) => leaf(self, ExtLetter::Neg(x.clone())),
            Term::CoOne => leaf(self, ExtLetter::NotOne),
            Term::One => Info { nullable: true, first: vec![], last: vec![] },
            Term::Zero => Info { nullable: false, first: vec![], last: vec![] },
            Term::Plus(a, b) => {
                let (a, b) = (self.visit(a)?, self.visit(b)?);
                Info {
                    nullable: a.nullable || b.nullable,
                    first: [a.first, b.first].concat(),
                    last: [a.last, b.last].concat(),
                }
            }
            Term::Seq(a, b) => {
                let (a, b) = (self.visit(a)?, self.visit(b)?);
                for &p in &a.last {
                    for &q in &b.first {
                        self.follow.push((p, q));
                    }
                }
                let first = if a.nullable { [a.first, b.first.clone()].concat() } else { a.first };
                let last = if b.nullable { [a.last, b.last.clone()].concat() } else { b.last };
                Info { nullable: a.nullable && b.nullable, first, last }
            }
            Term::Star(a) => {
                let a = self.visit(a)?;
                for &p in &a.last {
                    for &q in &a.first {
                        self.follow.push((p, q));
                    }
                }
                Info { nullable: true, ..a }
            }
            Term::Compl(_) => {
                return Err(Error::Fragment {
                    found: FragmentClass::KaFull,
                    allowed: FragmentClass::KaCxC1,
                })
            }
        })
    }
}

/// Automaton for the extended-alphabet language of `t`. Its alphabet holds
/// the letters occurring in `t` in sorted order, written `x`, `!x`, `!1`.
pub fn ext_language(t: &Term) -> Result<Automaton> {
    let mut b = Builder { letters: vec![], follow: vec![] };
    let info = b.visit(t)?;
    let sorted: Vec<ExtLetter> = b.letters.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let alphabet = Alphabet::new(sorted.iter().map(|l| l.to_string()))?;
    let index = |l: &ExtLetter| sorted.binary_search(l).expect("letter collected");
    let mut nfa = Nfa::new(sorted.len(), b.letters.len() + 1);
    nfa.initial = vec![0];
    nfa.accept[0] = info.nullable;
    for &q in &info.first {
        nfa.add(0, index(&b.letters[q]), q as u32 + 1);
    }
    for &(p, q) in &b.follow {
        nfa.add(p as u32 + 1, index(&b.letters[q]), q as u32 + 1);
    }
    for &p in &info.last {
        nfa.accept[p + 1] = true;
    }
    Ok(Automaton::from_nfa(alphabet, nfa))
}

pub fn sup_length(t: &Term) -> Result<SupLength> {
    let a = ext_language(t)?;
    Ok(match a.nfa().longest_word() {
        Some(n) => SupLength::Finite(n),
        None => SupLength::Omega,
    })
}
