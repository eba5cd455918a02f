//! Automaton to regular expression by state elimination. Letters become
//! variables named after their symbols.

use super::Automaton;
use crate::term::Term;

fn plus(a: Option<Term>, b: Option<Term>) -> Option<Term> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) if a == b => Some(a),
        (Some(a), Some(b)) => Some(Term::plus(a, b)),
    }
}

fn seq(a: &Option<Term>, b: &Option<Term>) -> Option<Term> {
    match (a, b) {
        (Some(Term::One), Some(x)) | (Some(x), Some(Term::One)) => Some(x.clone()),
        (Some(a), Some(b)) => Some(Term::seq(a.clone(), b.clone())),
        _ => None,
    }
}

fn star(a: &Option<Term>) -> Term {
    match a {
        None | Some(Term::One) => Term::One,
        Some(Term::Star(x)) => Term::Star(x.clone()),
        Some(x) => Term::star(x.clone()),
    }
}

/// A complement-free term whose standard reading over the alphabet
/// symbols is the automaton's language. `0` for the empty language.
pub fn to_regex(a: &Automaton) -> Term {
    let d = a.minimize().to_dfa();
    let useful = d.to_nfa().useful_states();
    let n = d.states();
    // Nodes 0..n are states, n is the fresh start, n+1 the fresh end.
    let (start, end) = (n, n + 1);
    let mut edge: Vec<Vec<Option<Term>>> = vec![vec![None; n + 2]; n + 2];
    edge[start][0] = Some(Term::One);
    for s in 0..n {
        if !useful[s] {
            continue;
        }
        if d.accept[s] {
            edge[s][end] = Some(Term::One);
        }
        for c in 0..d.m {
            let t = d.step(s as u32, c) as usize;
            if useful[t] {
                let letter = Some(Term::Var(a.alphabet().symbol(c).to_string()));
                edge[s][t] = plus(edge[s][t].take(), letter);
            }
        }
    }
    for k in 0..n {
        let loop_k = star(&edge[k][k]);
        let looped = Some(loop_k);
        for i in 0..n + 2 {
            if i == k || edge[i][k].is_none() {
                continue;
            }
            for j in 0..n + 2 {
                if j == k || edge[k][j].is_none() {
                    continue;
                }
                let path = seq(&seq(&edge[i][k], &looped), &edge[k][j]);
                edge[i][j] = plus(edge[i][j].take(), path);
            }
        }
        for i in 0..n + 2 {
            edge[i][k] = None;
            edge[k][i] = None;
        }
    }
    edge[start][end].take().unwrap_or(Term::Zero)
}
