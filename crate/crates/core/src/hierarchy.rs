//! Separation of `LANG_n` from `LANG_{n+1}` with full complement, and the
//! binary encoding that collapses the hierarchy for plain KA terms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{Alphabet, Automaton, Word};
use crate::semantics::{evaluate, Valuation};
use crate::term::Term;

pub fn separation_var(i: usize) -> String {
    format!("x{i}")
}

fn sum(terms: impl IntoIterator<Item = Term>) -> Term {
    terms.into_iter().fold(Term::Zero, Term::plus)
}

/// `(⊤ ((Σ_{i∈I} x_i)*)⁻ ⊤)⁻`: the words whose letters all lie in `Σ x_i`.
fn closed(indices: impl IntoIterator<Item = usize>) -> Term {
    let top = Term::compl(Term::Zero);
    let inner = Term::compl(Term::star(sum(indices.into_iter().map(|i| Term::var(&separation_var(i))))));
    Term::compl(Term::seq(Term::seq(top.clone(), inner), top))
}

/// Terms with `t1 ≤ t2` valid on alphabets of at most `n` letters but
/// refuted on `n + 1` letters, over the variables `x0 … xn`.
pub fn separation_terms(n: usize) -> (Term, Term) {
    assert!(n >= 1, "separation needs n >= 1");
    let t1 = closed(0..=n);
    let t2 = sum((0..=n).map(|j| closed((0..=n).filter(move |&i| i != j))));
    (t1, t2)
}

/// `v(x_i) = {ℓ_i}` over `n + 1` letters, and the word `ℓ0 … ℓn`.
pub fn separation_counterexample(n: usize) -> (Valuation, Vec<String>) {
    let alphabet = Alphabet::latin(n + 1);
    let mut v = Valuation::new(alphabet.clone());
    for i in 0..=n {
        v.assign(&separation_var(i), Automaton::from_words(&alphabet, &[vec![i]])).expect("shared alphabet");
    }
    let witness = alphabet.spell(&(0..=n).collect::<Vec<_>>());
    let (t1, t2) = separation_terms(n);
    assert!(
        evaluate(&t1, &v).membership(&witness).expect("own alphabet")
            && !evaluate(&t2, &v).membership(&witness).expect("own alphabet"),
        "separation witness fails"
    );
    (v, witness)
}

#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub checked: usize,
    /// Valuations where `t1 ≤ t2` fails, with a word of the difference.
    pub violations: Vec<(Valuation, Vec<String>)>,
}

/// Checks `t1 ≤ t2` from [`separation_terms`] on each valuation. Bounded
/// evidence for the small-alphabet side of the separation.
pub fn check_membership_side(n: usize, samples: &[Valuation]) -> MembershipReport {
    let (t1, t2) = separation_terms(n);
    let mut violations = Vec::new();
    for v in samples {
        let (a, b) = (evaluate(&t1, v), evaluate(&t2, v));
        if let Some(w) = a.includes(&b).expect("shared alphabet") {
            violations.push((v.clone(), v.alphabet().spell(&w)));
        }
    }
    MembershipReport { checked: samples.len(), violations }
}

/// A random language: at most 3 words of length at most 3 over `alphabet`,
/// complemented with probability 1/2.
pub fn random_value(rng: &mut impl Rng, alphabet: &Alphabet) -> Automaton {
    let k = alphabet.len();
    let count = rng.gen_range(0..=3);
    let words: Vec<Word> = (0..count)
        .map(|_| {
            let len = if k == 0 { 0 } else { rng.gen_range(0..=3) };
            (0..len).map(|_| rng.gen_range(0..k)).collect()
        })
        .collect();
    let value = Automaton::from_words(alphabet, &words);
    if rng.gen_bool(0.5) {
        value.complement()
    } else {
        value
    }
}

/// `count` valuations of `vars` over the first `letters` latin letters,
/// reproducible from `seed`.
pub fn sample_valuations(vars: &[String], letters: usize, count: usize, seed: u64) -> Vec<Valuation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = Alphabet::latin(letters);
    (0..count)
        .map(|_| {
            let mut v = Valuation::new(alphabet.clone());
            for x in vars {
                v.assign(x, random_value(&mut rng, &alphabet)).expect("shared alphabet");
            }
            v
        })
        .collect()
}

/// `ℓ_i ↦ a bⁱ`.
pub fn binary_image(i: usize) -> Word {
    std::iter::once(0).chain(std::iter::repeat(1).take(i)).collect()
}

pub fn binary_encode_word(w: &[usize]) -> Word {
    w.iter().flat_map(|&i| binary_image(i)).collect()
}

/// Applies `ℓ_i ↦ a bⁱ` to every value. For KA terms `w ∈ v̂(t)` iff the
/// encoding of `w` is in the encoded valuation's value of `t`; complements
/// are not preserved.
pub fn binary_encode(v: &Valuation) -> Valuation {
    let target = Alphabet::latin(2);
    let images: Vec<Word> = (0..v.alphabet().len()).map(binary_image).collect();
    let mut out = Valuation::new(target.clone());
    for (x, a) in v.assignment() {
        out.assign(x, a.homomorphic_image(&target, &images)).expect("shared alphabet");
    }
    out
}
