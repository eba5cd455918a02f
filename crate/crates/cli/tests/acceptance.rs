//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Every criterion is exact: the pinned
//! tolerance is zero violations.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kacd_core::hierarchy::{
    binary_encode, binary_encode_word, random_value, separation_counterexample, separation_terms,
};
use kacd_core::semantics::{restrict_alphabet, std_lang_equiv, std_lang_includes, words_to_letters};
use kacd_core::word_theory::decide_word_theory;
use kacd_core::{
    cx_c1_atoms, evaluate, is_star_free, parse_ext_word, parse_term, sup_length, terms_up_to, Alphabet,
    Automaton, Decider, DecideConfig, EnumerationMode, ExtLetter, ExtWord, FragmentClass, OracleBudget,
    Relation, Status, Term, Valuation, Verdict, Word, WordTheoryLevel, WordVerdict,
};

const SEED: u64 = 20;
const VARS: [&str; 2] = ["x", "y"];

fn t(s: &str) -> Term {
    parse_term(s, FragmentClass::KaFull).unwrap()
}

/// Random term over `x`, `y` with at most `depth` nested operators.
fn random_term(rng: &mut ChaCha8Rng, depth: u32, complements: bool, full: bool, star: bool) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        let x = VARS[rng.gen_range(0..2)];
        return match rng.gen_range(0..if complements { 5 } else { 3 }) {
            0 => [Term::Zero, Term::One][rng.gen_range(0..2)].clone(),
            1 | 2 => Term::var(x),
            3 => Term::covar(x),
            _ => Term::CoOne,
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_term(rng, depth - 1, complements, full, star);
    match rng.gen_range(0..4) {
        0 => Term::plus(sub(rng), sub(rng)),
        1 => Term::seq(sub(rng), sub(rng)),
        2 if star => Term::star(sub(rng)),
        3 if full => sub(rng).negate(),
        _ => Term::seq(sub(rng), sub(rng)),
    }
}

fn random_valuation(rng: &mut ChaCha8Rng, alphabet: &Alphabet) -> Valuation {
    let mut v = Valuation::new(alphabet.clone());
    for x in VARS {
        v.assign(x, random_value(rng, alphabet)).unwrap();
    }
    v
}

fn random_word(rng: &mut ChaCha8Rng, k: usize, min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    (0..len).map(|_| rng.gen_range(0..k)).collect()
}

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: usize, name: &str, ok: bool, detail: String, start: Instant) {
        if !ok {
            self.failed += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} {id} {name}: {detail} ({:.1}s)", start.elapsed().as_secs_f64());
    }
}

/// Six inclusions and equations valid under the standard regular-expression
/// semantics that fail over language models.
fn standard_vs_language_models() -> (bool, String) {
    let rows = [
        ("y", Relation::Le, "!x"),
        ("x ; y", Relation::Le, "!x"),
        ("y", Relation::Le, "!1"),
        ("!x", Relation::Eq, "!x ; !x"),
        ("!0", Relation::Eq, "!x ; !y"),
        ("!0", Relation::Eq, "!x + !y"),
    ];
    let mut bad = Vec::new();
    for (l, rel, r) in rows {
        let (l, r) = (t(l), t(r));
        let out = Decider::new(DecideConfig::default()).auto(&l, rel, &r);
        let verified = out.refutation().is_some_and(|(c, x)| x.verify(&c.lhs, &c.rhs).unwrap());
        let standard = match rel {
            Relation::Le => std_lang_includes(&l, &r).holds(),
            Relation::Eq => std_lang_equiv(&l, &r).holds(),
        };
        if out.status() != Status::Refuted || !verified || !standard {
            bad.push(format!("{l} {rel:?} {r}"));
        }
    }
    (bad.is_empty(), format!("6 rows, failing {bad:?}"))
}

fn identity_inclusion() -> (bool, String) {
    let mut d = Decider::new(DecideConfig::default());
    let mut ok = d.identity_inclusion(&t("x + !x")).unwrap().holds();
    match d.identity_inclusion(&t("x ; !x")).unwrap() {
        Verdict::Refuted(r) => ok &= r.witness.is_empty() && r.verify(&Term::One, &t("x ; !x")).unwrap(),
        Verdict::Holds => ok = false,
    }
    // DNF formulas as lists of clauses; a literal is (variable, positive).
    let formulas: [&[&[(usize, bool)]]; 5] = [
        &[&[(0, true)], &[(0, false)]],
        &[&[(0, true), (1, false)], &[(1, true)], &[(0, false)]],
        &[&[(0, true), (1, true)], &[(0, false), (1, false)]],
        &[&[(0, true), (0, false)]],
        &[&[(0, true), (1, true)], &[(0, false)], &[(1, false), (2, true)], &[(2, false)]],
    ];
    let names = ["x", "y", "z"];
    let mut agree = 0;
    for f in formulas {
        let term = f
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&(v, pos)| if pos { Term::var(names[v]) } else { Term::covar(names[v]) })
                    .reduce(Term::seq)
                    .unwrap()
            })
            .reduce(Term::plus)
            .unwrap();
        let valid = (0..8u32).all(|bits| f.iter().any(|c| c.iter().all(|&(v, pos)| (bits >> v & 1 == 1) == pos)));
        if d.identity_inclusion(&term).unwrap().holds() == valid {
            agree += 1;
        }
    }
    (ok && agree == 5, format!("base cases {ok}, DNF agreement {agree}/5"))
}

fn words_to_letters_soundness(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut violations = 0;
    let alphabet = Alphabet::latin(2);
    for _ in 0..500 {
        let v = random_valuation(rng, &alphabet);
        let m = rng.gen_range(1..=3);
        let words: Vec<Word> = (0..m).map(|_| random_word(rng, 2, 1, 2)).collect();
        let term = random_term(rng, 4, true, false, true);
        let small = evaluate(&term, &words_to_letters(&v, &words, false).unwrap());
        let big = evaluate(&term, &v);
        for i in 0..=m {
            for j in i..=m {
                if small.accepts(&(i..j).collect::<Vec<_>>()) && !big.accepts(&words[i..j].concat()) {
                    violations += 1;
                }
            }
        }
    }
    (violations == 0, format!("500 instances, {violations} violations"))
}

fn restriction(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut violations = 0;
    let alphabet = Alphabet::latin(3);
    for _ in 0..200 {
        let v = random_valuation(rng, &alphabet);
        let term = random_term(rng, 4, true, true, true);
        let keep: Vec<&str> = alphabet.symbols().iter().map(String::as_str).filter(|_| rng.gen_bool(0.5)).collect();
        let sub = Alphabet::new(keep).unwrap();
        let restricted = evaluate(&term, &restrict_alphabet(&v, &sub).unwrap());
        let projected = evaluate(&term, &v).restrict_to(&sub).unwrap();
        if restricted.equivalent(&projected).unwrap().is_some() {
            violations += 1;
        }
    }
    (violations == 0, format!("200 instances, {violations} violations"))
}

/// The exhaustive star-free instance set: left sides of size at most 4,
/// right sides of size at most 5.
fn instance_set() -> (Vec<Term>, Vec<Term>) {
    let atoms = cx_c1_atoms(&VARS);
    let lhs: Vec<Term> = terms_up_to(&atoms, 4).into_iter().filter(is_star_free).collect();
    (lhs, terms_up_to(&atoms, 5))
}

fn verdicts(mode: EnumerationMode, lhs: &[Term], rhs: &[Term]) -> Vec<bool> {
    let mut d = Decider::new(DecideConfig { enumeration_mode: mode, ..Default::default() });
    lhs.iter().flat_map(|l| rhs.iter().map(|r| (l, r)).collect::<Vec<_>>())
        .map(|(l, r)| d.starfree_inclusion(l, r).unwrap().holds())
        .collect()
}

fn oracle_agreement(lhs: &[Term], rhs: &[Term], decided: &[bool]) -> (bool, String) {
    let budget = OracleBudget {
        max_alphabet: 0,
        max_value_len: 2,
        max_values_per_var: 2,
        time: None,
        include_cofinite: true,
    };
    let pairs: Vec<(&Term, &Term, usize)> = lhs
        .iter()
        .flat_map(|l| {
            let k = sup_length(l).unwrap().finite().unwrap();
            rhs.iter().map(move |r| (l, r, k))
        })
        .collect();
    let found = kacd_core::decide::oracle_refute_batch(&pairs, &budget);
    let mut disagree = 0;
    let mut bad_witness = 0;
    for (i, f) in found.iter().enumerate() {
        if decided[i] != f.is_none() {
            disagree += 1;
        }
        if let Some(r) = f {
            if !r.verify(pairs[i].0, pairs[i].1).unwrap() {
                bad_witness += 1;
            }
        }
    }
    let holds = decided.iter().filter(|&&h| h).count();
    (
        disagree == 0 && bad_witness == 0,
        format!("{} pairs ({holds} hold), {disagree} disagreements, {bad_witness} unverified", pairs.len()),
    )
}

fn words_over(letters: &[ExtLetter], max: usize) -> Vec<ExtWord> {
    let mut out = vec![ExtWord::default()];
    let mut layer = vec![ExtWord::default()];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |l| w.letters().iter().cloned().chain([l.clone()]).collect()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn word_theories() -> (bool, String) {
    let w = |s: &str| parse_ext_word(s).unwrap();
    let swap = matches!(
        decide_word_theory(&w("!1 x !x !1"), &w("!1 !x x !1"), WordTheoryLevel::L2),
        Ok(WordVerdict::Equal(kacd_core::word_theory::Justification::SwapRule { .. }))
    );
    let (xy, yx) = (w("x y"), w("y x"));
    let l1 = decide_word_theory(&xy, &yx, WordTheoryLevel::L1).unwrap().is_equal();
    let l2 = match decide_word_theory(&xy, &yx, WordTheoryLevel::L2).unwrap() {
        WordVerdict::NotEqual(r) => {
            r.witness == ["a", "b"] && r.valuation.alphabet().len() == 2 && r.verify(&xy.to_term(), &yx.to_term()).unwrap()
        }
        WordVerdict::Equal(_) => false,
    };
    let letters = [ExtLetter::Pos("x".into()), ExtLetter::Neg("x".into()), ExtLetter::Pos("y".into())];
    let words = words_over(&letters, 4);
    let mut identity_mismatch = 0;
    let mut unverified = 0;
    let mut not_equal = 0;
    for u in &words {
        for v in &words {
            for level in [WordTheoryLevel::L0, WordTheoryLevel::L1, WordTheoryLevel::L2] {
                match decide_word_theory(u, v, level) {
                    Ok(WordVerdict::Equal(_)) => {
                        if level == WordTheoryLevel::L2 && u != v {
                            identity_mismatch += 1;
                        }
                    }
                    Ok(WordVerdict::NotEqual(r)) => {
                        not_equal += 1;
                        if level == WordTheoryLevel::L2 && u == v {
                            identity_mismatch += 1;
                        }
                        if !r.verify(&u.to_term(), &v.to_term()).unwrap_or(false) {
                            unverified += 1;
                        }
                    }
                    Err(_) => unverified += 1,
                }
            }
        }
    }
    let ok = swap && l1 && l2 && identity_mismatch == 0 && unverified == 0;
    (
        ok,
        format!(
            "swap {swap}, xy=yx at L1 {l1}, refuted at L2 by ab {l2}; {} pairs, {identity_mismatch} mismatches, \
             {not_equal} refutations, {unverified} unverified",
            words.len() * words.len()
        ),
    )
}

fn hierarchy(rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut ok = true;
    for n in 1..=3 {
        // Panics if the witness does not separate.
        let (v, w) = separation_counterexample(n);
        ok &= v.alphabet().len() == n + 1 && w.len() == n + 1;
    }
    let (t1, t2) = separation_terms(2);
    let (v, _) = separation_counterexample(2);
    let a = v.alphabet();
    let pair = |i: usize, j: usize| Automaton::from_words(a, &[vec![i], vec![j]]).star();
    let expect2 = pair(0, 1).union(&pair(1, 2)).unwrap().union(&pair(2, 0)).unwrap();
    let eq1 = evaluate(&t1, &v).equivalent(&Automaton::universal(a)).unwrap().is_none();
    let eq2 = evaluate(&t2, &v).equivalent(&expect2).unwrap().is_none();

    let mut violations = 0;
    let alphabet = Alphabet::latin(3);
    for _ in 0..200 {
        let v = random_valuation(rng, &alphabet);
        let term = random_term(rng, 4, false, false, true);
        let w = random_word(rng, 3, 0, 4);
        if evaluate(&term, &v).accepts(&w) != evaluate(&term, &binary_encode(&v)).accepts(&binary_encode_word(&w)) {
            violations += 1;
        }
    }
    let two = Alphabet::latin(2);
    let v = Valuation::new(two.clone()).with("x", Automaton::epsilon(&two)).unwrap();
    let nn = t("!x ; !x");
    let negative = !evaluate(&nn, &v).accepts(&[1]) && evaluate(&nn, &binary_encode(&v)).accepts(&binary_encode_word(&[1]));
    (
        ok && eq1 && eq2 && violations == 0 && negative,
        format!(
            "separations {ok}, n=2 equalities {eq1}/{eq2}, encoding 200 samples {violations} violations, \
             complement counterexample {negative}"
        ),
    )
}

fn cli_suite(dir: &std::path::Path) -> Vec<u8> {
    let bin = env!("CARGO_BIN_EXE_kacd");
    let val = dir.join("valuation.json");
    std::fs::write(
        &val,
        r#"{"alphabet":["a","b"],"vars":{"x":{"kind":"words","items":["a","ab"]},"y":{"kind":"cowords","items":[""]}}}"#,
    )
    .unwrap();
    let val = val.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["check", "y", "le", "!x"],
        vec!["check", "1", "le", "x ; !x", "--verify"],
        vec!["check", "!0", "eq", "!x + !y", "--mode", "inclusion"],
        vec!["check", "x ; y", "le", "(x + y)*", "--parallel"],
        vec!["check", "x*", "le", "x"],
        vec!["lang-equiv", "!x", "!x ; !x"],
        vec!["word-theory", "--level", "2", "x y", "y x"],
        vec!["word-theory", "--level", "1", "x !1 y", "y !1 x"],
        vec!["eval", "--valuation", val, "--term", "x ; y"],
        vec!["eval", "--valuation", val, "--term", "x*", "--member", "aab"],
        vec!["w2l", "--valuation", val, "--words", "a,b"],
        vec!["hierarchy", "--n", "2"],
        vec!["oracle-refute", "x ; y", "y ; x", "--max-alphabet", "2", "--max-value-len", "2"],
    ];
    let mut out = Vec::new();
    for args in runs {
        let o = Command::new(bin).args(&args).env("KACD_SEED", "7").output().unwrap();
        out.extend(format!("{:?} -> {:?}\n", args, o.status.code()).into_bytes());
        out.extend(o.stdout);
    }
    out
}

fn determinism() -> (bool, String) {
    let dir = std::env::temp_dir().join(format!("kacd-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = cli_suite(&dir);
    let b = cli_suite(&dir);
    let _ = std::fs::remove_dir_all(&dir);
    (a == b && !a.is_empty(), format!("13 commands, {} bytes, identical {}", a.len(), a == b))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut report = Report { failed: 0 };
    let s = Instant::now();
    let (ok, d) = standard_vs_language_models();
    report.line(1, "standard semantics differs from language models", ok, d, s);
    let s = Instant::now();
    let (ok, d) = identity_inclusion();
    report.line(2, "identity inclusion", ok, d, s);
    let s = Instant::now();
    let (ok, d) = words_to_letters_soundness(&mut rng);
    report.line(3, "words-to-letters soundness", ok, d, s);
    let s = Instant::now();
    let (ok, d) = restriction(&mut rng);
    report.line(4, "alphabet restriction", ok, d, s);

    let s = Instant::now();
    let (lhs, rhs) = instance_set();
    let full = verdicts(EnumerationMode::FullWordWitness, &lhs, &rhs);
    let (ok, d) = oracle_agreement(&lhs, &rhs, &full);
    report.line(5, "oracle agreement", ok, d, s);
    let s = Instant::now();
    let (ok, d) = word_theories();
    report.line(6, "word theories", ok, d, s);
    let s = Instant::now();
    let (ok, d) = hierarchy(&mut rng);
    report.line(7, "alphabet hierarchy", ok, d, s);
    let s = Instant::now();
    let incl = verdicts(EnumerationMode::FullInclusion, &lhs, &rhs);
    let diff = full.iter().zip(&incl).filter(|(a, b)| a != b).count();
    report.line(8, "mode agreement", diff == 0, format!("{} pairs, {diff} disagreements", full.len()), s);

    let s = Instant::now();
    let (ok, d) = determinism();
    report.line(9, "CLI determinism", ok, d, s);

    println!("{} of 9 criteria failed", report.failed);
    if report.failed > 0 {
        std::process::exit(1);
    }
}
