mod common;

use kacd_core::hierarchy::{
    binary_encode, binary_encode_word, check_membership_side, sample_valuations, separation_counterexample,
    separation_terms, separation_var,
};
use kacd_core::semantics::eps_membership;
use kacd_core::{decide_e1, evaluate, oracle_refute, parse_ext_word, OracleBudget, Term};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn encoding_preserves_plain_terms(
        t in common::term(false, false, true),
        v in common::valuation(3),
        w in common::word(3, 4),
    ) {
        let e = binary_encode(&v);
        prop_assert_eq!(evaluate(&t, &v).accepts(&w), evaluate(&t, &e).accepts(&binary_encode_word(&w)));
    }
}

#[test]
fn separations_hold_for_small_n() {
    for n in 1..=3 {
        let (t1, t2) = separation_terms(n);
        let (v, w) = separation_counterexample(n);
        assert_eq!(v.alphabet().len(), n + 1);
        assert!(evaluate(&t1, &v).membership(&w).unwrap());
        assert!(!evaluate(&t2, &v).membership(&w).unwrap());
    }
}

#[test]
fn inclusion_survives_on_n_letters() {
    for n in 1..=2 {
        let vars: Vec<String> = (0..=n).map(separation_var).collect();
        for letters in 1..=n {
            let report = check_membership_side(n, &sample_valuations(&vars, letters, 40, n as u64));
            assert!(report.violations.is_empty(), "n = {n}");
        }
    }
}

#[test]
fn one_and_two_letter_replays() {
    let x = Term::var("x");
    for b in [false, true] {
        let p = [("x".to_string(), b)].into_iter().collect();
        assert!(!eps_membership(&x, &p).unwrap() || eps_membership(&Term::One, &p).unwrap());
    }
    let r = oracle_refute(&x, &Term::One, &OracleBudget::default()).unwrap();
    assert_eq!(r.valuation.alphabet().len(), 1);

    let (u, w) = (parse_ext_word("x y").unwrap(), parse_ext_word("y x").unwrap());
    assert!(decide_e1(&u, &w).unwrap().is_equal());
    let r = oracle_refute(&u.to_term(), &w.to_term(), &OracleBudget::default()).unwrap();
    assert_eq!(r.valuation.alphabet().len(), 2);
}
