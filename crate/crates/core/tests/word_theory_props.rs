mod common;

use kacd_core::hierarchy::sample_valuations;
use kacd_core::word_theory::segment_swap;
use kacd_core::{decide_e0, decide_e1, decide_e2, evaluate, ExtLetter, ExtWord, WordVerdict};
use proptest::prelude::*;

fn vars() -> Vec<String> {
    common::VARS.iter().map(|s| s.to_string()).collect()
}

fn equal_on_samples(u: &ExtWord, w: &ExtWord, letters: usize, count: usize, seed: u64) -> bool {
    let (a, b) = (u.to_term(), w.to_term());
    sample_valuations(&vars(), letters, count, seed)
        .iter()
        .all(|v| common::same_language(&evaluate(&a, v), &evaluate(&b, v)))
}

fn checked(u: &ExtWord, w: &ExtWord, v: WordVerdict) -> bool {
    match v {
        WordVerdict::Equal(_) => true,
        WordVerdict::NotEqual(r) => {
            assert!(r.verify(&u.to_term(), &w.to_term()).unwrap(), "unverified refutation of {u} = {w}");
            false
        }
    }
}

/// `z^c0 !z^d0 … z^ck !z^dk` from run lengths.
fn alternating(z: &ExtLetter, runs: &[(usize, usize)]) -> ExtWord {
    let dual = z.dual().unwrap();
    let mut out = Vec::new();
    for &(c, d) in runs {
        out.extend(std::iter::repeat_n(z.clone(), c));
        out.extend(std::iter::repeat_n(dual.clone(), d));
    }
    ExtWord::new(out)
}

fn framed(seg: ExtWord) -> ExtWord {
    let mut v = vec![ExtLetter::NotOne];
    v.extend(seg.0);
    v.push(ExtLetter::NotOne);
    ExtWord::new(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn swap_is_an_involution(z in common::ext_letter(), runs in proptest::collection::vec((1usize..=3, 1usize..=3), 1..=3)) {
        prop_assume!(z != ExtLetter::NotOne);
        let s = alternating(&z, &runs);
        let once = segment_swap(&s).expect("alternating segment");
        prop_assert_eq!(segment_swap(&once), Some(s));
    }

    #[test]
    fn equal_words_agree_on_two_letters(u in common::ext_word(4), seed in any::<u64>()) {
        // Build an equal partner by swapping the first swappable segment.
        let d = kacd_core::word_theory::decompose_blocks(&u);
        let mut d2 = d.clone();
        if let Some(i) = d.segments.iter().position(|s| segment_swap(s).is_some()) {
            d2.segments[i] = segment_swap(&d.segments[i]).unwrap();
        }
        let w = d2.reassemble();
        prop_assert!(checked(&u, &w, decide_e2(&u, &w).unwrap()));
        prop_assert!(equal_on_samples(&u, &w, 2, 20, seed));
    }

    #[test]
    fn verdicts_are_consistent(u in common::ext_word(4), w in common::ext_word(4)) {
        let e2 = checked(&u, &w, decide_e2(&u, &w).unwrap());
        let e1 = checked(&u, &w, decide_e1(&u, &w).unwrap());
        let e0 = checked(&u, &w, decide_e0(&u, &w).unwrap());
        prop_assert!(!e2 || e1);
        prop_assert!(!e1 || e0);
        if e1 {
            prop_assert!(equal_on_samples(&u, &w, 1, 20, 11));
        }
    }
}

/// Every word of length at most `n` over `letters`.
fn all_words(letters: &[ExtLetter], n: usize) -> Vec<ExtWord> {
    let mut out = vec![ExtWord::default()];
    let mut layer = vec![ExtWord::default()];
    for _ in 0..n {
        let next: Vec<ExtWord> = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |l| {
                    let mut v = w.0.clone();
                    v.push(l.clone());
                    ExtWord::new(v)
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn theories_nest_on_short_words() {
    let x = ExtLetter::Pos("x".into());
    let letters = [x.clone(), x.dual().unwrap(), ExtLetter::NotOne];
    let words = all_words(&letters, 4);
    for u in &words {
        for w in &words {
            let e2 = decide_e2(u, w).unwrap().is_equal();
            let e1 = decide_e1(u, w).unwrap().is_equal();
            let e0 = decide_e0(u, w).unwrap().is_equal();
            assert!(!e2 || e1, "{u} = {w}");
            assert!(!e1 || e0, "{u} = {w}");
        }
    }
}

#[test]
fn equal_pairs_agree_on_200_valuations() {
    let x = ExtLetter::Pos("x".into());
    let letters = [x.clone(), x.dual().unwrap(), ExtLetter::NotOne];
    let words = all_words(&letters, 4);
    let (mut l1, mut l2) = (0, 0);
    for u in &words {
        for w in &words {
            if u >= w {
                continue;
            }
            if decide_e2(u, w).unwrap().is_equal() {
                assert!(equal_on_samples(u, w, 2, 200, 5), "{u} = {w}");
                l2 += 1;
            }
            if decide_e1(u, w).unwrap().is_equal() && l1 < 40 {
                assert!(equal_on_samples(u, w, 1, 200, 6), "{u} = {w}");
                l1 += 1;
            }
        }
    }
    assert!(l2 > 0 && l1 > 0);
}

#[test]
fn axiom_instances_are_sound() {
    let z = ExtLetter::Pos("x".into());
    let mut runs_list: Vec<Vec<(usize, usize)>> = Vec::new();
    for c0 in 1..=2 {
        for d0 in 1..=2 {
            runs_list.push(vec![(c0, d0)]);
            for c1 in 1..=2 {
                for d1 in 1..=2 {
                    runs_list.push(vec![(c0, d0), (c1, d1)]);
                }
            }
        }
    }
    for letter in [z.clone(), z.dual().unwrap()] {
        for runs in &runs_list {
            let seg = alternating(&letter, runs);
            let (u, w) = (framed(seg.clone()), framed(segment_swap(&seg).unwrap()));
            assert!(decide_e2(&u, &w).unwrap().is_equal());
            assert!(equal_on_samples(&u, &w, 2, 30, runs.len() as u64), "{u} = {w}");
        }
    }
}
