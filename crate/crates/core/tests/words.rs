use std::collections::HashSet;

use lawforge::freeword::{count_reduced_up_to, enumerate_reduced};
use lawforge::{Letter, Word};
use proptest::prelude::*;

fn letters() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 0..40)
}

fn word() -> impl Strategy<Value = Word> {
    letters().prop_map(Word::reduce)
}

fn is_freely_reduced(ls: &[Letter]) -> bool {
    ls.windows(2).all(|p| p[1] != p[0].inverse())
}

/// Reference reduction with an explicit stack of single letters.
fn stack_reduce(ls: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for &l in ls {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

proptest! {
    #[test]
    fn reduce_matches_stack_reference(ls in letters()) {
        let w = Word::reduce(ls.clone());
        let got: Vec<Letter> = w.letters().collect();
        prop_assert_eq!(&got, &stack_reduce(&ls));
        prop_assert!(is_freely_reduced(&got));
        prop_assert_eq!(w.len() as usize, got.len());
        prop_assert_eq!(w.is_identity(), got.is_empty());
    }

    #[test]
    fn reduce_is_idempotent(ls in letters()) {
        let once = Word::reduce(ls);
        prop_assert_eq!(Word::reduce(once.letters()), once);
    }

    #[test]
    fn concat_is_associative(u in word(), v in word(), w in word()) {
        prop_assert_eq!(u.concat(&v).concat(&w), u.concat(&v.concat(&w)));
    }

    #[test]
    fn inverse_cancels(w in word()) {
        prop_assert!(w.concat(&w.inverse()).is_identity());
        prop_assert!(w.inverse().concat(&w).is_identity());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn substitute_is_a_homomorphism(a in word(), b in word(), u in word(), v in word()) {
        prop_assert_eq!(
            a.concat(&b).substitute(&u, &v),
            a.substitute(&u, &v).concat(&b.substitute(&u, &v))
        );
    }

    #[test]
    fn cyclic_reduce_round_trips(w in word()) {
        let (core, conj) = w.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(conj.concat(&core).concat(&conj.inverse()), w);
    }

    #[test]
    fn cyclic_permutations_compose(w in word().prop_map(|w| w.cyclic_reduce().0), j in 0i64..30, k in 0i64..30) {
        let n = w.len() as i64;
        let pj = w.cyclic_permutation(j).unwrap();
        prop_assert_eq!(pj.len(), w.len());
        prop_assert_eq!(pj.cyclic_permutation(k).unwrap(), w.cyclic_permutation(j + k).unwrap());
        prop_assert_eq!(w.cyclic_permutation(n).unwrap(), w.clone());
    }

    #[test]
    fn power_matches_repeated_concat(w in word(), e in 0u64..6) {
        let mut acc = Word::identity();
        for _ in 0..e {
            acc = acc.concat(&w);
        }
        prop_assert_eq!(w.pow(e), acc);
    }

    #[test]
    fn text_and_json_round_trip(w in word()) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w.clone());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), w);
    }
}

#[test]
fn enumeration_is_complete_and_duplicate_free() {
    for l in 1..=6u32 {
        let words: Vec<Word> = enumerate_reduced(l).collect();
        assert_eq!(words.len() as u128, 4 * (3u128.pow(l) - 1) / 2);
        assert_eq!(words.len() as u128, count_reduced_up_to(l));
        let distinct: HashSet<&Word> = words.iter().collect();
        assert_eq!(distinct.len(), words.len());
        assert!(words.iter().all(|w| !w.is_empty() && w.len() <= l as u64));
        assert!(words.windows(2).all(|p| p[0].len() <= p[1].len()));
    }
}

#[test]
fn long_powers_stay_compact() {
    let w = Word::x().pow(1 << 40);
    assert_eq!(w.len(), 1 << 40);
    assert_eq!(w.blocks().len(), 1);
    let u: Word = "x y".parse().unwrap();
    assert_eq!(u.pow(1000).blocks().len(), 2000);
}
