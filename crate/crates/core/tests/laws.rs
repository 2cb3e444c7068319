use std::collections::HashSet;
use std::sync::OnceLock;

use lawforge::groups::closure;
use lawforge::lawkit::{max_order_law, psl2_law, small_field_law, solvable_law};
use lawforge::verify::{check_law, shortest_law_search, vanishing_set, Verdict};
use lawforge::{Caps, Elem, Group, GroupOps, Letter, LieTypeTag, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CORPUS: &[&str] = &["Sym(3)", "C(6)", "Alt(4)", "Sym(4)", "SL(2,3)", "C7:C3", "PSL(2,5)", "C(2)xC(2)xC(2)"];

fn corpus(idx: usize) -> &'static Group {
    static GROUPS: OnceLock<Vec<Group>> = OnceLock::new();
    &GROUPS.get_or_init(|| CORPUS.iter().map(|s| Group::parse(s, &Caps::default()).unwrap()).collect())[idx]
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 1..10)
        .prop_map(Word::reduce)
        .prop_filter("non-trivial", |w| !w.is_identity())
}

/// The exponent law x^exp(G).
fn law_for(idx: usize) -> Word {
    let g = corpus(idx);
    let exp = g.elements().unwrap().iter().fold(1u64, |l, e| num_integer::lcm(l, g.element_order(e)));
    Word::x().pow(exp)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn law_verdict_agrees_with_vanishing_set(idx in 0..CORPUS.len(), w in word()) {
        let g = corpus(idx);
        let n = g.order() as usize;
        let cert = check_law(&w, g).unwrap();
        let z = vanishing_set(&w, g).unwrap();
        prop_assert_eq!(cert.verdict == Verdict::Law, z.len() == n * n);
        if cert.verdict == Verdict::Law {
            prop_assert_eq!(cert.pairs_checked as usize, n * n);
        } else {
            prop_assert!(cert.recheck(g).unwrap());
            // the reported pair is the first non-vanishing one in row-major order
            let first = (0..n * n).find(|&i| !z.contains(&((i / n) as u32, (i % n) as u32))).unwrap();
            prop_assert_eq!(cert.pairs_checked as usize, first + 1);
        }
    }

    #[test]
    fn laws_pass_to_subgroups(idx in 0..CORPUS.len(), seed in any::<u64>()) {
        let g = corpus(idx);
        let law = law_for(idx);
        prop_assert_eq!(check_law(&law, g).unwrap().verdict, Verdict::Law);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Elem> = (0..2).map(|_| g.random_element(&mut rng).unwrap()).collect();
        let h = closure(g, &gens, 10_000).unwrap();
        for a in &h {
            for b in &h {
                prop_assert!(g.is_identity(&g.evaluate(&law, a, b)));
            }
        }
    }
}

#[test]
fn shortest_search_is_deterministic_and_minimal() {
    for (idx, _) in CORPUS.iter().enumerate().take(5) {
        let g = corpus(idx);
        let a = shortest_law_search(g, 6, 0).unwrap();
        let b = shortest_law_search(g, 6, 99).unwrap();
        assert_eq!((a.found.clone(), a.frontier), (b.found.clone(), b.frontier), "{}", CORPUS[idx]);
        if let Some(w) = &a.found {
            assert_eq!(check_law(w, g).unwrap().verdict, Verdict::Law);
            // nothing shorter is a law
            for v in lawforge::freeword::enumerate_reduced(w.len() as u32 - 1) {
                assert_ne!(check_law(&v, g).unwrap().verdict, Verdict::Law, "{v} on {}", CORPUS[idx]);
            }
        }
    }
}

#[test]
fn recipes_stay_within_claimed_bounds() {
    let caps = Caps::default();
    let mut recipes = Vec::new();
    for d in 1..=5 {
        recipes.push(solvable_law(d, &caps).unwrap());
    }
    for m in [1, 2, 3, 5, 8, 13] {
        recipes.push(max_order_law(m, &caps).unwrap());
    }
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
        recipes.push(psl2_law(q, &caps).unwrap());
    }
    for (tag, n) in [("A1", 4), ("A2", 3), ("2A2", 3), ("C2", 3)] {
        recipes.push(small_field_law(LieTypeTag::parse_any_rank(tag).unwrap(), n, &caps).unwrap());
    }
    for r in &recipes {
        assert!(!r.word.is_identity());
        assert_eq!(r.length, r.word.len());
        assert!(r.length as u128 <= r.claimed_bound, "{}: {} > {}", r.constructor, r.length, r.claimed_bound);
    }
}

#[test]
fn solvable_laws_hold_on_solvable_groups() {
    let caps = Caps::default();
    for (g, d) in [("Sym(3)", 2), ("Sym(4)", 3), ("SL(2,3)", 3), ("C7:C3", 2), ("C3wrC2", 2)] {
        let g = Group::parse(g, &caps).unwrap();
        let w = solvable_law(d, &caps).unwrap().word;
        assert_eq!(check_law(&w, &g).unwrap().verdict, Verdict::Law, "{}", g.descriptor());
    }
}

#[test]
fn max_order_law_holds_when_orders_are_bounded() {
    let caps = Caps::default();
    for (g, m) in [("Sym(4)", 4), ("Alt(5)", 5), ("PSL(2,7)", 7), ("SL(2,3)", 6)] {
        let g = Group::parse(g, &caps).unwrap();
        let w = max_order_law(m, &caps).unwrap().word;
        assert_eq!(check_law(&w, &g).unwrap().verdict, Verdict::Law, "{}", g.descriptor());
    }
}

#[test]
fn small_field_laws_hold_on_their_subfield_groups() {
    let caps = Caps::default();
    let a1 = LieTypeTag::parse_any_rank("A1").unwrap();
    let w = small_field_law(a1, 5, &caps).unwrap().word;
    for q in [2, 3, 4, 5] {
        let g = Group::parse(&format!("PSL(2,{q})"), &caps).unwrap();
        assert_eq!(check_law(&w, &g).unwrap().verdict, Verdict::Law, "PSL(2,{q})");
    }
}

#[test]
fn vanishing_sets_of_powers_match_order_counts() {
    for (idx, s) in CORPUS.iter().enumerate() {
        let g = corpus(idx);
        let n = g.order() as usize;
        for e in 1..=6u64 {
            let z: HashSet<(u32, u32)> = vanishing_set(&Word::x().pow(e), g).unwrap().into_iter().collect();
            let roots = g.elements().unwrap().iter().filter(|a| e % g.element_order(a) == 0).count();
            assert_eq!(z.len(), roots * n, "{s}, x^{e}");
        }
    }
}
