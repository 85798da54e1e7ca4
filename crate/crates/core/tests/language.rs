mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::{random_machine, random_word, var, vars};
use subinterval::formula::{Formula, VarName};
use subinterval::lang::{alphabet, build_nfa, decode_word, encode_run, in_la_direct, witness_n, Nfa};
use subinterval::model::Interval;
use subinterval::reduction::{nfa_state_var, phi_orient, psi_automaton};
use subinterval::sat::{encode, Pinning};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn direct_membership_matches_automaton(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = random_machine(&mut rng);
        let nfa = build_nfa(&m);
        for _ in 0..50 {
            let w = random_word(&mut rng, &m, 8);
            prop_assert_eq!(in_la_direct(&w, &m).is_ok(), nfa.accepts(&w));
        }
    }

    #[test]
    fn halting_runs_round_trip(seed in any::<u64>(), extra in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = random_machine(&mut rng);
        let run = m.run(30);
        if run.is_halted() {
            let w = encode_run(&run, witness_n(&run) + extra).unwrap();
            prop_assert!(in_la_direct(&w, &m).is_ok());
            prop_assert!(build_nfa(&m).accepts(&w));
            prop_assert_eq!(decode_word(&w, &m).unwrap(), run);
            // a mutated witness is judged the same way by both
            let mut bad = w.clone();
            let pos = rng.gen_range(0..bad.len());
            bad[pos] = alphabet(&m).choose(&mut rng).unwrap().clone();
            prop_assert_eq!(in_la_direct(&bad, &m).is_ok(), build_nfa(&m).accepts(&bad));
        }
    }
}

/// Words over `{a, b}` with an even number of `b`s.
fn even_bs() -> (Nfa<VarName>, Vec<VarName>) {
    let (a, b) = (var("a"), var("b"));
    let nfa = Nfa::new(
        2,
        [0],
        [0],
        [(0, a.clone(), 0), (0, b.clone(), 1), (1, a.clone(), 1), (1, b.clone(), 0)],
    );
    (nfa, vec![a, b])
}

/// Acceptance here depends on every step of the run, so the labeling must
/// link consecutive leaves.
#[test]
fn pinned_words_follow_the_automaton_from_four_points() {
    let (nfa, sigma) = even_bs();
    let f = Formula::and(phi_orient(), psi_automaton(&nfa, &sigma));
    let mut vocabulary = vars(&["L", "R", "s0", "s1", "s2"]);
    vocabulary.extend(sigma.iter().cloned());
    vocabulary.extend((0..nfa.num_states()).map(nfa_state_var));
    for len in 4..=7 {
        for bits in 0..1u32 << len {
            let word: Vec<VarName> = (0..len).map(|i| sigma[(bits >> i & 1) as usize].clone()).collect();
            let mut pins = Pinning::new().with(Interval::leaf(0), var("L"), true).unwrap();
            for (i, letter) in word.iter().enumerate() {
                for s in &sigma {
                    pins.pin(Interval::leaf(i), s.clone(), s == letter).unwrap();
                }
            }
            let sat = encode(&f, len, &pins, &vocabulary).unwrap().solve().is_sat();
            assert_eq!(sat, bits.count_ones() % 2 == 0, "{word:?}");
        }
    }
}
