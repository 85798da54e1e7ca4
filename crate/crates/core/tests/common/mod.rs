#![allow(dead_code)]

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use subinterval::formula::{Formula, VarName};
use subinterval::lang::{alphabet, Letter};
use subinterval::minsky::{parse_machine, Action, Guard, MinskyMachine, Op, Test};
use subinterval::model::{Interval, IntervalModel};

pub fn var(s: &str) -> VarName {
    VarName::new(s).unwrap()
}

pub fn vars(names: &[&str]) -> Vec<VarName> {
    names.iter().map(|s| var(s)).collect()
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn machine(name: &str) -> MinskyMachine {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    parse_machine(&text).unwrap()
}

/// Random formula with every connective, depth at most `depth`.
pub fn formula(rng: &mut StdRng, names: &[VarName], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::var(names.choose(rng).unwrap()),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..8) {
        0 => Formula::not(formula(rng, names, d)),
        1 => Formula::and(formula(rng, names, d), formula(rng, names, d)),
        2 => Formula::or(formula(rng, names, d), formula(rng, names, d)),
        3 => Formula::implies(formula(rng, names, d), formula(rng, names, d)),
        4 => Formula::iff(formula(rng, names, d), formula(rng, names, d)),
        5 => Formula::diamond(formula(rng, names, d)),
        6 => Formula::boxd(formula(rng, names, d)),
        _ => Formula::globally(formula(rng, names, d)),
    }
}

/// Random labeling of every interval of `points` points; each variable
/// holds with probability `density`.
pub fn model(rng: &mut StdRng, points: usize, names: &[VarName], density: f64) -> IntervalModel {
    let mut m = IntervalModel::new(points).unwrap();
    for a in 0..points {
        for b in a..points {
            let labels: Vec<VarName> = names.iter().filter(|_| rng.gen_bool(density)).cloned().collect();
            if !labels.is_empty() {
                m.set_labels(Interval::new(a, b).unwrap(), labels).unwrap();
            }
        }
    }
    m
}

pub fn interval(rng: &mut StdRng, points: usize) -> Interval {
    let a = rng.gen_range(0..points);
    let b = rng.gen_range(a..points);
    Interval::new(a, b).unwrap()
}

/// Random well-formed machine: up to 5 states, a random subset of guards,
/// never decrementing a counter its guard tests as zero.
pub fn random_machine(rng: &mut StdRng) -> MinskyMachine {
    let count = rng.gen_range(1..=5);
    let states: Vec<String> = (0..count).map(|i| format!("s{i}x")).collect();
    let finals: Vec<String> = states.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
    let mut rules = Vec::new();
    for s in &states {
        for tests in [[Test::Z, Test::Z], [Test::Z, Test::P], [Test::P, Test::Z], [Test::P, Test::P]] {
            if !rng.gen_bool(0.5) {
                continue;
            }
            let ops = tests.map(|t| match (t, rng.gen_range(0..3)) {
                (_, 0) => Op::Inc,
                (Test::P, 1) => Op::Dec,
                _ => Op::Keep,
            });
            rules.push((
                Guard {
                    state: s.clone(),
                    tests,
                },
                Action {
                    next: states.choose(rng).unwrap().clone(),
                    ops,
                },
            ));
        }
    }
    MinskyMachine::new(states.clone(), states[0].clone(), finals, rules).unwrap()
}

pub fn random_word(rng: &mut StdRng, m: &MinskyMachine, max_len: usize) -> Vec<Letter> {
    let sigma = alphabet(m);
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| sigma.choose(rng).unwrap().clone()).collect()
}
