//! The automaton for the language of a machine: a product of small trackers
//! (parity, counter and shadow occurrences, shade interiors, instruction
//! matching) explored breadth-first from the start state.

use std::collections::{HashMap, VecDeque};

use super::direct::zero_tests;
use super::{alphabet, Letter, Mark, Nfa, Subset, F, S};
use crate::minsky::{MinskyMachine, Op};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Phase {
    Start,
    InConfig,
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Track {
    phase: Phase,
    state: usize,
    odd: bool,
    first: bool,
    // guessed: the next configuration is the last one
    penultimate: bool,
    rule: Option<usize>,
    counters: [bool; 2],
    shadows: [bool; 2],
    // operations of the instruction that led into this configuration
    ops: Option<[Op; 2]>,
    prev_counter: [bool; 2],
    prev_shadow: [bool; 2],
    inside: [bool; 4],
}

impl Track {
    fn outside(phase: Phase) -> Track {
        Track {
            phase,
            state: 0,
            odd: false,
            first: false,
            penultimate: false,
            rule: None,
            counters: [false; 2],
            shadows: [false; 2],
            ops: None,
            prev_counter: [false; 2],
            prev_shadow: [false; 2],
            inside: [false; 4],
        }
    }
}

struct Tables<'m> {
    machine: &'m MinskyMachine,
    index: HashMap<&'m str, usize>,
    rules: Vec<(usize, [crate::minsky::Test; 2], usize, [Op; 2])>,
}

impl<'m> Tables<'m> {
    fn new(machine: &'m MinskyMachine) -> Self {
        let index: HashMap<&str, usize> = machine
            .states()
            .iter()
            .enumerate()
            .map(|(i, q)| (q.as_str(), i))
            .collect();
        let rules = machine
            .rules()
            .map(|(g, a)| (index[g.state.as_str()], g.tests, index[a.next.as_str()], a.ops))
            .collect();
        Tables { machine, index, rules }
    }

    fn is_final(&self, state: usize) -> bool {
        self.machine.is_final(&self.machine.states()[state])
    }

    fn on_state(&self, t: &Track, name: &str, primed: bool) -> Vec<Track> {
        let Some(&q) = self.index.get(name) else {
            return Vec::new();
        };
        let open = |odd: bool, first: bool, ops: Option<[Op; 2]>, inside: [bool; 4]| {
            [false, true].map(|penultimate| Track {
                phase: Phase::InConfig,
                state: q,
                odd,
                first,
                penultimate,
                ops,
                inside,
                ..Track::outside(Phase::InConfig)
            })
        };
        match t.phase {
            Phase::Start => {
                if name != self.machine.initial() || primed {
                    return Vec::new();
                }
                let mut out = open(false, true, None, [false; 4]).to_vec();
                if self.is_final(q) {
                    out.push(Track::outside(Phase::Last));
                }
                out
            }
            Phase::InConfig => {
                let Some(r) = t.rule else {
                    return Vec::new();
                };
                let (_, _, next, ops) = self.rules[r];
                let complete = t.counters == [true; 2] && (t.first || t.shadows == [true; 2]);
                if !complete || next != q || primed == t.odd {
                    return Vec::new();
                }
                if t.penultimate {
                    if self.is_final(q) && t.inside == [false; 4] {
                        vec![Track::outside(Phase::Last)]
                    } else {
                        Vec::new()
                    }
                } else {
                    open(!t.odd, false, Some(ops), t.inside).to_vec()
                }
            }
            Phase::Last => Vec::new(),
        }
    }

    fn on_subset(&self, t: &Track, s: &Subset) -> Option<Track> {
        if t.phase != Phase::InConfig {
            return None;
        }
        let mut u = *t;
        let parity = usize::from(t.odd);
        for i in 0..2 {
            let (cg, sg) = (2 * i + parity, 2 * i + 1 - parity);
            if s.has(sg, Mark::Left) || s.has(cg, Mark::Right) {
                return None;
            }
            let c = s.has(cg, Mark::Left);
            let sh = s.has(sg, Mark::Right);
            if (sh && t.first) || (c && t.counters[i]) || (sh && t.shadows[i]) {
                return None;
            }
            u.counters[i] |= c;
            u.shadows[i] |= sh;
            u.prev_counter[i] = false;
            u.prev_shadow[i] = false;
            if let Some(ops) = t.ops {
                match ops[i] {
                    Op::Keep if c != sh => return None,
                    Op::Dec if sh && !t.prev_counter[i] => return None,
                    Op::Inc if c && !t.prev_shadow[i] => return None,
                    Op::Dec => u.prev_counter[i] = c,
                    Op::Inc => u.prev_shadow[i] = sh,
                    Op::Keep => {}
                }
            }
        }
        if t.rule.is_none() {
            if t.first && !(s.has(F, Mark::Left) && s.has(S, Mark::Left)) {
                return None;
            }
            let tests = zero_tests(s);
            u.rule = Some(
                self.rules
                    .iter()
                    .position(|(q, g, _, _)| *q == t.state && *g == tests)?,
            );
        }
        for g in 0..4 {
            match s.mark(g) {
                Mark::Interior if !t.inside[g] => return None,
                Mark::None | Mark::Left if t.inside[g] => return None,
                Mark::Left => u.inside[g] = !t.penultimate,
                Mark::Right => u.inside[g] = false,
                _ => {}
            }
        }
        Some(u)
    }
}

/// The automaton recognising exactly the words accepted by
/// [`in_la_direct`](super::in_la_direct), trimmed to useful states.
pub fn build_nfa(m: &MinskyMachine) -> Nfa<Letter> {
    let tables = Tables::new(m);
    let sigma = alphabet(m);
    let mut ids: HashMap<Track, usize> = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    let mut transitions = Vec::new();
    let start = Track::outside(Phase::Start);
    ids.insert(start, 0);
    order.push(start);
    queue.push_back(start);
    while let Some(t) = queue.pop_front() {
        let from = ids[&t];
        for letter in &sigma {
            let targets = match letter {
                Letter::State { name, primed } => tables.on_state(&t, name, *primed),
                Letter::Subset(s) => tables.on_subset(&t, s).into_iter().collect(),
            };
            for u in targets {
                let to = *ids.entry(u).or_insert_with(|| {
                    order.push(u);
                    queue.push_back(u);
                    order.len() - 1
                });
                transitions.push((from, letter.clone(), to));
            }
        }
    }
    let finals: Vec<usize> = (0..order.len()).filter(|&i| order[i].phase == Phase::Last).collect();
    Nfa::new(order.len(), [0], finals, transitions).trim()
}

pub fn nfa_accepts(nfa: &Nfa<Letter>, w: &[Letter]) -> bool {
    nfa.accepts(w)
}
