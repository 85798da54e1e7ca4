//! Deterministic two-counter machines.
//!
//! ```text
//! states: q0 q1 qf
//! initial: q0
//! final: qf
//! rule: q0 Z Z -> q1 inc keep
//! ```
//!
//! A rule fires on the current state and the zero tests of both counters
//! (`Z` for zero, `P` for positive). Acceptance means entering a final state.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}:` line")]
    Missing(&'static str),
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("state {0} declared twice")]
    DuplicateState(String),
    #[error("invalid state name {0:?}")]
    InvalidName(String),
    #[error("state names {0} and {0}p collide once primed")]
    PrimeClash(String),
    #[error("two rules for {0}")]
    DuplicateRule(Guard),
    #[error("rule for {0} decrements a counter tested zero")]
    DecrementOnZero(Guard),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Test {
    Z,
    P,
}

impl Test {
    pub fn of(counter: usize) -> Test {
        if counter == 0 {
            Test::Z
        } else {
            Test::P
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Inc,
    Dec,
    Keep,
}

impl Op {
    pub fn apply(self, counter: usize) -> usize {
        match self {
            Op::Inc => counter + 1,
            Op::Dec => counter - 1,
            Op::Keep => counter,
        }
    }
}

impl fmt::Display for Test {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Test::Z => "Z",
            Test::P => "P",
        })
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Inc => "inc",
            Op::Dec => "dec",
            Op::Keep => "keep",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Guard {
    pub state: String,
    pub tests: [Test; 2],
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.state, self.tests[0], self.tests[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Action {
    pub next: String,
    pub ops: [Op; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinskyMachine {
    states: Vec<String>,
    initial: String,
    finals: BTreeSet<String>,
    rules: BTreeMap<Guard, Action>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachineConfig {
    pub state: String,
    pub counters: [usize; 2],
}

impl MachineConfig {
    pub fn new(state: &str, c1: usize, c2: usize) -> Self {
        MachineConfig {
            state: state.to_string(),
            counters: [c1, c2],
        }
    }
}

impl fmt::Display for MachineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.state, self.counters[0], self.counters[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Halted,
    Stuck,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineRun {
    pub configs: Vec<MachineConfig>,
    pub outcome: Outcome,
}

impl MachineRun {
    pub fn max_counter(&self) -> usize {
        self.configs
            .iter()
            .flat_map(|c| c.counters)
            .max()
            .unwrap_or(0)
    }

    pub fn is_halted(&self) -> bool {
        self.outcome == Outcome::Halted
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

impl MinskyMachine {
    pub fn new(
        states: Vec<String>,
        initial: String,
        finals: impl IntoIterator<Item = String>,
        rules: impl IntoIterator<Item = (Guard, Action)>,
    ) -> Result<Self, MachineError> {
        let mut seen = BTreeSet::new();
        for s in &states {
            if !valid_name(s) {
                return Err(MachineError::InvalidName(s.clone()));
            }
            if !seen.insert(s.as_str()) {
                return Err(MachineError::DuplicateState(s.clone()));
            }
        }
        for s in &states {
            if seen.contains(format!("{s}p").as_str()) {
                return Err(MachineError::PrimeClash(s.clone()));
            }
        }
        let known = |s: &str| {
            if seen.contains(s) {
                Ok(())
            } else {
                Err(MachineError::UnknownState(s.to_string()))
            }
        };
        known(&initial)?;
        let finals: BTreeSet<String> = finals.into_iter().collect();
        for s in &finals {
            known(s)?;
        }
        let mut table = BTreeMap::new();
        for (guard, action) in rules {
            known(&guard.state)?;
            known(&action.next)?;
            if (0..2).any(|i| guard.tests[i] == Test::Z && action.ops[i] == Op::Dec) {
                return Err(MachineError::DecrementOnZero(guard));
            }
            if table.contains_key(&guard) {
                return Err(MachineError::DuplicateRule(guard));
            }
            table.insert(guard, action);
        }
        Ok(MinskyMachine {
            states,
            initial,
            finals,
            rules: table,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> &str {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<String> {
        &self.finals
    }

    pub fn is_final(&self, state: &str) -> bool {
        self.finals.contains(state)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Guard, &Action)> {
        self.rules.iter()
    }

    pub fn rule(&self, state: &str, tests: [Test; 2]) -> Option<&Action> {
        self.rules.get(&Guard {
            state: state.to_string(),
            tests,
        })
    }

    /// The rule applicable to a configuration.
    pub fn rule_for(&self, cfg: &MachineConfig) -> Option<&Action> {
        self.rule(&cfg.state, cfg.counters.map(Test::of))
    }

    /// One step; `None` when no rule applies.
    pub fn step(&self, cfg: &MachineConfig) -> Option<MachineConfig> {
        let action = self.rule_for(cfg)?;
        Some(MachineConfig {
            state: action.next.clone(),
            counters: [action.ops[0].apply(cfg.counters[0]), action.ops[1].apply(cfg.counters[1])],
        })
    }

    /// Runs from `(initial, 0, 0)` until a final state is entered, no rule
    /// applies, or `max_steps` steps have been taken.
    pub fn run(&self, max_steps: usize) -> MachineRun {
        let mut configs = vec![MachineConfig::new(&self.initial, 0, 0)];
        let mut steps = 0;
        loop {
            let current = configs.last().expect("non-empty");
            if self.is_final(&current.state) {
                return MachineRun {
                    configs,
                    outcome: Outcome::Halted,
                };
            }
            if steps == max_steps {
                return MachineRun {
                    configs,
                    outcome: Outcome::Timeout,
                };
            }
            match self.step(current) {
                Some(next) => configs.push(next),
                None => {
                    return MachineRun {
                        configs,
                        outcome: Outcome::Stuck,
                    }
                }
            }
            steps += 1;
        }
    }
}

fn parse_test(tok: &str) -> Option<Test> {
    match tok {
        "Z" => Some(Test::Z),
        "P" => Some(Test::P),
        _ => None,
    }
}

fn parse_op(tok: &str) -> Option<Op> {
    match tok {
        "inc" => Some(Op::Inc),
        "dec" => Some(Op::Dec),
        "keep" => Some(Op::Keep),
        _ => None,
    }
}

pub fn parse_machine(text: &str) -> Result<MinskyMachine, MachineError> {
    let mut states = None;
    let mut initial = None;
    let mut finals = None;
    let mut rules = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: &str| MachineError::Syntax {
            line: idx + 1,
            message: message.to_string(),
        };
        let (key, rest) = line.split_once(':').ok_or_else(|| syntax("expected `key: value`"))?;
        let words: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        match key.trim() {
            "states" if states.is_none() => states = Some(words),
            "initial" if initial.is_none() => {
                if words.len() != 1 {
                    return Err(syntax("expected one initial state"));
                }
                initial = Some(words[0].clone());
            }
            "final" if finals.is_none() => finals = Some(words),
            "rule" => {
                let bad = || syntax("expected `rule: <state> Z|P Z|P -> <state> <op> <op>`");
                if words.len() != 7 || words[3] != "->" {
                    return Err(bad());
                }
                let t1 = parse_test(&words[1]).ok_or_else(bad)?;
                let t2 = parse_test(&words[2]).ok_or_else(bad)?;
                let o1 = parse_op(&words[5]).ok_or_else(bad)?;
                let o2 = parse_op(&words[6]).ok_or_else(bad)?;
                rules.push((
                    Guard {
                        state: words[0].clone(),
                        tests: [t1, t2],
                    },
                    Action {
                        next: words[4].clone(),
                        ops: [o1, o2],
                    },
                ));
            }
            "states" | "initial" | "final" => return Err(syntax("repeated header line")),
            other => return Err(syntax(&format!("unknown key {other:?}"))),
        }
    }
    MinskyMachine::new(
        states.ok_or(MachineError::Missing("states"))?,
        initial.ok_or(MachineError::Missing("initial"))?,
        finals.ok_or(MachineError::Missing("final"))?,
        rules,
    )
}

pub fn print_machine(m: &MinskyMachine) -> String {
    let finals: Vec<&str> = m.finals.iter().map(String::as_str).collect();
    let mut out = format!(
        "states: {}\ninitial: {}\nfinal: {}\n",
        m.states.join(" "),
        m.initial,
        finals.join(" ")
    );
    for (g, a) in &m.rules {
        out.push_str(&format!("rule: {g} -> {} {} {}\n", a.next, a.ops[0], a.ops[1]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLUS: &str = "states: q0 q1 qf\ninitial: q0\nfinal: qf\n\
        rule: q0 Z Z -> q1 inc keep\nrule: q1 P Z -> qf inc keep\nrule: q1 Z Z -> q0 keep keep\n";

    #[test]
    fn simulate_plus() {
        let m = parse_machine(PLUS).unwrap();
        assert_eq!(m.rules().count(), 3);
        let r = m.run(100);
        assert_eq!(r.outcome, Outcome::Halted);
        assert_eq!(
            r.configs,
            vec![
                MachineConfig::new("q0", 0, 0),
                MachineConfig::new("q1", 1, 0),
                MachineConfig::new("qf", 2, 0)
            ]
        );
        assert_eq!(r.max_counter(), 2);
    }

    #[test]
    fn single_step() {
        let m = parse_machine(PLUS).unwrap();
        assert_eq!(m.step(&MachineConfig::new("q0", 0, 0)), Some(MachineConfig::new("q1", 1, 0)));
        assert_eq!(m.step(&MachineConfig::new("qf", 2, 0)), None);
    }

    #[test]
    fn loops_and_sticks() {
        let inf = parse_machine("states: q0 qf\ninitial: q0\nfinal: qf\nrule: q0 Z Z -> q0 keep keep").unwrap();
        for bound in [0, 1, 10, 1000] {
            let r = inf.run(bound);
            assert_eq!(r.outcome, Outcome::Timeout);
            assert_eq!(r.configs.len(), bound + 1);
        }
        let stuck = parse_machine("states: q0 qf\ninitial: q0\nfinal: qf\nrule: q0 P Z -> qf keep keep").unwrap();
        let r = stuck.run(10);
        assert_eq!(r.outcome, Outcome::Stuck);
        assert_eq!(r.configs.len(), 1);
    }

    #[test]
    fn rejects_bad_machines() {
        let head = "states: q0 q1\ninitial: q0\nfinal: q1\n";
        let e = |body: &str| parse_machine(&format!("{head}{body}")).unwrap_err();
        assert!(matches!(e("rule: q0 Z Z -> q1 dec keep"), MachineError::DecrementOnZero(_)));
        assert!(matches!(
            e("rule: q0 Z Z -> q1 inc keep\nrule: q0 Z Z -> q0 inc keep"),
            MachineError::DuplicateRule(_)
        ));
        assert!(matches!(e("rule: q0 Z Z -> q9 inc keep"), MachineError::UnknownState(_)));
        assert!(matches!(e("rule: q0 Z Z q1 inc keep"), MachineError::Syntax { .. }));
        assert!(matches!(e("rule: q0 Z Z -> q1 add keep"), MachineError::Syntax { .. }));
        assert!(matches!(
            parse_machine("states: q0\nfinal: q0\n"),
            Err(MachineError::Missing("initial"))
        ));
        assert!(matches!(
            parse_machine("states: q q0 qp\ninitial: q\nfinal: q\n"),
            Err(MachineError::PrimeClash(_))
        ));
        assert!(matches!(
            parse_machine("states: q0 q0\ninitial: q0\nfinal: q0\n"),
            Err(MachineError::DuplicateState(_))
        ));
        assert!(matches!(
            parse_machine("states: q-0\ninitial: q-0\nfinal: q-0\n"),
            Err(MachineError::InvalidName(_))
        ));
    }

    #[test]
    fn print_parse() {
        let m = parse_machine(PLUS).unwrap();
        assert_eq!(parse_machine(&print_machine(&m)).unwrap(), m);
    }
}
