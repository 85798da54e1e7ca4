use std::fmt;
use std::ops::Range;

use super::{Letter, Mark};
use crate::minsky::{MinskyMachine, Test};

/// The first condition a word breaks, numbered 1 to 6, and where.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: u8,
    pub position: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} at position {}: {}", self.condition, self.position, self.message)
    }
}

fn violation(condition: u8, position: usize, message: impl Into<String>) -> Violation {
    Violation {
        condition,
        position,
        message: message.into(),
    }
}

/// Positions of configurations, counters and shadows in a member word.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub configs: Vec<Range<usize>>,
    /// Per non-last configuration: the first and second counter.
    pub counters: Vec<[usize; 2]>,
    /// Per non-last configuration other than the first: both shadows.
    pub shadows: Vec<Option<[usize; 2]>>,
}

fn state_of(letter: &Letter) -> (&str, bool) {
    match letter {
        Letter::State { name, primed } => (name, *primed),
        Letter::Subset(_) => unreachable!("configurations start with a state"),
    }
}

/// Zero tests read off the first non-state letter of a configuration.
pub(crate) fn zero_tests(first: &super::Subset) -> [Test; 2] {
    std::array::from_fn(|i| {
        if first.has(2 * i, Mark::Left) || first.has(2 * i + 1, Mark::Left) {
            Test::Z
        } else {
            Test::P
        }
    })
}

/// Finds the only letter in `range` carrying `mark` in group `2i` or `2i+1`.
fn unique(w: &[Letter], range: Range<usize>, i: usize, mark: Mark, condition: u8, what: &str) -> Result<usize, Violation> {
    let start = range.start;
    let mut found = None;
    for p in range {
        if let Some(s) = w[p].subset() {
            if s.has(2 * i, mark) || s.has(2 * i + 1, mark) {
                if found.is_some() {
                    return Err(violation(condition, p, format!("second {what}")));
                }
                found = Some(p);
            }
        }
    }
    found.ok_or_else(|| violation(condition, start, format!("configuration has no {what}")))
}

pub(crate) fn layout(w: &[Letter], m: &MinskyMachine) -> Result<Layout, Violation> {
    // 1: starts with q0, ends with a final state
    if w.is_empty() {
        return Err(violation(1, 0, "empty word"));
    }
    if w[0] != Letter::state(m.initial(), false) {
        return Err(violation(1, 0, "first letter is not the initial state"));
    }
    let end = w.len() - 1;
    match &w[end] {
        Letter::State { name, .. } if m.is_final(name) => {}
        _ => return Err(violation(1, end, "last letter is not a final state")),
    }
    let starts: Vec<usize> = (0..w.len()).filter(|&p| w[p].is_state()).collect();
    let configs: Vec<Range<usize>> = starts
        .iter()
        .enumerate()
        .map(|(k, &s)| s..starts.get(k + 1).copied().unwrap_or(w.len()))
        .collect();
    let last = configs.len() - 1;

    // 2: parity alternates
    for k in 1..configs.len() {
        if state_of(&w[starts[k]]).1 == state_of(&w[starts[k - 1]]).1 {
            return Err(violation(2, starts[k], "two consecutive configurations of the same parity"));
        }
    }

    // 3: one counter per counter and configuration, of the right parity
    let names = [["first counter", "second counter"], ["first shadow", "second shadow"]];
    let mut counters = Vec::new();
    for (k, c) in configs.iter().enumerate().take(last) {
        let odd = k % 2 == 1;
        let body = c.start + 1..c.end;
        let mut pair = [0; 2];
        for i in 0..2 {
            let p = unique(w, body.clone(), i, Mark::Left, 3, names[0][i])?;
            if !w[p].subset().unwrap().has(2 * i + usize::from(odd), Mark::Left) {
                return Err(violation(3, p, format!("{} of the wrong parity", names[0][i])));
            }
            pair[i] = p;
        }
        if k == 0 && pair != [c.start + 1; 2] {
            return Err(violation(3, c.start + 1, "first configuration does not start with both counters"));
        }
        counters.push(pair);
    }

    // 4: shadows everywhere except the first and last configuration
    let mut shadows = Vec::new();
    for (k, c) in configs.iter().enumerate().take(last) {
        let odd = k % 2 == 1;
        let body = c.start + 1..c.end;
        if k == 0 {
            if let Some(p) = body.clone().find(|&p| w[p].subset().unwrap().0.contains(&Mark::Right)) {
                return Err(violation(4, p, "shadow in the first configuration"));
            }
            shadows.push(None);
            continue;
        }
        let mut pair = [0; 2];
        for i in 0..2 {
            let p = unique(w, body.clone(), i, Mark::Right, 4, names[1][i])?;
            if !w[p].subset().unwrap().has(2 * i + usize::from(!odd), Mark::Right) {
                return Err(violation(4, p, format!("{} of the wrong parity", names[1][i])));
            }
            pair[i] = p;
        }
        shadows.push(Some(pair));
    }

    // 5: interior tokens exactly strictly inside shades
    let mut inside = vec![[false; 4]; w.len()];
    for k in 0..last.saturating_sub(1) {
        let odd = usize::from(k % 2 == 1);
        let next = shadows[k + 1].expect("inner configuration");
        for i in 0..2 {
            for flags in &mut inside[counters[k][i] + 1..next[i]] {
                flags[2 * i + odd] = true;
            }
        }
    }
    for (p, letter) in w.iter().enumerate() {
        if let Some(s) = letter.subset() {
            for g in 0..4 {
                if s.has(g, Mark::Interior) != inside[p][g] {
                    let message = if inside[p][g] {
                        "letter inside a shade lacks the interior token"
                    } else {
                        "interior token outside any shade"
                    };
                    return Err(violation(5, p, message));
                }
            }
        }
    }

    // 6: consecutive configurations follow an instruction
    for k in 0..last {
        let first = configs[k].start + 1;
        let tests = zero_tests(w[first].subset().unwrap());
        let (state, _) = state_of(&w[configs[k].start]);
        let Some(rule) = m.rule(state, tests) else {
            return Err(violation(6, first, format!("no instruction for {state} {} {}", tests[0], tests[1])));
        };
        let next_start = configs[k + 1].start;
        if state_of(&w[next_start]).0 != rule.next {
            return Err(violation(6, next_start, format!("expected state {}", rule.next)));
        }
        if k + 1 == last {
            continue;
        }
        let shadow = shadows[k + 1].expect("inner configuration");
        for i in 0..2 {
            let offset = counters[k + 1][i] as isize - shadow[i] as isize;
            let wanted = match rule.ops[i] {
                crate::minsky::Op::Keep => 0,
                crate::minsky::Op::Dec => -1,
                crate::minsky::Op::Inc => 1,
            };
            if offset != wanted {
                return Err(violation(
                    6,
                    counters[k + 1][i],
                    format!("counter {} does not follow `{}`", i + 1, rule.ops[i]),
                ));
            }
        }
    }
    Ok(Layout {
        configs,
        counters,
        shadows,
    })
}

/// Decides membership, naming the first broken condition otherwise.
pub fn in_la_direct(w: &[Letter], m: &MinskyMachine) -> Result<(), Violation> {
    layout(w, m).map(|_| ())
}
