//! Runs as words with uniform configuration and shade lengths.
//!
//! With shade length `n`, every configuration but the last has `n - 1`
//! letters: its state followed by `n - 2` subsets. A counter with value `v`
//! sits at offset `v + 1`, and its shadow at the same offset one
//! configuration later.

use thiserror::Error;

use super::direct::{layout, Layout};
use super::{Letter, Mark, Subset, Violation, Word};
use crate::minsky::{MachineConfig, MachineRun, MinskyMachine, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Geometry {
    pub n: usize,
}

impl Geometry {
    pub fn new(n: usize) -> Self {
        Geometry { n }
    }

    pub fn config_len(&self) -> usize {
        self.n - 1
    }

    pub fn cloud_len(&self) -> usize {
        self.n - 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("word is not in the language: {0}")]
    NotMember(Violation),
    #[error("run does not halt")]
    NotAccepting,
    #[error("shade length {n} is below the required {needed}")]
    TooSmall { n: usize, needed: usize },
    #[error("configuration or shade length is not uniform: {0}")]
    Irregular(String),
}

/// The smallest shade length used for witnesses of `run`.
pub fn witness_n(run: &MachineRun) -> usize {
    (run.max_counter() + 4).max(6)
}

fn check_layout(l: &Layout, n: usize) -> Result<(), String> {
    let last = l.configs.len() - 1;
    for (k, c) in l.configs.iter().enumerate().take(last) {
        if c.len() != n - 1 {
            return Err(format!("configuration {k} has {} letters, expected {}", c.len(), n - 1));
        }
    }
    for k in 0..last.saturating_sub(1) {
        let shadows = l.shadows[k + 1].expect("inner configuration");
        for i in 0..2 {
            let len = shadows[i] - l.counters[k][i] + 1;
            if len != n {
                return Err(format!("shade of counter {} from configuration {k} has length {len}", i + 1));
            }
        }
    }
    Ok(())
}

/// Whether a member word has configurations of length `n - 1` and shades
/// of length `n`.
pub fn check_geometry(w: &[Letter], m: &MinskyMachine, g: Geometry) -> Result<bool, GeometryError> {
    let l = layout(w, m).map_err(GeometryError::NotMember)?;
    Ok(g.n >= 2 && check_layout(&l, g.n).is_ok())
}

/// Lays out a halted run with shade length `n`.
pub fn encode_run(run: &MachineRun, n: usize) -> Result<Word, GeometryError> {
    if run.outcome != Outcome::Halted {
        return Err(GeometryError::NotAccepting);
    }
    let needed = witness_n(run);
    if n < needed {
        return Err(GeometryError::TooSmall { n, needed });
    }
    let configs = &run.configs;
    let last = configs.len() - 1;
    let mut w = Vec::with_capacity(last * (n - 1) + 1);
    let mut subsets = vec![Subset::EMPTY; last * (n - 1) + 1];
    for (k, cfg) in configs.iter().enumerate().take(last) {
        let start = k * (n - 1);
        let odd = usize::from(k % 2 == 1);
        for i in 0..2 {
            let c = start + cfg.counters[i] + 1;
            subsets[c].0[2 * i + odd] = Mark::Left;
            if k > 0 {
                let s = start + configs[k - 1].counters[i] + 1;
                subsets[s].0[2 * i + 1 - odd] = Mark::Right;
            }
            if k + 2 <= last {
                for p in c + 1..c + n - 1 {
                    subsets[p].0[2 * i + odd] = Mark::Interior;
                }
            }
        }
    }
    for (p, subset) in subsets.into_iter().enumerate() {
        if p % (n - 1) == 0 {
            let k = p / (n - 1);
            w.push(Letter::state(&configs[k].state, k % 2 == 1));
        } else {
            w.push(Letter::Subset(subset));
        }
    }
    Ok(w)
}

/// Reads the run back out of a member word with uniform geometry. The
/// counters of the last configuration, which the word does not show, come
/// from the instruction applied to the one before.
pub fn decode_word(w: &[Letter], m: &MinskyMachine) -> Result<MachineRun, GeometryError> {
    let l = layout(w, m).map_err(GeometryError::NotMember)?;
    let mut configs = Vec::with_capacity(l.configs.len());
    let state = |k: usize| match &w[l.configs[k].start] {
        Letter::State { name, .. } => name.clone(),
        Letter::Subset(_) => unreachable!(),
    };
    if l.configs.len() > 1 {
        let n = l.configs[0].len() + 1;
        check_layout(&l, n).map_err(GeometryError::Irregular)?;
    }
    let last = l.configs.len() - 1;
    for k in 0..last {
        let start = l.configs[k].start;
        configs.push(MachineConfig {
            state: state(k),
            counters: l.counters[k].map(|p| p - start - 1),
        });
    }
    let counters = match configs.last() {
        None => [0, 0],
        Some(prev) => {
            let rule = m.rule_for(prev).expect("membership guarantees a matching instruction");
            [rule.ops[0].apply(prev.counters[0]), rule.ops[1].apply(prev.counters[1])]
        }
    };
    configs.push(MachineConfig {
        state: state(last),
        counters,
    });
    Ok(MachineRun {
        configs,
        outcome: Outcome::Halted,
    })
}
