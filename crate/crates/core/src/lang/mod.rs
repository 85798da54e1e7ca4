//! Words encoding two-counter machine computations.
//!
//! A word is a sequence of state letters (a machine state, possibly primed)
//! and subset letters. A subset letter holds at most one token from each of
//! four groups: `f`, `f'` (first counter), `s`, `s'` (second counter). In
//! each group the token is plain (inside a shade), `l` (a counter) or `r`
//! (a shadow).

mod direct;
mod geometry;
mod nfa;
mod product;

use std::fmt;

use thiserror::Error;

use crate::formula::VarName;
use crate::minsky::MinskyMachine;

pub use direct::{in_la_direct, Violation};
pub use geometry::{check_geometry, decode_word, encode_run, witness_n, Geometry, GeometryError};
pub use nfa::{Nfa, Symbol};
pub use product::{build_nfa, nfa_accepts};

pub const F: usize = 0;
pub const FP: usize = 1;
pub const S: usize = 2;
pub const SP: usize = 3;

const GROUP_NAMES: [&str; 4] = ["f", "fp", "s", "sp"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Mark {
    #[default]
    None,
    Interior,
    Left,
    Right,
}

/// One token (or none) per group, indexed by [`F`], [`FP`], [`S`], [`SP`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub [Mark; 4]);

impl Subset {
    pub const EMPTY: Subset = Subset([Mark::None; 4]);

    /// All 256 subsets.
    pub fn all() -> impl Iterator<Item = Subset> {
        const MARKS: [Mark; 4] = [Mark::None, Mark::Interior, Mark::Left, Mark::Right];
        (0..256usize).map(|code| Subset(std::array::from_fn(|g| MARKS[(code >> (2 * g)) & 3])))
    }

    pub fn with(mut self, group: usize, mark: Mark) -> Subset {
        self.0[group] = mark;
        self
    }

    pub fn mark(&self, group: usize) -> Mark {
        self.0[group]
    }

    pub fn has(&self, group: usize, mark: Mark) -> bool {
        self.0[group] == mark
    }

    fn tokens(&self) -> Vec<String> {
        let mut tokens: Vec<String> = (0..4)
            .filter_map(|g| {
                let suffix = match self.0[g] {
                    Mark::None => return None,
                    Mark::Interior => "",
                    Mark::Left => "l",
                    Mark::Right => "r",
                };
                Some(format!("{}{suffix}", GROUP_NAMES[g]))
            })
            .collect();
        tokens.sort();
        tokens
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    State { name: String, primed: bool },
    Subset(Subset),
}

pub type Word = Vec<Letter>;

impl Letter {
    pub fn state(name: &str, primed: bool) -> Letter {
        Letter::State {
            name: name.to_string(),
            primed,
        }
    }

    pub fn is_state(&self) -> bool {
        matches!(self, Letter::State { .. })
    }

    pub fn subset(&self) -> Option<&Subset> {
        match self {
            Letter::Subset(s) => Some(s),
            Letter::State { .. } => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::State { name, primed } => write!(f, "st_{name}{}", if *primed { "p" } else { "" }),
            Letter::Subset(s) if *s == Subset::EMPTY => f.write_str("sub_empty"),
            Letter::Subset(s) => write!(f, "sub_{}", s.tokens().join("_")),
        }
    }
}

impl Symbol for Letter {
    fn var(&self) -> VarName {
        VarName::new(&self.to_string()).expect("letters render as identifiers")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("line {line}: unknown letter {text:?}")]
    UnknownLetter { line: usize, text: String },
}

/// State letters (unprimed and primed, in declaration order) followed by
/// the 256 subset letters.
pub fn alphabet(m: &MinskyMachine) -> Vec<Letter> {
    let mut letters = Vec::with_capacity(2 * m.states().len() + 256);
    for primed in [false, true] {
        for q in m.states() {
            letters.push(Letter::state(q, primed));
        }
    }
    letters.extend(Subset::all().map(Letter::Subset));
    letters
}

/// Parses one rendered letter; subset tokens must be in canonical order.
pub fn parse_letter(text: &str, m: &MinskyMachine) -> Option<Letter> {
    if let Some(name) = text.strip_prefix("st_") {
        if m.states().iter().any(|q| q == name) {
            return Some(Letter::state(name, false));
        }
        let base = name.strip_suffix('p')?;
        return m.states().iter().any(|q| q == base).then(|| Letter::state(base, true));
    }
    let body = text.strip_prefix("sub_")?;
    if body == "empty" {
        return Some(Letter::Subset(Subset::EMPTY));
    }
    let mut subset = Subset::EMPTY;
    for token in body.split('_') {
        let (group, mark) = match token {
            "f" => (F, Mark::Interior),
            "fl" => (F, Mark::Left),
            "fr" => (F, Mark::Right),
            "fp" => (FP, Mark::Interior),
            "fpl" => (FP, Mark::Left),
            "fpr" => (FP, Mark::Right),
            "s" => (S, Mark::Interior),
            "sl" => (S, Mark::Left),
            "sr" => (S, Mark::Right),
            "sp" => (SP, Mark::Interior),
            "spl" => (SP, Mark::Left),
            "spr" => (SP, Mark::Right),
            _ => return None,
        };
        if subset.0[group] != Mark::None {
            return None;
        }
        subset.0[group] = mark;
    }
    let letter = Letter::Subset(subset);
    (letter.to_string() == text).then_some(letter)
}

/// One rendered letter per line; blank lines and `#` comments are skipped.
pub fn parse_word(text: &str, m: &MinskyMachine) -> Result<Word, WordError> {
    let mut word = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        word.push(parse_letter(line, m).ok_or_else(|| WordError::UnknownLetter {
            line: idx + 1,
            text: line.to_string(),
        })?);
    }
    Ok(word)
}

pub fn print_word(w: &[Letter]) -> String {
    w.iter().map(|l| format!("{l}\n")).collect()
}
