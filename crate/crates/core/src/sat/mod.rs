//! Bounded satisfiability: CNF encoding of "some labeling of an N-point
//! model satisfies phi at [0, N-1]", a built-in solver, and DIMACS I/O.

mod dimacs;
mod encode;
mod solver;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Formula, VarName};
use crate::model::{Interval, IntervalModel, ModelError};

pub use dimacs::{export_dimacs, import_assignment, parse_dimacs};
pub use encode::{decode, encode, CnfInstance};
pub use solver::{solve_clauses, SolveResult, Solver, SolverStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("contradictory pins on {var} at {interval}")]
    ContradictoryPins { interval: Interval, var: VarName },
    #[error("pin on {var} at {interval} is outside a {points}-point model")]
    PinOutOfRange {
        interval: Interval,
        var: VarName,
        points: usize,
    },
    #[error("pinned variable {0} is not in the vocabulary")]
    PinOutsideVocabulary(VarName),
    #[error("formula variable {0} is not in the vocabulary")]
    VariableOutsideVocabulary(VarName),
    #[error("a model needs at least one point")]
    NoPoints,
    #[error("invalid size range {0}..={1}")]
    BadRange(usize, usize),
    #[error("assignment leaves variable {0} unassigned")]
    PartialAssignment(usize),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Clauses of signed DIMACS literals, stored back to back.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClauseList {
    lits: Vec<i32>,
    ends: Vec<usize>,
}

impl ClauseList {
    pub fn push(&mut self, clause: &[i32]) {
        debug_assert!(clause.iter().all(|&l| l != 0));
        self.lits.extend_from_slice(clause);
        self.ends.push(self.lits.len());
    }

    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[i32]> {
        let starts = std::iter::once(0).chain(self.ends.iter().copied());
        starts.zip(self.ends.iter().copied()).map(move |(s, e)| &self.lits[s..e])
    }

    pub fn max_var(&self) -> usize {
        self.lits.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

/// Values for variables `1..=len`; `None` marks an unassigned variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn from_values(values: Vec<Option<bool>>) -> Self {
        Assignment { values }
    }

    pub fn all_false(num_vars: usize) -> Self {
        Assignment {
            values: vec![Some(false); num_vars],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, var: usize) -> Option<bool> {
        var.checked_sub(1).and_then(|i| self.values.get(i).copied().flatten())
    }

    pub fn set(&mut self, var: usize, value: bool) {
        if self.values.len() < var {
            self.values.resize(var, None);
        }
        self.values[var - 1] = Some(value);
    }

    pub fn satisfies(&self, clause: &[i32]) -> bool {
        clause
            .iter()
            .any(|&l| self.get(l.unsigned_abs() as usize) == Some(l > 0))
    }
}

/// Fixed truth values for some (interval, variable) pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pinning {
    pins: BTreeMap<(Interval, VarName), bool>,
}

impl Pinning {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pin(&mut self, interval: Interval, var: VarName, value: bool) -> Result<(), SatError> {
        match self.pins.get(&(interval, var.clone())) {
            Some(&old) if old != value => Err(SatError::ContradictoryPins { interval, var }),
            _ => {
                self.pins.insert((interval, var), value);
                Ok(())
            }
        }
    }

    pub fn with(mut self, interval: Interval, var: VarName, value: bool) -> Result<Self, SatError> {
        self.pin(interval, var, value)?;
        Ok(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Interval, &VarName, bool)> {
        self.pins.iter().map(|((i, v), b)| (*i, v, *b))
    }

    pub fn is_empty(&self) -> bool {
        self.pins.is_empty()
    }

    /// Parses lines `pin <a> <b> <var> true|false`.
    pub fn parse(text: &str) -> Result<Self, SatError> {
        let mut pins = Pinning::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: &str| SatError::Malformed {
                line: idx + 1,
                message: message.to_string(),
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 5 || parts[0] != "pin" {
                return Err(bad("expected `pin <a> <b> <var> true|false`"));
            }
            let a = parts[1].parse().map_err(|_| bad("bad endpoint"))?;
            let b = parts[2].parse().map_err(|_| bad("bad endpoint"))?;
            let interval = Interval::new(a, b).map_err(|e| bad(&e.to_string()))?;
            let var = VarName::new(parts[3]).map_err(|e| bad(&e.to_string()))?;
            let value = match parts[4] {
                "true" => true,
                "false" => false,
                _ => return Err(bad("value must be true or false")),
            };
            pins.pin(interval, var, value)?;
        }
        Ok(pins)
    }
}

/// Smallest `N` in `min..=max` for which some labeling over `vocabulary`
/// (respecting `pins`) satisfies `f` at the full interval, with a witness.
pub fn sat_search(
    f: &Formula,
    min: usize,
    max: usize,
    pins: &Pinning,
    vocabulary: &[VarName],
) -> Result<Option<(usize, IntervalModel)>, SatError> {
    if min == 0 || min > max {
        return Err(SatError::BadRange(min, max));
    }
    for points in min..=max {
        let cnf = encode(f, points, pins, vocabulary)?;
        if let SolveResult::Sat(assignment) = cnf.solve() {
            return Ok(Some((points, decode(&assignment, &cnf)?)));
        }
    }
    Ok(None)
}

/// All distinct restrictions of satisfying assignments to `project`
/// (DIMACS variables), found by repeatedly blocking the previous answer.
/// Stops after `limit` answers.
pub fn enumerate_projected(cnf: &CnfInstance, project: &[usize], limit: usize) -> Vec<Assignment> {
    let mut solver = Solver::from_clauses(cnf.num_vars(), cnf.clauses());
    let mut found = Vec::new();
    while found.len() < limit {
        let SolveResult::Sat(assignment) = solver.solve() else {
            break;
        };
        let blocking: Vec<i32> = project
            .iter()
            .map(|&v| if assignment.get(v) == Some(true) { -(v as i32) } else { v as i32 })
            .collect();
        found.push(assignment);
        if blocking.is_empty() {
            break;
        }
        solver.add_clause(&blocking);
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VarName {
        VarName::new(s).unwrap()
    }

    #[test]
    fn pins_conflict() {
        let mut p = Pinning::new();
        p.pin(Interval::leaf(0), v("p"), true).unwrap();
        p.pin(Interval::leaf(0), v("p"), true).unwrap();
        assert!(matches!(
            p.pin(Interval::leaf(0), v("p"), false),
            Err(SatError::ContradictoryPins { .. })
        ));
    }

    #[test]
    fn parse_pins() {
        let p = Pinning::parse("# pins\npin 0 0 L true\npin 1 1 s2 false\n").unwrap();
        assert_eq!(p.iter().count(), 2);
        assert!(Pinning::parse("pin 0 0 L maybe").is_err());
        assert!(Pinning::parse("pin 2 1 L true").is_err());
        assert!(Pinning::parse("pin 0 0 L true\npin 0 0 L false").is_err());
    }

    #[test]
    fn assignment_access() {
        let mut a = Assignment::from_values(vec![Some(true), None]);
        assert_eq!(a.get(0), None);
        assert_eq!(a.get(1), Some(true));
        assert_eq!(a.get(2), None);
        a.set(4, false);
        assert_eq!(a.len(), 4);
        assert!(a.satisfies(&[-4, 2]));
        assert!(!a.satisfies(&[2, 3]));
    }

    #[test]
    fn search_range_errors() {
        assert!(matches!(
            sat_search(&Formula::True, 0, 2, &Pinning::new(), &[]),
            Err(SatError::BadRange(0, 2))
        ));
        assert!(matches!(
            sat_search(&Formula::True, 3, 2, &Pinning::new(), &[]),
            Err(SatError::BadRange(3, 2))
        ));
    }
}
