//! Finite discrete orders `0 < 1 < ... < N-1`, their intervals, and sparse
//! labelings of intervals with variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::formula::VarName;

/// A closed interval `[a, b]` with `a <= b`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    a: usize,
    b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("interval [{0}, {1}] has a > b")]
    Reversed(usize, usize),
    #[error("interval {interval:?} is outside a model with {points} points")]
    OutOfRange { interval: Interval, points: usize },
    #[error("a model needs at least one point")]
    NoPoints,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

impl Interval {
    pub fn new(a: usize, b: usize) -> Result<Self, ModelError> {
        if a > b {
            return Err(ModelError::Reversed(a, b));
        }
        Ok(Interval { a, b })
    }

    pub fn leaf(a: usize) -> Self {
        Interval { a, b: a }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn len(&self) -> usize {
        self.b - self.a
    }

    pub fn is_leaf(&self) -> bool {
        self.a == self.b
    }

    /// `other` lies within `self` (not necessarily properly).
    pub fn contains(&self, other: &Interval) -> bool {
        self.a <= other.a && other.b <= self.b
    }

    pub fn properly_contains(&self, other: &Interval) -> bool {
        self.contains(other) && self != other
    }

    /// All sub-intervals of `self` including itself, ordered by length and
    /// then by left endpoint.
    pub fn subintervals(&self) -> impl Iterator<Item = Interval> + '_ {
        (0..=self.len()).flat_map(move |len| (self.a..=self.b - len).map(move |a| Interval { a, b: a + len }))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// Every `[a', b']` with `a <= a'`, `b' <= b` other than `[a, b]` itself;
/// there are `L(L+3)/2` of them for an interval of length `L`.
pub fn proper_subintervals(i: Interval) -> Vec<Interval> {
    i.subintervals().filter(|j| *j != i).collect()
}

/// Dense numbering of the sub-intervals of a base interval, by length and
/// then left endpoint. Index `0..width` are the leaves.
#[derive(Debug, Clone, Copy)]
pub struct IntervalGrid {
    lo: usize,
    width: usize,
}

impl IntervalGrid {
    pub fn new(base: Interval) -> Self {
        IntervalGrid {
            lo: base.a,
            width: base.len() + 1,
        }
    }

    pub fn count(&self) -> usize {
        self.width * (self.width + 1) / 2
    }

    pub fn base(&self) -> Interval {
        Interval {
            a: self.lo,
            b: self.lo + self.width - 1,
        }
    }

    pub fn index(&self, i: Interval) -> usize {
        let len = i.len();
        len * self.width - len * (len.saturating_sub(1)) / 2 + (i.a - self.lo)
    }

    pub fn interval(&self, mut index: usize) -> Interval {
        let mut len = 0;
        while index >= self.width - len {
            index -= self.width - len;
            len += 1;
        }
        let a = self.lo + index;
        Interval { a, b: a + len }
    }

    /// All intervals of the grid in index order.
    pub fn intervals(&self) -> impl Iterator<Item = Interval> {
        let base = self.base();
        (0..self.width).flat_map(move |len| (base.a..=base.b - len).map(move |a| Interval { a, b: a + len }))
    }
}

/// A finite model: `points` ordered points and a sparse labeling.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntervalModel {
    points: usize,
    labels: BTreeMap<Interval, BTreeSet<VarName>>,
}

impl IntervalModel {
    pub fn new(points: usize) -> Result<Self, ModelError> {
        if points == 0 {
            return Err(ModelError::NoPoints);
        }
        Ok(IntervalModel {
            points,
            labels: BTreeMap::new(),
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// `[0, N-1]`.
    pub fn full(&self) -> Interval {
        Interval { a: 0, b: self.points - 1 }
    }

    pub fn interval_count(&self) -> usize {
        self.points * (self.points + 1) / 2
    }

    pub fn validate(&self, i: Interval) -> Result<(), ModelError> {
        if i.b < self.points {
            Ok(())
        } else {
            Err(ModelError::OutOfRange {
                interval: i,
                points: self.points,
            })
        }
    }

    /// Replaces the label set of `i`.
    pub fn set_labels<I>(&mut self, i: Interval, vars: I) -> Result<(), ModelError>
    where
        I: IntoIterator<Item = VarName>,
    {
        self.validate(i)?;
        let set: BTreeSet<VarName> = vars.into_iter().collect();
        if set.is_empty() {
            self.labels.remove(&i);
        } else {
            self.labels.insert(i, set);
        }
        Ok(())
    }

    pub fn add_label(&mut self, i: Interval, var: VarName) -> Result<(), ModelError> {
        self.validate(i)?;
        self.labels.entry(i).or_default().insert(var);
        Ok(())
    }

    pub fn get_labels(&self, i: Interval) -> Result<BTreeSet<VarName>, ModelError> {
        self.validate(i)?;
        Ok(self.labels.get(&i).cloned().unwrap_or_default())
    }

    pub fn has(&self, i: Interval, var: &VarName) -> bool {
        self.labels.get(&i).is_some_and(|s| s.contains(var))
    }

    /// Labeled intervals in `(a, b)` order; unlabeled intervals are skipped.
    pub fn labeled(&self) -> impl Iterator<Item = (Interval, &BTreeSet<VarName>)> {
        self.labels.iter().map(|(i, s)| (*i, s))
    }

    pub fn labeled_count(&self) -> usize {
        self.labels.len()
    }
}

impl fmt::Debug for IntervalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_model(self))
    }
}

/// Parses the line format:
///
/// ```text
/// points: <N>
/// interval <a> <b> : <var> <var> ...
/// ```
pub fn parse_model(text: &str) -> Result<IntervalModel, ModelError> {
    let malformed = |line: usize, message: String| ModelError::Malformed { line, message };
    let mut model: Option<IntervalModel> = None;
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("points:") {
            if model.is_some() {
                return Err(malformed(line_no, "duplicate points line".into()));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| malformed(line_no, format!("bad point count {:?}", rest.trim())))?;
            model = Some(IntervalModel::new(n).map_err(|e| malformed(line_no, e.to_string()))?);
        } else if let Some(rest) = line.strip_prefix("interval") {
            let m = model
                .as_mut()
                .ok_or_else(|| malformed(line_no, "interval line before points line".into()))?;
            let (ends, vars) = rest
                .split_once(':')
                .ok_or_else(|| malformed(line_no, "missing ':'".into()))?;
            let ends: Vec<&str> = ends.split_whitespace().collect();
            if ends.len() != 2 {
                return Err(malformed(line_no, "expected two endpoints".into()));
            }
            let parse_end = |s: &str| s.parse::<usize>().map_err(|_| malformed(line_no, format!("bad endpoint {s:?}")));
            let (a, b) = (parse_end(ends[0])?, parse_end(ends[1])?);
            let i = Interval::new(a, b).map_err(|e| malformed(line_no, e.to_string()))?;
            m.validate(i).map_err(|e| malformed(line_no, e.to_string()))?;
            if !seen.insert(i) {
                return Err(malformed(line_no, format!("duplicate interval {i}")));
            }
            let vars = vars
                .split_whitespace()
                .map(|v| VarName::new(v).map_err(|e| malformed(line_no, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            m.set_labels(i, vars).expect("validated");
        } else {
            return Err(malformed(line_no, format!("unrecognized line {line:?}")));
        }
    }
    model.ok_or_else(|| malformed(0, "missing points line".into()))
}

pub fn print_model(m: &IntervalModel) -> String {
    let mut out = format!("points: {}\n", m.points);
    for (i, vars) in &m.labels {
        out.push_str(&format!("interval {} {} :", i.a, i.b));
        for v in vars {
            out.push(' ');
            out.push_str(v.as_str());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn v(s: &str) -> VarName {
        VarName::new(s).unwrap()
    }

    #[test]
    fn leaves_have_no_proper_subintervals() {
        assert!(proper_subintervals(iv(3, 3)).is_empty());
    }

    #[test]
    fn small_proper_subintervals() {
        assert_eq!(proper_subintervals(iv(0, 1)), vec![iv(0, 0), iv(1, 1)]);
        let subs = proper_subintervals(iv(0, 2));
        assert_eq!(subs, vec![iv(0, 0), iv(1, 1), iv(2, 2), iv(0, 1), iv(1, 2)]);
        for len in 0..8 {
            assert_eq!(proper_subintervals(iv(2, 2 + len)).len(), len * (len + 3) / 2);
        }
    }

    #[test]
    fn grid_indexing_round_trips() {
        for base in [iv(0, 0), iv(0, 5), iv(3, 9)] {
            let grid = IntervalGrid::new(base);
            let all: Vec<Interval> = grid.intervals().collect();
            assert_eq!(all.len(), grid.count());
            for (k, i) in all.iter().enumerate() {
                assert_eq!(grid.index(*i), k);
                assert_eq!(grid.interval(k), *i);
            }
        }
    }

    #[test]
    fn set_and_get_labels() {
        let mut m = IntervalModel::new(5).unwrap();
        m.set_labels(iv(2, 4), [v("p"), v("e")]).unwrap();
        assert_eq!(m.get_labels(iv(2, 4)).unwrap(), [v("e"), v("p")].into_iter().collect());
        assert!(m.get_labels(iv(0, 1)).unwrap().is_empty());
        assert!(matches!(m.set_labels(iv(2, 5), [v("p")]), Err(ModelError::OutOfRange { .. })));
        m.set_labels(iv(2, 4), []).unwrap();
        assert_eq!(m.labeled_count(), 0);
    }

    #[test]
    fn parse_minimal_and_errors() {
        let m = parse_model("points: 1").unwrap();
        assert_eq!(m.points(), 1);
        assert_eq!(m.labeled_count(), 0);
        assert!(parse_model("points: 3\ninterval 2 1 : p").is_err());
        assert!(parse_model("points: 3\ninterval 0 3 : p").is_err());
        assert!(parse_model("points: 3\ninterval 0 1 : p\ninterval 0 1 : q").is_err());
        assert!(parse_model("interval 0 1 : p").is_err());
        assert!(parse_model("points: 0").is_err());
        assert!(parse_model("points: 2\nbogus").is_err());
    }

    #[test]
    fn print_then_parse() {
        let text = "points: 4\ninterval 0 0 : L s0\ninterval 1 3 : p\n";
        let m = parse_model(text).unwrap();
        assert_eq!(print_model(&m), text);
    }
}
