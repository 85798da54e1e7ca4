//! Truth of formulas at intervals of a finite model.
//!
//! [`check`] evaluates every distinct subformula bottom-up over all
//! sub-intervals of the target interval, shortest first. `<D> phi` at
//! `[a, b]` is true iff `phi` or `<D> phi` holds at `[a+1, b]` or `[a, b-1]`,
//! which covers exactly the proper sub-intervals. [`check_naive`] follows
//! the semantic rules literally and is kept as an independent oracle.

use std::collections::HashMap;

use crate::formula::{Formula, FormulaDag, NodeId, NodeKind, VarName};
use crate::model::{proper_subintervals, Interval, IntervalGrid, IntervalModel, ModelError};

/// Truth table of every subformula at every sub-interval of `base`.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub value: bool,
    table: Evaluation,
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    dag: FormulaDag,
    grid: IntervalGrid,
    values: Vec<Vec<bool>>,
}

impl Evaluation {
    pub fn new(model: &IntervalModel, base: Interval, f: &Formula) -> Result<Self, ModelError> {
        model.validate(base)?;
        let dag = FormulaDag::new(f);
        let grid = IntervalGrid::new(base);
        let count = grid.count();
        let intervals: Vec<Interval> = grid.intervals().collect();
        let width = base.len() + 1;

        let mut var_rows: HashMap<&VarName, Vec<bool>> = HashMap::new();
        for (i, vars) in model.labeled() {
            if !base.contains(&i) {
                continue;
            }
            let k = grid.index(i);
            for v in vars {
                var_rows.entry(v).or_insert_with(|| vec![false; count])[k] = true;
            }
        }
        let mut values: Vec<Vec<bool>> = Vec::with_capacity(dag.len());
        for node in dag.nodes() {
            let row: Vec<bool> = match &node.kind {
                NodeKind::True => vec![true; count],
                NodeKind::False => vec![false; count],
                NodeKind::Var(v) => var_rows.get(v).cloned().unwrap_or_else(|| vec![false; count]),
                NodeKind::Not(x) => values[*x].iter().map(|v| !v).collect(),
                NodeKind::And(l, r) => zip(&values[*l], &values[*r], |a, b| a && b),
                NodeKind::Or(l, r) => zip(&values[*l], &values[*r], |a, b| a || b),
                NodeKind::Implies(l, r) => zip(&values[*l], &values[*r], |a, b| !a || b),
                NodeKind::Iff(l, r) => zip(&values[*l], &values[*r], |a, b| a == b),
                NodeKind::DiamondD(x) => sweep(&values[*x], &intervals, width, false),
                NodeKind::BoxD(x) => sweep(&values[*x], &intervals, width, true),
            };
            values.push(row);
        }
        Ok(Evaluation { dag, grid, values })
    }

    pub fn dag(&self) -> &FormulaDag {
        &self.dag
    }

    pub fn base(&self) -> Interval {
        self.grid.base()
    }

    pub fn root_value(&self) -> bool {
        self.value(self.dag.root(), self.base())
    }

    /// Value of a node at an interval inside the base interval.
    pub fn value(&self, node: NodeId, i: Interval) -> bool {
        assert!(self.base().contains(&i), "{i} outside {}", self.base());
        self.values[node][self.grid.index(i)]
    }

    /// Intervals inside the base where the node is false, shortest first.
    pub fn falsifying(&self, node: NodeId) -> impl Iterator<Item = Interval> + '_ {
        self.grid
            .intervals()
            .zip(self.values[node].iter())
            .filter(|(_, v)| !**v)
            .map(|(i, _)| i)
    }
}

fn zip(l: &[bool], r: &[bool], op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    l.iter().zip(r).map(|(a, b)| op(*a, *b)).collect()
}

/// `<D>` (or `[D]` when `universal`) over the grid ordered by length.
fn sweep(child: &[bool], intervals: &[Interval], width: usize, universal: bool) -> Vec<bool> {
    let mut out = vec![universal; child.len()];
    for (k, i) in intervals.iter().enumerate().skip(width) {
        let len = i.len();
        // index of [a, b-1] and [a+1, b] in the previous length class
        let left = k - (width - len + 1);
        let right = left + 1;
        out[k] = if universal {
            child[left] && child[right] && out[left] && out[right]
        } else {
            child[left] || child[right] || out[left] || out[right]
        };
    }
    out
}

impl CheckResult {
    pub fn table(&self) -> &Evaluation {
        &self.table
    }
}

/// Evaluates `f` at `i` and keeps the full truth table.
pub fn evaluate(model: &IntervalModel, i: Interval, f: &Formula) -> Result<CheckResult, ModelError> {
    let table = Evaluation::new(model, i, f)?;
    Ok(CheckResult {
        value: table.root_value(),
        table,
    })
}

/// Decides `model, i |= f`.
pub fn check(model: &IntervalModel, i: Interval, f: &Formula) -> Result<bool, ModelError> {
    Ok(Evaluation::new(model, i, f)?.root_value())
}

/// Direct recursion over the semantic rules, no memoization. Exponential;
/// meant for small models and shallow formulas.
pub fn check_naive(model: &IntervalModel, i: Interval, f: &Formula) -> Result<bool, ModelError> {
    model.validate(i)?;
    Ok(naive(model, i, f))
}

fn naive(model: &IntervalModel, i: Interval, f: &Formula) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Var(v) => model.has(i, v),
        Formula::Not(x) => !naive(model, i, x),
        Formula::And(l, r) => naive(model, i, l) && naive(model, i, r),
        Formula::Or(l, r) => naive(model, i, l) || naive(model, i, r),
        Formula::Implies(l, r) => !naive(model, i, l) || naive(model, i, r),
        Formula::Iff(l, r) => naive(model, i, l) == naive(model, i, r),
        Formula::DiamondD(x) => proper_subintervals(i).into_iter().any(|j| naive(model, j, x)),
        Formula::BoxD(x) => proper_subintervals(i).into_iter().all(|j| naive(model, j, x)),
    }
}

/// For a formula false at `base`, finds an interval that explains the
/// failure: the shortest interval violating the body of a `[G]`/`[D]`
/// formula, descending through conjunctions; `base` otherwise.
pub fn locate_failure(model: &IntervalModel, base: Interval, f: &Formula) -> Result<Option<Interval>, ModelError> {
    let eval = Evaluation::new(model, base, f)?;
    if eval.root_value() {
        return Ok(None);
    }
    Ok(Some(locate(&eval, f, base)))
}

fn locate(eval: &Evaluation, f: &Formula, at: Interval) -> Interval {
    let node = |g: &Formula| eval.dag().find(g).expect("subformula of the evaluated formula");
    if let Some(body) = f.as_globally() {
        let id = node(body);
        return at
            .subintervals()
            .find(|j| !eval.value(id, *j))
            .expect("a [G] formula fails somewhere");
    }
    match f {
        Formula::BoxD(body) => {
            let id = node(body);
            at.subintervals()
                .filter(|j| *j != at)
                .find(|j| !eval.value(id, *j))
                .expect("a [D] formula fails at a proper sub-interval")
        }
        Formula::And(l, r) => {
            if !eval.value(node(l), at) {
                locate(eval, l, at)
            } else {
                locate(eval, r, at)
            }
        }
        _ => at,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{exactly_one_of, parse_formula};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn v(s: &str) -> VarName {
        VarName::new(s).unwrap()
    }

    #[test]
    fn leaves() {
        let m = IntervalModel::new(3).unwrap();
        for a in 0..3 {
            assert!(check(&m, iv(a, a), &f("[D] false")).unwrap());
            assert!(!check(&m, iv(a, a), &f("<D> true")).unwrap());
        }
    }

    #[test]
    fn nested_diamonds() {
        let mut m = IntervalModel::new(3).unwrap();
        m.set_labels(iv(1, 1), [v("p")]).unwrap();
        // [1,1] is inside [0,1] and [1,2], both proper sub-intervals of [0,2].
        let expected_dd = check_naive(&m, iv(0, 2), &f("<D><D> p")).unwrap();
        assert!(expected_dd);
        assert_eq!(check(&m, iv(0, 2), &f("<D><D> p")).unwrap(), expected_dd);
        assert!(check(&m, iv(0, 2), &f("<D> p")).unwrap());
        assert!(!check(&m, iv(0, 1), &f("<D><D> p")).unwrap());
    }

    #[test]
    fn box_of_false_on_non_leaf() {
        let m = IntervalModel::new(4).unwrap();
        assert!(!check(&m, iv(0, 2), &f("~<D>~false")).unwrap());
        assert!(!check_naive(&m, iv(0, 2), &f("~<D>~false")).unwrap());
        assert!(check_naive(&m, iv(1, 3), &f("true")).unwrap());
    }

    #[test]
    fn exactly_one_of_at_leaf() {
        let mut m = IntervalModel::new(1).unwrap();
        m.set_labels(iv(0, 0), [v("a"), v("b")]).unwrap();
        let e = exactly_one_of(&[v("a"), v("b"), v("c")]).unwrap();
        assert!(!check(&m, iv(0, 0), &e).unwrap());
        m.set_labels(iv(0, 0), [v("b")]).unwrap();
        assert!(check(&m, iv(0, 0), &e).unwrap());
    }

    #[test]
    fn out_of_range() {
        let m = IntervalModel::new(2).unwrap();
        assert!(check(&m, iv(0, 2), &f("true")).is_err());
        assert!(check_naive(&m, iv(2, 2), &f("true")).is_err());
    }

    #[test]
    fn evaluation_on_a_subinterval_ignores_outside_labels() {
        let mut m = IntervalModel::new(5).unwrap();
        m.set_labels(iv(0, 0), [v("p")]).unwrap();
        assert!(!check(&m, iv(1, 4), &f("<D> p")).unwrap());
        assert!(check(&m, iv(0, 4), &f("<D> p")).unwrap());
    }

    #[test]
    fn failure_location() {
        let mut m = IntervalModel::new(4).unwrap();
        m.set_labels(iv(1, 2), [v("q")]).unwrap();
        let g = f("[G] ~q");
        assert_eq!(locate_failure(&m, m.full(), &g).unwrap(), Some(iv(1, 2)));
        assert_eq!(locate_failure(&m, m.full(), &f("[D] ~q & true")).unwrap(), Some(iv(1, 2)));
        assert_eq!(locate_failure(&m, m.full(), &f("q")).unwrap(), Some(iv(0, 3)));
        assert_eq!(locate_failure(&m, m.full(), &f("~q")).unwrap(), None);
    }
}
