use std::collections::HashMap;

use super::{Assignment, ClauseList, Pinning, SatError, SolveResult, Solver};
use crate::formula::{Formula, FormulaDag, NodeId, NodeKind, VarName};
use crate::model::{Interval, IntervalGrid, IntervalModel};

/// CNF for "some labeling over the vocabulary satisfies the formula at
/// `[0, N-1]`".
///
/// Variables `1..=|intervals| * |vocabulary|` are the labeling, ordered by
/// interval (length, then left endpoint) and then by vocabulary position.
/// The next variable is the constant `true`; definition variables of the
/// Tseitin translation follow.
#[derive(Debug, Clone)]
pub struct CnfInstance {
    num_vars: usize,
    clauses: ClauseList,
    grid: IntervalGrid,
    vocabulary: Vec<VarName>,
    vocab_index: HashMap<VarName, usize>,
    dag: FormulaDag,
    // literal of (node, interval) at node * intervals + grid index
    definitions: Vec<i32>,
    true_var: i32,
}

struct Encoder {
    next_var: i32,
    clauses: ClauseList,
    t: i32,
}

impl Encoder {
    fn fresh(&mut self) -> i32 {
        self.next_var += 1;
        self.next_var
    }

    /// Literal equivalent to the conjunction of `lits`.
    fn and(&mut self, mut lits: Vec<i32>) -> i32 {
        let t = self.t;
        if lits.contains(&-t) {
            return -t;
        }
        lits.retain(|&l| l != t);
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == -w[1]) || lits.iter().any(|l| lits.contains(&-l)) {
            return -t;
        }
        match lits.len() {
            0 => t,
            1 => lits[0],
            _ => {
                let d = self.fresh();
                let mut long = vec![d];
                for &l in &lits {
                    self.clauses.push(&[-d, l]);
                    long.push(-l);
                }
                self.clauses.push(&long);
                d
            }
        }
    }

    fn or(&mut self, lits: Vec<i32>) -> i32 {
        -self.and(lits.into_iter().map(|l| -l).collect())
    }

    fn iff(&mut self, l: i32, r: i32) -> i32 {
        let t = self.t;
        if l == r {
            return t;
        }
        if l == -r {
            return -t;
        }
        if l == t {
            return r;
        }
        if l == -t {
            return -r;
        }
        if r == t {
            return l;
        }
        if r == -t {
            return -l;
        }
        let d = self.fresh();
        self.clauses.push(&[-d, -l, r]);
        self.clauses.push(&[-d, l, -r]);
        self.clauses.push(&[d, l, r]);
        self.clauses.push(&[d, -l, -r]);
        d
    }
}

/// Translates `f` at `[0, points-1]` with the given pins into CNF.
///
/// `<D> psi` at `[a, b]` is defined as the disjunction of `psi` and
/// `<D> psi` at `[a+1, b]` and `[a, b-1]`, which is equivalent to the
/// disjunction of `psi` over all proper sub-intervals.
pub fn encode(f: &Formula, points: usize, pins: &Pinning, vocabulary: &[VarName]) -> Result<CnfInstance, SatError> {
    if points == 0 {
        return Err(SatError::NoPoints);
    }
    let mut vocab: Vec<VarName> = Vec::new();
    let mut vocab_index = HashMap::new();
    for v in vocabulary {
        if !vocab_index.contains_key(v) {
            vocab_index.insert(v.clone(), vocab.len());
            vocab.push(v.clone());
        }
    }
    let dag = FormulaDag::new(f);
    for node in dag.nodes() {
        if let NodeKind::Var(v) = &node.kind {
            if !vocab_index.contains_key(v) {
                return Err(SatError::VariableOutsideVocabulary(v.clone()));
            }
        }
    }
    let full = Interval::new(0, points - 1).expect("points >= 1");
    let grid = IntervalGrid::new(full);
    let count = grid.count();
    for (interval, var, _) in pins.iter() {
        if !full.contains(&interval) {
            return Err(SatError::PinOutOfRange {
                interval,
                var: var.clone(),
                points,
            });
        }
        if !vocab_index.contains_key(var) {
            return Err(SatError::PinOutsideVocabulary(var.clone()));
        }
    }

    let width = vocab.len();
    let labeling_vars = (count * width) as i32;
    let t = labeling_vars + 1;
    let mut enc = Encoder {
        next_var: t,
        clauses: ClauseList::default(),
        t,
    };
    enc.clauses.push(&[t]);

    let intervals: Vec<Interval> = grid.intervals().collect();
    let mut definitions = vec![0i32; dag.len() * count];
    for (id, node) in dag.nodes().iter().enumerate() {
        for (k, interval) in intervals.iter().enumerate() {
            let at = |n: NodeId, kk: usize| definitions[n * count + kk];
            let lit = match &node.kind {
                NodeKind::True => t,
                NodeKind::False => -t,
                NodeKind::Var(v) => (k * width + vocab_index[v] + 1) as i32,
                NodeKind::Not(x) => -at(*x, k),
                NodeKind::And(l, r) => {
                    let lits = vec![at(*l, k), at(*r, k)];
                    enc.and(lits)
                }
                NodeKind::Or(l, r) => {
                    let lits = vec![at(*l, k), at(*r, k)];
                    enc.or(lits)
                }
                NodeKind::Implies(l, r) => {
                    let lits = vec![-at(*l, k), at(*r, k)];
                    enc.or(lits)
                }
                NodeKind::Iff(l, r) => {
                    let (l, r) = (at(*l, k), at(*r, k));
                    enc.iff(l, r)
                }
                NodeKind::DiamondD(x) | NodeKind::BoxD(x) => {
                    let universal = matches!(node.kind, NodeKind::BoxD(_));
                    if interval.is_leaf() {
                        if universal {
                            t
                        } else {
                            -t
                        }
                    } else {
                        let left = k - (points - interval.len() + 1);
                        let right = left + 1;
                        let lits = vec![at(*x, left), at(*x, right), at(id, left), at(id, right)];
                        if universal {
                            enc.and(lits)
                        } else {
                            enc.or(lits)
                        }
                    }
                }
            };
            definitions[id * count + k] = lit;
        }
    }
    let root = definitions[dag.root() * count + grid.index(full)];
    enc.clauses.push(&[root]);
    for (interval, var, value) in pins.iter() {
        let v = (grid.index(interval) * width + vocab_index[var] + 1) as i32;
        enc.clauses.push(&[if value { v } else { -v }]);
    }
    Ok(CnfInstance {
        num_vars: enc.next_var as usize,
        clauses: enc.clauses,
        grid,
        vocabulary: vocab,
        vocab_index,
        dag,
        definitions,
        true_var: t,
    })
}

impl CnfInstance {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &ClauseList {
        &self.clauses
    }

    pub fn add_clause(&mut self, clause: &[i32]) {
        self.clauses.push(clause);
    }

    pub fn points(&self) -> usize {
        self.grid.base().b() + 1
    }

    pub fn vocabulary(&self) -> &[VarName] {
        &self.vocabulary
    }

    pub fn dag(&self) -> &FormulaDag {
        &self.dag
    }

    pub fn true_var(&self) -> usize {
        self.true_var as usize
    }

    /// The labeling variable for `var` at `interval`.
    pub fn label_var(&self, interval: Interval, var: &VarName) -> Option<usize> {
        let j = *self.vocab_index.get(var)?;
        if !self.grid.base().contains(&interval) {
            return None;
        }
        Some(self.grid.index(interval) * self.vocabulary.len() + j + 1)
    }

    /// The literal standing for a subformula (dag node) at an interval.
    pub fn definition(&self, node: NodeId, interval: Interval) -> i32 {
        self.definitions[node * self.grid.count() + self.grid.index(interval)]
    }

    pub fn solve(&self) -> SolveResult {
        Solver::from_clauses(self.num_vars, &self.clauses).solve()
    }
}

/// Reads the labeling back out of a total assignment.
pub fn decode(assignment: &Assignment, cnf: &CnfInstance) -> Result<IntervalModel, SatError> {
    let mut model = IntervalModel::new(cnf.points())?;
    for interval in cnf.grid.intervals() {
        let mut labels = Vec::new();
        for var in &cnf.vocabulary {
            let index = cnf.label_var(interval, var).expect("in range");
            match assignment.get(index) {
                Some(true) => labels.push(var.clone()),
                Some(false) => {}
                None => return Err(SatError::PartialAssignment(index)),
            }
        }
        model.set_labels(interval, labels)?;
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::{check, check_naive};
    use crate::formula::parse_formula;
    use crate::sat::sat_search;

    fn v(s: &str) -> VarName {
        VarName::new(s).unwrap()
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn single_variable_single_point() {
        let cnf = encode(&f("p"), 1, &Pinning::new(), &[v("p")]).unwrap();
        let SolveResult::Sat(a) = cnf.solve() else { panic!() };
        let m = decode(&a, &cnf).unwrap();
        assert!(m.has(Interval::leaf(0), &v("p")));
    }

    #[test]
    fn contradiction_is_unsat_everywhere() {
        for n in 1..5 {
            let cnf = encode(&f("p & ~p"), n, &Pinning::new(), &[v("p")]).unwrap();
            assert_eq!(cnf.solve(), SolveResult::Unsat);
        }
    }

    #[test]
    fn leaf_cannot_see_anything() {
        let g = f("<D> p & [D] ~p");
        // Oracle: both labelings of the single leaf.
        let mut any = false;
        for labeled in [false, true] {
            let mut m = IntervalModel::new(1).unwrap();
            if labeled {
                m.set_labels(Interval::leaf(0), [v("p")]).unwrap();
            }
            any |= check_naive(&m, m.full(), &g).unwrap();
        }
        assert!(!any);
        let cnf = encode(&g, 1, &Pinning::new(), &[v("p")]).unwrap();
        assert_eq!(cnf.solve(), SolveResult::Unsat);
    }

    #[test]
    fn all_false_decodes_to_empty_model() {
        let cnf = encode(&f("p | q"), 3, &Pinning::new(), &[v("p"), v("q")]).unwrap();
        let m = decode(&Assignment::all_false(cnf.num_vars()), &cnf).unwrap();
        assert_eq!(m.labeled_count(), 0);
        let partial = Assignment::from_values(vec![Some(false); 3]);
        assert!(matches!(decode(&partial, &cnf), Err(SatError::PartialAssignment(_))));
    }

    #[test]
    fn pins_are_honored() {
        let pins = Pinning::new()
            .with(Interval::leaf(1), v("q"), true)
            .unwrap()
            .with(Interval::new(0, 2).unwrap(), v("p"), false)
            .unwrap();
        let g = f("p | <D> q");
        let (n, m) = sat_search(&g, 3, 3, &pins, &[v("p"), v("q")]).unwrap().unwrap();
        assert_eq!(n, 3);
        assert!(m.has(Interval::leaf(1), &v("q")));
        assert!(!m.has(m.full(), &v("p")));
        assert!(check(&m, m.full(), &g).unwrap());
    }

    #[test]
    fn encode_errors() {
        assert!(matches!(
            encode(&f("p"), 2, &Pinning::new(), &[]),
            Err(SatError::VariableOutsideVocabulary(_))
        ));
        let out = Pinning::new().with(Interval::leaf(5), v("p"), true).unwrap();
        assert!(matches!(
            encode(&f("p"), 2, &out, &[v("p")]),
            Err(SatError::PinOutOfRange { .. })
        ));
        let foreign = Pinning::new().with(Interval::leaf(0), v("z"), true).unwrap();
        assert!(matches!(
            encode(&f("p"), 2, &foreign, &[v("p")]),
            Err(SatError::PinOutsideVocabulary(_))
        ));
        assert!(matches!(encode(&f("p"), 0, &Pinning::new(), &[v("p")]), Err(SatError::NoPoints)));
    }

    #[test]
    fn search_finds_smallest_size() {
        let (n, m) = sat_search(&f("<D><D> true"), 1, 6, &Pinning::new(), &[]).unwrap().unwrap();
        assert_eq!(n, 3);
        assert!(check(&m, m.full(), &f("<D><D> true")).unwrap());
        assert_eq!(sat_search(&f("false"), 1, 5, &Pinning::new(), &[]).unwrap(), None);
    }

    #[test]
    fn varmap_is_injective() {
        let g = f("[G] (p -> <D> q)");
        let cnf = encode(&g, 4, &Pinning::new(), &[v("p"), v("q")]).unwrap();
        let mut seen = std::collections::HashSet::new();
        for i in cnf.grid.intervals() {
            for var in cnf.vocabulary() {
                assert!(seen.insert(cnf.label_var(i, var).unwrap()));
            }
        }
        assert!(cnf.clauses().max_var() <= cnf.num_vars());
        let root = cnf.dag().root();
        assert_ne!(cnf.definition(root, Interval::new(0, 3).unwrap()), 0);
    }
}
