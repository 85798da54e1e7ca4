//! A small conflict-driven DPLL solver: two watched literals for unit
//! propagation, first-UIP clause learning and non-chronological
//! backtracking. Branching always picks the lowest unassigned variable and
//! tries `true` first, so answers are reproducible.

use super::{Assignment, ClauseList};

const UNASSIGNED: i8 = -1;
const NO_REASON: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Assignment),
    Unsat,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match self {
            SolveResult::Sat(a) => Some(a),
            SolveResult::Unsat => None,
        }
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct SolverStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
}

// Literal encoding: variable v (0-based) positive = 2v, negative = 2v + 1.
fn lit_of(dimacs: i32) -> u32 {
    let v = dimacs.unsigned_abs() - 1;
    2 * v + u32::from(dimacs < 0)
}

fn var_of(lit: u32) -> usize {
    (lit >> 1) as usize
}

pub struct Solver {
    num_vars: usize,
    lits: Vec<u32>,
    starts: Vec<usize>,
    lens: Vec<u32>,
    watches: Vec<Vec<u32>>,
    values: Vec<i8>,
    levels: Vec<u32>,
    reasons: Vec<u32>,
    trail: Vec<u32>,
    trail_lim: Vec<usize>,
    qhead: usize,
    cursor: usize,
    seen: Vec<bool>,
    unsat: bool,
    pub stats: SolverStats,
}

impl Solver {
    pub fn new(num_vars: usize) -> Self {
        Solver {
            num_vars,
            lits: Vec::new(),
            starts: Vec::new(),
            lens: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            values: vec![UNASSIGNED; num_vars],
            levels: vec![0; num_vars],
            reasons: vec![NO_REASON; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            cursor: 0,
            seen: vec![false; num_vars],
            unsat: false,
            stats: SolverStats::default(),
        }
    }

    pub fn from_clauses(num_vars: usize, clauses: &ClauseList) -> Self {
        let mut solver = Solver::new(num_vars);
        for clause in clauses.iter() {
            solver.add_clause(clause);
        }
        solver
    }

    fn value(&self, lit: u32) -> i8 {
        let v = self.values[var_of(lit)];
        if v == UNASSIGNED {
            UNASSIGNED
        } else {
            v ^ (lit & 1) as i8
        }
    }

    fn level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, lit: u32, reason: u32) {
        let v = var_of(lit);
        self.values[v] = 1 ^ (lit & 1) as i8;
        self.levels[v] = self.level();
        self.reasons[v] = reason;
        self.trail.push(lit);
    }

    /// Adds a clause of DIMACS literals. Must be called at decision level 0.
    pub fn add_clause(&mut self, clause: &[i32]) {
        if self.unsat {
            return;
        }
        debug_assert!(self.trail_lim.is_empty());
        let mut lits: Vec<u32> = clause.iter().map(|&l| lit_of(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return;
        }
        // Drop literals already false at level 0; a true literal satisfies it.
        if lits.iter().any(|&l| self.value(l) == 1) {
            return;
        }
        lits.retain(|&l| self.value(l) != 0);
        match lits.len() {
            0 => self.unsat = true,
            1 => {
                self.enqueue(lits[0], NO_REASON);
                if self.propagate().is_some() {
                    self.unsat = true;
                }
            }
            _ => {
                self.attach(&lits);
            }
        }
    }

    fn attach(&mut self, lits: &[u32]) -> u32 {
        let id = self.starts.len() as u32;
        self.starts.push(self.lits.len());
        self.lens.push(lits.len() as u32);
        self.lits.extend_from_slice(lits);
        self.watches[(lits[0] ^ 1) as usize].push(id);
        self.watches[(lits[1] ^ 1) as usize].push(id);
        id
    }

    /// Returns a conflicting clause, if any.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let lit = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            // Clauses watching ~lit live in watches[lit].
            let false_lit = lit ^ 1;
            let mut watchers = std::mem::take(&mut self.watches[lit as usize]);
            let mut i = 0;
            let mut conflict = None;
            while i < watchers.len() {
                let cid = watchers[i];
                let start = self.starts[cid as usize];
                let len = self.lens[cid as usize] as usize;
                if self.lits[start] == false_lit {
                    self.lits.swap(start, start + 1);
                }
                let other = self.lits[start];
                if self.value(other) == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..len {
                    let cand = self.lits[start + k];
                    if self.value(cand) != 0 {
                        self.lits.swap(start + 1, start + k);
                        self.watches[(cand ^ 1) as usize].push(cid);
                        watchers.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if self.value(other) == 0 {
                    conflict = Some(cid);
                    break;
                }
                self.enqueue(other, cid);
                i += 1;
            }
            let restored = std::mem::replace(&mut self.watches[lit as usize], watchers);
            self.watches[lit as usize].extend(restored);
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn backtrack(&mut self, level: u32) {
        if self.level() <= level {
            return;
        }
        let keep = self.trail_lim[level as usize];
        for &lit in &self.trail[keep..] {
            let v = var_of(lit);
            self.values[v] = UNASSIGNED;
            self.reasons[v] = NO_REASON;
            self.cursor = self.cursor.min(v);
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(level as usize);
        self.qhead = keep;
    }

    /// First-UIP learning. Returns the learnt clause (asserting literal
    /// first) and the level to jump back to.
    fn analyze(&mut self, conflict: u32) -> (Vec<u32>, u32) {
        let mut learnt = vec![0u32];
        let mut pending = 0;
        let mut clause = conflict;
        let mut index = self.trail.len();
        let mut pivot: Option<u32> = None;
        let current = self.level();
        loop {
            let start = self.starts[clause as usize];
            let len = self.lens[clause as usize] as usize;
            for k in 0..len {
                let q = self.lits[start + k];
                if Some(q) == pivot {
                    continue;
                }
                let v = var_of(q);
                if !self.seen[v] && self.levels[v] > 0 {
                    self.seen[v] = true;
                    if self.levels[v] >= current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[var_of(self.trail[index])] {
                    break;
                }
            }
            let p = self.trail[index];
            let v = var_of(p);
            self.seen[v] = false;
            pending -= 1;
            if pending == 0 {
                learnt[0] = p ^ 1;
                break;
            }
            pivot = Some(p);
            clause = self.reasons[v];
        }
        for &q in &learnt[1..] {
            self.seen[var_of(q)] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.levels[var_of(learnt[k])] > self.levels[var_of(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            back = self.levels[var_of(learnt[1])];
        }
        (learnt, back)
    }

    fn decide(&mut self) -> bool {
        while self.cursor < self.num_vars && self.values[self.cursor] != UNASSIGNED {
            self.cursor += 1;
        }
        if self.cursor == self.num_vars {
            return false;
        }
        self.stats.decisions += 1;
        self.trail_lim.push(self.trail.len());
        self.enqueue(2 * self.cursor as u32, NO_REASON);
        true
    }

    pub fn solve(&mut self) -> SolveResult {
        if self.unsat {
            return SolveResult::Unsat;
        }
        loop {
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                if self.level() == 0 {
                    self.unsat = true;
                    return SolveResult::Unsat;
                }
                let (learnt, back) = self.analyze(conflict);
                self.backtrack(back);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let id = self.attach(&learnt);
                    self.enqueue(learnt[0], id);
                }
            } else if !self.decide() {
                let values = self.values.iter().map(|&v| Some(v == 1)).collect();
                let result = SolveResult::Sat(Assignment::from_values(values));
                self.backtrack(0);
                return result;
            }
        }
    }
}

/// Solves a clause list over variables `1..=num_vars`.
pub fn solve_clauses(num_vars: usize, clauses: &ClauseList) -> SolveResult {
    Solver::from_clauses(num_vars, clauses).solve()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(clauses: &[&[i32]]) -> ClauseList {
        let mut l = ClauseList::default();
        for c in clauses {
            l.push(c);
        }
        l
    }

    #[test]
    fn contradictory_units() {
        assert_eq!(solve_clauses(1, &list(&[&[1], &[-1]])), SolveResult::Unsat);
    }

    #[test]
    fn unit_propagation() {
        let r = solve_clauses(2, &list(&[&[1, 2], &[-1]]));
        let a = r.assignment().unwrap();
        assert_eq!(a.get(2), Some(true));
        assert_eq!(a.get(1), Some(false));
    }

    #[test]
    fn true_first_lowest_index() {
        let r = solve_clauses(3, &list(&[&[1, 2, 3]]));
        let a = r.assignment().unwrap();
        assert_eq!((a.get(1), a.get(2), a.get(3)), (Some(true), Some(true), Some(true)));
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p(i, h) = 2 * i + h + 1
        let p = |i: i32, h: i32| 2 * i + h + 1;
        let mut clauses = ClauseList::default();
        for i in 0..3 {
            clauses.push(&[p(i, 0), p(i, 1)]);
        }
        for h in 0..2 {
            for i in 0..3 {
                for j in (i + 1)..3 {
                    clauses.push(&[-p(i, h), -p(j, h)]);
                }
            }
        }
        assert_eq!(solve_clauses(6, &clauses), SolveResult::Unsat);
    }

    #[test]
    fn empty_clause() {
        assert_eq!(solve_clauses(1, &list(&[&[]])), SolveResult::Unsat);
        assert!(solve_clauses(0, &list(&[])).is_sat());
    }
}
