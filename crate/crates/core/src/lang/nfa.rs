use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use crate::formula::VarName;

/// A letter that can be written into a model as a propositional variable.
pub trait Symbol: Clone + Eq + Hash + Ord + Debug {
    fn var(&self) -> VarName;
}

impl Symbol for VarName {
    fn var(&self) -> VarName {
        self.clone()
    }
}

/// Nondeterministic automaton with states `0..num_states`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa<S> {
    num_states: usize,
    initial: Vec<usize>,
    finals: Vec<bool>,
    // sorted by (source, symbol, target)
    transitions: Vec<(usize, S, usize)>,
}

impl<S: Symbol> Nfa<S> {
    pub fn new(
        num_states: usize,
        initial: impl IntoIterator<Item = usize>,
        finals: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, S, usize)>,
    ) -> Self {
        let mut initial: Vec<usize> = initial.into_iter().collect();
        initial.sort_unstable();
        initial.dedup();
        let mut is_final = vec![false; num_states];
        for q in finals {
            is_final[q] = true;
        }
        let mut transitions: Vec<(usize, S, usize)> = transitions.into_iter().collect();
        transitions.sort();
        transitions.dedup();
        assert!(initial.iter().all(|&q| q < num_states));
        assert!(transitions.iter().all(|(p, _, q)| *p < num_states && *q < num_states));
        Nfa {
            num_states,
            initial,
            finals: is_final,
            transitions,
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states).filter(|&q| self.finals[q])
    }

    pub fn transitions(&self) -> &[(usize, S, usize)] {
        &self.transitions
    }

    fn by_source(&self) -> Vec<&[(usize, S, usize)]> {
        let mut out = Vec::with_capacity(self.num_states);
        let mut i = 0;
        for q in 0..self.num_states {
            let start = i;
            while i < self.transitions.len() && self.transitions[i].0 == q {
                i += 1;
            }
            out.push(&self.transitions[start..i]);
        }
        out
    }

    /// Subset simulation.
    pub fn accepts(&self, word: &[S]) -> bool {
        let rows = self.by_source();
        let mut current: BTreeSet<usize> = self.initial.iter().copied().collect();
        for a in word {
            let mut next = BTreeSet::new();
            for &q in &current {
                let row = rows[q];
                let lo = row.partition_point(|(_, b, _)| b < a);
                next.extend(row[lo..].iter().take_while(|(_, b, _)| b == a).map(|(_, _, t)| *t));
            }
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        current.iter().any(|&q| self.finals[q])
    }

    /// The states visited by the lexicographically least accepting run
    /// (comparing state numbers position by position), or `None`.
    pub fn accepting_run(&self, word: &[S]) -> Option<Vec<usize>> {
        let rows = self.by_source();
        // alive[i][q]: from q, the suffix word[i..] can be accepted
        let mut alive = vec![vec![false; self.num_states]; word.len() + 1];
        alive[word.len()].clone_from(&self.finals);
        for i in (0..word.len()).rev() {
            for q in 0..self.num_states {
                alive[i][q] = rows[q]
                    .iter()
                    .any(|(_, b, t)| *b == word[i] && alive[i + 1][*t]);
            }
        }
        let mut q = *self.initial.iter().find(|&&q| alive[0][q])?;
        let mut run = vec![q];
        for (i, a) in word.iter().enumerate() {
            q = rows[q]
                .iter()
                .filter(|(_, b, t)| b == a && alive[i + 1][*t])
                .map(|(_, _, t)| *t)
                .min()
                .expect("alive state has a live successor");
            run.push(q);
        }
        Some(run)
    }

    /// Keeps the states that are reachable from an initial state and can
    /// reach a final one, renumbered in their original order. An automaton
    /// with an empty language becomes one initial, non-final state.
    pub fn trim(&self) -> Nfa<S> {
        let mut forward = vec![false; self.num_states];
        let mut stack: Vec<usize> = self.initial.clone();
        for &q in &stack {
            forward[q] = true;
        }
        let rows = self.by_source();
        while let Some(q) = stack.pop() {
            for (_, _, t) in rows[q] {
                if !forward[*t] {
                    forward[*t] = true;
                    stack.push(*t);
                }
            }
        }
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); self.num_states];
        for (p, _, q) in &self.transitions {
            preds[*q].push(*p);
        }
        let mut backward = self.finals.clone();
        let mut stack: Vec<usize> = (0..self.num_states).filter(|&q| backward[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !backward[p] {
                    backward[p] = true;
                    stack.push(p);
                }
            }
        }
        let keep: Vec<bool> = (0..self.num_states).map(|q| forward[q] && backward[q]).collect();
        if !self.initial.iter().any(|&q| keep[q]) {
            return Nfa::new(1, [0], [], []);
        }
        let mut renumber = HashMap::new();
        for q in (0..self.num_states).filter(|&q| keep[q]) {
            let next = renumber.len();
            renumber.insert(q, next);
        }
        Nfa::new(
            renumber.len(),
            self.initial.iter().filter_map(|q| renumber.get(q).copied()),
            (0..self.num_states).filter(|&q| keep[q] && self.finals[q]).map(|q| renumber[&q]),
            self.transitions
                .iter()
                .filter(|(p, _, q)| keep[*p] && keep[*q])
                .map(|(p, a, q)| (renumber[p], a.clone(), renumber[q])),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VarName {
        VarName::new(s).unwrap()
    }

    /// Words over {a, b} whose second-to-last letter is a.
    fn second_last_a() -> Nfa<VarName> {
        Nfa::new(
            3,
            [0],
            [2],
            [(0, v("a"), 0), (0, v("b"), 0), (0, v("a"), 1), (1, v("a"), 2), (1, v("b"), 2)],
        )
    }

    #[test]
    fn membership() {
        let n = second_last_a();
        let w = |s: &str| s.chars().map(|c| v(&c.to_string())).collect::<Vec<_>>();
        assert!(n.accepts(&w("ab")));
        assert!(n.accepts(&w("bbaa")));
        assert!(!n.accepts(&w("ba")));
        assert!(!n.accepts(&w("")));
        assert_eq!(n.accepting_run(&w("aab")), Some(vec![0, 0, 1, 2]));
        assert_eq!(n.accepting_run(&w("bb")), None);
    }

    #[test]
    fn trimming() {
        let n = Nfa::new(4, [0], [1], [(0, v("a"), 1), (0, v("b"), 2), (3, v("a"), 1)]);
        let t = n.trim();
        assert_eq!(t.num_states(), 2);
        assert_eq!(t.transitions().len(), 1);
        let empty = Nfa::new(2, [0], [], [(0, v("a"), 1)]).trim();
        assert_eq!(empty.num_states(), 1);
        assert!(empty.transitions().is_empty());
        assert!(!empty.accepts(&[]));
    }
}
