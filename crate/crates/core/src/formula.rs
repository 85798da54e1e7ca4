//! Formulas of the sub-interval fragment: variables, boolean connectives and
//! the `<D>` / `[D]` modalities. `[G] phi` is not a node of its own; it is
//! expanded to `phi & [D] phi` when built or parsed.

mod dag;
mod parse;
mod print;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use dag::{FormulaDag, Node, NodeId, NodeKind};
pub use parse::parse_formula;
pub use print::print_formula;

/// A propositional variable name, `[A-Za-z_][A-Za-z0-9_']*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("exactly_one_of needs at least one variable")]
    EmptySet,
    #[error("exactly_one_of got {0} twice")]
    Duplicate(VarName),
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

impl VarName {
    pub fn new(token: &str) -> Result<Self, FormulaError> {
        if is_identifier(token) && token != "true" && token != "false" {
            Ok(VarName(Arc::from(token)))
        } else {
            Err(FormulaError::InvalidName(token.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(token: &str) -> bool {
    let mut chars = token.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An immutable formula tree. Children are shared through `Arc`, so cloning
/// is cheap and large generated formulas reuse identical pieces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Var(VarName),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Iff(Arc<Formula>, Arc<Formula>),
    DiamondD(Arc<Formula>),
    BoxD(Arc<Formula>),
}

impl Formula {
    pub fn var(name: &VarName) -> Formula {
        Formula::Var(name.clone())
    }

    /// Shorthand for tests and generators; panics on an invalid name.
    pub fn atom(name: &str) -> Formula {
        Formula::Var(VarName::new(name).expect("valid variable name"))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Arc::new(l), Arc::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Arc::new(l), Arc::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Arc::new(l), Arc::new(r))
    }

    pub fn diamond(f: Formula) -> Formula {
        Formula::DiamondD(Arc::new(f))
    }

    pub fn boxd(f: Formula) -> Formula {
        Formula::BoxD(Arc::new(f))
    }

    /// `[G] f`, i.e. `f & [D] f`.
    pub fn globally(f: Formula) -> Formula {
        let shared = Arc::new(f);
        Formula::And(shared.clone(), Arc::new(Formula::BoxD(shared)))
    }

    /// Conjunction of all items as a balanced tree (`true` when empty).
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        balanced(items.into_iter().collect(), Formula::True, Formula::and)
    }

    /// Disjunction of all items as a balanced tree (`false` when empty).
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        balanced(items.into_iter().collect(), Formula::False, Formula::or)
    }

    /// If this is `phi & [D] phi`, returns `phi`.
    pub fn as_globally(&self) -> Option<&Formula> {
        match self {
            Formula::And(l, r) => match r.as_ref() {
                Formula::BoxD(inner) if inner == l => Some(l),
                _ => None,
            },
            _ => None,
        }
    }

    /// Number of nodes of the tree, counting shared children once per use.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Var(_) => 1,
            Formula::Not(x) | Formula::DiamondD(x) | Formula::BoxD(x) => 1 + x.node_count(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                1 + l.node_count() + r.node_count()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Var(_) => 0,
            Formula::Not(x) | Formula::DiamondD(x) | Formula::BoxD(x) => 1 + x.depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    /// Sorted set of variables occurring in the formula.
    pub fn variables(&self) -> Vec<VarName> {
        let dag = FormulaDag::new(self);
        let mut vars: Vec<VarName> = dag
            .nodes()
            .iter()
            .filter_map(|n| match &n.kind {
                NodeKind::Var(v) => Some(v.clone()),
                _ => None,
            })
            .collect();
        vars.sort();
        vars
    }
}

fn balanced(mut items: Vec<Formula>, empty: Formula, join: fn(Formula, Formula) -> Formula) -> Formula {
    match items.len() {
        0 => empty,
        1 => items.pop().unwrap(),
        len => {
            let right = items.split_off(len / 2);
            join(balanced(items, empty.clone(), join), balanced(right, empty, join))
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

/// `OR_{x in X} (x & AND_{x' != x} ~x')`, disjuncts in input order.
///
/// Each inner conjunction is assembled from shared blocks covering the
/// ranges left and right of `x`, so the result has `O(|X| log |X|)` distinct
/// subformulas instead of `|X|^2`.
pub fn exactly_one_of(vars: &[VarName]) -> Result<Formula, FormulaError> {
    if vars.is_empty() {
        return Err(FormulaError::EmptySet);
    }
    let mut seen = std::collections::HashSet::new();
    for v in vars {
        if !seen.insert(v) {
            return Err(FormulaError::Duplicate(v.clone()));
        }
    }
    let negated: Vec<Formula> = vars.iter().map(|v| Formula::not(Formula::var(v))).collect();
    let blocks = NegationBlocks::new(&negated);
    let disjuncts = vars.iter().enumerate().map(|(i, v)| {
        let mut parts = Vec::new();
        blocks.cover(0, i, &mut parts);
        blocks.cover(i + 1, vars.len(), &mut parts);
        if parts.is_empty() {
            Formula::var(v)
        } else {
            Formula::and(Formula::var(v), Formula::conj(parts))
        }
    });
    Ok(Formula::disj(disjuncts))
}

/// Segment tree of conjunctions over a slice of negated variables.
struct NegationBlocks {
    len: usize,
    nodes: std::collections::HashMap<(usize, usize), Formula>,
}

impl NegationBlocks {
    fn new(items: &[Formula]) -> Self {
        let mut blocks = NegationBlocks {
            len: items.len(),
            nodes: Default::default(),
        };
        blocks.build(items, 0, items.len());
        blocks
    }

    fn build(&mut self, items: &[Formula], lo: usize, hi: usize) -> Formula {
        let f = if hi - lo == 1 {
            items[lo].clone()
        } else {
            let mid = (lo + hi) / 2;
            let l = self.build(items, lo, mid);
            let r = self.build(items, mid, hi);
            Formula::and(l, r)
        };
        self.nodes.insert((lo, hi), f.clone());
        f
    }

    /// Pushes canonical blocks covering `[from, to)` in left-to-right order.
    fn cover(&self, from: usize, to: usize, out: &mut Vec<Formula>) {
        self.cover_in(0, self.len, from, to, out)
    }

    fn cover_in(&self, lo: usize, hi: usize, from: usize, to: usize, out: &mut Vec<Formula>) {
        if to <= lo || hi <= from || from >= to {
            return;
        }
        if from <= lo && hi <= to {
            out.push(self.nodes[&(lo, hi)].clone());
            return;
        }
        let mid = (lo + hi) / 2;
        self.cover_in(lo, mid, from, to, out);
        self.cover_in(mid, hi, from, to, out);
    }
}

/// Distinct subformulas, children before parents, `f` last.
pub fn subformulas(f: &Formula) -> Vec<Formula> {
    FormulaDag::new(f).nodes().iter().map(|n| n.formula.clone()).collect()
}
