//! The formula `Psi` of a two-counter machine: satisfiable in a finite
//! model iff the machine halts. It is the conjunction of four parts:
//!
//! * orientation: leaves carry `s0, s1, s2` cyclically, starting at the
//!   leaf labeled `L` and ending at the leaf labeled `R`;
//! * the automaton part: leaves spell a word of the machine's language,
//!   with an accepting run of [`build_nfa`] written alongside;
//! * the cloud: `p` marks every interval of one fixed length;
//! * the length part: configurations and shades are measured against the
//!   cloud.
//!
//! [`Mode::Verbatim`] emits the length part exactly as in the construction
//! this crate follows; [`Mode::Repaired`] fixes the two conjuncts that
//! reject genuine computations (see [`phi_length`]).

use std::fmt;
use std::str::FromStr;

use crate::formula::{exactly_one_of, Formula, VarName};
use crate::lang::{alphabet, build_nfa, Letter, Mark, Nfa, Symbol};
use crate::minsky::MinskyMachine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    Verbatim,
    #[default]
    Repaired,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Verbatim => "verbatim",
            Mode::Repaired => "repaired",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "verbatim" => Ok(Mode::Verbatim),
            "repaired" => Ok(Mode::Repaired),
            other => Err(format!("unknown variant {other:?}, expected verbatim or repaired")),
        }
    }
}

/// A top-level conjunct of `Psi` with a stable name such as `orient.vi`.
#[derive(Debug, Clone)]
pub struct Conjunct {
    pub name: String,
    pub formula: Formula,
}

fn named(name: &str, formula: Formula) -> Conjunct {
    Conjunct {
        name: name.to_string(),
        formula,
    }
}

fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

fn s(i: usize) -> Formula {
    atom(&format!("s{}", i % 3))
}

fn leaf() -> Formula {
    Formula::boxd(Formula::False)
}

/// At most two leaves.
fn short() -> Formula {
    Formula::boxd(Formula::boxd(Formula::False))
}

fn vars(names: &[&str]) -> Vec<VarName> {
    names.iter().map(|n| VarName::new(n).expect("fixed name")).collect()
}

pub fn nfa_state_var(q: usize) -> VarName {
    VarName::new(&format!("nq{q}")).expect("valid name")
}

pub fn orient_conjuncts() -> Vec<Conjunct> {
    let s012 = Formula::disj([s(0), s(1), s(2)]);
    let one_s = exactly_one_of(&vars(&["s0", "s1", "s2"])).expect("three names");
    vec![
        named(
            "orient.i",
            Formula::boxd(Formula::and(
                Formula::implies(leaf(), one_s),
                Formula::implies(s012, leaf()),
            )),
        ),
        named(
            "orient.ii",
            Formula::boxd(Formula::implies(
                Formula::diamond(Formula::diamond(Formula::True)),
                Formula::conj((0..3).map(|i| Formula::diamond(s(i)))),
            )),
        ),
        named("orient.iii", Formula::boxd(Formula::implies(atom("L"), s(0)))),
        named(
            "orient.iv",
            Formula::and(Formula::diamond(atom("R")), Formula::diamond(atom("L"))),
        ),
        named(
            "orient.v",
            Formula::boxd(Formula::implies(atom("L"), Formula::not(atom("R")))),
        ),
        named(
            "orient.vi",
            Formula::boxd(Formula::implies(
                Formula::and(short(), Formula::diamond(atom("L"))),
                Formula::not(Formula::diamond(s(2))),
            )),
        ),
        named(
            "orient.vii",
            Formula::disj((0..3).map(|i| {
                Formula::boxd(Formula::implies(
                    Formula::and(short(), Formula::diamond(atom("R"))),
                    Formula::not(Formula::diamond(s(i))),
                ))
            })),
        ),
    ]
}

pub fn phi_orient() -> Formula {
    Formula::conj(orient_conjuncts().into_iter().map(|c| c.formula))
}

/// Leaves spell a word of the automaton, read from `L` to `R`. Initial
/// states are joined by a disjunction.
pub fn automaton_conjuncts<S: Symbol>(nfa: &Nfa<S>, sigma: &[S]) -> Vec<Conjunct> {
    let letters: Vec<VarName> = sigma.iter().map(Symbol::var).collect();
    let states: Vec<VarName> = (0..nfa.num_states()).map(nfa_state_var).collect();
    let exactly = |vs: &[VarName]| {
        let any = Formula::disj(vs.iter().map(Formula::var));
        Formula::globally(Formula::and(
            Formula::implies(leaf(), exactly_one_of(vs).expect("non-empty, distinct")),
            Formula::implies(any, leaf()),
        ))
    };
    let q = |i: usize| Formula::var(&states[i]);
    let mut out = vec![named("automaton.1", exactly(&letters)), named("automaton.2", exactly(&states))];
    for i in 0..3 {
        let steps = nfa.transitions().iter().map(|(from, a, to)| {
            Formula::and(
                Formula::diamond(Formula::conj([s(i), q(*from), Formula::var(&a.var())])),
                Formula::diamond(Formula::and(s(i + 1), q(*to))),
            )
        });
        out.push(named(
            &format!("automaton.3.{i}"),
            Formula::globally(Formula::implies(
                Formula::conj([short(), Formula::diamond(s(i)), Formula::diamond(s(i + 1))]),
                Formula::disj(steps),
            )),
        ));
    }
    let ends = nfa
        .transitions()
        .iter()
        .filter(|(_, _, to)| nfa.is_final(*to))
        .map(|(from, a, _)| Formula::and(q(*from), Formula::var(&a.var())));
    out.push(named(
        "automaton.4",
        Formula::globally(Formula::implies(atom("R"), Formula::disj(ends))),
    ));
    out.push(named(
        "automaton.5",
        Formula::globally(Formula::implies(atom("L"), Formula::disj(nfa.initial().iter().map(|&i| q(i))))),
    ));
    out
}

pub fn psi_automaton<S: Symbol>(nfa: &Nfa<S>, sigma: &[S]) -> Formula {
    Formula::conj(automaton_conjuncts(nfa, sigma).into_iter().map(|c| c.formula))
}

pub fn cloud_conjuncts() -> Vec<Conjunct> {
    let p = atom("p");
    let e = atom("e");
    vec![
        named("cloud.1", Formula::diamond(p.clone())),
        named(
            "cloud.2",
            Formula::boxd(Formula::implies(p.clone(), Formula::boxd(Formula::not(p.clone())))),
        ),
        named(
            "cloud.3",
            Formula::globally(Formula::implies(
                Formula::diamond(p.clone()),
                Formula::and(
                    Formula::diamond(Formula::and(p.clone(), e.clone())),
                    Formula::diamond(Formula::and(p, Formula::not(e))),
                ),
            )),
        ),
    ]
}

pub fn phi_cloud() -> Formula {
    Formula::conj(cloud_conjuncts().into_iter().map(|c| c.formula))
}

/// One group of subset tokens: the letters carrying its counter, interior
/// and shadow token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub left: Vec<Letter>,
    pub interior: Vec<Letter>,
    pub right: Vec<Letter>,
}

/// The four triples, for groups `f`, `f'`, `s`, `s'` in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSet {
    pub triples: Vec<Triple>,
}

impl TripleSet {
    pub fn new(sigma: &[Letter]) -> Self {
        let pick = |g: usize, mark: Mark| -> Vec<Letter> {
            sigma
                .iter()
                .filter(|l| l.subset().is_some_and(|s| s.has(g, mark)))
                .cloned()
                .collect()
        };
        TripleSet {
            triples: (0..4)
                .map(|g| Triple {
                    left: pick(g, Mark::Left),
                    interior: pick(g, Mark::Interior),
                    right: pick(g, Mark::Right),
                })
                .collect(),
        }
    }
}

fn any_of(letters: &[Letter]) -> Formula {
    Formula::disj(letters.iter().map(|l| Formula::var(&l.var())))
}

/// Measures configurations and shades against the cloud.
///
/// In [`Mode::Repaired`] the "no state seen" conjunct ranges over primed
/// and unprimed states, and the "whole shade seen" conjunct only applies
/// to intervals that also see an interior letter of the shade, while
/// intervals of at most three leaves may not see both shade ends.
pub fn length_conjuncts(m: &MinskyMachine, mode: Mode) -> Vec<Conjunct> {
    let sigma = alphabet(m);
    let unprimed: Vec<Formula> = m.states().iter().map(|q| Formula::var(&Letter::state(q, false).var())).collect();
    let primed: Vec<Formula> = m.states().iter().map(|q| Formula::var(&Letter::state(q, true).var())).collect();
    let p = atom("p");
    let no_p = Formula::and(Formula::not(p.clone()), Formula::boxd(Formula::not(p.clone())));

    let pairs = unprimed.iter().flat_map(|q| {
        primed.iter().map(|qp| {
            Formula::implies(
                Formula::and(Formula::diamond(q.clone()), Formula::diamond(qp.clone())),
                Formula::diamond(p.clone()),
            )
        })
    });
    let one_c = Formula::globally(Formula::conj(pairs.collect::<Vec<_>>()));

    let unseen: Vec<Formula> = match mode {
        Mode::Verbatim => unprimed.clone(),
        Mode::Repaired => unprimed.iter().chain(&primed).cloned().collect(),
    };
    let two_c = Formula::globally(Formula::implies(
        Formula::conj(unseen.into_iter().map(|q| Formula::boxd(Formula::not(q)))),
        no_p.clone(),
    ));

    let triples = TripleSet::new(&sigma).triples;
    let ends = |t: &Triple| Formula::and(Formula::diamond(any_of(&t.left)), Formula::diamond(any_of(&t.right)));
    let one_s = match mode {
        Mode::Verbatim => Formula::globally(Formula::conj(
            triples
                .iter()
                .map(|t| Formula::implies(ends(t), Formula::diamond(p.clone())))
                .collect::<Vec<_>>(),
        )),
        Mode::Repaired => Formula::conj(
            triples
                .iter()
                .map(|t| {
                    let seen = Formula::and(ends(t), Formula::diamond(any_of(&t.interior)));
                    let tiny = Formula::boxd(short());
                    Formula::and(
                        Formula::globally(Formula::implies(seen, Formula::diamond(p.clone()))),
                        Formula::globally(Formula::implies(Formula::and(tiny, ends(t)), Formula::False)),
                    )
                })
                .collect::<Vec<_>>(),
        ),
    };
    let two_s = Formula::globally(Formula::conj(
        triples
            .iter()
            .map(|t| {
                let border: Vec<Letter> = t.left.iter().chain(&t.right).cloned().collect();
                Formula::implies(
                    Formula::and(
                        Formula::diamond(any_of(&t.interior)),
                        Formula::not(Formula::diamond(any_of(&border))),
                    ),
                    no_p.clone(),
                )
            })
            .collect::<Vec<_>>(),
    ));
    vec![
        named("length.1c", one_c),
        named("length.2c", two_c),
        named("length.1s", one_s),
        named("length.2s", two_s),
    ]
}

pub fn phi_length(m: &MinskyMachine, mode: Mode) -> Formula {
    Formula::conj(length_conjuncts(m, mode).into_iter().map(|c| c.formula))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Role {
    Orientation,
    Cloud,
    Letter(Letter),
    NfaState(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Orientation => f.write_str("orientation"),
            Role::Cloud => f.write_str("cloud"),
            Role::Letter(Letter::State { .. }) => f.write_str("state-letter"),
            Role::Letter(Letter::Subset(_)) => f.write_str("subset-letter"),
            Role::NfaState(q) => write!(f, "automaton-state {q}"),
        }
    }
}

/// Every variable of `Psi` with its role, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    pub entries: Vec<(VarName, Role)>,
}

impl Vocabulary {
    pub fn new(sigma: &[Letter], nfa_states: usize) -> Self {
        let mut entries: Vec<(VarName, Role)> = Vec::new();
        for v in vars(&["L", "R", "s0", "s1", "s2"]) {
            entries.push((v, Role::Orientation));
        }
        for v in vars(&["p", "e"]) {
            entries.push((v, Role::Cloud));
        }
        for l in sigma {
            entries.push((l.var(), Role::Letter(l.clone())));
        }
        for q in 0..nfa_states {
            entries.push((nfa_state_var(q), Role::NfaState(q)));
        }
        Vocabulary { entries }
    }

    pub fn vars(&self) -> Vec<VarName> {
        self.entries.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `<var> <role>` per line.
    pub fn manifest(&self) -> String {
        self.entries.iter().map(|(v, r)| format!("{v} {r}\n")).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Compiled {
    pub formula: Formula,
    pub conjuncts: Vec<Conjunct>,
    pub vocabulary: Vocabulary,
    pub nfa: Nfa<Letter>,
    pub mode: Mode,
}

pub fn compile(m: &MinskyMachine, mode: Mode) -> Compiled {
    let sigma = alphabet(m);
    let nfa = build_nfa(m);
    let mut conjuncts = orient_conjuncts();
    conjuncts.extend(automaton_conjuncts(&nfa, &sigma));
    conjuncts.extend(cloud_conjuncts());
    conjuncts.extend(length_conjuncts(m, mode));
    Compiled {
        formula: Formula::conj(conjuncts.iter().map(|c| c.formula.clone())),
        vocabulary: Vocabulary::new(&sigma, nfa.num_states()),
        conjuncts,
        nfa,
        mode,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::check;
    use crate::formula::print_formula;
    use crate::minsky::parse_machine;
    use crate::model::{Interval, IntervalModel};
    use std::collections::BTreeSet;

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn leaves(labels: &[&[&str]]) -> IntervalModel {
        let mut m = IntervalModel::new(labels.len()).unwrap();
        for (i, ls) in labels.iter().enumerate() {
            m.set_labels(Interval::leaf(i), vars(ls)).unwrap();
        }
        m
    }

    #[test]
    fn orientation_examples() {
        let good = leaves(&[&["L", "s0"], &["s1"], &["s2"], &["s0", "R"]]);
        assert!(check(&good, good.full(), &phi_orient()).unwrap());
        let doubled = leaves(&[&["L", "s0", "s1"], &["s1"], &["s2"], &["s0", "R"]]);
        let conj = orient_conjuncts();
        assert!(!check(&doubled, doubled.full(), &conj[0].formula).unwrap());
        let twisted = leaves(&[&["L", "s0"], &["s2"], &["s1"], &["s0", "R"]]);
        assert!(!check(&twisted, twisted.full(), &conj[5].formula).unwrap());
        assert_eq!(conj[5].name, "orient.vi");
    }

    #[test]
    fn cloud_examples() {
        let mut m = IntervalModel::new(5).unwrap();
        for a in 0..3 {
            let mut ls = vars(&["p"]);
            if a % 2 == 0 {
                ls.extend(vars(&["e"]));
            }
            m.set_labels(iv(a, a + 2), ls).unwrap();
        }
        assert!(check(&m, m.full(), &phi_cloud()).unwrap());
        let c = cloud_conjuncts();
        let mut nested = IntervalModel::new(5).unwrap();
        nested.set_labels(iv(0, 1), vars(&["p"])).unwrap();
        nested.set_labels(iv(0, 2), vars(&["p"])).unwrap();
        assert!(!check(&nested, nested.full(), &c[1].formula).unwrap());
        let mut lone = IntervalModel::new(5).unwrap();
        lone.set_labels(iv(0, 1), vars(&["p"])).unwrap();
        assert!(check(&lone, lone.full(), &c[1].formula).unwrap());
        assert!(!check(&lone, lone.full(), &c[2].formula).unwrap());
    }

    #[test]
    fn triples_are_disjoint() {
        let m = parse_machine("states: q0 qf\ninitial: q0\nfinal: qf\n").unwrap();
        let t = TripleSet::new(&alphabet(&m));
        assert_eq!(t.triples.len(), 4);
        for tr in &t.triples {
            let l: BTreeSet<_> = tr.left.iter().collect();
            let i: BTreeSet<_> = tr.interior.iter().collect();
            let r: BTreeSet<_> = tr.right.iter().collect();
            assert_eq!((l.len(), i.len(), r.len()), (64, 64, 64));
            assert!(l.is_disjoint(&i) && l.is_disjoint(&r) && i.is_disjoint(&r));
        }
    }

    #[test]
    fn compile_is_closed_and_deterministic() {
        let m = parse_machine(
            "states: q0 q1 qf\ninitial: q0\nfinal: qf\n\
             rule: q0 Z Z -> q1 inc keep\nrule: q1 P Z -> qf inc keep\n",
        )
        .unwrap();
        let a = compile(&m, Mode::Repaired);
        let b = compile(&m, Mode::Repaired);
        assert_eq!(print_formula(&a.formula), print_formula(&b.formula));
        let declared: BTreeSet<VarName> = a.vocabulary.vars().into_iter().collect();
        assert_eq!(declared.len(), a.vocabulary.len());
        assert_eq!(a.vocabulary.len(), 7 + alphabet(&m).len() + a.nfa.num_states());
        assert!(a.formula.variables().iter().all(|v| declared.contains(v)));
        assert_eq!(a.conjuncts.len(), 7 + 7 + 3 + 4);
        assert_eq!("verbatim".parse::<Mode>(), Ok(Mode::Verbatim));
        assert!("other".parse::<Mode>().is_err());
    }
}
