//! Models of `Psi` built from halting runs, and the probe that checks each
//! conjunct of `Psi` on them.

use std::fmt;

use thiserror::Error;

use crate::checker::locate_failure;
use crate::formula::VarName;
use crate::lang::{check_geometry, encode_run, in_la_direct, witness_n, Geometry, GeometryError, Letter, Nfa, Symbol, Word};
use crate::minsky::{MachineRun, MinskyMachine, Outcome};
use crate::model::{Interval, IntervalModel, ModelError};
use crate::reduction::{compile, nfa_state_var, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("machine does not halt within {0} steps")]
    Timeout(usize),
    #[error("machine gets stuck after {0} steps")]
    Stuck(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("word of length {len} is shorter than the shade length {n}")]
    TooShort { len: usize, n: usize },
    #[error("automaton rejects the word")]
    Rejected,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone)]
pub struct WitnessModel {
    pub model: IntervalModel,
    pub word: Word,
    pub n: usize,
    /// Automaton state labeling each leaf.
    pub states: Vec<usize>,
}

fn name(s: &str) -> VarName {
    VarName::new(s).expect("fixed name")
}

/// Labels the leaves with the word, `s0 s1 s2` cyclically, an accepting run
/// of `nfa` (the state before each letter), `L` and `R` at the ends; `p`
/// on every interval of length `n - 2`, with `e` where the left endpoint is
/// even.
pub fn build_model(w: &[Letter], m: &MinskyMachine, n: usize, nfa: &Nfa<Letter>) -> Result<WitnessModel, WitnessError> {
    in_la_direct(w, m).map_err(GeometryError::NotMember)?;
    if !check_geometry(w, m, Geometry::new(n))? {
        return Err(GeometryError::Irregular(format!("word does not have shade length {n}")).into());
    }
    if w.len() < n {
        return Err(WitnessError::TooShort { len: w.len(), n });
    }
    let run = nfa.accepting_run(w).ok_or(WitnessError::Rejected)?;
    let points = w.len();
    let mut model = IntervalModel::new(points)?;
    for (i, letter) in w.iter().enumerate() {
        let mut labels = vec![letter.var(), name(&format!("s{}", i % 3)), nfa_state_var(run[i])];
        if i == 0 {
            labels.push(name("L"));
        }
        if i == points - 1 {
            labels.push(name("R"));
        }
        model.set_labels(Interval::leaf(i), labels)?;
    }
    let m_len = n - 2;
    for a in 0..points - m_len {
        let i = Interval::new(a, a + m_len)?;
        model.add_label(i, name("p"))?;
        if a % 2 == 0 {
            model.add_label(i, name("e"))?;
        }
    }
    Ok(WitnessModel {
        model,
        word: w.to_vec(),
        n,
        states: run[..points].to_vec(),
    })
}

/// Runs the machine and builds the witness of its halting run.
pub fn witness_for(m: &MinskyMachine, max_steps: usize, n: Option<usize>) -> Result<(MachineRun, WitnessModel), WitnessError> {
    let run = m.run(max_steps);
    match run.outcome {
        Outcome::Halted => {}
        Outcome::Timeout => return Err(WitnessError::Timeout(max_steps)),
        Outcome::Stuck => return Err(WitnessError::Stuck(run.configs.len() - 1)),
    }
    let n = n.unwrap_or_else(|| witness_n(&run));
    let w = encode_run(&run, n)?;
    let nfa = crate::lang::build_nfa(m);
    let witness = build_model(&w, m, n, &nfa)?;
    Ok((run, witness))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeLine {
    pub conjunct: String,
    /// `None` when the conjunct holds.
    pub failure: Option<Interval>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub mode: Mode,
    pub n: usize,
    pub points: usize,
    pub lines: Vec<ProbeLine>,
}

impl ProbeReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.failure.is_none())
    }

    pub fn line(&self, conjunct: &str) -> Option<&ProbeLine> {
        self.lines.iter().find(|l| l.conjunct == conjunct)
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            match l.failure {
                None => writeln!(f, "conjunct {}: PASS", l.conjunct)?,
                Some(i) => writeln!(f, "conjunct {}: FAIL at {} {}", l.conjunct, i.a(), i.b())?,
            }
        }
        Ok(())
    }
}

/// Checks every top-level conjunct of `Psi` on the witness of `m`.
pub fn probe(m: &MinskyMachine, mode: Mode, max_steps: usize) -> Result<ProbeReport, WitnessError> {
    let (_, witness) = witness_for(m, max_steps, None)?;
    let compiled = compile(m, mode);
    let model = &witness.model;
    let mut lines = Vec::with_capacity(compiled.conjuncts.len());
    for c in &compiled.conjuncts {
        lines.push(ProbeLine {
            conjunct: c.name.clone(),
            failure: locate_failure(model, model.full(), &c.formula)?,
        });
    }
    Ok(ProbeReport {
        mode,
        n: witness.n,
        points: model.points(),
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minsky::parse_machine;

    fn plus() -> MinskyMachine {
        parse_machine(
            "states: q0 q1 qf\ninitial: q0\nfinal: qf\n\
             rule: q0 Z Z -> q1 inc keep\nrule: q1 P Z -> qf inc keep\n",
        )
        .unwrap()
    }

    #[test]
    fn witness_shape() {
        let (run, w) = witness_for(&plus(), 100, None).unwrap();
        assert_eq!(run.configs.len(), 3);
        assert_eq!(w.n, 6);
        assert_eq!(w.model.points(), 2 * 5 + 1);
        let p = name("p");
        let clouds: Vec<Interval> = w.model.labeled().filter(|(_, ls)| ls.contains(&p)).map(|(i, _)| i).collect();
        assert_eq!(clouds.len(), w.model.points() - (w.n - 2));
        assert!(clouds.iter().all(|i| i.len() == 4));
        let first = w.model.get_labels(Interval::leaf(0)).unwrap();
        for l in ["L", "s0", "st_q0", "nq0"] {
            assert!(first.contains(&name(l)), "{l}");
        }
    }

    #[test]
    fn report_format() {
        let r = ProbeReport {
            mode: Mode::Verbatim,
            n: 6,
            points: 11,
            lines: vec![
                ProbeLine {
                    conjunct: "cloud.1".into(),
                    failure: None,
                },
                ProbeLine {
                    conjunct: "length.2c".into(),
                    failure: Some(Interval::new(1, 9).unwrap()),
                },
            ],
        };
        assert_eq!(r.to_string(), "conjunct cloud.1: PASS\nconjunct length.2c: FAIL at 1 9\n");
        assert!(!r.all_pass());
    }

    #[test]
    fn non_halting_machines_have_no_witness() {
        let inf = parse_machine("states: q0 qf\ninitial: q0\nfinal: qf\nrule: q0 Z Z -> q0 keep keep").unwrap();
        assert_eq!(witness_for(&inf, 50, None).unwrap_err(), WitnessError::Timeout(50));
        let stuck = parse_machine("states: q0 qf\ninitial: q0\nfinal: qf\n").unwrap();
        assert_eq!(witness_for(&stuck, 50, None).unwrap_err(), WitnessError::Stuck(0));
    }
}
