//! Builds the model of a halting run and checks the reduction formula on it.

use subinterval::checker::check;
use subinterval::minsky::parse_machine;
use subinterval::model::print_model;
use subinterval::reduction::{compile, Mode};
use subinterval::witness::witness_for;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = parse_machine(include_str!("../fixtures/m_plus.mm"))?;
    let (run, w) = witness_for(&m, 1000, None)?;
    println!("run of {} configurations, n = {}, {} points", run.configs.len(), w.n, w.model.points());
    println!("automaton states on the leaves: {:?}", w.states);
    print!("{}", print_model(&w.model));
    let psi = compile(&m, Mode::Repaired).formula;
    println!("formula holds: {}", check(&w.model, w.model.full(), &psi)?);
    Ok(())
}
