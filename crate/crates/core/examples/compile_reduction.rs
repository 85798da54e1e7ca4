//! Builds the reduction formula of a machine and summarizes its parts.

use subinterval::formula::print_formula;
use subinterval::minsky::parse_machine;
use subinterval::reduction::{compile, Mode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = parse_machine(include_str!("../fixtures/m_plus.mm"))?;
    let compiled = compile(&m, Mode::Repaired);
    println!(
        "{} variables, automaton with {} states",
        compiled.vocabulary.len(),
        compiled.nfa.num_states()
    );
    for c in &compiled.conjuncts {
        println!("{:<14} {:>6} nodes  depth {}", c.name, c.formula.node_count(), c.formula.depth());
    }
    let text = print_formula(&compiled.formula);
    println!("printed formula: {} bytes", text.len());
    Ok(())
}
