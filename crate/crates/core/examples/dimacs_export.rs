//! Writes a bounded instance as DIMACS, solves the parsed clauses and maps
//! the assignment back to a model.

use subinterval::checker::check;
use subinterval::formula::parse_formula;
use subinterval::model::print_model;
use subinterval::sat::{decode, encode, export_dimacs, parse_dimacs, solve_clauses, Pinning};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_formula("<D> p & <D> ~p & [D] (p -> [D] false)")?;
    let cnf = encode(&f, 3, &Pinning::new(), &f.variables())?;
    let text = export_dimacs(&cnf);
    println!("{}", text.lines().next().unwrap_or_default());

    let (num_vars, clauses) = parse_dimacs(&text)?;
    let result = solve_clauses(num_vars, &clauses);
    let assignment = result.assignment().ok_or("unsatisfiable")?;
    let model = decode(assignment, &cnf)?;
    print!("{}", print_model(&model));
    println!("formula holds: {}", check(&model, model.full(), &f)?);
    Ok(())
}
