//! Searches for the smallest model of a formula, with and without pins.

use subinterval::formula::{parse_formula, VarName};
use subinterval::model::{print_model, Interval};
use subinterval::sat::{sat_search, Pinning};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // some leaf carries p, and so does every two-leaf interval
    let f = parse_formula("<D> ([D] false & p) & [D] ([D][D] false & <D> true -> p)")?;
    let vocabulary = f.variables();
    match sat_search(&f, 1, 6, &Pinning::new(), &vocabulary)? {
        Some((n, model)) => print!("smallest model has {n} points:\n{}", print_model(&model)),
        None => println!("no model up to 6 points"),
    }

    let pins = Pinning::new()
        .with(Interval::leaf(0), VarName::new("p")?, false)?
        .with(Interval::leaf(1), VarName::new("p")?, false)?;
    match sat_search(&f, 2, 2, &pins, &vocabulary)? {
        Some((_, model)) => print!("pinned:\n{}", print_model(&model)),
        None => println!("pinned: UNSAT at 2 points"),
    }
    Ok(())
}
