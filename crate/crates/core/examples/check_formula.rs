//! Evaluates formulas on a hand-built model and finds where one fails.

use subinterval::checker::{check, locate_failure};
use subinterval::formula::{parse_formula, VarName};
use subinterval::model::{print_model, Interval, IntervalModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = VarName::new("p")?;
    let mut model = IntervalModel::new(4)?;
    for a in 0..3 {
        model.add_label(Interval::new(a, a + 1)?, p.clone())?;
    }
    model.add_label(Interval::leaf(2), p.clone())?;
    print!("{}", print_model(&model));

    for text in ["<D> p", "[D] (<D> p -> ~p)", "[G] ([D][D] false -> p)"] {
        let f = parse_formula(text)?;
        let value = check(&model, model.full(), &f)?;
        match locate_failure(&model, model.full(), &f)? {
            Some(i) => println!("{text}: {value} (fails at {i})"),
            None => println!("{text}: {value}"),
        }
    }
    Ok(())
}
