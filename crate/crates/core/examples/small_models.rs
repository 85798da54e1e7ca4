//! Asks the solver for small models of the reduction formula and reads the
//! leaves back as a word.

use subinterval::formula::VarName;
use subinterval::lang::{alphabet, decode_word, print_word, Symbol};
use subinterval::minsky::parse_machine;
use subinterval::model::Interval;
use subinterval::reduction::{compile, Mode};
use subinterval::sat::{sat_search, Pinning};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = parse_machine(include_str!("../fixtures/m_plus.mm"))?;
    let compiled = compile(&m, Mode::Repaired);
    let sigma = alphabet(&m);
    let left = VarName::new("L")?;
    let mut from = 4;
    while from <= 11 {
        let Some((n, model)) = sat_search(&compiled.formula, from, 11, &Pinning::new(), &compiled.vocabulary.vars())? else {
            break;
        };
        let mut order: Vec<usize> = (0..n).collect();
        if !model.has(Interval::leaf(0), &left) {
            order.reverse();
        }
        let word: Vec<_> = order
            .iter()
            .filter_map(|&i| sigma.iter().find(|x| model.has(Interval::leaf(i), &x.var())).cloned())
            .collect();
        println!("{n} points: {}", print_word(&word).replace('\n', " "));
        let configs: Vec<String> = decode_word(&word, &m)?.configs.iter().map(ToString::to_string).collect();
        println!("  run {}", configs.join(" "));
        from = n + 1;
    }
    Ok(())
}
