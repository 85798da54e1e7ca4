//! Checks each conjunct of both formula variants on the witness models.

use subinterval::minsky::parse_machine;
use subinterval::reduction::Mode;
use subinterval::witness::probe;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let machines = [
        ("m_plus", include_str!("../fixtures/m_plus.mm")),
        ("m_minus", include_str!("../fixtures/m_minus.mm")),
    ];
    for (name, text) in machines {
        let m = parse_machine(text)?;
        for mode in [Mode::Repaired, Mode::Verbatim] {
            let report = probe(&m, mode, 1000)?;
            let failing: Vec<String> = report
                .lines
                .iter()
                .filter_map(|l| l.failure.map(|i| format!("{} at {i}", l.conjunct)))
                .collect();
            println!("{name} {mode}: {} conjuncts, failing: {failing:?}", report.lines.len());
        }
    }
    Ok(())
}
