//! Runs the bundled two-counter machines.

use subinterval::minsky::parse_machine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let machines = [
        ("m_plus", include_str!("../fixtures/m_plus.mm")),
        ("m_minus", include_str!("../fixtures/m_minus.mm")),
        ("m_inf", include_str!("../fixtures/m_inf.mm")),
    ];
    for (name, text) in machines {
        let m = parse_machine(text)?;
        let run = m.run(20);
        let configs: Vec<String> = run.configs.iter().take(6).map(ToString::to_string).collect();
        println!("{name}: {:?} after {} steps: {}", run.outcome, run.configs.len() - 1, configs.join(" "));
    }
    Ok(())
}
