//! Lays a run out as a word, checks it both ways, and reads it back.

use subinterval::lang::{build_nfa, check_geometry, decode_word, encode_run, in_la_direct, print_word, Geometry};
use subinterval::minsky::parse_machine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = parse_machine(include_str!("../fixtures/m_minus.mm"))?;
    let run = m.run(100);
    let w = encode_run(&run, 6)?;
    println!("{} letters: {}", w.len(), print_word(&w).replace('\n', " "));

    let nfa = build_nfa(&m);
    println!("automaton: {} states, {} transitions", nfa.num_states(), nfa.transitions().len());
    println!("direct: {:?}, automaton accepts: {}", in_la_direct(&w, &m), nfa.accepts(&w));
    println!("geometry n=6: {:?}", check_geometry(&w, &m, Geometry::new(6))?);
    println!("decodes to the run: {}", decode_word(&w, &m)? == run);

    let mut broken = w.clone();
    broken.swap(1, 2);
    match in_la_direct(&broken, &m) {
        Ok(()) => println!("swapped letters 1 and 2: still a member"),
        Err(v) => println!("swapped letters 1 and 2: {v}"),
    }
    println!("automaton on the swapped word: {}", nfa.accepts(&broken));
    Ok(())
}
