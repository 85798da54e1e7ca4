//! Model checking, bounded satisfiability and a two-counter-machine
//! reduction for the sub-interval (`D`) fragment of Halpern–Shoham interval
//! logic over finite discrete orders.

pub mod checker;
pub mod formula;
pub mod lang;
pub mod minsky;
pub mod model;
pub mod reduction;
pub mod sat;
pub mod witness;
