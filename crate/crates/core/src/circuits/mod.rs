//! Boolean expressions compiled into glider circuits, and the two-bit adder.

mod adder;
mod compile;
mod expr;

pub use adder::{build_adder, operand_assignment, Adder, ADDER_GAP, EQUATIONS};
pub use compile::{
    compile, compile_str, compile_towards, estimate_response, evaluate, Circuit, CircuitError,
    PlacedGate, ResponseEstimate, Wire, EDGE_SEARCH, GLIDER_SPACING,
};
pub use expr::{binarize, orient, xor_disjunctive, Expr, Oriented, OrientedNode, ParseError};
