use std::collections::BTreeMap;

use thiserror::Error;

use super::expr::{binarize, orient, Expr, Oriented, OrientedNode, ParseError};
use crate::components::layout::{GateRecord, Producer};
use crate::components::sidecar::Record;
use crate::components::{tweak_len, Block, GateKind, LayoutError, Outcome, PROBE_WINDOW};
use crate::engine::{Bounds, Cell, Heading, Universe};
use crate::patterns::rle;

/// Along-lane shifts tried per gate, each strictly below this in
/// magnitude, when the default placement does not validate.
pub const EDGE_SEARCH: u32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no value for variable `{0}`")]
    MissingVariable(String),
    #[error("placement conflict: {0}")]
    PlacementConflict(LayoutError),
    #[error("no phase-valid placement for a {kind} gate: {cause}")]
    AlignmentFailure { kind: GateKind, cause: LayoutError },
}

/// A gate as placed in a circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedGate {
    pub kind: GateKind,
    /// Indices into the circuit's components of the parts this gate added.
    pub components: Vec<usize>,
    pub bounds: Bounds,
}

/// Output of `from` feeds input `slot` of gate `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Wire {
    pub from: Producer,
    pub to: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    /// The binarized expression the layout implements.
    pub expr: Expr,
    pub layout: Block,
    pub gates: Vec<PlacedGate>,
    pub wiring: Vec<Wire>,
    /// Entry cell of every variable instance.
    pub input_cells: Vec<(String, Cell)>,
    pub output_cell: Cell,
    pub output_heading: Heading,
    pub probe_generation: u64,
    pub probe_window: u64,
    pub gun_count: usize,
}

fn gate_bounds(b: &Block, g: &GateRecord) -> Bounds {
    Bounds::of(g.parts.iter().flat_map(|&i| b.parts[i].cells())).expect("gates add parts")
}

impl Circuit {
    fn from_layout(expr: Expr, layout: Block) -> Circuit {
        let gates = layout
            .gates
            .iter()
            .map(|g| PlacedGate {
                kind: g.kind,
                components: g.parts.clone(),
                bounds: gate_bounds(&layout, g),
            })
            .collect();
        let wiring = layout
            .gates
            .iter()
            .enumerate()
            .flat_map(|(to, g)| {
                g.slots
                    .iter()
                    .enumerate()
                    .map(move |(slot, &from)| Wire { from, to, slot })
            })
            .collect();
        let input_cells = layout
            .inputs
            .iter()
            .map(|(v, i)| {
                (
                    v.clone(),
                    layout.parts[*i]
                        .control_cell
                        .expect("inputs carry an entry cell"),
                )
            })
            .collect();
        let detector = &layout.parts[layout.detector.expect("circuits end in a detector")];
        Circuit {
            expr,
            gates,
            wiring,
            input_cells,
            output_cell: detector.control_cell.expect("outputs carry a probe cell"),
            output_heading: layout.output_heading(),
            probe_generation: layout.probe_generation(),
            probe_window: PROBE_WINDOW,
            gun_count: layout.gun_count(),
            layout,
        }
    }

    pub fn variables(&self) -> Vec<String> {
        self.expr.variables()
    }

    pub fn universe(&self) -> Universe {
        self.layout.universe()
    }

    pub fn bounds(&self) -> Bounds {
        self.universe()
            .bounding_box()
            .expect("circuits are not empty")
    }

    pub fn translated(&self, dx: i32, dy: i32) -> Circuit {
        let mut layout = self.layout.clone();
        layout.translate(dx, dy);
        Circuit::from_layout(self.expr.clone(), layout)
    }

    /// Simulates with every instance of each variable set as in
    /// `assignment`.
    pub fn simulate(&self, assignment: &BTreeMap<String, bool>) -> Result<Outcome, CircuitError> {
        if let Some(v) = self
            .variables()
            .into_iter()
            .find(|v| !assignment.contains_key(v))
        {
            return Err(CircuitError::MissingVariable(v));
        }
        Ok(self.layout.simulate(&|v| assignment[v], self.probe_window))
    }

    pub fn to_rle(&self) -> String {
        let u = self.universe();
        let b = self.bounds();
        let cells: Vec<Cell> = u
            .cells()
            .into_iter()
            .map(|c| c.offset(-b.min.x, -b.min.y))
            .collect();
        rle::emit(&cells, &[format!("glidelogic circuit: {}", self.expr)])
    }

    pub fn to_sidecar(&self) -> Record {
        let mut r = Record::new();
        r.push("expr", &self.expr);
        let b = self.bounds();
        r.push("origin", format!("{},{}", b.min.x, b.min.y));
        r.push("probe_generation", self.probe_generation);
        r.push("probe_window", self.probe_window);
        r.push("output_heading", self.output_heading);
        r.push(
            "output_cell",
            format!("{},{}", self.output_cell.x, self.output_cell.y),
        );
        for (v, c) in &self.input_cells {
            r.push("input_cell", format!("{v} {},{}", c.x, c.y));
        }
        r.push("gun_count", self.gun_count);
        self.layout.write_record(&mut r);
        r
    }
}

/// Evaluates `c` by simulation.
pub fn evaluate(c: &Circuit, assignment: &BTreeMap<String, bool>) -> Result<bool, CircuitError> {
    Ok(c.simulate(assignment)?.output)
}

fn layout_error(kind: GateKind, e: LayoutError) -> CircuitError {
    match e {
        LayoutError::BadCrossing(..) | LayoutError::NoAlignment(_) => {
            CircuitError::AlignmentFailure { kind, cause: e }
        }
        other => CircuitError::PlacementConflict(other),
    }
}

/// Places one gate, trying small along-lane shifts (smallest first) until
/// the result validates.
fn place_gate(kind: GateKind, operands: Vec<Block>) -> Result<Block, CircuitError> {
    let mut first_error = None;
    for tweak in crate::components::layout::tweaks(tweak_len(kind), EDGE_SEARCH) {
        let result =
            Block::gate(kind, operands.clone(), &tweak).and_then(|b| b.validate().map(|_| b));
        match result {
            Ok(b) => return Ok(b),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(layout_error(
        kind,
        first_error.expect("the search includes the zero shift"),
    ))
}

fn build(o: &Oriented) -> Result<Block, CircuitError> {
    if o.heading == Heading::SouthWest {
        return Ok(build(&o.mirrored())?.mirrored());
    }
    assert_eq!(
        o.heading,
        Heading::SouthEast,
        "layouts run south-east or south-west"
    );
    match &o.node {
        OrientedNode::Var(v) => Ok(Block::input(v)),
        OrientedNode::Not(x) => place_gate(GateKind::Not, vec![build(x)?]),
        OrientedNode::And(a, b) => place_gate(GateKind::And, vec![build(a)?, build(b)?]),
        OrientedNode::Or(a, b) => place_gate(GateKind::Or, vec![build(a)?, build(b)?]),
    }
}

/// Compiles `e` with its output heading south-east.
pub fn compile(e: &Expr) -> Result<Circuit, CircuitError> {
    compile_towards(e, Heading::SouthEast)
}

/// Compiles `e` so that the output stream travels along `heading`
/// (south-east or south-west).
pub fn compile_towards(e: &Expr, heading: Heading) -> Result<Circuit, CircuitError> {
    let b = binarize(e);
    let layout = build(&orient(&b, heading))?.with_detector();
    layout.validate().map_err(CircuitError::PlacementConflict)?;
    Ok(Circuit::from_layout(b, layout))
}

/// Parses and compiles.
pub fn compile_str(text: &str) -> Result<Circuit, CircuitError> {
    compile(&Expr::parse(text)?)
}

/// The arguments of the response-time function `r = f(2d, n + 2a + 3o, b)`.
/// No closed form for `f` is known, so no time is predicted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResponseEstimate {
    /// Spacing between successive gliders of a stream, in along-lane
    /// (`x + y`) units.
    pub d: u32,
    pub n_not: usize,
    pub n_and: usize,
    pub n_or: usize,
    /// `n + 2a + 3o`.
    pub weighted: usize,
    /// Along-lane distance from the output stream's source to the detector.
    pub b: i32,
    pub gun_total: usize,
}

/// Two along-lane units every four generations, one glider every thirty.
pub const GLIDER_SPACING: u32 = 15;

/// Counts operators of the binarized `e` and measures its compiled layout.
pub fn estimate_response(e: &Expr) -> Result<ResponseEstimate, CircuitError> {
    let b = binarize(e);
    let (n_not, n_and, n_or) = b.operator_counts();
    let c = compile(&b)?;
    let out = &c.layout.paths[c.layout.output];
    Ok(ResponseEstimate {
        d: GLIDER_SPACING,
        n_not,
        n_and,
        n_or,
        weighted: n_not + 2 * n_and + 3 * n_or,
        b: out.end.expect("output is terminated") - out.stream.start(),
        gun_total: c.gun_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::Role;

    fn assignment(vars: &[String], bits: u32) -> BTreeMap<String, bool> {
        vars.iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), bits >> i & 1 == 1))
            .collect()
    }

    #[test]
    fn identity_circuit_echoes_its_input() {
        let c = compile_str("A").unwrap();
        assert!(c.gates.is_empty());
        assert_eq!(c.gun_count, 1);
        for v in [false, true] {
            assert_eq!(evaluate(&c, &assignment(&c.variables(), v as u32)), Ok(v));
        }
    }

    #[test]
    fn missing_variable_is_reported() {
        let c = compile_str("A & B").unwrap();
        let only_a: BTreeMap<String, bool> = [("A".to_string(), true)].into();
        assert_eq!(
            evaluate(&c, &only_a),
            Err(CircuitError::MissingVariable("B".into()))
        );
    }

    #[test]
    fn wiring_is_a_tree_with_one_sink() {
        let c = compile_str("(A | B) & !(C & A)").unwrap();
        assert_eq!(c.gates.len(), 4);
        let sinks: Vec<usize> = (0..c.gates.len())
            .filter(|&g| !c.wiring.iter().any(|w| w.from == Producer::Gate(g)))
            .collect();
        assert_eq!(sinks, [c.gates.len() - 1]);
        for w in &c.wiring {
            if let Producer::Gate(g) = w.from {
                assert!(g < w.to);
            }
        }
        let outputs = c
            .layout
            .parts
            .iter()
            .filter(|p| p.role == Role::Output)
            .count();
        assert_eq!(outputs, 1);
        assert_eq!(c.input_cells.len(), 4);
    }

    #[test]
    fn heading_follows_the_request() {
        for h in [Heading::SouthEast, Heading::SouthWest] {
            let c = compile_towards(&Expr::parse("!A & B").unwrap(), h).unwrap();
            assert_eq!(c.output_heading, h);
            let vars = c.variables();
            for bits in 0..4 {
                let a = assignment(&vars, bits);
                assert_eq!(evaluate(&c, &a).unwrap(), !a["A"] && a["B"]);
            }
        }
    }

    #[test]
    fn sidecar_lists_every_instance() {
        let c = compile_str("A ^ B").unwrap();
        let r = c.to_sidecar();
        assert_eq!(r.all("input_cell").count(), 4);
        assert_eq!(r.get("gun_count"), Some("9"));
        let back = Block::from_record(&Record::parse(&r.to_string()).unwrap()).unwrap();
        assert_eq!(back.universe(), c.universe());
    }
}
