use std::collections::BTreeMap;

use super::compile::{compile_str, Circuit, CircuitError};
use crate::components::{activate_input, probe_output};
use crate::engine::{Cell, Universe};

/// The three result bits of a two-bit addition `x1 x0 + y1 y0`.
pub const EQUATIONS: [&str; 3] = [
    "x0 ^ y0",
    "y1 ^ x1 ^ (x0 & y0)",
    "(x1 & y1) | ((x1 ^ y1) & (x0 & y0))",
];

/// Empty columns left between neighbouring circuits.
pub const ADDER_GAP: i32 = 32;

/// Circuits for `b0`, `b1` and `b2`, side by side on one lattice.
#[derive(Clone, Debug)]
pub struct Adder {
    pub bits: [Circuit; 3],
}

/// `x1 x0` and `y1 y0` as variable values.
pub fn operand_assignment(x: u8, y: u8) -> BTreeMap<String, bool> {
    assert!(x < 4 && y < 4, "operands are two bits wide");
    [
        ("x0", x & 1),
        ("x1", x >> 1 & 1),
        ("y0", y & 1),
        ("y1", y >> 1 & 1),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v == 1))
    .collect()
}

/// Compiles the three equations and lays them out left to right with
/// [`ADDER_GAP`] free columns between them.
pub fn build_adder() -> Result<Adder, CircuitError> {
    let mut placed: Vec<Circuit> = Vec::new();
    let mut next_x = 0;
    for eq in EQUATIONS {
        let c = compile_str(eq)?;
        let b = c.bounds();
        let c = c.translated(next_x - b.min.x, -b.min.y);
        next_x = c.bounds().max.x + 1 + ADDER_GAP;
        placed.push(c);
    }
    let bits: [Circuit; 3] = placed.try_into().expect("three equations");
    Ok(Adder { bits })
}

impl Adder {
    pub fn universe(&self) -> Universe {
        Universe::from_cells(self.bits.iter().flat_map(|c| c.universe().cells()))
    }

    /// `[b0, b1, b2]` from one simulation of the whole lattice; each
    /// detector is sampled over its own circuit's probe window.
    pub fn evaluate(&self, x: u8, y: u8) -> [bool; 3] {
        let values = operand_assignment(x, y);
        let mut u = self.universe();
        for c in &self.bits {
            for (var, idx) in &c.layout.inputs {
                if values[var] {
                    u = activate_input(&u, &c.layout.parts[*idx]).expect("fresh lattice");
                }
            }
        }
        let windows: Vec<(u64, u64)> = self
            .bits
            .iter()
            .map(|c| (c.probe_generation, c.probe_generation + c.probe_window))
            .collect();
        let end = windows.iter().map(|w| w.1).max().unwrap();
        let mut samples: [Vec<Universe>; 3] = Default::default();
        let probes: Vec<Cell> = self.bits.iter().map(|c| c.output_cell).collect();
        while u.generation() < end {
            for (i, &(from, to)) in windows.iter().enumerate() {
                if (from..to).contains(&u.generation()) {
                    // Only the probe cell matters, so keep a one-cell copy.
                    let probe = probes[i];
                    samples[i].push(Universe::from_cells(u.get(probe).then_some(probe)));
                }
            }
            u.advance(1);
        }
        std::array::from_fn(|i| {
            let c = &self.bits[i];
            let detector = &c.layout.parts[c.layout.detector.expect("circuits end in a detector")];
            probe_output(&samples[i], detector).expect("detector has the output role")
        })
    }

    /// `[b0, b1, b2]` with each circuit simulated on its own.
    pub fn evaluate_isolated(&self, x: u8, y: u8) -> [bool; 3] {
        let values = operand_assignment(x, y);
        std::array::from_fn(|i| {
            self.bits[i]
                .simulate(&values)
                .expect("adder inputs are complete")
                .output
        })
    }

    /// The sum as read from the lattice.
    pub fn add(&self, x: u8, y: u8) -> u8 {
        let b = self.evaluate(x, y);
        b.iter().enumerate().map(|(i, &v)| u8::from(v) << i).sum()
    }

    pub fn gun_count(&self) -> usize {
        self.bits.iter().map(|c| c.gun_count).sum()
    }
}
