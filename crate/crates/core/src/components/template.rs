use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use super::layout::{tweaks, Block, GateKind, Outcome};
use super::parts::{parse_cell, Component, Role};
use super::sidecar::Record;
use crate::engine::{Bounds, Cell, Heading, Universe};
use crate::patterns::rle;

/// Generations the detector is watched for: one gun period.
pub const PROBE_WINDOW: u64 = 30;

/// Tweak range used for the shipped fixtures.
pub const DEFAULT_SEARCH_RANGE: u32 = 4;

/// Environment variable naming a directory that replaces the shipped
/// fixture directory. Gate fixtures are read from its `gates` subdirectory.
pub const FIXTURE_DIR_VAR: &str = "LIFE_FIXTURE_DIR";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComponentError {
    #[error("expected a component with role {expected}, got {found}")]
    WrongRole { expected: Role, found: Role },
    #[error("entry cell {0} is already live")]
    AlreadyActivated(Cell),
    #[error("inputs are set at generation 0, but the universe is at generation {0}")]
    NotAtGenerationZero(u64),
    #[error("no valid placement for {0} within the search range")]
    NoValidPlacement(GateKind),
    #[error("{kind} fixture: {message}")]
    Fixture { kind: GateKind, message: String },
}

fn expect_role(c: &Component, role: Role) -> Result<(), ComponentError> {
    if c.role == role {
        Ok(())
    } else {
        Err(ComponentError::WrongRole {
            expected: role,
            found: c.role,
        })
    }
}

/// Sets the entry cell of input `c`, which destroys its stopper and lets
/// the stream through.
pub fn activate_input(u: &Universe, c: &Component) -> Result<Universe, ComponentError> {
    expect_role(c, Role::Input)?;
    if u.generation() != 0 {
        return Err(ComponentError::NotAtGenerationZero(u.generation()));
    }
    let cell = c.control_cell.expect("inputs carry an entry cell");
    if u.get(cell) {
        return Err(ComponentError::AlreadyActivated(cell));
    }
    let mut out = u.clone();
    out.set(cell, true);
    Ok(out)
}

/// Whether the output's probe cell is live in any of `states`.
pub fn probe_output(states: &[Universe], c: &Component) -> Result<bool, ComponentError> {
    expect_role(c, Role::Output)?;
    let cell = c.control_cell.expect("outputs carry a probe cell");
    Ok(states.iter().any(|u| u.get(cell)))
}

/// One line of a truth-table certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateRow {
    pub inputs: Vec<bool>,
    pub output: bool,
    /// First generation the probe cell was live.
    pub hit: Option<u64>,
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for CertificateRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", bits(&self.inputs), u8::from(self.output))?;
        match self.hit {
            Some(h) => write!(f, " {h}"),
            None => f.write_str(" -"),
        }
    }
}

impl FromStr for CertificateRow {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let w: Vec<&str> = s.split_whitespace().collect();
        let [ins, out, hit] = w[..] else {
            return Err(format!("bad certificate row `{s}`"));
        };
        let bit = |c: char| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(format!("bad bit `{c}` in `{s}`")),
        };
        Ok(CertificateRow {
            inputs: ins.chars().map(bit).collect::<Result<_, _>>()?,
            output: bit(out.chars().next().unwrap_or(' '))?,
            hit: match hit {
                "-" => None,
                h => Some(h.parse().map_err(|_| format!("bad hit `{h}`"))?),
            },
        })
    }
}

/// Every assignment of `n` inputs, first input most significant.
pub fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u32 << n).map(move |m| (0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect())
}

/// Slot names of a gate's inputs.
pub fn slot_names(kind: GateKind) -> &'static [&'static str] {
    match kind {
        GateKind::Not => &["A"],
        _ => &["A", "B"],
    }
}

fn evaluate_slots(b: &Block, kind: GateKind, inputs: &[bool]) -> Outcome {
    let slots = slot_names(kind);
    b.simulate(
        &|v| {
            slots
                .iter()
                .position(|s| *s == v)
                .is_some_and(|i| inputs[i])
        },
        PROBE_WINDOW,
    )
}

/// Runs every assignment through `b`. Fails on a wrong output, debris or
/// an input disturbing another input's stopper.
fn certify(b: &Block, kind: GateKind) -> Result<Vec<CertificateRow>, String> {
    assignments(kind.arity())
        .map(|inputs| {
            let o = evaluate_slots(b, kind, &inputs);
            let want = kind.apply(&inputs);
            if o.output != want {
                return Err(format!(
                    "{} gave {}, expected {}",
                    bits(&inputs),
                    o.output,
                    want
                ));
            }
            if !o.debris.is_empty() {
                return Err(format!(
                    "{} left {} debris cells",
                    bits(&inputs),
                    o.debris.len()
                ));
            }
            if o.crosstalk {
                return Err(format!(
                    "{}: an input's stopper did not match its own setting",
                    bits(&inputs)
                ));
            }
            Ok(CertificateRow {
                inputs,
                output: o.output,
                hit: o.hit,
            })
        })
        .collect()
}

/// A calibrated gate on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateTemplate {
    pub kind: GateKind,
    pub layout: Block,
    pub input_cells: Vec<(String, Cell)>,
    pub output_cell: Cell,
    pub output_heading: Heading,
    /// Generation at which the detector is first sampled.
    pub probe_generation: u64,
    pub probe_window: u64,
    /// Along-lane shifts the calibration applied, in [`Block::gate`] order.
    pub tweak: Vec<i32>,
    pub certificate: Vec<CertificateRow>,
}

impl GateTemplate {
    fn from_layout(
        kind: GateKind,
        layout: Block,
        tweak: Vec<i32>,
        certificate: Vec<CertificateRow>,
    ) -> GateTemplate {
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
        let detector = &layout.parts[layout.detector.expect("template has a detector")];
        GateTemplate {
            kind,
            input_cells,
            output_cell: detector.control_cell.expect("outputs carry a probe cell"),
            output_heading: layout.output_heading(),
            probe_generation: layout.probe_generation(),
            probe_window: PROBE_WINDOW,
            tweak,
            certificate,
            layout,
        }
    }

    pub fn components(&self) -> &[Component] {
        &self.layout.parts
    }

    pub fn universe(&self) -> Universe {
        self.layout.universe()
    }

    /// Simulates one assignment, inputs in slot order.
    pub fn evaluate(&self, inputs: &[bool]) -> Outcome {
        assert_eq!(
            inputs.len(),
            self.kind.arity(),
            "{} takes {} inputs",
            self.kind,
            self.kind.arity()
        );
        evaluate_slots(&self.layout, self.kind, inputs)
    }

    pub fn to_rle(&self) -> String {
        let (cells, _) = normalised(&self.universe());
        rle::emit(&cells, &[format!("glidelogic {} gate", self.kind)])
    }

    pub fn to_sidecar(&self) -> Record {
        let mut r = Record::new();
        r.push("kind", self.kind);
        let (_, origin) = normalised(&self.universe());
        r.push("origin", format!("{},{}", origin.x, origin.y));
        r.push(
            "tweak",
            self.tweak
                .iter()
                .map(i32::to_string)
                .collect::<Vec<_>>()
                .join(","),
        );
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
        for row in &self.certificate {
            r.push("certificate", row);
        }
        self.layout.write_record(&mut r);
        r
    }

    /// Reads a fixture pair, checks that the RLE cells are exactly the
    /// components' cells, and re-runs the certificate.
    pub fn from_fixture(
        kind: GateKind,
        rle_text: &str,
        sidecar: &str,
    ) -> Result<GateTemplate, ComponentError> {
        let fail = |message: String| ComponentError::Fixture { kind, message };
        let r = Record::parse(sidecar).map_err(|e| fail(e.to_string()))?;
        let stated: GateKind = r.parsed("kind").map_err(fail)?;
        if stated != kind {
            return Err(fail(format!("sidecar describes {stated}")));
        }
        let layout = Block::from_record(&r).map_err(fail)?;
        if layout.detector.is_none() {
            return Err(fail("no detector".into()));
        }
        let origin = parse_cell(r.require("origin").map_err(fail)?).map_err(fail)?;
        let body = rle::parse(rle_text).map_err(|e| fail(e.to_string()))?;
        let from_rle: HashSet<Cell> = body
            .cells
            .iter()
            .map(|c| c.offset(origin.x, origin.y))
            .collect();
        let placed: HashSet<Cell> = layout.universe().cells().into_iter().collect();
        if from_rle != placed {
            return Err(fail("RLE cells differ from the listed components".into()));
        }
        let tweak = match r.require("tweak").map_err(fail)? {
            "" => Vec::new(),
            t => t
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse()
                        .map_err(|_| fail(format!("bad tweak `{t}`")))
                })
                .collect::<Result<_, _>>()?,
        };
        let recorded = r
            .all("certificate")
            .map(str::parse)
            .collect::<Result<Vec<CertificateRow>, _>>()
            .map_err(fail)?;
        let t = GateTemplate::from_layout(kind, layout, tweak, recorded);
        let check = |key: &str, stated: String, derived: String| {
            if stated == derived {
                Ok(())
            } else {
                Err(fail(format!(
                    "{key} is {stated} but the layout gives {derived}"
                )))
            }
        };
        check(
            "probe_generation",
            r.require("probe_generation").map_err(fail)?.into(),
            t.probe_generation.to_string(),
        )?;
        check(
            "probe_window",
            r.require("probe_window").map_err(fail)?.into(),
            t.probe_window.to_string(),
        )?;
        check(
            "output_heading",
            r.parsed::<Heading>("output_heading")
                .map_err(fail)?
                .to_string(),
            t.output_heading.to_string(),
        )?;
        check(
            "output_cell",
            r.require("output_cell").map_err(fail)?.into(),
            format!("{},{}", t.output_cell.x, t.output_cell.y),
        )?;
        let fresh = certify(&t.layout, kind).map_err(fail)?;
        if fresh != t.certificate {
            return Err(fail(
                "re-simulation disagrees with the recorded certificate".into(),
            ));
        }
        Ok(t)
    }

    /// Writes `<dir>/<kind>.rle` and `<dir>/<kind>.gate`.
    pub fn write_fixture(&self, dir: &Path) -> std::io::Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let stem = self.kind.name().to_ascii_lowercase();
        let rle_path = dir.join(format!("{stem}.rle"));
        let gate_path = dir.join(format!("{stem}.gate"));
        std::fs::write(&rle_path, self.to_rle() + "\n")?;
        std::fs::write(
            &gate_path,
            format!("# glidelogic {} gate\n{}", self.kind, self.to_sidecar()),
        )?;
        Ok((rle_path, gate_path))
    }
}

fn normalised(u: &Universe) -> (Vec<Cell>, Cell) {
    let b = u.bounding_box().unwrap_or(Bounds {
        min: Cell::new(0, 0),
        max: Cell::new(0, 0),
    });
    let cells = u
        .cells()
        .into_iter()
        .map(|c| c.offset(-b.min.x, -b.min.y))
        .collect();
    (cells, b.min)
}

fn operands(kind: GateKind) -> Vec<Block> {
    match kind {
        GateKind::Not => vec![Block::input("A").mirrored()],
        _ => vec![Block::input("A"), Block::input("B")],
    }
}

/// Number of tweak entries [`Block::gate`] reads for `kind`.
pub fn tweak_len(kind: GateKind) -> usize {
    match kind {
        GateKind::Not => 2,
        GateKind::And => 3,
        GateKind::Or => 4,
    }
}

/// Searches along-lane shifts of the gate's guns and operands, smallest
/// first, for a layout that validates and passes every assignment without
/// debris. Each shift stays strictly below `range` in magnitude, so a
/// range of 0 searches nothing.
pub fn calibrate(kind: GateKind, range: u32) -> Result<GateTemplate, ComponentError> {
    for tweak in tweaks(tweak_len(kind), range) {
        let Ok(b) = Block::gate(kind, operands(kind), &tweak) else {
            continue;
        };
        let b = b.with_detector();
        if b.validate().is_err() {
            continue;
        }
        if let Ok(cert) = certify(&b, kind) {
            return Ok(GateTemplate::from_layout(kind, b, tweak, cert));
        }
    }
    Err(ComponentError::NoValidPlacement(kind))
}

fn shipped(kind: GateKind) -> (&'static str, &'static str) {
    match kind {
        GateKind::And => (
            include_str!("../../fixtures/gates/and.rle"),
            include_str!("../../fixtures/gates/and.gate"),
        ),
        GateKind::Or => (
            include_str!("../../fixtures/gates/or.rle"),
            include_str!("../../fixtures/gates/or.gate"),
        ),
        GateKind::Not => (
            include_str!("../../fixtures/gates/not.rle"),
            include_str!("../../fixtures/gates/not.gate"),
        ),
    }
}

/// Loads the fixture for `kind`, from [`FIXTURE_DIR_VAR`] if set.
pub fn load_gate(kind: GateKind) -> Result<GateTemplate, ComponentError> {
    match std::env::var_os(FIXTURE_DIR_VAR) {
        Some(dir) => {
            let stem = kind.name().to_ascii_lowercase();
            let dir = Path::new(&dir).join("gates");
            let read = |ext: &str| {
                let p = dir.join(format!("{stem}.{ext}"));
                std::fs::read_to_string(&p).map_err(|e| ComponentError::Fixture {
                    kind,
                    message: format!("{}: {e}", p.display()),
                })
            };
            GateTemplate::from_fixture(kind, &read("rle")?, &read("gate")?)
        }
        None => {
            let (rle_text, sidecar) = shipped(kind);
            GateTemplate::from_fixture(kind, rle_text, sidecar)
        }
    }
}

pub fn build_and() -> Result<GateTemplate, ComponentError> {
    load_gate(GateKind::And)
}

pub fn build_or() -> Result<GateTemplate, ComponentError> {
    load_gate(GateKind::Or)
}

pub fn build_not() -> Result<GateTemplate, ComponentError> {
    load_gate(GateKind::Not)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::gun_with_centre;

    #[test]
    fn certificate_rows_round_trip() {
        for row in [
            CertificateRow {
                inputs: vec![true, false],
                output: true,
                hit: Some(412),
            },
            CertificateRow {
                inputs: vec![false],
                output: false,
                hit: None,
            },
        ] {
            assert_eq!(row.to_string().parse::<CertificateRow>().unwrap(), row);
        }
        assert!("10 2 -".parse::<CertificateRow>().is_err());
    }

    #[test]
    fn activation_errors() {
        let gun = gun_with_centre(Heading::SouthEast, Cell::new(0, 0), Role::Gun);
        let u = Universe::from_cells(gun.cells());
        assert_eq!(
            activate_input(&u, &gun),
            Err(ComponentError::WrongRole {
                expected: Role::Input,
                found: Role::Gun
            })
        );
        assert!(matches!(
            probe_output(&[u], &gun),
            Err(ComponentError::WrongRole { .. })
        ));

        let input = Block::input("A").parts.remove(0);
        let u = Universe::from_cells(input.cells());
        let on = activate_input(&u, &input).unwrap();
        assert_eq!(
            activate_input(&on, &input),
            Err(ComponentError::AlreadyActivated(
                input.control_cell.unwrap()
            ))
        );
        assert_eq!(
            activate_input(&u.run(1), &input),
            Err(ComponentError::NotAtGenerationZero(1))
        );
    }

    #[test]
    fn empty_search_range_finds_nothing() {
        assert_eq!(
            calibrate(GateKind::And, 0),
            Err(ComponentError::NoValidPlacement(GateKind::And))
        );
    }
}
