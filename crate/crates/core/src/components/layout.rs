//! Placement of inputs, gates and eaters.
//!
//! Everything is laid out in the diagonal frame of [`super::geometry`]. A
//! block's output is an open south-east stream leaving its right edge, or
//! its mirror image, a south-west stream leaving its bottom edge. Gates
//! stack their operand blocks and run the gate gun's stream across the
//! operands' output lanes; every crossing uses a clean crossing class, and
//! every stream that does not feed the parent ends in an eater.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::geometry::{crossing_class, crossing_point, from_uw, uw, Rect, Stream, CLEAN_CROSSINGS};
use super::parts::{
    detector_fit, eater_on, gun_with_centre, parse_cell, stopper_fit, Component, Role,
};
use super::sidecar::Record;
use super::template::{activate_input, probe_output};
use crate::engine::{Bounds, Cell, Heading, Universe};

/// Clearance between stacked blocks, in diagonal units.
pub const GAP: i32 = 8;
/// Distance along a lane from the last crossing to the eater that ends it.
pub const STOP_DISTANCE: i32 = 14;
/// Distance along the lane from an input gun's first glider to its stopper.
pub const INPUT_STOP: i32 = 10;
/// Half-width of the corridor a stream needs to itself.
pub const BAND: i32 = 6;
/// Extra time allowed after the analytic settling time before probing.
pub const PROBE_SLACK: i64 = 30;
/// Extra time for a crossing to settle once both its streams have.
const CROSSING_SETTLE: i64 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    And,
    Or,
    Not,
}

impl GateKind {
    pub const ALL: [GateKind; 3] = [GateKind::And, GateKind::Or, GateKind::Not];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Not => 1,
            _ => 2,
        }
    }

    pub fn apply(self, inputs: &[bool]) -> bool {
        match self {
            GateKind::And => inputs[0] && inputs[1],
            GateKind::Or => inputs[0] || inputs[1],
            GateKind::Not => !inputs[0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Not => "NOT",
        }
    }

    /// Guns a gate adds on top of its operands.
    pub fn guns(self) -> usize {
        match self {
            GateKind::Or => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown gate `{s}` (expected AND, OR or NOT)"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayoutError {
    #[error("components {0} and {1} are too close")]
    Overlap(usize, usize),
    #[error("stream from component {path_source} runs into component {part}")]
    Obstructed { path_source: usize, part: usize },
    #[error("streams from components {0} and {1} interfere")]
    StreamConflict(usize, usize),
    #[error(
        "streams from components {0} and {1} cross in class {2}, which does not cancel cleanly"
    )]
    BadCrossing(usize, usize, u8),
    #[error("no clean crossing class is reachable for component {0}")]
    NoAlignment(usize),
}

/// A stream from its source to the eater that ends it (`end` is the along
/// coordinate of that eater; `None` while the stream is still open).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub stream: Stream,
    pub source: usize,
    pub end: Option<i32>,
    pub sink: Option<usize>,
}

impl Path {
    fn covers(&self, along: i32, margin: i32) -> bool {
        along >= self.stream.start() - margin && self.end.is_none_or(|e| along <= e + margin)
    }

    /// Whether `c` lies in this stream's corridor.
    pub fn corridor_contains(&self, c: Cell) -> bool {
        let (u, w) = uw(c);
        let (lane, along) = if self.stream.heading == Heading::SouthEast {
            (w, u)
        } else {
            (u, w)
        };
        (lane - self.stream.lane()).abs() <= BAND && self.covers(along, BAND)
    }
}

/// What drives a gate slot: an input (index into `inputs`) or a gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Producer {
    Input(usize),
    Gate(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateRecord {
    pub kind: GateKind,
    /// Components the gate itself added.
    pub parts: Vec<usize>,
    pub slots: Vec<Producer>,
}

/// A partial or finished layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub parts: Vec<Component>,
    pub paths: Vec<Path>,
    /// Pairs of path indices that are meant to cross.
    pub crossings: Vec<(usize, usize)>,
    /// Variable name and the input component it drives.
    pub inputs: Vec<(String, usize)>,
    pub gates: Vec<GateRecord>,
    /// The open path carrying the block's result.
    pub output: usize,
    pub producer: Producer,
    /// Detector component once the output has been terminated.
    pub detector: Option<usize>,
}

fn translate_uw(du: i32, dw: i32) -> (i32, i32) {
    debug_assert!((du + dw) % 2 == 0);
    ((du - dw) / 2, (du + dw) / 2)
}

/// Minimum clear distance between parts: no live cell of one may come
/// within this many cells (in either axis) of a live cell of another.
pub const CLEARANCE: i32 = 3;

/// Cells a part is ever live on during one gun period, not counting the
/// gliders it sends out.
fn envelope(c: &Component) -> Vec<Cell> {
    let cells = c.cells();
    if c.emission_phase.is_none() {
        return cells;
    }
    let b = Bounds::of(cells.iter().copied()).unwrap();
    let mut u = Universe::from_cells(cells);
    let mut seen = HashSet::new();
    for _ in 0..30 {
        seen.extend(u.cells().into_iter().filter(|&c| b.contains(c)));
        u.advance(1);
    }
    let mut v: Vec<Cell> = seen.into_iter().collect();
    v.sort();
    v
}

fn too_close(a: &[Cell], b: &[Cell]) -> bool {
    let (Some(ba), Some(bb)) = (Bounds::of(a.iter().copied()), Bounds::of(b.iter().copied()))
    else {
        return false;
    };
    if !ba.expand(CLEARANCE).intersects(&bb) {
        return false;
    }
    let set: HashSet<Cell> = a.iter().copied().collect();
    b.iter().any(|c| {
        (-CLEARANCE..=CLEARANCE)
            .any(|dy| (-CLEARANCE..=CLEARANCE).any(|dx| set.contains(&c.offset(dx, dy))))
    })
}

/// Rect of a gun relative to the centre of its first glider.
fn gun_rect(heading: Heading) -> Rect {
    let g = gun_with_centre(heading, Cell::new(0, 0), Role::Gun);
    Rect::of(g.cells()).unwrap()
}

impl Block {
    /// A single input: a south-east gun with a stopper on its lane.
    pub fn input(var: &str) -> Block {
        let mut gun = gun_with_centre(Heading::SouthEast, Cell::new(0, 0), Role::Input);
        let stream = gun.stream().unwrap();
        let (stopper, entry) = eater_on(
            "eater_stopper",
            stopper_fit(),
            &stream,
            stream.start() + INPUT_STOP,
        );
        gun.stopper = Some(stopper);
        gun.control_cell = Some(entry);
        Block {
            parts: vec![gun],
            paths: vec![Path {
                stream,
                source: 0,
                end: None,
                sink: None,
            }],
            crossings: Vec::new(),
            inputs: vec![(var.to_string(), 0)],
            gates: Vec::new(),
            output: 0,
            producer: Producer::Input(0),
            detector: None,
        }
    }

    pub fn output_stream(&self) -> Stream {
        self.paths[self.output].stream
    }

    pub fn output_heading(&self) -> Heading {
        self.output_stream().heading
    }

    pub fn translate(&mut self, dx: i32, dy: i32) {
        let (du, dw) = (dx + dy, dy - dx);
        for p in &mut self.parts {
            *p = p.translated(dx, dy);
        }
        for path in &mut self.paths {
            let shift = if path.stream.heading == Heading::SouthEast {
                du
            } else {
                dw
            };
            path.stream = path.stream.translated(dx, dy);
            path.end = path.end.map(|e| e + shift);
        }
    }

    fn translate_uw(&mut self, du: i32, dw: i32) {
        let (dx, dy) = translate_uw(du, dw);
        self.translate(dx, dy);
    }

    /// Mirror image across the vertical axis: south-east becomes south-west.
    pub fn mirrored(&self) -> Block {
        let mut b = self.clone();
        for p in &mut b.parts {
            *p = p.mirrored();
        }
        for path in &mut b.paths {
            // u and w swap, so along coordinates carry over unchanged.
            path.stream = path.stream.mirrored();
        }
        b
    }

    /// Bounding rect of all parts and all closed paths.
    pub fn rect(&self) -> Rect {
        let mut r = Rect::of(self.parts.iter().flat_map(|p| p.cells())).unwrap();
        for p in &self.paths {
            let lane = p.stream.lane();
            let start = p.stream.start();
            let end = p.end.unwrap_or(start);
            let seg = if p.stream.heading == Heading::SouthEast {
                Rect {
                    u0: start,
                    u1: end,
                    w0: lane,
                    w1: lane,
                }
            } else {
                Rect {
                    u0: lane,
                    u1: lane,
                    w0: start,
                    w1: end,
                }
            };
            r = r.union(&seg);
        }
        r
    }

    /// Moves `other` into `self`, returning its path-index offset.
    fn absorb(&mut self, other: Block) -> usize {
        let parts = self.parts.len();
        let paths = self.paths.len();
        let inputs = self.inputs.len();
        let gates = self.gates.len();
        let fix = |p: Producer| match p {
            Producer::Input(i) => Producer::Input(i + inputs),
            Producer::Gate(g) => Producer::Gate(g + gates),
        };
        self.parts.extend(other.parts);
        self.paths.extend(other.paths.into_iter().map(|mut p| {
            p.source += parts;
            p.sink = p.sink.map(|s| s + parts);
            p
        }));
        self.crossings.extend(
            other
                .crossings
                .into_iter()
                .map(|(a, b)| (a + paths, b + paths)),
        );
        self.inputs
            .extend(other.inputs.into_iter().map(|(v, i)| (v, i + parts)));
        self.gates
            .extend(other.gates.into_iter().map(|g| GateRecord {
                kind: g.kind,
                parts: g.parts.into_iter().map(|i| i + parts).collect(),
                slots: g.slots.into_iter().map(fix).collect(),
            }));
        paths
    }

    fn add_part(&mut self, c: Component) -> usize {
        self.parts.push(c);
        self.parts.len() - 1
    }

    fn add_gun(&mut self, heading: Heading, centre: Cell) -> usize {
        let g = gun_with_centre(heading, centre, Role::Gun);
        let stream = g.stream().unwrap();
        let idx = self.add_part(g);
        self.paths.push(Path {
            stream,
            source: idx,
            end: None,
            sink: None,
        });
        idx
    }

    fn path_of(&self, part: usize) -> usize {
        self.paths
            .iter()
            .position(|p| p.source == part)
            .expect("every gun has a path")
    }

    /// Ends path `path` with a stopper at along coordinate `along`, or
    /// further on if that spot is too close to another part.
    fn stop(&mut self, path: usize, mut along: i32) -> usize {
        let stream = self.paths[path].stream;
        let others: Vec<Vec<Cell>> = self.parts.iter().map(envelope).collect();
        let placement = loop {
            let (placement, _) = eater_on("eater_stopper", stopper_fit(), &stream, along);
            let own = placement.cells();
            if !others.iter().any(|o| too_close(o, &own)) {
                break placement;
            }
            along += 1;
        };
        let idx = self.add_part(Component {
            role: Role::Stopper,
            pattern_name: placement.pattern_name,
            at: placement.at,
            orientation: placement.orientation,
            control_cell: None,
            emission_phase: None,
            stopper: None,
        });
        self.paths[path].end = Some(along);
        self.paths[path].sink = Some(idx);
        idx
    }

    /// Terminates the output with a detector past everything else.
    pub fn with_detector(mut self) -> Block {
        let stream = self.output_stream();
        let far = self
            .parts
            .iter()
            .flat_map(|p| p.cells())
            .map(|c| stream.along(c))
            .max()
            .unwrap()
            .max(
                self.crossings_on(self.output)
                    .into_iter()
                    .max()
                    .unwrap_or(i32::MIN),
            );
        let along = far + STOP_DISTANCE;
        let (placement, probe) = eater_on("eater_detector", detector_fit(), &stream, along);
        let idx = self.add_part(Component {
            role: Role::Output,
            pattern_name: placement.pattern_name,
            at: placement.at,
            orientation: placement.orientation,
            control_cell: Some(probe),
            emission_phase: None,
            stopper: None,
        });
        let out = self.output;
        self.paths[out].end = Some(along);
        self.paths[out].sink = Some(idx);
        self.detector = Some(idx);
        self
    }

    /// Along coordinates (on `path`) of the crossings on `path`.
    fn crossings_on(&self, path: usize) -> Vec<i32> {
        self.crossings
            .iter()
            .filter_map(|&(a, b)| {
                let other = if a == path {
                    b
                } else if b == path {
                    a
                } else {
                    return None;
                };
                let (u, w) = crossing_point(&self.paths[path].stream, &self.paths[other].stream);
                Some(if self.paths[path].stream.heading == Heading::SouthEast {
                    u
                } else {
                    w
                })
            })
            .collect()
    }

    /// Smallest `k >= 0` such that moving this block `k` cells back along
    /// its output lane gives a clean crossing with `other`.
    fn align_back(&self, other: &Stream) -> Option<i32> {
        let s = self.output_stream();
        let (dx, dy) = s.heading.delta();
        (0..30).find(|&k| {
            CLEAN_CROSSINGS.contains(&crossing_class(&s.translated(-k * dx, -k * dy), other))
        })
    }

    fn shift_back(&mut self, k: i32) {
        let (dx, dy) = self.output_heading().delta();
        self.translate(-k * dx, -k * dy);
    }

    /// Stacks `lower` under `self` with right edges aligned; returns it placed.
    fn stack_below(&self, mut lower: Block) -> Block {
        let (a, b) = (self.rect(), lower.rect());
        let du = a.u1 - b.u1;
        let mut dw = a.w1 + GAP - b.w0;
        if (du + dw) % 2 != 0 {
            dw += 1;
        }
        lower.translate_uw(du, dw);
        lower
    }

    /// Builds a gate around operand blocks already headed the way the gate
    /// needs them: south-east for AND and OR, south-west for NOT. The
    /// result's output heads south-east. `tweak` moves the gate's gun(s)
    /// and operands further along their lanes, in the order gun, operands,
    /// parallel gun (OR only); missing entries count as zero.
    pub fn gate(kind: GateKind, operands: Vec<Block>, tweak: &[i32]) -> Result<Block, LayoutError> {
        let t = |i: usize| tweak.get(i).copied().unwrap_or(0);
        match kind {
            GateKind::Not => {
                let [op]: [Block; 1] = operands.try_into().expect("NOT takes one operand");
                Block::not_gate(op, t(0), t(1))
            }
            GateKind::And | GateKind::Or => {
                let [l, r]: [Block; 2] =
                    operands.try_into().expect("binary gate takes two operands");
                Block::binary_gate(kind, l, r, [t(0), t(1), t(2), t(3)])
            }
        }
    }

    fn binary_gate(
        kind: GateKind,
        mut l: Block,
        r: Block,
        tweak: [i32; 4],
    ) -> Result<Block, LayoutError> {
        assert_eq!(l.output_heading(), Heading::SouthEast);
        assert_eq!(r.output_heading(), Heading::SouthEast);
        let mut r = l.stack_below(r);
        let mut right = l.rect().u1.max(r.rect().u1);

        // OR's parallel gun goes under both operands, flush with their right edge.
        let mut parallel = None;
        if kind == GateKind::Or {
            let pr = gun_rect(Heading::SouthEast);
            let mut w = r.rect().w1 + GAP - pr.w0;
            let u = right - pr.u1;
            if (u + w) % 2 != 0 {
                w += 1;
            }
            parallel = Some(from_uw(u, w).unwrap());
            right = right.max(u + pr.u1);
        }

        // The perpendicular gun sits right of everything, above the top lane.
        let gr = gun_rect(Heading::SouthWest);
        let u = right + GAP - gr.u0;
        let mut w = l.output_stream().lane() - GAP - gr.w1;
        if (u + w) % 2 != 0 {
            w -= 1;
        }
        let gun_centre = from_uw(u, w).unwrap().offset(tweak[0], -tweak[0]);
        let gun_stream = gun_with_centre(Heading::SouthWest, gun_centre, Role::Gun)
            .stream()
            .unwrap();

        let kl = l
            .align_back(&gun_stream)
            .ok_or(LayoutError::NoAlignment(0))?;
        l.shift_back(kl + tweak[1]);
        let kr = r
            .align_back(&gun_stream)
            .ok_or(LayoutError::NoAlignment(0))?;
        r.shift_back(kr + tweak[2]);

        let mut b = l;
        let l_producer = b.producer;
        let r_producer = match r.producer {
            Producer::Input(i) => Producer::Input(i + b.inputs.len()),
            Producer::Gate(g) => Producer::Gate(g + b.gates.len()),
        };
        let r_output = r.output;
        let r_out = r_output + b.absorb(r);

        let mut lanes = vec![b.output, r_out];
        let mut parts = Vec::new();
        let mut output = r_out;
        if let Some(c) = parallel {
            let probe = gun_with_centre(Heading::SouthEast, c, Role::Gun)
                .stream()
                .unwrap();
            let k = (0..30)
                .find(|&k| {
                    CLEAN_CROSSINGS
                        .contains(&crossing_class(&probe.translated(-k, -k), &gun_stream))
                })
                .ok_or(LayoutError::NoAlignment(b.parts.len()))?
                + tweak[3];
            let pg = b.add_gun(Heading::SouthEast, c.offset(-k, -k));
            let path = b.path_of(pg);
            parts.push(pg);
            lanes.push(path);
            output = path;
        }
        let g = b.add_gun(Heading::SouthWest, gun_centre);
        let g_path = b.path_of(g);
        parts.insert(0, g);
        for &lane in &lanes {
            b.crossings.push((lane, g_path));
        }
        // Lanes the gun crossed that do not carry the result end past it.
        for &lane in &lanes {
            if lane != output {
                parts.push(b.stop(lane, gun_stream.lane() + STOP_DISTANCE));
            }
        }
        let bottom = b.paths[*lanes.last().unwrap()].stream.lane();
        parts.push(b.stop(g_path, bottom + STOP_DISTANCE));
        b.output = output;
        b.gates.push(GateRecord {
            kind,
            parts,
            slots: vec![l_producer, r_producer],
        });
        b.producer = Producer::Gate(b.gates.len() - 1);
        Ok(b)
    }

    fn not_gate(op: Block, tweak_gun: i32, tweak_op: i32) -> Result<Block, LayoutError> {
        assert_eq!(op.output_heading(), Heading::SouthWest);
        let mut b = op;
        b.shift_back(tweak_op);
        let rect = b.rect();
        let column = b.output_stream().lane();
        let gr = gun_rect(Heading::SouthEast);
        let w = rect.w1 + GAP - gr.w0;
        let mut u = column - GAP - gr.u1;
        if (u + w) % 2 != 0 {
            u -= 1;
        }
        let centre = from_uw(u, w).unwrap();
        let s = gun_with_centre(Heading::SouthEast, centre, Role::Gun)
            .stream()
            .unwrap();
        let input = b.output_stream();
        let k = (0..30)
            .find(|&k| CLEAN_CROSSINGS.contains(&crossing_class(&s.translated(-k, -k), &input)))
            .ok_or(LayoutError::NoAlignment(0))?;
        let k = k + tweak_gun;
        let g = b.add_gun(Heading::SouthEast, centre.offset(-k, -k));
        let g_path = b.path_of(g);
        let in_path = b.output;
        b.crossings.push((in_path, g_path));
        let stop = b.stop(in_path, b.paths[g_path].stream.lane() + STOP_DISTANCE);
        let slot = b.producer;
        b.output = g_path;
        b.gates.push(GateRecord {
            kind: GateKind::Not,
            parts: vec![g, stop],
            slots: vec![slot],
        });
        b.producer = Producer::Gate(b.gates.len() - 1);
        Ok(b)
    }

    /// Checks spacing, corridors and crossings.
    pub fn validate(&self) -> Result<(), LayoutError> {
        let cells: Vec<Vec<Cell>> = self.parts.iter().map(envelope).collect();
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if too_close(&cells[i], &cells[j]) {
                    return Err(LayoutError::Overlap(i, j));
                }
            }
        }
        for p in &self.paths {
            for (i, cs) in cells.iter().enumerate() {
                if i == p.source || Some(i) == p.sink {
                    continue;
                }
                if cs.iter().any(|&c| p.corridor_contains(c)) {
                    return Err(LayoutError::Obstructed {
                        path_source: p.source,
                        part: i,
                    });
                }
            }
        }
        for i in 0..self.paths.len() {
            for j in i + 1..self.paths.len() {
                let (a, b) = (&self.paths[i], &self.paths[j]);
                if a.stream.heading == b.stream.heading {
                    let near = (a.stream.lane() - b.stream.lane()).abs() <= 2 * BAND;
                    let lo = a.stream.start().max(b.stream.start());
                    let hi = a.end.unwrap_or(i32::MAX).min(b.end.unwrap_or(i32::MAX));
                    if near && lo <= hi + BAND {
                        return Err(LayoutError::StreamConflict(a.source, b.source));
                    }
                    continue;
                }
                let meet = a.covers(b.stream.lane(), BAND) && b.covers(a.stream.lane(), BAND);
                if !meet {
                    continue;
                }
                if !self.crossings.contains(&(i, j)) && !self.crossings.contains(&(j, i)) {
                    return Err(LayoutError::StreamConflict(a.source, b.source));
                }
                let class = crossing_class(&a.stream, &b.stream);
                if !CLEAN_CROSSINGS.contains(&class) {
                    return Err(LayoutError::BadCrossing(a.source, b.source, class));
                }
            }
        }
        Ok(())
    }

    /// Generation from which gliders passing `along` on `path` reflect the
    /// steady state of everything upstream.
    pub fn ready(&self, path: usize, along: i32) -> i64 {
        let p = &self.paths[path];
        let mut upstream: Vec<(i32, usize, i32)> = self
            .crossings
            .iter()
            .filter_map(|&(a, b)| {
                let other = if a == path {
                    b
                } else if b == path {
                    a
                } else {
                    return None;
                };
                let (u, w) = crossing_point(&p.stream, &self.paths[other].stream);
                let (mine, theirs) = if p.stream.heading == Heading::SouthEast {
                    (u, w)
                } else {
                    (w, u)
                };
                (mine < along).then_some((mine, other, theirs))
            })
            .collect();
        upstream.sort();
        let (mut pos, mut t) = (p.stream.start(), p.stream.t0);
        for (mine, other, theirs) in upstream {
            t += 2 * (mine - pos) as i64;
            t = t.max(self.ready(other, theirs)) + CROSSING_SETTLE;
            pos = mine;
        }
        t + 2 * (along - pos) as i64
    }

    /// Generation at which the detector is first sampled.
    pub fn probe_generation(&self) -> u64 {
        let out = self.output;
        let end = self.paths[out].end.expect("layout has a detector");
        (self.ready(out, end) + PROBE_SLACK) as u64
    }

    /// Whether a live cell at `c` is expected somewhere in this layout.
    pub fn allows(&self, c: Cell) -> bool {
        self.allowance()(c)
    }

    /// [`Block::allows`] with the part boxes worked out once.
    fn allowance(&self) -> impl Fn(Cell) -> bool + '_ {
        let boxes: Vec<Bounds> = self
            .parts
            .iter()
            .map(|p| Bounds::of(p.cells()).unwrap().expand(3))
            .collect();
        move |c| {
            boxes.iter().any(|b| b.contains(c)) || self.paths.iter().any(|p| p.corridor_contains(c))
        }
    }

    pub fn universe(&self) -> Universe {
        Universe::from_cells(self.parts.iter().flat_map(|p| p.cells()))
    }

    pub fn gun_count(&self) -> usize {
        self.parts
            .iter()
            .filter(|p| p.pattern_name == "gun_p30")
            .count()
    }

    /// Simulates a finished layout with the inputs named by `active` set,
    /// sampling the detector for `window` generations from the probe
    /// generation.
    pub fn simulate(&self, active: &dyn Fn(&str) -> bool, window: u64) -> Outcome {
        let mut u = self.universe();
        let mut watched = Vec::new();
        for (var, idx) in &self.inputs {
            let part = &self.parts[*idx];
            let on = active(var);
            if on {
                u = activate_input(&u, part).expect("fresh layout at generation 0");
            }
            watched.push((
                on,
                part.stopper.as_ref().map(|s| s.cells()).unwrap_or_default(),
            ));
        }
        let probe_at = self.probe_generation();
        let detector = &self.parts[self.detector.expect("layout has a detector")];
        u.advance(probe_at);
        let mut states = Vec::with_capacity(window as usize);
        let mut intact = vec![false; watched.len()];
        for _ in 0..window {
            for (i, (_, cells)) in watched.iter().enumerate() {
                intact[i] |= cells.iter().all(|&c| u.get(c));
            }
            let next = u.step();
            states.push(u);
            u = next;
        }
        let output = probe_output(&states, detector).expect("detector has the output role");
        let hit = states
            .iter()
            .find(|s| s.get(detector.control_cell.unwrap()))
            .map(|s| s.generation());
        let last = states.pop().expect("window is not empty");
        let allows = self.allowance();
        let debris = last.cells().into_iter().filter(|&c| !allows(c)).collect();
        let crosstalk = watched
            .iter()
            .zip(&intact)
            .any(|((on, _), &whole)| *on == whole);
        Outcome {
            output,
            hit,
            debris,
            crosstalk,
            last,
        }
    }

    /// Writes parts, paths, crossings, inputs and output to `r`.
    pub fn write_record(&self, r: &mut Record) {
        for p in &self.parts {
            r.push("component", p);
        }
        for p in &self.paths {
            let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            let s = &p.stream;
            r.push(
                "path",
                format!(
                    "{} {},{} {} {} {} {}",
                    s.heading,
                    s.centre.x,
                    s.centre.y,
                    s.t0,
                    p.source,
                    opt(p.end.map(|e| e.to_string())),
                    opt(p.sink.map(|e| e.to_string()))
                ),
            );
        }
        for (a, b) in &self.crossings {
            r.push("crossing", format!("{a} {b}"));
        }
        for (v, i) in &self.inputs {
            r.push("input", format!("{v} {i}"));
        }
        r.push("output_path", self.output);
        if let Some(d) = self.detector {
            r.push("detector", d);
        }
    }

    /// Reads back what [`Block::write_record`] wrote. Gate records are not
    /// stored, so the result has none.
    pub fn from_record(r: &Record) -> Result<Block, String> {
        let parts = r
            .all("component")
            .map(str::parse)
            .collect::<Result<Vec<Component>, _>>()?;
        let n = parts.len();
        let index = |v: &str| -> Result<usize, String> {
            let i: usize = v.parse().map_err(|_| format!("bad index `{v}`"))?;
            (i < n)
                .then_some(i)
                .ok_or_else(|| format!("index {i} out of range"))
        };
        let mut paths = Vec::new();
        for line in r.all("path") {
            let w: Vec<&str> = line.split_whitespace().collect();
            let [heading, centre, t0, source, end, sink] = w[..] else {
                return Err(format!("bad path `{line}`"));
            };
            let heading: Heading = heading.parse()?;
            if !matches!(heading, Heading::SouthEast | Heading::SouthWest) {
                return Err(format!("path heading must be SE or SW, got {heading}"));
            }
            let stream = Stream {
                heading,
                centre: parse_cell(centre)?,
                t0: t0.parse().map_err(|_| format!("bad t0 `{t0}`"))?,
            };
            let end = match end {
                "-" => None,
                e => Some(e.parse().map_err(|_| format!("bad end `{e}`"))?),
            };
            let sink = match sink {
                "-" => None,
                k => Some(index(k)?),
            };
            paths.push(Path {
                stream,
                source: index(source)?,
                end,
                sink,
            });
        }
        let path_index = |v: &str| -> Result<usize, String> {
            let i: usize = v.parse().map_err(|_| format!("bad path index `{v}`"))?;
            (i < paths.len())
                .then_some(i)
                .ok_or_else(|| format!("path {i} out of range"))
        };
        let mut crossings = Vec::new();
        for line in r.all("crossing") {
            let (a, b) = line
                .split_once(' ')
                .ok_or_else(|| format!("bad crossing `{line}`"))?;
            crossings.push((path_index(a.trim())?, path_index(b.trim())?));
        }
        let mut inputs = Vec::new();
        for line in r.all("input") {
            let (v, i) = line
                .split_once(' ')
                .ok_or_else(|| format!("bad input `{line}`"))?;
            let i = index(i.trim())?;
            if parts[i].role != Role::Input {
                return Err(format!(
                    "input `{v}` names component {i}, which is a {}",
                    parts[i].role
                ));
            }
            inputs.push((v.to_string(), i));
        }
        let output = path_index(r.require("output_path")?)?;
        let detector = r.get("detector").map(index).transpose()?;
        Ok(Block {
            parts,
            paths,
            crossings,
            inputs,
            gates: Vec::new(),
            output,
            producer: Producer::Input(0),
            detector,
        })
    }
}

/// Tweak vectors with every entry in `-(range-1)..=range-1`, by increasing
/// L1 norm, lexicographic within a norm.
pub fn tweaks(dims: usize, range: u32) -> impl Iterator<Item = Vec<i32>> {
    let r = range as i32 - 1;
    let max_norm = if range == 0 { -1 } else { r * dims as i32 };
    (0..=max_norm).flat_map(move |norm| {
        let mut out = Vec::new();
        with_norm(dims, norm, r, &mut Vec::new(), &mut out);
        out
    })
}

fn with_norm(dims: usize, norm: i32, r: i32, prefix: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
    if prefix.len() == dims {
        if norm == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let left = (dims - prefix.len() - 1) as i32;
    for v in -r.min(norm)..=r.min(norm) {
        let rest = norm - v.abs();
        if rest > left * r {
            continue;
        }
        prefix.push(v);
        with_norm(dims, rest, r, prefix, out);
        prefix.pop();
    }
}

/// What [`Block::simulate`] saw.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub output: bool,
    /// First generation in the window with the probe cell live.
    pub hit: Option<u64>,
    /// Live cells at the end of the window outside every part and corridor.
    pub debris: Vec<Cell>,
    /// Some input's stopper was destroyed without being activated, or
    /// survived its activation.
    pub crosstalk: bool,
    pub last: Universe,
}
