use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::geometry::Stream;
use crate::engine::{find_gliders, Cell, Heading, Universe};
use crate::patterns::{catalog, gun_emission, Orientation, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Input,
    Gun,
    Stopper,
    Output,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Input => "input",
            Role::Gun => "gun",
            Role::Stopper => "stopper",
            Role::Output => "output",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Role::Input, Role::Gun, Role::Stopper, Role::Output]
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown role `{s}`"))
    }
}

/// A catalog pattern at a position and orientation. `at` is the top-left
/// corner of the placed bounding box, as in [`Pattern::placed_cells`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub pattern_name: String,
    pub at: Cell,
    pub orientation: Orientation,
}

impl Placement {
    pub fn new(pattern_name: &str, at: Cell, orientation: Orientation) -> Placement {
        Placement {
            pattern_name: pattern_name.to_string(),
            at,
            orientation,
        }
    }

    fn pattern(&self) -> Pattern {
        catalog(&self.pattern_name).expect("components only name catalog patterns")
    }

    pub fn cells(&self) -> Vec<Cell> {
        self.pattern().placed_cells(self.at, self.orientation)
    }

    fn mirrored(&self) -> Placement {
        let cells: Vec<Cell> = self
            .cells()
            .into_iter()
            .map(|c| Cell::new(-c.x, c.y))
            .collect();
        let at = Cell::new(
            cells.iter().map(|c| c.x).min().unwrap(),
            cells.iter().map(|c| c.y).min().unwrap(),
        );
        Placement {
            pattern_name: self.pattern_name.clone(),
            at,
            orientation: Orientation::FlipX.after(self.orientation),
        }
    }

    fn translated(&self, dx: i32, dy: i32) -> Placement {
        Placement {
            at: self.at.offset(dx, dy),
            ..self.clone()
        }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}@{},{}/{}",
            self.pattern_name, self.at.x, self.at.y, self.orientation
        )
    }
}

impl FromStr for Placement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, rest) = s
            .split_once('@')
            .ok_or_else(|| format!("expected name@x,y/orientation, got `{s}`"))?;
        let (at, o) = rest
            .split_once('/')
            .ok_or_else(|| format!("missing orientation in `{s}`"))?;
        Ok(Placement {
            pattern_name: name.to_string(),
            at: parse_cell(at)?,
            orientation: o.parse()?,
        })
    }
}

pub(crate) fn parse_cell(s: &str) -> Result<Cell, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected x,y, got `{s}`"))?;
    let p = |v: &str| {
        v.trim()
            .parse::<i32>()
            .map_err(|_| format!("bad coordinate `{v}`"))
    };
    Ok(Cell::new(p(x)?, p(y)?))
}

/// A placed functional element.
///
/// Inputs are a gun whose stream runs into `stopper` until the control
/// (entry) cell is set; outputs are a detector eater whose control cell lights
/// up while it eats a glider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub role: Role,
    pub pattern_name: String,
    pub at: Cell,
    pub orientation: Orientation,
    pub control_cell: Option<Cell>,
    /// Generations the gun has already run before generation 0.
    pub emission_phase: Option<u32>,
    pub stopper: Option<Placement>,
}

impl Component {
    pub fn placement(&self) -> Placement {
        Placement::new(&self.pattern_name, self.at, self.orientation)
    }

    /// Live cells at generation 0, stopper included.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = self.placement().cells();
        if let Some(k) = self.emission_phase.filter(|&k| k > 0) {
            cells = Universe::from_cells(cells).run(k as u64).cells();
        }
        if let Some(s) = &self.stopper {
            cells.extend(s.cells());
        }
        cells
    }

    /// Stream emitted by a gun or input.
    pub fn stream(&self) -> Option<Stream> {
        let k = self.emission_phase?;
        let (centre, heading, t0) = gun_stream_at(self.at, self.orientation);
        Some(Stream {
            heading,
            centre,
            t0: t0 - k as i64,
        })
    }

    pub fn mirrored(&self) -> Component {
        let p = self.placement().mirrored();
        Component {
            at: p.at,
            orientation: p.orientation,
            control_cell: self.control_cell.map(|c| Cell::new(-c.x, c.y)),
            stopper: self.stopper.as_ref().map(Placement::mirrored),
            ..self.clone()
        }
    }

    pub fn translated(&self, dx: i32, dy: i32) -> Component {
        Component {
            at: self.at.offset(dx, dy),
            control_cell: self.control_cell.map(|c| c.offset(dx, dy)),
            stopper: self.stopper.as_ref().map(|s| s.translated(dx, dy)),
            ..self.clone()
        }
    }
}

fn xy(c: Cell) -> String {
    format!("{},{}", c.x, c.y)
}

/// One line: `role placement [phase=k] [control=x,y] [stopper=placement]`.
impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.role, self.placement())?;
        if let Some(k) = self.emission_phase {
            write!(f, " phase={k}")?;
        }
        if let Some(c) = self.control_cell {
            write!(f, " control={}", xy(c))?;
        }
        if let Some(s) = &self.stopper {
            write!(f, " stopper={s}")?;
        }
        Ok(())
    }
}

impl FromStr for Component {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut words = s.split_whitespace();
        let role: Role = words.next().ok_or("empty component")?.parse()?;
        let placement: Placement = words
            .next()
            .ok_or("component without a placement")?
            .parse()?;
        let mut c = Component {
            role,
            pattern_name: placement.pattern_name,
            at: placement.at,
            orientation: placement.orientation,
            control_cell: None,
            emission_phase: None,
            stopper: None,
        };
        for w in words {
            match w.split_once('=') {
                Some(("phase", v)) => {
                    c.emission_phase = Some(v.parse().map_err(|_| format!("bad phase `{v}`"))?)
                }
                Some(("control", v)) => c.control_cell = Some(parse_cell(v)?),
                Some(("stopper", v)) => c.stopper = Some(v.parse()?),
                _ => return Err(format!("unexpected `{w}` in component")),
            }
        }
        if catalog(&c.pattern_name).is_err() {
            return Err(format!("unknown pattern `{}`", c.pattern_name));
        }
        Ok(c)
    }
}

/// Gun orientation that sends gliders along `heading`. Only the two
/// headings used by layouts are supported; the south-west gun is the mirror
/// image of the south-east one.
pub fn gun_orientation(heading: Heading) -> Orientation {
    match heading {
        Heading::SouthEast => Orientation::Transpose,
        Heading::SouthWest => Orientation::FlipX.after(Orientation::Transpose),
        other => panic!("no layout gun for heading {other}"),
    }
}

/// `(centre, heading, t0)` of the first glider of a gun placed at `at`.
pub fn gun_stream_at(at: Cell, o: Orientation) -> (Cell, Heading, i64) {
    let gun = catalog("gun_p30").expect("gun fixture verifies");
    let e = gun_emission();
    let raw: Vec<Cell> = gun.cells().iter().map(|&c| o.apply_cell(c)).collect();
    let mx = raw.iter().map(|c| c.x).min().unwrap();
    let my = raw.iter().map(|c| c.y).min().unwrap();
    let c = o.apply_cell(e.first_position.offset(1, 1));
    (
        Cell::new(c.x - mx + at.x, c.y - my + at.y),
        o.apply_heading(e.heading),
        e.first_seen as i64,
    )
}

/// A gun whose first glider is centred on `centre` when first seen.
pub fn gun_with_centre(heading: Heading, centre: Cell, role: Role) -> Component {
    let o = gun_orientation(heading);
    let (c0, _, _) = gun_stream_at(Cell::new(0, 0), o);
    Component {
        role,
        pattern_name: "gun_p30".into(),
        at: Cell::new(centre.x - c0.x, centre.y - c0.y),
        orientation: o,
        control_cell: None,
        emission_phase: Some(0),
        stopper: None,
    }
}

/// How an eater sits on a lane: placing `pattern_name` with `orientation`
/// at a lane point plus `offset` eats every glider travelling that lane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EaterFit {
    pub orientation: Orientation,
    pub offset: Cell,
    /// Generations from first contact until the eater is whole again.
    pub recovery: u64,
    /// Relative to the placed eater's `at`.
    pub control: Cell,
}

/// The first glider of a south-east stream at `t0`, relative to its centre.
fn stream_glider() -> &'static [Cell] {
    static G: OnceLock<Vec<Cell>> = OnceLock::new();
    G.get_or_init(|| {
        let gun = gun_with_centre(Heading::SouthEast, Cell::new(0, 0), Role::Gun);
        let s = gun.stream().unwrap();
        let u = Universe::from_cells(gun.cells()).run(s.t0 as u64);
        let g = find_gliders(&u)
            .into_iter()
            .find(|g| g.position.offset(1, 1) == s.centre)
            .expect("first glider sits on its advertised centre");
        g.cells().collect()
    })
}

const FIT_DISTANCE: i32 = 10;

/// A south-east glider centred on the origin, pre-advanced `phase`
/// generations, run into `eater`. Returns the generation of first contact
/// and the generation from which only the resting eater remains.
fn eat(eater: &[Cell], phase: u64) -> Option<(u64, u64)> {
    let resting = Universe::from_cells(eater.iter().copied());
    let mut u = Universe::from_cells(stream_glider().iter().copied()).run(phase);
    for &c in eater {
        u.set(c, true);
    }
    let mut contact = None;
    let mut whole = None;
    for t in 1..=100 {
        u.advance(1);
        if contact.is_none() && eater.iter().any(|&c| !u.get(c)) {
            contact = Some(t);
        }
        if contact.is_some() && whole.is_none() && u == resting {
            whole = Some(t);
        }
        if whole.is_some() && u != resting {
            return None;
        }
    }
    Some((contact?, whole?))
}

/// First orientation and offset (smallest first) at which `name` eats a
/// south-east glider in all four phases and ends up exactly as it started.
/// `control` picks the control cell from the eater's cells, given in the
/// frame where the glider is centred on the origin.
fn search_fit(name: &str, control: impl Fn(&[Cell]) -> Option<Cell>) -> EaterFit {
    let pattern = catalog(name).expect("eaters are catalog patterns");
    let mut offsets: Vec<Cell> = (-6..=6)
        .flat_map(|y| (-6..=6).map(move |x| Cell::new(x, y)))
        .collect();
    offsets.sort_by_key(|c| (c.x.abs() + c.y.abs(), c.y, c.x));
    for o in Orientation::ALL {
        for &off in &offsets {
            let lane_point = Cell::new(FIT_DISTANCE, FIT_DISTANCE);
            let at = lane_point.offset(off.x, off.y);
            let cells = pattern.placed_cells(at, o);
            let mut recovery = 0;
            let eats_all = (0..4).all(|phase| match eat(&cells, phase) {
                Some((contact, whole)) => {
                    recovery = recovery.max(whole - contact);
                    true
                }
                None => false,
            });
            if !eats_all {
                continue;
            }
            let Some(c) = control(&cells) else { continue };
            return EaterFit {
                orientation: o,
                offset: off,
                recovery,
                control: c.offset(-at.x, -at.y),
            };
        }
    }
    panic!("no orientation of `{name}` eats a south-east glider");
}

/// Neighbour cells of `eater` in row-major order whose birth destroys it
/// completely, with the generation at which nothing is left (at most 9).
pub(crate) fn activation_cells(eater: &[Cell]) -> Vec<(Cell, u64)> {
    let mut ring: Vec<Cell> = eater
        .iter()
        .flat_map(|c| (-1..=1).flat_map(move |dy| (-1..=1).map(move |dx| c.offset(dx, dy))))
        .filter(|c| !eater.contains(c))
        .collect();
    ring.sort_by_key(|c| (c.y, c.x));
    ring.dedup();
    ring.into_iter()
        .filter_map(|cell| {
            let mut u = Universe::from_cells(eater.iter().copied().chain([cell]));
            (1..=9u64)
                .find(|_| {
                    u.advance(1);
                    u.is_empty()
                })
                .map(|t| (cell, t))
        })
        .collect()
}

/// Dead cells near `eater` that are live at some generation after the
/// eater is first disturbed, for a glider in every phase. Cells the
/// approaching glider itself lights come last; ties go row-major. The
/// glider starts centred on the origin.
pub(crate) fn probe_cells(eater: &[Cell]) -> Vec<Cell> {
    let b = crate::engine::Bounds::of(eater.iter().copied())
        .unwrap()
        .expand(2);
    let mut candidates: Vec<Cell> = (b.min.y..=b.max.y)
        .flat_map(|y| (b.min.x..=b.max.x).map(move |x| Cell::new(x, y)))
        .filter(|c| !eater.contains(c))
        .collect();
    let mut early = HashSet::new();
    for phase in 0..4 {
        let mut u = Universe::from_cells(stream_glider().iter().copied()).run(phase);
        for &c in eater {
            u.set(c, true);
        }
        let mut lit = HashSet::new();
        let mut disturbed = false;
        for _ in 0..100 {
            u.advance(1);
            disturbed |= eater.iter().any(|&c| !u.get(c));
            let now = candidates.iter().copied().filter(|&c| u.get(c));
            if disturbed {
                lit.extend(now);
            } else {
                early.extend(now);
            }
        }
        candidates.retain(|c| lit.contains(c));
    }
    candidates.sort_by_key(|c| (early.contains(c), c.y, c.x));
    candidates
}

/// Stopper fit for south-east streams. The control cell is the entry cell
/// that dissolves the stopper.
pub fn stopper_fit() -> &'static EaterFit {
    static F: OnceLock<EaterFit> = OnceLock::new();
    F.get_or_init(|| {
        search_fit("eater_stopper", |cells| {
            activation_cells(cells).first().map(|&(c, _)| c)
        })
    })
}

/// Detector fit for south-east streams. The control cell is the probe cell.
pub fn detector_fit() -> &'static EaterFit {
    static F: OnceLock<EaterFit> = OnceLock::new();
    F.get_or_init(|| {
        search_fit("eater_detector", |cells| {
            probe_cells(cells).first().copied()
        })
    })
}

/// Places an eater of the given fit on `stream` at along-lane coordinate
/// `along` (or the first lane point after it). Returns the placement and
/// the absolute control cell.
pub fn eater_on(name: &str, fit: &EaterFit, stream: &Stream, along: i32) -> (Placement, Cell) {
    let p = stream.point_at(along);
    let se = Placement::new(name, p.offset(fit.offset.x, fit.offset.y), fit.orientation);
    let control = se.at.offset(fit.control.x, fit.control.y);
    match stream.heading {
        Heading::SouthEast => (se, control),
        Heading::SouthWest => {
            // Build the south-east configuration on the mirrored lane point, then mirror it.
            let mp = Cell::new(-p.x, p.y);
            let se = Placement::new(name, mp.offset(fit.offset.x, fit.offset.y), fit.orientation);
            let control = se.at.offset(fit.control.x, fit.control.y);
            (se.mirrored(), Cell::new(-control.x, control.y))
        }
        other => panic!("no eater fit for heading {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Bounds;

    #[test]
    fn stopper_entry_cell_dissolves_it_in_nine() {
        let f = stopper_fit();
        let cells = catalog("eater_stopper")
            .unwrap()
            .placed_cells(Cell::new(0, 0), f.orientation);
        let (cell, t) = activation_cells(&cells)[0];
        assert_eq!(cell, f.control);
        assert!(t <= 9, "took {t}");
    }

    #[test]
    fn detector_probe_is_dead_at_rest() {
        let f = detector_fit();
        let cells = catalog("eater_detector")
            .unwrap()
            .placed_cells(Cell::new(0, 0), f.orientation);
        assert!(!cells.contains(&f.control));
        let u = Universe::from_cells(cells.iter().copied());
        assert_eq!(u.run(30), u.with_generation(30));
    }

    #[test]
    fn eaters_on_both_headings_absorb_a_stream() {
        for heading in [Heading::SouthEast, Heading::SouthWest] {
            let gun = gun_with_centre(heading, Cell::new(0, 0), Role::Gun);
            let s = gun.stream().unwrap();
            let (eater, _) = eater_on("eater_stopper", stopper_fit(), &s, s.start() + 20);
            let eater_cells = eater.cells();
            let mut u =
                Universe::from_cells(gun.cells().into_iter().chain(eater_cells.iter().copied()));
            u.advance(300);
            assert!(
                eater_cells.iter().all(|&c| u.get(c)),
                "{heading}: eater damaged"
            );
            let far = Bounds::of(eater_cells.iter().copied()).unwrap();
            assert!(
                find_gliders(&u)
                    .iter()
                    .all(|g| s.along(g.position) < s.along(far.min) + 2),
                "{heading}: a glider got past"
            );
        }
    }

    #[test]
    fn mirrored_gun_streams_south_west() {
        let g = gun_with_centre(Heading::SouthEast, Cell::new(4, 9), Role::Gun);
        let m = g.mirrored();
        let s = m.stream().unwrap();
        assert_eq!(s.heading, Heading::SouthWest);
        assert_eq!(s.centre, Cell::new(-4, 9));
        assert_eq!(m.mirrored(), g);
    }

    #[test]
    fn component_text_round_trip() {
        let mut c = gun_with_centre(Heading::SouthEast, Cell::new(0, 0), Role::Input);
        let s = c.stream().unwrap();
        let (stopper, entry) = eater_on("eater_stopper", stopper_fit(), &s, s.start() + 10);
        c.stopper = Some(stopper);
        c.control_cell = Some(entry);
        let text = c.to_string();
        assert_eq!(text.parse::<Component>().unwrap(), c);
        assert!("gun nothing@0,0/identity".parse::<Component>().is_err());
        assert!("gun gun_p30@0,0/identity wat=1"
            .parse::<Component>()
            .is_err());
    }
}
