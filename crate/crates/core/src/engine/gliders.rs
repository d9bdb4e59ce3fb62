use std::collections::HashSet;
use std::sync::OnceLock;

use super::{naive, Bounds, Cell, Heading, Universe};

/// Phase 0 of the south-east glider, as in the catalog fixture.
pub const GLIDER_SE: [(i32, i32); 5] = [(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)];

/// A glider found by [`find_gliders`]. `position` is the top-left corner of
/// its 3x3 bounding box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GliderMatch {
    pub position: Cell,
    pub phase: u8,
    pub heading: Heading,
}

impl GliderMatch {
    pub fn bounds(&self) -> Bounds {
        Bounds {
            min: self.position,
            max: self.position.offset(2, 2),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let form = glider_forms()
            .iter()
            .find(|f| f.heading == self.heading && f.phase == self.phase)
            .expect("all 16 forms exist");
        form.cells
            .iter()
            .map(move |&(x, y)| self.position.offset(x, y))
    }
}

struct Form {
    heading: Heading,
    phase: u8,
    /// Normalised to a 3x3 box, sorted by row then column.
    cells: Vec<(i32, i32)>,
}

fn normalise(cells: &[Cell]) -> Vec<(i32, i32)> {
    let mx = cells.iter().map(|c| c.x).min().unwrap();
    let my = cells.iter().map(|c| c.y).min().unwrap();
    let mut v: Vec<_> = cells.iter().map(|c| (c.x - mx, c.y - my)).collect();
    v.sort_by_key(|&(x, y)| (y, x));
    v
}

fn glider_forms() -> &'static [Form] {
    static FORMS: OnceLock<Vec<Form>> = OnceLock::new();
    FORMS.get_or_init(|| {
        let mut phases = Vec::new();
        let mut g: Vec<Cell> = GLIDER_SE.iter().copied().map(Cell::from).collect();
        for _ in 0..4 {
            phases.push(normalise(&g));
            g = naive::step_cells(&g);
        }
        let mut forms = Vec::new();
        for heading in Heading::ALL {
            let (sx, sy) = heading.delta();
            for (phase, cells) in phases.iter().enumerate() {
                let mapped: Vec<Cell> = cells
                    .iter()
                    .map(|&(x, y)| Cell::new(x * sx, y * sy))
                    .collect();
                forms.push(Form {
                    heading,
                    phase: phase as u8,
                    cells: normalise(&mapped),
                });
            }
        }
        forms
    })
}

/// Every isolated glider: five cells matching one of the sixteen glider forms
/// with the surrounding one-cell ring empty.
pub fn find_gliders(u: &Universe) -> Vec<GliderMatch> {
    let live = u.cells();
    let set: HashSet<Cell> = live.iter().copied().collect();
    let mut out = Vec::new();
    for &c in &live {
        for form in glider_forms() {
            let first = form.cells[0];
            let anchor = c.offset(-first.0, -first.1);
            let matches = (-1..=3).all(|dy| {
                (-1..=3).all(|dx| {
                    let want = form.cells.contains(&(dx, dy));
                    set.contains(&anchor.offset(dx, dy)) == want
                })
            });
            if matches {
                out.push(GliderMatch {
                    position: anchor,
                    phase: form.phase,
                    heading: form.heading,
                });
            }
        }
    }
    out.sort();
    out
}

/// Result of [`detect_stabilization`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stabilization {
    pub stabilized_at: u64,
    pub period: u64,
}

fn moving_away(g: &GliderMatch, from: &Bounds) -> bool {
    let b = g.bounds();
    let (dx, dy) = g.heading.delta();
    (dx > 0 && b.min.x > from.max.x)
        || (dx < 0 && b.max.x < from.min.x)
        || (dy > 0 && b.min.y > from.max.y)
        || (dy < 0 && b.max.y < from.min.y)
}

/// Gliders already clear of everything else and heading away from it.
pub fn escaping_gliders(u: &Universe) -> Vec<GliderMatch> {
    let gliders = find_gliders(u);
    if gliders.is_empty() {
        return gliders;
    }
    let glider_cells: HashSet<Cell> = gliders
        .iter()
        .flat_map(|g| g.cells().collect::<Vec<_>>())
        .collect();
    let rest = u.cells().into_iter().filter(|c| !glider_cells.contains(c));
    match Bounds::of(rest) {
        Some(bb) => gliders
            .into_iter()
            .filter(|g| moving_away(g, &bb))
            .collect(),
        None => gliders,
    }
}

/// Live cells with escaping gliders removed.
pub(crate) fn residue(u: &Universe) -> Vec<Cell> {
    let escaping: HashSet<Cell> = escaping_gliders(u)
        .iter()
        .flat_map(|g| g.cells().collect::<Vec<_>>())
        .collect();
    u.cells()
        .into_iter()
        .filter(|c| !escaping.contains(c))
        .collect()
}

/// Earliest generation (relative to `u`) from which the glider-stripped
/// residue repeats with some period `p <= max_period`. `None` when no such
/// generation is seen within `max_gen` steps.
pub fn detect_stabilization(u: &Universe, max_gen: u64, max_period: u64) -> Option<Stabilization> {
    let mut history: Vec<Vec<Cell>> = Vec::new();
    let mut best: Option<Stabilization> = None;
    let mut cur = u.clone();
    for t in 0..=max_gen {
        if t > 0 {
            cur.advance(1);
        }
        let r = residue(&cur);
        for p in 1..=max_period.min(t) {
            let g = t - p;
            if best.is_some_and(|b| b.stabilized_at <= g) {
                continue;
            }
            if history[g as usize] == r {
                best = Some(Stabilization {
                    stabilized_at: g,
                    period: p,
                });
                break;
            }
        }
        history.push(r);
        if let Some(b) = best {
            if t >= b.stabilized_at + max_period {
                break;
            }
        }
    }
    best
}
