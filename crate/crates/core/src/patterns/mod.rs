//! Named building-block patterns, RLE I/O and lattice symmetries.

mod catalog;
mod orientation;
pub mod rle;

use std::fmt;

use thiserror::Error;

use crate::engine::{Bounds, Cell, Universe};

pub use catalog::{catalog, catalog_names, fixture_text, gun_emission, GunEmission, CATALOG_NAMES};
pub use orientation::Orientation;
pub use rle::RleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    StillLife,
    Oscillator,
    Spaceship,
    Gun,
    Eater,
    Methuselah,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::StillLife => "still-life",
            Kind::Oscillator => "oscillator",
            Kind::Spaceship => "spaceship",
            Kind::Gun => "gun",
            Kind::Eater => "eater",
            Kind::Methuselah => "methuselah",
        })
    }
}

/// Displacement `(dx, dy)` covered every `period` generations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Velocity {
    pub dx: i32,
    pub dy: i32,
    pub period: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("unknown pattern `{name}`; valid names: {}", valid.join(", "))]
    UnknownName { name: String, valid: Vec<String> },
    #[error("placement overlaps live cell {0}")]
    Overlap(Cell),
    #[error("catalog entry `{name}` failed verification: {reason}")]
    Verification { name: String, reason: String },
    #[error(transparent)]
    Rle(#[from] RleError),
}

/// A finite set of live offsets normalised so the minimum x and y are 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    cells: Vec<Cell>,
    pub kind: Kind,
    pub period: Option<u32>,
    pub velocity: Option<Velocity>,
}

fn normalised(cells: impl IntoIterator<Item = Cell>) -> Vec<Cell> {
    let mut v: Vec<Cell> = cells.into_iter().collect();
    let mx = v.iter().map(|c| c.x).min().unwrap_or(0);
    let my = v.iter().map(|c| c.y).min().unwrap_or(0);
    for c in &mut v {
        *c = c.offset(-mx, -my);
    }
    v.sort_by_key(|c| (c.y, c.x));
    v.dedup();
    v
}

impl Pattern {
    /// Builds a pattern from arbitrary (non-empty) cells, normalising offsets.
    pub fn new(
        name: impl Into<String>,
        cells: impl IntoIterator<Item = Cell>,
        kind: Kind,
    ) -> Pattern {
        let cells = normalised(cells);
        assert!(
            !cells.is_empty(),
            "patterns must have at least one live cell"
        );
        Pattern {
            name: name.into(),
            cells,
            kind,
            period: None,
            velocity: None,
        }
    }

    pub fn with_period(mut self, period: u32) -> Self {
        self.period = Some(period);
        self
    }

    pub fn with_velocity(mut self, v: Velocity) -> Self {
        self.velocity = Some(v);
        self
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn width(&self) -> i32 {
        self.cells.iter().map(|c| c.x).max().unwrap() + 1
    }

    pub fn height(&self) -> i32 {
        self.cells.iter().map(|c| c.y).max().unwrap() + 1
    }

    pub fn population(&self) -> usize {
        self.cells.len()
    }

    pub fn parse_rle(text: &str) -> Result<Pattern, RleError> {
        let body = rle::parse(text)?;
        let name = body
            .comments
            .first()
            .cloned()
            .unwrap_or_else(|| "unnamed".to_string());
        Ok(Pattern::new(name, body.cells, Kind::StillLife))
    }

    pub fn to_rle(&self) -> String {
        rle::emit(&self.cells, &[])
    }

    /// Applies `o` to every offset and renormalises. Metadata follows along.
    pub fn transform(&self, o: Orientation) -> Pattern {
        let mut p = self.clone();
        p.cells = normalised(self.cells.iter().map(|&c| o.apply_cell(c)));
        p.velocity = self.velocity.map(|v| {
            let (dx, dy) = o.apply(v.dx, v.dy);
            Velocity {
                dx,
                dy,
                period: v.period,
            }
        });
        p
    }

    /// Cells as they land on the lattice when placed at `at` with orientation `o`.
    ///
    /// The orientation acts about the pattern's origin and the result is
    /// renormalised, so `at` is always the top-left corner of the bounding box.
    pub fn placed_cells(&self, at: Cell, o: Orientation) -> Vec<Cell> {
        normalised(self.cells.iter().map(|&c| o.apply_cell(c)))
            .into_iter()
            .map(|c| c.offset(at.x, at.y))
            .collect()
    }

    pub fn placed_bounds(&self, at: Cell, o: Orientation) -> Bounds {
        Bounds::of(self.placed_cells(at, o)).unwrap()
    }

    pub fn to_universe(&self) -> Universe {
        Universe::from_cells(self.cells.iter().copied())
    }
}

/// Adds the oriented pattern at `at` to a copy of `u`.
pub fn place(
    u: &Universe,
    p: &Pattern,
    at: Cell,
    o: Orientation,
) -> Result<Universe, PatternError> {
    let mut out = u.clone();
    place_into(&mut out, p, at, o)?;
    Ok(out)
}

/// In-place variant of [`place`]. On error `u` is unchanged.
pub fn place_into(
    u: &mut Universe,
    p: &Pattern,
    at: Cell,
    o: Orientation,
) -> Result<(), PatternError> {
    let cells = p.placed_cells(at, o);
    if let Some(&c) = cells.iter().find(|&&c| u.get(c)) {
        return Err(PatternError::Overlap(c));
    }
    for c in cells {
        u.set(c, true);
    }
    Ok(())
}
