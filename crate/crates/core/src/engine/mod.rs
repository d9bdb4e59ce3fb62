//! Game of Life stepping over the unbounded plane.
//!
//! [`Universe`] stores live cells in 64x64 bit tiles keyed by tile coordinate
//! and advances them with a bit-sliced neighbour count. The dense per-cell
//! implementation in [`naive`] is kept alongside as the reference oracle.

mod gliders;
pub mod naive;
mod tile;

use rustc_hash::FxHashMap as HashMap;
use std::fmt;

pub use gliders::{
    detect_stabilization, escaping_gliders, find_gliders, GliderMatch, Stabilization,
    GLIDER_SE as GLIDER_SE_CELLS,
};

use tile::{Tile, TILE};

/// Integer lattice coordinate. `x` grows rightward, `y` grows downward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    pub fn offset(self, dx: i32, dy: i32) -> Self {
        Cell::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i32, i32)> for Cell {
    fn from((x, y): (i32, i32)) -> Self {
        Cell::new(x, y)
    }
}

/// One of the four diagonal directions a glider can travel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Heading {
    NorthEast,
    NorthWest,
    SouthEast,
    SouthWest,
}

impl Heading {
    pub const ALL: [Heading; 4] = [
        Heading::NorthEast,
        Heading::NorthWest,
        Heading::SouthEast,
        Heading::SouthWest,
    ];

    /// Unit displacement per glider period.
    pub fn delta(self) -> (i32, i32) {
        match self {
            Heading::NorthEast => (1, -1),
            Heading::NorthWest => (-1, -1),
            Heading::SouthEast => (1, 1),
            Heading::SouthWest => (-1, 1),
        }
    }

    pub fn from_delta(dx: i32, dy: i32) -> Option<Heading> {
        Heading::ALL
            .into_iter()
            .find(|h| h.delta() == (dx.signum(), dy.signum()))
    }

    /// Mirror across the vertical axis (east and west swap).
    pub fn mirrored(self) -> Heading {
        let (dx, dy) = self.delta();
        Heading::from_delta(-dx, dy).unwrap()
    }

    pub fn is_perpendicular(self, other: Heading) -> bool {
        let (a, b) = (self.delta(), other.delta());
        a.0 * b.0 + a.1 * b.1 == 0
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Heading::NorthEast => "NE",
            Heading::NorthWest => "NW",
            Heading::SouthEast => "SE",
            Heading::SouthWest => "SW",
        }
    }
}

impl fmt::Display for Heading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl std::str::FromStr for Heading {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "NE" => Ok(Heading::NorthEast),
            "NW" => Ok(Heading::NorthWest),
            "SE" => Ok(Heading::SouthEast),
            "SW" => Ok(Heading::SouthWest),
            other => Err(format!("unknown heading `{other}`")),
        }
    }
}

/// Outer-totalistic rule. Only B3/S23 is supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rule {
    birth: u16,
    survival: u16,
}

impl Rule {
    pub const LIFE: Rule = Rule {
        birth: 1 << 3,
        survival: (1 << 2) | (1 << 3),
    };

    pub fn births_on(&self, count: u8) -> bool {
        self.birth & (1 << count) != 0
    }

    pub fn survives_on(&self, count: u8) -> bool {
        self.survival & (1 << count) != 0
    }

    pub fn next_state(&self, alive: bool, count: u8) -> bool {
        if alive {
            self.survives_on(count)
        } else {
            self.births_on(count)
        }
    }
}

impl Default for Rule {
    fn default() -> Self {
        Rule::LIFE
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("B")?;
        for n in 0..=8 {
            if self.births_on(n) {
                write!(f, "{n}")?;
            }
        }
        f.write_str("/S")?;
        for n in 0..=8 {
            if self.survives_on(n) {
                write!(f, "{n}")?;
            }
        }
        Ok(())
    }
}

/// Inclusive axis-aligned bounds of a set of cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub min: Cell,
    pub max: Cell,
}

impl Bounds {
    pub fn width(&self) -> i32 {
        self.max.x - self.min.x + 1
    }

    pub fn height(&self) -> i32 {
        self.max.y - self.min.y + 1
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x >= self.min.x && c.x <= self.max.x && c.y >= self.min.y && c.y <= self.max.y
    }

    pub fn include(&mut self, c: Cell) {
        self.min.x = self.min.x.min(c.x);
        self.min.y = self.min.y.min(c.y);
        self.max.x = self.max.x.max(c.x);
        self.max.y = self.max.y.max(c.y);
    }

    pub fn union(&self, other: &Bounds) -> Bounds {
        let mut b = *self;
        b.include(other.min);
        b.include(other.max);
        b
    }

    pub fn expand(&self, margin: i32) -> Bounds {
        Bounds {
            min: self.min.offset(-margin, -margin),
            max: self.max.offset(margin, margin),
        }
    }

    pub fn intersects(&self, other: &Bounds) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }

    pub fn of<I: IntoIterator<Item = Cell>>(cells: I) -> Option<Bounds> {
        let mut it = cells.into_iter();
        let first = it.next()?;
        let mut b = Bounds {
            min: first,
            max: first,
        };
        for c in it {
            b.include(c);
        }
        Some(b)
    }
}

/// A finite set of live cells together with the generation it belongs to.
#[derive(Clone, Default)]
pub struct Universe {
    tiles: HashMap<(i32, i32), Tile>,
    generation: u64,
}

fn split(c: Cell) -> ((i32, i32), usize, usize) {
    let tx = c.x.div_euclid(TILE as i32);
    let ty = c.y.div_euclid(TILE as i32);
    let lx = c.x.rem_euclid(TILE as i32) as usize;
    let ly = c.y.rem_euclid(TILE as i32) as usize;
    ((tx, ty), lx, ly)
}

impl Universe {
    pub fn new() -> Self {
        Universe::default()
    }

    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let mut u = Universe::new();
        for c in cells {
            u.set(c, true);
        }
        u
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn with_generation(mut self, generation: u64) -> Self {
        self.generation = generation;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn get(&self, c: Cell) -> bool {
        let (key, lx, ly) = split(c);
        self.tiles.get(&key).is_some_and(|t| t.get(lx, ly))
    }

    pub fn set(&mut self, c: Cell, alive: bool) {
        let (key, lx, ly) = split(c);
        if alive {
            self.tiles
                .entry(key)
                .or_insert_with(Tile::empty)
                .set(lx, ly, true);
        } else if let Some(t) = self.tiles.get_mut(&key) {
            t.set(lx, ly, false);
            if t.is_empty() {
                self.tiles.remove(&key);
            }
        }
    }

    pub fn population(&self) -> usize {
        self.tiles.values().map(Tile::population).sum()
    }

    /// Live cells in row-major order (by `y`, then `x`).
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.population());
        for (&(tx, ty), t) in &self.tiles {
            t.for_each_live(|lx, ly| {
                out.push(Cell::new(
                    tx * TILE as i32 + lx as i32,
                    ty * TILE as i32 + ly as i32,
                ))
            });
        }
        out.sort_by_key(|c| (c.y, c.x));
        out
    }

    pub fn bounding_box(&self) -> Option<Bounds> {
        let mut b: Option<Bounds> = None;
        for (&(tx, ty), t) in &self.tiles {
            if let Some((x0, x1, y0, y1)) = t.bounds() {
                let tb = Bounds {
                    min: Cell::new(tx * TILE as i32 + x0 as i32, ty * TILE as i32 + y0 as i32),
                    max: Cell::new(tx * TILE as i32 + x1 as i32, ty * TILE as i32 + y1 as i32),
                };
                b = Some(match b {
                    Some(acc) => acc.union(&tb),
                    None => tb,
                });
            }
        }
        b
    }

    /// Live cells inside `bounds`.
    pub fn cells_in(&self, bounds: &Bounds) -> Vec<Cell> {
        let mut out = Vec::new();
        let (t0, _, _) = split(bounds.min);
        let (t1, _, _) = split(bounds.max);
        for ty in t0.1..=t1.1 {
            for tx in t0.0..=t1.0 {
                if let Some(t) = self.tiles.get(&(tx, ty)) {
                    t.for_each_live(|lx, ly| {
                        let c =
                            Cell::new(tx * TILE as i32 + lx as i32, ty * TILE as i32 + ly as i32);
                        if bounds.contains(c) {
                            out.push(c);
                        }
                    });
                }
            }
        }
        out.sort_by_key(|c| (c.y, c.x));
        out
    }

    pub fn any_in(&self, bounds: &Bounds) -> bool {
        let (t0, _, _) = split(bounds.min);
        let (t1, _, _) = split(bounds.max);
        for ty in t0.1..=t1.1 {
            for tx in t0.0..=t1.0 {
                if let Some(t) = self.tiles.get(&(tx, ty)) {
                    let ox = tx * TILE as i32;
                    let oy = ty * TILE as i32;
                    let x0 = (bounds.min.x - ox).clamp(0, TILE as i32 - 1) as usize;
                    let x1 = (bounds.max.x - ox).clamp(0, TILE as i32 - 1) as usize;
                    let y0 = (bounds.min.y - oy).clamp(0, TILE as i32 - 1) as usize;
                    let y1 = (bounds.max.y - oy).clamp(0, TILE as i32 - 1) as usize;
                    if t.any_in(x0, x1, y0, y1) {
                        return true;
                    }
                }
            }
        }
        false
    }

    pub fn neighbor_count(&self, c: Cell) -> u8 {
        let mut n = 0;
        for dy in -1..=1 {
            for dx in -1..=1 {
                if (dx, dy) != (0, 0) && self.get(c.offset(dx, dy)) {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn translated(&self, dx: i32, dy: i32) -> Universe {
        Universe::from_cells(self.cells().into_iter().map(|c| c.offset(dx, dy)))
            .with_generation(self.generation)
    }

    /// Applies `f` to every live cell. `f` must be injective.
    pub fn mapped(&self, f: impl Fn(Cell) -> Cell) -> Universe {
        Universe::from_cells(self.cells().into_iter().map(f)).with_generation(self.generation)
    }

    /// Next generation under B3/S23; `self` is left untouched.
    pub fn step(&self) -> Universe {
        let mut next = self.clone();
        next.advance(1);
        next
    }

    /// `n` successive steps.
    pub fn run(&self, n: u64) -> Universe {
        let mut next = self.clone();
        next.advance(n);
        next
    }

    /// In-place stepping, used by long simulations to avoid a clone per generation.
    pub fn advance(&mut self, n: u64) {
        for _ in 0..n {
            self.advance_one();
        }
    }

    fn advance_one(&mut self) {
        let mut todo: Vec<(i32, i32)> = Vec::with_capacity(self.tiles.len() * 2);
        for (&(tx, ty), t) in &self.tiles {
            todo.push((tx, ty));
            let edges = t.edges();
            for dy in -1..=1i32 {
                for dx in -1..=1i32 {
                    if (dx, dy) == (0, 0) || !edges.touches(dx, dy) {
                        continue;
                    }
                    let key = (tx + dx, ty + dy);
                    if !self.tiles.contains_key(&key) {
                        todo.push(key);
                    }
                }
            }
        }
        todo.sort_unstable();
        todo.dedup();

        let empty = Tile::empty();
        let mut next = HashMap::with_capacity_and_hasher(todo.len(), Default::default());
        for (tx, ty) in todo {
            let get = |dx: i32, dy: i32| self.tiles.get(&(tx + dx, ty + dy)).unwrap_or(&empty);
            let hood = [
                [get(-1, -1), get(0, -1), get(1, -1)],
                [get(-1, 0), get(0, 0), get(1, 0)],
                [get(-1, 1), get(0, 1), get(1, 1)],
            ];
            let t = Tile::next(&hood);
            if !t.is_empty() {
                next.insert((tx, ty), t);
            }
        }
        self.tiles = next;
        self.generation += 1;
    }
}

impl PartialEq for Universe {
    /// Compares live sets only; the generation counter is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.tiles == other.tiles
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Universe")
            .field("generation", &self.generation)
            .field("population", &self.population())
            .field("bounds", &self.bounding_box())
            .finish()
    }
}
