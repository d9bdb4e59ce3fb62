use std::fmt;
use std::str::FromStr;

use crate::engine::{Cell, Heading};

/// The eight symmetries of the square lattice.
///
/// Rotations are clockwise as seen on screen (y grows downward), so
/// `Rotate90` turns a south-east glider into a south-west one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Orientation {
    #[default]
    Identity,
    Rotate90,
    Rotate180,
    Rotate270,
    /// `x -> -x`
    FlipX,
    /// `y -> -y`
    FlipY,
    /// `(x, y) -> (y, x)`
    Transpose,
    /// `(x, y) -> (-y, -x)`
    AntiTranspose,
}

impl Orientation {
    pub const ALL: [Orientation; 8] = [
        Orientation::Identity,
        Orientation::Rotate90,
        Orientation::Rotate180,
        Orientation::Rotate270,
        Orientation::FlipX,
        Orientation::FlipY,
        Orientation::Transpose,
        Orientation::AntiTranspose,
    ];

    /// Row-major 2x2 integer matrix acting on `(x, y)`.
    pub fn matrix(self) -> [i32; 4] {
        match self {
            Orientation::Identity => [1, 0, 0, 1],
            Orientation::Rotate90 => [0, -1, 1, 0],
            Orientation::Rotate180 => [-1, 0, 0, -1],
            Orientation::Rotate270 => [0, 1, -1, 0],
            Orientation::FlipX => [-1, 0, 0, 1],
            Orientation::FlipY => [1, 0, 0, -1],
            Orientation::Transpose => [0, 1, 1, 0],
            Orientation::AntiTranspose => [0, -1, -1, 0],
        }
    }

    fn from_matrix(m: [i32; 4]) -> Orientation {
        Orientation::ALL
            .into_iter()
            .find(|o| o.matrix() == m)
            .expect("product of lattice symmetries is a lattice symmetry")
    }

    pub fn apply(self, x: i32, y: i32) -> (i32, i32) {
        let [a, b, c, d] = self.matrix();
        (a * x + b * y, c * x + d * y)
    }

    pub fn apply_cell(self, c: Cell) -> Cell {
        let (x, y) = self.apply(c.x, c.y);
        Cell::new(x, y)
    }

    pub fn apply_heading(self, h: Heading) -> Heading {
        let (dx, dy) = h.delta();
        let (x, y) = self.apply(dx, dy);
        Heading::from_delta(x, y).unwrap()
    }

    /// `self` applied after `first`.
    pub fn after(self, first: Orientation) -> Orientation {
        let [a, b, c, d] = self.matrix();
        let [e, f, g, h] = first.matrix();
        Orientation::from_matrix([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn inverse(self) -> Orientation {
        Orientation::ALL
            .into_iter()
            .find(|o| o.after(self) == Orientation::Identity)
            .unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            Orientation::Identity => "identity",
            Orientation::Rotate90 => "rot90",
            Orientation::Rotate180 => "rot180",
            Orientation::Rotate270 => "rot270",
            Orientation::FlipX => "flip_x",
            Orientation::FlipY => "flip_y",
            Orientation::Transpose => "transpose",
            Orientation::AntiTranspose => "antitranspose",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Orientation::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| format!("unknown orientation `{s}`"))
    }
}
