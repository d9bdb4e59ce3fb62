//! The diagonal frame used by layout. `u = x + y` grows along south-east
//! lanes and `w = y - x` along south-west ones, so a south-east stream is a
//! row of constant `w` and a south-west stream a column of constant `u`.
//! Mirroring across the vertical axis swaps `u` and `w`.

use crate::engine::{Cell, Heading};

pub fn uw(c: Cell) -> (i32, i32) {
    (c.x + c.y, c.y - c.x)
}

/// Inverse of [`uw`]; `None` when `u + w` is odd (not a lattice point).
pub fn from_uw(u: i32, w: i32) -> Option<Cell> {
    if (u + w).rem_euclid(2) != 0 {
        return None;
    }
    Some(Cell::new((u - w) / 2, (u + w) / 2))
}

/// Inclusive box in the diagonal frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rect {
    pub u0: i32,
    pub u1: i32,
    pub w0: i32,
    pub w1: i32,
}

impl Rect {
    pub fn of(cells: impl IntoIterator<Item = Cell>) -> Option<Rect> {
        let mut it = cells.into_iter().map(uw);
        let (u, w) = it.next()?;
        let mut r = Rect {
            u0: u,
            u1: u,
            w0: w,
            w1: w,
        };
        for (u, w) in it {
            r.u0 = r.u0.min(u);
            r.u1 = r.u1.max(u);
            r.w0 = r.w0.min(w);
            r.w1 = r.w1.max(w);
        }
        Some(r)
    }

    pub fn union(&self, o: &Rect) -> Rect {
        Rect {
            u0: self.u0.min(o.u0),
            u1: self.u1.max(o.u1),
            w0: self.w0.min(o.w0),
            w1: self.w1.max(o.w1),
        }
    }

    pub fn intersects(&self, o: &Rect) -> bool {
        self.u0 <= o.u1 && o.u0 <= self.u1 && self.w0 <= o.w1 && o.w0 <= self.w1
    }

    pub fn contains(&self, u: i32, w: i32) -> bool {
        (self.u0..=self.u1).contains(&u) && (self.w0..=self.w1).contains(&w)
    }

    pub fn mirrored(&self) -> Rect {
        Rect {
            u0: self.w0,
            u1: self.w1,
            w0: self.u0,
            w1: self.u1,
        }
    }
}

/// A glider stream leaving a gun, pinned by where the first glider's 3x3
/// box is centred at generation `t0` (the generation it is first seen).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stream {
    pub heading: Heading,
    pub centre: Cell,
    pub t0: i64,
}

impl Stream {
    fn check(&self) {
        assert!(
            matches!(self.heading, Heading::SouthEast | Heading::SouthWest),
            "layout streams travel south-east or south-west"
        );
    }

    /// The constant coordinate of the lane: `w` for south-east, `u` for south-west.
    pub fn lane(&self) -> i32 {
        self.check();
        let (u, w) = uw(self.centre);
        if self.heading == Heading::SouthEast {
            w
        } else {
            u
        }
    }

    /// Coordinate along the direction of travel.
    pub fn along(&self, c: Cell) -> i32 {
        let (u, w) = uw(c);
        if self.heading == Heading::SouthEast {
            u
        } else {
            w
        }
    }

    pub fn start(&self) -> i32 {
        self.along(self.centre)
    }

    /// Generation at which the first glider's centre reaches `along`.
    /// Gliders cover two diagonal units every four generations.
    pub fn arrival(&self, along: i32) -> i64 {
        self.t0 + 2 * (along - self.start()) as i64
    }

    /// First lane point at or beyond `along` that the glider centre visits.
    pub fn point_at(&self, along: i32) -> Cell {
        let k = (along - self.start()).div_euclid(2) + (along - self.start()).rem_euclid(2);
        let (dx, dy) = self.heading.delta();
        self.centre.offset(k * dx, k * dy)
    }

    pub fn translated(&self, dx: i32, dy: i32) -> Stream {
        Stream {
            centre: self.centre.offset(dx, dy),
            ..*self
        }
    }

    pub fn mirrored(&self) -> Stream {
        Stream {
            heading: self.heading.mirrored(),
            centre: Cell::new(-self.centre.x, self.centre.y),
            t0: self.t0,
        }
    }
}

/// Relative geometry of a south-east and a south-west stream, reduced to
/// one of 30 classes. Two crossings of the same class behave identically:
/// shifting a source one cell along its lane or moving it by a full gun
/// period leaves the interaction unchanged up to translation.
///
/// With `d` and `off` the x and y offsets of the south-west centre from the
/// south-east one (same `t0`), the class is `off - 15 d mod 30`.
pub fn crossing_class(a: &Stream, b: &Stream) -> u8 {
    let (se, sw) = match (a.heading, b.heading) {
        (Heading::SouthEast, Heading::SouthWest) => (a, b),
        (Heading::SouthWest, Heading::SouthEast) => (b, a),
        _ => panic!("crossing needs one south-east and one south-west stream"),
    };
    // Bring both to a common reference generation; a glider moves one cell per 4.
    let dt = se.t0 - sw.t0;
    assert!(
        dt.rem_euclid(4) == 0,
        "streams are out of phase by {dt} generations"
    );
    let k = (dt / 4) as i32;
    let (dx, dy) = sw.heading.delta();
    let swc = sw.centre.offset(k * dx, k * dy);
    let d = swc.x - se.centre.x;
    let off = swc.y - se.centre.y;
    (off - 15 * d.rem_euclid(2)).rem_euclid(30) as u8
}

/// Crossing classes in which two streams annihilate glider for glider with
/// nothing left behind, also when either stream has gaps. Established by
/// simulation; see the `crossings` test.
pub const CLEAN_CROSSINGS: [u8; 4] = [1, 2, 28, 29];

/// Where the two streams meet, in the diagonal frame.
pub fn crossing_point(a: &Stream, b: &Stream) -> (i32, i32) {
    let (se, sw) = if a.heading == Heading::SouthEast {
        (a, b)
    } else {
        (b, a)
    };
    (sw.lane(), se.lane())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_round_trip() {
        for c in [Cell::new(0, 0), Cell::new(3, -7), Cell::new(-5, 2)] {
            let (u, w) = uw(c);
            assert_eq!(from_uw(u, w), Some(c));
        }
        assert_eq!(from_uw(1, 0), None);
    }

    #[test]
    fn class_is_invariant_under_lattice_moves() {
        let a = Stream {
            heading: Heading::SouthEast,
            centre: Cell::new(3, 4),
            t0: 10,
        };
        let b = Stream {
            heading: Heading::SouthWest,
            centre: Cell::new(40, 5),
            t0: 10,
        };
        let c = crossing_class(&a, &b);
        assert_eq!(c, (1 - 15 * 37i32).rem_euclid(30) as u8);
        // Translating both streams together changes nothing.
        assert_eq!(
            crossing_class(&a.translated(5, -2), &b.translated(5, -2)),
            c
        );
        // One cell along either lane.
        assert_eq!(crossing_class(&a, &b.translated(-1, 1)), (c + 16) % 30);
        assert_eq!(crossing_class(&a.translated(1, 1), &b), (c + 14) % 30);
        // A mirror image reverses the class.
        assert_eq!(crossing_class(&b.mirrored(), &a.mirrored()), (30 - c) % 30);
    }

    #[test]
    fn arrival_and_points() {
        let s = Stream {
            heading: Heading::SouthWest,
            centre: Cell::new(10, 0),
            t0: 5,
        };
        assert_eq!(s.lane(), 10);
        assert_eq!(s.start(), -10);
        let p = s.point_at(-5);
        assert_eq!(p, Cell::new(7, 3));
        assert_eq!(s.arrival(s.along(p)), 5 + 12);
    }
}
