/// Side length of a tile; one row is one `u64`, bit `i` holds column `i`.
pub(super) const TILE: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub(super) struct Tile(Box<[u64; TILE]>);

pub(super) struct Edges {
    top: bool,
    bottom: bool,
    left: bool,
    right: bool,
}

impl Edges {
    /// Whether the neighbouring tile at `(dx, dy)` can see a live cell of this one.
    pub(super) fn touches(&self, dx: i32, dy: i32) -> bool {
        (dx != -1 || self.left)
            && (dx != 1 || self.right)
            && (dy != -1 || self.top)
            && (dy != 1 || self.bottom)
    }
}

impl Tile {
    pub(super) fn empty() -> Tile {
        Tile(Box::new([0; TILE]))
    }

    pub(super) fn get(&self, x: usize, y: usize) -> bool {
        self.0[y] >> x & 1 == 1
    }

    pub(super) fn set(&mut self, x: usize, y: usize, alive: bool) {
        if alive {
            self.0[y] |= 1 << x;
        } else {
            self.0[y] &= !(1 << x);
        }
    }

    pub(super) fn is_empty(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }

    pub(super) fn population(&self) -> usize {
        self.0.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub(super) fn for_each_live(&self, mut f: impl FnMut(usize, usize)) {
        for (y, &row) in self.0.iter().enumerate() {
            let mut r = row;
            while r != 0 {
                let x = r.trailing_zeros() as usize;
                f(x, y);
                r &= r - 1;
            }
        }
    }

    pub(super) fn bounds(&self) -> Option<(usize, usize, usize, usize)> {
        let y0 = self.0.iter().position(|&r| r != 0)?;
        let y1 = self.0.iter().rposition(|&r| r != 0)?;
        let all = self.0.iter().fold(0u64, |a, &r| a | r);
        Some((
            all.trailing_zeros() as usize,
            63 - all.leading_zeros() as usize,
            y0,
            y1,
        ))
    }

    pub(super) fn any_in(&self, x0: usize, x1: usize, y0: usize, y1: usize) -> bool {
        let width = x1 - x0 + 1;
        let mask = if width == 64 {
            u64::MAX
        } else {
            ((1u64 << width) - 1) << x0
        };
        self.0[y0..=y1].iter().any(|&r| r & mask != 0)
    }

    pub(super) fn edges(&self) -> Edges {
        let all = self.0.iter().fold(0u64, |a, &r| a | r);
        Edges {
            top: self.0[0] != 0,
            bottom: self.0[TILE - 1] != 0,
            left: all & 1 != 0,
            right: all >> 63 != 0,
        }
    }

    /// Next state of the centre tile of a 3x3 neighbourhood.
    pub(super) fn next(hood: &[[&Tile; 3]; 3]) -> Tile {
        // Row `r` in -1..=64 of the column `col` (0 = west, 1 = centre, 2 = east).
        let row = |col: usize, r: isize| -> u64 {
            if r < 0 {
                hood[0][col].0[TILE - 1]
            } else if r as usize >= TILE {
                hood[2][col].0[0]
            } else {
                hood[1][col].0[r as usize]
            }
        };
        // Left/centre/right views of a row: bit i of `l` is the cell at i-1.
        let views = |r: isize| -> (u64, u64, u64) {
            let m = row(1, r);
            let l = (m << 1) | (row(0, r) >> 63);
            let rr = (m >> 1) | (row(2, r) << 63);
            (l, m, rr)
        };

        let mut out = Tile::empty();
        let mut above = views(-1);
        let mut here = views(0);
        for r in 0..TILE {
            let below = views(r as isize + 1);
            let cur = here.1;
            if above.0 | above.1 | above.2 | here.0 | cur | here.2 | below.0 | below.1 | below.2
                != 0
            {
                // Bit-sliced sum of the eight neighbours.
                let (a1, a2) = add3(above.0, above.1, above.2);
                let (m1, m2) = (here.0 ^ here.2, here.0 & here.2);
                let (b1, b2) = add3(below.0, below.1, below.2);
                let (ones, carry) = add3(a1, m1, b1);
                // Count of weight-2 terms must be exactly one for totals 2 and 3.
                let p = a2 ^ m2;
                let q = a2 & m2;
                let s = b2 ^ carry;
                let t = b2 & carry;
                let twos_is_one = (p ^ s) & !(q | t);
                out.0[r] = twos_is_one & (ones | cur);
            }
            above = here;
            here = below;
        }
        out
    }
}

#[inline(always)]
fn add3(a: u64, b: u64, c: u64) -> (u64, u64) {
    let x = a ^ b;
    (x ^ c, (a & b) | (c & x))
}
