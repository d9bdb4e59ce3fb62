//! Dense per-cell reference stepper.
//!
//! Scans the bounding box plus a one-cell margin with a plain `Vec<bool>`
//! and applies the rule cell by cell. It shares nothing with the tiled
//! engine except the [`Cell`] type, which is what makes it a useful oracle.

use super::{Cell, Rule};

pub fn step_cells(cells: &[Cell]) -> Vec<Cell> {
    if cells.is_empty() {
        return Vec::new();
    }
    let min_x = cells.iter().map(|c| c.x).min().unwrap() - 1;
    let max_x = cells.iter().map(|c| c.x).max().unwrap() + 1;
    let min_y = cells.iter().map(|c| c.y).min().unwrap() - 1;
    let max_y = cells.iter().map(|c| c.y).max().unwrap() + 1;
    let w = (max_x - min_x + 1) as usize;
    let h = (max_y - min_y + 1) as usize;
    let mut grid = vec![false; w * h];
    for c in cells {
        grid[(c.y - min_y) as usize * w + (c.x - min_x) as usize] = true;
    }
    let at = |x: isize, y: isize| -> bool {
        x >= 0
            && y >= 0
            && (x as usize) < w
            && (y as usize) < h
            && grid[y as usize * w + x as usize]
    };
    let rule = Rule::LIFE;
    let mut out = Vec::new();
    for y in 0..h as isize {
        for x in 0..w as isize {
            let mut n = 0u8;
            for dy in -1..=1 {
                for dx in -1..=1 {
                    if (dx, dy) != (0, 0) && at(x + dx, y + dy) {
                        n += 1;
                    }
                }
            }
            if rule.next_state(at(x, y), n) {
                out.push(Cell::new(x as i32 + min_x, y as i32 + min_y));
            }
        }
    }
    out
}

pub fn run_cells(cells: &[Cell], n: u64) -> Vec<Cell> {
    let mut cur = cells.to_vec();
    for _ in 0..n {
        cur = step_cells(&cur);
    }
    cur
}
