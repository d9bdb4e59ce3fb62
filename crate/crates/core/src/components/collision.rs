use std::fmt;

use super::geometry::{crossing_class, Stream, CLEAN_CROSSINGS};
use super::parts::{gun_with_centre, Component, Role};
use crate::engine::{find_gliders, Bounds, Cell, Heading, Universe};

/// Two guns whose streams meet, measured between the centres of their
/// nascent gliders: `nascent_distance` along x, `lateral_offset` along y.
///
/// `gun_a` fires south-east and `gun_b` is its mirror image firing
/// south-west, so the streams approach each other symmetrically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionSpec {
    pub gun_a: Component,
    pub gun_b: Component,
    pub lateral_offset: i32,
    pub nascent_distance: i32,
}

impl CollisionSpec {
    pub fn facing(nascent_distance: i32, lateral_offset: i32) -> CollisionSpec {
        let gun_a = gun_with_centre(Heading::SouthEast, Cell::new(0, 0), Role::Gun);
        let gun_b = gun_with_centre(
            Heading::SouthWest,
            Cell::new(nascent_distance, lateral_offset),
            Role::Gun,
        );
        CollisionSpec {
            gun_a,
            gun_b,
            lateral_offset,
            nascent_distance,
        }
    }

    fn streams(&self) -> (Stream, Stream) {
        (
            self.gun_a.stream().expect("gun"),
            self.gun_b.stream().expect("gun"),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alignment {
    CleanAnnihilation,
    TwoPhaseBlock,
    Misaligned,
}

impl fmt::Display for Alignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alignment::CleanAnnihilation => "clean-annihilation",
            Alignment::TwoPhaseBlock => "two-phase-block",
            Alignment::Misaligned => "misaligned",
        })
    }
}

/// Predicts the outcome from the geometry alone.
///
/// Even distance with offset zero gives the two-block process. Even
/// distance with offset one or two cancels cleanly: the streams meet at a
/// right angle, and offset two behaves like offset one. Offset three is
/// clean only while the guns are close and is treated as misaligned, like
/// everything else.
pub fn check_annihilation_alignment(s: &CollisionSpec) -> Alignment {
    let (a, b) = s.streams();
    let class = crossing_class(&a, &b);
    if class == 0 {
        Alignment::TwoPhaseBlock
    } else if CLEAN_CROSSINGS.contains(&class) {
        Alignment::CleanAnnihilation
    } else {
        Alignment::Misaligned
    }
}

fn isolated_block_at(u: &Universe, c: Cell) -> bool {
    (-1..=2).all(|dy| {
        (-1..=2).all(|dx| {
            let inside = (0..=1).contains(&dx) && (0..=1).contains(&dy);
            u.get(c.offset(dx, dy)) == inside
        })
    })
}

fn without_gliders(u: &Universe) -> Vec<Cell> {
    let gl: Vec<Cell> = find_gliders(u)
        .iter()
        .flat_map(|g| g.cells().collect::<Vec<_>>())
        .collect();
    u.cells().into_iter().filter(|c| !gl.contains(c)).collect()
}

/// Generations simulated by [`simulate_alignment`].
pub const COLLISION_RUN: u64 = 600;

/// Classifies the collision by running both guns for [`COLLISION_RUN`]
/// generations.
///
/// * misaligned: a glider gets past the meeting point, a gun body is
///   damaged, or debris outside the guns never clears during the last
///   gun period;
/// * two-phase-block: otherwise, if an isolated block sits still for four
///   or more generations away from the guns;
/// * clean-annihilation: otherwise.
pub fn simulate_alignment(s: &CollisionSpec) -> Alignment {
    let (a, b) = s.streams();
    let cells_a = s.gun_a.cells();
    let cells_b = s.gun_b.cells();
    let box_a = Bounds::of(cells_a.iter().copied()).unwrap();
    let box_b = Bounds::of(cells_b.iter().copied()).unwrap();
    let near_gun = |c: Cell| box_a.expand(3).contains(c) || box_b.expand(3).contains(c);

    let mut u = Universe::from_cells(cells_a.iter().chain(&cells_b).copied());
    if u.population() != cells_a.len() + cells_b.len() {
        return Alignment::Misaligned;
    }
    let mut solo_a = Universe::from_cells(cells_a.iter().copied());
    let mut solo_b = Universe::from_cells(cells_b.iter().copied());

    // x where the lanes cross.
    let meet_x = ((b.centre.x + b.centre.y) - (a.centre.y - a.centre.x)) / 2;
    let last_period = COLLISION_RUN - 30;
    let mut block_runs: Vec<(Cell, u32)> = Vec::new();
    let mut steady_blocks = false;
    let mut cleared = false;
    for t in 1..=COLLISION_RUN {
        u.advance(1);
        solo_a.advance(1);
        solo_b.advance(1);
        let gliders = find_gliders(&u);
        let escaped = gliders.iter().any(|g| {
            let cx = g.position.x + 1;
            (g.heading == Heading::SouthEast && cx > meet_x + 4)
                || (g.heading == Heading::SouthWest && cx < meet_x - 4)
        });
        if escaped {
            return Alignment::Misaligned;
        }

        let blocks: Vec<Cell> = u
            .cells()
            .into_iter()
            .filter(|&c| !near_gun(c) && isolated_block_at(&u, c))
            .collect();
        block_runs = blocks
            .iter()
            .map(|&c| {
                let run = block_runs
                    .iter()
                    .find(|(p, _)| *p == c)
                    .map_or(1, |&(_, n)| n + 1);
                (c, run)
            })
            .collect();
        steady_blocks |= block_runs.iter().any(|&(_, n)| n >= 4);

        if t > last_period {
            let rest = without_gliders(&u);
            if rest.iter().all(|&c| near_gun(c)) {
                cleared = true;
            }
            let body = |w: &Universe, bx: &Bounds| -> Vec<Cell> {
                without_gliders(w)
                    .into_iter()
                    .filter(|c| bx.contains(*c))
                    .collect()
            };
            if body(&u, &box_a) != body(&solo_a, &box_a)
                || body(&u, &box_b) != body(&solo_b, &box_b)
            {
                return Alignment::Misaligned;
            }
        }
    }
    if !cleared {
        Alignment::Misaligned
    } else if steady_blocks {
        Alignment::TwoPhaseBlock
    } else {
        Alignment::CleanAnnihilation
    }
}
