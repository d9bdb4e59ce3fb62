use std::collections::HashMap;
use std::sync::OnceLock;

use super::{Kind, Pattern, PatternError, Velocity};
use crate::engine::{find_gliders, Cell, Heading, Universe};

pub const CATALOG_NAMES: [&str; 8] = [
    "block",
    "beehive",
    "blinker",
    "glider",
    "r_pentomino",
    "gun_p30",
    "eater_stopper",
    "eater_detector",
];

/// Shipped fixture text for a catalog entry.
pub fn fixture_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "block" => include_str!("../../fixtures/block.rle"),
        "beehive" => include_str!("../../fixtures/beehive.rle"),
        "blinker" => include_str!("../../fixtures/blinker.rle"),
        "glider" => include_str!("../../fixtures/glider.rle"),
        "r_pentomino" => include_str!("../../fixtures/r_pentomino.rle"),
        "gun_p30" => include_str!("../../fixtures/gun_p30.rle"),
        "eater_stopper" => include_str!("../../fixtures/eater_stopper.rle"),
        "eater_detector" => include_str!("../../fixtures/eater_detector.rle"),
        _ => return None,
    })
}

pub fn catalog_names() -> Vec<String> {
    CATALOG_NAMES.iter().map(|s| s.to_string()).collect()
}

type Loaded = HashMap<&'static str, Result<Pattern, PatternError>>;

/// Looks up a catalog pattern. The whole catalog is decoded and verified by
/// simulation on first use.
pub fn catalog(name: &str) -> Result<Pattern, PatternError> {
    static CATALOG: OnceLock<Loaded> = OnceLock::new();
    let loaded = CATALOG.get_or_init(|| CATALOG_NAMES.iter().map(|&n| (n, load(n))).collect());
    match loaded.get(name) {
        Some(r) => r.clone(),
        None => Err(PatternError::UnknownName {
            name: name.to_string(),
            valid: catalog_names(),
        }),
    }
}

fn load(name: &'static str) -> Result<Pattern, PatternError> {
    let body = super::rle::parse(fixture_text(name).unwrap())?;
    let base = Pattern::new(name, body.cells, Kind::StillLife);
    let p = match name {
        "block" | "beehive" => base,
        "blinker" => Pattern {
            kind: Kind::Oscillator,
            ..base
        }
        .with_period(2),
        "glider" => Pattern {
            kind: Kind::Spaceship,
            ..base
        }
        .with_period(4)
        .with_velocity(Velocity {
            dx: 1,
            dy: 1,
            period: 4,
        }),
        "r_pentomino" => Pattern {
            kind: Kind::Methuselah,
            ..base
        },
        "gun_p30" => Pattern {
            kind: Kind::Gun,
            ..base
        }
        .with_period(30),
        "eater_stopper" | "eater_detector" => Pattern {
            kind: Kind::Eater,
            ..base
        }
        .with_period(1),
        _ => unreachable!(),
    };
    verify(&p).map_err(|reason| PatternError::Verification {
        name: name.to_string(),
        reason,
    })?;
    Ok(p)
}

fn verify(p: &Pattern) -> Result<(), String> {
    let u = p.to_universe();
    match p.kind {
        Kind::StillLife | Kind::Eater => {
            if u.step() != u {
                return Err("not fixed by one step".into());
            }
        }
        Kind::Oscillator => {
            let period = p.period.unwrap() as u64;
            if u.run(period) != u {
                return Err(format!("does not return after {period} generations"));
            }
            if (1..period).any(|k| u.run(k) == u) {
                return Err("returns before its stated period".into());
            }
        }
        Kind::Spaceship => {
            let v = p.velocity.unwrap();
            if u.run(v.period as u64) != u.translated(v.dx, v.dy) {
                return Err("does not translate by its velocity".into());
            }
        }
        Kind::Gun => {
            let e = gun_emission_of(p)?;
            if e.period != p.period.unwrap() {
                return Err(format!("emits every {} generations", e.period));
            }
        }
        Kind::Methuselah => {}
    }
    Ok(())
}

/// Where and when a gun in its catalog orientation releases gliders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GunEmission {
    pub heading: Heading,
    pub period: u32,
    /// First generation at which the first glider is isolated.
    pub first_seen: u64,
    /// Top-left of the first glider's box at `first_seen`, relative to the gun origin.
    pub first_position: Cell,
    /// Phase of that glider at `first_seen`.
    pub first_phase: u8,
}

/// Emission parameters of `gun_p30` in its catalog orientation.
pub fn gun_emission() -> GunEmission {
    static E: OnceLock<GunEmission> = OnceLock::new();
    *E.get_or_init(|| gun_emission_of(&catalog("gun_p30").expect("gun fixture verifies")).unwrap())
}

fn gun_emission_of(p: &Pattern) -> Result<GunEmission, String> {
    let body = p.to_universe();
    let mut u = body.clone();
    let mut first: Option<(u64, Cell, u8, Heading)> = None;
    let mut sightings: Vec<u64> = Vec::new();
    let mut known = 0;
    for t in 1..=330u64 {
        u.advance(1);
        let gl = find_gliders(&u);
        if gl.len() > known {
            sightings.push(t);
            if first.is_none() {
                let g = gl[0];
                first = Some((t, g.position, g.phase, g.heading));
            }
        }
        if gl.len() < known {
            return Err("a glider was destroyed near the gun".into());
        }
        known = gl.len();
    }
    let (first_seen, first_position, first_phase, heading) = first.ok_or("no glider emitted")?;
    let gaps: Vec<u64> = sightings.windows(2).map(|w| w[1] - w[0]).collect();
    let period = gaps.first().copied().ok_or("only one glider emitted")?;
    if gaps.iter().any(|&g| g != period) || sightings.len() < 10 {
        return Err(format!("irregular emission at {sightings:?}"));
    }
    // The body, with gliders removed, must itself repeat with the emission period.
    let strip = |u: &Universe| -> Vec<Cell> {
        let gl: Vec<Cell> = find_gliders(u)
            .iter()
            .flat_map(|g| g.cells().collect::<Vec<_>>())
            .collect();
        u.cells().into_iter().filter(|c| !gl.contains(c)).collect()
    };
    let late = body.run(300);
    let later = late.run(period);
    if strip(&late) != strip(&later) {
        return Err("gun body is not periodic".into());
    }
    Ok(GunEmission {
        heading,
        period: period as u32,
        first_seen,
        first_position,
        first_phase,
    })
}
