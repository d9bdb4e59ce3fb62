use glidelogic::engine::{find_gliders, naive, Cell, Heading, Universe};
use glidelogic::patterns::{
    catalog, place, rle, Kind, Orientation, Pattern, PatternError, RleError, CATALOG_NAMES,
};
use proptest::prelude::*;

fn cell_set(cells: &[Cell]) -> Vec<Cell> {
    let mut v = cells.to_vec();
    v.sort_by_key(|c| (c.y, c.x));
    v
}

#[test]
fn catalog_entries_satisfy_their_kind() {
    for name in CATALOG_NAMES {
        let p = catalog(name).unwrap();
        assert!(!p.cells().is_empty());
        assert!(p.cells().iter().any(|c| c.x == 0), "{name}");
        assert!(p.cells().iter().any(|c| c.y == 0), "{name}");
        let u = p.to_universe();
        match p.kind {
            Kind::StillLife | Kind::Eater => assert_eq!(u.step(), u, "{name}"),
            Kind::Oscillator => {
                let k = p.period.unwrap() as u64;
                assert_eq!(u.run(k), u);
                assert!((1..k).all(|j| u.run(j) != u));
            }
            Kind::Spaceship => {
                let v = p.velocity.unwrap();
                // Check against the dense oracle rather than the tiled engine.
                let moved = naive::run_cells(p.cells(), v.period as u64);
                let expect: Vec<Cell> = p.cells().iter().map(|c| c.offset(v.dx, v.dy)).collect();
                assert_eq!(cell_set(&moved), cell_set(&expect));
            }
            Kind::Gun | Kind::Methuselah => {}
        }
    }
}

#[test]
fn unknown_name_is_rejected() {
    match catalog("lwss") {
        Err(PatternError::UnknownName { name, valid }) => {
            assert_eq!(name, "lwss");
            assert_eq!(valid.len(), CATALOG_NAMES.len());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn catalog_basics() {
    let g = catalog("glider").unwrap();
    assert_eq!(
        (g.population(), g.kind, g.period),
        (5, Kind::Spaceship, Some(4))
    );
    let b = catalog("block").unwrap();
    assert_eq!((b.population(), b.width(), b.height()), (4, 2, 2));
    assert_eq!(catalog("gun_p30").unwrap().period, Some(30));
}

#[test]
fn gun_body_repeats_and_emits_every_thirty() {
    let gun = catalog("gun_p30").unwrap().to_universe();
    let mut u = gun.clone();
    let mut counts = Vec::new();
    for _ in 0..12 {
        u.advance(30);
        counts.push(find_gliders(&u).len());
    }
    // From the second period on, one more free glider per period.
    for w in counts.windows(2) {
        assert_eq!(w[1], w[0] + 1, "{counts:?}");
    }
    let body = gun.bounding_box().unwrap();
    let a = u.cells_in(&body);
    let b = u.run(30).cells_in(&body);
    assert_eq!(a, b);
}

#[test]
fn gun_placed_at_origin_has_four_gliders_after_120() {
    let gun = catalog("gun_p30").unwrap();
    let u = place(
        &Universe::new(),
        &gun,
        Cell::new(0, 0),
        Orientation::Identity,
    )
    .unwrap();
    let gl = find_gliders(&u.run(120));
    assert_eq!(gl.len(), 4);
    assert!(gl.iter().all(|g| g.heading == Heading::SouthEast));
}

/// Shoots gliders at `eater` from every nearby start and heading; true if
/// some shot leaves exactly the eater behind within `limit` generations of
/// first contact.
fn absorbs_some_glider(eater: &Pattern, limit: u64) -> bool {
    let rest = cell_set(eater.cells());
    let near = eater
        .placed_bounds(Cell::new(0, 0), Orientation::Identity)
        .expand(1);
    let glider = catalog("glider").unwrap();
    for o in [
        Orientation::Identity,
        Orientation::Rotate90,
        Orientation::Rotate180,
        Orientation::Rotate270,
    ] {
        let g = glider.transform(o);
        for gy in -10..10 {
            for gx in -10..10 {
                let shot: Vec<Cell> = g.cells().iter().map(|c| c.offset(gx, gy)).collect();
                if shot.iter().any(|&c| near.expand(1).contains(c)) {
                    continue;
                }
                let mut u = Universe::from_cells(rest.iter().copied().chain(shot));
                let mut touched = None;
                for t in 0..60u64 {
                    u.advance(1);
                    if touched.is_none() && u.cells_in(&near) != rest {
                        touched = Some(t);
                    }
                    if let Some(t0) = touched {
                        if cell_set(&u.cells()) == rest {
                            if t - t0 <= limit && u.step() == u {
                                return true;
                            }
                            break;
                        }
                    }
                }
            }
        }
    }
    false
}

#[test]
fn eaters_consume_an_aimed_glider() {
    assert!(absorbs_some_glider(&catalog("eater_stopper").unwrap(), 20));
    assert!(absorbs_some_glider(&catalog("eater_detector").unwrap(), 30));
}

#[test]
fn rle_examples() {
    let blinker = Pattern::parse_rle("x = 3, y = 1\nooo!").unwrap();
    assert_eq!(
        blinker.cells(),
        &[Cell::new(0, 0), Cell::new(1, 0), Cell::new(2, 0)]
    );

    let g = Pattern::parse_rle("x = 3, y = 3\nbob$2bo$3o!").unwrap();
    assert_eq!(g.cells(), catalog("glider").unwrap().cells());

    let e = Pattern::parse_rle("x = 1, y = 1, rule = B36/S23\no!").unwrap_err();
    assert!(
        matches!(e, RleError::UnsupportedRule { line: 1, .. }),
        "{e:?}"
    );
    let e = Pattern::parse_rle("x = 1, y = 1\nrule = B36/S23\no!").unwrap_err();
    assert!(
        matches!(
            e,
            RleError::UnsupportedRule { line: 2, .. }
                | RleError::UnexpectedCharacter { line: 2, .. }
        ),
        "{e:?}"
    );
    assert!(Pattern::parse_rle("x = 1, y = 1, rule = b3/s23\no!").is_ok());

    assert!(matches!(
        Pattern::parse_rle("x = 3\nooo!"),
        Err(RleError::MalformedHeader { .. })
    ));
    assert!(matches!(
        Pattern::parse_rle("x = 3, y = 1\nooo"),
        Err(RleError::MissingTerminator { .. })
    ));
    assert!(matches!(
        Pattern::parse_rle("x = 3, y = 1\noxo!"),
        Err(RleError::UnexpectedCharacter {
            line: 2,
            column: 2,
            found: 'x'
        })
    ));
}

#[test]
fn rle_emit_examples() {
    let body = |p: &str| {
        let text = catalog(p).unwrap().to_rle();
        text.lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert!(body("blinker").starts_with("x = 3, y = 1"));
    assert!(body("blinker").ends_with("\nooo!"));
    assert!(body("block").ends_with("\noo$oo!"));
    let horizontal = catalog("blinker").unwrap();
    assert_eq!(
        horizontal
            .transform(Orientation::Rotate90)
            .to_rle()
            .lines()
            .last(),
        Some("o$o$o!")
    );
}

#[test]
fn rle_round_trip_on_catalog() {
    for name in CATALOG_NAMES {
        let p = catalog(name).unwrap();
        assert_eq!(
            Pattern::parse_rle(&p.to_rle()).unwrap().cells(),
            p.cells(),
            "{name}"
        );
    }
}

#[test]
fn transform_examples() {
    let b = catalog("blinker").unwrap();
    assert_eq!(
        b.transform(Orientation::Rotate90).cells(),
        &[Cell::new(0, 0), Cell::new(0, 1), Cell::new(0, 2)]
    );
    for name in CATALOG_NAMES {
        let p = catalog(name).unwrap();
        assert_eq!(p.transform(Orientation::Identity), p);
    }

    let se = catalog("glider").unwrap();
    let sw = se.transform(Orientation::FlipX);
    let v = sw.velocity.unwrap();
    assert_eq!((v.dx, v.dy), Heading::SouthWest.delta());
    let moved = naive::run_cells(sw.cells(), 4);
    let expect: Vec<Cell> = sw.cells().iter().map(|c| c.offset(-1, 1)).collect();
    assert_eq!(cell_set(&moved), cell_set(&expect));
    assert_eq!(sw.kind, Kind::Spaceship);
}

fn any_pattern(max: i32) -> impl Strategy<Value = Pattern> {
    proptest::collection::vec((0..max, 0..max), 1..200)
        .prop_map(|v| Pattern::new("random", v.into_iter().map(Cell::from), Kind::StillLife))
}

fn any_orientation() -> impl Strategy<Value = Orientation> {
    (0usize..8).prop_map(|i| Orientation::ALL[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rle_round_trip(p in any_pattern(64)) {
        let text = p.to_rle();
        let back = Pattern::parse_rle(&text).unwrap();
        prop_assert_eq!(back.cells(), p.cells());
        // The header states the exact bounding box.
        let body = rle::parse(&text).unwrap();
        prop_assert_eq!((body.width, body.height), (p.width(), p.height()));
    }

    #[test]
    fn transform_composes(p in any_pattern(12), a in any_orientation(), b in any_orientation()) {
        prop_assert_eq!(p.transform(a).transform(b), p.transform(b.after(a)));
    }

    #[test]
    fn orientations_are_closed_and_invertible(p in any_pattern(12), a in any_orientation()) {
        prop_assert_eq!(p.transform(a).transform(a.inverse()), p.clone());
        let images: std::collections::HashSet<Vec<Cell>> =
            Orientation::ALL.iter().map(|&o| p.transform(o).cells().to_vec()).collect();
        for &o in &Orientation::ALL {
            prop_assert!(images.contains(p.transform(a).transform(o).cells()));
        }
    }
}
