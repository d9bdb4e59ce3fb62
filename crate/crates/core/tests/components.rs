use glidelogic::components::geometry::uw;
use glidelogic::components::{
    activate_input, assignments, build_and, build_not, build_or, calibrate,
    check_annihilation_alignment, probe_output, simulate_alignment, Alignment, Block,
    CollisionSpec, Component, ComponentError, GateKind, GateTemplate, Role, DEFAULT_SEARCH_RANGE,
    PROBE_WINDOW,
};
use glidelogic::engine::{find_gliders, Cell, Heading, Universe};

fn input_part(b: &Block) -> &Component {
    &b.parts[b.inputs[0].1]
}

/// Lane and along coordinates of `c` relative to a stream heading.
fn lane_along(h: Heading, c: Cell) -> (i32, i32) {
    let (u, w) = uw(c);
    if h == Heading::SouthEast {
        (w, u)
    } else {
        (u, w)
    }
}

fn stopper_far_side(c: &Component) -> i32 {
    let h = c.stream().unwrap().heading;
    c.stopper
        .as_ref()
        .unwrap()
        .cells()
        .iter()
        .map(|&x| lane_along(h, x).1)
        .max()
        .unwrap()
}

#[test]
fn activation_clears_the_stopper_in_nine() {
    let b = Block::input("A");
    let part = input_part(&b);
    let stopper = part.stopper.as_ref().unwrap().cells();
    let u = activate_input(&b.universe(), part).unwrap();
    let after = u.run(9);
    assert!(stopper.iter().all(|&c| !after.get(c)));
    // Without activation the stopper is still whole at that point.
    let idle = b.universe().run(9);
    assert!(stopper.iter().all(|&c| idle.get(c)));
}

fn downstream_gliders(u: &Universe, part: &Component) -> usize {
    let s = part.stream().unwrap();
    let far = stopper_far_side(part);
    find_gliders(u)
        .iter()
        .filter(|g| {
            g.heading == s.heading && lane_along(s.heading, g.position.offset(1, 1)).1 > far
        })
        .count()
}

#[test]
fn idle_input_lets_nothing_through() {
    let b = Block::input("A");
    let part = input_part(&b);
    let mut u = b.universe();
    for _ in 0..200 {
        u.advance(1);
        assert_eq!(
            downstream_gliders(&u, part),
            0,
            "generation {}",
            u.generation()
        );
    }
}

#[test]
fn active_input_streams_every_thirty() {
    let b = Block::input("A");
    let part = input_part(&b);
    let mut u = activate_input(&b.universe(), part).unwrap();
    let mut seen = 0;
    let mut arrivals = Vec::new();
    for _ in 0..200 {
        u.advance(1);
        let n = downstream_gliders(&u, part);
        if n > seen {
            arrivals.push(u.generation());
        }
        seen = n;
    }
    assert!(arrivals.len() >= 4, "{arrivals:?}");
    assert!(
        arrivals.windows(2).all(|w| w[1] - w[0] == 30),
        "{arrivals:?}"
    );
}

#[test]
fn activation_errors() {
    let b = Block::input("A");
    let part = input_part(&b);
    let gun = Component {
        role: Role::Gun,
        ..part.clone()
    };
    assert_eq!(
        activate_input(&b.universe(), &gun),
        Err(ComponentError::WrongRole {
            expected: Role::Input,
            found: Role::Gun
        })
    );
    let once = activate_input(&b.universe(), part).unwrap();
    assert_eq!(
        activate_input(&once, part),
        Err(ComponentError::AlreadyActivated(part.control_cell.unwrap()))
    );
    assert_eq!(
        activate_input(&b.universe().run(1), part),
        Err(ComponentError::NotAtGenerationZero(1))
    );
}

#[test]
fn probe_sees_a_stream_at_any_phase() {
    let b = Block::input("A").with_detector();
    let detector = &b.parts[b.detector.unwrap()];
    let input = input_part(&b);
    let start = b.probe_generation();
    let mut u = activate_input(&b.universe(), input).unwrap().run(start);
    let mut idle = b.universe().run(start);
    let mut states = Vec::new();
    let mut idle_states = Vec::new();
    for _ in 0..(PROBE_WINDOW + 30) {
        states.push(u.clone());
        idle_states.push(idle.clone());
        u.advance(1);
        idle.advance(1);
    }
    for k in 0..30 {
        let window = &states[k..k + PROBE_WINDOW as usize];
        assert_eq!(probe_output(window, detector), Ok(true), "offset {k}");
        let window = &idle_states[k..k + PROBE_WINDOW as usize];
        assert_eq!(probe_output(window, detector), Ok(false), "offset {k}");
    }
    assert!(matches!(
        probe_output(&states, input),
        Err(ComponentError::WrongRole {
            expected: Role::Output,
            ..
        })
    ));
}

type Rows = &'static [(&'static [bool], bool)];

fn gates() -> Vec<GateTemplate> {
    vec![
        build_and().unwrap(),
        build_or().unwrap(),
        build_not().unwrap(),
    ]
}

#[test]
fn truth_tables() {
    let table: [(GateKind, Rows); 3] = [
        (
            GateKind::And,
            &[
                (&[false, false], false),
                (&[false, true], false),
                (&[true, false], false),
                (&[true, true], true),
            ],
        ),
        (
            GateKind::Or,
            &[
                (&[false, false], false),
                (&[false, true], true),
                (&[true, false], true),
                (&[true, true], true),
            ],
        ),
        (GateKind::Not, &[(&[false], true), (&[true], false)]),
    ];
    let gates = gates();
    for (kind, rows) in table {
        let g = gates.iter().find(|g| g.kind == kind).unwrap();
        for &(inputs, want) in rows {
            let o = g.evaluate(inputs);
            assert_eq!(o.output, want, "{kind} {inputs:?}");
            assert!(
                o.debris.is_empty(),
                "{kind} {inputs:?} left debris at {:?}",
                &o.debris[..o.debris.len().min(5)]
            );
            assert!(!o.crosstalk, "{kind} {inputs:?}");
            if want {
                let hit = o.hit.unwrap();
                assert!((g.probe_generation..g.probe_generation + g.probe_window).contains(&hit));
            }
        }
    }
}

#[test]
fn gate_shapes() {
    for g in gates() {
        let inputs = g
            .components()
            .iter()
            .filter(|c| c.role == Role::Input)
            .count();
        assert_eq!(inputs, g.kind.arity());
        assert_eq!(
            g.components()
                .iter()
                .filter(|c| c.role == Role::Output)
                .count(),
            1
        );
        assert_eq!(g.input_cells.len(), g.kind.arity());
        assert_eq!(g.probe_window, 30);
        assert_eq!(g.certificate.len(), 1 << g.kind.arity());
        let guns = g
            .components()
            .iter()
            .filter(|c| c.role == Role::Gun)
            .count();
        assert_eq!(
            guns,
            if g.kind == GateKind::Or { 2 } else { 1 },
            "{}",
            g.kind
        );
    }
    let not = build_not().unwrap();
    let input_heading = not
        .components()
        .iter()
        .find(|c| c.role == Role::Input)
        .unwrap()
        .stream()
        .unwrap()
        .heading;
    assert_ne!(not.output_heading, input_heading);
    assert!(not.output_heading.is_perpendicular(input_heading));
}

/// Beyond an idle input's stopper the lattice must look exactly as if that
/// input's gun were not there at all.
#[test]
fn idle_inputs_stay_stopped_for_ten_periods() {
    for g in gates() {
        let inputs: Vec<&Component> = g
            .components()
            .iter()
            .filter(|c| c.role == Role::Input)
            .collect();
        for assignment in assignments(inputs.len()) {
            let mut u = g.universe();
            for (c, &on) in inputs.iter().zip(&assignment) {
                if on {
                    u = activate_input(&u, c).unwrap();
                }
            }
            for (c, _) in inputs.iter().zip(&assignment).filter(|(_, &on)| !on) {
                let stopper = c.stopper.as_ref().unwrap().cells();
                let mut without = u.clone();
                for cell in c.cells().into_iter().filter(|x| !stopper.contains(x)) {
                    without.set(cell, false);
                }
                let s = c.stream().unwrap();
                let (lane, far) = (s.lane(), stopper_far_side(c));
                let beyond = |v: &Universe| -> Vec<Cell> {
                    v.cells()
                        .into_iter()
                        .filter(|&x| {
                            let (l, a) = lane_along(s.heading, x);
                            (l - lane).abs() <= 2 && a > far + 2
                        })
                        .collect()
                };
                let mut with = u.clone();
                for _ in 0..300 {
                    with.advance(1);
                    without.advance(1);
                    assert_eq!(
                        beyond(&with),
                        beyond(&without),
                        "{} {assignment:?} at {}",
                        g.kind,
                        with.generation()
                    );
                }
            }
        }
    }
}

#[test]
fn classifier_matches_simulation() {
    for d in 28..=36 {
        for off in -2..=2 {
            let s = CollisionSpec::facing(d, off);
            assert_eq!(
                check_annihilation_alignment(&s),
                simulate_alignment(&s),
                "distance {d}, offset {off}"
            );
        }
    }
    assert_eq!(
        check_annihilation_alignment(&CollisionSpec::facing(32, 1)),
        Alignment::CleanAnnihilation
    );
    assert_eq!(
        check_annihilation_alignment(&CollisionSpec::facing(32, 0)),
        Alignment::TwoPhaseBlock
    );
    assert_eq!(
        check_annihilation_alignment(&CollisionSpec::facing(31, 1)),
        Alignment::Misaligned
    );
}

#[test]
fn calibration_reproduces_the_shipped_fixtures() {
    for (kind, shipped) in [
        (GateKind::Not, build_not().unwrap()),
        (GateKind::And, build_and().unwrap()),
    ] {
        let fresh = calibrate(kind, DEFAULT_SEARCH_RANGE).unwrap();
        assert_eq!(fresh.universe(), shipped.universe(), "{kind}");
        assert_eq!(fresh.certificate, shipped.certificate);
        assert_eq!(fresh.probe_generation, shipped.probe_generation);
        assert!(fresh
            .certificate
            .iter()
            .all(|r| r.output == kind.apply(&r.inputs)));
    }
    assert_eq!(
        calibrate(GateKind::And, 0),
        Err(ComponentError::NoValidPlacement(GateKind::And))
    );
}

#[test]
fn fixture_text_is_checked() {
    let t = build_and().unwrap();
    let rle = t.to_rle();
    let sidecar = t.to_sidecar().to_string();
    assert_eq!(
        GateTemplate::from_fixture(GateKind::And, &rle, &sidecar).unwrap(),
        t
    );
    assert!(GateTemplate::from_fixture(GateKind::Or, &rle, &sidecar).is_err());
    let moved = sidecar.replace(
        &format!("probe_generation = {}", t.probe_generation),
        "probe_generation = 1",
    );
    assert_ne!(moved, sidecar);
    assert!(matches!(
        GateTemplate::from_fixture(GateKind::And, &rle, &moved),
        Err(ComponentError::Fixture { .. })
    ));
    let last = rle.trim_end().rfind('o').unwrap();
    let mut flipped = rle.clone();
    flipped.replace_range(last..last + 1, "b");
    assert!(GateTemplate::from_fixture(GateKind::And, &flipped, &sidecar).is_err());
}
