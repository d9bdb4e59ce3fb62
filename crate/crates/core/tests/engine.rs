use glidelogic::engine::{
    detect_stabilization, escaping_gliders, find_gliders, naive, Cell, Heading, Stabilization,
    Universe,
};
use glidelogic::patterns::{catalog, Orientation};
use proptest::prelude::*;

fn soup(bits: &[bool], side: i32) -> Vec<Cell> {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| Cell::new(i as i32 % side, i as i32 / side))
        .collect()
}

fn sorted(mut v: Vec<Cell>) -> Vec<Cell> {
    v.sort();
    v
}

fn live(u: &Universe) -> Vec<Cell> {
    sorted(u.cells())
}

fn glider(h: Heading, phase: u64) -> Universe {
    let (sx, sy) = h.delta();
    let base = catalog("glider").unwrap();
    Universe::from_cells(base.cells().iter().map(|c| Cell::new(c.x * sx, c.y * sy))).run(phase)
}

#[test]
fn neighbor_count_examples() {
    let single = Universe::from_cells([Cell::new(0, 0)]);
    assert_eq!(single.neighbor_count(Cell::new(0, 0)), 0);
    let full = Universe::from_cells((-1..=1).flat_map(|y| (-1..=1).map(move |x| Cell::new(x, y))));
    assert_eq!(full.neighbor_count(Cell::new(0, 0)), 8);
    let blinker = Universe::from_cells([(-1, 0), (0, 0), (1, 0)].map(Cell::from));
    assert_eq!(blinker.neighbor_count(Cell::new(0, 0)), 2);
}

#[test]
fn step_is_value_semantics() {
    let blinker = Universe::from_cells([(-1, 0), (0, 0), (1, 0)].map(Cell::from));
    let next = blinker.step();
    assert_eq!(blinker.generation(), 0);
    assert_eq!(next.generation(), 1);
    assert_eq!(
        live(&next),
        sorted(vec![Cell::new(0, -1), Cell::new(0, 0), Cell::new(0, 1)])
    );
    assert_eq!(blinker.run(2), blinker);
    assert_eq!(blinker.run(0), blinker);
    assert_eq!(blinker.run(0).generation(), 0);
    assert!(Universe::new().step().is_empty());
}

#[test]
fn glider_moves_one_cell_per_four_generations() {
    for h in Heading::ALL {
        let (dx, dy) = h.delta();
        for phase in 0..4 {
            let g = glider(h, phase);
            assert_eq!(g.run(4), g.translated(dx, dy), "{h} phase {phase}");
            assert_eq!(g.population(), 5);
        }
    }
}

#[test]
fn r_pentomino_history() {
    let r = catalog("r_pentomino").unwrap().to_universe();
    // Five gliders are out by generation 224; the sixth leaves the debris
    // between generations 700 and 900 and all six keep going.
    assert_eq!(find_gliders(&r.run(224)).len(), 5);
    assert_eq!(find_gliders(&r.run(300)).len(), 5);
    assert_eq!(find_gliders(&r.run(1103)).len(), 6);
    assert_eq!(escaping_gliders(&r.run(224)).len(), 4);
    assert_eq!(escaping_gliders(&r.run(300)).len(), 5);
    assert_eq!(escaping_gliders(&r.run(1103)).len(), 6);
    let s = detect_stabilization(&r, 1500, 30).expect("stabilizes");
    assert_eq!(s.stabilized_at, 1103);
    assert_eq!(detect_stabilization(&r, 500, 30), None);
}

#[test]
fn stabilization_of_simple_patterns() {
    let block = catalog("block").unwrap().to_universe();
    assert_eq!(
        detect_stabilization(&block, 10, 1),
        Some(Stabilization {
            stabilized_at: 0,
            period: 1
        })
    );
    let blinker = catalog("blinker").unwrap().to_universe();
    assert_eq!(
        detect_stabilization(&blinker, 10, 4),
        Some(Stabilization {
            stabilized_at: 0,
            period: 2
        })
    );
}

#[test]
fn rules_on_constructed_neighbourhoods() {
    // A live centre with k live neighbours, a dead centre with k live neighbours.
    let ring = [
        (-1, -1),
        (0, -1),
        (1, -1),
        (1, 0),
        (1, 1),
        (0, 1),
        (-1, 1),
        (-1, 0),
    ]
    .map(Cell::from);
    for k in 0..=8 {
        let around = &ring[..k];
        let with_centre = Universe::from_cells(around.iter().copied().chain([Cell::new(0, 0)]));
        let without = Universe::from_cells(around.iter().copied());
        assert_eq!(
            with_centre.step().get(Cell::new(0, 0)),
            k == 2 || k == 3,
            "live centre, {k} neighbours"
        );
        assert_eq!(
            without.step().get(Cell::new(0, 0)),
            k == 3,
            "dead centre, {k} neighbours"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tiled_engine_matches_naive_oracle(bits in proptest::collection::vec(any::<bool>(), 256), dx in -100i32..100, dy in -100i32..100) {
        let cells: Vec<Cell> = soup(&bits, 16).into_iter().map(|c| c.offset(dx, dy)).collect();
        let mut fast = Universe::from_cells(cells.iter().copied());
        let mut slow = cells;
        for g in 0..64 {
            fast.advance(1);
            slow = naive::step_cells(&slow);
            prop_assert_eq!(live(&fast), sorted(slow.clone()), "generation {}", g + 1);
        }
    }

    #[test]
    fn step_commutes_with_symmetries(bits in proptest::collection::vec(any::<bool>(), 100), o in 0usize..8, dx in -70i32..70, dy in -70i32..70) {
        let u = Universe::from_cells(soup(&bits, 10));
        let o = Orientation::ALL[o];
        let t = |v: &Universe| v.mapped(|c| o.apply_cell(c));
        prop_assert_eq!(t(&u).step(), t(&u.step()));
        prop_assert_eq!(u.translated(dx, dy).step(), u.step().translated(dx, dy));
    }

    #[test]
    fn step_is_deterministic(bits in proptest::collection::vec(any::<bool>(), 144)) {
        let u = Universe::from_cells(soup(&bits, 12));
        prop_assert_eq!(u.run(10), u.run(10));
    }
}
