use glidelogic::engine::{Bounds, Cell, Universe};

const LINE: usize = 70;

/// Plain (`P1`) portable bitmap of `region`, with the region and generation
/// in a comment line.
pub fn encode(u: &Universe, region: &Bounds) -> String {
    let mut s = format!(
        "P1\n# generation={} region={},{}..{},{}\n{} {}\n",
        u.generation(),
        region.min.x,
        region.min.y,
        region.max.x,
        region.max.y,
        region.width(),
        region.height()
    );
    for y in region.min.y..=region.max.y {
        let row: Vec<u8> = (region.min.x..=region.max.x)
            .map(|x| if u.get(Cell::new(x, y)) { b'1' } else { b'0' })
            .collect();
        for chunk in row.chunks(LINE) {
            s.push_str(std::str::from_utf8(chunk).expect("ascii"));
            s.push('\n');
        }
    }
    s
}
