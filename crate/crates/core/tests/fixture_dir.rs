use glidelogic::components::{build_not, load_gate, ComponentError, GateKind, FIXTURE_DIR_VAR};

// Environment changes are process-wide, so everything that sets the
// override lives in this one test.
#[test]
fn fixture_directory_override() {
    let shipped = build_not().unwrap();
    let dir = tempfile::tempdir().unwrap();
    shipped.write_fixture(&dir.path().join("gates")).unwrap();

    std::env::set_var(FIXTURE_DIR_VAR, dir.path());
    assert_eq!(load_gate(GateKind::Not).unwrap(), shipped);
    // Only NOT was written.
    assert!(matches!(
        load_gate(GateKind::And),
        Err(ComponentError::Fixture {
            kind: GateKind::And,
            ..
        })
    ));

    let sidecar = dir.path().join("gates/not.gate");
    let text = std::fs::read_to_string(&sidecar).unwrap();
    std::fs::write(
        &sidecar,
        text.replace("certificate = 0 1", "certificate = 0 0"),
    )
    .unwrap();
    assert!(matches!(
        load_gate(GateKind::Not),
        Err(ComponentError::Fixture { .. })
    ));

    std::env::remove_var(FIXTURE_DIR_VAR);
    assert_eq!(load_gate(GateKind::Not).unwrap(), shipped);
}
