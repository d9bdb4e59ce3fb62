//! Inputs, guns, stoppers and outputs, collision geometry, and the AND, OR
//! and NOT gate templates.

mod collision;
pub mod geometry;
pub mod layout;
mod parts;
pub mod sidecar;
mod template;

pub use collision::{
    check_annihilation_alignment, simulate_alignment, Alignment, CollisionSpec, COLLISION_RUN,
};
pub use layout::{Block, GateKind, LayoutError, Outcome};
pub use parts::{
    detector_fit, eater_on, gun_orientation, gun_stream_at, gun_with_centre, stopper_fit,
    Component, EaterFit, Placement, Role,
};
pub use template::{
    activate_input, assignments, build_and, build_not, build_or, calibrate, load_gate,
    probe_output, slot_names, tweak_len, CertificateRow, ComponentError, GateTemplate,
    DEFAULT_SEARCH_RANGE, FIXTURE_DIR_VAR, PROBE_WINDOW,
};
