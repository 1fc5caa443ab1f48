//! Labeled tensor-network primitives: layouts, states, maps, densities,
//! measurement, and the JSON wire format.

pub mod gates;

mod bell;
mod density;
mod layout;
pub(crate) mod linalg;
mod linmap;
mod measure;
mod random;
pub(crate) mod serial;
mod state;

pub use bell::{bell_state, bell_state_labeled, BellKind};
pub use density::{trace_distance, DensityMatrix};
pub use layout::SubsystemLayout;
pub use linmap::LinearMap;
pub use measure::{
    measure_projective, measure_projective_density, DensityMeasurement, Measurement,
    QubitBasis,
};
pub use random::{random_density, random_state, random_unitary};
pub use state::{phase_invariant_overlap, StateVector};
