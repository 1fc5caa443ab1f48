//! Exact simulation of qubits interacting with closed timelike curves.
//!
//! A CTC lets a system interact with its own past. Two inequivalent quantum
//! semantics exist for that situation and this crate implements both:
//!
//! - **Post-selected teleportation** ([`pctc`]): the CTC is replaced by a
//!   teleportation circuit whose Bell measurement is post-selected on the same
//!   Bell state that drives the teleporter. Evolution is a trace contraction
//!   of the interaction unitary followed by renormalization.
//! - **Deutsch consistency** ([`deutsch`]): the state on the CTC must be a
//!   fixed point of the induced map, correlations with external systems are
//!   replaced by reduced density matrices, and among all fixed points the
//!   maximum-entropy one is selected.
//!
//! The two models disagree observably. [`experiments`] packages the standard
//! demonstrations as seeded, reproducible simulations: a phase-flip channel
//! that signals to the past under post-selection but not under Deutsch
//! evolution, and an unproven-theorem paradox in which post-selection leaves
//! a record that was never edited into existence.
//!
//! [`qcore`] supplies the exact dense linear algebra underneath: labeled
//! multi-qubit states, gates, tensor composition, partial trace, projective
//! measurement, and von Neumann entropy.
//!
//! # Example
//!
//! ```
//! use ctclab::pctc::{wormhole_evolve_circuit, WormholeScenario};
//! use ctclab::qcore::{bell_state, phase_invariant_overlap, BellKind};
//!
//! // Bob signals to the past by choosing whether to phase-flip his half of
//! // an entangled pair before it traverses the wormhole.
//! let input = bell_state(BellKind::PhiPlusPaper);
//! let off = wormhole_evolve_circuit(&input, &WormholeScenario::canonical(false)).unwrap();
//! let on = wormhole_evolve_circuit(&input, &WormholeScenario::canonical(true)).unwrap();
//! // The two outputs are orthogonal, so Alice decodes the bit perfectly.
//! assert!(phase_invariant_overlap(&off.state, &on.state).unwrap() < 1e-9);
//! ```

pub mod deutsch;
mod error;
pub mod experiments;
pub mod pctc;
pub mod qcore;

pub use error::{Error, Result};

/// Numeric tolerance hierarchy used across the crate.
///
/// Algebraic identities are expected to hold to near machine precision,
/// eigenvalue positivity admits slightly more slack, and iterated or
/// optimized quantities get another order of magnitude.
pub mod tolerance {
    /// Tolerance for algebraic identities (unitarity, normalization, traces).
    pub const ALGEBRAIC: f64 = 1e-12;
    /// Tolerance for eigenvalue positivity of density matrices.
    pub const EIGEN_POSITIVITY: f64 = 1e-10;
    /// Tolerance for iterated or optimized quantities (fixed points, ascent).
    pub const ITERATED: f64 = 1e-9;
}
