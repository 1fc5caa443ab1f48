//! The four maximally entangled two-qubit states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::layout::SubsystemLayout;
use super::state::StateVector;

const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Which Bell state. The conventional correlated pair is `PhiPlus`;
/// `PhiPlusPaper` is the anticorrelated (|01> + |10>)/sqrt(2), named to flag
/// a nonstandard use of "phi plus" so nobody silently swaps the two. The
/// wormhole scenarios default to the anticorrelated kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BellKind {
    /// (|00> + |11>)/sqrt(2)
    PhiPlus,
    /// (|00> - |11>)/sqrt(2)
    PhiMinus,
    /// (|01> + |10>)/sqrt(2)
    PhiPlusPaper,
    /// (|01> - |10>)/sqrt(2)
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PhiPlusPaper,
        BellKind::PsiMinus,
    ];

    /// The serialized name, also used in tables and CSV.
    pub fn name(self) -> &'static str {
        match self {
            BellKind::PhiPlus => "PHI_PLUS",
            BellKind::PhiMinus => "PHI_MINUS",
            BellKind::PhiPlusPaper => "PHI_PLUS_PAPER",
            BellKind::PsiMinus => "PSI_MINUS",
        }
    }

    pub(crate) fn amplitudes(self) -> [Complex64; 4] {
        let c = |re: f64| Complex64::new(re, 0.0);
        match self {
            BellKind::PhiPlus => [c(R), c(0.0), c(0.0), c(R)],
            BellKind::PhiMinus => [c(R), c(0.0), c(0.0), c(-R)],
            BellKind::PhiPlusPaper => [c(0.0), c(R), c(R), c(0.0)],
            BellKind::PsiMinus => [c(0.0), c(R), c(-R), c(0.0)],
        }
    }
}

impl std::fmt::Display for BellKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The chosen Bell state on qubits labeled `A` and `B`.
pub fn bell_state(kind: BellKind) -> StateVector {
    bell_state_labeled(kind, "A", "B").expect("distinct fixed labels")
}

/// The chosen Bell state on two caller-named qubits.
pub fn bell_state_labeled(kind: BellKind, first: &str, second: &str) -> crate::Result<StateVector> {
    let layout = SubsystemLayout::qubits([first, second])?;
    StateVector::new(layout, kind.amplitudes().to_vec())
}
