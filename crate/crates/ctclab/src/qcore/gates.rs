//! Stock gates. Multi-qubit gates carry placeholder labels `q0`, `q1`;
//! relabel them onto real wires before use.

use num_complex::Complex64;

use super::layout::SubsystemLayout;
use super::linalg::{CMatrix, ONE, ZERO};
use super::linmap::LinearMap;

const R: Complex64 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
const NEG_R: Complex64 = Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
const NEG_ONE: Complex64 = Complex64::new(-1.0, 0.0);

fn qubit_labels(n: usize) -> SubsystemLayout {
    SubsystemLayout::qubits((0..n).map(|i| format!("q{i}"))).expect("generated labels are distinct")
}

/// Identity on `n` qubits.
pub fn identity(n: usize) -> LinearMap {
    LinearMap::identity(qubit_labels(n))
}

pub fn pauli_x() -> LinearMap {
    LinearMap::unitary(
        qubit_labels(1),
        CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
    )
    .expect("unitary by construction")
}

pub fn pauli_z() -> LinearMap {
    LinearMap::unitary(
        qubit_labels(1),
        CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, NEG_ONE]),
    )
    .expect("unitary by construction")
}

pub fn hadamard() -> LinearMap {
    LinearMap::unitary(
        qubit_labels(1),
        CMatrix::from_row_slice(2, 2, &[R, R, R, NEG_R]),
    )
    .expect("unitary by construction")
}

/// Control on `q0`, target on `q1`.
pub fn cnot() -> LinearMap {
    LinearMap::unitary(
        qubit_labels(2),
        CMatrix::from_row_slice(
            4,
            4,
            &[
                ONE, ZERO, ZERO, ZERO, //
                ZERO, ONE, ZERO, ZERO, //
                ZERO, ZERO, ZERO, ONE, //
                ZERO, ZERO, ONE, ZERO,
            ],
        ),
    )
    .expect("unitary by construction")
}

/// Control on `q1`, target on `q0`.
pub fn cnot_reversed() -> LinearMap {
    LinearMap::unitary(
        qubit_labels(2),
        CMatrix::from_row_slice(
            4,
            4,
            &[
                ONE, ZERO, ZERO, ZERO, //
                ZERO, ZERO, ZERO, ONE, //
                ZERO, ZERO, ONE, ZERO, //
                ZERO, ONE, ZERO, ZERO,
            ],
        ),
    )
    .expect("unitary by construction")
}

pub fn swap() -> LinearMap {
    LinearMap::unitary(
        qubit_labels(2),
        CMatrix::from_row_slice(
            4,
            4,
            &[
                ONE, ZERO, ZERO, ZERO, //
                ZERO, ZERO, ONE, ZERO, //
                ZERO, ONE, ZERO, ZERO, //
                ZERO, ZERO, ZERO, ONE,
            ],
        ),
    )
    .expect("unitary by construction")
}
