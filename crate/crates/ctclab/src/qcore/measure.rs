//! Projective single-qubit measurements with seeded sampling.

use num_complex::Complex64;
use rand::Rng;

use super::density::DensityMatrix;
use super::layout::SubsystemLayout;
use super::linalg::{CMatrix, CVector};
use super::linmap::LinearMap;
use super::state::StateVector;
use crate::{Error, Result};

const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// An orthonormal pair of single-qubit kets defining the two outcomes.
#[derive(Debug, Clone)]
pub struct QubitBasis {
    kets: [CVector; 2],
}

impl QubitBasis {
    /// Outcome 0 is `v0`, outcome 1 is `v1`. Orthonormal within `1e-12`.
    pub fn new(v0: [Complex64; 2], v1: [Complex64; 2]) -> Result<Self> {
        let kets = [
            CVector::from_row_slice(&v0),
            CVector::from_row_slice(&v1),
        ];
        let ortho = kets[0].dotc(&kets[1]).norm() <= 1e-12;
        let normed = kets.iter().all(|k| (k.norm() - 1.0).abs() <= 1e-12);
        if !(ortho && normed) {
            return Err(Error::NonOrthonormalBasis);
        }
        Ok(Self { kets })
    }

    /// `{|0>, |1>}`.
    pub fn computational() -> Self {
        let c = |re: f64| Complex64::new(re, 0.0);
        Self::new([c(1.0), c(0.0)], [c(0.0), c(1.0)]).expect("orthonormal")
    }

    /// `{|+>, |->}`: outcome 0 means the plus state.
    pub fn diagonal() -> Self {
        let c = |re: f64| Complex64::new(re, 0.0);
        Self::new([c(R), c(R)], [c(R), c(-R)]).expect("orthonormal")
    }

    /// Bra map `<k|` on the named qubit, consuming it from the layout.
    fn bra(&self, label: &str, k: usize) -> LinearMap {
        let row = CMatrix::from_fn(1, 2, |_, j| self.kets[k][j].conj());
        LinearMap::new(
            SubsystemLayout::qubits([label]).expect("single label"),
            SubsystemLayout::empty(),
            row,
        )
        .expect("1x2 matches the layouts")
    }
}

/// Result of a projective measurement. The measured qubit is consumed:
/// `post_state` lives on the remaining subsystems (scalar layout when the
/// state was a single qubit).
#[derive(Debug, Clone)]
pub struct Measurement {
    pub outcome: u8,
    pub post_state: StateVector,
    pub prob: f64,
}

/// Samples one outcome with Born probabilities. Deterministic given the rng
/// state.
pub fn measure_projective<R: Rng + ?Sized>(
    state: &StateVector,
    target: &str,
    basis: &QubitBasis,
    rng: &mut R,
) -> Result<Measurement> {
    if state.layout().dim_of(target)? != 2 {
        return Err(Error::DimensionMismatch(format!(
            "measurement target '{target}' is not a qubit"
        )));
    }
    let branch0 = state.apply(&basis.bra(target, 0))?;
    let branch1 = state.apply(&basis.bra(target, 1))?;
    let p0 = branch0.norm().powi(2);
    let p1 = branch1.norm().powi(2);
    let (outcome, branch, prob) = if rng.gen::<f64>() < p0 / (p0 + p1) {
        (0u8, branch0, p0)
    } else {
        (1u8, branch1, p1)
    };
    Ok(Measurement {
        outcome,
        post_state: branch.normalized()?,
        prob,
    })
}

/// Like [`measure_projective`] for mixed states.
#[derive(Debug, Clone)]
pub struct DensityMeasurement {
    pub outcome: u8,
    pub post_state: DensityMatrix,
    pub prob: f64,
}

pub fn measure_projective_density<R: Rng + ?Sized>(
    rho: &DensityMatrix,
    target: &str,
    basis: &QubitBasis,
    rng: &mut R,
) -> Result<DensityMeasurement> {
    if rho.layout().dim_of(target)? != 2 {
        return Err(Error::DimensionMismatch(format!(
            "measurement target '{target}' is not a qubit"
        )));
    }
    let (layout0, m0) = rho.conjugated_raw(&basis.bra(target, 0))?;
    let (layout1, m1) = rho.conjugated_raw(&basis.bra(target, 1))?;
    let p0 = m0.trace().re.max(0.0);
    let p1 = m1.trace().re.max(0.0);
    let (outcome, layout, matrix, prob) = if rng.gen::<f64>() < p0 / (p0 + p1) {
        (0u8, layout0, m0, p0)
    } else {
        (1u8, layout1, m1, p1)
    };
    if prob < 1e-12 {
        return Err(Error::InvalidDensityMatrix(format!(
            "conditioning on an outcome of probability {prob}"
        )));
    }
    Ok(DensityMeasurement {
        outcome,
        post_state: DensityMatrix::from_parts_unchecked(
            layout,
            matrix / Complex64::new(prob, 0.0),
        ),
        prob,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::bell::{bell_state, BellKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_non_orthonormal_basis() {
        let c = |re: f64| Complex64::new(re, 0.0);
        assert!(matches!(
            QubitBasis::new([c(1.0), c(0.0)], [c(1.0), c(0.0)]),
            Err(Error::NonOrthonormalBasis)
        ));
        assert!(matches!(
            QubitBasis::new([c(2.0), c(0.0)], [c(0.0), c(1.0)]),
            Err(Error::NonOrthonormalBasis)
        ));
    }

    #[test]
    fn plus_state_reads_zero_in_diagonal_basis() {
        let layout = SubsystemLayout::qubits(["A"]).unwrap();
        let c = |re: f64| Complex64::new(re, 0.0);
        let plus = StateVector::new(layout, vec![c(R), c(R)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = measure_projective(&plus, "A", &QubitBasis::diagonal(), &mut rng).unwrap();
        assert_eq!(m.outcome, 0);
        assert!((m.prob - 1.0).abs() < 1e-12);
        assert!(m.post_state.layout().is_empty());
    }

    #[test]
    fn bell_outcomes_anticorrelate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..32 {
            let s = bell_state(BellKind::PhiPlusPaper);
            let ma =
                measure_projective(&s, "A", &QubitBasis::computational(), &mut rng).unwrap();
            assert!((ma.prob - 0.5).abs() < 1e-12);
            let mb = measure_projective(
                &ma.post_state,
                "B",
                &QubitBasis::computational(),
                &mut rng,
            )
            .unwrap();
            assert_eq!(ma.outcome ^ mb.outcome, 1);
            assert!((mb.prob - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn same_seed_same_outcomes() {
        let s = bell_state(BellKind::PhiPlus);
        let draw = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..16)
                .map(|_| {
                    measure_projective(&s, "A", &QubitBasis::computational(), &mut rng)
                        .unwrap()
                        .outcome
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(3), draw(3));
    }

    #[test]
    fn density_measurement_matches_pure_probabilities() {
        let s = bell_state(BellKind::PhiPlusPaper);
        let rho = DensityMatrix::from_state(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m =
            measure_projective_density(&rho, "B", &QubitBasis::computational(), &mut rng)
                .unwrap();
        assert!((m.prob - 0.5).abs() < 1e-12);
        assert_eq!(m.post_state.layout().labels(), ["A"]);
        // conditioned on B = b, A is the opposite basis state
        let expect = 1 - m.outcome as usize;
        assert!((m.post_state.matrix()[(expect, expect)].re - 1.0).abs() < 1e-12);
    }
}
