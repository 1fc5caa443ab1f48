//! Haar-distributed test objects. Used by the property suite; exposed
//! because downstream fuzzing wants the same distributions.

use num_complex::Complex64;
use rand::Rng;

use super::density::DensityMatrix;
use super::layout::SubsystemLayout;
use super::linalg::{CMatrix, CVector};
use super::linmap::LinearMap;
use super::state::StateVector;

/// One standard complex Gaussian sample (Box-Muller).
fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    // real and imaginary parts each N(0, 1/2) so |z|^2 has unit mean
    Complex64::new(r * theta.cos(), r * theta.sin()) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| gaussian(rng))
}

/// Haar-random unitary on the layout, via QR of a Ginibre matrix with the
/// phase convention fixed by the R diagonal.
pub fn random_unitary<R: Rng + ?Sized>(layout: SubsystemLayout, rng: &mut R) -> LinearMap {
    let d = layout.total_dim();
    let qr = ginibre(d, rng).qr();
    let r_diag: Vec<Complex64> = (0..d).map(|i| qr.r()[(i, i)]).collect();
    let mut q = qr.q();
    for (j, rj) in r_diag.iter().enumerate() {
        let phase = if rj.norm() > 0.0 { rj / rj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    LinearMap::unitary(layout, q).expect("QR of a full-rank Gaussian matrix is unitary")
}

/// Uniform pure state on the layout.
pub fn random_state<R: Rng + ?Sized>(layout: SubsystemLayout, rng: &mut R) -> StateVector {
    let d = layout.total_dim();
    loop {
        let v = CVector::from_fn(d, |_, _| gaussian(rng));
        let n = v.norm();
        if n > 1e-6 {
            return StateVector::from_unnormalized(layout, v / Complex64::new(n, 0.0));
        }
    }
}

/// Full-rank random mixed state (normalized Wishart).
pub fn random_density<R: Rng + ?Sized>(layout: SubsystemLayout, rng: &mut R) -> DensityMatrix {
    let d = layout.total_dim();
    let g = ginibre(d, rng);
    let mut w = &g * g.adjoint();
    let t = w.trace();
    w /= t;
    // symmetrize away the last few ulps so validation never trips
    let h = (&w + w.adjoint()) * Complex64::new(0.5, 0.0);
    DensityMatrix::new(layout, h).expect("normalized Wishart is a density matrix")
}
