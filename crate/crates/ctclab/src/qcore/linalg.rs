//! Raw matrix helpers shared by the typed wrappers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::layout::SubsystemLayout;

pub(crate) type CMatrix = DMatrix<Complex64>;
pub(crate) type CVector = DVector<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Partial trace of a square matrix laid out over `layout`, keeping the
/// subsystems at `keep_positions` (ascending). Works on arbitrary matrices,
/// not just density matrices, so the same code serves the operator
/// contraction used by the post-selection model.
pub(crate) fn partial_trace_matrix(
    m: &CMatrix,
    layout: &SubsystemLayout,
    keep_positions: &[usize],
) -> CMatrix {
    debug_assert!(keep_positions.windows(2).all(|w| w[0] < w[1]));
    let traced_positions: Vec<usize> =
        (0..layout.len()).filter(|p| !keep_positions.contains(p)).collect();
    let keep_layout = layout.select(keep_positions);
    let traced_layout = layout.select(&traced_positions);
    let kd = keep_layout.total_dim();
    let td = traced_layout.total_dim();

    let strides = layout.strides();
    let compose = |keep_digits: &[usize], traced_digits: &[usize]| -> usize {
        let mut idx = 0;
        for (d, &p) in keep_digits.iter().zip(keep_positions) {
            idx += d * strides[p];
        }
        for (d, &p) in traced_digits.iter().zip(&traced_positions) {
            idx += d * strides[p];
        }
        idx
    };

    let mut out = CMatrix::zeros(kd, kd);
    for i in 0..kd {
        let di = keep_layout.digits_of(i);
        for j in 0..kd {
            let dj = keep_layout.digits_of(j);
            let mut acc = ZERO;
            for t in 0..td {
                let dt = traced_layout.digits_of(t);
                acc += m[(compose(&di, &dt), compose(&dj, &dt))];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Column-stacking vectorization: entry `(i, j)` lands at position `j·d + i`.
pub(crate) fn vec_col(m: &CMatrix) -> CVector {
    let d = m.nrows();
    CVector::from_fn(d * d, |k, _| m[(k % d, k / d)])
}

/// Inverse of [`vec_col`].
pub(crate) fn unvec_col(v: &CVector, d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |i, j| v[j * d + i])
}

/// Frobenius inner product `Tr(a† b)`.
pub(crate) fn frobenius_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn frobenius_norm(m: &CMatrix) -> f64 {
    m.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value.
pub(crate) fn operator_norm(m: &CMatrix) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

pub(crate) fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub(crate) fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            if (m[(i, j)] - m[(j, i)].conj()).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = m
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::layout::SubsystemLayout;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vec_unvec_roundtrip() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 1.0), c(3.0, -1.0), c(4.0, 0.5)]);
        let v = vec_col(&m);
        // column stacking: (1, 3, 2, 4) up to the imaginary parts
        assert_eq!(v[0], c(1.0, 0.0));
        assert_eq!(v[1], c(3.0, -1.0));
        assert_eq!(v[2], c(2.0, 1.0));
        assert_eq!(unvec_col(&v, 2), m);
    }

    #[test]
    fn partial_trace_of_kron_factors() {
        let a = CMatrix::from_row_slice(2, 2, &[c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)]);
        let b = CMatrix::from_row_slice(2, 2, &[c(0.4, 0.0), c(0.0, 0.1), c(0.0, -0.1), c(0.6, 0.0)]);
        let ab = a.kronecker(&b);
        let layout = SubsystemLayout::qubits(["A", "B"]).unwrap();
        let got_a = partial_trace_matrix(&ab, &layout, &[0]);
        let got_b = partial_trace_matrix(&ab, &layout, &[1]);
        assert!(frobenius_norm(&(got_a - a)) < 1e-14);
        assert!(frobenius_norm(&(got_b - b)) < 1e-14);
    }

    #[test]
    fn operator_norm_of_projector_scalings() {
        let p = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0)]);
        // |+><+| has operator norm 1
        assert!((operator_norm(&p) - 1.0).abs() < 1e-12);
        assert!((operator_norm(&(p * c(2.0, 0.0))) - 2.0).abs() < 1e-12);
    }
}
