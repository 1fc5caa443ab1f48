//! Density matrices over labeled subsystems.

use num_complex::Complex64;

use super::layout::SubsystemLayout;
use super::linalg::{
    hermitian_eigenvalues, is_hermitian, partial_trace_matrix, CMatrix,
};
use super::linmap::LinearMap;
use super::state::StateVector;
use crate::{Error, Result};

/// Hermitian, unit-trace, positive semidefinite matrix with a layout.
/// Positivity is checked down to `-1e-10` to absorb eigensolver noise.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    layout: SubsystemLayout,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(layout: SubsystemLayout, matrix: CMatrix) -> Result<Self> {
        let d = layout.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but layout dimension is {d}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if !is_hermitian(&matrix, 1e-12) {
            return Err(Error::InvalidDensityMatrix("not Hermitian".into()));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace} is not 1")));
        }
        let min_eig = hermitian_eigenvalues(&matrix)
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -1e-10 {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig}"
            )));
        }
        Ok(Self { layout, matrix })
    }

    /// Skips validation; for results that are density matrices by
    /// construction (conjugations by isometries, partial traces).
    pub(crate) fn from_parts_unchecked(layout: SubsystemLayout, matrix: CMatrix) -> Self {
        debug_assert_eq!(layout.total_dim(), matrix.nrows());
        Self { layout, matrix }
    }

    /// `|s><s|`; the state must be normalized.
    pub fn from_state(state: &StateVector) -> Result<Self> {
        let v = state.vector();
        Self::new(state.layout().clone(), v * v.adjoint())
    }

    pub fn maximally_mixed(layout: SubsystemLayout) -> Self {
        let d = layout.total_dim();
        let matrix = CMatrix::identity(d, d) / Complex64::new(d as f64, 0.0);
        Self { layout, matrix }
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            layout: self.layout.concat(&other.layout)?,
            matrix: self.matrix.kronecker(&other.matrix),
        })
    }

    pub fn relabeled(&self, labels: &[&str]) -> Result<Self> {
        Ok(Self {
            layout: self.layout.relabeled(labels.iter().copied())?,
            matrix: self.matrix.clone(),
        })
    }

    /// Traces out everything except `keep`. The kept subsystems appear in
    /// their original relative order regardless of the order of `keep`.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        let mut positions = self.layout.positions(keep)?;
        positions.sort_unstable();
        let matrix = partial_trace_matrix(&self.matrix, &self.layout, &positions);
        Ok(Self {
            layout: self.layout.select(&positions),
            matrix,
        })
    }

    /// `M ρ M†` on the named subsystems. Validates the result, so this is
    /// only for trace-preserving maps; selective operations renormalize
    /// through their own paths.
    pub fn apply(&self, m: &LinearMap) -> Result<Self> {
        let (layout, matrix) = self.conjugated_raw(m)?;
        Self::new(layout, matrix)
    }

    /// Unvalidated conjugation, returning whatever trace falls out.
    pub(crate) fn conjugated_raw(&self, m: &LinearMap) -> Result<(SubsystemLayout, CMatrix)> {
        let (layout, full) = m.embedded_in(&self.layout)?;
        let matrix = &full * &self.matrix * full.adjoint();
        Ok((layout, matrix))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Von Neumann entropy in bits. Eigenvalues in `[-1e-10, 0]` count as 0.
    pub fn entropy_bits(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .filter(|&&p| p > 1e-12)
            .map(|&p| -p * p.log2())
            .sum()
    }
}

/// `½ Tr|a - b|`, ranging over `[0, 1]`. Layouts must match exactly.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.layout != b.layout {
        return Err(Error::LayoutMismatch(format!(
            "trace distance between {:?} and {:?}",
            a.layout.labels(),
            b.layout.labels()
        )));
    }
    let diff = &a.matrix - &b.matrix;
    Ok(0.5 * hermitian_eigenvalues(&diff).iter().map(|v| v.abs()).sum::<f64>())
}
