//! Pure states over labeled subsystems.

use num_complex::Complex64;

use super::layout::SubsystemLayout;
use super::linalg::{CVector, ZERO};
use crate::{Error, Result};

/// A state vector together with the layout naming its tensor factors.
///
/// Amplitudes are indexed big-endian over the layout: subsystem 0 is the
/// most significant digit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: SubsystemLayout,
    amps: CVector,
}

impl StateVector {
    /// A normalized state. Fails if the amplitude count does not match the
    /// layout dimension or the norm strays from 1 by more than `1e-12`.
    pub fn new(layout: SubsystemLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "layout dimension {} but {} amplitudes",
                layout.total_dim(),
                amplitudes.len()
            )));
        }
        let amps = CVector::from_vec(amplitudes);
        let norm = amps.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(Self { layout, amps })
    }

    /// Basis state `|index>` in the given layout.
    pub fn basis(layout: SubsystemLayout, index: usize) -> Result<Self> {
        let d = layout.total_dim();
        if index >= d {
            return Err(Error::DimensionMismatch(format!(
                "basis index {index} out of range for dimension {d}"
            )));
        }
        let mut amps = vec![ZERO; d];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { layout, amps: CVector::from_vec(amps) })
    }

    /// Intermediate results are allowed to be unnormalized; callers decide
    /// when to renormalize.
    pub(crate) fn from_unnormalized(layout: SubsystemLayout, amps: CVector) -> Self {
        debug_assert_eq!(layout.total_dim(), amps.len());
        Self { layout, amps }
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amps.as_slice()
    }

    pub(crate) fn vector(&self) -> &CVector {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// Rescales to unit norm. Fails when the norm is below `1e-12`, the
    /// zero-state cutoff used throughout.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm < 1e-12 {
            return Err(Error::InvalidState(format!(
                "cannot normalize state with norm {norm}"
            )));
        }
        Ok(Self {
            layout: self.layout.clone(),
            amps: &self.amps / Complex64::new(norm, 0.0),
        })
    }

    /// Tensor product; labels must stay distinct across both operands.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(Self {
            layout,
            amps: self.amps.kronecker(&other.amps),
        })
    }

    /// Same amplitudes under fresh labels.
    pub fn relabeled(&self, labels: &[&str]) -> Result<Self> {
        Ok(Self {
            layout: self.layout.relabeled(labels.iter().copied())?,
            amps: self.amps.clone(),
        })
    }
}

/// `|<a|b>|`, insensitive to a global phase on either state. The layouts
/// must agree exactly (same labels, same order, same dimensions).
pub fn phase_invariant_overlap(a: &StateVector, b: &StateVector) -> Result<f64> {
    if a.layout != b.layout {
        return Err(Error::LayoutMismatch(format!(
            "overlap of states on {:?} and {:?}",
            a.layout.labels(),
            b.layout.labels()
        )));
    }
    Ok(a.amps.dotc(&b.amps).norm())
}
