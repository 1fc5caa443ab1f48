//! Linear maps between labeled spaces, including non-square ones.

use super::layout::SubsystemLayout;
use super::linalg::{max_abs_entry, CMatrix, ZERO};
use super::state::StateVector;
use crate::{Error, Result};

/// A matrix from the space described by `in_layout` to the one described by
/// `out_layout`. Unitarity is not assumed: bra projections and wormhole
/// operators are maps like any other.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    in_layout: SubsystemLayout,
    out_layout: SubsystemLayout,
    matrix: CMatrix,
}

impl LinearMap {
    pub fn new(
        in_layout: SubsystemLayout,
        out_layout: SubsystemLayout,
        matrix: CMatrix,
    ) -> Result<Self> {
        if matrix.nrows() != out_layout.total_dim() || matrix.ncols() != in_layout.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but layouts require {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                out_layout.total_dim(),
                in_layout.total_dim()
            )));
        }
        Ok(Self { in_layout, out_layout, matrix })
    }

    /// A square map acting on and producing the same labeled space.
    pub fn gate(layout: SubsystemLayout, matrix: CMatrix) -> Result<Self> {
        Self::new(layout.clone(), layout, matrix)
    }

    /// Like [`LinearMap::gate`] but additionally checks `U†U = 1` to `1e-12`.
    pub fn unitary(layout: SubsystemLayout, matrix: CMatrix) -> Result<Self> {
        let map = Self::gate(layout, matrix)?;
        if !map.is_unitary(1e-12) {
            return Err(Error::NotUnitary(format!(
                "matrix on {:?} is not unitary",
                map.in_layout.labels()
            )));
        }
        Ok(map)
    }

    pub fn identity(layout: SubsystemLayout) -> Self {
        let d = layout.total_dim();
        Self {
            in_layout: layout.clone(),
            out_layout: layout,
            matrix: CMatrix::identity(d, d),
        }
    }

    pub fn in_layout(&self) -> &SubsystemLayout {
        &self.in_layout
    }

    pub fn out_layout(&self) -> &SubsystemLayout {
        &self.out_layout
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        if self.matrix.nrows() != self.matrix.ncols() {
            return false;
        }
        let d = self.matrix.nrows();
        let gram = self.matrix.adjoint() * &self.matrix;
        max_abs_entry(&(gram - CMatrix::identity(d, d))) <= tol
    }

    pub fn adjoint(&self) -> Self {
        Self {
            in_layout: self.out_layout.clone(),
            out_layout: self.in_layout.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            in_layout: self.in_layout.concat(&other.in_layout)?,
            out_layout: self.out_layout.concat(&other.out_layout)?,
            matrix: self.matrix.kronecker(&other.matrix),
        })
    }

    /// `self ∘ first`: feeds `first`'s output into `self`. The intermediate
    /// layouts must match label for label.
    pub fn compose(&self, first: &Self) -> Result<Self> {
        if first.out_layout != self.in_layout {
            return Err(Error::LayoutMismatch(format!(
                "composing a map out of {:?} into one expecting {:?}",
                first.out_layout.labels(),
                self.in_layout.labels()
            )));
        }
        Ok(Self {
            in_layout: first.in_layout.clone(),
            out_layout: self.out_layout.clone(),
            matrix: &self.matrix * &first.matrix,
        })
    }

    pub fn relabeled(&self, in_labels: &[&str], out_labels: &[&str]) -> Result<Self> {
        Ok(Self {
            in_layout: self.in_layout.relabeled(in_labels.iter().copied())?,
            out_layout: self.out_layout.relabeled(out_labels.iter().copied())?,
            matrix: self.matrix.clone(),
        })
    }

    /// Embeds this map into a larger state space, acting as the identity on
    /// every subsystem not named by `in_layout`. Returns the layout of the
    /// result and the full matrix.
    ///
    /// Two cases:
    /// - in and out labels name the same subsystems: the state keeps its
    ///   layout untouched (a gate).
    /// - otherwise the input subsystems are consumed and the output
    ///   subsystems are spliced in at the earliest consumed position, as in
    ///   a bra projection that removes wires or a relabeling that renames
    ///   them.
    pub(crate) fn embedded_in(
        &self,
        state_layout: &SubsystemLayout,
    ) -> Result<(SubsystemLayout, CMatrix)> {
        let targets: Vec<usize> = self
            .in_layout
            .labels()
            .iter()
            .map(|l| state_layout.position(l))
            .collect::<Result<_>>()?;
        for (j, &t) in targets.iter().enumerate() {
            if state_layout.dims()[t] != self.in_layout.dims()[j] {
                return Err(Error::DimensionMismatch(format!(
                    "map expects dimension {} on '{}' but state has {}",
                    self.in_layout.dims()[j],
                    self.in_layout.labels()[j],
                    state_layout.dims()[t]
                )));
            }
        }

        let gate_like = {
            let mut ins: Vec<&String> = self.in_layout.labels().iter().collect();
            let mut outs: Vec<&String> = self.out_layout.labels().iter().collect();
            ins.sort();
            outs.sort();
            ins == outs && {
                // same label set, so dims must agree label for label
                self.out_layout.labels().iter().enumerate().all(|(j, l)| {
                    self.in_layout
                        .position(l)
                        .map(|p| self.in_layout.dims()[p] == self.out_layout.dims()[j])
                        .unwrap_or(false)
                })
            }
        };

        let rest_positions: Vec<usize> =
            (0..state_layout.len()).filter(|p| !targets.contains(p)).collect();
        let rest_layout = state_layout.select(&rest_positions);

        // Output layout plus, for every output subsystem and every untouched
        // subsystem, its position in that layout.
        let (out_full_layout, out_pos, rest_pos) = if gate_like {
            let out_pos: Vec<usize> = self
                .out_layout
                .labels()
                .iter()
                .map(|l| state_layout.position(l))
                .collect::<Result<_>>()?;
            (state_layout.clone(), out_pos, rest_positions.clone())
        } else {
            let insert_at = targets.iter().copied().min().unwrap_or(0);
            let mut entries: Vec<(String, usize)> = Vec::new();
            let mut out_pos = vec![0usize; self.out_layout.len()];
            let mut rest_pos = Vec::with_capacity(rest_positions.len());
            for p in 0..state_layout.len() {
                if p == insert_at {
                    for (j, label) in self.out_layout.labels().iter().enumerate() {
                        out_pos[j] = entries.len();
                        entries.push((label.clone(), self.out_layout.dims()[j]));
                    }
                }
                if targets.contains(&p) {
                    continue;
                }
                rest_pos.push(entries.len());
                entries.push((state_layout.labels()[p].clone(), state_layout.dims()[p]));
            }
            if state_layout.len() == 0 {
                for (j, label) in self.out_layout.labels().iter().enumerate() {
                    out_pos[j] = entries.len();
                    entries.push((label.clone(), self.out_layout.dims()[j]));
                }
            }
            let pairs: Vec<(&str, usize)> =
                entries.iter().map(|(l, d)| (l.as_str(), *d)).collect();
            let layout = SubsystemLayout::new(pairs)?;
            (layout, out_pos, rest_pos)
        };

        let in_strides = state_layout.strides();
        let out_strides = out_full_layout.strides();
        let mut full = CMatrix::from_element(
            out_full_layout.total_dim(),
            state_layout.total_dim(),
            ZERO,
        );
        for r in 0..rest_layout.total_dim() {
            let rd = rest_layout.digits_of(r);
            let base_col: usize = rd
                .iter()
                .zip(&rest_positions)
                .map(|(d, &p)| d * in_strides[p])
                .sum();
            let base_row: usize = rd
                .iter()
                .zip(&rest_pos)
                .map(|(d, &p)| d * out_strides[p])
                .sum();
            for o in 0..self.out_layout.total_dim() {
                let od = self.out_layout.digits_of(o);
                let row = base_row
                    + od
                        .iter()
                        .zip(&out_pos)
                        .map(|(d, &p)| d * out_strides[p])
                        .sum::<usize>();
                for i in 0..self.in_layout.total_dim() {
                    let id = self.in_layout.digits_of(i);
                    let col = base_col
                        + id
                            .iter()
                            .zip(&targets)
                            .map(|(d, &p)| d * in_strides[p])
                            .sum::<usize>();
                    full[(row, col)] = self.matrix[(o, i)];
                }
            }
        }
        Ok((out_full_layout, full))
    }
}

impl StateVector {
    /// Applies `m` to the named subsystems, identity elsewhere. The result
    /// may be unnormalized when `m` is not an isometry.
    pub fn apply(&self, m: &LinearMap) -> Result<Self> {
        let (layout, full) = m.embedded_in(self.layout())?;
        Ok(StateVector::from_unnormalized(layout, &full * self.vector()))
    }
}
