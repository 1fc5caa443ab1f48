//! JSON wire format: `labels`, `dims`, and `data` as `[re, im]` pairs,
//! row-major for matrices. Values round-trip bit-exactly through
//! `serde_json` (it prints the shortest representation that parses back to
//! the same double). Deserialization re-runs the full invariant checks.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::density::DensityMatrix;
use super::layout::SubsystemLayout;
use super::linalg::CMatrix;
use super::linmap::LinearMap;
use super::state::StateVector;

pub(crate) fn vector_data(amps: &[Complex64]) -> Vec<[f64; 2]> {
    amps.iter().map(|z| [z.re, z.im]).collect()
}

pub(crate) fn matrix_data(m: &CMatrix) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push([m[(i, j)].re, m[(i, j)].im]);
        }
    }
    out
}

pub(crate) fn matrix_from_data(
    rows: usize,
    cols: usize,
    data: &[[f64; 2]],
) -> Option<CMatrix> {
    if data.len() != rows * cols {
        return None;
    }
    Some(CMatrix::from_fn(rows, cols, |i, j| {
        let [re, im] = data[i * cols + j];
        Complex64::new(re, im)
    }))
}

fn layout_from_parts(
    labels: &[String],
    dims: &[usize],
) -> crate::Result<SubsystemLayout> {
    if labels.len() != dims.len() {
        return Err(crate::Error::InvalidLayout(
            "labels and dims lengths differ".into(),
        ));
    }
    SubsystemLayout::new(
        labels
            .iter()
            .map(String::as_str)
            .zip(dims.iter().copied()),
    )
}

#[derive(Serialize, Deserialize)]
struct StateWire {
    labels: Vec<String>,
    dims: Vec<usize>,
    data: Vec<[f64; 2]>,
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        StateWire {
            labels: self.layout().labels().to_vec(),
            dims: self.layout().dims().to_vec(),
            data: vector_data(self.amplitudes()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = StateWire::deserialize(d)?;
        let layout = layout_from_parts(&w.labels, &w.dims).map_err(D::Error::custom)?;
        let amps = w.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        StateVector::new(layout, amps).map_err(D::Error::custom)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        StateWire {
            labels: self.layout().labels().to_vec(),
            dims: self.layout().dims().to_vec(),
            data: matrix_data(self.matrix()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = StateWire::deserialize(d)?;
        let layout = layout_from_parts(&w.labels, &w.dims).map_err(D::Error::custom)?;
        let d_total = layout.total_dim();
        let m = matrix_from_data(d_total, d_total, &w.data)
            .ok_or_else(|| D::Error::custom("data length does not match dims"))?;
        DensityMatrix::new(layout, m).map_err(D::Error::custom)
    }
}

/// Maps add `out_labels`/`out_dims` only when they differ from the input
/// side, so square gates keep the three-field shape.
#[derive(Serialize, Deserialize)]
struct MapWire {
    labels: Vec<String>,
    dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    out_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    out_dims: Option<Vec<usize>>,
    data: Vec<[f64; 2]>,
}

impl Serialize for LinearMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let same = self.in_layout() == self.out_layout();
        MapWire {
            labels: self.in_layout().labels().to_vec(),
            dims: self.in_layout().dims().to_vec(),
            out_labels: (!same).then(|| self.out_layout().labels().to_vec()),
            out_dims: (!same).then(|| self.out_layout().dims().to_vec()),
            data: matrix_data(self.matrix()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = MapWire::deserialize(d)?;
        let in_layout = layout_from_parts(&w.labels, &w.dims).map_err(D::Error::custom)?;
        let out_layout = match (&w.out_labels, &w.out_dims) {
            (None, None) => in_layout.clone(),
            (Some(labels), Some(dims)) => {
                layout_from_parts(labels, dims).map_err(D::Error::custom)?
            }
            _ => {
                return Err(D::Error::custom(
                    "out_labels and out_dims must appear together",
                ))
            }
        };
        let m = matrix_from_data(out_layout.total_dim(), in_layout.total_dim(), &w.data)
            .ok_or_else(|| D::Error::custom("data length does not match dims"))?;
        LinearMap::new(in_layout, out_layout, m).map_err(D::Error::custom)
    }
}
