use crate::{Error, Result};

/// Ordered collection of labeled subsystems.
///
/// Subsystem 0 is the most significant digit of a composite basis index:
/// `index = Σ_i b_i · Π_{j>i} dims[j]`. Labels are free-form strings ("A",
/// "B", "C1", ...) and must be pairwise distinct; every dimension is at
/// least 2. The empty layout (total dimension 1) is allowed so that bra-type
/// maps can project onto a scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemLayout {
    labels: Vec<String>,
    dims: Vec<usize>,
}

impl SubsystemLayout {
    /// Builds a layout from `(label, dim)` pairs.
    pub fn new<S: Into<String>>(subsystems: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut labels = Vec::new();
        let mut dims = Vec::new();
        for (label, dim) in subsystems {
            let label = label.into();
            if dim < 2 {
                return Err(Error::InvalidLayout(format!(
                    "subsystem `{label}` has dimension {dim}, minimum is 2"
                )));
            }
            if labels.contains(&label) {
                return Err(Error::LabelCollision(label));
            }
            labels.push(label);
            dims.push(dim);
        }
        Ok(Self { labels, dims })
    }

    /// Layout of qubits with the given labels.
    pub fn qubits<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(labels.into_iter().map(|l| (l, 2)))
    }

    /// The empty layout: no subsystems, total dimension 1.
    pub fn empty() -> Self {
        Self { labels: Vec::new(), dims: Vec::new() }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of subsystems.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Product of all subsystem dimensions.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Position of `label`, or an error naming the unknown label.
    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.position(label)?])
    }

    /// Stride of each subsystem under the big-endian convention:
    /// `stride[i] = Π_{j>i} dims[j]`.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        strides
    }

    /// Composite index of a digit string (one digit per subsystem).
    pub fn index_of(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.len());
        self.strides().iter().zip(digits).map(|(s, d)| s * d).sum()
    }

    /// Digit string of a composite index.
    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0usize; self.len()];
        for i in (0..self.len()).rev() {
            digits[i] = index % self.dims[i];
            index /= self.dims[i];
        }
        digits
    }

    /// Concatenation `self ++ other`; errors if any label would repeat.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        for label in &other.labels {
            if self.contains(label) {
                return Err(Error::LabelCollision(label.clone()));
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut dims = self.dims.clone();
        dims.extend(other.dims.iter().cloned());
        Ok(Self { labels, dims })
    }

    /// Layout with the same dims but new labels, in order.
    pub fn relabeled<S: Into<String>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.len() {
            return Err(Error::InvalidLayout(format!(
                "relabel expects {} labels, got {}",
                self.len(),
                labels.len()
            )));
        }
        Self::new(labels.into_iter().zip(self.dims.iter().copied()))
    }

    /// Positions of the given labels, in the order given.
    pub fn positions(&self, labels: &[&str]) -> Result<Vec<usize>> {
        let mut seen = Vec::with_capacity(labels.len());
        for label in labels {
            let pos = self.position(label)?;
            if seen.contains(&pos) {
                return Err(Error::LabelCollision((*label).to_string()));
            }
            seen.push(pos);
        }
        Ok(seen)
    }

    /// Sub-layout at the given positions, keeping the order of `positions`.
    pub fn select(&self, positions: &[usize]) -> Self {
        Self {
            labels: positions.iter().map(|&p| self.labels[p].clone()).collect(),
            dims: positions.iter().map(|&p| self.dims[p]).collect(),
        }
    }
}
