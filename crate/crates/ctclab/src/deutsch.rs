//! Consistency semantics: the chronology-violating qubit must emerge in a
//! state equal to the one computed from what later falls in. Evolution is a
//! superoperator fixed-point problem; among the fixed points the maximum
//! entropy one is selected, and the chronology-respecting side couples
//! through its reduced density matrix only, which severs entanglement.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pctc::WormholeScenario;
use crate::qcore::linalg::{
    frobenius_inner, frobenius_norm, hermitian_eigenvalues, partial_trace_matrix, unvec_col,
    vec_col, CMatrix, CVector,
};
use crate::qcore::{gates, DensityMatrix, LinearMap, SubsystemLayout};
use crate::{Error, Result};

/// The documented vectorization convention.
pub const VEC_CONVENTION: &str = "vec(AXB) = (B^T (x) A) vec(X), column-stacking";

/// A linear map on operators over a labeled system, stored as a d^2 x d^2
/// matrix acting on column-stacked operators.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    layout: SubsystemLayout,
    matrix: CMatrix,
}

impl Superoperator {
    pub fn new(layout: SubsystemLayout, matrix: CMatrix) -> Result<Self> {
        let d = layout.total_dim();
        if matrix.nrows() != d * d || matrix.ncols() != d * d {
            return Err(Error::InvalidSuperoperator(format!(
                "matrix is {}x{} but the system dimension {d} needs {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                d * d,
                d * d
            )));
        }
        Ok(Self { layout, matrix })
    }

    /// `X -> U X U†` as a superoperator.
    pub fn from_conjugation(layout: SubsystemLayout, u: &CMatrix) -> Result<Self> {
        let m = u.map(|z| z.conj()).kronecker(u);
        Self::new(layout, m)
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.total_dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Applies the map to a raw operator (not necessarily Hermitian).
    pub fn apply_matrix(&self, x: &CMatrix) -> CMatrix {
        unvec_col(&(&self.matrix * vec_col(x)), self.dim())
    }

    /// Applies the map to a state; the result is validated.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.layout() != &self.layout {
            return Err(Error::LayoutMismatch(format!(
                "superoperator over {:?} applied to {:?}",
                self.layout.labels(),
                rho.layout().labels()
            )));
        }
        DensityMatrix::new(self.layout.clone(), self.apply_matrix(rho.matrix()))
    }

    /// `N(X†) == N(X)†` on pseudorandom probes.
    pub fn preserves_hermiticity(&self, tol: f64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0bea_c0de);
        (0..8).all(|_| {
            let x = random_operator(self.dim(), &mut rng);
            let lhs = self.apply_matrix(&x.adjoint());
            let rhs = self.apply_matrix(&x).adjoint();
            frobenius_norm(&(lhs - rhs)) <= tol * frobenius_norm(&x).max(1.0)
        })
    }

    /// `Tr N(X) == Tr X` on pseudorandom probes.
    pub fn preserves_trace(&self, tol: f64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7ace_5eed);
        (0..8).all(|_| {
            let x = random_operator(self.dim(), &mut rng);
            let diff = self.apply_matrix(&x).trace() - x.trace();
            diff.norm() <= tol * frobenius_norm(&x).max(1.0)
        })
    }
}

fn random_operator(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    use rand::Rng;
    CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    })
}

#[derive(Serialize, Deserialize)]
struct SuperWire {
    labels: Vec<String>,
    dims: Vec<usize>,
    convention: String,
    data: Vec<[f64; 2]>,
}

impl Serialize for Superoperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SuperWire {
            labels: self.layout.labels().to_vec(),
            dims: self.layout.dims().to_vec(),
            convention: VEC_CONVENTION.into(),
            data: crate::qcore::serial::matrix_data(&self.matrix),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Superoperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SuperWire::deserialize(d)?;
        if w.convention != VEC_CONVENTION {
            return Err(D::Error::custom(format!(
                "unknown vectorization convention '{}'",
                w.convention
            )));
        }
        let layout = SubsystemLayout::new(
            w.labels
                .iter()
                .map(String::as_str)
                .zip(w.dims.iter().copied()),
        )
        .map_err(D::Error::custom)?;
        let side = layout.total_dim() * layout.total_dim();
        let m = crate::qcore::serial::matrix_from_data(side, side, &w.data)
            .ok_or_else(|| D::Error::custom("data length does not match dims"))?;
        Superoperator::new(layout, m).map_err(D::Error::custom)
    }
}

/// Which output wire of the interaction loops back into the past. The
/// wormhole topology keeps the entering wire: what flies in now is what
/// emerged earlier. Keeping the emerged wire instead describes a loop where
/// the past copy itself re-enters, which is the right reading for some of
/// the stock interactions (identity, swap) when used as self-contained
/// consistency checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeedbackSlot {
    Entering,
    Emerged,
}

/// The consistency map `N(rho) = Tr_other[U(env ⊗ rho)U†]`.
///
/// `interaction`'s first wire carries the chronology-respecting input
/// (`env`), its second wire the looping state `rho`. `keep` names the output
/// wire that is fed back; the other is traced out. The superoperator acts on
/// the second wire's labeled space.
pub fn build_ctc_map(
    interaction: &LinearMap,
    env: &DensityMatrix,
    keep: FeedbackSlot,
) -> Result<Superoperator> {
    if interaction.in_layout() != interaction.out_layout()
        || interaction.in_layout().len() != 2
    {
        return Err(Error::LayoutMismatch(
            "interaction must be a two-wire gate".into(),
        ));
    }
    if !interaction.is_unitary(1e-12) {
        return Err(Error::NotUnitary("consistency-map interaction".into()));
    }
    let wires = interaction.in_layout();
    if env.layout().dims() != [wires.dims()[0]] {
        return Err(Error::DimensionMismatch(format!(
            "environment dimension {:?} does not match the first wire ({})",
            env.layout().dims(),
            wires.dims()[0]
        )));
    }
    let loop_layout = wires.select(&[1]);
    let d = loop_layout.total_dim();
    let keep_position: &[usize] = match keep {
        FeedbackSlot::Entering => &[0],
        FeedbackSlot::Emerged => &[1],
    };

    let u = interaction.matrix();
    let mut matrix = CMatrix::zeros(d * d, d * d);
    for k in 0..d * d {
        // column-stacked operator basis element |i><j| with k = j*d + i
        let mut e = CMatrix::zeros(d, d);
        e[(k % d, k / d)] = Complex64::new(1.0, 0.0);
        let joint = env.matrix().kronecker(&e);
        let evolved = u * joint * u.adjoint();
        let kept = partial_trace_matrix(&evolved, wires, keep_position);
        matrix.set_column(k, &vec_col(&kept));
    }
    Superoperator::new(loop_layout, matrix)
}

/// The affine set of consistent states: one representative plus an
/// orthonormal family of traceless Hermitian directions along which it can
/// slide while remaining fixed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedPointSet {
    pub base: DensityMatrix,
    pub directions: Vec<LinearMap>,
}

impl FixedPointSet {
    /// A member of the affine set (not necessarily PSD).
    pub fn point(&self, coefficients: &[f64]) -> Result<CMatrix> {
        if coefficients.len() != self.directions.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} directions",
                coefficients.len(),
                self.directions.len()
            )));
        }
        let mut m = self.base.matrix().clone();
        for (x, dir) in coefficients.iter().zip(&self.directions) {
            m += dir.matrix() * Complex64::new(*x, 0.0);
        }
        Ok(m)
    }
}

/// Finds the fixed points of a trace- and Hermiticity-preserving map by two
/// independent routes: a singular-value sweep of `N - 1` spans the whole
/// eigenspace, and averaged iteration from the maximally mixed state pins
/// the representative `base`. The two must agree; a residual above `tol`
/// reports failure rather than an approximate answer.
pub fn fixed_points(n: &Superoperator, tol: f64) -> Result<FixedPointSet> {
    if !n.preserves_trace(tol.max(1e-10)) {
        return Err(Error::InvalidSuperoperator(
            "map does not preserve trace".into(),
        ));
    }
    if !n.preserves_hermiticity(tol.max(1e-10)) {
        return Err(Error::InvalidSuperoperator(
            "map does not preserve Hermiticity".into(),
        ));
    }
    let d = n.dim();
    let side = d * d;

    // Right singular vectors of (N - 1) with singular value <= tol span the
    // fixed subspace of operators.
    let shifted = n.matrix() - CMatrix::identity(side, side);
    let svd = shifted.svd(false, true);
    let v_t = svd
        .v_t
        .as_ref()
        .expect("requested right singular vectors");
    let mut null_vectors: Vec<CVector> = Vec::new();
    for (i, sv) in svd.singular_values.iter().enumerate() {
        if *sv <= tol {
            null_vectors.push(v_t.row(i).adjoint());
        }
    }
    if null_vectors.is_empty() {
        let residual = svd
            .singular_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        return Err(Error::NoFixedPoint { tol, residual });
    }

    // Hermitian spanning set: a Hermiticity-preserving map fixes X† whenever
    // it fixes X, so the Hermitian/anti-Hermitian parts are fixed too.
    let mut candidates: Vec<CMatrix> = Vec::new();
    for v in &null_vectors {
        let m = unvec_col(v, d);
        let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let skew = (&m - m.adjoint()) * Complex64::new(0.0, -0.5);
        candidates.push(herm);
        candidates.push(skew);
    }
    let hermitian_basis = gram_schmidt(&candidates, 1e-8);

    let base = cesaro_fixed_point(n)?;
    let base_residual = frobenius_norm(&(n.apply_matrix(base.matrix()) - base.matrix()));
    if base_residual > tol {
        return Err(Error::NoFixedPoint {
            tol,
            residual: base_residual,
        });
    }

    // Split off the trace component to leave the traceless directions.
    let trace_component: Vec<f64> = hermitian_basis
        .iter()
        .map(|b| b.trace().re)
        .collect();
    let trace_norm = trace_component.iter().map(|t| t * t).sum::<f64>().sqrt();
    let mut traceless: Vec<CMatrix> = Vec::new();
    if trace_norm > 1e-8 {
        let mut trace_dir = CMatrix::zeros(d, d);
        for (t, b) in trace_component.iter().zip(&hermitian_basis) {
            trace_dir += b * Complex64::new(t / trace_norm, 0.0);
        }
        for b in &hermitian_basis {
            let overlap = frobenius_inner(&trace_dir, b);
            traceless.push(b - &trace_dir * overlap);
        }
    } else {
        traceless = hermitian_basis;
    }
    let directions = gram_schmidt(&traceless, 1e-8)
        .into_iter()
        .map(|m| {
            debug_assert!(m.trace().norm() < 1e-9);
            LinearMap::gate(base.layout().clone(), m).expect("square by construction")
        })
        .collect();

    Ok(FixedPointSet { base, directions })
}

/// Real-linear Gram-Schmidt over Hermitian matrices under the Frobenius
/// inner product; drops vectors whose residual norm falls below `cutoff`.
fn gram_schmidt(mats: &[CMatrix], cutoff: f64) -> Vec<CMatrix> {
    let mut basis: Vec<CMatrix> = Vec::new();
    for m in mats {
        let mut r = m.clone();
        for b in &basis {
            // coefficients are real because both operands are Hermitian
            let coeff = frobenius_inner(b, &r).re;
            r -= b * Complex64::new(coeff, 0.0);
        }
        let norm = frobenius_norm(&r);
        if norm > cutoff {
            basis.push(r / Complex64::new(norm, 0.0));
        }
    }
    basis
}

/// The fixed point reached by averaged iteration from the maximally mixed
/// state. Plain running averages close the gap only linearly, so the
/// average is restarted: each round feeds the previous average back in as
/// the new starting point, which contracts the non-fixed components
/// geometrically. The window doubles whenever a round stalls.
pub fn cesaro_fixed_point(n: &Superoperator) -> Result<DensityMatrix> {
    let d = n.dim();
    let mut x = CMatrix::identity(d, d) / Complex64::new(d as f64, 0.0);
    let mut window = 64usize;
    let mut last_residual = f64::INFINITY;
    for _ in 0..48 {
        let mut avg = x.clone();
        let mut cur = x.clone();
        for _ in 1..window {
            cur = n.apply_matrix(&cur);
            avg += &cur;
        }
        avg /= Complex64::new(window as f64, 0.0);
        let residual = frobenius_norm(&(n.apply_matrix(&avg) - &avg));
        if residual <= 1e-12 {
            x = avg;
            last_residual = residual;
            break;
        }
        if residual > last_residual * 0.5 {
            window = (window * 2).min(1 << 16);
        }
        last_residual = residual;
        x = avg;
    }
    if last_residual > 1e-10 {
        return Err(Error::NoFixedPoint {
            tol: 1e-10,
            residual: last_residual,
        });
    }
    // numerical cleanup: exact Hermitian part, unit trace
    let herm = (&x + x.adjoint()) * Complex64::new(0.5, 0.0);
    let trace = herm.trace().re;
    let layout = n.layout().clone();
    DensityMatrix::new(layout, herm / Complex64::new(trace, 0.0)).map_err(|e| {
        Error::InvalidSuperoperator(format!("iteration left the state cone: {e}"))
    })
}

/// Entropy in bits of a Hermitian PSD matrix, tolerant of tiny negatives.
fn entropy_of(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m)
        .iter()
        .filter(|&&p| p > 1e-12)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Clips to the PSD cone and renormalizes the trace.
fn psd_project(m: &CMatrix) -> CMatrix {
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let d = eig.eigenvalues.len();
    let mut clipped = CMatrix::zeros(d, d);
    for k in 0..d {
        let p = eig.eigenvalues[k].max(0.0);
        if p > 0.0 {
            let col = eig.eigenvectors.column(k);
            clipped += (col * col.adjoint()) * Complex64::new(p, 0.0);
        }
    }
    let t = clipped.trace().re;
    if t > 1e-15 {
        clipped / Complex64::new(t, 0.0)
    } else {
        clipped
    }
}

/// Orthogonal projection of `m` onto the affine slice through `base`.
fn affine_project(set: &FixedPointSet, m: &CMatrix) -> CMatrix {
    let mut out = set.base.matrix().clone();
    for dir in &set.directions {
        let coeff = frobenius_inner(dir.matrix(), &(m - set.base.matrix())).re;
        out += dir.matrix() * Complex64::new(coeff, 0.0);
    }
    out
}

/// The entropy maximizer over the PSD part of the affine fixed-point set,
/// by projected gradient ascent with backtracking. Entropy is strictly
/// concave in the spectrum, so the maximizer is unique; ascent stops when
/// the projected gradient norm reaches `1e-8` or after 10,000 steps, and a
/// stalled line search reports the boundary point it reached.
pub fn max_entropy_fixed_point(set: &FixedPointSet) -> Result<DensityMatrix> {
    if set.directions.is_empty() {
        return Ok(set.base.clone());
    }
    let layout = set.base.layout().clone();
    let mut rho = set.base.matrix().clone();
    let mut entropy = entropy_of(&rho);

    for _ in 0..10_000 {
        // gradient of entropy in bits is -(log2(rho) + 1/ln 2); the constant
        // term vanishes against traceless directions
        let eig = ((&rho + rho.adjoint()) * Complex64::new(0.5, 0.0)).symmetric_eigen();
        let d = eig.eigenvalues.len();
        let mut log_rho = CMatrix::zeros(d, d);
        for k in 0..d {
            let p = eig.eigenvalues[k].max(1e-18);
            let col = eig.eigenvectors.column(k);
            log_rho += (col * col.adjoint()) * Complex64::new(p.log2(), 0.0);
        }
        let coeffs: Vec<f64> = set
            .directions
            .iter()
            .map(|dir| -frobenius_inner(dir.matrix(), &log_rho).re)
            .collect();
        let grad_norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if grad_norm <= 1e-8 {
            break;
        }
        let mut step_dir = CMatrix::zeros(d, d);
        for (c, dir) in coeffs.iter().zip(&set.directions) {
            step_dir += dir.matrix() * Complex64::new(*c, 0.0);
        }

        let mut alpha = 1.0 / grad_norm.max(1.0);
        let mut advanced = false;
        while alpha > 1e-14 {
            let mut candidate = &rho + &step_dir * Complex64::new(alpha, 0.0);
            // alternate PSD clipping with the affine constraint
            for _ in 0..32 {
                let clipped = psd_project(&candidate);
                candidate = affine_project(set, &clipped);
                let min_eig = hermitian_eigenvalues(&candidate)
                    .first()
                    .copied()
                    .unwrap_or(0.0);
                if min_eig >= -1e-12 {
                    break;
                }
            }
            let candidate_entropy = entropy_of(&candidate);
            if candidate_entropy > entropy + 1e-4 * alpha * grad_norm * grad_norm {
                rho = candidate;
                entropy = candidate_entropy;
                advanced = true;
                break;
            }
            alpha *= 0.5;
        }
        if !advanced {
            break;
        }
    }

    let cleaned = psd_project(&rho);
    DensityMatrix::new(layout, cleaned)
}

/// One traversal under consistency semantics. The flip hits the entering
/// qubit first; the chronology-respecting pair then enters only through the
/// entering qubit's reduced state, the loop state solves the consistency
/// map at maximum entropy, and the output is the non-entering marginal
/// tensored with the evolved emerged qubit under the entering qubit's
/// label. Entanglement with the wire that flew in does not survive.
pub fn deutsch_evolve(joint: &DensityMatrix, s: &WormholeScenario) -> Result<DensityMatrix> {
    let entering = s.roles().entering.as_str();
    let emerged = s.roles().emerged.as_str();
    if !joint.layout().contains(entering) || joint.layout().len() != 2 {
        return Err(Error::LayoutMismatch(format!(
            "need a two-qubit state containing '{entering}', got {:?}",
            joint.layout().labels()
        )));
    }
    let other = joint
        .layout()
        .labels()
        .iter()
        .find(|l| *l != entering)
        .expect("two labels, one is entering")
        .clone();

    let flipped = if s.flip() {
        let z = gates::pauli_z().relabeled(&[entering], &[entering])?;
        joint.apply(&z)?
    } else {
        joint.clone()
    };
    let env = flipped.partial_trace(&[entering])?;

    let n = build_ctc_map(s.interaction(), &env, FeedbackSlot::Entering)?;
    let set = fixed_points(&n, 1e-10)?;
    let rho_ctc = max_entropy_fixed_point(&set)?;

    // evolve once more and keep the emerged wire: that qubit continues
    let joint_in = env.tensor(&rho_ctc)?;
    let evolved = joint_in.apply(s.interaction())?;
    let out = evolved.partial_trace(&[emerged])?.relabeled(&[entering])?;

    let alice = joint.partial_trace(&[other.as_str()])?;
    alice.tensor(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{bell_state, random_density, trace_distance, BellKind, StateVector};
    use rand::SeedableRng;

    fn qubit(label: &str) -> SubsystemLayout {
        SubsystemLayout::qubits([label]).unwrap()
    }

    fn mixed(label: &str) -> DensityMatrix {
        DensityMatrix::maximally_mixed(qubit(label))
    }

    #[test]
    fn cnot_with_mixed_env_is_the_constant_map() {
        let env = mixed("B");
        let n = build_ctc_map(&gates::cnot(), &env, FeedbackSlot::Entering).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..4 {
            let rho = random_density(qubit("q1"), &mut rng);
            let out = n.apply(&rho).unwrap();
            assert!(trace_distance(&out, &mixed("q1")).unwrap() < 1e-12);
        }
    }

    #[test]
    fn identity_interaction_keeping_emerged_is_the_identity_map() {
        let env = mixed("B");
        let n = build_ctc_map(&gates::identity(2), &env, FeedbackSlot::Emerged).unwrap();
        let diff = n.matrix() - CMatrix::identity(4, 4);
        assert!(frobenius_norm(&diff) < 1e-12);
    }

    #[test]
    fn swap_keeping_emerged_is_constant_to_the_environment() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let sigma = random_density(qubit("B"), &mut rng);
        let n = build_ctc_map(&gates::swap(), &sigma, FeedbackSlot::Emerged).unwrap();
        let rho = random_density(qubit("q1"), &mut rng);
        let out = n.apply_matrix(rho.matrix());
        assert!(frobenius_norm(&(out - sigma.matrix())) < 1e-12);
    }

    #[test]
    fn superoperator_probes_accept_valid_maps() {
        let n = build_ctc_map(&gates::cnot(), &mixed("B"), FeedbackSlot::Entering).unwrap();
        assert!(n.preserves_trace(1e-10));
        assert!(n.preserves_hermiticity(1e-10));
    }

    #[test]
    fn constant_map_has_a_unique_fixed_point() {
        let n = build_ctc_map(&gates::cnot(), &mixed("B"), FeedbackSlot::Entering).unwrap();
        let set = fixed_points(&n, 1e-10).unwrap();
        assert!(set.directions.is_empty());
        assert!(trace_distance(&set.base, &mixed("q1")).unwrap() < 1e-10);
    }

    #[test]
    fn identity_map_fixes_everything() {
        let n = build_ctc_map(&gates::identity(2), &mixed("B"), FeedbackSlot::Emerged).unwrap();
        let set = fixed_points(&n, 1e-10).unwrap();
        assert_eq!(set.directions.len(), 3);
        assert!(trace_distance(&set.base, &mixed("q1")).unwrap() < 1e-10);
        for dir in &set.directions {
            let m = dir.matrix();
            assert!(m.trace().norm() < 1e-9, "directions must be traceless");
            assert!(frobenius_norm(&(m - m.adjoint())) < 1e-9, "and Hermitian");
            let moved = n.apply_matrix(m);
            assert!(frobenius_norm(&(moved - m)) < 1e-10, "and fixed");
        }
        // mutually orthonormal
        for i in 0..3 {
            for j in 0..3 {
                let ip = frobenius_inner(set.directions[i].matrix(), set.directions[j].matrix());
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip.re - expect).abs() < 1e-9 && ip.im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn dephasing_fixes_the_diagonal_plane() {
        let z = gates::pauli_z();
        let n = Superoperator::from_conjugation(qubit("q"), z.matrix()).unwrap();
        let set = fixed_points(&n, 1e-10).unwrap();
        assert_eq!(set.directions.len(), 1);
        assert!(trace_distance(&set.base, &mixed("q")).unwrap() < 1e-10);
        let d = set.directions[0].matrix();
        // the only traceless diagonal direction, up to sign
        assert!(d[(0, 1)].norm() < 1e-9 && d[(1, 0)].norm() < 1e-9);
        assert!((d[(0, 0)].re.abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
        assert!((d[(0, 0)] + d[(1, 1)]).norm() < 1e-9);
    }

    #[test]
    fn cesaro_converges_for_a_rotating_map() {
        // conjugation by X has eigenvalues {1, 1, -1, -1} on operators; the
        // averaged iteration must still land on a fixed point
        let x = gates::pauli_x();
        let n = Superoperator::from_conjugation(qubit("q"), x.matrix()).unwrap();
        let rho = cesaro_fixed_point(&n).unwrap();
        let residual = frobenius_norm(&(n.apply_matrix(rho.matrix()) - rho.matrix()));
        assert!(residual < 1e-10);
    }

    #[test]
    fn max_entropy_returns_base_when_rigid() {
        let n = build_ctc_map(&gates::cnot(), &mixed("B"), FeedbackSlot::Entering).unwrap();
        let set = fixed_points(&n, 1e-10).unwrap();
        let best = max_entropy_fixed_point(&set).unwrap();
        assert!(trace_distance(&best, &set.base).unwrap() < 1e-12);
    }

    #[test]
    fn max_entropy_on_the_full_qubit_set_is_maximally_mixed() {
        let n = build_ctc_map(&gates::identity(2), &mixed("B"), FeedbackSlot::Emerged).unwrap();
        let set = fixed_points(&n, 1e-10).unwrap();
        let best = max_entropy_fixed_point(&set).unwrap();
        assert!(trace_distance(&best, &mixed("q1")).unwrap() < 1e-8);
        assert!((best.entropy_bits() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ascent_climbs_from_a_skewed_base() {
        // hand-built set: base diag(0.9, 0.1), one diagonal direction
        let layout = qubit("q");
        let base = DensityMatrix::new(
            layout.clone(),
            CMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(0.9, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.1, 0.0),
                ],
            ),
        )
        .unwrap();
        let dir = LinearMap::gate(
            layout,
            CMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
                ],
            ),
        )
        .unwrap();
        let set = FixedPointSet { base, directions: vec![dir] };
        let best = max_entropy_fixed_point(&set).unwrap();
        assert!((best.matrix()[(0, 0)].re - 0.5).abs() < 1e-6);
        assert!((best.entropy_bits() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn ascent_respects_a_boundary_pinned_set() {
        // {diag(1,0) + x X/sqrt(2)} contains only x = 0 as a PSD point
        let layout = qubit("q");
        let base = DensityMatrix::new(
            layout.clone(),
            CMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                ],
            ),
        )
        .unwrap();
        let dir = LinearMap::gate(
            layout,
            CMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(0.0, 0.0),
                    Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                    Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                    Complex64::new(0.0, 0.0),
                ],
            ),
        )
        .unwrap();
        let set = FixedPointSet { base: base.clone(), directions: vec![dir] };
        let best = max_entropy_fixed_point(&set).unwrap();
        assert!(trace_distance(&best, &base).unwrap() < 1e-6);
    }

    #[test]
    fn entangled_input_decorrelates_to_the_fully_mixed_pair() {
        let joint = DensityMatrix::from_state(&bell_state(BellKind::PhiPlusPaper)).unwrap();
        for flip in [false, true] {
            let out = deutsch_evolve(&joint, &WormholeScenario::canonical(flip)).unwrap();
            assert_eq!(out.layout().labels(), ["A", "B"]);
            let expect = mixed("A").tensor(&mixed("B")).unwrap();
            assert!(trace_distance(&out, &expect).unwrap() < 1e-9);
        }
    }

    #[test]
    fn flip_cannot_signal() {
        let joint = DensityMatrix::from_state(&bell_state(BellKind::PhiPlusPaper)).unwrap();
        let off = deutsch_evolve(&joint, &WormholeScenario::canonical(false)).unwrap();
        let on = deutsch_evolve(&joint, &WormholeScenario::canonical(true)).unwrap();
        assert!(trace_distance(&off, &on).unwrap() < 1e-10);
        let a_off = off.partial_trace(&["A"]).unwrap();
        let a_on = on.partial_trace(&["A"]).unwrap();
        assert!(trace_distance(&a_off, &a_on).unwrap() < 1e-10);
    }

    #[test]
    fn identity_interaction_leaves_products_alone() {
        let zero_a = DensityMatrix::from_state(
            &StateVector::basis(qubit("A"), 0).unwrap(),
        )
        .unwrap();
        let zero_b = DensityMatrix::from_state(
            &StateVector::basis(qubit("B"), 0).unwrap(),
        )
        .unwrap();
        let joint = zero_a.tensor(&zero_b).unwrap();
        let s = WormholeScenario::new(
            gates::identity(2),
            false,
            BellKind::PhiPlusPaper,
            "B",
            "C1",
        )
        .unwrap();
        let out = deutsch_evolve(&joint, &s).unwrap();
        assert!(trace_distance(&out, &joint).unwrap() < 1e-9);
    }

    #[test]
    fn superoperator_json_carries_the_convention() {
        let n = build_ctc_map(&gates::cnot(), &mixed("B"), FeedbackSlot::Entering).unwrap();
        let json = serde_json::to_string(&n).unwrap();
        assert!(json.contains("column-stacking"));
        let back: Superoperator = serde_json::from_str(&json).unwrap();
        assert_eq!(back, n);
        let tampered = json.replace("column-stacking", "row-stacking");
        assert!(serde_json::from_str::<Superoperator>(&tampered).is_err());
    }

    #[test]
    fn every_point_of_the_affine_set_stays_fixed() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (interaction, keep) in [
            (gates::cnot(), FeedbackSlot::Entering),
            (gates::identity(2), FeedbackSlot::Emerged),
            (gates::cnot_reversed(), FeedbackSlot::Entering),
            (gates::swap(), FeedbackSlot::Entering),
        ] {
            let n = build_ctc_map(&interaction, &mixed("B"), keep).unwrap();
            let set = fixed_points(&n, 1e-10).unwrap();
            for _ in 0..8 {
                let coeffs: Vec<f64> = (0..set.directions.len())
                    .map(|_| rng.gen_range(-1.0..1.0))
                    .collect();
                let point = set.point(&coeffs).unwrap();
                let moved = n.apply_matrix(&point);
                assert!(frobenius_norm(&(moved - &point)) < 1e-9);
            }
        }
    }
}
