//! Post-selection semantics: a chronology-violating qubit is modeled by
//! teleportation whose Bell measurement is forced to succeed. Two
//! formulations are provided and tested against each other: the trace
//! contraction of the interaction unitary, and the explicit four-qubit
//! circuit with an entangled resource pair and a projective Bell detection.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qcore::linalg::{operator_norm, CMatrix};
use crate::qcore::{
    bell_state_labeled, gates, BellKind, DensityMatrix, LinearMap, StateVector,
    SubsystemLayout,
};
use crate::{Error, Result};

/// Wire names for the two mouths of the wormhole: `entering` is the qubit
/// that flies in (the present-day copy), `emerged` is the one that came out
/// in the past.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub entering: String,
    pub emerged: String,
}

/// A single-traversal scenario: which unitary couples the entering qubit to
/// the emerged one, whether a phase flip precedes it, and which Bell kind
/// serves as both the teleporter resource and the post-selected detection
/// outcome (the two are the same kind by construction; a mismatch would
/// describe ordinary probabilistic teleportation, not a closed loop).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScenarioWire", into = "ScenarioWire")]
pub struct WormholeScenario {
    interaction: LinearMap,
    flip: bool,
    bell: BellKind,
    roles: Roles,
}

#[derive(Serialize, Deserialize, Clone)]
struct ScenarioWire {
    interaction: LinearMap,
    flip: bool,
    bell: BellKind,
    roles: Roles,
}

impl TryFrom<ScenarioWire> for WormholeScenario {
    type Error = Error;

    fn try_from(w: ScenarioWire) -> Result<Self> {
        WormholeScenario::new(w.interaction, w.flip, w.bell, &w.roles.entering, &w.roles.emerged)
    }
}

impl From<WormholeScenario> for ScenarioWire {
    fn from(s: WormholeScenario) -> Self {
        ScenarioWire {
            interaction: s.interaction,
            flip: s.flip,
            bell: s.bell,
            roles: s.roles,
        }
    }
}

impl WormholeScenario {
    /// `interaction` must be a two-qubit unitary; its first wire couples to
    /// the entering qubit and its second to the emerged one, whatever its
    /// current labels are.
    pub fn new(
        interaction: LinearMap,
        flip: bool,
        bell: BellKind,
        entering: &str,
        emerged: &str,
    ) -> Result<Self> {
        if entering == emerged {
            return Err(Error::InvalidLayout(format!(
                "entering and emerged share the label '{entering}'"
            )));
        }
        if interaction.in_layout().dims() != [2, 2]
            || interaction.out_layout().dims() != [2, 2]
        {
            return Err(Error::DimensionMismatch(
                "interaction must act on exactly two qubits".into(),
            ));
        }
        if !interaction.is_unitary(1e-12) {
            return Err(Error::NotUnitary("scenario interaction".into()));
        }
        let interaction = interaction.relabeled(&[entering, emerged], &[entering, emerged])?;
        Ok(Self {
            interaction,
            flip,
            bell,
            roles: Roles {
                entering: entering.into(),
                emerged: emerged.into(),
            },
        })
    }

    /// The demonstration scenario: CNOT with control on the entering qubit
    /// and target on the emerged one, anticorrelated Bell resource, wires
    /// `B` (entering) and `C1` (emerged). This is the only orientation whose
    /// flip toggles between the (|0>+|1>)/sqrt(2) and (|0>-|1>)/sqrt(2)
    /// outputs on Alice's side.
    pub fn canonical(flip: bool) -> Self {
        Self::new(gates::cnot(), flip, BellKind::PhiPlusPaper, "B", "C1")
            .expect("stock CNOT is unitary")
    }

    pub fn interaction(&self) -> &LinearMap {
        &self.interaction
    }

    pub fn flip(&self) -> bool {
        self.flip
    }

    pub fn bell(&self) -> BellKind {
        self.bell
    }

    pub fn roles(&self) -> &Roles {
        &self.roles
    }

    /// The interaction with the phase flip folded in when set.
    fn effective_interaction(&self) -> Result<LinearMap> {
        if !self.flip {
            return Ok(self.interaction.clone());
        }
        let z = gates::pauli_z()
            .relabeled(&[&self.roles.entering], &[&self.roles.entering])?;
        let id = gates::identity(1)
            .relabeled(&[&self.roles.emerged], &[&self.roles.emerged])?;
        self.interaction.compose(&z.tensor(&id)?)
    }
}

/// Survivors of the forced Bell detection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PostSelectedOutcome {
    /// Renormalized conditional state.
    pub state: StateVector,
    /// Probability that the post-selection would have happened on its own.
    pub acceptance_prob: f64,
}

/// Mixed-state counterpart of [`PostSelectedOutcome`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PostSelectedDensity {
    pub state: DensityMatrix,
    pub acceptance_prob: f64,
}

/// How to normalize the reported acceptance probability.
///
/// The contraction `Tr_ctc[U]` carries an arbitrary scale (doubling `U`'s
/// CTC dimension doubles it), so `|C psi|^2` alone is not a probability.
/// `Physical` divides by nothing and is only meaningful for operators built
/// by [`wormhole_operator`] or for the circuit formulation, where the Bell
/// detection makes it a genuine probability. `OperatorNorm` divides by
/// `|C|_op^2`, a scale-free upper bound that keeps the report in `[0, 1]`
/// but is NOT comparable across differently scaled operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcceptanceScale {
    Physical,
    OperatorNorm,
}

/// Traces the unitary over the chronology-violating wires: the resulting
/// map on the remaining wires is `C_{ij} = sum_k <i,k|u|j,k>`, left
/// unnormalized.
pub fn pctc_contract(u: &LinearMap, ctc_labels: &[&str]) -> Result<LinearMap> {
    if u.in_layout() != u.out_layout() {
        return Err(Error::LayoutMismatch(
            "contraction needs a map with matching in/out wires".into(),
        ));
    }
    if !u.is_unitary(1e-12) {
        return Err(Error::NotUnitary("contraction input".into()));
    }
    if ctc_labels.is_empty() {
        return Err(Error::InvalidLayout(
            "no chronology-violating wires named".into(),
        ));
    }
    let layout = u.in_layout();
    let mut ctc_positions = layout.positions(ctc_labels)?;
    ctc_positions.sort_unstable();
    if ctc_positions.len() == layout.len() {
        return Err(Error::InvalidLayout(
            "cannot trace over every wire; at least one must remain".into(),
        ));
    }
    let keep: Vec<usize> =
        (0..layout.len()).filter(|p| !ctc_positions.contains(p)).collect();
    let matrix =
        crate::qcore::linalg::partial_trace_matrix(u.matrix(), layout, &keep);
    LinearMap::gate(layout.select(&keep), matrix)
}

fn acceptance(norm_sq: f64, c: &LinearMap, scale: AcceptanceScale) -> f64 {
    match scale {
        AcceptanceScale::Physical => norm_sq,
        AcceptanceScale::OperatorNorm => {
            let n = operator_norm(c.matrix());
            norm_sq / (n * n)
        }
    }
}

/// Applies a chronology-violation operator `c` to the subsystems named by
/// `targets` and renormalizes the branch. `c`'s input wires are relabeled
/// onto `targets` in order; a square `c` leaves the state's layout alone.
///
/// A branch norm under `1e-12` means the post-selection can never succeed:
/// the configuration is self-contradictory and reported as
/// [`Error::ParadoxicalEvolution`].
pub fn pctc_evolve(
    state: &StateVector,
    c: &LinearMap,
    targets: &[&str],
    scale: AcceptanceScale,
) -> Result<PostSelectedOutcome> {
    let c = retargeted(c, targets)?;
    let branch = state.apply(&c)?;
    let norm = branch.norm();
    if norm < 1e-12 {
        return Err(Error::ParadoxicalEvolution { norm });
    }
    Ok(PostSelectedOutcome {
        state: branch.normalized()?,
        acceptance_prob: acceptance(norm * norm, &c, scale),
    })
}

/// Mixed-state rule: `rho -> C rho C† / Tr(C rho C†)`.
pub fn pctc_evolve_density(
    rho: &DensityMatrix,
    c: &LinearMap,
    targets: &[&str],
    scale: AcceptanceScale,
) -> Result<PostSelectedDensity> {
    let c = retargeted(c, targets)?;
    let (layout, conj) = rho.conjugated_raw(&c)?;
    let trace = conj.trace().re;
    if trace < 1e-12 {
        return Err(Error::ParadoxicalEvolution { norm: trace.max(0.0).sqrt() });
    }
    Ok(PostSelectedDensity {
        state: DensityMatrix::from_parts_unchecked(
            layout,
            conj / Complex64::new(trace, 0.0),
        ),
        acceptance_prob: acceptance(trace, &c, scale),
    })
}

fn retargeted(c: &LinearMap, targets: &[&str]) -> Result<LinearMap> {
    if targets.len() != c.in_layout().len() {
        return Err(Error::LayoutMismatch(format!(
            "{} targets for a map with {} input wires",
            targets.len(),
            c.in_layout().len()
        )));
    }
    let gate_like = c.in_layout() == c.out_layout();
    let out: Vec<&str> = if gate_like {
        targets.to_vec()
    } else {
        c.out_layout().labels().iter().map(String::as_str).collect()
    };
    c.relabeled(targets, &out)
}

/// A label guaranteed absent from `taken`, for the resource wire that never
/// appears in inputs or outputs.
fn fresh_label(taken: &[&str]) -> String {
    let mut name = String::from("resource");
    while taken.contains(&name.as_str()) {
        name.push('\'');
    }
    name
}

/// The effective single-qubit map of one traversal, sending the entering
/// wire to the emerged wire. Built by running each basis state through the
/// explicit circuit: tensor with the resource pair, interact, then contract
/// against the detection bra.
pub fn wormhole_operator(s: &WormholeScenario) -> Result<LinearMap> {
    let entering = s.roles.entering.as_str();
    let emerged = s.roles.emerged.as_str();
    let res = fresh_label(&[entering, emerged]);
    let resource = bell_state_labeled(s.bell, emerged, &res)?;
    let detect = bell_bra(s.bell, entering, &res)?;
    let u = s.effective_interaction()?;

    let in_layout = SubsystemLayout::qubits([entering])?;
    let mut columns = Vec::with_capacity(2);
    for b in 0..2 {
        let input = StateVector::basis(in_layout.clone(), b)?;
        let joint = input.tensor(&resource)?;
        let coupled = joint.apply(&u)?;
        let survived = coupled.apply(&detect)?;
        debug_assert_eq!(survived.layout().labels(), [emerged]);
        columns.push([survived.amplitudes()[0], survived.amplitudes()[1]]);
    }
    let matrix = CMatrix::from_fn(2, 2, |i, j| columns[j][i]);
    LinearMap::new(in_layout, SubsystemLayout::qubits([emerged])?, matrix)
}

/// Bra map projecting the named pair of qubits onto the Bell state,
/// consuming both wires.
pub(crate) fn bell_bra(kind: BellKind, first: &str, second: &str) -> Result<LinearMap> {
    let amps = kind.amplitudes();
    let row = CMatrix::from_fn(1, 4, |_, j| amps[j].conj());
    LinearMap::new(
        SubsystemLayout::qubits([first, second])?,
        SubsystemLayout::empty(),
        row,
    )
}

/// The explicit four-qubit run: `input ⊗ resource`, phase flip, interaction
/// on (entering, emerged), Bell detection on (entering, resource), then the
/// emerged wire takes over the entering wire's name so downstream code sees
/// the same labels it put in. The input must contain the entering wire; any
/// other wires ride along untouched.
pub fn wormhole_evolve_circuit(
    input: &StateVector,
    s: &WormholeScenario,
) -> Result<PostSelectedOutcome> {
    let entering = s.roles.entering.as_str();
    let emerged = s.roles.emerged.as_str();
    if !input.layout().contains(entering) {
        return Err(Error::UnknownLabel(entering.into()));
    }
    let input_labels: Vec<&str> =
        input.layout().labels().iter().map(String::as_str).collect();
    let mut taken = input_labels.clone();
    taken.push(emerged);
    let res = fresh_label(&taken);

    let resource = bell_state_labeled(s.bell, emerged, &res)?;
    let joint = input.tensor(&resource)?;
    let coupled = joint.apply(&s.effective_interaction()?)?;
    let survived = coupled.apply(&bell_bra(s.bell, entering, &res)?)?;

    let norm = survived.norm();
    if norm < 1e-12 {
        return Err(Error::ParadoxicalEvolution { norm });
    }
    let renamed: Vec<&str> = survived
        .layout()
        .labels()
        .iter()
        .map(|l| if l == emerged { entering } else { l.as_str() })
        .collect();
    Ok(PostSelectedOutcome {
        state: survived.normalized()?.relabeled(&renamed)?,
        acceptance_prob: norm * norm,
    })
}
