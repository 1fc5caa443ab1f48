//! Sending a classical message backwards through the wormhole, one bit per
//! fresh Bell pair.
//!
//! Alice holds qubit `A`, Bob's qubit `B` enters the loop. Bob encodes bit 1
//! as the phase flip. Under post-selection Alice's qubit lands on
//! (|0> + |1>)/sqrt(2) or (|0> - |1>)/sqrt(2) exactly, so a diagonal-basis
//! measurement reads the bit without error. The fixed-point model decorrelates
//! the pair instead and the same measurement is a fair coin.

use serde::{Deserialize, Serialize};

use super::bitstring::Bitstring;
use super::{map_trials, trial_rng, Draw, Model};
use crate::deutsch::deutsch_evolve;
use crate::error::{Error, Result};
use crate::pctc::{wormhole_evolve_circuit, WormholeScenario};
use crate::qcore::{
    bell_state, measure_projective, measure_projective_density, BellKind, DensityMatrix,
    QubitBasis,
};

/// Alice's view of one transmitted bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerBitState {
    /// Whether Bob applied the phase flip (the bit he sent).
    pub flip: bool,
    /// Probability that Alice's diagonal measurement yields outcome 0,
    /// i.e. <+|rho_A|+>, before the sample is drawn.
    pub p_plus: f64,
    /// The sampled outcome; 0 decodes as bit 0.
    pub outcome: u8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignalReport {
    pub model: Model,
    pub sent: Bitstring,
    pub decoded: Bitstring,
    pub per_bit_states: Vec<PerBitState>,
    /// Hamming distance between `sent` and `decoded`.
    pub error_count: usize,
    pub seed: u64,
}

impl SignalReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,sent,flip,p_plus,decoded\n");
        for (i, s) in self.per_bit_states.iter().enumerate() {
            let sent = self.sent.get(i).expect("report lengths agree");
            let decoded = self.decoded.get(i).expect("report lengths agree");
            out.push_str(&format!(
                "{i},{sent},{},{},{decoded}\n",
                u8::from(s.flip),
                s.p_plus
            ));
        }
        out
    }
}

/// One bit: prepare the anticorrelated pair, push `B` through the scenario
/// with the flip set to the message bit, then measure `A` in the diagonal
/// basis. The random stream is per-bit, so bits are independent and the
/// report is reproducible regardless of how the work is scheduled.
pub fn run_signalling(message: &Bitstring, model: Model, seed: u64) -> Result<SignalReport> {
    if message.is_empty() {
        return Err(Error::EmptyMessage);
    }
    let per_bit_states = map_trials(message.len(), |i| {
        let bit = message.get(i).expect("index below length");
        let scenario = WormholeScenario::canonical(bit == 1);
        let pair = bell_state(BellKind::PhiPlusPaper);
        let mut rng = trial_rng(seed, i, Draw::AliceMeasurement);
        let basis = QubitBasis::diagonal();
        let (p_zero, outcome) = match model {
            Model::Pctc => {
                let out = wormhole_evolve_circuit(&pair, &scenario)?;
                let m = measure_projective(&out.state, "A", &basis, &mut rng)?;
                (if m.outcome == 0 { m.prob } else { 1.0 - m.prob }, m.outcome)
            }
            Model::Deutsch => {
                let out = deutsch_evolve(&DensityMatrix::from_state(&pair)?, &scenario)?;
                let alice = out.partial_trace(&["A"])?;
                let m = measure_projective_density(&alice, "A", &basis, &mut rng)?;
                (if m.outcome == 0 { m.prob } else { 1.0 - m.prob }, m.outcome)
            }
        };
        Ok(PerBitState { flip: bit == 1, p_plus: p_zero, outcome })
    })?;

    let decoded = Bitstring::from_bits(per_bit_states.iter().map(|s| s.outcome))?;
    let error_count = message.distance(&decoded)?;
    Ok(SignalReport {
        model,
        sent: message.clone(),
        decoded,
        per_bit_states,
        error_count,
        seed,
    })
}
