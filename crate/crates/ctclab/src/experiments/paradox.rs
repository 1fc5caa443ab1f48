//! The unproven-theorem circuit: Alice's random bits select which trials
//! carry the theorem, Oscar's book is written from her record, and Bob feeds
//! the book back through the teleporter that produced the bits.
//!
//! Each trial starts from a fresh anticorrelated pair. Alice measures her
//! half diagonally; her outcome leaves Bob's half in the matching diagonal
//! state. The earliest trials whose outcomes spell the theorem are marked as
//! message trials and copied into the book verbatim; every other trial is
//! copied inverted. Bob encodes his book bit as the phase flip and runs the
//! wormhole circuit, but with the Bell detection sampled over all four
//! outcomes instead of forced. A trial is accepted when the detection lands
//! on the resource kind, which is the sole outcome the forced version keeps.
//!
//! Message trials send the emerged state to (|0> + |1>)/sqrt(2) and are
//! accepted with probability 1/2. Inverted trials send it to
//! (|0> - |1>)/sqrt(2), orthogonal to the accepted branch, so they are never
//! accepted: the surviving record cannot contradict the theorem, it can only
//! thin it out.

use serde::{Deserialize, Serialize};

use super::bitstring::Bitstring;
use super::{map_trials, trial_rng, Draw};
use crate::error::{Error, Result};
use crate::pctc::{bell_bra, WormholeScenario};
use crate::qcore::{
    bell_state, bell_state_labeled, gates, measure_projective, BellKind, QubitBasis, StateVector,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParadoxReport {
    pub theorem: Bitstring,
    /// Alice's diagonal-basis outcomes, one per trial.
    pub alice_bits: Bitstring,
    /// 1 where the trial is part of the embedded theorem.
    pub message_mask: Bitstring,
    /// The book Bob reads: message bits verbatim, the rest inverted.
    pub oscar_book: Bitstring,
    /// The sampled Bell detection per trial.
    pub bell_outcomes: Vec<BellKind>,
    /// Trial indices whose detection landed on the resource kind.
    pub accepted: Vec<usize>,
    /// Book bits at the accepted trials, in trial order.
    pub post_selected_book: Bitstring,
    pub acceptance_rate_message: f64,
    pub acceptance_rate_nonmessage: f64,
    pub seed: u64,
}

impl ParadoxReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,alice_bit,mask,oscar_bit,bell_outcome,accepted\n");
        for i in 0..self.alice_bits.len() {
            let accepted = u8::from(self.accepted.binary_search(&i).is_ok());
            out.push_str(&format!(
                "{i},{},{},{},{},{accepted}\n",
                self.alice_bits.get(i).expect("row within run"),
                self.message_mask.get(i).expect("row within run"),
                self.oscar_book.get(i).expect("row within run"),
                self.bell_outcomes[i],
            ));
        }
        out
    }
}

/// Runs `n_trials` rounds and embeds `theorem` into Alice's record greedily,
/// earliest matching trial first. Fails with [`Error::ParadoxSetup`] when the
/// record cannot spell the theorem, and reports how far it got.
pub fn run_paradox(n_trials: usize, theorem: &Bitstring, seed: u64) -> Result<ParadoxReport> {
    if theorem.is_empty() {
        return Err(Error::EmptyMessage);
    }

    // Alice's side: outcome plus the conditional state left on B.
    let alice: Vec<(u8, StateVector)> = map_trials(n_trials, |i| {
        let mut rng = trial_rng(seed, i, Draw::AliceMeasurement);
        let pair = bell_state(BellKind::PhiPlusPaper);
        let m = measure_projective(&pair, "A", &QubitBasis::diagonal(), &mut rng)?;
        Ok((m.outcome, m.post_state))
    })?;
    let alice_bits = Bitstring::from_bits(alice.iter().map(|(bit, _)| *bit))?;

    let mut mask = vec![0u8; n_trials];
    let mut placed = 0usize;
    for (i, &(bit, _)) in alice.iter().enumerate() {
        if placed < theorem.len() && theorem.get(placed) == Some(bit) {
            mask[i] = 1;
            placed += 1;
        }
    }
    if placed < theorem.len() {
        return Err(Error::ParadoxSetup { placed, needed: theorem.len() });
    }
    let message_mask = Bitstring::from_bits(mask.iter().copied())?;
    let oscar_book = Bitstring::from_bits(
        alice_bits
            .bits()
            .iter()
            .zip(message_mask.bits())
            .map(|(bit, m)| bit ^ (1 - m)),
    )?;

    let scenario = WormholeScenario::canonical(false);
    let bell_outcomes = map_trials(n_trials, |i| {
        let flip = oscar_book.get(i) == Some(1);
        sample_detection(&alice[i].1, flip, &scenario, seed, i)
    })?;

    let accepted: Vec<usize> = bell_outcomes
        .iter()
        .enumerate()
        .filter(|(_, kind)| **kind == scenario.bell())
        .map(|(i, _)| i)
        .collect();
    let post_selected_book = Bitstring::from_bits(
        accepted.iter().map(|&i| oscar_book.get(i).expect("accepted index within run")),
    )?;

    let n_message = message_mask.bits().iter().filter(|&&m| m == 1).count();
    let accepted_message = accepted
        .iter()
        .filter(|&&i| message_mask.get(i) == Some(1))
        .count();
    let rate = |hits: usize, total: usize| if total == 0 { 0.0 } else { hits as f64 / total as f64 };

    Ok(ParadoxReport {
        theorem: theorem.clone(),
        alice_bits,
        message_mask,
        oscar_book,
        bell_outcomes,
        accepted: accepted.clone(),
        post_selected_book,
        acceptance_rate_message: rate(accepted_message, n_message),
        acceptance_rate_nonmessage: rate(accepted.len() - accepted_message, n_trials - n_message),
        seed,
    })
}

/// One teleporter round with the detection sampled instead of forced: phase
/// flip on the conditional state, fresh resource pair, the scenario's
/// interaction, then a Born draw over the four Bell outcomes on the entering
/// and second resource wires.
fn sample_detection(
    conditional: &StateVector,
    flip: bool,
    s: &WormholeScenario,
    seed: u64,
    trial: usize,
) -> Result<BellKind> {
    let entering = s.roles().entering.as_str();
    let emerged = s.roles().emerged.as_str();

    let mut bob = conditional.clone();
    if flip {
        bob = bob.apply(&gates::pauli_z().relabeled(&[entering], &[entering])?)?;
    }
    let joint = bob.tensor(&bell_state_labeled(s.bell(), emerged, "C2")?)?;
    let coupled = joint.apply(s.interaction())?;

    let mut probs = [0.0f64; 4];
    for (k, kind) in BellKind::ALL.into_iter().enumerate() {
        let branch = coupled.apply(&bell_bra(kind, entering, "C2")?)?;
        probs[k] = branch.norm().powi(2);
    }
    let total: f64 = probs.iter().sum();

    let mut rng = trial_rng(seed, trial, Draw::BellOutcome);
    let u: f64 = rand::Rng::gen::<f64>(&mut rng) * total;
    let mut acc = 0.0;
    for (k, kind) in BellKind::ALL.into_iter().enumerate() {
        acc += probs[k];
        if u < acc {
            return Ok(kind);
        }
    }
    Ok(BellKind::ALL[3])
}
