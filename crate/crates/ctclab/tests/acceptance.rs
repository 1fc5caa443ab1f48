//! The release gate. Each test is one numbered criterion and prints a
//! single PASS or FAIL line with the quantities it checked; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use common::{anticorrelated_pair, c, contraction_oracle, max_abs_diff, traversal_oracle, R};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ctclab::deutsch::{
    build_ctc_map, deutsch_evolve, fixed_points, max_entropy_fixed_point, FeedbackSlot,
};
use ctclab::experiments::{run_paradox, run_signalling, Bitstring, Model};
use ctclab::pctc::{
    pctc_contract, pctc_evolve, wormhole_evolve_circuit, wormhole_operator, AcceptanceScale,
    WormholeScenario,
};
use ctclab::qcore::{
    bell_state, gates, phase_invariant_overlap, random_density, random_state, random_unitary,
    trace_distance, BellKind, DensityMatrix, StateVector, SubsystemLayout,
};
use ctclab::Error;

fn criterion(number: usize, what: &str, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(detail) => println!("PASS criterion {number}: {what} ({detail})"),
        Err(msg) => {
            println!("FAIL criterion {number}: {what}: {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

fn qubits(labels: &[&str]) -> SubsystemLayout {
    SubsystemLayout::qubits(labels.iter().copied()).expect("distinct test labels")
}

#[test]
fn criterion_1_golden_output_states() {
    criterion(1, "flip toggles the output between the diagonal pair", || {
        let input = bell_state(BellKind::PhiPlusPaper);
        let layout = qubits(&["A", "B"]);
        let plus_zero =
            StateVector::new(layout.clone(), vec![c(R), c(0.0), c(R), c(0.0)]).unwrap();
        let minus_zero =
            StateVector::new(layout, vec![c(R), c(0.0), c(-R), c(0.0)]).unwrap();

        let off = wormhole_evolve_circuit(&input, &WormholeScenario::canonical(false))
            .map_err(|e| e.to_string())?;
        let on = wormhole_evolve_circuit(&input, &WormholeScenario::canonical(true))
            .map_err(|e| e.to_string())?;
        let overlap_off = phase_invariant_overlap(&off.state, &plus_zero).unwrap();
        let overlap_on = phase_invariant_overlap(&on.state, &minus_zero).unwrap();
        if overlap_off < 1.0 - 1e-9 {
            return Err(format!("flip-off overlap {overlap_off}"));
        }
        if overlap_on < 1.0 - 1e-9 {
            return Err(format!("flip-on overlap {overlap_on}"));
        }
        Ok(format!("overlaps {overlap_off:.12} and {overlap_on:.12}"))
    });
}

#[test]
fn criterion_2_circuit_operator_equivalence() {
    criterion(2, "circuit and operator routes agree on 200 random unitaries", || {
        let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
        let mut worst_overlap = 1.0f64;
        let mut worst_acceptance = 0.0f64;
        for trial in 0..200 {
            let u = random_unitary(qubits(&["B", "C1"]), &mut rng);
            let s = WormholeScenario::new(u, trial % 2 == 1, BellKind::PhiPlusPaper, "B", "C1")
                .unwrap();
            let input = random_state(qubits(&["A", "B"]), &mut rng);
            let e = wormhole_operator(&s).unwrap().relabeled(&["B"], &["B"]).unwrap();

            let circuit = wormhole_evolve_circuit(&input, &s);
            let operator = pctc_evolve(&input, &e, &["B"], AcceptanceScale::Physical);
            match (circuit, operator) {
                (Ok(a), Ok(b)) => {
                    let overlap = phase_invariant_overlap(&a.state, &b.state).unwrap();
                    let gap = (a.acceptance_prob - b.acceptance_prob).abs();
                    worst_overlap = worst_overlap.min(overlap);
                    worst_acceptance = worst_acceptance.max(gap);
                    if overlap < 1.0 - 1e-9 || gap > 1e-9 {
                        return Err(format!(
                            "trial {trial}: overlap {overlap}, acceptance gap {gap}"
                        ));
                    }
                }
                (
                    Err(Error::ParadoxicalEvolution { .. }),
                    Err(Error::ParadoxicalEvolution { .. }),
                ) => {}
                (a, b) => return Err(format!("trial {trial}: routes split, {a:?} vs {b:?}")),
            }
        }

        // a state the post-selection annihilates must be rejected by both
        let doomed = StateVector::new(
            qubits(&["A", "B"]),
            vec![c(0.5), c(-0.5), c(0.5), c(-0.5)],
        )
        .unwrap();
        let s = WormholeScenario::canonical(false);
        let e = wormhole_operator(&s).unwrap().relabeled(&["B"], &["B"]).unwrap();
        let circuit_err = wormhole_evolve_circuit(&doomed, &s);
        let operator_err = pctc_evolve(&doomed, &e, &["B"], AcceptanceScale::Physical);
        if !matches!(circuit_err, Err(Error::ParadoxicalEvolution { .. }))
            || !matches!(operator_err, Err(Error::ParadoxicalEvolution { .. }))
        {
            return Err("zero-norm input not rejected by both routes".into());
        }
        Ok(format!(
            "worst overlap {worst_overlap:.12}, worst acceptance gap {worst_acceptance:.2e}"
        ))
    });
}

#[test]
fn criterion_3_signalling_contrast() {
    criterion(3, "post-selection signals perfectly, fixed points not at all", || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let message = Bitstring::random(128, &mut rng);
        let pctc = run_signalling(&message, Model::Pctc, 3).map_err(|e| e.to_string())?;
        if pctc.error_count != 0 {
            return Err(format!("post-selected decode has {} errors", pctc.error_count));
        }

        let long = Bitstring::random(10_000, &mut rng);
        let deutsch = run_signalling(&long, Model::Deutsch, 3).map_err(|e| e.to_string())?;
        if deutsch.error_count < 4850 || deutsch.error_count > 5150 {
            return Err(format!(
                "fixed-point error count {} outside [4850, 5150]",
                deutsch.error_count
            ));
        }

        let joint = DensityMatrix::from_state(&bell_state(BellKind::PhiPlusPaper)).unwrap();
        let half = DensityMatrix::maximally_mixed(qubits(&["A"]));
        for flip in [false, true] {
            let out = deutsch_evolve(&joint, &WormholeScenario::canonical(flip))
                .map_err(|e| e.to_string())?;
            let marginal = out.partial_trace(&["A"]).unwrap();
            let distance = trace_distance(&marginal, &half).unwrap();
            if distance > 1e-10 {
                return Err(format!("flip {flip} leaks: marginal distance {distance}"));
            }
        }
        Ok(format!("128-bit decode exact, 10k errors {}", deutsch.error_count))
    });
}

#[test]
fn criterion_4_paradox_post_selection() {
    criterion(4, "surviving record spells the theorem and nothing else", || {
        let mut rng = ChaCha8Rng::seed_from_u64(64);
        let theorem = Bitstring::random(64, &mut rng);
        let report = run_paradox(10_000, &theorem, 64).map_err(|e| e.to_string())?;

        if report.acceptance_rate_nonmessage != 0.0 {
            return Err(format!(
                "edited trials accepted at rate {}",
                report.acceptance_rate_nonmessage
            ));
        }

        // analytic per-trial probability from the enumeration oracle
        let pair = anticorrelated_pair();
        let amps = traversal_oracle([c(R), c(R)], gates::cnot().matrix(), pair, pair);
        let p = amps[0].norm_sqr() + amps[1].norm_sqr();
        let message_trials =
            report.message_mask.bits().iter().filter(|&&m| m == 1).count();
        let sigma = (p * (1.0 - p) / message_trials as f64).sqrt();
        let gap = (report.acceptance_rate_message - p).abs();
        if gap > 3.0 * sigma {
            return Err(format!(
                "message acceptance {} vs analytic {p} exceeds 3 sigma ({:.4})",
                report.acceptance_rate_message,
                3.0 * sigma
            ));
        }

        if !report.post_selected_book.is_subsequence_of(&theorem) {
            return Err("surviving book is not an ordered subsequence of the theorem".into());
        }
        for &i in &report.accepted {
            if report.message_mask.get(i) != Some(1) {
                return Err(format!("accepted trial {i} carries an edited bit"));
            }
        }
        Ok(format!(
            "message rate {:.4} vs analytic {p} over {message_trials} trials, {} survivors",
            report.acceptance_rate_message,
            report.accepted.len()
        ))
    });
}

#[test]
fn criterion_5_fixed_point_machinery() {
    criterion(5, "fixed-point solver finds the right sets and entropies", || {
        // constant map: maximally mixed environment through the CNOT
        let env = DensityMatrix::maximally_mixed(qubits(&["B"]));
        let constant = build_ctc_map(WormholeScenario::canonical(false).interaction(), &env, FeedbackSlot::Entering)
            .map_err(|e| e.to_string())?;
        let set = fixed_points(&constant, 1e-10).map_err(|e| e.to_string())?;
        let rho = max_entropy_fixed_point(&set).map_err(|e| e.to_string())?;
        let half = DensityMatrix::maximally_mixed(rho.layout().clone());
        let distance = trace_distance(&rho, &half).unwrap();
        if distance > 1e-10 {
            return Err(format!("constant map fixed point off identity/2 by {distance}"));
        }
        let residual = (constant.apply(&rho).unwrap().matrix() - rho.matrix()).norm();
        if residual > 1e-10 {
            return Err(format!("constant map residual {residual}"));
        }

        // identity interaction, loop wire fed back: every state is fixed
        let identity_map = build_ctc_map(&gates::identity(2), &env.relabeled(&["q0"]).unwrap(), FeedbackSlot::Emerged)
            .map_err(|e| e.to_string())?;
        let set = fixed_points(&identity_map, 1e-10).map_err(|e| e.to_string())?;
        if set.directions.len() != 3 {
            return Err(format!(
                "identity map direction space has dimension {}",
                set.directions.len()
            ));
        }
        let rho = max_entropy_fixed_point(&set).map_err(|e| e.to_string())?;
        let entropy = rho.entropy_bits();
        if (entropy - 1.0).abs() > 1e-9 {
            return Err(format!("max-entropy point has entropy {entropy}"));
        }

        // no sampled fixed point may beat it
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for _ in 0..100 {
            let sample = random_density(rho.layout().clone(), &mut rng);
            if sample.entropy_bits() > entropy + 1e-9 {
                return Err(format!(
                    "sampled fixed point has entropy {} above the reported maximum",
                    sample.entropy_bits()
                ));
            }
        }
        Ok(format!("3 directions, entropy {entropy:.12}, residual {residual:.2e}"))
    });
}

#[test]
fn criterion_6_algebra_against_oracles() {
    criterion(6, "core algebra and the contraction examples match brute force", || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let state = random_state(qubits(&["a", "b", "c"]), &mut rng);
            let u = random_unitary(qubits(&["a", "b", "c"]), &mut rng);
            let norm = state.apply(&u).unwrap().norm();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(format!("unitary changed the norm to {norm}"));
            }

            let a = random_density(qubits(&["a"]), &mut rng);
            let b = random_density(qubits(&["b"]), &mut rng);
            let back = a.tensor(&b).unwrap().partial_trace(&["a"]).unwrap();
            if max_abs_diff(back.matrix(), a.matrix()) > 1e-12 {
                return Err("partial trace does not invert tensor".into());
            }

            let probe = random_state(qubits(&["a", "b"]), &mut rng);
            let total: f64 = probe.amplitudes().iter().map(|z| z.norm_sqr()).sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(format!("Born weights sum to {total}"));
            }
        }

        let id = gates::identity(2);
        let contracted = pctc_contract(&id, &["q1"]).unwrap();
        let oracle = contraction_oracle(id.matrix(), &[2, 2], &[1]);
        let two_i = gates::identity(1).matrix() * c(2.0);
        if max_abs_diff(contracted.matrix(), &oracle) > 1e-12
            || max_abs_diff(&oracle, &two_i) > 1e-12
        {
            return Err("identity contraction is not 2I".into());
        }

        let cnot = gates::cnot();
        let contracted = pctc_contract(&cnot, &["q0"]).unwrap();
        let oracle = contraction_oracle(cnot.matrix(), &[2, 2], &[0]);
        let i_plus_x = gates::identity(1).matrix() + gates::pauli_x().matrix();
        if max_abs_diff(contracted.matrix(), &oracle) > 1e-12
            || max_abs_diff(&oracle, &i_plus_x) > 1e-12
        {
            return Err("control-wire contraction of CNOT is not I + X".into());
        }
        Ok("20 random algebra draws plus both contraction examples".into())
    });
}

#[test]
fn criterion_7_reports_are_bit_stable() {
    criterion(7, "same seed gives byte-identical JSON reports", || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let message = Bitstring::random(64, &mut rng);
        let theorem = Bitstring::random(8, &mut rng);

        let s1 = serde_json::to_string(&run_signalling(&message, Model::Deutsch, 7).unwrap());
        let s2 = serde_json::to_string(&run_signalling(&message, Model::Deutsch, 7).unwrap());
        if s1.as_ref().unwrap() != s2.as_ref().unwrap() {
            return Err("signalling reports differ between runs".into());
        }

        let p1 = serde_json::to_string(&run_paradox(600, &theorem, 7).unwrap());
        let p2 = serde_json::to_string(&run_paradox(600, &theorem, 7).unwrap());
        if p1.as_ref().unwrap() != p2.as_ref().unwrap() {
            return Err("paradox reports differ between runs".into());
        }

        let c1 = serde_json::to_string(&ctclab::experiments::compare_models(7).unwrap());
        let c2 = serde_json::to_string(&ctclab::experiments::compare_models(7).unwrap());
        if c1.as_ref().unwrap() != c2.as_ref().unwrap() {
            return Err("comparison reports differ between runs".into());
        }
        Ok(format!(
            "signal {} bytes, paradox {} bytes, compare {} bytes",
            s1.unwrap().len(),
            p1.unwrap().len(),
            c1.unwrap().len()
        ))
    });
}
