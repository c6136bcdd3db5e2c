// Copyright 2026 The temporal-bell Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The quantum-Turing recording protocol.
//!
//! A reference spin S (qubit 0, the Turing head) is driven through 2M steps:
//! every odd step rotates S by `rx(α)`, every even step 2μ records S's
//! z-state non-invasively into the fresh memory spin μ (qubit μ) with the
//! zero-controlled NOT. Because each memory starts in |−1⟩, the record is
//! the logical negation of S — measuring memory μ in z reveals what S was
//! at step 2μ, without ever projecting S itself.
//!
//! Memory–memory z correlations therefore double as two-time correlation
//! functions of S: `C(t₁=2μ₁, t₂=2μ₂) = ⟨σ_z^(μ₁) σ_z^(μ₂)⟩`. The recorded
//! chain gives `⟨σ_z^(μ) σ_z^(μ+1)⟩ = cos α` and
//! `⟨σ_z^(1) σ_z^(4)⟩ = cos³α`, the product of the three links — not the
//! `cos 3α` an undisturbed rotation would show. The delayed-choice erasure
//! in [`crate::erasure`] recovers the latter.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::statevector::{PauliString, Spin, StateVector};

/// Largest memory count accepted by the 2^M enumerations.
pub const MAX_ENUMERATED_MEMORIES: usize = 12;

/// Parameters of one protocol run: the per-step rotation angle and the
/// number of memory spins M (the register holds M+1 qubits, S first).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolConfig {
    alpha: f64,
    num_memories: usize,
}

impl ProtocolConfig {
    pub fn new(alpha: f64, num_memories: usize) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFiniteAngle { alpha });
        }
        if num_memories == 0 {
            return Err(Error::NoMemories);
        }
        Ok(ProtocolConfig {
            alpha,
            num_memories,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn num_memories(&self) -> usize {
        self.num_memories
    }

    pub fn num_qubits(&self) -> usize {
        self.num_memories + 1
    }

    pub fn total_steps(&self) -> usize {
        2 * self.num_memories
    }
}

impl Default for ProtocolConfig {
    /// Four memories driven at α = π/4, the headline working point.
    fn default() -> Self {
        ProtocolConfig {
            alpha: FRAC_PI_4,
            num_memories: 4,
        }
    }
}

/// The network state after a given step; step 0 is the initial state.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub step: usize,
    pub state: StateVector,
}

/// A completed protocol run: all 2M+1 snapshots plus the final state.
#[derive(Debug, Clone)]
pub struct ProtocolRun {
    config: ProtocolConfig,
    snapshots: Vec<Snapshot>,
    final_state: StateVector,
}

/// Correlation of S's z observable at two recording times, read from the
/// memories written at those times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTimeCorrelation {
    pub t1: usize,
    pub t2: usize,
    pub value: f64,
}

/// Drives the full 2M-step dynamics from the all-minus initial state and
/// captures a snapshot after every step.
pub fn run_protocol(config: &ProtocolConfig) -> Result<ProtocolRun> {
    let mut state = StateVector::ground(config.num_qubits());
    let mut snapshots = Vec::with_capacity(config.total_steps() + 1);
    snapshots.push(Snapshot {
        step: 0,
        state: state.clone(),
    });
    for mu in 1..=config.num_memories {
        // odd step 2μ−1: rotate the head
        state = state.rx(0, config.alpha)?;
        snapshots.push(Snapshot {
            step: 2 * mu - 1,
            state: state.clone(),
        });
        // even step 2μ: record into memory μ
        state = state.cnot0(0, mu)?;
        snapshots.push(Snapshot {
            step: 2 * mu,
            state: state.clone(),
        });
    }
    Ok(ProtocolRun {
        config: *config,
        snapshots,
        final_state: state,
    })
}

impl ProtocolRun {
    pub fn config(&self) -> &ProtocolConfig {
        &self.config
    }

    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snapshots
    }

    /// The state right after `step` (step 0 = initial state).
    pub fn state_after(&self, step: usize) -> Option<&StateVector> {
        self.snapshots.get(step).map(|s| &s.state)
    }

    pub fn final_state(&self) -> &StateVector {
        &self.final_state
    }

    /// `⟨σ_z^(μ₁) ⊗ σ_z^(μ₂)⟩` on the final state, 1 ≤ μ₁ < μ₂ ≤ M.
    pub fn memory_correlation(&self, mu1: usize, mu2: usize) -> Result<f64> {
        let m = self.config.num_memories;
        if mu1 < 1 || mu2 <= mu1 || mu2 > m {
            return Err(Error::InvalidMemoryPair {
                mu1,
                mu2,
                memories: m,
            });
        }
        self.final_state.expectation(&PauliString::zz(mu1, mu2))
    }

    /// The same correlation addressed by recording times: t must be even,
    /// 2 ≤ t₁ < t₂ ≤ 2M. Odd steps carry no record of S and are rejected.
    pub fn two_time_correlation(&self, t1: usize, t2: usize) -> Result<TwoTimeCorrelation> {
        let max = self.config.total_steps();
        for t in [t1, t2] {
            if t % 2 != 0 || t < 2 || t > max {
                return Err(Error::InvalidTimeStep { step: t, max });
            }
        }
        let value = self.memory_correlation(t1 / 2, t2 / 2)?;
        Ok(TwoTimeCorrelation { t1, t2, value })
    }

    /// All even-time pairs in ascending (t1, t2) order.
    pub fn all_two_time_correlations(&self) -> Result<Vec<TwoTimeCorrelation>> {
        let m = self.config.num_memories;
        let mut out = Vec::new();
        for mu1 in 1..m {
            for mu2 in (mu1 + 1)..=m {
                out.push(self.two_time_correlation(2 * mu1, 2 * mu2)?);
            }
        }
        Ok(out)
    }
}

/// Independent check of the recorded correlations by exhaustion.
///
/// Replaces every recording with a projective z measurement of S: after
/// each rotation S collapses to ±1 with the Born weights cos²(α/2) /
/// sin²(α/2) relative to its previous value, tracing out an explicit
/// classical trajectory. Each of the 2^M trajectories is enumerated with
/// its exact probability, the anticorrelated record (memory value = −S
/// value) is applied, and the classical two-time correlations
/// Σ p(traj)·m(t₁)·m(t₂) are accumulated.
///
/// The returned map is keyed by even time pairs (t₁, t₂) and must agree
/// with [`ProtocolRun::memory_correlation`]: invasive readout and unitary
/// recording leave identical pairwise statistics.
pub fn trajectory_oracle(config: &ProtocolConfig) -> Result<BTreeMap<(usize, usize), f64>> {
    let m = config.num_memories;
    if m > MAX_ENUMERATED_MEMORIES {
        return Err(Error::TooManyMemories {
            memories: m,
            max: MAX_ENUMERATED_MEMORIES,
        });
    }
    let stay = (config.alpha / 2.0).cos().powi(2);
    let flip = (config.alpha / 2.0).sin().powi(2);

    let mut sums: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for bits in 0..(1usize << m) {
        // trajectory s_1..s_M of the head, bit k−1 holds s_k
        let mut p = 1.0;
        let mut prev = Spin::Minus;
        let mut records = Vec::with_capacity(m);
        for k in 0..m {
            let s = Spin::from_bit(bits >> k);
            p *= if s == prev { stay } else { flip };
            records.push(s.flipped()); // memory holds ¬S
            prev = s;
        }
        for mu1 in 1..m {
            for mu2 in (mu1 + 1)..=m {
                let product = (records[mu1 - 1].value() * records[mu2 - 1].value()) as f64;
                *sums.entry((2 * mu1, 2 * mu2)).or_insert(0.0) += p * product;
            }
        }
    }
    Ok(sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::Amplitude;

    const TOL: f64 = 1e-10;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    fn run(alpha: f64) -> ProtocolRun {
        run_protocol(&ProtocolConfig::new(alpha, 4).unwrap()).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            ProtocolConfig::new(f64::NAN, 4),
            Err(Error::NonFiniteAngle { .. })
        ));
        assert_eq!(ProtocolConfig::new(0.1, 0), Err(Error::NoMemories));
    }

    #[test]
    fn zero_angle_run_flips_every_memory() {
        // S stays at −1, so every recording flips its memory to +1
        let r = run(0.0);
        let expected = StateVector::basis_state(
            5,
            &[Spin::Minus, Spin::Plus, Spin::Plus, Spin::Plus, Spin::Plus],
        )
        .unwrap();
        for (a, b) in r
            .final_state()
            .amplitudes()
            .iter()
            .zip(expected.amplitudes())
        {
            assert!((a - b).norm() < TOL);
        }
    }

    #[test]
    fn snapshot_count_and_bookkeeping() {
        let r = run(0.7);
        assert_eq!(r.snapshots().len(), 9);
        assert_eq!(r.snapshots()[0].step, 0);
        assert_eq!(r.snapshots()[8].step, 8);
        let last = &r.snapshots()[8].state;
        for (a, b) in last.amplitudes().iter().zip(r.final_state().amplitudes()) {
            assert_eq!(a, b);
        }
        // snapshot 0 is the all-minus state
        assert!((r.state_after(0).unwrap().amplitude(0) - Amplitude::new(1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn every_snapshot_is_normalized() {
        for alpha in [0.0, 0.4, 1.1, 2.8, 5.5] {
            let r = run(alpha);
            for snap in r.snapshots() {
                assert_close(snap.state.norm_sqr(), 1.0, 1e-12);
            }
        }
    }

    #[test]
    fn fresh_records_are_strictly_anticorrelated() {
        for alpha in [0.0, 0.3, 0.7, 1.2, 2.0, 4.9] {
            let r = run(alpha);
            // at its creation step every record anticorrelates with S
            for mu in 1..=4 {
                let state = r.state_after(2 * mu).unwrap();
                let corr = state.expectation(&PauliString::zz(0, mu)).unwrap();
                assert_close(corr, -1.0, TOL);
            }
        }
    }

    #[test]
    fn neighbor_correlations_equal_cos_alpha() {
        for alpha in [0.3, 0.7, 1.2] {
            let r = run(alpha);
            for mu in 1..4 {
                assert_close(r.memory_correlation(mu, mu + 1).unwrap(), alpha.cos(), TOL);
            }
        }
    }

    #[test]
    fn end_to_end_correlation_is_cos_cubed() {
        for alpha in [0.3, 0.7, 1.2, std::f64::consts::FRAC_PI_2] {
            let r = run(alpha);
            assert_close(
                r.memory_correlation(1, 4).unwrap(),
                alpha.cos().powi(3),
                TOL,
            );
        }
        // α = 0: all records equal, correlation 1
        assert_close(run(0.0).memory_correlation(1, 4).unwrap(), 1.0, TOL);
    }

    #[test]
    fn chain_factorization_holds() {
        for alpha in [0.2, 0.9, 1.7, 3.1] {
            let r = run(alpha);
            let k12 = r.memory_correlation(1, 2).unwrap();
            let k23 = r.memory_correlation(2, 3).unwrap();
            let k34 = r.memory_correlation(3, 4).unwrap();
            let k14 = r.memory_correlation(1, 4).unwrap();
            assert_close(k14, k12 * k23 * k34, TOL);
        }
    }

    #[test]
    fn memory_pair_validation() {
        let r = run(0.5);
        for (mu1, mu2) in [(0, 2), (2, 2), (3, 1), (1, 5)] {
            assert!(matches!(
                r.memory_correlation(mu1, mu2),
                Err(Error::InvalidMemoryPair { .. })
            ));
        }
    }

    #[test]
    fn two_time_correlation_is_definitional() {
        let r = run(0.9);
        let c = r.two_time_correlation(4, 6).unwrap();
        assert_eq!(c.value, r.memory_correlation(2, 3).unwrap());
        assert_close(
            r.two_time_correlation(2, 4).unwrap().value,
            0.9f64.cos(),
            TOL,
        );
        assert_close(
            r.two_time_correlation(2, 8).unwrap().value,
            0.9f64.cos().powi(3),
            TOL,
        );
    }

    #[test]
    fn odd_steps_are_not_recording_times() {
        let r = run(0.9);
        for (t1, t2) in [(3, 6), (2, 7), (0, 4), (2, 10)] {
            assert!(matches!(
                r.two_time_correlation(t1, t2),
                Err(Error::InvalidTimeStep { .. })
            ));
        }
    }

    #[test]
    fn oracle_matches_deterministic_limit() {
        let oracle = trajectory_oracle(&ProtocolConfig::new(0.0, 4).unwrap()).unwrap();
        assert_eq!(oracle.len(), 6);
        for value in oracle.values() {
            assert_close(*value, 1.0, TOL);
        }
    }

    #[test]
    fn oracle_agrees_with_recorded_correlations() {
        let config = ProtocolConfig::new(0.7, 4).unwrap();
        let oracle = trajectory_oracle(&config).unwrap();
        assert_close(oracle[&(2, 4)], 0.7f64.cos(), TOL);
        assert_close(oracle[&(2, 8)], 0.7f64.cos().powi(3), TOL);

        let r = run_protocol(&config).unwrap();
        for (&(t1, t2), &value) in &oracle {
            assert_close(value, r.two_time_correlation(t1, t2).unwrap().value, TOL);
        }
    }

    #[test]
    fn oracle_agreement_extends_to_other_sizes() {
        for m in 1..=6 {
            let config = ProtocolConfig::new(1.05, m).unwrap();
            let oracle = trajectory_oracle(&config).unwrap();
            let r = run_protocol(&config).unwrap();
            assert_eq!(oracle.len(), m * (m.max(1) - 1) / 2);
            for (&(t1, t2), &value) in &oracle {
                assert_close(value, r.two_time_correlation(t1, t2).unwrap().value, TOL);
            }
        }
    }

    #[test]
    fn oracle_rejects_oversized_enumerations() {
        let config = ProtocolConfig::new(0.1, 13).unwrap();
        assert!(matches!(
            trajectory_oracle(&config),
            Err(Error::TooManyMemories { .. })
        ));
    }

    proptest::proptest! {
        #[test]
        fn oracle_matches_recording_for_random_angles(
            alpha in -6.3f64..6.3,
            m in 1usize..=6,
        ) {
            let config = ProtocolConfig::new(alpha, m).unwrap();
            let oracle = trajectory_oracle(&config).unwrap();
            let run = run_protocol(&config).unwrap();
            for (&(t1, t2), &value) in &oracle {
                let recorded = run.two_time_correlation(t1, t2).unwrap().value;
                proptest::prop_assert!(
                    (value - recorded).abs() < 1e-10,
                    "({t1},{t2}): oracle {value} vs recorded {recorded}"
                );
            }
        }

        #[test]
        fn chain_structure_holds_for_random_angles(alpha in -6.3f64..6.3) {
            let r = run(alpha);
            let k12 = r.memory_correlation(1, 2).unwrap();
            let k23 = r.memory_correlation(2, 3).unwrap();
            let k34 = r.memory_correlation(3, 4).unwrap();
            let k14 = r.memory_correlation(1, 4).unwrap();
            proptest::prop_assert!((k12 - alpha.cos()).abs() < 1e-10);
            proptest::prop_assert!((k23 - alpha.cos()).abs() < 1e-10);
            proptest::prop_assert!((k34 - alpha.cos()).abs() < 1e-10);
            proptest::prop_assert!((k14 - k12 * k23 * k34).abs() < 1e-10);
        }
    }
}
