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

//! The temporal Bell inequality and its delayed-choice violation.
//!
//! Any assignment of definite ±1 values to the head's history obeys
//! `|C(2,4) + C(4,6) + C(6,8) − C(2,8)| ≤ 2` — verified here by exhausting
//! all 16 assignments. The recorded protocol respects the bound: its
//! combination is `|3cos α − cos³α| ≤ 2` for every α.
//!
//! Measuring memories 2 and 3 in the x basis *after* the run and
//! post-selecting on the outcome pair destroys the intermediate z records
//! coherently (temporal quantum erasure). On the surviving state the
//! end-to-end correlation becomes the undisturbed-rotation value
//! `cos 3α` for the (+1,+1) selection, and `|3cos α − cos 3α|` reaches
//! 2√2 at α = π/4.
//!
//! The remaining outcome pairs are computed and reported as-is: a −1
//! record re-marks part of the path, and the simulator yields `cos α` for
//! those branches rather than `cos 3α`. The four branches still satisfy
//! total probability: each occurs with probability 1/4 and their weighted
//! k14 average is exactly the unerased cos³α.

use crate::error::{Error, Result};
use crate::protocol::{run_protocol, ProtocolConfig, ProtocolRun};
use crate::statevector::{PauliAxis, PauliString, Spin, StateVector};

/// Guard band on the classical bound; a combination is only flagged
/// violated when it clears the bound by more than this.
pub const VIOLATION_GUARD: f64 = 1e-10;

/// The x readouts on memories 2 and 3 selected by the eraser.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutcomePair {
    pub eps2: Spin,
    pub eps3: Spin,
}

impl OutcomePair {
    pub fn new(eps2: Spin, eps3: Spin) -> Self {
        OutcomePair { eps2, eps3 }
    }

    /// Both readouts +1, the branch where erasure restores `cos 3α`.
    pub fn plus_plus() -> Self {
        OutcomePair::new(Spin::Plus, Spin::Plus)
    }

    /// All four outcome pairs in (eps2, eps3) bit order.
    pub fn all() -> [OutcomePair; 4] {
        [
            OutcomePair::new(Spin::Minus, Spin::Minus),
            OutcomePair::new(Spin::Plus, Spin::Minus),
            OutcomePair::new(Spin::Minus, Spin::Plus),
            OutcomePair::new(Spin::Plus, Spin::Plus),
        ]
    }
}

impl std::fmt::Display for OutcomePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = |s: Spin| if s == Spin::Plus { '+' } else { '-' };
        write!(f, "{}{}", sign(self.eps2), sign(self.eps3))
    }
}

/// One post-selected branch: its selection probability, the conditional
/// end-to-end correlation, and the surviving network state.
#[derive(Debug, Clone)]
pub struct ConditionalResult {
    pub outcomes: OutcomePair,
    /// Joint Born probability of the two x readouts.
    pub probability: f64,
    /// `⟨σ_z^(1) σ_z^(4)⟩` on the post-selected state.
    pub k14: f64,
    pub post_state: StateVector,
}

/// Whether a report came from direct recording or from erased,
/// post-selected recording.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellMode {
    Direct,
    Erased(OutcomePair),
}

/// The four correlations entering the temporal Bell combination, the
/// combination value, and the exhaustively verified classical bound.
#[derive(Debug, Clone, Copy)]
pub struct BellReport {
    pub mode: BellMode,
    pub k12: f64,
    pub k23: f64,
    pub k34: f64,
    pub k14: f64,
    /// `|k12 + k23 + k34 − k14|`
    pub bell_value: f64,
    pub bound: f64,
    pub violated: bool,
}

impl BellReport {
    fn assemble(mode: BellMode, k12: f64, k23: f64, k34: f64, k14: f64) -> BellReport {
        let bell_value = (k12 + k23 + k34 - k14).abs();
        let bound = classical_bound_exhaustive();
        BellReport {
            mode,
            k12,
            k23,
            k34,
            k14,
            bell_value,
            bound,
            violated: bell_value > bound + VIOLATION_GUARD,
        }
    }
}

fn check_erasable(run: &ProtocolRun) -> Result<()> {
    let m = run.config().num_memories();
    if m < 4 {
        return Err(Error::TooFewMemories { memories: m });
    }
    Ok(())
}

/// Measures σ_x on memories 2 and 3 of a finished run and keeps the given
/// outcome pair. The probability is the product of the two sequential
/// Born probabilities; k14 is evaluated on the renormalized survivor.
pub fn delayed_choice_erase(run: &ProtocolRun, outcomes: OutcomePair) -> Result<ConditionalResult> {
    check_erasable(run)?;
    let (state, p2) = run.final_state().project(2, PauliAxis::X, outcomes.eps2)?;
    let (state, p3) = state.project(3, PauliAxis::X, outcomes.eps3)?;
    let k14 = state.expectation(&PauliString::zz(1, 4))?;
    Ok(ConditionalResult {
        outcomes,
        probability: p2 * p3,
        k14,
        post_state: state,
    })
}

/// The renormalized network state surviving the post-selection.
pub fn post_selected_state(run: &ProtocolRun, outcomes: OutcomePair) -> Result<StateVector> {
    Ok(delayed_choice_erase(run, outcomes)?.post_state)
}

/// All four erasure branches of one run, in [`OutcomePair::all`] order.
pub fn erase_all_outcomes(run: &ProtocolRun) -> Result<Vec<ConditionalResult>> {
    OutcomePair::all()
        .into_iter()
        .map(|outcomes| delayed_choice_erase(run, outcomes))
        .collect()
}

/// The Bell combination of the recorded correlations, k14 = cos³α. The
/// correlations are measured on protocol runs, never substituted from the
/// closed forms. Cannot be violated for any α.
pub fn bell_value_direct(alpha: f64) -> Result<BellReport> {
    bell_value_direct_with(&ProtocolConfig::new(alpha, 4)?)
}

/// Direct-mode report for an arbitrary register size (M ≥ 4); the Bell
/// combination always uses memories 1..4.
pub fn bell_value_direct_with(config: &ProtocolConfig) -> Result<BellReport> {
    let run = run_protocol(config)?;
    check_erasable(&run)?;
    let k12 = run.memory_correlation(1, 2)?;
    let k23 = run.memory_correlation(2, 3)?;
    let k34 = run.memory_correlation(3, 4)?;
    let k14 = run.memory_correlation(1, 4)?;
    Ok(BellReport::assemble(BellMode::Direct, k12, k23, k34, k14))
}

/// The Bell combination with the end-to-end correlation taken from the
/// (+1,+1) erasure branch, k14 = cos 3α. The three short-range
/// correlations are incompatible with the erased one and come from
/// separate direct runs. Reaches 2√2 at α = π/4.
pub fn bell_value_erased(alpha: f64) -> Result<BellReport> {
    bell_value_erased_with(&ProtocolConfig::new(alpha, 4)?)
}

/// Erased-mode report for an arbitrary register size (M ≥ 4).
pub fn bell_value_erased_with(config: &ProtocolConfig) -> Result<BellReport> {
    // one independent run per short-range correlation: the erased k14 is
    // not jointly measurable with them, so none of the four numbers share
    // an experiment
    let k12 = run_protocol(config)?.memory_correlation(1, 2)?;
    let k23 = run_protocol(config)?.memory_correlation(2, 3)?;
    let k34 = run_protocol(config)?.memory_correlation(3, 4)?;
    let erased = delayed_choice_erase(&run_protocol(config)?, OutcomePair::plus_plus())?;
    Ok(BellReport::assemble(
        BellMode::Erased(OutcomePair::plus_plus()),
        k12,
        k23,
        k34,
        erased.k14,
    ))
}

/// The classical side of the inequality, by exhaustion: the maximum of
/// `|s₁s₂ + s₂s₃ + s₃s₄ − s₁s₄|` over all 16 definite assignments
/// s ∈ {−1,+1}⁴. Returns exactly 2.
pub fn classical_bound_exhaustive() -> f64 {
    let mut max = 0.0f64;
    for bits in 0..16u32 {
        let s: Vec<f64> = (0..4)
            .map(|k| ((bits >> k) & 1) as f64 * 2.0 - 1.0)
            .collect();
        let value = (s[0] * s[1] + s[1] * s[2] + s[2] * s[3] - s[0] * s[3]).abs();
        max = max.max(value);
    }
    max
}
