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

//! Internal histories of the Turing head.
//!
//! Reading out all M memories jointly allocates one branch of the final
//! network state to the head: a z readout yields the record family C_j
//! (which z value S had at each recording step), an x readout the
//! incompatible family C_j′. Both families are enumerated here with
//! complex branch amplitudes and Born probabilities.
//!
//! The two families cannot be sharp simultaneously. An x history carries
//! no z record at all — its branch keeps S coherent, distinguished only by
//! the net rotation angle it has accumulated — and conversely. The
//! [`rewrite_x_history_in_z`] decomposition makes the relation exact: each
//! x history is a coherent superposition of all 2^M z histories with
//! basis-change coefficients `∏_k ⟨ξ_k,x | m_k,z⟩ = ±2^(−M/2)`.

use crate::error::{Error, Result};
use crate::protocol::{run_protocol, ProtocolConfig, MAX_ENUMERATED_MEMORIES};
use crate::statevector::{Amplitude, PauliAxis, Spin};

/// Which single-spin observable the memories are read in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadoutBasis {
    Z,
    X,
}

/// One joint-readout branch: the M memory values, the branch amplitude
/// and its Born probability.
#[derive(Debug, Clone)]
pub struct History {
    pub basis: ReadoutBasis,
    /// Memory readouts, memory 1 first.
    pub readouts: Vec<Spin>,
    pub amplitude: Amplitude,
    pub probability: f64,
}

/// All 2^M branches of one readout family, ordered by readout bit pattern
/// (memory 1 least significant, −1 before +1).
#[derive(Debug, Clone)]
pub struct HistoryTable {
    pub config: ProtocolConfig,
    pub basis: ReadoutBasis,
    pub entries: Vec<History>,
}

impl HistoryTable {
    pub fn total_probability(&self) -> f64 {
        self.entries.iter().map(|h| h.probability).sum()
    }

    /// Looks up the entry with the given readouts.
    pub fn entry(&self, readouts: &[Spin]) -> Option<&History> {
        self.entries
            .iter()
            .find(|h| h.readouts.as_slice() == readouts)
    }
}

fn check_enumerable(config: &ProtocolConfig) -> Result<()> {
    if config.num_memories() > MAX_ENUMERATED_MEMORIES {
        return Err(Error::TooManyMemories {
            memories: config.num_memories(),
            max: MAX_ENUMERATED_MEMORIES,
        });
    }
    Ok(())
}

fn readouts_from_bits(bits: usize, m: usize) -> Vec<Spin> {
    (0..m).map(|k| Spin::from_bit(bits >> k)).collect()
}

/// Enumerates the z-record family C_j.
///
/// The branch amplitude is the product of rotation matrix elements along
/// the head trajectory, `A(z) = ∏_k ⟨z_k| rx(α) |z_{k−1}⟩` with z₀ = −1;
/// the recorded memory value is the flip of the head, `m_k = −z_k`. This
/// is an independent route to the same branches a joint z measurement of
/// the final state would produce.
pub fn enumerate_z_histories(config: &ProtocolConfig) -> Result<HistoryTable> {
    check_enumerable(config)?;
    let m = config.num_memories();
    let cos = Amplitude::new((config.alpha() / 2.0).cos(), 0.0);
    let misin = Amplitude::new(0.0, -(config.alpha() / 2.0).sin());

    let mut entries = Vec::with_capacity(1 << m);
    for bits in 0..(1usize << m) {
        let readouts = readouts_from_bits(bits, m);
        let mut amp = Amplitude::new(1.0, 0.0);
        let mut prev = Spin::Minus;
        for &record in &readouts {
            let z = record.flipped();
            amp *= if z == prev { cos } else { misin };
            prev = z;
        }
        entries.push(History {
            basis: ReadoutBasis::Z,
            readouts,
            amplitude: amp,
            probability: amp.norm_sqr(),
        });
    }
    Ok(HistoryTable {
        config: *config,
        basis: ReadoutBasis::Z,
        entries,
    })
}

/// Enumerates the x-readout family C_j′.
///
/// Each branch probability is the Born weight of the joint x measurement
/// of all memories on the final network state, accumulated by sequential
/// projection. The branch amplitude carries the sign picked up while
/// commuting the −1 records out of the rotation sequence; its square is
/// the probability.
pub fn enumerate_x_histories(config: &ProtocolConfig) -> Result<HistoryTable> {
    check_enumerable(config)?;
    let m = config.num_memories();
    let run = run_protocol(config)?;

    let mut entries = Vec::with_capacity(1 << m);
    for bits in 0..(1usize << m) {
        let readouts = readouts_from_bits(bits, m);
        let mut state = run.final_state().clone();
        let mut probability = 1.0;
        let mut possible = true;
        for (k, &xi) in readouts.iter().enumerate() {
            match state.project(k + 1, PauliAxis::X, xi) {
                Ok((post, p)) => {
                    state = post;
                    probability *= p;
                }
                Err(Error::ImpossibleOutcome { .. }) => {
                    possible = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let amplitude = if possible {
            let (sign, _) = x_branch_character(config.alpha(), &readouts);
            Amplitude::new(sign * probability.sqrt(), 0.0)
        } else {
            probability = 0.0;
            Amplitude::new(0.0, 0.0)
        };
        entries.push(History {
            basis: ReadoutBasis::X,
            readouts,
            amplitude,
            probability,
        });
    }
    Ok(HistoryTable {
        config: *config,
        basis: ReadoutBasis::X,
        entries,
    })
}

/// The sign and net rotation angle of an x branch.
///
/// Inside an x branch the head never collapses; it only accumulates
/// rotations. A −1 record conjugates every rotation executed before it,
/// flipping that rotation's sense, and contributes one global minus sign.
/// The branch state of the head is therefore
/// `sign · rx(angle)|−1⟩` with the values returned here.
pub fn x_branch_character(alpha: f64, x_readouts: &[Spin]) -> (f64, f64) {
    let mut minus_above = 0usize;
    let mut angle_units = 0i64;
    for &xi in x_readouts.iter().rev() {
        if xi == Spin::Minus {
            minus_above += 1;
        }
        angle_units += if minus_above.is_multiple_of(2) { 1 } else { -1 };
    }
    let sign = if minus_above.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    (sign, alpha * angle_units as f64)
}

/// Rewrites one x history as a coherent superposition of all 2^M z
/// histories.
///
/// Returns, for every z readout pattern (ordered as in the tables), the
/// basis-change coefficient `∏_k ⟨ξ_k,x | m_k,z⟩`: a factor 1/√2 per
/// memory, with a minus sign wherever an x readout −1 meets a memory
/// record +1. Multiplying each coefficient by the corresponding z branch
/// and summing reproduces the x-projected branch of the final state; the
/// x readouts erase the z record coherently rather than selecting from it.
pub fn rewrite_x_history_in_z(
    config: &ProtocolConfig,
    x_readouts: &[Spin],
) -> Result<Vec<(Vec<Spin>, Amplitude)>> {
    check_enumerable(config)?;
    let m = config.num_memories();
    if x_readouts.len() != m {
        return Err(Error::SpinCountMismatch {
            expected: m,
            got: x_readouts.len(),
        });
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(1 << m);
    for bits in 0..(1usize << m) {
        let z_readouts = readouts_from_bits(bits, m);
        let mut coeff = 1.0;
        for (record, xi) in z_readouts.iter().zip(x_readouts) {
            coeff *= match record {
                Spin::Minus => inv_sqrt2,
                Spin::Plus => xi.value() as f64 * inv_sqrt2,
            };
        }
        out.push((z_readouts, Amplitude::new(coeff, 0.0)));
    }
    Ok(out)
}
