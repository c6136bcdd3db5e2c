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

use crate::statevector::{PauliAxis, Spin};

/// Errors raised by the simulation layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("qubit index {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("expected {expected} spin values, got {got}")]
    SpinCountMismatch { expected: usize, got: usize },

    #[error("control and target coincide (qubit {qubit})")]
    ControlEqualsTarget { qubit: usize },

    #[error("rotation angle must be finite, got {alpha}")]
    NonFiniteAngle { alpha: f64 },

    #[error("{axis:?}-axis measurement is not supported; only Z and X readouts exist")]
    UnsupportedAxis { axis: PauliAxis },

    #[error("outcome {outcome} on qubit {qubit} is impossible (probability {probability:.3e})")]
    ImpossibleOutcome {
        qubit: usize,
        outcome: Spin,
        probability: f64,
    },

    #[error("at least one memory spin is required")]
    NoMemories,

    #[error("memory pair ({mu1}, {mu2}) invalid: need 1 <= mu1 < mu2 <= {memories}")]
    InvalidMemoryPair {
        mu1: usize,
        mu2: usize,
        memories: usize,
    },

    #[error("step {step} is not a recording time; recording happens at even steps 2..={max}")]
    InvalidTimeStep { step: usize, max: usize },

    #[error("enumeration over {memories} memories exceeds the supported maximum of {max}")]
    TooManyMemories { memories: usize, max: usize },

    #[error("erasure needs at least 4 memories, the run has {memories}")]
    TooFewMemories { memories: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
