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

//! Simulator and experiment harness for temporal Bell tests on a small
//! quantum spin network with a Turing-machine architecture.
//!
//! A reference spin S is alternately rotated and recorded into M memory
//! spins; memory–memory correlations then play the role of two-time
//! correlation functions of S. The crate evaluates the resulting temporal
//! Bell combination in two modes:
//!
//! - **direct**: the recorded correlations give `cos α` per link and
//!   `cos³α` end to end — the combination never exceeds the classical
//!   bound 2;
//! - **erased**: measuring the two intermediate memories in the x basis
//!   and post-selecting restores the coherent `cos 3α`, and the
//!   combination reaches 2√2 at α = π/4.
//!
//! Modules: [`statevector`] holds the dense 2^(M+1) amplitude kernel,
//! [`protocol`] drives the recording dynamics and its exhaustive
//! trajectory oracle, [`histories`] enumerates the incompatible z / x
//! readout families, [`erasure`] performs the post-selection and Bell
//! bookkeeping, and [`cli`] exposes everything as a command-line tool.

pub mod cli;
pub mod erasure;
pub mod error;
pub mod histories;
pub mod protocol;
pub mod statevector;

pub use erasure::{
    bell_value_direct, bell_value_erased, classical_bound_exhaustive, delayed_choice_erase,
    post_selected_state, BellMode, BellReport, ConditionalResult, OutcomePair,
};
pub use error::{Error, Result};
pub use histories::{
    enumerate_x_histories, enumerate_z_histories, rewrite_x_history_in_z, History, HistoryTable,
    ReadoutBasis,
};
pub use protocol::{
    run_protocol, trajectory_oracle, ProtocolConfig, ProtocolRun, Snapshot, TwoTimeCorrelation,
};
pub use statevector::{Amplitude, PauliAxis, PauliString, Spin, StateVector};
