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

//! Browser bindings for the interactive demo page.
//!
//! Each function assembles the same request the command-line tool would
//! run and hands back the JSON report as a string, so the page consumes
//! exactly the documented output schema.

use wasm_bindgen::prelude::*;

use temporal_bell::cli::{
    execute_to_string, AlphaSpec, Mode, OutcomeSelection, OutputFormat, RunRequest,
};
use temporal_bell::ReadoutBasis;

fn render(request: RunRequest) -> Result<String, String> {
    execute_to_string(&request).map_err(|e| e.to_string())
}

fn bell_sweep_impl(start: f64, stop: f64, steps: usize) -> Result<String, String> {
    render(RunRequest {
        mode: Mode::Bell,
        alpha: AlphaSpec::Sweep { start, stop, steps },
        ..RunRequest::default()
    })
}

fn erasure_table_impl(alpha: f64) -> Result<String, String> {
    render(RunRequest {
        mode: Mode::Erasure,
        alpha: AlphaSpec::Single(alpha),
        outcomes: OutcomeSelection::All,
        ..RunRequest::default()
    })
}

fn history_table_impl(alpha: f64, basis: &str) -> Result<String, String> {
    let basis = match basis {
        "z" | "Z" => ReadoutBasis::Z,
        "x" | "X" => ReadoutBasis::X,
        other => return Err(format!("unknown basis '{other}'")),
    };
    render(RunRequest {
        mode: Mode::Histories,
        alpha: AlphaSpec::Single(alpha),
        basis,
        format: OutputFormat::Json,
        ..RunRequest::default()
    })
}

/// Bell report rows over an inclusive α sweep: direct and erased
/// combination values, the four correlations, and the violation flag.
#[wasm_bindgen]
pub fn bell_sweep(start: f64, stop: f64, steps: usize) -> Result<String, JsError> {
    bell_sweep_impl(start, stop, steps).map_err(|e| JsError::new(&e))
}

/// The four post-selection branches at one α: probability, conditional
/// k14 and the cos 3α reference.
#[wasm_bindgen]
pub fn erasure_table(alpha: f64) -> Result<String, JsError> {
    erasure_table_impl(alpha).map_err(|e| JsError::new(&e))
}

/// The 16 joint-readout histories at one α in the z or x basis.
#[wasm_bindgen]
pub fn history_table(alpha: f64, basis: &str) -> Result<String, JsError> {
    history_table_impl(alpha, basis).map_err(|e| JsError::new(&e))
}
