//! Browser bindings: trajectories, error bands and step compilation.
//!
//! Every entry point returns a JSON string so the page needs no generated
//! type glue beyond `JSON.parse`.

use qboson::circuit::{compile_step, export_text, Ordering};
use qboson::dynamics::{evolve, sample_error_band, Backend, EvolutionConfig, InitialState};
use qboson::yukawa::{hamiltonian_general, YukawaParams};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn params(g: f64) -> YukawaParams {
    YukawaParams {
        g,
        ..Default::default()
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Series {
    time: Vec<f64>,
    rho_p: Vec<f64>,
    rho_n: Vec<f64>,
    rho_b: Vec<f64>,
}

pub fn trajectory_json(g: f64, initial: &str, n_t: usize, delta_t: f64, backend: &str) -> Result<String, String> {
    let config = EvolutionConfig {
        n_t,
        delta_t,
        initial_state: initial.parse::<InitialState>().map_err(|e| e.to_string())?,
        backend: backend.parse::<Backend>().map_err(|e| e.to_string())?,
        ..Default::default()
    };
    let traj = evolve(&config, &params(g)).map_err(|e| e.to_string())?;
    let r = &traj.records;
    to_json(&Series {
        time: r.iter().map(|x| x.time).collect(),
        rho_p: r.iter().map(|x| x.rho_p).collect(),
        rho_n: r.iter().map(|x| x.rho_n).collect(),
        rho_b: r.iter().map(|x| x.rho_b).collect(),
    })
}

#[derive(Serialize)]
struct Band {
    time: Vec<f64>,
    mean: Vec<f64>,
    std: Vec<f64>,
    mean_std: f64,
}

pub fn band_json(g: f64, initial: &str, n_t: usize, samples: usize, seed: u64) -> Result<String, String> {
    let config = EvolutionConfig {
        n_t,
        samples,
        seed,
        initial_state: initial.parse::<InitialState>().map_err(|e| e.to_string())?,
        ..Default::default()
    };
    let (_, band) = sample_error_band(&config, &params(g)).map_err(|e| e.to_string())?;
    to_json(&Band {
        time: band.records.iter().map(|r| r.time).collect(),
        mean: band.records.iter().map(|r| r.rho_p.mean).collect(),
        std: band.records.iter().map(|r| r.rho_p.std).collect(),
        mean_std: band.mean_std_p(),
    })
}

#[derive(Serialize)]
struct Compiled {
    terms: usize,
    cnot_naive: usize,
    cnot_cancelled: usize,
    single_qubit: usize,
    text: String,
}

pub fn compile_json(g: f64, time: f64, delta_t: f64, ordering: &str) -> Result<String, String> {
    let ordering: Ordering = ordering.parse().map_err(|e: qboson::Error| e.to_string())?;
    let h = hamiltonian_general(&params(g), time).map_err(|e| e.to_string())?;
    let (circuit, stats) = compile_step(&h, delta_t, ordering).map_err(|e| e.to_string())?;
    to_json(&Compiled {
        terms: stats.term_count,
        cnot_naive: stats.cnot_count_naive,
        cnot_cancelled: stats.cnot_count_after_cancellation,
        single_qubit: stats.single_qubit_count,
        text: export_text(&circuit),
    })
}

#[wasm_bindgen]
pub fn trajectory(g: f64, initial: &str, n_t: usize, delta_t: f64, backend: &str) -> Result<String, JsError> {
    trajectory_json(g, initial, n_t, delta_t, backend).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn error_band(g: f64, initial: &str, n_t: usize, samples: usize, seed: u64) -> Result<String, JsError> {
    band_json(g, initial, n_t, samples, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn compile(g: f64, time: f64, delta_t: f64, ordering: &str) -> Result<String, JsError> {
    compile_json(g, time, delta_t, ordering).map_err(|e| JsError::new(&e))
}
