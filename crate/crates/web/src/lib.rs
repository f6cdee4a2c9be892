//! wasm-bindgen bindings for the static page in `www/`.
//!
//! Bulk per-cell data crosses as typed arrays; everything else as JSON
//! strings the page parses.

pub mod demo;

use wasm_bindgen::prelude::*;

use demo::{parse_mode, DemoError, GridLayers};

fn js(e: DemoError) -> JsError {
    JsError::new(&e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("demo types serialize")
}

fn as_f64(w: &[lizard_sssp::Distance]) -> Vec<f64> {
    // unreachable cells become -1
    w.iter()
        .map(|&d| {
            if d == lizard_sssp::UNSET {
                -1.0
            } else {
                d as f64
            }
        })
        .collect()
}

/// One solved grid, kept alive on the JS side for redraws.
#[wasm_bindgen]
pub struct GridSolve {
    layers: GridLayers,
}

#[wasm_bindgen]
impl GridSolve {
    /// Distances straight after layered labeling.
    pub fn layered(&self) -> Vec<f64> {
        as_f64(&self.layers.layered)
    }

    /// Distances after correction.
    pub fn exact(&self) -> Vec<f64> {
        as_f64(&self.layers.exact)
    }

    pub fn regions(&self) -> Vec<u32> {
        self.layers.regions.clone()
    }

    pub fn relabels(&self) -> Vec<u32> {
        self.layers.relabels.clone()
    }

    pub fn summary(&self) -> String {
        to_json(&self.layers.summary)
    }
}

#[wasm_bindgen]
pub fn solve_grid(
    rows: usize,
    cols: usize,
    seed: u32,
    w_max: u32,
    source: usize,
    mode: &str,
) -> Result<GridSolve, JsError> {
    let mode = parse_mode(mode).map_err(js)?;
    let layers = demo::solve_grid(rows, cols, u64::from(seed), w_max, source, mode).map_err(js)?;
    Ok(GridSolve { layers })
}

/// Runs both reap modes on the same grid; returns the comparison as JSON.
#[wasm_bindgen]
pub fn compare_modes(rows: usize, cols: usize, seed: u32, w_max: u32) -> Result<String, JsError> {
    demo::compare_modes(rows, cols, u64::from(seed), w_max)
        .map(|c| to_json(&c))
        .map_err(js)
}

#[wasm_bindgen]
pub struct Playground {
    inner: demo::Playground,
}

#[wasm_bindgen]
impl Playground {
    #[wasm_bindgen(constructor)]
    pub fn new() -> Playground {
        Playground {
            inner: demo::Playground::new(),
        }
    }

    pub fn capacity() -> usize {
        demo::PLAYGROUND_CAPACITY
    }

    pub fn insert(&mut self, node: u32, key: u32) -> Result<(), JsError> {
        self.inner.insert(node, u64::from(key)).map_err(js)
    }

    pub fn delete(&mut self, node: u32) -> Result<(), JsError> {
        self.inner.delete(node).map_err(js)
    }

    pub fn get_min(&mut self, mode: &str) -> Result<Vec<u32>, JsError> {
        let mode = parse_mode(mode).map_err(js)?;
        self.inner.get_min(mode).map_err(js)
    }

    pub fn fill(&mut self, seed: u32) -> Result<(), JsError> {
        self.inner.fill(u64::from(seed)).map_err(js)
    }

    pub fn reset(&mut self) {
        self.inner = demo::Playground::new();
    }

    pub fn snapshot(&self) -> String {
        to_json(&self.inner.snapshot())
    }
}

impl Default for Playground {
    fn default() -> Self {
        Playground::new()
    }
}
