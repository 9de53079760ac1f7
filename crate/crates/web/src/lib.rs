//! wasm-bindgen surface for the static page in `www/`.
//!
//! The page holds one [`Explorer`]: clicks toggle sample points, the pointer
//! reads off the depth underneath it, and a scenario menu loads a simulated
//! sample. Every change comes back as a JSON snapshot the page draws.

mod session;

pub use session::{Level, Session, Snapshot, PICK_RADIUS};

use depthscope::Point;
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub struct Explorer {
    session: Session,
    alphas: Vec<f64>,
}

#[wasm_bindgen]
impl Explorer {
    #[wasm_bindgen(constructor)]
    pub fn new() -> Explorer {
        Explorer { session: Session::new(), alphas: depthscope::FIGURE_ALPHAS.to_vec() }
    }

    /// Replaces the sample with a simulated one.
    pub fn load_scenario(&mut self, name: &str, n: usize, seed: u64) -> Result<(), JsError> {
        self.session = Session::from_scenario(name, n, seed)?;
        Ok(())
    }

    pub fn set_levels(&mut self, alphas: Vec<f64>) {
        self.alphas = alphas;
    }

    pub fn toggle_point(&mut self, x: f64, y: f64) {
        self.session.toggle(Point::new(x, y));
    }

    pub fn clear(&mut self) {
        self.session.clear();
    }

    /// Depth at `(x, y)`; `NaN` while no model is fitted.
    pub fn depth_at(&self, x: f64, y: f64) -> f64 {
        self.session.depth_at(Point::new(x, y)).unwrap_or(f64::NAN)
    }

    /// Points, median and non-empty contours as JSON.
    pub fn snapshot(&self) -> Result<String, JsError> {
        let snap = self.session.snapshot(&self.alphas)?;
        Ok(serde_json::to_string(&snap)?)
    }
}

impl Default for Explorer {
    fn default() -> Self {
        Self::new()
    }
}
