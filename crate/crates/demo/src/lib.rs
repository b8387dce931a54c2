//! Browser demo for the `humbert` crate.
//!
//! Three interactive operations, each returning a JSON string the page
//! renders directly:
//!
//! - `compare_point`: every representation of one function at one point,
//!   with pairwise relative errors;
//! - `sweep`: method values and disagreement along the y = x², y = x, or
//!   y = t·x locus, for curve plotting;
//! - `certificate`: the exact-rational identity certificate.
//!
//! The logic lives in [`api`] as plain functions so it builds and tests on
//! any host; the `wasm_bindgen` exports are compiled only for wasm32.

pub mod api;

#[cfg(target_arch = "wasm32")]
mod wasm {
    use wasm_bindgen::prelude::wasm_bindgen;

    #[wasm_bindgen]
    pub fn compare_point(
        function: &str,
        params_json: &str,
        x_re: f64,
        x_im: f64,
        y_re: f64,
        y_im: f64,
        gate: f64,
    ) -> String {
        crate::api::compare_point(function, params_json, x_re, x_im, y_re, y_im, gate)
    }

    #[wasm_bindgen]
    pub fn sweep(
        function: &str,
        params_json: &str,
        locus: &str,
        t_ratio: f64,
        x_from: f64,
        x_to: f64,
        steps: u32,
    ) -> String {
        crate::api::sweep(function, params_json, locus, t_ratio, x_from, x_to, steps)
    }

    #[wasm_bindgen]
    pub fn certificate(identity: &str, params: &str, deg: u32) -> String {
        crate::api::certificate(identity, params, deg)
    }

    #[wasm_bindgen]
    pub fn identities() -> String {
        crate::api::identities()
    }
}
