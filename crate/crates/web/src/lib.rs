//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes the form fields as text and returns a pretty JSON
//! document. Failures come back as `{"error": ...}` so the page can show them
//! in place of a result.

use sector_core::parse::{parse_angle, parse_polynomial};
use sector_core::report::{self, Document};
use sector_core::sector::verify_theorem;
use sector_core::Result;
use wasm_bindgen::prelude::wasm_bindgen;

fn render(doc: Result<Document>) -> String {
    match doc {
        Ok(d) => d.to_json(),
        Err(e) => {
            let mut s = serde_json::to_string_pretty(&serde_json::json!({ "error": e.to_string() })).expect("plain json");
            s.push('\n');
            s
        }
    }
}

/// Certified root enclosures of `poly`.
#[wasm_bindgen]
pub fn roots(poly: &str, radius_target: f64) -> String {
    render(parse_polynomial(poly).and_then(|p| report::roots_document(&p, radius_target)))
}

/// Checks that the critical points of `poly` lie in the sector `|arg z| >= phi`.
#[wasm_bindgen]
pub fn verify(poly: &str, phi: &str) -> String {
    render((|| {
        let p = parse_polynomial(poly)?;
        let cert = verify_theorem(&p, parse_angle(phi)?)?;
        Ok(report::certificate_document(&cert))
    })())
}

/// Argument variation of `poly` along the ray at angle `theta`.
#[wasm_bindgen]
pub fn delta(poly: &str, theta: &str) -> String {
    render(parse_polynomial(poly).and_then(|p| report::delta_document(&p, parse_angle(theta)?)))
}
