//! Browser bindings: three operations on a problem document pasted into the
//! page. The plain functions are what the tests exercise; the exported
//! wrappers only convert errors into JavaScript exceptions.

use tropspan::commands::{cmd_enumerate, cmd_plot, cmd_solve, CommandOptions};
use wasm_bindgen::prelude::*;

fn options(exhaustive: bool, compact: bool) -> CommandOptions {
    let mut opts = CommandOptions {
        compact,
        ..CommandOptions::default()
    };
    opts.solve.exhaustive = exhaustive;
    // Keep the page responsive on large inputs.
    opts.solve.budget = 100_000;
    opts
}

pub fn solve_text(problem: &str, compact: bool) -> Result<String, String> {
    cmd_solve(problem, &options(false, compact)).map_err(|e| e.to_string())
}

pub fn enumerate_text(problem: &str, exhaustive: bool) -> Result<String, String> {
    cmd_enumerate(problem, &options(exhaustive, false)).map_err(|e| e.to_string())
}

pub fn plot_text(problem: &str, lo: f64, hi: f64) -> Result<String, String> {
    cmd_plot(problem, &options(false, false), (lo, hi)).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn solve(problem: &str, compact: bool) -> Result<String, JsValue> {
    solve_text(problem, compact).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn enumerate(problem: &str, exhaustive: bool) -> Result<String, JsValue> {
    enumerate_text(problem, exhaustive).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn plot(problem: &str, lo: f64, hi: f64) -> Result<String, JsValue> {
    plot_text(problem, lo, hi).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPAN: &str = include_str!("../../core/fixtures/span-2x2.json");
    const SCHEDULE: &str = include_str!("../../core/fixtures/schedule-3.json");

    #[test]
    fn solves_both_kinds() {
        assert!(solve_text(SPAN, false).unwrap().contains("\"delta\": 2"));
        assert!(solve_text(SCHEDULE, true).unwrap().contains("\"coeff_bound\": [1, 5]"));
    }

    #[test]
    fn enumerates_and_plots() {
        assert!(enumerate_text(SPAN, true).unwrap().contains("(pruned)"));
        assert!(plot_text(SPAN, -10.0, 10.0).unwrap().starts_with("<svg"));
        assert!(plot_text(SCHEDULE, -10.0, 10.0).unwrap_err().contains("2-dimensional"));
    }

    #[test]
    fn errors_are_messages() {
        let err = solve_text("{", false).unwrap_err();
        assert!(err.starts_with("parse error at line 1"), "{err}");
    }
}
