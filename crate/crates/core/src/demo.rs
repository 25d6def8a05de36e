//! Six-panel reproduction of the published figure: random windows on
//! `(-1, 1)` for each regime of the long-run dichotomy.
//!
//! | panel | k | a   | window            | backend  |
//! |-------|---|-----|-------------------|----------|
//! | 1     | 2 | 2   | random            | float    |
//! | 2     | 2 | 1/2 | random            | float    |
//! | 3     | 2 | 3   | random, P = 1 - a | rational |
//! | 4     | 4 | 1/2 | random, P = 1 - a | rational |
//! | 5     | 2 | 1   | random            | float    |
//! | 6     | 4 | 1   | random            | float    |
//!
//! Panels 3 and 4 run exactly because `P = 1 - a` is an unstable knife edge
//! for `a > 1` in floating point. Each panel draws its window from its own
//! ChaCha stream so panels are independent of each other's order.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::classify::{classify_analytic, detect_period, Classification, DetectedPeriod};
use crate::dynamics::{iterate_direct, InitWindow, Orbit, Params};
use crate::sampling::{random_window, rng};
use crate::scalar::{Backend, Rational, Scalar};

/// Period detection settings for the long panels.
pub const DETECT_BURN_IN: usize = 1000;
pub const DETECT_P_MAX: usize = 16;
pub const DETECT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    Random,
    /// Random, then `x_0 = (1 - a) / x_{-k}`.
    PeriodicProduct,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanelSpec {
    pub id: u64,
    pub label: &'static str,
    pub k: usize,
    pub a: &'static str,
    pub window: WindowKind,
    pub backend: Backend,
    pub steps: u64,
}

pub fn figure_panels() -> Vec<PanelSpec> {
    use Backend::{Float, Rational as Exact};
    use WindowKind::{PeriodicProduct, Random};
    let panel = |id, label, k, a, window, backend, steps| PanelSpec {
        id,
        label,
        k,
        a,
        window,
        backend,
        steps,
    };
    vec![
        panel(1, "a > 1: decay to zero", 2, "2", Random, Float, 200),
        panel(2, "0 < a < 1: eventually periodic", 2, "1/2", Random, Float, 2000),
        panel(
            3,
            "a > 1, P = 1 - a: period 2k",
            2,
            "3",
            PeriodicProduct,
            Exact,
            2000,
        ),
        panel(
            4,
            "0 < a < 1, P = 1 - a: period 2k",
            4,
            "1/2",
            PeriodicProduct,
            Exact,
            2000,
        ),
        panel(5, "a = 1, k = 2", 2, "1", Random, Float, 2000),
        panel(6, "a = 1, k = 4", 4, "1", Random, Float, 2000),
    ]
}

#[derive(Debug, Clone)]
pub struct PanelResult {
    pub spec: PanelSpec,
    pub init: InitWindow<Rational>,
    pub analytic: Classification,
    /// Only run for panels whose analytic label is eventually periodic.
    pub detected: Option<DetectedPeriod>,
    pub final_abs: f64,
    pub csv: String,
    pub series: Vec<(f64, f64)>,
}

pub fn panel_window(spec: &PanelSpec, seed: u64) -> InitWindow<Rational> {
    let mut stream = rng(seed, spec.id);
    let mut values = random_window(&mut stream, spec.k);
    if spec.window == WindowKind::PeriodicProduct {
        let a: Rational = spec.a.parse().expect("panel coefficient");
        values[spec.k] = (Rational::one() - a)
            .checked_div(&values[0])
            .expect("random values are nonzero");
    }
    InitWindow::new(spec.k, values).expect("k + 1 values")
}

pub fn run_panel(spec: &PanelSpec, seed: u64) -> PanelResult {
    let a: Rational = spec.a.parse().expect("panel coefficient");
    let params = Params::new(spec.k, a).expect("panel parameters");
    let init = panel_window(spec, seed);
    let analytic = classify_analytic(&params, &init).expect("exact classification");
    let periodic = matches!(analytic, Classification::EventuallyPeriodic { .. });
    let (detected, final_abs, csv, series) = match spec.backend {
        Backend::Float => {
            let orbit = iterate_direct(&params.to_float(), &init.to_float(), spec.steps);
            summarize(&orbit, periodic, &DETECT_TOL)
        }
        Backend::Rational => {
            let orbit = iterate_direct(&params, &init, spec.steps);
            summarize(&orbit, periodic, &Rational::zero())
        }
    };
    PanelResult {
        spec: spec.clone(),
        init,
        analytic,
        detected,
        final_abs,
        csv,
        series,
    }
}

type Summary = (Option<DetectedPeriod>, f64, String, Vec<(f64, f64)>);

fn summarize<T: Scalar>(orbit: &Orbit<T>, periodic: bool, tol: &T) -> Summary {
    let detected = if periodic {
        detect_period(orbit, DETECT_BURN_IN, DETECT_P_MAX, tol)
            .ok()
            .flatten()
    } else {
        None
    };
    let final_abs = orbit.points.last().map_or(f64::NAN, |x| x.to_f64().abs());
    let series = orbit.indexed().map(|(n, x)| (n as f64, x.to_f64())).collect();
    (detected, final_abs, orbit.to_csv(), series)
}

pub fn run_demo(seed: u64) -> Vec<PanelResult> {
    figure_panels().iter().map(|spec| run_panel(spec, seed)).collect()
}

pub fn panel_file_stem(result: &PanelResult) -> String {
    format!("panel{}", result.spec.id)
}

pub fn metadata_json(seed: u64, results: &[PanelResult]) -> serde_json::Value {
    let panels: Vec<serde_json::Value> = results
        .iter()
        .map(|r| {
            let init: Vec<String> = r.init.values().iter().map(Scalar::to_text).collect();
            serde_json::json!({
                "panel": r.spec.id,
                "label": r.spec.label,
                "k": r.spec.k,
                "a": r.spec.a,
                "backend": r.spec.backend.as_str(),
                "steps": r.spec.steps,
                "init": init,
                "analytic": r.analytic.to_json(),
                "detected_period": r.detected.map(|d| d.period),
                "detected_onset": r.detected.map(|d| d.onset),
                "final_abs": r.final_abs,
                "csv": format!("{}.csv", panel_file_stem(r)),
            })
        })
        .collect();
    serde_json::json!({
        "seed": seed,
        "detection": {
            "burn_in": DETECT_BURN_IN,
            "p_max": DETECT_P_MAX,
            "tol": DETECT_TOL,
        },
        "panels": panels,
    })
}

/// Writes `panel{1..6}.csv`, `metadata.json` and optionally
/// `panel{1..6}.svg` under `dir`, returning the files written.
pub fn write_demo(dir: &Path, seed: u64, plots: bool) -> io::Result<(Vec<PanelResult>, Vec<PathBuf>)> {
    fs::create_dir_all(dir)?;
    let results = run_demo(seed);
    let mut written = Vec::new();
    for result in &results {
        let stem = panel_file_stem(result);
        let csv_path = dir.join(format!("{stem}.csv"));
        fs::write(&csv_path, &result.csv)?;
        written.push(csv_path);
        if plots {
            let title = format!("Panel {}: {}", result.spec.id, result.spec.label);
            let svg_path = dir.join(format!("{stem}.svg"));
            fs::write(&svg_path, crate::plot::line_plot(&title, &result.series))?;
            written.push(svg_path);
        }
    }
    let meta_path = dir.join("metadata.json");
    let meta = serde_json::to_string_pretty(&metadata_json(seed, &results)).expect("json");
    fs::write(&meta_path, meta + "\n")?;
    written.push(meta_path);
    Ok((results, written))
}
