//! Browser bindings. Every entry point takes points as CSV text and returns
//! JSON; errors come back as a thrown string.

use std::f64::consts::PI;

use betahull::fitting::{fit_fixed, fit_sweep};
use betahull::io::{parse_points, render_svg, write_points, RenderSpec};
use betahull::objectives::{maximize_area, maximize_perimeter};
use betahull::oracle::gen_random;
use betahull::{area_of, hull_fixed, perimeter_of, Angle, Point};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn points(csv: &str) -> Result<Vec<Point>, String> {
    parse_points(csv).map_err(|e| e.to_string())
}

fn angle(beta: f64) -> Result<Angle, String> {
    Angle::new(beta).map_err(|e| e.to_string())
}

pub fn render_hull_inner(csv: &str, beta: f64, polygon: bool, with_fit: bool) -> Result<String, String> {
    let p = points(csv)?;
    let beta = angle(beta)?;
    let snap = hull_fixed(&p, beta).map_err(|e| e.to_string())?;
    let fit = if with_fit { Some(fit_fixed(&p, beta).map_err(|e| e.to_string())?) } else { None };
    let mut spec = RenderSpec::default();
    spec.show.polygon = polygon;
    spec.show.antennas = polygon;
    let svg = render_svg(&snap, &spec, fit.as_ref());
    Ok(json!({
        "svg": svg,
        "area": area_of(&snap),
        "perimeter": perimeter_of(&snap, false),
        "overlaps": snap.overlaps.len(),
        "mu": fit.map(|f| f.tolerance),
    })
    .to_string())
}

/// Area and perimeter sampled at `samples` angles, plus the exact optima.
pub fn objective_profile_inner(csv: &str, samples: usize) -> Result<String, String> {
    let p = points(csv)?;
    if samples < 2 {
        return Err("need at least 2 samples".into());
    }
    let mut angles = Vec::with_capacity(samples);
    let mut area = Vec::with_capacity(samples);
    let mut perimeter = Vec::with_capacity(samples);
    for i in 0..samples {
        let b = PI * (i as f64 + 0.5) / samples as f64;
        let snap = hull_fixed(&p, Angle::clamped(b)).map_err(|e| e.to_string())?;
        angles.push(b);
        area.push(area_of(&snap));
        perimeter.push(perimeter_of(&snap, false));
    }
    let a = maximize_area(&p).map_err(|e| e.to_string())?;
    let q = maximize_perimeter(&p).map_err(|e| e.to_string())?;
    Ok(json!({
        "angles": angles,
        "area": area,
        "perimeter": perimeter,
        "best_area": {"angle": a.best_angle, "value": a.best_value},
        "best_perimeter": {"angle": q.best_angle, "value": q.best_value},
        "events": a.n_events,
    })
    .to_string())
}

pub fn fit_inner(csv: &str) -> Result<String, String> {
    let p = points(csv)?;
    let f = fit_sweep(&p).map_err(|e| e.to_string())?;
    serde_json::to_string(&f).map_err(|e| e.to_string())
}

pub fn random_points_inner(n: usize, seed: u64) -> Result<String, String> {
    if n == 0 {
        return Err("need at least one point".into());
    }
    Ok(write_points(&gen_random(n, seed)))
}

fn thrown(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn render_hull(csv: &str, beta: f64, polygon: bool, with_fit: bool) -> Result<String, JsError> {
    thrown(render_hull_inner(csv, beta, polygon, with_fit))
}

#[wasm_bindgen]
pub fn objective_profile(csv: &str, samples: usize) -> Result<String, JsError> {
    thrown(objective_profile_inner(csv, samples))
}

#[wasm_bindgen]
pub fn fit(csv: &str) -> Result<String, JsError> {
    thrown(fit_inner(csv))
}

#[wasm_bindgen]
pub fn random_points(n: usize, seed: u32) -> Result<String, JsError> {
    thrown(random_points_inner(n, seed as u64))
}
