//! Browser bindings for the `zcaq` demo page.
//!
//! Every export returns a JSON string. The `*_json` functions are plain Rust
//! and carry the logic; the `#[wasm_bindgen]` wrappers only convert errors.

use serde::Serialize;
use wasm_bindgen::prelude::*;
use zcaq::correlation::ComplementarySum2D;
use zcaq::pmepr::{iepr_curve, pmepr_bound_pair, quad_pmepr_report};
use zcaq::{build_quad, Catalog, PairKind, Quad, QuadRecipe, SearchSpec, SeedPair, DEFAULT_TOL};

/// Longest binary search offered in the page.
pub const SEARCH_CAP: usize = 20;

#[derive(Serialize)]
struct CatalogEntry<'a> {
    name: &'a str,
    kind: &'static str,
    length: usize,
    zone: usize,
    a: String,
    b: String,
}

#[derive(Serialize)]
struct Surface {
    dims: [usize; 2],
    zone: [usize; 2],
    measured_zone: [usize; 2],
    max_shifts: [isize; 2],
    /// Row-major `|sum|` for `τ1 = -m1..=m1`, `τ2 = -m2..=m2`.
    values: Vec<f64>,
    peak: f64,
}

#[derive(Serialize)]
struct Curve {
    label: String,
    pmepr: f64,
    iepr: Vec<f64>,
}

#[derive(Serialize)]
struct Envelopes {
    t: Vec<f64>,
    curves: Vec<Curve>,
    max_pmepr: f64,
    bound: f64,
}

#[derive(Serialize)]
struct Found {
    name: String,
    a: String,
    b: String,
    zone: usize,
}

fn to_json(value: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn recipe(gcp: &str, zcp: &str) -> Result<QuadRecipe, String> {
    let catalog = Catalog::builtin();
    let gcp = match gcp.trim().parse::<usize>() {
        Ok(n) => catalog.gcp_for_length(n),
        Err(_) => catalog.get(gcp.trim()).cloned(),
    }
    .map_err(|e| e.to_string())?;
    if gcp.kind != PairKind::Gcp {
        return Err(format!("'{}' is not a Golay pair", gcp.name));
    }
    let zcp = catalog.seed_zcp(zcp.trim()).map_err(|e| e.to_string())?;
    QuadRecipe::new(gcp, zcp).map_err(|e| e.to_string())
}

fn quad(recipe: &QuadRecipe) -> Result<Quad, String> {
    build_quad(recipe).map_err(|e| e.to_string())
}

pub fn catalog_json() -> String {
    let entries: Vec<CatalogEntry> = Catalog::builtin()
        .entries()
        .iter()
        .map(|p: &SeedPair| CatalogEntry {
            name: &p.name,
            kind: match p.kind {
                PairKind::Gcp => "gcp",
                PairKind::Zcp => "zcp",
            },
            length: p.len(),
            zone: p.claimed_z,
            a: p.a.to_symbols(),
            b: p.b.to_symbols(),
        })
        .collect();
    to_json(&entries).expect("catalog serializes")
}

/// Magnitude of the summed 2D auto-correlations of the quad over every shift.
pub fn surface_json(gcp: &str, zcp: &str) -> Result<String, String> {
    let recipe = recipe(gcp, zcp)?;
    let quad = quad(&recipe)?;
    let sum = ComplementarySum2D::of_quad(&quad);
    let (m1, m2) = sum.profile.max_shifts();
    let values: Vec<f64> =
        (-m1..=m1).flat_map(|t1| (-m2..=m2).map(move |t2| (t1, t2))).map(|(t1, t2)| sum.at(t1, t2).norm()).collect();
    let zone = recipe.claimed_zone();
    let measured = sum.max_zone(DEFAULT_TOL);
    let (rows, cols) = quad.dims();
    to_json(&Surface {
        dims: [rows, cols],
        zone: [zone.z1, zone.z2],
        measured_zone: [measured.z1, measured.z2],
        max_shifts: [m1, m2],
        values,
        peak: (4 * rows * cols) as f64,
    })
}

/// IEPR curves of one column in each of the four arrays, with the quad-wide
/// maximum and the analytic bound.
pub fn iepr_json(gcp: &str, zcp: &str, column: usize, oversample: usize) -> Result<String, String> {
    let recipe = recipe(gcp, zcp)?;
    let quad = quad(&recipe)?;
    let cols = quad.dims().1;
    if column >= cols {
        return Err(format!("column {column} out of range, arrays have {cols} columns"));
    }
    let report = quad_pmepr_report(&quad, recipe.zcp(), oversample).map_err(|e| e.to_string())?;
    let mut t = Vec::new();
    let mut curves = Vec::new();
    for (m, array) in quad.arrays().iter().enumerate() {
        let curve = iepr_curve(&array.column(column), oversample).map_err(|e| e.to_string())?;
        if t.is_empty() {
            t = curve.iter().map(|&(t, _)| t).collect();
        }
        curves.push(Curve {
            label: format!("X{}:{column}", m + 1),
            pmepr: report.per_column[m * cols + column].pmepr,
            iepr: curve.into_iter().map(|(_, v)| v).collect(),
        });
    }
    to_json(&Envelopes {
        t,
        curves,
        max_pmepr: report.max_pmepr,
        bound: pmepr_bound_pair(recipe.zcp()).map_err(|e| e.to_string())?,
    })
}

/// Canonical binary ZCPs of the given length and minimum zone width.
pub fn search_json(length: usize, min_z: usize, limit: usize) -> Result<String, String> {
    if length > SEARCH_CAP {
        return Err(format!("length {length} is above the demo limit of {SEARCH_CAP}"));
    }
    let mut spec = SearchSpec::binary(length, min_z);
    spec.limit = (limit > 0).then_some(limit);
    let found = zcaq::search_zcp(&spec).map_err(|e| e.to_string())?;
    let found: Vec<Found> = found
        .into_iter()
        .map(|p| Found { a: p.a.to_symbols(), b: p.b.to_symbols(), zone: p.claimed_z, name: p.name })
        .collect();
    to_json(&found)
}

#[wasm_bindgen]
pub fn catalog() -> String {
    catalog_json()
}

#[wasm_bindgen]
pub fn surface(gcp: &str, zcp: &str) -> Result<String, JsValue> {
    surface_json(gcp, zcp).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn iepr(gcp: &str, zcp: &str, column: usize, oversample: usize) -> Result<String, JsValue> {
    iepr_json(gcp, zcp, column, oversample).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn search(length: usize, min_z: usize, limit: usize) -> Result<String, JsValue> {
    search_json(length, min_z, limit).map_err(|e| JsValue::from_str(&e))
}
