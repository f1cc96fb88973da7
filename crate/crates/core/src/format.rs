//! JSON interchange files.
//!
//! Sequences and arrays are stored as q-ary exponent vectors (entry `k` is
//! `ξ_q^k`, `ξ_q = exp(-2πi/q)`) so binary and quaternary data stay exact.
//! Data without a q-PSK form is written as `[re, im]` pairs with `"q": null`.
//!
//! ```json
//! { "format_version": 1, "kind": "pair", "q": 2, "a": [0, 0, 1], "b": [0, 1, 0] }
//! ```
//!
//! Three document kinds exist: `pair`, `quad` and `catalog` (a list of pairs).

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{PairKind, SeedFamily};
use crate::error::{Error, Result};
use crate::quad::{Quad, Zone};
use crate::sequence::{lcm, Array2D, Sequence, UNIT_TOL};

pub const FORMAT_VERSION: u32 = 1;

/// Unit-magnitude tolerance applied to raw complex entries read from files.
pub const FILE_UNIT_TOL: f64 = 1e-6;

const SIGNIFICANT_DIGITS: usize = 12;

/// Shortest round-trip representation, capped at 12 significant digits.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded = round_significant(x);
    if rounded == 0.0 {
        "0".to_string()
    } else {
        rounded.to_string()
    }
}

fn round_significant(x: f64) -> f64 {
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub format_version: u32,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Pair(PairRecord),
    Quad(QuadRecord),
    Catalog(CatalogRecord),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entries1D {
    Exponents(Vec<u32>),
    Raw(Vec<[f64; 2]>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entries2D {
    Exponents(Vec<Vec<u32>>),
    Raw(Vec<Vec<[f64; 2]>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub family: SeedFamily,
    pub param: u32,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_kind: Option<PairKind>,
    pub q: Option<u32>,
    pub a: Entries1D,
    pub b: Entries1D,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_z: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRecord>,
    /// A failed load check may be repaired by a generated pair of the same length.
    #[serde(default, skip_serializing_if = "is_false")]
    pub substitutable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub entries: Vec<PairRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zone: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peak: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_count: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gcp: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zcp: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gcp_provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zcp_provenance: Option<String>,
}

/// Four arrays of logical size `dims = [rows, cols]`. With `transposed` set
/// each array is stored as its `cols × rows` transpose.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadRecord {
    pub q: Option<u32>,
    pub dims: [usize; 2],
    #[serde(default, skip_serializing_if = "is_false")]
    pub transposed: bool,
    pub arrays: Vec<Entries2D>,
    #[serde(default)]
    pub metadata: QuadMetadata,
}

impl Document {
    pub fn new(body: Body) -> Self {
        Document { format_version: FORMAT_VERSION, body }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                doc.format_version
            )));
        }
        Ok(doc)
    }

    /// Indented JSON with a trailing newline; arrays of numbers stay on one line.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("documents always serialize");
        let mut text = String::new();
        write_json(&value, 0, &mut text);
        text.push('\n');
        text
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Document::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

fn write_json(value: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| " ".repeat(n);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (key, v)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_json(v, indent + 2, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|v| v.is_array() || v.is_object()) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                write_json(v, indent + 2, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&inner.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn raw(e: Complex64) -> [f64; 2] {
    [round_significant(e.re), round_significant(e.im)]
}

fn from_raw(index: usize, [re, im]: [f64; 2]) -> Result<Complex64> {
    let e = Complex64::new(re, im);
    let magnitude = e.norm();
    if !magnitude.is_finite() || (magnitude - 1.0).abs() > FILE_UNIT_TOL {
        return Err(Error::NotUnimodular { index, magnitude });
    }
    if (magnitude - 1.0).abs() > UNIT_TOL {
        Ok(e / magnitude)
    } else {
        Ok(e)
    }
}

/// Common phase order of several q-PSK objects, or `None` if any lacks one.
pub fn common_order(orders: impl IntoIterator<Item = Option<u32>>) -> Option<u32> {
    orders.into_iter().try_fold(1, |acc, q| q.map(|q| lcm(acc, q)))
}

pub fn encode_sequence(s: &Sequence, q: Option<u32>) -> Entries1D {
    match q.and_then(|q| s.phases()?.lifted(q)) {
        Some(exps) => Entries1D::Exponents(exps),
        None => Entries1D::Raw(s.entries().iter().copied().map(raw).collect()),
    }
}

pub fn decode_sequence(entries: &Entries1D, q: Option<u32>) -> Result<Sequence> {
    match (entries, q) {
        (Entries1D::Exponents(exps), Some(q)) => Sequence::from_exponents(q, exps.clone()),
        (Entries1D::Exponents(_), None) => Err(Error::Format("integer exponents need a phase order q".into())),
        (Entries1D::Raw(values), _) => {
            let entries = values.iter().enumerate().map(|(i, v)| from_raw(i, *v)).collect::<Result<Vec<_>>>()?;
            Sequence::from_complex(entries)
        }
    }
}

pub fn encode_array(a: &Array2D, q: Option<u32>) -> Entries2D {
    let cols = a.cols();
    match q.and_then(|q| a.phases()?.lifted(q)) {
        Some(exps) => Entries2D::Exponents(exps.chunks(cols).map(<[u32]>::to_vec).collect()),
        None => Entries2D::Raw(a.entries().chunks(cols).map(|row| row.iter().copied().map(raw).collect()).collect()),
    }
}

fn grid_dims<T>(rows: &[Vec<T>]) -> Result<(usize, usize)> {
    let cols = rows.first().map(Vec::len).ok_or(Error::Empty)?;
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Format("ragged array rows".into()));
    }
    Ok((rows.len(), cols))
}

pub fn decode_array(entries: &Entries2D, q: Option<u32>) -> Result<Array2D> {
    match (entries, q) {
        (Entries2D::Exponents(rows), Some(q)) => {
            let (r, c) = grid_dims(rows)?;
            Array2D::from_exponents(q, r, c, rows.concat())
        }
        (Entries2D::Exponents(_), None) => Err(Error::Format("integer exponents need a phase order q".into())),
        (Entries2D::Raw(rows), _) => {
            let (r, c) = grid_dims(rows)?;
            let entries =
                rows.concat().into_iter().enumerate().map(|(i, v)| from_raw(i, v)).collect::<Result<Vec<_>>>()?;
            Array2D::from_complex(r, c, entries)
        }
    }
}

impl PairRecord {
    /// Minimal record holding just the two sequences.
    pub fn from_sequences(a: &Sequence, b: &Sequence) -> Self {
        let q = common_order([a.phase_order(), b.phase_order()]);
        PairRecord {
            name: None,
            pair_kind: None,
            q,
            a: encode_sequence(a, q),
            b: encode_sequence(b, q),
            claimed_z: None,
            provenance: None,
            family: None,
            substitutable: false,
        }
    }

    pub fn sequences(&self) -> Result<(Sequence, Sequence)> {
        let a = decode_sequence(&self.a, self.q)?;
        let b = decode_sequence(&self.b, self.q)?;
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!("pair sequences of lengths {} and {}", a.len(), b.len())));
        }
        Ok((a, b))
    }
}

impl QuadRecord {
    pub fn from_quad(quad: &Quad, transposed: bool, metadata: QuadMetadata) -> Self {
        let q = quad.phase_order();
        let (rows, cols) = quad.dims();
        let arrays = quad
            .arrays()
            .iter()
            .map(|a| if transposed { encode_array(&a.transpose(), q) } else { encode_array(a, q) })
            .collect();
        QuadRecord { q, dims: [rows, cols], transposed, arrays, metadata }
    }

    /// Rebuilds the quad; the claimed zone comes from `metadata.zone`.
    pub fn to_quad(&self) -> Result<Quad> {
        if self.arrays.len() != 4 {
            return Err(Error::MalformedQuad(format!("{} arrays, expected 4", self.arrays.len())));
        }
        let mut arrays = Vec::with_capacity(4);
        for stored in &self.arrays {
            let a = decode_array(stored, self.q)?;
            let a = if self.transposed { a.transpose() } else { a };
            if a.dims() != (self.dims[0], self.dims[1]) {
                return Err(Error::MalformedQuad(format!(
                    "array is {}x{}, header says {}x{}",
                    a.rows(),
                    a.cols(),
                    self.dims[0],
                    self.dims[1]
                )));
            }
            arrays.push(a);
        }
        let zone = self.metadata.zone.map(|[z1, z2]| Zone::new(z1, z2));
        let arrays: [Array2D; 4] = arrays.try_into().expect("length checked");
        Quad::new(arrays, zone)
    }
}
