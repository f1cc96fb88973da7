//! Unimodular sequences and arrays.
//!
//! Entries are stored as complex numbers. When every entry is a power of
//! `ξ_q = exp(-2πi/q)` the integer exponents are carried alongside, which
//! keeps binary and quaternary data exact through construction, file I/O
//! and correlation (see [`Gaussian`]).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `| |e| - 1 |` for unimodular entries.
pub const UNIT_TOL: f64 = 1e-9;

/// Largest phase order tried when recognising raw complex input as q-PSK.
const MAX_DETECTED_ORDER: u32 = 64;

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// `ξ_q^k` with `ξ_q = exp(-2πi/q)`. Quarter-turn multiples are returned exactly.
pub fn root_of_unity(q: u32, k: u32) -> Complex64 {
    let k = k % q;
    let quarter = 4 * k as u64;
    if quarter.is_multiple_of(q as u64) {
        return match quarter / q as u64 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
    }
    let angle = -2.0 * std::f64::consts::PI * k as f64 / q as f64;
    Complex64::from_polar(1.0, angle)
}

/// Gaussian integer, used for exact correlation of entries in `{±1, ±j}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gaussian {
    pub re: i64,
    pub im: i64,
}

impl Gaussian {
    pub const ZERO: Gaussian = Gaussian { re: 0, im: 0 };

    pub const fn new(re: i64, im: i64) -> Self {
        Gaussian { re, im }
    }

    pub fn conj(self) -> Self {
        Gaussian::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn norm_sqr(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }

    /// `ξ_4^k`, defined for `q ∈ {1, 2, 4}` exponents lifted to order 4.
    fn quarter_power(k: u32) -> Self {
        match k % 4 {
            0 => Gaussian::new(1, 0),
            1 => Gaussian::new(0, -1),
            2 => Gaussian::new(-1, 0),
            _ => Gaussian::new(0, 1),
        }
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Self) -> Self {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for Gaussian {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Self) -> Self {
        Gaussian::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Self) -> Self {
        Gaussian::new(self.re * rhs.re - self.im * rhs.im, self.re * rhs.im + self.im * rhs.re)
    }
}

impl Mul<i64> for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: i64) -> Self {
        Gaussian::new(self.re * rhs, self.im * rhs)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Self {
        Gaussian::new(-self.re, -self.im)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}j"),
            (re, im) if im < 0 => write!(f, "{re}{im}j"),
            (re, im) => write!(f, "{re}+{im}j"),
        }
    }
}

/// q-PSK exponents: entry `k` stands for `ξ_q^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Phases {
    q: u32,
    exponents: Vec<u32>,
}

impl Phases {
    fn new(q: u32, exponents: Vec<u32>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidPhaseOrder(q));
        }
        if let Some((index, &exponent)) = exponents.iter().enumerate().find(|(_, &k)| k >= q) {
            return Err(Error::ExponentOutOfRange { index, exponent, q });
        }
        Ok(Phases { q, exponents })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Exponents re-expressed over a multiple `target` of the current order.
    pub fn lifted(&self, target: u32) -> Option<Vec<u32>> {
        if target == 0 || !target.is_multiple_of(self.q) {
            return None;
        }
        let scale = target / self.q;
        Some(self.exponents.iter().map(|&k| k * scale).collect())
    }

    fn gaussian(&self) -> Option<Vec<Gaussian>> {
        let lifted = self.lifted(4)?;
        Some(lifted.into_iter().map(Gaussian::quarter_power).collect())
    }
}

fn check_unimodular(entries: &[Complex64]) -> Result<()> {
    for (index, e) in entries.iter().enumerate() {
        let magnitude = e.norm();
        if !magnitude.is_finite() || (magnitude - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnimodular { index, magnitude });
        }
    }
    Ok(())
}

/// Smallest q (up to a fixed cap) such that every entry is a q-th root of unity.
fn detect_phases(entries: &[Complex64]) -> Option<Phases> {
    'order: for q in 1..=MAX_DETECTED_ORDER {
        let mut exponents = Vec::with_capacity(entries.len());
        for e in entries {
            // e = exp(-2πi k / q)  =>  k = -arg(e) q / 2π
            let turns = -e.arg() / (2.0 * std::f64::consts::PI) * q as f64;
            let k = turns.round().rem_euclid(q as f64) as u32 % q;
            if (root_of_unity(q, k) - e).norm() > UNIT_TOL {
                continue 'order;
            }
            exponents.push(k);
        }
        return Phases::new(q, exponents).ok();
    }
    None
}

fn symbol_value(c: char) -> Result<Complex64> {
    match c {
        '+' => Ok(Complex64::new(1.0, 0.0)),
        '-' => Ok(Complex64::new(-1.0, 0.0)),
        'j' => Ok(Complex64::new(0.0, 1.0)),
        'J' => Ok(Complex64::new(0.0, -1.0)),
        other => Err(Error::BadSymbol(other)),
    }
}

/// A finite sequence of unit-magnitude complex numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence {
    entries: Vec<Complex64>,
    phases: Option<Phases>,
}

impl Sequence {
    pub fn from_exponents(q: u32, exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Empty);
        }
        let phases = Phases::new(q, exponents)?;
        let entries = phases.exponents.iter().map(|&k| root_of_unity(q, k)).collect();
        Ok(Sequence { entries, phases: Some(phases) })
    }

    /// Raw complex entries. A q-PSK representation is attached when one is recognised.
    pub fn from_complex(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        check_unimodular(&entries)?;
        let phases = detect_phases(&entries);
        Ok(Sequence { entries, phases })
    }

    /// Parses the `+ - j` notation: `+` is 1, `-` is -1, `j` is √-1 and `J` is -√-1.
    /// Whitespace is ignored. Strings without `j`/`J` become binary (q = 2),
    /// otherwise quaternary (q = 4).
    pub fn parse_symbols(text: &str) -> Result<Self> {
        let values = text.chars().filter(|c| !c.is_whitespace()).map(symbol_value).collect::<Result<Vec<_>>>()?;
        let q = if values.iter().any(|v| v.im != 0.0) { 4 } else { 2 };
        let exponents = values
            .iter()
            .map(|v| match (v.re as i32, v.im as i32) {
                (1, 0) => 0,
                (-1, 0) => q / 2,
                (0, -1) => 1,
                _ => 3,
            })
            .collect();
        Sequence::from_exponents(q, exponents)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn phases(&self) -> Option<&Phases> {
        self.phases.as_ref()
    }

    pub fn phase_order(&self) -> Option<u32> {
        self.phases.as_ref().map(Phases::order)
    }

    /// Entries as `{±1, ±j}` Gaussian integers when the phase order divides 4.
    pub fn to_gaussian(&self) -> Option<Vec<Gaussian>> {
        self.phases.as_ref()?.gaussian()
    }

    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|e| e.im == 0.0 && e.re.abs() == 1.0)
    }

    fn map_phases(
        &self,
        entry: impl Fn(usize, Complex64) -> Complex64,
        exponent: impl Fn(usize, u32, u32) -> Option<u32>,
    ) -> Sequence {
        let n = self.len();
        let entries = (0..n).map(|i| entry(i, self.entries[i])).collect();
        let phases = self.phases.as_ref().and_then(|p| {
            let exps: Option<Vec<u32>> = (0..n).map(|i| exponent(i, p.exponents[i], p.q)).collect();
            exps.map(|exponents| Phases { q: p.q, exponents })
        });
        Sequence { entries, phases }
    }

    /// Conjugate-reversal: `out[k] = conj(x[N-1-k])`.
    pub fn conj_reverse(&self) -> Sequence {
        let n = self.len();
        self.map_phases(
            |i, _| self.entries[n - 1 - i].conj(),
            |i, _, q| {
                let k = self.phases.as_ref().unwrap().exponents[n - 1 - i];
                Some((q - k) % q)
            },
        )
    }

    pub fn reverse(&self) -> Sequence {
        let n = self.len();
        self.map_phases(
            |i, _| self.entries[n - 1 - i],
            |i, _, _| Some(self.phases.as_ref().unwrap().exponents[n - 1 - i]),
        )
    }

    pub fn conj(&self) -> Sequence {
        self.map_phases(|_, e| e.conj(), |_, k, q| Some((q - k) % q))
    }

    /// `-x`. The phase representation is dropped when q is odd.
    pub fn negate(&self) -> Sequence {
        self.map_phases(|_, e| -e, |_, k, q| (q % 2 == 0).then(|| (k + q / 2) % q))
    }

    /// Concatenation `self ‖ other`; the phase order becomes the lcm of both.
    pub fn concat(&self, other: &Sequence) -> Sequence {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        let phases = match (&self.phases, &other.phases) {
            (Some(p), Some(o)) => {
                let q = lcm(p.q, o.q);
                let mut exponents = p.lifted(q).unwrap();
                exponents.extend(o.lifted(q).unwrap());
                Some(Phases { q, exponents })
            }
            _ => None,
        };
        Sequence { entries, phases }
    }

    /// Signs `+`/`-` for binary data, `j`/`J` for ±√-1, otherwise `(re,im)`.
    pub fn to_symbols(&self) -> String {
        self.entries.iter().map(|e| entry_symbol(*e)).collect::<Vec<_>>().join("")
    }
}

fn entry_symbol(e: Complex64) -> String {
    match (e.re, e.im) {
        (re, im) if re == 1.0 && im == 0.0 => "+".into(),
        (re, im) if re == -1.0 && im == 0.0 => "-".into(),
        (re, im) if re == 0.0 && im == 1.0 => "j".into(),
        (re, im) if re == 0.0 && im == -1.0 => "J".into(),
        (re, im) => format!("({re},{im})"),
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_symbols())
    }
}

/// Row-major `rows × cols` grid of unit-magnitude entries.
///
/// Row index `i` runs along the first dimension; for constructed quads this is
/// the ZCP axis, so columns are the length-`rows` column sequences.
#[derive(Clone, Debug, PartialEq)]
pub struct Array2D {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
    phases: Option<Phases>,
}

impl Array2D {
    pub fn from_exponents(q: u32, rows: usize, cols: usize, exponents: Vec<u32>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if exponents.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} exponents for a {rows}x{cols} array", exponents.len())));
        }
        let phases = Phases::new(q, exponents)?;
        let entries = phases.exponents.iter().map(|&k| root_of_unity(q, k)).collect();
        Ok(Array2D { rows, cols, entries, phases: Some(phases) })
    }

    pub fn from_complex(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} array", entries.len())));
        }
        check_unimodular(&entries)?;
        let phases = detect_phases(&entries);
        Ok(Array2D { rows, cols, entries, phases })
    }

    /// Builds from rows written in `+ - j J` notation.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let seqs = rows.iter().map(|r| Sequence::parse_symbols(r)).collect::<Result<Vec<_>>>()?;
        let cols = seqs.first().map(Sequence::len).ok_or(Error::Empty)?;
        if seqs.iter().any(|s| s.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = seqs.iter().flat_map(|s| s.entries().iter().copied()).collect();
        Array2D::from_complex(seqs.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn phases(&self) -> Option<&Phases> {
        self.phases.as_ref()
    }

    pub fn phase_order(&self) -> Option<u32> {
        self.phases.as_ref().map(Phases::order)
    }

    pub fn to_gaussian(&self) -> Option<Vec<Gaussian>> {
        self.phases.as_ref()?.gaussian()
    }

    /// Column `j` as a length-`rows` sequence.
    pub fn column(&self, j: usize) -> Sequence {
        let entries = (0..self.rows).map(|i| self.get(i, j)).collect();
        let phases = self
            .phases
            .as_ref()
            .map(|p| Phases { q: p.q, exponents: (0..self.rows).map(|i| p.exponents[i * self.cols + j]).collect() });
        Sequence { entries, phases }
    }

    pub fn row(&self, i: usize) -> Sequence {
        let range = i * self.cols..(i + 1) * self.cols;
        Sequence {
            entries: self.entries[range.clone()].to_vec(),
            phases: self.phases.as_ref().map(|p| Phases { q: p.q, exponents: p.exponents[range].to_vec() }),
        }
    }

    pub fn transpose(&self) -> Array2D {
        let (rows, cols) = (self.cols, self.rows);
        let idx = |i: usize, j: usize| j * self.cols + i;
        let entries =
            (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| self.entries[idx(i, j)]).collect();
        let phases = self.phases.as_ref().map(|p| Phases {
            q: p.q,
            exponents: (0..rows)
                .flat_map(|i| (0..cols).map(move |j| (i, j)))
                .map(|(i, j)| p.exponents[idx(i, j)])
                .collect(),
        });
        Array2D { rows, cols, entries, phases }
    }

    /// Copy with entry `(i, j)` multiplied by -1.
    pub fn with_flipped_sign(&self, i: usize, j: usize) -> Array2D {
        let mut out = self.clone();
        let at = i * self.cols + j;
        out.entries[at] = -out.entries[at];
        if let Some(p) = out.phases.as_mut() {
            if p.q % 2 == 0 {
                p.exponents[at] = (p.exponents[at] + p.q / 2) % p.q;
            } else {
                out.phases = None;
            }
        }
        out
    }

    pub fn to_symbol_rows(&self) -> Vec<String> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| entry_symbol(self.get(i, j))).collect()).collect()
    }
}
