//! Aperiodic correlation in one and two dimensions, and the complementary
//! checks built on it (Golay pairs, Z-complementary pairs, array quads).
//!
//! Three evaluation routes exist: exact Gaussian-integer summation for
//! entries in `{±1, ±j}`, direct floating-point summation, and zero-padded
//! FFT correlation for longer inputs. The public `xcorr_*` entry points pick
//! the exact route whenever both operands allow it.

use std::ops::{Add, AddAssign, Mul};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::quad::{Quad, Zone};
use crate::sequence::{Array2D, Gaussian, Sequence};

/// Default magnitude below which a correlation value counts as zero.
pub const DEFAULT_TOL: f64 = 1e-6;

const FFT_MIN_LEN: usize = 64;
const FFT_MIN_CELLS: usize = 256;

/// Element types the direct summation runs over.
pub trait CorrelationScalar: Copy + Default + Add<Output = Self> + AddAssign + Mul<Output = Self> {
    fn conjugate(self) -> Self;
}

impl CorrelationScalar for Complex64 {
    fn conjugate(self) -> Self {
        self.conj()
    }
}

impl CorrelationScalar for Gaussian {
    fn conjugate(self) -> Self {
        self.conj()
    }
}

/// Correlation values for every signed shift `τ ∈ [-(N-1), N-1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile1D<T> {
    len: usize,
    values: Vec<T>,
}

impl<T: Copy> Profile1D<T> {
    fn from_values(len: usize, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), 2 * len - 1);
        Profile1D { len, values }
    }

    /// Length `N` of the correlated sequences.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn max_shift(&self) -> isize {
        self.len as isize - 1
    }

    pub fn get(&self, shift: isize) -> Option<T> {
        let idx = shift + self.max_shift();
        (idx >= 0).then(|| self.values.get(idx as usize).copied()).flatten()
    }

    /// Value at `shift`. Panics when `|shift| ≥ N`.
    pub fn at(&self, shift: isize) -> T {
        self.get(shift).unwrap_or_else(|| panic!("shift {shift} outside ±{}", self.max_shift()))
    }

    /// Values ordered from shift `-(N-1)` to `N-1`.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (isize, T)> + '_ {
        let offset = self.max_shift();
        self.values.iter().enumerate().map(move |(i, v)| (i as isize - offset, *v))
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> Profile1D<U> {
        Profile1D { len: self.len, values: self.values.iter().map(|v| f(*v)).collect() }
    }
}

impl<T: Copy + AddAssign> Profile1D<T> {
    fn accumulate(&mut self, other: &Profile1D<T>) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += *b;
        }
    }
}

/// Correlation values for every `(τ1, τ2)` with `|τ1| < rows`, `|τ2| < cols`.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile2D<T> {
    rows: usize,
    cols: usize,
    values: Vec<T>,
}

impl<T: Copy> Profile2D<T> {
    fn width(&self) -> usize {
        2 * self.cols - 1
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn max_shifts(&self) -> (isize, isize) {
        (self.rows as isize - 1, self.cols as isize - 1)
    }

    pub fn get(&self, t1: isize, t2: isize) -> Option<T> {
        let (m1, m2) = self.max_shifts();
        if t1.abs() > m1 || t2.abs() > m2 {
            return None;
        }
        let idx = (t1 + m1) as usize * self.width() + (t2 + m2) as usize;
        Some(self.values[idx])
    }

    /// Value at `(t1, t2)`. Panics when out of range.
    pub fn at(&self, t1: isize, t2: isize) -> T {
        self.get(t1, t2).unwrap_or_else(|| panic!("shift ({t1}, {t2}) outside the profile"))
    }

    /// Row-major values, `τ1` outer from `-(rows-1)`, `τ2` inner from `-(cols-1)`.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = ((isize, isize), T)> + '_ {
        let (m1, m2) = self.max_shifts();
        let w = self.width();
        self.values.iter().enumerate().map(move |(i, v)| (((i / w) as isize - m1, (i % w) as isize - m2), *v))
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> Profile2D<U> {
        Profile2D { rows: self.rows, cols: self.cols, values: self.values.iter().map(|v| f(*v)).collect() }
    }
}

impl<T: Copy + AddAssign> Profile2D<T> {
    fn accumulate(&mut self, other: &Profile2D<T>) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += *b;
        }
    }
}

fn check_same_len(x: &Sequence, y: &Sequence) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!("sequence lengths {} and {}", x.len(), y.len())));
    }
    Ok(())
}

fn check_same_dims(x: &Array2D, y: &Array2D) -> Result<()> {
    if x.dims() != y.dims() {
        return Err(Error::DimensionMismatch(format!(
            "array sizes {}x{} and {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(())
}

/// `Σ_j x_j conj(y_{j+τ})` over in-range indices, for every signed `τ`.
pub fn direct_1d<T: CorrelationScalar>(x: &[T], y: &[T]) -> Vec<T> {
    let n = x.len() as isize;
    (-(n - 1)..n)
        .map(|tau| {
            let lo = (-tau).max(0);
            let hi = (n - tau).min(n);
            let mut acc = T::default();
            for j in lo..hi {
                acc += x[j as usize] * y[(j + tau) as usize].conjugate();
            }
            acc
        })
        .collect()
}

/// 2D analogue of [`direct_1d`] on row-major `rows × cols` data.
pub fn direct_2d<T: CorrelationScalar>(x: &[T], y: &[T], rows: usize, cols: usize) -> Vec<T> {
    let (r, c) = (rows as isize, cols as isize);
    let mut out = Vec::with_capacity((2 * rows - 1) * (2 * cols - 1));
    for t1 in -(r - 1)..r {
        let (i_lo, i_hi) = ((-t1).max(0), (r - t1).min(r));
        for t2 in -(c - 1)..c {
            let (j_lo, j_hi) = ((-t2).max(0), (c - t2).min(c));
            let mut acc = T::default();
            for i in i_lo..i_hi {
                let xr = &x[i as usize * cols..];
                let yr = &y[(i + t1) as usize * cols..];
                for j in j_lo..j_hi {
                    acc += xr[j as usize] * yr[(j + t2) as usize].conjugate();
                }
            }
            out.push(acc);
        }
    }
    out
}

/// Floating-point direct summation.
pub fn xcorr_1d_direct(x: &Sequence, y: &Sequence) -> Result<Profile1D<Complex64>> {
    check_same_len(x, y)?;
    Ok(Profile1D::from_values(x.len(), direct_1d(x.entries(), y.entries())))
}

/// Zero-padded FFT correlation; no wrap-around since the transform length is at least `2N-1`.
pub fn xcorr_1d_fft(x: &Sequence, y: &Sequence) -> Result<Profile1D<Complex64>> {
    check_same_len(x, y)?;
    let n = x.len();
    let m = (2 * n - 1).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(m);
    let inverse = planner.plan_fft_inverse(m);

    let pad = |s: &Sequence| {
        let mut buf = vec![Complex64::default(); m];
        buf[..n].copy_from_slice(s.entries());
        buf
    };
    let (mut xs, mut ys) = (pad(x), pad(y));
    forward.process(&mut xs);
    forward.process(&mut ys);
    // IFFT(Y · conj X)[τ] = Σ_j conj(x_j) y_{j+τ}, the conjugate of the wanted value.
    let mut prod: Vec<Complex64> = ys.iter().zip(&xs).map(|(yk, xk)| yk * xk.conj()).collect();
    inverse.process(&mut prod);
    let scale = 1.0 / m as f64;
    let values =
        (-(n as isize - 1)..n as isize).map(|tau| (prod[tau.rem_euclid(m as isize) as usize] * scale).conj()).collect();
    Ok(Profile1D::from_values(n, values))
}

/// Exact Gaussian-integer correlation; both operands need phase order dividing 4.
pub fn xcorr_1d_exact(x: &Sequence, y: &Sequence) -> Result<Profile1D<Gaussian>> {
    check_same_len(x, y)?;
    let (gx, gy) = match (x.to_gaussian(), y.to_gaussian()) {
        (Some(gx), Some(gy)) => (gx, gy),
        _ => return Err(Error::NoExactPath("sequence".into())),
    };
    Ok(Profile1D::from_values(x.len(), direct_1d(&gx, &gy)))
}

/// Aperiodic cross-correlation `ρ_{x,y}(τ)` for all signed shifts.
pub fn xcorr_1d(x: &Sequence, y: &Sequence) -> Result<Profile1D<Complex64>> {
    check_same_len(x, y)?;
    if let Ok(exact) = xcorr_1d_exact(x, y) {
        return Ok(exact.map(Gaussian::to_complex));
    }
    if x.len() >= FFT_MIN_LEN {
        xcorr_1d_fft(x, y)
    } else {
        xcorr_1d_direct(x, y)
    }
}

pub fn autocorr_1d(x: &Sequence) -> Profile1D<Complex64> {
    xcorr_1d(x, x).expect("equal lengths")
}

pub fn xcorr_2d_direct(x: &Array2D, y: &Array2D) -> Result<Profile2D<Complex64>> {
    check_same_dims(x, y)?;
    let (rows, cols) = x.dims();
    Ok(Profile2D { rows, cols, values: direct_2d(x.entries(), y.entries(), rows, cols) })
}

fn fft_2d(buf: &mut [Complex64], m1: usize, m2: usize, planner: &mut FftPlanner<f64>, inverse: bool) {
    let (row_fft, col_fft) = if inverse {
        (planner.plan_fft_inverse(m2), planner.plan_fft_inverse(m1))
    } else {
        (planner.plan_fft_forward(m2), planner.plan_fft_forward(m1))
    };
    for row in buf.chunks_exact_mut(m2) {
        row_fft.process(row);
    }
    let mut column = vec![Complex64::default(); m1];
    for j in 0..m2 {
        for i in 0..m1 {
            column[i] = buf[i * m2 + j];
        }
        col_fft.process(&mut column);
        for i in 0..m1 {
            buf[i * m2 + j] = column[i];
        }
    }
}

pub fn xcorr_2d_fft(x: &Array2D, y: &Array2D) -> Result<Profile2D<Complex64>> {
    check_same_dims(x, y)?;
    let (rows, cols) = x.dims();
    let m1 = (2 * rows - 1).next_power_of_two();
    let m2 = (2 * cols - 1).next_power_of_two();
    let pad = |a: &Array2D| {
        let mut buf = vec![Complex64::default(); m1 * m2];
        for i in 0..rows {
            buf[i * m2..i * m2 + cols].copy_from_slice(&a.entries()[i * cols..(i + 1) * cols]);
        }
        buf
    };
    let mut planner = FftPlanner::<f64>::new();
    let (mut xs, mut ys) = (pad(x), pad(y));
    fft_2d(&mut xs, m1, m2, &mut planner, false);
    fft_2d(&mut ys, m1, m2, &mut planner, false);
    let mut prod: Vec<Complex64> = ys.iter().zip(&xs).map(|(yk, xk)| yk * xk.conj()).collect();
    fft_2d(&mut prod, m1, m2, &mut planner, true);
    let scale = 1.0 / (m1 * m2) as f64;
    let (r, c) = (rows as isize, cols as isize);
    let mut values = Vec::with_capacity((2 * rows - 1) * (2 * cols - 1));
    for t1 in -(r - 1)..r {
        let i = t1.rem_euclid(m1 as isize) as usize;
        for t2 in -(c - 1)..c {
            let j = t2.rem_euclid(m2 as isize) as usize;
            values.push((prod[i * m2 + j] * scale).conj());
        }
    }
    Ok(Profile2D { rows, cols, values })
}

pub fn xcorr_2d_exact(x: &Array2D, y: &Array2D) -> Result<Profile2D<Gaussian>> {
    check_same_dims(x, y)?;
    let (gx, gy) = match (x.to_gaussian(), y.to_gaussian()) {
        (Some(gx), Some(gy)) => (gx, gy),
        _ => return Err(Error::NoExactPath("array".into())),
    };
    let (rows, cols) = x.dims();
    Ok(Profile2D { rows, cols, values: direct_2d(&gx, &gy, rows, cols) })
}

/// 2D aperiodic cross-correlation `ρ_{X,Y}(τ1, τ2)` over all four shift quadrants.
pub fn xcorr_2d(x: &Array2D, y: &Array2D) -> Result<Profile2D<Complex64>> {
    check_same_dims(x, y)?;
    if let Ok(exact) = xcorr_2d_exact(x, y) {
        return Ok(exact.map(Gaussian::to_complex));
    }
    if x.rows() * x.cols() >= FFT_MIN_CELLS {
        xcorr_2d_fft(x, y)
    } else {
        xcorr_2d_direct(x, y)
    }
}

pub fn autocorr_2d(x: &Array2D) -> Profile2D<Complex64> {
    xcorr_2d(x, x).expect("equal dims")
}

fn vanishes(value: Complex64, exact: bool, tol: f64) -> bool {
    if exact {
        value == Complex64::default()
    } else {
        value.norm() <= tol
    }
}

/// Sum of the auto-correlations of several sequences.
///
/// `exact` records whether the values came from integer arithmetic, in which
/// case "vanishes" means exactly zero regardless of the tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplementarySum1D {
    pub profile: Profile1D<Complex64>,
    pub exact: bool,
}

impl ComplementarySum1D {
    pub fn new(seqs: &[&Sequence]) -> Result<Self> {
        let first = seqs.first().ok_or(Error::Empty)?;
        for s in seqs {
            check_same_len(first, s)?;
        }
        let exact_parts: Option<Vec<_>> = seqs.iter().map(|s| xcorr_1d_exact(s, s).ok()).collect();
        if let Some(parts) = exact_parts {
            let mut total = parts[0].clone();
            for p in &parts[1..] {
                total.accumulate(p);
            }
            return Ok(ComplementarySum1D { profile: total.map(Gaussian::to_complex), exact: true });
        }
        let mut total = autocorr_1d(first);
        for s in &seqs[1..] {
            total.accumulate(&autocorr_1d(s));
        }
        Ok(ComplementarySum1D { profile: total, exact: false })
    }

    pub fn pair(x: &Sequence, y: &Sequence) -> Result<Self> {
        ComplementarySum1D::new(&[x, y])
    }

    pub fn at(&self, shift: isize) -> Complex64 {
        self.profile.at(shift)
    }

    pub fn vanishes_at(&self, shift: isize, tol: f64) -> bool {
        vanishes(self.at(shift), self.exact, tol)
    }

    /// Number of nonnegative shifts `0 ≤ τ < Z` before the first nonzero off-peak value.
    pub fn zone_width(&self, tol: f64) -> usize {
        let n = self.profile.len();
        (1..n).find(|&t| !self.vanishes_at(t as isize, tol)).unwrap_or(n)
    }

    /// Sidelobe sums `τ = 1..N-1`.
    pub fn sidelobes(&self) -> impl Iterator<Item = (isize, Complex64)> + '_ {
        self.profile.iter().filter(|(t, _)| *t > 0)
    }
}

/// Golay pair test: peak `2N` and vanishing sums at every nonzero shift.
pub fn verify_gcp(x: &Sequence, y: &Sequence, tol: f64) -> Result<bool> {
    let sum = ComplementarySum1D::pair(x, y)?;
    let n = x.len();
    let peak_ok = (sum.at(0) - Complex64::new(2.0 * n as f64, 0.0)).norm() <= tol;
    Ok(peak_ok && sum.zone_width(tol) == n)
}

/// Largest `Z ≤ N` with `ρ_x(τ) + ρ_y(τ)` vanishing for `0 < |τ| < Z`.
pub fn max_zcz_width(x: &Sequence, y: &Sequence, tol: f64) -> Result<usize> {
    Ok(ComplementarySum1D::pair(x, y)?.zone_width(tol))
}

/// `Σ_m ρ_{X_m}(τ1, τ2)` for the four arrays of a quad (or any array set).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplementarySum2D {
    pub profile: Profile2D<Complex64>,
    pub exact: bool,
}

impl ComplementarySum2D {
    pub fn new(arrays: &[Array2D]) -> Result<Self> {
        let first = arrays.first().ok_or(Error::Empty)?;
        for a in arrays {
            check_same_dims(first, a)?;
        }
        let exact_parts: Option<Vec<_>> = arrays.iter().map(|a| xcorr_2d_exact(a, a).ok()).collect();
        if let Some(parts) = exact_parts {
            let mut total = parts[0].clone();
            for p in &parts[1..] {
                total.accumulate(p);
            }
            return Ok(ComplementarySum2D { profile: total.map(Gaussian::to_complex), exact: true });
        }
        let mut total = autocorr_2d(first);
        for a in &arrays[1..] {
            total.accumulate(&autocorr_2d(a));
        }
        Ok(ComplementarySum2D { profile: total, exact: false })
    }

    pub fn of_quad(quad: &Quad) -> Self {
        ComplementarySum2D::new(quad.arrays()).expect("quad arrays share dims")
    }

    pub fn at(&self, t1: isize, t2: isize) -> Complex64 {
        self.profile.at(t1, t2)
    }

    pub fn vanishes_at(&self, t1: isize, t2: isize, tol: f64) -> bool {
        vanishes(self.at(t1, t2), self.exact, tol)
    }

    /// First off-peak shift inside `zone` whose sum does not vanish, scanning
    /// `τ1 = 0, 1, ...` outer and `τ2` from most negative inner. Shifts with
    /// `τ1 < 0` mirror those with `τ1 > 0` by conjugate symmetry.
    pub fn first_violation(&self, zone: Zone, tol: f64) -> Option<(isize, isize)> {
        let (z1, z2) = (zone.z1 as isize, zone.z2 as isize);
        for t1 in 0..z1 {
            for t2 in -(z2 - 1)..z2 {
                if (t1, t2) != (0, 0) && !self.vanishes_at(t1, t2, tol) {
                    return Some((t1, t2));
                }
            }
        }
        None
    }

    /// Largest-area rectangular zone; ties go to the wider second dimension.
    pub fn max_zone(&self, tol: f64) -> Zone {
        let (rows, cols) = self.profile.dims();
        let mut best = Zone::new(1, 1);
        // clean[t1]: widest z2 such that row t1 vanishes for all |τ2| < z2 (off-peak).
        let clean: Vec<usize> = (0..rows as isize)
            .map(|t1| {
                (0..cols as isize)
                    .find(|&t2| {
                        let off_peak = |t2: isize| (t1, t2) != (0, 0);
                        (off_peak(t2) && !self.vanishes_at(t1, t2, tol))
                            || (off_peak(-t2) && !self.vanishes_at(t1, -t2, tol))
                    })
                    .unwrap_or(cols as isize) as usize
            })
            .collect();
        for z2 in 1..=cols {
            let z1 = clean.iter().position(|&c| c < z2).unwrap_or(rows);
            let zone = Zone::new(z1, z2);
            if z1 >= 1 && (zone.area(), zone.z2) > (best.area(), best.z2) {
                best = zone;
            }
        }
        best
    }
}

/// Outcome of [`verify_zcaq`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZcaqReport {
    pub zone: Zone,
    /// `Σ_m ρ_{X_m}(0, 0)`; equals `4 · N1 · N2` for unimodular arrays.
    pub peak: f64,
}

/// Measured zero-correlation zone and peak of an array quad.
pub fn verify_zcaq(quad: &Quad, tol: f64) -> Result<ZcaqReport> {
    let sum = ComplementarySum2D::of_quad(quad);
    let (rows, cols) = quad.dims();
    let peak = sum.at(0, 0);
    let expected = 4.0 * (rows * cols) as f64;
    if (peak - Complex64::new(expected, 0.0)).norm() > tol.max(1e-9) {
        return Err(Error::MalformedQuad(format!("peak {peak} differs from {expected}")));
    }
    Ok(ZcaqReport { zone: sum.max_zone(tol), peak: peak.re })
}
