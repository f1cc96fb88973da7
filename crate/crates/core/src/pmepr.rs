//! Column-sequence PMEPR.
//!
//! A length-`L` column `c` drives `L` subcarriers:
//! `S(t) = Σ_i c_i exp(2πi (f_c + i Δf) t)`, `0 ≤ t ≤ 1/Δf`. The subcarrier
//! spacing is normalised to 1 and the carrier offset to 0 (it only rotates
//! `S(t)` by a unit phasor). IEPR is `|S(t)|² / L` and PMEPR its supremum,
//! estimated from below on a uniform grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::catalog::{SeedFamily, SeedPair};
use crate::correlation::ComplementarySum1D;
use crate::error::{Error, Result};
use crate::quad::Quad;
use crate::sequence::Sequence;

pub const DEFAULT_OVERSAMPLE: usize = 64;
pub const MIN_OVERSAMPLE: usize = 4;

/// Slack allowed between a measured PMEPR and its analytic bound.
pub const BOUND_TOL: f64 = 1e-9;

/// `S(t)` with the carrier offset `f_c`.
pub fn baseband_signal_with_carrier(col: &Sequence, t: f64, carrier: f64) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::TimeOutOfRange(t));
    }
    Ok(col
        .entries()
        .iter()
        .enumerate()
        .map(|(i, c)| c * Complex64::from_polar(1.0, 2.0 * PI * (carrier + i as f64) * t))
        .sum())
}

/// `S(t) = Σ_i col_i exp(2πi·i·t)` for `t ∈ [0, 1]`.
pub fn baseband_signal(col: &Sequence, t: f64) -> Result<Complex64> {
    baseband_signal_with_carrier(col, t, 0.0)
}

/// `|S(t_k)|² / L` at `t_k = k / (oversample·L)`, `k = 0 .. oversample·L - 1`,
/// computed with one zero-padded inverse FFT.
fn iepr_on_fft_grid(col: &Sequence, oversample: usize) -> Vec<f64> {
    let len = col.len();
    let m = oversample * len;
    let mut buf = vec![Complex64::default(); m];
    buf[..len].copy_from_slice(col.entries());
    FftPlanner::<f64>::new().plan_fft_inverse(m).process(&mut buf);
    buf.iter().map(|s| s.norm_sqr() / len as f64).collect()
}

fn check_oversample(oversample: usize) -> Result<()> {
    if oversample < MIN_OVERSAMPLE {
        return Err(Error::Undersampled(oversample));
    }
    Ok(())
}

/// Peak IEPR over `oversample·L` equally spaced instants of `[0, 1)`.
///
/// Doubling `oversample` refines the grid, so the estimate never decreases.
pub fn measure_pmepr(col: &Sequence, oversample: usize) -> Result<f64> {
    check_oversample(oversample)?;
    Ok(iepr_on_fft_grid(col, oversample).into_iter().fold(0.0, f64::max))
}

/// Peak IEPR over `points` equally spaced instants covering `[0, 1]`
/// inclusive (step `1/(points-1)`), evaluated directly.
pub fn measure_pmepr_uniform(col: &Sequence, points: usize) -> Result<f64> {
    if points < 2 {
        return Err(Error::Undersampled(points));
    }
    let len = col.len() as f64;
    (0..points)
        .map(|k| baseband_signal(col, k as f64 / (points - 1) as f64).map(|s| s.norm_sqr() / len))
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
}

/// `(t, IEPR(t))` on the grid `t_k = k / (oversample·L)`, `k = 0 ..= oversample·L`.
pub fn iepr_curve(col: &Sequence, oversample: usize) -> Result<Vec<(f64, f64)>> {
    check_oversample(oversample)?;
    let mut values = iepr_on_fft_grid(col, oversample);
    // t = 1 repeats t = 0.
    values.push(values[0]);
    let m = (oversample * col.len()) as f64;
    Ok(values.into_iter().enumerate().map(|(k, v)| (k as f64 / m, v)).collect())
}

/// `2 + (2/L) Σ_{τ=1}^{L-1} |ρ_a(τ) + ρ_b(τ)|`, an upper bound on the PMEPR of either sequence.
pub fn pmepr_bound_pair(p: &SeedPair) -> Result<f64> {
    pmepr_bound(&p.a, &p.b)
}

pub fn pmepr_bound(a: &Sequence, b: &Sequence) -> Result<f64> {
    let sum = ComplementarySum1D::pair(a, b)?;
    let len = a.len() as f64;
    let sidelobes: f64 = sum.sidelobes().map(|(_, v)| v.norm()).sum();
    Ok(2.0 + 2.0 / len * sidelobes)
}

/// Closed-form column PMEPR bound for quads seeded by a family ZCP.
///
/// `liu`: `2 + 4/3`; `avik(N)`: `2 + 4N/(2N+2)`; `xie`: `2 + 12/7`.
pub fn family_bound(family: SeedFamily, param: u32) -> Result<f64> {
    family.length(param)?;
    Ok(match family {
        SeedFamily::Liu => 2.0 + 4.0 / 3.0,
        SeedFamily::Avik => {
            let n = param as f64;
            2.0 + 4.0 * n / (2.0 * n + 2.0)
        }
        SeedFamily::Xie => 2.0 + 12.0 / 7.0,
    })
}

/// Parameter-free ceiling quoted for each family: `10/3`, `4` and `26/7`.
pub fn family_ceiling(family: SeedFamily) -> f64 {
    match family {
        SeedFamily::Liu => 2.0 + 4.0 / 3.0,
        SeedFamily::Avik => 4.0,
        SeedFamily::Xie => 2.0 + 12.0 / 7.0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColumnPmepr {
    /// 0-based array index (0 is `X1`).
    pub array: usize,
    pub column: usize,
    pub pmepr: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PmeprReport {
    /// Ordered by array, then column.
    pub per_column: Vec<ColumnPmepr>,
    pub per_array_max: [f64; 4],
    pub max_pmepr: f64,
    pub analytic_bound: f64,
    pub oversample: usize,
}

impl PmeprReport {
    pub fn columns_of(&self, array: usize) -> impl Iterator<Item = &ColumnPmepr> {
        self.per_column.iter().filter(move |c| c.array == array)
    }
}

/// Measures every column of the four arrays and checks each against the
/// bound of the seed ZCP.
pub fn quad_pmepr_report(quad: &Quad, seed_zcp: &SeedPair, oversample: usize) -> Result<PmeprReport> {
    check_oversample(oversample)?;
    let (rows, cols) = quad.dims();
    if rows != seed_zcp.len() {
        return Err(Error::DimensionMismatch(format!(
            "quad columns have length {rows}, seed '{}' has length {}",
            seed_zcp.name,
            seed_zcp.len()
        )));
    }
    let analytic_bound = pmepr_bound_pair(seed_zcp)?;
    let jobs: Vec<(usize, usize)> = (0..4).flat_map(|m| (0..cols).map(move |j| (m, j))).collect();
    let measured = crate::par::map(&jobs, |&(m, j)| {
        measure_pmepr(&quad.arrays()[m].column(j), oversample).map(|pmepr| ColumnPmepr { array: m, column: j, pmepr })
    });
    let per_column = measured.into_iter().collect::<Result<Vec<_>>>()?;
    let mut per_array_max = [0.0f64; 4];
    for c in &per_column {
        if c.pmepr > analytic_bound + BOUND_TOL {
            return Err(Error::BoundViolated {
                array: c.array + 1,
                column: c.column,
                measured: c.pmepr,
                bound: analytic_bound,
            });
        }
        per_array_max[c.array] = per_array_max[c.array].max(c.pmepr);
    }
    let max_pmepr = per_array_max.iter().copied().fold(0.0, f64::max);
    Ok(PmeprReport { per_column, per_array_max, max_pmepr, analytic_bound, oversample })
}
