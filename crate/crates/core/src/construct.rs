//! Quad construction from a Golay pair and a Z-complementary pair.

use crate::catalog::SeedPair;
use crate::correlation::{max_zcz_width, verify_gcp, ComplementarySum1D, ComplementarySum2D, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::quad::{Quad, Zone};
use crate::sequence::{lcm, Array2D, Sequence};

/// Seeds for one quad: a Golay pair `(x, y)` of length `N` and a ZCP
/// `(a, b)` of length `L`. The quad is `L × N` with zone at least `(Z, N)`.
#[derive(Clone, Debug)]
pub struct QuadRecipe {
    gcp: SeedPair,
    zcp: SeedPair,
}

impl QuadRecipe {
    pub fn new(gcp: SeedPair, zcp: SeedPair) -> Result<Self> {
        if !verify_gcp(&gcp.a, &gcp.b, DEFAULT_TOL)? {
            return Err(Error::InvalidRecipe(format!("'{}' is not a Golay pair", gcp.name)));
        }
        let z = max_zcz_width(&zcp.a, &zcp.b, DEFAULT_TOL)?;
        if z < zcp.claimed_z {
            return Err(Error::InvalidRecipe(format!("'{}' claims zone {} but measures {z}", zcp.name, zcp.claimed_z)));
        }
        Ok(QuadRecipe { gcp, zcp })
    }

    pub fn gcp(&self) -> &SeedPair {
        &self.gcp
    }

    pub fn zcp(&self) -> &SeedPair {
        &self.zcp
    }

    /// `(L, N)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.zcp.len(), self.gcp.len())
    }

    /// `(Z, N)`.
    pub fn claimed_zone(&self) -> Zone {
        Zone::new(self.zcp.claimed_z, self.gcp.len())
    }

    /// Number of phases `lcm(q0, q1)` of the seeds.
    pub fn phase_count(&self) -> Result<u32> {
        let missing = |p: &SeedPair| Error::MissingPhaseOrder(format!("seed '{}'", p.name));
        let q0 = self.gcp.phase_order().ok_or_else(|| missing(&self.gcp))?;
        let q1 = self.zcp.phase_order().ok_or_else(|| missing(&self.zcp))?;
        Ok(phase_count(q0, q1))
    }
}

pub fn phase_count(q0: u32, q1: u32) -> u32 {
    lcm(q0, q1)
}

/// `sign · col_i · row_j` for all `i, j`, with exact exponents when both carry phases.
fn outer(col: &Sequence, row: &Sequence, negate: bool) -> Result<Array2D> {
    let (rows, cols) = (col.len(), row.len());
    if let (Some(pc), Some(pr)) = (col.phases(), row.phases()) {
        let base = lcm(pc.order(), pr.order());
        let q = if negate { lcm(base, 2) } else { base };
        let (ec, er) = (pc.lifted(q).unwrap(), pr.lifted(q).unwrap());
        let shift = if negate { q / 2 } else { 0 };
        let exps = ec.iter().flat_map(|&ki| er.iter().map(move |&kj| (ki + kj + shift) % q)).collect();
        return Array2D::from_exponents(q, rows, cols, exps);
    }
    let sign = if negate { -1.0 } else { 1.0 };
    let entries = col.entries().iter().flat_map(|ci| row.entries().iter().map(move |rj| ci * rj * sign)).collect();
    Array2D::from_complex(rows, cols, entries)
}

/// Builds the four arrays
/// `X1 = a xᵀ`, `X2 = b yᵀ`, `X3 = -a ỹᵀ`, `X4 = b x̃ᵀ`
/// where `~` is conjugate-reversal, and checks the resulting zone.
pub fn build_quad(recipe: &QuadRecipe) -> Result<Quad> {
    let (x, y) = (&recipe.gcp.a, &recipe.gcp.b);
    let (a, b) = (&recipe.zcp.a, &recipe.zcp.b);
    let arrays = [
        outer(a, x, false)?,
        outer(b, y, false)?,
        outer(a, &y.conj_reverse(), true)?,
        outer(b, &x.conj_reverse(), false)?,
    ];
    // Bring all four to one phase order so files carry a single q.
    let arrays = unify_orders(arrays)?;
    let quad = Quad::new(arrays, None).map_err(|e| Error::InvalidRecipe(e.to_string()))?;
    let claimed = recipe.claimed_zone();
    if let Some(violation) = ComplementarySum2D::of_quad(&quad).first_violation(claimed, DEFAULT_TOL) {
        return Err(Error::InvalidRecipe(format!("zone {claimed} violated at shift {violation:?}")));
    }
    quad.with_claimed_zone(Some(claimed))
}

fn unify_orders(arrays: [Array2D; 4]) -> Result<[Array2D; 4]> {
    let orders: Option<Vec<u32>> = arrays.iter().map(Array2D::phase_order).collect();
    let Some(orders) = orders else { return Ok(arrays) };
    let q = orders.into_iter().fold(1, lcm);
    let lifted: Vec<Array2D> = arrays
        .iter()
        .map(|a| {
            let exps = a.phases().unwrap().lifted(q).unwrap();
            Array2D::from_exponents(q, a.rows(), a.cols(), exps)
        })
        .collect::<Result<_>>()?;
    Ok(lifted.try_into().expect("four arrays"))
}

/// Checks `Σ_m ρ_{X_m}(τ1, τ2) = 0` for `τ2 ≠ 0` and
/// `= 2N (ρ_a(τ1) + ρ_b(τ1))` for `τ2 = 0`, over every shift.
pub fn quad_correlation_residue(quad: &Quad, zcp: &SeedPair) -> Result<bool> {
    let (rows, cols) = quad.dims();
    if rows != zcp.len() {
        return Err(Error::DimensionMismatch(format!(
            "quad has {rows} rows but seed '{}' has length {}",
            zcp.name,
            zcp.len()
        )));
    }
    let surface = ComplementarySum2D::of_quad(quad);
    let seed = ComplementarySum1D::pair(&zcp.a, &zcp.b)?;
    let exact = surface.exact && seed.exact;
    let scale = 2.0 * cols as f64;
    let tol = DEFAULT_TOL * scale;
    let holds = surface.profile.iter().all(|((t1, t2), value)| {
        let expected = if t2 == 0 { seed.at(t1) * scale } else { Default::default() };
        if exact {
            value == expected
        } else {
            (value - expected).norm() <= tol
        }
    });
    Ok(holds)
}
