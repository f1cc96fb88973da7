use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::Array2D;

/// Rectangular zero-correlation zone: the complementary sum vanishes for
/// `|τ1| < z1`, `|τ2| < z2`, `(τ1, τ2) ≠ (0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zone {
    pub z1: usize,
    pub z2: usize,
}

impl Zone {
    pub const fn new(z1: usize, z2: usize) -> Self {
        Zone { z1, z2 }
    }

    /// True when `other` lies inside this zone.
    pub fn covers(&self, other: Zone) -> bool {
        self.z1 >= other.z1 && self.z2 >= other.z2
    }

    pub fn area(&self) -> usize {
        self.z1 * self.z2
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z1, self.z2)
    }
}

/// Four distinct equal-size arrays with an optional claimed zone.
#[derive(Clone, Debug, PartialEq)]
pub struct Quad {
    arrays: [Array2D; 4],
    claimed_zone: Option<Zone>,
}

impl Quad {
    pub fn new(arrays: [Array2D; 4], claimed_zone: Option<Zone>) -> Result<Self> {
        let dims = arrays[0].dims();
        if let Some((m, a)) = arrays.iter().enumerate().find(|(_, a)| a.dims() != dims) {
            return Err(Error::MalformedQuad(format!(
                "array X{} is {}x{}, expected {}x{}",
                m + 1,
                a.rows(),
                a.cols(),
                dims.0,
                dims.1
            )));
        }
        for m in 0..4 {
            for n in m + 1..4 {
                if arrays[m].entries() == arrays[n].entries() {
                    return Err(Error::MalformedQuad(format!("arrays X{} and X{} coincide", m + 1, n + 1)));
                }
            }
        }
        if let Some(zone) = claimed_zone {
            if zone.z1 == 0 || zone.z2 == 0 || zone.z1 > dims.0 || zone.z2 > dims.1 {
                return Err(Error::MalformedQuad(format!(
                    "claimed zone {zone} outside 1..={} x 1..={}",
                    dims.0, dims.1
                )));
            }
        }
        Ok(Quad { arrays, claimed_zone })
    }

    pub fn arrays(&self) -> &[Array2D; 4] {
        &self.arrays
    }

    pub fn dims(&self) -> (usize, usize) {
        self.arrays[0].dims()
    }

    pub fn claimed_zone(&self) -> Option<Zone> {
        self.claimed_zone
    }

    pub fn with_claimed_zone(self, zone: Option<Zone>) -> Result<Self> {
        Quad::new(self.arrays, zone)
    }

    /// Phase order shared by all four arrays, if each carries one.
    pub fn phase_order(&self) -> Option<u32> {
        self.arrays.iter().map(Array2D::phase_order).try_fold(1, |acc, q| q.map(|q| crate::sequence::lcm(acc, q)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Array2D;

    fn cell(sym: &str) -> Array2D {
        Array2D::parse_rows(&[sym]).unwrap()
    }

    #[test]
    fn rejects_identical_arrays() {
        let err = Quad::new([cell("+"), cell("+"), cell("+"), cell("+")], None);
        assert!(matches!(err, Err(Error::MalformedQuad(_))));
    }

    #[test]
    fn accepts_distinct_one_by_one() {
        let quad = Quad::new([cell("+"), cell("-"), cell("j"), cell("J")], None).unwrap();
        assert_eq!(quad.dims(), (1, 1));
        assert_eq!(quad.phase_order(), Some(4));
    }

    #[test]
    fn rejects_mixed_dims_and_bad_zone() {
        let wide = Array2D::parse_rows(&["++"]).unwrap();
        assert!(Quad::new([cell("+"), cell("-"), cell("j"), wide], None).is_err());
        let z = Some(Zone::new(2, 1));
        assert!(Quad::new([cell("+"), cell("-"), cell("j"), cell("J")], z).is_err());
    }
}
