//! Two-dimensional Z-complementary array quads.
//!
//! A quad is built from a Golay complementary pair `(x, y)` of length `N`
//! and a Z-complementary pair `(a, b)` of length `L` and zone width `Z`:
//!
//! ```text
//! X1[i][j] =  a_i · x_j          X2[i][j] = b_i · y_j
//! X3[i][j] = -a_i · conj(y_{N-1-j})   X4[i][j] = b_i · conj(x_{N-1-j})
//! ```
//!
//! The four `L × N` arrays have vanishing 2D auto-correlation sums inside a
//! `Z × N` zone, and every column is a unimodular multiple of `a` or `b`, so
//! the column PMEPR is bounded by the sidelobe sums of the seed ZCP alone.
//!
//! Modules:
//! - [`correlation`]: 1D/2D aperiodic correlation and complementary checks
//! - [`catalog`]: seed pairs, admissible lengths, Golay pair composition
//! - [`construct`]: quad construction and its correlation identity
//! - [`pmepr`]: OFDM column envelopes, measured PMEPR and analytic bounds
//! - [`search`]: exhaustive meet-in-the-middle ZCP search
//! - [`format`]: JSON interchange files and number formatting

pub mod catalog;
pub mod construct;
pub mod correlation;
pub mod error;
pub mod format;
pub mod pmepr;
pub mod quad;
pub mod search;
pub mod sequence;

mod par;

pub use catalog::{Alphabet, Catalog, PairKind, SeedFamily, SeedPair};
pub use construct::{build_quad, QuadRecipe};
pub use correlation::{max_zcz_width, verify_gcp, verify_zcaq, ZcaqReport, DEFAULT_TOL};
pub use error::{Error, Result};
pub use pmepr::PmeprReport;
pub use quad::{Quad, Zone};
pub use search::{search_zcp, SearchAlphabet, SearchSpec};
pub use sequence::{Array2D, Gaussian, Sequence};

pub use num_complex::Complex64;
