//! Seed pairs: stored Golay and Z-complementary pairs, Golay pair
//! composition, admissible GCP lengths and the sidelobe signatures of the
//! three ZCP families used as seeds.
//!
//! The built-in catalog is the JSON file `data/catalog.json`. Every entry is
//! re-verified on load; a mismatch between the stored pair and its claimed
//! kind or zone width aborts loading, except for entries marked
//! `substitutable`, which are replaced by a composed Golay pair of the same
//! length with a warning.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::correlation::{max_zcz_width, verify_gcp, ComplementarySum1D, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::format::{common_order, encode_sequence, Body, CatalogRecord, Document, FamilyRecord, PairRecord};
use crate::sequence::Sequence;

/// Environment variable naming an alternative catalog file.
pub const CATALOG_ENV: &str = "ZCAQ_CATALOG";

/// Lengths of the stored base Golay pairs (3 is quaternary, the rest binary).
pub const BASE_GCP_LENGTHS: [usize; 5] = [1, 2, 3, 10, 26];

const BUILTIN_CATALOG: &str = include_str!("../data/catalog.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    Gcp,
    Zcp,
}

/// ZCP families with a known sidelobe signature.
///
/// - `Liu` (parameter `n`): length `3·2^n`, zone `2^{n+1}`, sidelobe sum
///   `±2^{n+1}` at `τ = 2^{n+1}` only.
/// - `Avik` (parameter `N`, even): length `2N+2`, zone `3N/2+1`, sums `±4`
///   for `3N/2 < τ ≤ 2N`.
/// - `Xie` (parameter `n`): length `14·2^n`, zone `2^{n+3}`, sums `±2^{n+2}`
///   at `τ = 2^{n+3} + l·2^{n+1}`, `l = 0, 1, 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedFamily {
    Liu,
    Avik,
    Xie,
}

impl SeedFamily {
    pub const ALL: [SeedFamily; 3] = [SeedFamily::Liu, SeedFamily::Avik, SeedFamily::Xie];

    pub fn name(self) -> &'static str {
        match self {
            SeedFamily::Liu => "liu",
            SeedFamily::Avik => "avik",
            SeedFamily::Xie => "xie",
        }
    }

    fn check_param(self, param: u32) -> Result<()> {
        let ok = match self {
            SeedFamily::Liu | SeedFamily::Xie => param <= 24,
            SeedFamily::Avik => param >= 2 && param.is_multiple_of(2) && param <= 1 << 24,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFamilyParam(format!("{} with parameter {param}", self.name())))
        }
    }

    /// Sequence length for a family parameter.
    pub fn length(self, param: u32) -> Result<usize> {
        self.check_param(param)?;
        Ok(match self {
            SeedFamily::Liu => 3 << param,
            SeedFamily::Avik => 2 * param as usize + 2,
            SeedFamily::Xie => 14 << param,
        })
    }

    /// Zone width `Z` for a family parameter.
    pub fn zone(self, param: u32) -> Result<usize> {
        self.check_param(param)?;
        Ok(match self {
            SeedFamily::Liu => 2 << param,
            SeedFamily::Avik => 3 * param as usize / 2 + 1,
            SeedFamily::Xie => 8 << param,
        })
    }

    /// The parameter that produces sequences of length `len`, if any.
    pub fn param_for_length(self, len: usize) -> Option<u32> {
        match self {
            SeedFamily::Liu | SeedFamily::Xie => {
                let unit = if self == SeedFamily::Liu { 3 } else { 14 };
                (len.is_multiple_of(unit) && (len / unit).is_power_of_two()).then(|| (len / unit).trailing_zeros())
            }
            SeedFamily::Avik => {
                let n = len.checked_sub(2)? / 2;
                (len.is_multiple_of(2) && n >= 2 && n % 2 == 0).then_some(n as u32)
            }
        }
    }

    /// `|ρ_a(τ) + ρ_b(τ)|` required by the family at shift `1 ≤ τ < L`.
    pub fn sidelobe_magnitude(self, param: u32, tau: usize) -> u64 {
        match self {
            SeedFamily::Liu => {
                let z = 2usize << param;
                if tau == z {
                    z as u64
                } else {
                    0
                }
            }
            SeedFamily::Avik => {
                let n = param as usize;
                if tau > 3 * n / 2 && tau <= 2 * n {
                    4
                } else {
                    0
                }
            }
            SeedFamily::Xie => {
                let base = 8usize << param;
                let step = 2usize << param;
                let hit = (0..3).any(|l| tau == base + l * step);
                if hit {
                    4u64 << param
                } else {
                    0
                }
            }
        }
    }
}

impl fmt::Display for SeedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeedFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SeedFamily::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidFamilyParam(format!("unknown family '{s}'")))
    }
}

/// A named Golay or Z-complementary pair.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedPair {
    pub name: String,
    pub kind: PairKind,
    pub a: Sequence,
    pub b: Sequence,
    /// Zone width; equals the length for a Golay pair.
    pub claimed_z: usize,
    pub provenance: String,
    pub family: Option<(SeedFamily, u32)>,
}

impl SeedPair {
    /// A verified Golay pair.
    pub fn gcp(name: impl Into<String>, a: Sequence, b: Sequence, provenance: impl Into<String>) -> Result<Self> {
        if !verify_gcp(&a, &b, DEFAULT_TOL)? {
            return Err(Error::NotGcp(format!("{} / {}", a, b)));
        }
        let claimed_z = a.len();
        Ok(SeedPair {
            name: name.into(),
            kind: PairKind::Gcp,
            a,
            b,
            claimed_z,
            provenance: provenance.into(),
            family: None,
        })
    }

    /// A pair tagged with its measured zone width; a full-width zone makes it a Golay pair.
    pub fn measured(name: impl Into<String>, a: Sequence, b: Sequence, provenance: impl Into<String>) -> Result<Self> {
        let z = max_zcz_width(&a, &b, DEFAULT_TOL)?;
        let kind = if z == a.len() { PairKind::Gcp } else { PairKind::Zcp };
        Ok(SeedPair { name: name.into(), kind, a, b, claimed_z: z, provenance: provenance.into(), family: None })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn phase_order(&self) -> Option<u32> {
        common_order([self.a.phase_order(), self.b.phase_order()])
    }

    pub fn is_binary(&self) -> bool {
        self.a.is_binary() && self.b.is_binary()
    }

    /// Re-derives kind and zone width from the sequences.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Error::Transcription { name: self.name.clone(), reason };
        let measured = max_zcz_width(&self.a, &self.b, DEFAULT_TOL).map_err(|e| fail(e.to_string()))?;
        match self.kind {
            PairKind::Gcp => {
                if !verify_gcp(&self.a, &self.b, DEFAULT_TOL)? {
                    return Err(fail(format!("not a Golay pair: first nonzero sidelobe sum at shift {measured}")));
                }
                if self.claimed_z != self.len() {
                    return Err(fail(format!("Golay pair claims zone {}", self.claimed_z)));
                }
            }
            PairKind::Zcp => {
                if measured != self.claimed_z {
                    return Err(fail(format!("claimed zone width {} but measured {measured}", self.claimed_z)));
                }
            }
        }
        if let Some((family, param)) = self.family {
            if !signature_check(self, family)? || family.param_for_length(self.len()) != Some(param) {
                return Err(fail(format!("sidelobe sums do not match the {family} signature")));
            }
        }
        Ok(())
    }

    pub fn to_record(&self) -> PairRecord {
        let q = self.phase_order();
        PairRecord {
            name: Some(self.name.clone()),
            pair_kind: Some(self.kind),
            q,
            a: encode_sequence(&self.a, q),
            b: encode_sequence(&self.b, q),
            claimed_z: Some(self.claimed_z),
            provenance: Some(self.provenance.clone()),
            family: self.family.map(|(family, param)| FamilyRecord { family, param }),
            substitutable: false,
        }
    }

    /// Converts a file record, deriving kind and zone width when absent.
    pub fn from_record(record: &PairRecord, fallback_name: &str) -> Result<Self> {
        let (a, b) = record.sequences()?;
        let name = record.name.clone().unwrap_or_else(|| fallback_name.to_string());
        let provenance = record.provenance.clone().unwrap_or_default();
        let mut pair = SeedPair::measured(name, a, b, provenance)?;
        if let Some(kind) = record.pair_kind {
            pair.kind = kind;
        }
        if let Some(z) = record.claimed_z {
            pair.claimed_z = z;
        }
        pair.family = record.family.as_ref().map(|f| (f.family, f.param));
        Ok(pair)
    }
}

/// Alphabet for GCP length admissibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Binary,
    Complex,
}

/// Exponents of 2, 3, 5, 11, 13 in `n`, or `None` if another prime divides it.
fn small_prime_exponents(mut n: usize) -> Option<[u32; 5]> {
    let mut exps = [0u32; 5];
    for (slot, p) in [2usize, 3, 5, 11, 13].into_iter().enumerate() {
        while n.is_multiple_of(p) {
            n /= p;
            exps[slot] += 1;
        }
    }
    (n == 1).then_some(exps)
}

/// Whether a Golay pair of length `n` is known to exist over the alphabet.
///
/// Binary: `n = 2^α 10^β 26^γ` (with `n = 1` admitted as the empty product).
/// Complex: `n = 2^{a+u} 3^b 5^c 11^d 13^e` with `u - c ≤ e` and
/// `b + c + d + e ≤ a + 1 + 2u` for some split of the power of two.
pub fn gcp_length_admissible(n: usize, alphabet: Alphabet) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidLength(n));
    }
    let Some([p2, p3, p5, p11, p13]) = small_prime_exponents(n) else {
        return Ok(false);
    };
    Ok(match alphabet {
        // β = p5, γ = p13, α = p2 - β - γ must be nonnegative.
        Alphabet::Binary => p3 == 0 && p11 == 0 && p2 >= p5 + p13,
        Alphabet::Complex => {
            // Larger u only relaxes the second inequality, so take it maximal.
            let u = p2.min(p5 + p13);
            p3 + p5 + p11 + p13 <= p2 + 1 + u
        }
    })
}

/// `(x ‖ y, x ‖ -y)`, a Golay pair of twice the length.
pub fn golay_double(p: &SeedPair) -> Result<SeedPair> {
    if !verify_gcp(&p.a, &p.b, DEFAULT_TOL)? {
        return Err(Error::NotGcp(format!("'{}' cannot be doubled", p.name)));
    }
    let a = p.a.concat(&p.b);
    let b = p.a.concat(&p.b.negate());
    let out = SeedPair::gcp(format!("gcp_{}", a.len()), a, b, format!("golay_double({})", p.name))?;
    Ok(out)
}

/// Turyn's product of binary Golay pairs of lengths `M` and `N`, giving length `M·N`.
///
/// With `(a, b) = p`, `(c, d) = q`, `c' = (c+d)/2`, `d' = (c-d)/2`:
/// `e[iN+k] = a_i c'_k + b_i d'_k` and `f[iN+k] = -b_{M-1-i} c'_k + a_{M-1-i} d'_k`.
pub fn turyn_product(p: &SeedPair, q: &SeedPair) -> Result<SeedPair> {
    for s in [p, q] {
        if !s.is_binary() {
            return Err(Error::NotBinary(format!("'{}' is not a binary pair", s.name)));
        }
        if !verify_gcp(&s.a, &s.b, DEFAULT_TOL)? {
            return Err(Error::NotGcp(format!("'{}' is not a Golay pair", s.name)));
        }
    }
    let sign = |s: &Sequence| -> Vec<i32> { s.entries().iter().map(|e| e.re as i32).collect() };
    let (a, b, c, d) = (sign(&p.a), sign(&p.b), sign(&q.a), sign(&q.b));
    let (m, n) = (a.len(), c.len());
    let half_sum: Vec<i32> = c.iter().zip(&d).map(|(c, d)| (c + d) / 2).collect();
    let half_diff: Vec<i32> = c.iter().zip(&d).map(|(c, d)| (c - d) / 2).collect();
    let mut e = Vec::with_capacity(m * n);
    let mut f = Vec::with_capacity(m * n);
    for i in 0..m {
        for k in 0..n {
            e.push(a[i] * half_sum[k] + b[i] * half_diff[k]);
            f.push(-b[m - 1 - i] * half_sum[k] + a[m - 1 - i] * half_diff[k]);
        }
    }
    let to_seq = |v: Vec<i32>| Sequence::from_exponents(2, v.into_iter().map(|s| u32::from(s < 0)).collect());
    SeedPair::gcp(format!("gcp_{}", m * n), to_seq(e)?, to_seq(f)?, format!("turyn_product({}, {})", p.name, q.name))
}

/// True iff `ρ_a(τ) + ρ_b(τ)` matches the family signature exactly for `1 ≤ τ < L`.
pub fn signature_check(p: &SeedPair, family: SeedFamily) -> Result<bool> {
    let len = p.len();
    let param = family.param_for_length(len).ok_or(Error::FamilyMismatch { family: family.name(), length: len })?;
    let sum = ComplementarySum1D::pair(&p.a, &p.b)?;
    if !sum.exact {
        return Err(Error::NoExactPath(format!("signature check of '{}'", p.name)));
    }
    let matches = sum.sidelobes().all(|(tau, v)| {
        let want = family.sidelobe_magnitude(param, tau as usize) as f64;
        v.im == 0.0 && v.re.abs() == want
    });
    Ok(matches)
}

/// Collection of verified seed pairs.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<SeedPair>,
    warnings: Vec<String>,
}

impl Catalog {
    /// The catalog compiled into the library.
    pub fn builtin() -> &'static Catalog {
        static BUILTIN: OnceLock<Catalog> = OnceLock::new();
        BUILTIN.get_or_init(|| Catalog::from_json(BUILTIN_CATALOG).expect("built-in catalog must validate"))
    }

    /// The file named by `ZCAQ_CATALOG`, or the built-in catalog.
    pub fn from_env() -> Result<Catalog> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) => Catalog::load(path),
            None => Ok(Catalog::builtin().clone()),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Catalog> {
        Catalog::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        let doc = Document::from_json(text)?;
        let records = match doc.body {
            Body::Catalog(c) => c.entries,
            Body::Pair(p) => vec![p],
            Body::Quad(_) => return Err(Error::Format("expected a catalog document".into())),
        };
        Catalog::from_records(&records)
    }

    fn from_records(records: &[PairRecord]) -> Result<Catalog> {
        let mut catalog = Catalog::default();
        let mut deferred = Vec::new();
        for (i, record) in records.iter().enumerate() {
            let pair = SeedPair::from_record(record, &format!("entry_{i}")).map_err(|e| Error::Transcription {
                name: record.name.clone().unwrap_or_else(|| format!("entry_{i}")),
                reason: e.to_string(),
            })?;
            match pair.validate() {
                Ok(()) => catalog.entries.push(pair),
                Err(err) if record.substitutable && pair.kind == PairKind::Gcp => {
                    deferred.push((catalog.entries.len(), pair, err));
                }
                Err(err) => return Err(err),
            }
        }
        // Substitutes are composed from the entries that did validate.
        for (slot, pair, err) in deferred.into_iter().rev() {
            let mut generated = catalog.compose_gcp(pair.len())?;
            generated.name = pair.name.clone();
            catalog.warnings.push(format!("{err}; substituted {} generated by {}", pair.name, generated.provenance));
            catalog.entries.insert(slot, generated);
        }
        Ok(catalog)
    }

    pub fn entries(&self) -> &[SeedPair] {
        &self.entries
    }

    /// Load-time substitutions.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    /// Adds already verified pairs (for example search output).
    pub fn extend(&mut self, pairs: impl IntoIterator<Item = SeedPair>) {
        self.entries.extend(pairs);
    }

    pub fn get(&self, name: &str) -> Result<&SeedPair> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::UnknownSeed { name: name.to_string(), available: self.names().join(", ") })
    }

    /// Any named entry; ZCP seeds and Golay pairs (Z = L) are both valid seeds.
    pub fn seed_zcp(&self, name: &str) -> Result<SeedPair> {
        self.get(name).cloned()
    }

    /// The stored base Golay pair of the given length.
    pub fn base_gcp(&self, length: usize) -> Result<SeedPair> {
        let unsupported =
            || Error::UnsupportedLength { length, detail: format!("stored base lengths are {BASE_GCP_LENGTHS:?}") };
        if !BASE_GCP_LENGTHS.contains(&length) {
            return Err(unsupported());
        }
        self.get(&format!("gcp_{length}")).cloned().map_err(|_| unsupported())
    }

    /// A stored Golay pair of this length, else one composed from base pairs.
    pub fn gcp_for_length(&self, length: usize) -> Result<SeedPair> {
        if let Some(stored) = self.entries.iter().find(|e| e.kind == PairKind::Gcp && e.len() == length) {
            return Ok(stored.clone());
        }
        self.compose_gcp(length)
    }

    /// Builds a Golay pair of `length` from base pairs by Turyn products and doubling.
    ///
    /// Binary lengths `2^α 10^β 26^γ` use the length-10 and length-26 pairs
    /// followed by doublings; lengths `3·2^k` double the quaternary length-3 pair.
    pub fn compose_gcp(&self, length: usize) -> Result<SeedPair> {
        let unsupported = |detail: &str| Error::UnsupportedLength { length, detail: detail.to_string() };
        if length == 0 {
            return Err(Error::InvalidLength(0));
        }
        let exps = small_prime_exponents(length)
            .ok_or_else(|| unsupported("length has a prime factor other than 2, 3, 5, 11, 13"))?;
        let [p2, p3, p5, p11, p13] = exps;
        let (mut pair, doublings) = if p3 == 0 && p11 == 0 && p2 >= p5 + p13 {
            let alpha = p2 - p5 - p13;
            let mut acc: Option<SeedPair> = None;
            let factors = std::iter::repeat_n(10, p5 as usize).chain(std::iter::repeat_n(26, p13 as usize));
            for f in factors {
                let base = self.base_gcp(f)?;
                acc = Some(match acc {
                    None => base,
                    Some(prev) => turyn_product(&prev, &base)?,
                });
            }
            match acc {
                Some(p) => (p, alpha),
                None if alpha == 0 => (self.base_gcp(1)?, 0),
                None => (self.base_gcp(2)?, alpha - 1),
            }
        } else if p3 == 1 && p5 == 0 && p11 == 0 && p13 == 0 {
            (self.base_gcp(3)?, p2)
        } else {
            return Err(unsupported("no composition from the base pairs reaches this length"));
        };
        for _ in 0..doublings {
            pair = golay_double(&pair)?;
        }
        pair.name = format!("gcp_{length}");
        Ok(pair)
    }

    pub fn to_document(&self) -> Document {
        Document::new(Body::Catalog(CatalogRecord { entries: self.entries.iter().map(SeedPair::to_record).collect() }))
    }
}

/// Stored base Golay pair from the built-in catalog.
pub fn base_gcp(length: usize) -> Result<SeedPair> {
    Catalog::builtin().base_gcp(length)
}

/// Named seed from the built-in catalog.
pub fn seed_zcp(name: &str) -> Result<SeedPair> {
    Catalog::builtin().seed_zcp(name)
}
