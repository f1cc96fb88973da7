//! Exhaustive search for small binary and quaternary ZCPs.
//!
//! Every sequence is reduced to its sidelobe vector `ρ(1..Z-1)`. A pair is a
//! `(Z)`-ZCP exactly when the two vectors are negatives of each other, so the
//! search sorts all sequences by a linear hash of the vector and looks up
//! `-hash(a)` for each `a` (meet in the middle) instead of testing pairs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::catalog::SeedPair;
use crate::error::{Error, Result};
use crate::par;
use crate::sequence::{lcm, Sequence};

pub const BINARY_CAP: usize = 24;
pub const QUATERNARY_CAP: usize = 12;

/// `a` sequences handled per work item.
const CHUNK: u64 = 1 << 14;
/// Work items per round when a result limit is set.
const ROUND: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchAlphabet {
    Binary,
    Quaternary,
}

impl SearchAlphabet {
    pub fn phase_order(self) -> u32 {
        match self {
            SearchAlphabet::Binary => 2,
            SearchAlphabet::Quaternary => 4,
        }
    }

    pub fn cap(self) -> usize {
        match self {
            SearchAlphabet::Binary => BINARY_CAP,
            SearchAlphabet::Quaternary => QUATERNARY_CAP,
        }
    }
}

impl fmt::Display for SearchAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchAlphabet::Binary => "binary",
            SearchAlphabet::Quaternary => "quaternary",
        })
    }
}

impl FromStr for SearchAlphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" | "2" => Ok(SearchAlphabet::Binary),
            "quaternary" | "4" => Ok(SearchAlphabet::Quaternary),
            other => Err(Error::InvalidSearch(format!("unknown alphabet '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub length: usize,
    pub min_z: usize,
    pub alphabet: SearchAlphabet,
    /// Report one canonical representative per symmetry class.
    pub dedupe: bool,
    pub limit: Option<usize>,
}

impl SearchSpec {
    pub fn new(length: usize, min_z: usize, alphabet: SearchAlphabet) -> Self {
        SearchSpec { length, min_z, alphabet, dedupe: true, limit: None }
    }

    pub fn binary(length: usize, min_z: usize) -> Self {
        Self::new(length, min_z, SearchAlphabet::Binary)
    }

    pub fn validate(&self) -> Result<()> {
        let cap = self.alphabet.cap();
        if self.length > cap {
            return Err(Error::SearchSpaceTooLarge(format!(
                "{} length {} exceeds the cap of {cap}",
                self.alphabet, self.length
            )));
        }
        if self.length < 2 {
            return Err(Error::InvalidSearch(format!("length {} is below 2", self.length)));
        }
        if self.min_z < 2 || self.min_z > self.length {
            return Err(Error::InvalidSearch(format!("min zone {} outside 2..={}", self.min_z, self.length)));
        }
        if self.limit == Some(0) {
            return Err(Error::InvalidSearch("limit must be positive".into()));
        }
        Ok(())
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Sidelobes of one sequence: `(re, im)` at shifts `1..min_z`.
type Lobes = [(i32, i32); BINARY_CAP];

struct Kernel {
    alphabet: SearchAlphabet,
    len: usize,
    /// Number of shifts checked, `min_z - 1`.
    shifts: usize,
    keys: Vec<(u64, u64)>,
}

impl Kernel {
    fn new(spec: &SearchSpec) -> Self {
        let shifts = spec.min_z - 1;
        let keys = (0..shifts as u64).map(|t| (splitmix64(2 * t) | 1, splitmix64(2 * t + 1) | 1)).collect();
        Kernel { alphabet: spec.alphabet, len: spec.length, shifts, keys }
    }

    /// Sequences whose first entry is `+1` (binary) or `1`/`-j` (quaternary);
    /// negation maps every sequence into this half.
    fn space(&self) -> u64 {
        match self.alphabet {
            SearchAlphabet::Binary => 1 << (self.len - 1),
            SearchAlphabet::Quaternary => 1 << (2 * self.len - 1),
        }
    }

    /// Code of the `idx`-th normalised sequence. Binary codes hold exponent
    /// `i` in bit `i`; quaternary codes hold it in bits `2i, 2i+1`.
    fn code(&self, idx: u64) -> u32 {
        match self.alphabet {
            SearchAlphabet::Binary => (idx << 1) as u32,
            SearchAlphabet::Quaternary => (((idx >> 1) << 2) | (idx & 1)) as u32,
        }
    }

    fn exponents(&self, code: u32) -> Vec<u8> {
        match self.alphabet {
            SearchAlphabet::Binary => (0..self.len).map(|i| ((code >> i) & 1) as u8).collect(),
            SearchAlphabet::Quaternary => (0..self.len).map(|i| ((code >> (2 * i)) & 3) as u8).collect(),
        }
    }

    fn lobes(&self, code: u32, out: &mut Lobes) {
        let len = self.len;
        match self.alphabet {
            SearchAlphabet::Binary => {
                for t in 1..=self.shifts {
                    let overlap = len - t;
                    let mask = (1u32 << overlap) - 1;
                    let flips = ((code ^ (code >> t)) & mask).count_ones() as i32;
                    out[t - 1] = (overlap as i32 - 2 * flips, 0);
                }
            }
            SearchAlphabet::Quaternary => {
                let (mut lo, mut hi) = (0u32, 0u32);
                for i in 0..len {
                    lo |= ((code >> (2 * i)) & 1) << i;
                    hi |= ((code >> (2 * i + 1)) & 1) << i;
                }
                for t in 1..=self.shifts {
                    let mask = (1u32 << (len - t)) - 1;
                    let (l1, h1, l2, h2) = (lo, hi, lo >> t, hi >> t);
                    // Exponent difference k_i - k_{i+t} mod 4, bit-sliced.
                    let dl = l1 ^ l2;
                    let dh = h1 ^ h2 ^ (!l1 & l2);
                    let count = |m: u32| (m & mask).count_ones() as i32;
                    let n0 = count(!dl & !dh);
                    let n1 = count(dl & !dh);
                    let n2 = count(!dl & dh);
                    let n3 = count(dl & dh);
                    out[t - 1] = (n0 - n2, n3 - n1);
                }
            }
        }
    }

    fn hash(&self, lobes: &Lobes) -> u64 {
        self.keys.iter().zip(lobes).fold(0u64, |h, (&(kr, ki), &(re, im))| {
            h.wrapping_add(kr.wrapping_mul(re as i64 as u64)).wrapping_add(ki.wrapping_mul(im as i64 as u64))
        })
    }
}

/// Sorted `(hash, code)` pairs with a directory on the top hash bits.
struct Table {
    entries: Vec<(u64, u32)>,
    bits: u32,
    starts: Vec<usize>,
}

impl Table {
    fn build(kernel: &Kernel) -> Self {
        let chunks: Vec<u64> = (0..kernel.space().div_ceil(CHUNK)).collect();
        let parts = par::map(&chunks, |&c| {
            let mut lobes = [(0, 0); BINARY_CAP];
            let end = ((c + 1) * CHUNK).min(kernel.space());
            (c * CHUNK..end)
                .map(|idx| {
                    let code = kernel.code(idx);
                    kernel.lobes(code, &mut lobes);
                    (kernel.hash(&lobes), code)
                })
                .collect::<Vec<_>>()
        });
        let mut entries: Vec<(u64, u32)> = parts.concat();
        entries.sort_unstable();
        let bits = (entries.len().max(2).ilog2()).clamp(1, 24);
        let mut starts = Vec::with_capacity((1 << bits) + 1);
        let mut i = 0;
        for bucket in 0..(1u64 << bits) {
            while i < entries.len() && (entries[i].0 >> (64 - bits)) < bucket {
                i += 1;
            }
            starts.push(i);
        }
        starts.push(entries.len());
        Table { entries, bits, starts }
    }

    fn matches(&self, hash: u64) -> impl Iterator<Item = u32> + '_ {
        let bucket = (hash >> (64 - self.bits)) as usize;
        let slice = &self.entries[self.starts[bucket]..self.starts[bucket + 1]];
        let from = slice.partition_point(|e| e.0 < hash);
        slice[from..].iter().take_while(move |e| e.0 == hash).map(|e| e.1)
    }
}

type Key = (Vec<u8>, Vec<u8>);

fn join_chunk(kernel: &Kernel, table: &Table, chunk: u64) -> Vec<(u32, u32)> {
    let mut la = [(0, 0); BINARY_CAP];
    let mut lb = [(0, 0); BINARY_CAP];
    let mut found = Vec::new();
    let end = ((chunk + 1) * CHUNK).min(kernel.space());
    for idx in chunk * CHUNK..end {
        let a = kernel.code(idx);
        kernel.lobes(a, &mut la);
        for b in table.matches(kernel.hash(&la).wrapping_neg()) {
            kernel.lobes(b, &mut lb);
            let cancels =
                la[..kernel.shifts].iter().zip(&lb[..kernel.shifts]).all(|(x, y)| x.0 + y.0 == 0 && x.1 + y.1 == 0);
            if cancels {
                found.push((a, b));
            }
        }
    }
    found
}

fn negate(q: u8, s: &[u8]) -> Vec<u8> {
    s.iter().map(|&k| (k + q / 2) % q).collect()
}

fn conjugate(q: u8, s: &[u8]) -> Vec<u8> {
    s.iter().map(|&k| (q - k) % q).collect()
}

fn reversed(s: &[u8]) -> Vec<u8> {
    s.iter().rev().copied().collect()
}

/// All images of `(a, b)` under negating either sequence, reversing both,
/// conjugating both and swapping.
fn orbit(q: u8, a: &[u8], b: &[u8]) -> BTreeSet<Key> {
    let mut out = BTreeSet::new();
    for swap in [false, true] {
        let (x, y) = if swap { (b, a) } else { (a, b) };
        for rev in [false, true] {
            let (x, y) = if rev { (reversed(x), reversed(y)) } else { (x.to_vec(), y.to_vec()) };
            for conj in [false, true] {
                let (x, y) = if conj { (conjugate(q, &x), conjugate(q, &y)) } else { (x.clone(), y.clone()) };
                for na in [false, true] {
                    for nb in [false, true] {
                        let x = if na { negate(q, &x) } else { x.clone() };
                        let y = if nb { negate(q, &y) } else { y.clone() };
                        out.insert((x, y));
                    }
                }
            }
        }
    }
    out
}

fn canonical_key(q: u8, a: &[u8], b: &[u8]) -> Key {
    orbit(q, a, b).into_iter().next().expect("orbit contains the pair")
}

/// Lexicographically least exponent encoding of `(a, b)` under the symmetry
/// group of [`orbit`]. Both sequences must carry an even phase order.
pub fn canonicalize(a: &Sequence, b: &Sequence) -> Result<(Sequence, Sequence)> {
    let (pa, pb) = match (a.phases(), b.phases()) {
        (Some(pa), Some(pb)) => (pa, pb),
        _ => return Err(Error::InvalidSearch("canonical form needs PSK sequences".into())),
    };
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!("lengths {} and {}", a.len(), b.len())));
    }
    let q = lcm(lcm(pa.order(), pb.order()), 2);
    if q > u8::MAX as u32 {
        return Err(Error::InvalidPhaseOrder(q));
    }
    let lift = |s: &crate::sequence::Phases| -> Vec<u8> {
        s.lifted(q).expect("q is a multiple").into_iter().map(|k| k as u8).collect()
    };
    let (ka, kb) = canonical_key(q as u8, &lift(pa), &lift(pb));
    Ok((to_sequence(q, &ka)?, to_sequence(q, &kb)?))
}

fn to_sequence(q: u32, exps: &[u8]) -> Result<Sequence> {
    Sequence::from_exponents(q, exps.iter().map(|&k| k as u32).collect())
}

/// All pairs of the given alphabet and length whose zone width is at least
/// `min_z`, ordered by exponent encoding (`a` first, then `b`).
///
/// With `dedupe` one canonical representative per symmetry class is
/// returned, otherwise every pair. With `limit` the search scans `a` in code
/// order and stops once that many results are known; the first `limit` of
/// those, in output order, are returned.
pub fn search_zcp(spec: &SearchSpec) -> Result<Vec<SeedPair>> {
    spec.validate()?;
    let kernel = Kernel::new(spec);
    let table = Table::build(&kernel);
    let q = spec.alphabet.phase_order() as u8;
    let chunks: Vec<u64> = (0..kernel.space().div_ceil(CHUNK)).collect();
    let mut keys: BTreeSet<Key> = BTreeSet::new();
    let rounds: Vec<&[u64]> = match spec.limit {
        Some(_) => chunks.chunks(ROUND).collect(),
        None => vec![&chunks[..]],
    };
    for round in rounds {
        for hits in par::map(round, |&c| join_chunk(&kernel, &table, c)) {
            for (a, b) in hits {
                let (ea, eb) = (kernel.exponents(a), kernel.exponents(b));
                if spec.dedupe {
                    keys.insert(canonical_key(q, &ea, &eb));
                } else {
                    keys.extend(orbit(q, &ea, &eb));
                }
            }
        }
        if spec.limit.is_some_and(|k| keys.len() >= k) {
            break;
        }
    }
    let take = spec.limit.unwrap_or(usize::MAX);
    let tag = match spec.alphabet {
        SearchAlphabet::Binary => 'b',
        SearchAlphabet::Quaternary => 'q',
    };
    keys.into_iter()
        .take(take)
        .enumerate()
        .map(|(i, (ka, kb))| {
            let name = format!("search_{tag}{}_{}_{}", spec.length, spec.min_z, i + 1);
            let provenance =
                format!("exhaustive {} search, length {}, zone at least {}", spec.alphabet, spec.length, spec.min_z);
            let pair = SeedPair::measured(name, to_sequence(q as u32, &ka)?, to_sequence(q as u32, &kb)?, provenance)?;
            if pair.claimed_z < spec.min_z {
                return Err(Error::InvalidSearch(format!(
                    "internal: {} measures zone {} < {}",
                    pair.name, pair.claimed_z, spec.min_z
                )));
            }
            Ok(pair)
        })
        .collect()
}

/// Whether a binary Golay pair of length `length` exists, by exhaustive search.
pub fn exists_binary_gcp(length: usize) -> Result<bool> {
    if length == 0 || length > BINARY_CAP {
        return Err(Error::InvalidLength(length));
    }
    if length == 1 {
        return Ok(true);
    }
    let spec = SearchSpec { limit: Some(1), ..SearchSpec::binary(length, length) };
    Ok(!search_zcp(&spec)?.is_empty())
}
