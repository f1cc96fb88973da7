use std::path::Path;

use zcaq::correlation::{ComplementarySum1D, ComplementarySum2D};
use zcaq::format::{Body, PairRecord, QuadRecord};
use zcaq::{PairKind, SeedPair, Zone};

use crate::output::{real, Printer};
use crate::{exit, Failure, OrExit};

pub fn run(out: &Printer, path: &Path, tol: f64) -> Result<(), Failure> {
    let passed = match super::read_document(path)?.body {
        Body::Pair(record) => verify_pair(out, &record, tol)?,
        Body::Catalog(catalog) => verify_catalog(out, &catalog.entries),
        Body::Quad(record) => verify_quad(out, &record, tol)?,
    };
    if passed {
        Ok(())
    } else {
        Err(Failure::new(exit::VERIFY_FAILED, format!("{} failed verification", path.display())))
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn kind_name(kind: PairKind) -> &'static str {
    match kind {
        PairKind::Gcp => "gcp",
        PairKind::Zcp => "zcp",
    }
}

fn verify_pair(out: &Printer, record: &PairRecord, tol: f64) -> Result<bool, Failure> {
    let (a, b) = record.sequences().or_exit(exit::PARSE)?;
    let len = a.len();
    let sum = ComplementarySum1D::pair(&a, &b).or_exit(exit::PARSE)?;
    let z = sum.zone_width(tol);
    let kind = if z == len { PairKind::Gcp } else { PairKind::Zcp };
    let mut pass = true;
    if record.pair_kind == Some(PairKind::Gcp) && kind != PairKind::Gcp {
        pass = false;
    }
    if let Some(claimed) = record.claimed_z {
        pass &= z >= claimed;
    }
    out.line(format!("kind: {} (length {len})", kind_name(kind)));
    out.line(format!("zone width: {z}"));
    if let Some(claimed) = record.claimed_z {
        out.line(format!("claimed zone width: {claimed}"));
    }
    if z < len && !pass {
        out.line(format!("first nonzero sum: shift {z}, value {}", sum.at(z as isize)));
    }
    out.line(format!("result: {}", verdict(pass)));
    out.summary(
        "pair",
        &[
            ("kind", kind_name(kind).into()),
            ("length", len.to_string()),
            ("zone", z.to_string()),
            ("result", verdict(pass).into()),
        ],
    );
    Ok(pass)
}

fn verify_catalog(out: &Printer, records: &[PairRecord]) -> bool {
    let mut failures = 0;
    for (i, record) in records.iter().enumerate() {
        let checked = SeedPair::from_record(record, &format!("entry_{i}")).and_then(|p| {
            p.validate()?;
            Ok(p)
        });
        match checked {
            Ok(p) => {
                out.line(format!("{}: {} length {} zone {}: pass", p.name, kind_name(p.kind), p.len(), p.claimed_z))
            }
            Err(e) => {
                failures += 1;
                out.line(format!("{}: fail: {e}", record.name.as_deref().unwrap_or("?")));
            }
        }
    }
    let pass = failures == 0;
    out.line(format!("result: {} ({} entries, {failures} failed)", verdict(pass), records.len()));
    out.summary(
        "catalog",
        &[("entries", records.len().to_string()), ("failed", failures.to_string()), ("result", verdict(pass).into())],
    );
    pass
}

fn verify_quad(out: &Printer, record: &QuadRecord, tol: f64) -> Result<bool, Failure> {
    let quad = record.to_quad().or_exit(exit::PARSE)?;
    let (rows, cols) = quad.dims();
    let sum = ComplementarySum2D::of_quad(&quad);
    let zone = sum.max_zone(tol);
    let peak = sum.at(0, 0);
    let expected = (4 * rows * cols) as f64;
    let mut pass = (peak.re - expected).abs() <= tol && peak.im.abs() <= tol;
    if let Some(claimed) = record.metadata.peak {
        pass &= (claimed - peak.re).abs() <= tol;
    }
    if let Some(q) = record.metadata.phase_count {
        pass &= quad.phase_order().is_some_and(|p| q % p == 0);
    }
    let violation = quad.claimed_zone().and_then(|z| sum.first_violation(z, tol));
    pass &= violation.is_none();

    let q = quad.phase_order().map_or_else(|| "none".to_string(), |q| q.to_string());
    out.line(format!("kind: quad {rows}x{cols}, q = {q}"));
    out.line(format!("measured zone: {zone}"));
    out.line(format!("peak: {}", real(peak.re)));
    match quad.claimed_zone() {
        Some(z) => out.line(format!("claimed zone: {z}")),
        None => out.line("claimed zone: none"),
    }
    if let Some((t1, t2)) = violation {
        out.line(format!("first violation: shift ({t1}, {t2}), |sum| = {}", real(sum.at(t1, t2).norm())));
    }
    out.line(format!("result: {}", verdict(pass)));
    let show = |z: Option<Zone>| z.map_or_else(|| "none".to_string(), |z| format!("{},{}", z.z1, z.z2));
    out.summary(
        "quad",
        &[
            ("dims", format!("{rows}x{cols}")),
            ("zone", show(Some(zone))),
            ("peak", real(peak.re)),
            ("claimed", show(quad.claimed_zone())),
            ("violation", violation.map_or_else(|| "none".to_string(), |(a, b)| format!("{a},{b}"))),
            ("result", verdict(pass).into()),
        ],
    );
    Ok(pass)
}
