use std::path::Path;

use zcaq::format::{Body, CatalogRecord, Document};
use zcaq::{search_zcp, SearchSpec, SeedPair};

use crate::output::Printer;
use crate::{exit, Failure, OrExit};

pub fn run(out: &Printer, spec: &SearchSpec, include_builtin: bool, path: &Path) -> Result<(), Failure> {
    let found = search_zcp(spec).or_exit(exit::PARSE)?;
    if found.is_empty() {
        return Err(Failure::new(
            exit::EMPTY_SEARCH,
            format!("no {} pairs of length {} with zone >= {}", spec.alphabet, spec.length, spec.min_z),
        ));
    }
    for p in &found {
        out.line(format!("{} {} {} z={}", p.name, p.a, p.b, p.claimed_z));
    }
    let mut entries = Vec::new();
    if include_builtin {
        entries.extend(super::catalog()?.entries().iter().map(SeedPair::to_record));
    }
    entries.extend(found.iter().map(SeedPair::to_record));
    Document::new(Body::Catalog(CatalogRecord { entries })).write(path).or_exit(1)?;
    out.line(format!("{} pairs written to {}", found.len(), path.display()));
    out.summary("search", &[("count", found.len().to_string()), ("out", path.display().to_string())]);
    Ok(())
}
