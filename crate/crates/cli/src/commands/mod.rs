pub mod gen_quad;
pub mod pmepr;
pub mod search;
pub mod surface;
pub mod verify;

use std::path::Path;

use zcaq::format::{Body, Document};
use zcaq::{Catalog, Quad};

use crate::{exit, Failure, OrExit};

pub fn read_document(path: &Path) -> Result<Document, Failure> {
    Document::read(path).map_err(|e| Failure::new(exit::PARSE, format!("{}: {e}", path.display())))
}

pub fn read_quad(path: &Path) -> Result<(Quad, zcaq::format::QuadRecord), Failure> {
    match read_document(path)?.body {
        Body::Quad(record) => {
            let quad = record.to_quad().or_exit(exit::PARSE)?;
            Ok((quad, record))
        }
        _ => Err(Failure::new(exit::PARSE, format!("{}: expected a quad document", path.display()))),
    }
}

/// The catalog named by `ZCAQ_CATALOG`, else the built-in one.
pub fn catalog() -> Result<Catalog, Failure> {
    let catalog = Catalog::from_env().or_exit(exit::PARSE)?;
    for warning in catalog.warnings() {
        eprintln!("warning: {warning}");
    }
    Ok(catalog)
}
