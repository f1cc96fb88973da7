use std::path::Path;

use zcaq::format::{Body, Document, QuadMetadata, QuadRecord};
use zcaq::{build_quad, Catalog, PairKind, QuadRecipe, SeedPair};

use crate::output::{real, Printer};
use crate::{exit, Failure, OrExit};

fn resolve_gcp(catalog: &Catalog, spec: &str) -> Result<SeedPair, Failure> {
    if let Ok(length) = spec.parse::<usize>() {
        return catalog.gcp_for_length(length).or_exit(exit::PARSE);
    }
    let pair = catalog.get(spec).or_exit(exit::PARSE)?;
    if pair.kind != PairKind::Gcp {
        return Err(Failure::new(
            exit::INCOMPATIBLE,
            format!("'{spec}' is a zone-{} pair, not a Golay pair", pair.claimed_z),
        ));
    }
    Ok(pair.clone())
}

pub fn run(out: &Printer, gcp: &str, zcp: &str, path: &Path, transpose: bool) -> Result<(), Failure> {
    let catalog = super::catalog()?;
    let gcp = resolve_gcp(&catalog, gcp)?;
    let zcp = catalog.seed_zcp(zcp).or_exit(exit::PARSE)?;
    let recipe = QuadRecipe::new(gcp, zcp).or_exit(exit::INCOMPATIBLE)?;
    let quad = build_quad(&recipe).or_exit(exit::INCOMPATIBLE)?;
    let (rows, cols) = quad.dims();
    let zone = recipe.claimed_zone();
    let peak = (4 * rows * cols) as f64;
    let metadata = QuadMetadata {
        zone: Some([zone.z1, zone.z2]),
        peak: Some(peak),
        phase_count: quad.phase_order(),
        gcp: Some(recipe.gcp().name.clone()),
        zcp: Some(recipe.zcp().name.clone()),
        gcp_provenance: Some(recipe.gcp().provenance.clone()),
        zcp_provenance: Some(recipe.zcp().provenance.clone()),
    };
    let q = quad.phase_order().map_or_else(|| "none".to_string(), |q| q.to_string());
    Document::new(Body::Quad(QuadRecord::from_quad(&quad, transpose, metadata))).write(path).or_exit(1)?;
    out.line(format!(
        "quad {rows}x{cols} from {} and {}: zone {zone}, peak {}, q = {q}",
        recipe.gcp().name,
        recipe.zcp().name,
        real(peak)
    ));
    out.line(format!("wrote {}", path.display()));
    out.summary(
        "quad",
        &[
            ("dims", format!("{rows}x{cols}")),
            ("zone", format!("{},{}", zone.z1, zone.z2)),
            ("peak", real(peak)),
            ("q", q),
            ("out", path.display().to_string()),
        ],
    );
    Ok(())
}
