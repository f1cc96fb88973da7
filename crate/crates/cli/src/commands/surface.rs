use std::path::Path;

use zcaq::correlation::ComplementarySum2D;

use crate::output::{real, write_csv, Printer};

/// Rows are `τ1`, columns `τ2`, both over the full signed range.
pub fn run(out: &Printer, path: &Path, csv: &Path) -> Result<(), crate::Failure> {
    let (quad, _) = super::read_quad(path)?;
    let sum = ComplementarySum2D::of_quad(&quad);
    let (m1, m2) = sum.profile.max_shifts();
    let mut header = vec!["tau1\\tau2".to_string()];
    header.extend((-m2..=m2).map(|t| t.to_string()));
    let rows = (-m1..=m1).map(|t1| {
        let mut row = vec![t1.to_string()];
        row.extend((-m2..=m2).map(|t2| real(sum.at(t1, t2).norm())));
        row
    });
    write_csv(csv, &header, rows)?;
    let peak = sum.at(0, 0).norm();
    out.line(format!("surface {}x{} shifts, peak {}, wrote {}", 2 * m1 + 1, 2 * m2 + 1, real(peak), csv.display()));
    out.summary(
        "surface",
        &[
            ("shifts", format!("{}x{}", 2 * m1 + 1, 2 * m2 + 1)),
            ("peak", real(peak)),
            ("out", csv.display().to_string()),
        ],
    );
    Ok(())
}
