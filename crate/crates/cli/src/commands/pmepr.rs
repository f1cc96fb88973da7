use std::path::Path;

use zcaq::format::Body;
use zcaq::pmepr::{iepr_curve, measure_pmepr, pmepr_bound, quad_pmepr_report};
use zcaq::{Error, Quad, SeedPair, Sequence};

use crate::output::{real, write_csv, Printer};
use crate::{exit, Failure, OrExit};

fn pmepr_failure(e: Error) -> Failure {
    let code = match e {
        Error::BoundViolated { .. } => exit::VERIFY_FAILED,
        _ => exit::PARSE,
    };
    Failure::new(code, e.to_string())
}

pub fn run(
    out: &Printer,
    path: &Path,
    oversample: usize,
    csv: Option<&Path>,
    columns: &[String],
) -> Result<(), Failure> {
    let curves = match super::read_document(path)?.body {
        Body::Pair(record) => {
            let (a, b) = record.sequences().or_exit(exit::PARSE)?;
            pair_report(out, &a, &b, oversample)?;
            select_pair(&a, &b, columns)?
        }
        Body::Quad(record) => {
            let quad = record.to_quad().or_exit(exit::PARSE)?;
            quad_report(out, &quad, oversample)?;
            select_columns(&quad, columns)?
        }
        Body::Catalog(_) => {
            return Err(Failure::new(exit::PARSE, format!("{}: expected a pair or quad document", path.display())))
        }
    };
    if let Some(csv) = csv {
        write_curves(csv, &curves, oversample)?;
        out.line(format!("wrote {} IEPR curves to {}", curves.len(), csv.display()));
    }
    Ok(())
}

fn pair_report(out: &Printer, a: &Sequence, b: &Sequence, oversample: usize) -> Result<(), Failure> {
    let pa = measure_pmepr(a, oversample).map_err(pmepr_failure)?;
    let pb = measure_pmepr(b, oversample).map_err(pmepr_failure)?;
    let bound = pmepr_bound(a, b).map_err(pmepr_failure)?;
    out.line(format!("oversample: {oversample}"));
    out.line(format!("a: {}", real(pa)));
    out.line(format!("b: {}", real(pb)));
    out.line(format!("bound: {}", real(bound)));
    out.summary("pmepr", &[("a", real(pa)), ("b", real(pb)), ("max", real(pa.max(pb))), ("bound", real(bound))]);
    if pa.max(pb) > bound + zcaq::pmepr::BOUND_TOL {
        return Err(Failure::new(exit::VERIFY_FAILED, "measured PMEPR exceeds the bound"));
    }
    Ok(())
}

/// The bound uses column 0 of `X1` and `X2`, which are unimodular multiples
/// of the seed pair for constructed quads.
fn quad_report(out: &Printer, quad: &Quad, oversample: usize) -> Result<(), Failure> {
    let [x1, x2, _, _] = quad.arrays();
    let seed = SeedPair::measured("column seed", x1.column(0), x2.column(0), "first columns of X1 and X2")
        .or_exit(exit::PARSE)?;
    let report = quad_pmepr_report(quad, &seed, oversample).map_err(pmepr_failure)?;
    out.line(format!("oversample: {oversample}"));
    out.line("array,column,pmepr");
    for c in &report.per_column {
        out.line(format!("X{},{},{}", c.array + 1, c.column, real(c.pmepr)));
    }
    let m = report.per_array_max;
    for (i, v) in m.iter().enumerate() {
        out.line(format!("max X{}: {}", i + 1, real(*v)));
    }
    let (odd, even) = (m[0].max(m[2]), m[1].max(m[3]));
    out.line(format!("max X1/X3: {}", real(odd)));
    out.line(format!("max X2/X4: {}", real(even)));
    out.line(format!("max: {}", real(report.max_pmepr)));
    out.line(format!("bound: {}", real(report.analytic_bound)));
    out.summary(
        "pmepr",
        &[
            ("x1x3", real(odd)),
            ("x2x4", real(even)),
            ("max", real(report.max_pmepr)),
            ("bound", real(report.analytic_bound)),
        ],
    );
    Ok(())
}

type Curve = (String, Sequence);

fn select_pair(a: &Sequence, b: &Sequence, names: &[String]) -> Result<Vec<Curve>, Failure> {
    if names.is_empty() {
        return Ok(vec![("a".into(), a.clone()), ("b".into(), b.clone())]);
    }
    names
        .iter()
        .map(|n| match n.as_str() {
            "a" => Ok((n.clone(), a.clone())),
            "b" => Ok((n.clone(), b.clone())),
            _ => Err(Failure::new(exit::PARSE, format!("unknown pair column '{n}' (use a or b)"))),
        })
        .collect()
}

fn parse_column(spec: &str, quad: &Quad) -> Result<Curve, Failure> {
    let bad = || Failure::new(exit::PARSE, format!("bad column '{spec}' (expected X<1-4>:<index>)"));
    let (array, col) = spec.strip_prefix('X').and_then(|s| s.split_once(':')).ok_or_else(bad)?;
    let array: usize = array.parse().map_err(|_| bad())?;
    let col: usize = col.parse().map_err(|_| bad())?;
    if !(1..=4).contains(&array) || col >= quad.dims().1 {
        return Err(bad());
    }
    Ok((format!("X{array}:{col}"), quad.arrays()[array - 1].column(col)))
}

fn select_columns(quad: &Quad, names: &[String]) -> Result<Vec<Curve>, Failure> {
    if names.is_empty() {
        return Ok((0..4).map(|m| (format!("X{}:0", m + 1), quad.arrays()[m].column(0))).collect());
    }
    names.iter().map(|n| parse_column(n, quad)).collect()
}

fn write_curves(path: &Path, curves: &[Curve], oversample: usize) -> Result<(), Failure> {
    let sampled: Vec<Vec<(f64, f64)>> =
        curves.iter().map(|(_, s)| iepr_curve(s, oversample).map_err(pmepr_failure)).collect::<Result<_, _>>()?;
    let mut header = vec!["t".to_string()];
    header.extend(curves.iter().map(|(n, _)| n.clone()));
    let rows = (0..sampled[0].len()).map(|k| {
        let mut row = vec![real(sampled[0][k].0)];
        row.extend(sampled.iter().map(|c| real(c[k].1)));
        row
    });
    write_csv(path, &header, rows)
}
