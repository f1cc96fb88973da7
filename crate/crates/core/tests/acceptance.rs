//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zcaq::catalog::{gcp_length_admissible, golay_double, signature_check, turyn_product, BASE_GCP_LENGTHS};
use zcaq::construct::quad_correlation_residue;
use zcaq::correlation::{xcorr_1d_fft, xcorr_2d_fft, ComplementarySum1D, ComplementarySum2D};
use zcaq::pmepr::{
    family_bound, family_ceiling, measure_pmepr, measure_pmepr_uniform, pmepr_bound_pair, quad_pmepr_report,
};
use zcaq::search::{canonicalize, exists_binary_gcp};
use zcaq::{
    build_quad, search_zcp, verify_gcp, verify_zcaq, Alphabet, Array2D, Catalog, Complex64, PairKind, Quad, QuadRecipe,
    SearchSpec, SeedFamily, SeedPair, Sequence, Zone, DEFAULT_TOL,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<T>(r: zcaq::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn catalog() -> &'static Catalog {
    Catalog::builtin()
}

fn recipe(gcp_len: usize, zcp: &str) -> Result<QuadRecipe, String> {
    let gcp = e2s(catalog().gcp_for_length(gcp_len))?;
    let zcp = e2s(catalog().seed_zcp(zcp))?;
    e2s(QuadRecipe::new(gcp, zcp))
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:.2?}, limit {limit:?}"))
}

fn c1_small_quad() -> Check {
    let start = Instant::now();
    let r = recipe(3, "ex1_7_4")?;
    let quad = e2s(build_quad(&r))?;
    let printed: [[&str; 3]; 4] = [
        ["++++--+", "++++--+", "----++-"],
        ["++-+-++", "jjJjJjj", "++-+-++"],
        ["----++-", "jjjjJJj", "----++-"],
        ["--+-+--", "++-+-++", "++-+-++"],
    ];
    for (m, want) in printed.iter().enumerate() {
        let want: Vec<Array2D> = vec![e2s(Array2D::parse_rows(want))?.transpose()];
        ensure(quad.arrays()[m].entries() == want[0].entries(), format!("X{} differs", m + 1))?;
    }
    ensure(ComplementarySum2D::of_quad(&quad).exact, "no exact path")?;
    let report = e2s(verify_zcaq(&quad, DEFAULT_TOL))?;
    ensure(report.zone == Zone::new(4, 3), format!("zone {}", report.zone))?;
    ensure(report.peak == 84.0, format!("peak {}", report.peak))?;
    let q = e2s(r.phase_count())?;
    ensure(q == 4, format!("phase count {q}"))?;
    within_time(start, Duration::from_secs(1))?;
    Ok(format!("zone {}, peak {}, q = {q}", report.zone, report.peak))
}

struct Reproduction {
    odd: f64,
    even: f64,
    bound: f64,
    zone: Zone,
    quad: Quad,
}

fn reproduce(gcp_len: usize, zcp: &str) -> Result<Reproduction, String> {
    let r = recipe(gcp_len, zcp)?;
    let quad = e2s(build_quad(&r))?;
    let zone = e2s(verify_zcaq(&quad, DEFAULT_TOL))?.zone;
    let report = e2s(quad_pmepr_report(&quad, r.zcp(), 64))?;
    let m = report.per_array_max;
    Ok(Reproduction { odd: m[0].max(m[2]), even: m[1].max(m[3]), bound: report.analytic_bound, zone, quad })
}

fn near(x: f64, want: f64, tol: f64) -> bool {
    (x - want).abs() <= tol
}

fn c2_liu_quad() -> Check {
    let start = Instant::now();
    let r = reproduce(32, "ex2_24_16")?;
    let detail = format!("zone {}, X1/X3 {:.4}, X2/X4 {:.4}, bound {:.6}", r.zone, r.odd, r.even, r.bound);
    ensure(r.quad.dims() == (24, 32), format!("dims {:?}", r.quad.dims()))?;
    ensure(r.zone == Zone::new(16, 32), format!("zone {}", r.zone))?;
    ensure(near(r.bound, 2.0 + 4.0 / 3.0, 1e-12), detail.clone())?;
    ensure(near(r.odd, 3.197, 0.01), format!("{detail}; X1/X3 expected 3.197 +- 0.01"))?;
    ensure(near(r.even, 2.851, 0.01), format!("{detail}; X2/X4 expected 2.851 +- 0.01"))?;
    within_time(start, Duration::from_secs(5))?;
    Ok(detail)
}

fn c3_avik_quad() -> Check {
    let start = Instant::now();
    let r = reproduce(26, "ex3_18_13")?;
    let detail = format!("zone {}, X1/X3 {:.4}, X2/X4 {:.4}, bound {:.6}", r.zone, r.odd, r.even, r.bound);
    ensure(r.quad.dims() == (18, 26), format!("dims {:?}", r.quad.dims()))?;
    ensure(r.zone == Zone::new(13, 26), format!("zone {}", r.zone))?;
    ensure(near(r.odd, 2.797, 0.01), format!("{detail}; X1/X3 expected 2.797 +- 0.01"))?;
    ensure(near(r.even, 2.706, 0.01), format!("{detail}; X2/X4 expected 2.706 +- 0.01"))?;
    ensure(near(r.bound, 34.0 / 9.0, 1e-12), detail.clone())?;
    let family = e2s(family_bound(SeedFamily::Avik, 8))?;
    ensure(near(family, r.bound, 1e-12), format!("family bound {family}"))?;
    ensure(r.bound <= family_ceiling(SeedFamily::Avik), detail.clone())?;
    within_time(start, Duration::from_secs(5))?;
    Ok(detail)
}

fn sums(name: &str) -> Result<Vec<(isize, Complex64)>, String> {
    let p = e2s(catalog().seed_zcp(name))?;
    let sum = e2s(ComplementarySum1D::pair(&p.a, &p.b))?;
    ensure(sum.exact, "no exact path")?;
    Ok(sum.sidelobes().collect())
}

fn c4_signatures() -> Check {
    let ex2 = e2s(catalog().seed_zcp("ex2_24_16"))?;
    let ex3 = e2s(catalog().seed_zcp("ex3_18_13"))?;
    ensure(e2s(signature_check(&ex2, SeedFamily::Liu))?, "liu signature")?;
    ensure(e2s(signature_check(&ex3, SeedFamily::Avik))?, "avik signature")?;
    for (t, v) in sums("ex2_24_16")? {
        let want = if t == 16 { 16.0 } else { 0.0 };
        ensure(v.im == 0.0 && v.re.abs() == want, format!("ex2 sum {v} at {t}"))?;
    }
    for (t, v) in sums("ex3_18_13")? {
        let want = if (13..=16).contains(&t) { 4.0 } else { 0.0 };
        ensure(v.im == 0.0 && v.re.abs() == want, format!("ex3 sum {v} at {t}"))?;
    }
    Ok("liu n = 3 and avik N = 8".into())
}

fn built_recipes() -> Result<Vec<(Quad, SeedPair)>, String> {
    let mut out = Vec::new();
    for gcp in catalog().entries().iter().filter(|p| p.kind == PairKind::Gcp) {
        for zcp in catalog().entries() {
            let r = e2s(QuadRecipe::new(gcp.clone(), zcp.clone()))?;
            // Seeds whose four arrays coincide yield no quad.
            if let Ok(quad) = build_quad(&r) {
                out.push((quad, zcp.clone()));
            }
        }
    }
    Ok(out)
}

fn c5_residue() -> Check {
    let recipes = built_recipes()?;
    ensure(recipes.len() >= 5, format!("only {} recipes", recipes.len()))?;
    for (quad, zcp) in &recipes {
        ensure(ComplementarySum2D::of_quad(quad).exact, "no exact path")?;
        ensure(e2s(quad_correlation_residue(quad, zcp))?, format!("residue fails for {}", zcp.name))?;
    }
    Ok(format!("{} recipes", recipes.len()))
}

fn rho(s: &[i32], t: usize) -> i32 {
    (0..s.len() - t).map(|i| s[i] * s[i + t]).sum()
}

fn brute_force_canonical(len: usize, min_z: usize) -> Result<BTreeSet<(String, String)>, String> {
    let seqs: Vec<Vec<i32>> =
        (0..1u32 << len).map(|c| (0..len).map(|i| if c >> i & 1 == 0 { 1 } else { -1 }).collect()).collect();
    let lobes: Vec<Vec<i32>> = seqs.iter().map(|s| (1..min_z).map(|t| rho(s, t)).collect()).collect();
    let text = |s: &[i32]| -> String { s.iter().map(|&v| if v > 0 { '+' } else { '-' }).collect() };
    let mut out = BTreeSet::new();
    for (i, la) in lobes.iter().enumerate() {
        for (j, lb) in lobes.iter().enumerate() {
            if la.iter().zip(lb).all(|(x, y)| x + y == 0) {
                let a = e2s(Sequence::parse_symbols(&text(&seqs[i])))?;
                let b = e2s(Sequence::parse_symbols(&text(&seqs[j])))?;
                let (ca, cb) = e2s(canonicalize(&a, &b))?;
                out.insert((ca.to_symbols(), cb.to_symbols()));
            }
        }
    }
    Ok(out)
}

fn c6_search() -> Check {
    let start = Instant::now();
    let found = e2s(search_zcp(&SearchSpec::binary(7, 4)))?;
    let ex1 = e2s(catalog().seed_zcp("ex1_7_4"))?;
    let key = e2s(canonicalize(&ex1.a, &ex1.b))?;
    ensure(!found.is_empty(), "(7, 4) empty")?;
    ensure(found.iter().any(|p| (p.a.clone(), p.b.clone()) == key), "(7, 4) misses the seed pair")?;
    ensure(e2s(search_zcp(&SearchSpec::binary(7, 7)))?.is_empty(), "(7, 7) not empty")?;
    let mut cases = 0;
    for len in 2..=10 {
        for min_z in 2..=len {
            let fast: BTreeSet<(String, String)> = e2s(search_zcp(&SearchSpec::binary(len, min_z)))?
                .into_iter()
                .map(|p| (p.a.to_symbols(), p.b.to_symbols()))
                .collect();
            ensure(fast == brute_force_canonical(len, min_z)?, format!("mismatch at ({len}, {min_z})"))?;
            cases += 1;
        }
    }
    within_time(start, Duration::from_secs(60))?;
    Ok(format!("{} pairs at (7, 4); {cases} (L, Z) cases match brute force", found.len()))
}

fn naive_1d(x: &[Complex64], y: &[Complex64], tau: isize) -> Complex64 {
    let n = x.len() as isize;
    (0..n).filter(|j| (0..n).contains(&(j + tau))).map(|j| x[j as usize] * y[(j + tau) as usize].conj()).sum()
}

fn naive_2d(x: &Array2D, y: &Array2D, t1: isize, t2: isize) -> Complex64 {
    let (r, c) = (x.rows() as isize, x.cols() as isize);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..r {
        for j in 0..c {
            if (0..r).contains(&(i + t1)) && (0..c).contains(&(j + t2)) {
                acc += x.get(i as usize, j as usize) * y.get((i + t1) as usize, (j + t2) as usize).conj();
            }
        }
    }
    acc
}

fn c7_oracles() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut unit = |n: usize| -> Vec<Complex64> {
        (0..n).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))).collect()
    };
    let mut worst = 0.0f64;
    let mut lengths = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let n = lengths.gen_range(1..=64);
        let x = e2s(Sequence::from_complex(unit(n)))?;
        let y = e2s(Sequence::from_complex(unit(n)))?;
        let fast = e2s(xcorr_1d_fft(&x, &y))?;
        for tau in -(n as isize - 1)..n as isize {
            worst = worst.max((fast.at(tau) - naive_1d(x.entries(), y.entries(), tau)).norm());
        }
    }
    for _ in 0..100 {
        let (r, c) = (lengths.gen_range(1..=16), lengths.gen_range(1..=16));
        let x = e2s(Array2D::from_complex(r, c, unit(r * c)))?;
        let y = e2s(Array2D::from_complex(r, c, unit(r * c)))?;
        let fast = e2s(xcorr_2d_fft(&x, &y))?;
        for t1 in -(r as isize - 1)..r as isize {
            for t2 in -(c as isize - 1)..c as isize {
                worst = worst.max((fast.at(t1, t2) - naive_2d(&x, &y, t1, t2)).norm());
            }
        }
    }
    ensure(worst <= 1e-9, format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.2e}"))
}

fn c8_composition() -> Check {
    let mut lengths = Vec::new();
    let base: Vec<SeedPair> = BASE_GCP_LENGTHS.iter().map(|&n| e2s(catalog().base_gcp(n))).collect::<Result<_, _>>()?;
    let mut check = |p: &SeedPair| -> Result<(), String> {
        ensure(e2s(verify_gcp(&p.a, &p.b, DEFAULT_TOL))?, format!("length {} not Golay", p.len()))?;
        let alphabet = if p.is_binary() { Alphabet::Binary } else { Alphabet::Complex };
        ensure(e2s(gcp_length_admissible(p.len(), alphabet))?, format!("length {} not admissible", p.len()))?;
        lengths.push(p.len());
        Ok(())
    };
    for p in &base {
        check(&e2s(golay_double(p))?)?;
        for q in base.iter().filter(|q| q.is_binary() && p.is_binary()) {
            check(&e2s(turyn_product(p, q))?)?;
        }
    }
    for want in [4, 20, 52, 260] {
        ensure(lengths.contains(&want), format!("length {want} not produced"))?;
    }
    for len in 1..=24 {
        let exists = e2s(exists_binary_gcp(len))?;
        let admissible = e2s(gcp_length_admissible(len, Alphabet::Binary))?;
        ensure(exists == admissible, format!("length {len}: search {exists}, admissible {admissible}"))?;
    }
    lengths.sort_unstable();
    lengths.dedup();
    Ok(format!("composed lengths {lengths:?}; existence agrees for L <= 24"))
}

fn c9_bound_dominance() -> Check {
    let mut worst = f64::NEG_INFINITY;
    let mut columns = 0;
    for (quad, zcp) in built_recipes()? {
        let bound = e2s(pmepr_bound_pair(&zcp))?;
        for array in quad.arrays() {
            for j in 0..array.cols() {
                let measured = e2s(measure_pmepr(&array.column(j), 64))?;
                ensure(measured <= bound + 0.01, format!("{}: column {j} {measured} > {bound}", zcp.name))?;
                worst = worst.max(measured - bound);
                columns += 1;
            }
        }
    }
    Ok(format!("{columns} columns, max(measured - bound) = {worst:.4}"))
}

fn c10_scale() -> Check {
    let mut dims = Vec::new();
    for (gcp, zcp) in [(3, "ex1_7_4"), (32, "ex2_24_16"), (26, "ex3_18_13")] {
        dims.push(e2s(build_quad(&recipe(gcp, zcp)?))?.dims());
    }
    ensure(dims == [(7, 3), (24, 32), (18, 26)], format!("dims {dims:?}"))?;
    Ok(format!("full-size quads {dims:?}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("7x3 quaternary quad reproduction", c1_small_quad),
        ("24x32 binary quad reproduction", c2_liu_quad),
        ("18x26 binary quad reproduction", c3_avik_quad),
        ("family sidelobe signatures", c4_signatures),
        ("quad correlation residue identity", c5_residue),
        ("search soundness and completeness", c6_search),
        ("fast correlation oracle equivalence", c7_oracles),
        ("Golay pair composition and existence", c8_composition),
        ("column PMEPR bound dominance", c9_bound_dominance),
        ("desk-scale reproduction", c10_scale),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {title}: {detail} ({took:.2} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {title}: {why} ({took:.2} s)", i + 1);
            }
        }
    }
    for name in ["ex2_24_16", "ex3_18_13"] {
        if let Ok(p) = catalog().seed_zcp(name) {
            let a = measure_pmepr_uniform(&p.a, 101).unwrap_or(f64::NAN);
            let b = measure_pmepr_uniform(&p.b, 101).unwrap_or(f64::NAN);
            println!("info {name}: peak IEPR on t = 0, 0.01, ..., 1 is {a:.5} (a) and {b:.5} (b)");
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
