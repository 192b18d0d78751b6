//! Acceptance criteria. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; the process fails if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use syzygy_cli::render::{BettiJson, TableJson};
use syzygy_cli::{run_from, Outcome};
use syzygy_core::cocycles::{cocycle_horizontal, cocycle_vertical, verify_cocycle, Point};
use syzygy_core::koszul::closed_form_first_row;
use syzygy_core::linalg::{kernel_basis, rank, PrimeField, Rationals, SparseMatrix};
use syzygy_core::resolutions::{kernel_basis_expressions, kernel_map};

/// Every quantity compared here is an integer and must match exactly.
const TOLERANCE: u128 = 0;

#[allow(clippy::absurd_extreme_comparisons)]
fn close(x: u128, y: u128) -> bool {
    x.abs_diff(y) <= TOLERANCE
}

fn cli(args: &str) -> Outcome {
    run_from(std::iter::once("segre-betti").chain(args.split_whitespace()))
}

fn cli_ok(args: &str) -> Result<String, String> {
    let out = cli(args);
    if out.code == 0 {
        Ok(out.stdout)
    } else {
        Err(format!("`{args}` exited {}: {}{}", out.code, out.stderr.trim(), last_line(&out.stdout)))
    }
}

fn last_line(s: &str) -> String {
    s.lines().filter(|l| l.contains("FAIL")).take(3).collect::<Vec<_>>().join("; ")
}

fn betti_json(args: &str) -> Result<BettiJson, String> {
    serde_json::from_str(&cli_ok(&format!("{args} --format json"))?).map_err(|e| e.to_string())
}

fn table_json(args: &str) -> Result<TableJson, String> {
    serde_json::from_str(&cli_ok(&format!("{args} --format json"))?).map_err(|e| e.to_string())
}

fn binom(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// `κ_{p,1}` past the start of the first row's tail, written out afresh.
fn first_row_oracle(a: u32, b: u32, p: u32) -> u128 {
    let extra = if p == a * b + a - 1 { p as u128 } else { 0 };
    p as u128 * binom(((a + 1) * b) as i64, p as i64 + 1) + extra
}

/// The `a = 2` table, written out afresh.
fn a2_oracle(b: u32, p: u32, q: u32) -> u128 {
    let (b, p) = (b as i64, p as i64);
    let k2 = |p: i64| (p - 2 * b - 1).max(0) as u128 * binom(3 * b, p);
    match q {
        1 => k2(p - 1) + p as u128 * binom(3 * b + 2, p + 1) - 4 * b as u128 * binom(3 * b, p - 1),
        2 => k2(p),
        _ => 0,
    }
}

fn criterion_1() -> Result<String, String> {
    for field in ["32003", "rational"] {
        for (p, want) in [(11, 22), (12, 0), (13, 0)] {
            let j = betti_json(&format!("betti --a 3 --b 3 --p {p} --q 1 --field {field}"))?;
            let lib = closed_form_first_row(3, 3, p).map_err(|e| e.to_string())?;
            if !(close(j.betti as u128, want) && close(want, first_row_oracle(3, 3, p)) && close(lib, want)) {
                return Err(format!("{field}: kappa_{p},1 = {}, closed form {lib}, expected {want}", j.betti));
            }
        }
    }
    Ok("kappa_{11,1}=22, kappa_{12,1}=kappa_{13,1}=0 over GF(32003) and Q".into())
}

fn criterion_2() -> Result<String, String> {
    for (p, want) in [(14, 238), (15, 15), (16, 0)] {
        let j = betti_json(&format!("betti --a 3 --b 4 --p {p} --q 1"))?;
        if !close(j.betti as u128, want) || !close(want, first_row_oracle(3, 4, p)) {
            return Err(format!("kappa_{p},1 = {}, expected {want}", j.betti));
        }
    }
    Ok("kappa_{14,1}=238, kappa_{15,1}=15, kappa_{16,1}=0".into())
}

const FIXTURES: [(&str, &str); 4] = [
    ("bidegree --a 3 --b 3 --p 11 --q 1", include_str!("fixtures/segre_3_3_p11_q1.txt")),
    ("bidegree --a 2 --b 2 --p 5 --q 1", include_str!("fixtures/segre_2_2_p5_q1.txt")),
    ("bidegree --a 3 --b 4 --p 14 --q 1 --rotate", include_str!("fixtures/segre_3_4_p14_q1_rotated.txt")),
    ("bidegree --a 3 --b 4 --p 15 --q 1 --rotate --pad 1", include_str!("fixtures/segre_3_4_p15_q1_rotated.txt")),
];

fn criterion_3() -> Result<String, String> {
    for (args, fixture) in FIXTURES {
        let got = cli_ok(args)?;
        if got != fixture {
            return Err(format!("`{args}` differs from its fixture:\n{got}"));
        }
    }
    Ok("four grids match cell for cell (totals 22, 20, 238, 15)".into())
}

fn criterion_4() -> Result<String, String> {
    let mut compared = 0;
    for (b, fields) in [(2, &["32003", "rational"][..]), (3, &["32003"][..])] {
        let max_p = 3 * (b + 1) - 3;
        for field in fields {
            let t = table_json(&format!("betti --a 2 --b {b} --max-p {max_p} --field {field}"))?;
            for q in 1..=2 {
                for p in 1..=max_p {
                    let got = t.rows[q as usize][p as usize] as u128;
                    if !close(got, a2_oracle(b, p, q)) {
                        return Err(format!("b={b} {field}: kappa_{p},{q} = {got}, formula {}", a2_oracle(b, p, q)));
                    }
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} entries equal the a=2 formulas"))
}

fn criterion_5() -> Result<String, String> {
    let mut checked = 0;
    for (a, b) in [(1, 1), (2, 2), (2, 3), (3, 3)] {
        let max_p = (a + 1) * (b + 1) - 3;
        let t = table_json(&format!("betti --a {a} --b {b} --max-p {max_p}"))?;
        for p in 1..=max_p {
            for q in 1..=3u32 {
                let k = t.rows[q as usize][p as usize];
                let zero = match q {
                    1 => p >= a * b + b,
                    2 => p <= 2 * a + 2 * b - 3,
                    _ => true,
                };
                if zero != (k == 0) {
                    return Err(format!("({a},{b}): kappa_{p},{q} = {k}, expected {}", if zero { "0" } else { "nonzero" }));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} entries have the predicted zero pattern"))
}

fn criterion_6() -> Result<String, String> {
    for (e, c) in [("1,2", 0), ("1,2", 1), ("2,3,3", 0)] {
        for field in ["32003", "rational"] {
            cli_ok(&format!("verify en --e {e} --c {c} --max-deg 3 --field {field}"))?;
        }
    }
    Ok("three complexes exact, minimal and augmented through degree 3, GF(32003) and Q".into())
}

fn criterion_7() -> Result<String, String> {
    for (a, b) in [(2, 2), (3, 3)] {
        cli_ok(&format!("verify relres --a {a} --b {b} --max-deg 4"))?;
    }
    Ok("homology vanishes through degree 4 at (2,2) and (3,3)".into())
}

fn criterion_8() -> Result<String, String> {
    let out = cli_ok("verify chainmap --a 3 --b 3 --max-deg 3")?;
    let squares = out.lines().filter(|l| l.contains("square n=")).count();
    let worked = out.lines().filter(|l| l.contains("worked square") && l.contains("PASS")).count();
    if worked == 0 {
        return Err("no worked square reported".into());
    }
    Ok(format!("{squares} squares commute, {worked} of them the worked square"))
}

/// Kernel dimension by elimination and the span of the closed-form basis.
fn kernel_oracle<F: syzygy_core::linalg::Field>(f: &F, a: u32, b: u32) -> Result<(usize, usize, bool), String> {
    let km = kernel_map(a, b).map_err(|e| e.to_string())?;
    let kernel = kernel_basis(f, &km.matrix).len();
    let exprs = kernel_basis_expressions(a, b).map_err(|e| e.to_string())?;
    let cols = exprs.len();
    let triplets: Vec<(usize, usize, i64)> =
        exprs.iter().enumerate().flat_map(|(c, v)| v.iter().map(move |&(r, x)| (r, c, x))).collect();
    let e = SparseMatrix::from_triplets(km.matrix.ncols(), cols, triplets);
    let annihilated = km.matrix.mul(&e).map_err(|e| e.to_string())?.is_zero_in(f);
    Ok((kernel, rank(f, &e), annihilated))
}

fn criterion_9() -> Result<String, String> {
    let gf = PrimeField::default();
    let mut dims = Vec::new();
    for (a, b, rational) in [(3, 3, true), (3, 4, false)] {
        let want = (a * (b + 1) - 1) as usize;
        let mut runs = vec![kernel_oracle(&gf, a, b)?];
        if rational {
            runs.push(kernel_oracle(&Rationals, a, b)?);
        }
        for (kernel, span, annihilated) in runs {
            if kernel != want || span != want || !annihilated {
                return Err(format!("({a},{b}): kernel {kernel}, span {span}, annihilated {annihilated}, expected {want}"));
            }
        }
        cli_ok(&format!("verify kernel --a {a} --b {b}"))?;
        dims.push(want);
    }
    cli_ok("verify kernel --a 3 --b 3 --field rational")?;
    Ok(format!("kernel dimensions {dims:?}, spanned by the closed-form basis"))
}

fn criterion_10() -> Result<String, String> {
    let out = cli_ok("verify cocycles --a 3 --b 3")?;
    if !out.contains("rank 22 =") {
        return Err("rank line missing".into());
    }
    // flipping any single coefficient must be caught
    let points: Vec<Point> = (0..=3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    let exprs = [cocycle_vertical(3, 3, 4, &points).unwrap(), cocycle_horizontal(3, 3, 7).unwrap()];
    let mut flips = 0;
    for expr in &exprs {
        for (k, key) in expr.terms.keys().enumerate().step_by(97) {
            let mut bad = expr.clone();
            let c = bad.terms.get_mut(key).unwrap();
            *c = -*c;
            if verify_cocycle(&bad) {
                return Err(format!("flipping term {k} went unnoticed"));
            }
            flips += 1;
        }
    }
    Ok(format!("22 independent cocycles = kappa_{{11,1}}, witnesses hold, {flips} corrupted copies rejected"))
}

fn criterion_11() -> Result<String, String> {
    let commands: Vec<String> = [11, 12, 13]
        .iter()
        .map(|p| format!("betti --a 3 --b 3 --p {p} --q 1"))
        .chain([14, 15, 16].iter().map(|p| format!("betti --a 3 --b 4 --p {p} --q 1")))
        .chain(FIXTURES.iter().map(|(args, _)| args.to_string()))
        .collect();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().display().to_string();
    let settings = [
        ("threads 1", "--threads 1".to_string()),
        ("threads 4", "--threads 4".to_string()),
        ("cold cache", format!("--threads 4 --cache {cache}")),
        ("warm cache", format!("--threads 1 --cache {cache}")),
    ];
    let mut reference: Option<Vec<String>> = None;
    for (name, extra) in &settings {
        let outputs: Vec<String> =
            commands.iter().map(|c| cli_ok(&format!("{c} --format json {extra}"))).collect::<Result<_, _>>()?;
        for o in &outputs {
            let parsed: BettiJson = serde_json::from_str(o).map_err(|e| e.to_string())?;
            if serde_json::to_string(&parsed).unwrap() + "\n" != *o {
                return Err(format!("{name}: JSON does not round-trip: {o}"));
            }
        }
        match &reference {
            None => reference = Some(outputs),
            Some(r) if *r != outputs => return Err(format!("{name}: output differs")),
            Some(_) => {}
        }
    }
    let stats = cli_ok(&format!("cache stats --cache {cache}"))?;
    if stats.contains(" 0 strand files") {
        return Err("the cache stayed empty".into());
    }
    Ok(format!("{} JSON outputs byte-identical across threads 1/4 and cold/warm cache", commands.len()))
}

type Check = fn() -> Result<String, String>;

/// Runtime budgets, generous multiples of the observed times.
const CRITERIA: [(u32, &str, Check, Duration); 11] = [
    (1, "first row at (3,3)", criterion_1, Duration::from_secs(60)),
    (2, "first row at (3,4)", criterion_2, Duration::from_secs(900)),
    (3, "bidegree fixtures", criterion_3, Duration::from_secs(300)),
    (4, "a=2 closed forms", criterion_4, Duration::from_secs(300)),
    (5, "Betti table shape", criterion_5, Duration::from_secs(600)),
    (6, "EN exactness and minimality", criterion_6, Duration::from_secs(120)),
    (7, "relative resolution exactness", criterion_7, Duration::from_secs(300)),
    (8, "chain-map squares", criterion_8, Duration::from_secs(300)),
    (9, "kernel lemma", criterion_9, Duration::from_secs(120)),
    (10, "explicit cocycles", criterion_10, Duration::from_secs(300)),
    (11, "determinism", criterion_11, Duration::from_secs(900)),
];

fn main() -> ExitCode {
    // cache placement is controlled explicitly below
    std::env::remove_var("BETTI_CACHE_DIR");
    let mut failed = 0;
    for (id, name, check, budget) in CRITERIA {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= budget => (true, d),
            Ok(d) => (false, format!("{d}, but took {took:.1?} > {budget:?}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!("{} criterion {id:>2} ({name}): {detail} [{took:.2?}]", if ok { "PASS" } else { "FAIL" });
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
