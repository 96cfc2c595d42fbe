//! One test per acceptance criterion. Each prints a single `PASS`/`FAIL`
//! line to stdout (uncaptured) before asserting, so the report survives
//! `cargo test` output capture.

use std::io::Write as _;
use std::process::Command;
use std::time::{Duration, Instant};

use nx_cli::suites::{self, full_model, invariant_model, SuiteConfig};
use nx_homotopy::moduli::{betti_from_decomposition, build_cohomology_algebra, q_polynomials};
use nx_homotopy::sp::{dominance_lt, render_decomposition, Decomposition, IrrepLabel};
use nx_homotopy::sullivan::DEFAULT_MONOMIAL_BUDGET;
use nx_homotopy::{MinimalModel, Rational};

fn report(id: u32, title: &str, passed: bool, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "\n{verdict} criterion {id}: {title} [{detail}]");
    let _ = out.flush();
}

fn nx(args: &[&str]) -> (String, bool, Duration) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_nx")).args(args).output().expect("nx runs");
    (String::from_utf8_lossy(&out.stdout).into_owned(), out.status.success(), t.elapsed())
}

fn l(a: &[u32]) -> IrrepLabel {
    IrrepLabel::new(a)
}

fn sorted(mut d: Decomposition) -> Decomposition {
    d.sort();
    d
}

/// Compares `V^n` against `(n, expected)` rows, returning mismatches.
fn table_mismatches(model: &MinimalModel, rows: &[(u32, Decomposition)]) -> Vec<String> {
    rows.iter()
        .filter_map(|(n, want)| {
            let got = sorted(model.decomposition(*n).expect("decomposes"));
            (got != sorted(want.clone())).then(|| {
                format!("V^{n}: got {}, want {}", render_decomposition(&got), render_decomposition(want))
            })
        })
        .collect()
}

#[test]
fn criterion_1_betti_reproduction() {
    let (stdout, ok, elapsed) = nx(&["betti", "--genus", "2", "--format", "json"]);
    let expected = r#"{"betti":[1,0,1,4,1,0,1],"cross_check":"ok"}"#;
    let ring = build_cohomology_algebra::<Rational>(2).unwrap().betti();
    let rep = betti_from_decomposition::<Rational>(2).unwrap();
    let want = vec![1, 0, 1, 4, 1, 0, 1];
    let passed = ok
        && stdout.trim() == expected
        && ring == want
        && rep == want
        && elapsed < Duration::from_secs(1);
    report(
        1,
        "betti --genus 2 is 1 0 1 4 1 0 1 by both paths in < 1 s",
        passed,
        &format!("quotient {ring:?}, decomposition {rep:?}, {elapsed:?}"),
    );
    assert!(passed, "{stdout}");
}

#[test]
fn criterion_2_relation_reproduction() {
    let t = Instant::now();
    let g1 = q_polynomials::<Rational>(1).render();
    let g2 = q_polynomials::<Rational>(2).render();
    let elapsed = t.elapsed();
    let (cli, ok, _) = nx(&["relations", "--genus", "2"]);
    let passed = g1 == ["α", "β", "γ"]
        && g2 == ["α^2 + β", "αβ + γ", "αγ"]
        && ok
        && cli.contains("q1 (degree 4) = α^2 + β")
        && cli.contains("q2 (degree 6) = αβ + γ")
        && cli.contains("q3 (degree 8) = αγ")
        && elapsed < Duration::from_secs(1);
    report(2, "q-recursion for g = 1, 2", passed, &format!("g=1 {g1:?}, g=2 {g2:?}, {elapsed:?}"));
    assert!(passed);
}

#[test]
fn criterion_3_genus_two_low_degrees() {
    let t = Instant::now();
    let model = full_model(2, 7, DEFAULT_MONOMIAL_BUDGET).unwrap();
    let rows = vec![
        (2, vec![(l(&[0, 0]), 1)]),
        (3, vec![(l(&[1, 0]), 1)]),
        (4, vec![(l(&[1, 0]), 1)]),
        (5, vec![(l(&[0, 1]), 1), (l(&[0, 0]), 1)]),
        (6, vec![(l(&[2, 0]), 1), (l(&[0, 1]), 1)]),
        (7, vec![(l(&[1, 1]), 1), (l(&[2, 0]), 1), (l(&[1, 0]), 1)]),
    ];
    let bad = table_mismatches(&model, &rows);
    let elapsed = t.elapsed();
    let passed = bad.is_empty() && elapsed < Duration::from_secs(60);
    report(3, "g=2 V^2..V^7 decompositions", passed, &format!("{} mismatches, {elapsed:?}", bad.len()));
    assert!(passed, "{bad:?}");
}

#[test]
fn criterion_4_leading_terms() {
    let model = full_model(2, 10, DEFAULT_MONOMIAL_BUDGET).unwrap();
    let mut bad = Vec::new();
    for n in 8..=10u32 {
        let m = n / 2;
        let want = if n % 2 == 0 { l(&[m - 1, 0]) } else { l(&[m - 2, 1]) };
        let d = model.decomposition(n).unwrap();
        let maximal: Vec<_> = d.iter().filter(|(x, _)| !d.iter().any(|(y, _)| dominance_lt(x, y))).collect();
        if maximal.len() != 1 || maximal[0].0 != want || maximal[0].1 != 1 {
            bad.push(format!("V^{n}: maximal {maximal:?}, want {want} once"));
        }
    }
    let passed = bad.is_empty();
    report(4, "g=2 dominance-maximal summand of V^8, V^9, V^10", passed, &bad.join("; "));
    assert!(passed);
}

#[test]
fn criterion_5_degree_bound() {
    let model = full_model(2, 10, DEFAULT_MONOMIAL_BUDGET).unwrap();
    let bound = |a: u32, b: u32| match (a, b) {
        (_, b) if b >= 1 => 2 * a + 4 * b + 1,
        (1, 0) => 3,
        (a, _) => 2 * a + 2,
    };
    let mut seen = 0;
    let mut bad = Vec::new();
    for n in 2..=model.max_degree() {
        for (x, _) in model.decomposition(n).unwrap() {
            seen += 1;
            if n < bound(x.0[0], x.0[1]) {
                bad.push(format!("{x} in V^{n}"));
            }
        }
    }
    let passed = bad.is_empty() && seen > 0;
    report(5, "g=2 every summand satisfies n ≥ n(a,b)", passed, &format!("{seen} summands, violations {bad:?}"));
    assert!(passed);
}

#[test]
fn criterion_6_higher_genus() {
    let t = Instant::now();
    let g3 = full_model(3, 7, DEFAULT_MONOMIAL_BUDGET).unwrap();
    let (z3, e1_3, e2_3) = (l(&[0, 0, 0]), l(&[1, 0, 0]), l(&[0, 1, 0]));
    let rows3 = vec![
        (2, vec![(z3.clone(), 1)]),
        (3, vec![(e1_3.clone(), 1)]),
        (4, vec![(z3.clone(), 1)]),
        (5, vec![(z3.clone(), 1)]),
        (6, vec![(e1_3, 1)]),
        (7, vec![(e2_3, 1), (z3, 1)]),
    ];
    let t3 = t.elapsed();
    let g4 = full_model(4, 9, DEFAULT_MONOMIAL_BUDGET).unwrap();
    let (z4, e1_4, e2_4) = (l(&[0, 0, 0, 0]), l(&[1, 0, 0, 0]), l(&[0, 1, 0, 0]));
    let rows4 = vec![
        (5, vec![]),
        (6, vec![]),
        (7, vec![(z4.clone(), 1)]),
        (8, vec![(e1_4, 1)]),
        (9, vec![(e2_4, 1), (z4, 1)]),
    ];
    let mut bad = table_mismatches(&g3, &rows3);
    bad.extend(table_mismatches(&g4, &rows4));
    let passed = bad.is_empty() && t3 < Duration::from_secs(600);
    report(6, "g=3 through degree 7 and g=4 through degree 9", passed, &format!("{} mismatches, {:?}", bad.len(), t.elapsed()));
    assert!(passed, "{bad:?}");
}

#[test]
fn criterion_7_invariant_ring_ellipticity() {
    let mut lines = Vec::new();
    let mut passed = true;
    for (g, top) in [(2u32, 13u32), (3, 18)] {
        let model = invariant_model(g, top, DEFAULT_MONOMIAL_BUDGET)
            .or_else(|_| invariant_model(g, 13, DEFAULT_MONOMIAL_BUDGET))
            .unwrap();
        let mut want: Vec<u32> = vec![2, 4, 6, 2 * g - 1, 2 * g + 1, 2 * g + 3];
        want.retain(|d| *d <= model.max_degree());
        want.sort_unstable();
        let got: Vec<u32> = model.gens().iter().map(|x| x.degree).collect();
        let images = suites::invariant_model_checks(g, Some(model.max_degree()), DEFAULT_MONOMIAL_BUDGET).unwrap();
        let images_ok = images.iter().all(|c| c.passed);
        passed &= got == want && images_ok;
        lines.push(format!("g={g} through {}: degrees {got:?} want {want:?}, d-images ok: {images_ok}", model.max_degree()));
    }
    report(7, "invariant-ring model generated in degrees 2,4,6,2g−1,2g+1,2g+3", passed, &lines.join("; "));
    assert!(passed, "{lines:?}");
}

#[test]
fn criterion_8_property_suites() {
    let cfg = SuiteConfig { genus: None, max_degree: None, budget: DEFAULT_MONOMIAL_BUDGET };
    let checks = suites::properties(&cfg).unwrap();
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.render()).collect();
    let passed = failed.is_empty() && !checks.is_empty();
    report(8, "property suites", passed, &format!("{} checks, {} failed", checks.len(), failed.len()));
    assert!(passed, "{failed:?}");
}
