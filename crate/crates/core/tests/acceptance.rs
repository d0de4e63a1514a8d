//! Acceptance criteria at full scale. Each test prints one PASS/FAIL line to
//! stderr, past the test harness's output capture.

use std::collections::BTreeSet;
use std::io::Write;

use sumsetlab::bounds::simplex_cardinality;
use sumsetlab::generators::long_simplex;
use sumsetlab::suite::{run_criterion, CriterionOutcome, SuiteKind, DEFAULT_SEED};

fn emit(outcome: &CriterionOutcome) {
    let _ = writeln!(std::io::stderr().lock(), "{outcome}");
}

fn report(outcome: &CriterionOutcome) {
    emit(outcome);
    assert!(outcome.passed, "criterion {} failed", outcome.id);
}

fn run(id: usize) {
    let outcome = run_criterion(id, SuiteKind::Full, DEFAULT_SEED).expect("criterion runs");
    report(&outcome);
}

/// Naive k-fold sum over integer tuples, independent of the library's sumset code.
fn naive_kfold(points: &[Vec<i64>], k: usize) -> usize {
    let mut current: BTreeSet<Vec<i64>> = [vec![0; points[0].len()]].into_iter().collect();
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for s in &current {
            for p in points {
                next.insert(s.iter().zip(p).map(|(a, b)| a + b).collect::<Vec<_>>());
            }
        }
        current = next;
    }
    current.len()
}

fn naive_long_simplex(d: usize, n: usize) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![0; d]];
    for i in 1..d {
        let mut e = vec![0; d];
        e[i] = 1;
        pts.push(e);
    }
    for t in 1..=(n - d) as i64 {
        let mut e = vec![0; d];
        e[0] = t;
        pts.push(e);
    }
    pts
}

#[test]
fn criterion_01_simplex_formula_oracle() {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for d in 1..=4 {
        for n in (d + 1)..=12 {
            let pts = naive_long_simplex(d, n);
            let library = long_simplex(d, n).unwrap().to_i64_rows().unwrap();
            assert_eq!(library.len(), pts.len());
            for k in 1..=6 {
                let oracle = naive_kfold(&pts, k);
                let formula = simplex_cardinality(d, n, k).unwrap();
                if formula != oracle.into() {
                    mismatches.push((d, n, k, oracle, formula));
                }
                checked += 1;
            }
        }
    }
    let mut outcome = run_criterion(1, SuiteKind::Full, DEFAULT_SEED).unwrap();
    outcome.notes.push(format!("naive oracle cases={checked} mismatches={}", mismatches.len()));
    if !mismatches.is_empty() {
        outcome.passed = false;
    }
    emit(&outcome);
    assert!(mismatches.is_empty(), "{mismatches:?}");
    assert!(outcome.passed);
}

#[test]
fn criterion_02_freiman_kfold_equality() {
    run(2);
}

#[test]
fn criterion_03_gs_kfold() {
    run(3);
}

#[test]
fn criterion_04_compression_laws() {
    run(4);
}

#[test]
fn criterion_05_rotation_example() {
    run(5);
}

#[test]
fn criterion_06_shear_regression() {
    run(6);
}

#[test]
fn criterion_07_plunnecke_ruzsa_family() {
    run(7);
}

#[test]
fn criterion_08_discrete_bm() {
    run(8);
}

#[test]
fn criterion_09_main_term_probe() {
    run(9);
}

#[test]
fn criterion_10_khovanskii_probe() {
    run(10);
}

#[test]
fn criterion_11_reduction_pipeline() {
    run(11);
}
