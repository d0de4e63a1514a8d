//! The acceptance criteria as runnable, seeded suites.
//!
//! Each criterion runs at `Full` scale (the stated instance counts) or at a
//! reduced `Smoke` scale meant to finish well under a minute. Random cases are
//! derived from the suite seed and the case index, evaluated in parallel and
//! merged in case order, so reports are deterministic.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::bounds::{
    check_discrete_bm, check_freiman_kfold, check_gs_kfold, check_iterated_pr,
    check_linear_pr, check_plunnecke_ruzsa, check_ruzsa_triangle, check_shear_counterexample,
    check_simplex_formula, khovanskii_probe, local_growth_exponent, main_term_probe,
};
use crate::certificate::{Certificate, Verdict};
use crate::compression::{
    check_projection_monotone, check_sum_monotone, compress, reduce_to_simplex, CompressionSpec,
};
use crate::error::{Error, Result};
use crate::generators::{
    cube, grid, long_simplex, random_full_dimensional_set, random_set, rotation_system,
    shear_counterexample,
};
use crate::linalg::{Basis, LinearSystem, RationalMatrix};
use crate::point::{Point, PointSet};
use crate::rational::{int, Rational};
use crate::rng::SplitMix64;
use crate::structure::{coprime_sufficient, decide_irreducible, Coprimality, IrreducibilityStatus};
use crate::sumset::{iterated_sumset, weighted_sumset};

pub const DEFAULT_SEED: u64 = 20240501;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteKind {
    Smoke,
    Full,
}

impl SuiteKind {
    fn pick(self, smoke: usize, full: usize) -> usize {
        match self {
            SuiteKind::Smoke => smoke,
            SuiteKind::Full => full,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteKind::Smoke => "smoke",
            SuiteKind::Full => "full",
        }
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(SuiteKind::Smoke),
            "full" => Ok(SuiteKind::Full),
            other => Err(Error::InvalidArgument(format!("unknown suite `{other}`"))),
        }
    }
}

pub const CRITERIA: [&str; 11] = [
    "simplex_formula_oracle",
    "freiman_kfold_equality",
    "gs_kfold",
    "compression_laws",
    "rotation_example",
    "shear_regression",
    "plunnecke_ruzsa_family",
    "discrete_bm",
    "main_term_probe",
    "khovanskii_probe",
    "reduction_pipeline",
];

#[derive(Clone, Debug, Default)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub holds: usize,
    pub violated: usize,
    pub indeterminate: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CriterionOutcome {
    fn new(id: usize) -> Self {
        Self { id, name: CRITERIA[id - 1], ..Self::default() }
    }

    fn record(&mut self, cert: &Certificate) {
        self.cases += 1;
        match cert.verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::Indeterminate => self.indeterminate += 1,
        }
    }

    /// Records a verdict that must be `Holds`.
    fn expect_holds(&mut self, label: impl fmt::Display, cert: &Certificate) {
        self.record(cert);
        if !cert.holds() {
            self.fail(format!("{label}: {cert}"));
        }
    }

    fn expect(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.fail(message());
        }
    }

    fn fail(&mut self, message: String) {
        self.failures.push(message);
    }

    fn note(&mut self, message: impl Into<String>) {
        self.notes.push(message.into());
    }

    fn finish(mut self) -> Self {
        self.passed = self.failures.is_empty();
        self
    }

    pub fn to_json(&self) -> Json {
        json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "holds": self.holds,
            "violated": self.violated,
            "indeterminate": self.indeterminate,
            "failures": self.failures,
            "notes": self.notes,
        })
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{tag}] {:>2} {:<24} cases={} holds={} violated={} indeterminate={}",
            self.id, self.name, self.cases, self.holds, self.violated, self.indeterminate
        )?;
        for n in &self.notes {
            write!(f, "; {n}")?;
        }
        for m in &self.failures {
            write!(f, "\n      {m}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub kind: SuiteKind,
    pub seed: u64,
    pub outcomes: Vec<CriterionOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "suite": self.kind.as_str(),
            "seed": self.seed,
            "passed": self.passed(),
            "criteria": self.outcomes.iter().map(CriterionOutcome::to_json).collect::<Vec<_>>(),
        })
    }
}

fn rng_for(seed: u64, criterion: usize, case: usize) -> SplitMix64 {
    SplitMix64::fork(seed ^ ((criterion as u64) << 56), case as u64)
}

fn nonzero_vector(rng: &mut SplitMix64, d: usize, bound: i64) -> Point {
    loop {
        let v: Vec<i64> = (0..d).map(|_| rng.range_i64(-bound, bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return Point::from_ints(&v);
        }
    }
}

fn invertible_matrix(rng: &mut SplitMix64, d: usize, bound: i64) -> RationalMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| rng.range_i64(-bound, bound)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = RationalMatrix::from_ints(&refs).expect("square");
        if !num_traits::Zero::is_zero(&m.determinant()) {
            return m;
        }
    }
}

fn small_set(rng: &mut SplitMix64, d: usize, max_size: usize, side: u64) -> Result<PointSet> {
    let size = 1 + rng.below(max_size as u64) as usize;
    let seed = rng.next_u64();
    random_set(d, size.min(side.pow(d as u32) as usize), side, seed)
}

fn par_cases<T: Send>(count: usize, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    (0..count).into_par_iter().map(f).collect()
}

/// Closed form against enumeration for `d ≤ 4, d+1 ≤ N ≤ 12, k ≤ 6`.
pub fn simplex_formula_oracle(kind: SuiteKind) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(1);
    let (d_max, n_max, k_max) = match kind {
        SuiteKind::Smoke => (3, 8, 4),
        SuiteKind::Full => (4, 12, 6),
    };
    let grid: Vec<(usize, usize, usize)> = (1..=d_max)
        .flat_map(|d| ((d + 1)..=n_max).flat_map(move |n| (1..=k_max).map(move |k| (d, n, k))))
        .collect();
    let certs = par_cases(grid.len(), |i| {
        let (d, n, k) = grid[i];
        check_simplex_formula(d, n, k)
    })?;
    for ((d, n, k), c) in grid.iter().zip(&certs) {
        out.expect_holds(format_args!("d={d} N={n} k={k}"), c);
    }
    Ok(out.finish())
}

/// Slack 0 on long simplices, `Holds` on random full-dimensional sets.
pub fn freiman_kfold_equality(kind: SuiteKind, seed: u64) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(2);
    let (d_max, n_max, k_max) = match kind {
        SuiteKind::Smoke => (3, 8, 4),
        SuiteKind::Full => (4, 12, 6),
    };
    let grid: Vec<(usize, usize, usize)> = (1..=d_max)
        .flat_map(|d| ((d + 1)..=n_max).flat_map(move |n| (1..=k_max).map(move |k| (d, n, k))))
        .collect();
    let certs = par_cases(grid.len(), |i| {
        let (d, n, k) = grid[i];
        check_freiman_kfold(&long_simplex(d, n)?, k)
    })?;
    for ((d, n, k), c) in grid.iter().zip(&certs) {
        out.expect_holds(format_args!("simplex d={d} N={n} k={k}"), c);
        out.expect(c.slack() == crate::certificate::Bound::Exact(int(0)), || {
            format!("simplex d={d} N={n} k={k}: non-zero slack {}", c.slack())
        });
    }
    let count = kind.pick(100, 500);
    let certs = par_cases(count, |i| {
        let mut rng = rng_for(seed, 2, i);
        let d = 1 + rng.below(3) as usize;
        let size = d + 1 + rng.below((20 - d) as u64) as usize;
        let k = 1 + rng.below(4) as usize;
        let side = if d == 1 { 40 } else { 7 };
        let a = random_full_dimensional_set(d, size, side, rng.next_u64())?;
        check_freiman_kfold(&a, k)
    })?;
    for (i, c) in certs.iter().enumerate() {
        out.expect_holds(format_args!("random case {i}"), c);
    }
    Ok(out.finish())
}

/// Equality on grid families, `Holds` on random planar instances.
pub fn gs_kfold(kind: SuiteKind, seed: u64) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(3);
    let x_axis = Point::from_ints(&[1, 0]);
    let mut families: Vec<Vec<(usize, usize)>> = Vec::new();
    let sides: Vec<(usize, usize)> = (1..=4).flat_map(|n| (1..=4).map(move |m| (n, m))).collect();
    for &a in &sides {
        for &b in &sides {
            families.push(vec![a, b]);
            if kind == SuiteKind::Full {
                for &c in &sides {
                    families.push(vec![a, b, c]);
                }
            }
        }
    }
    let extra = kind.pick(200, 2000);
    let mut rng = rng_for(seed, 3, usize::MAX);
    for _ in 0..extra {
        let k = 3 + rng.below(2) as usize;
        families.push((0..k).map(|_| sides[rng.below(16) as usize]).collect());
    }
    let certs = par_cases(families.len(), |i| check_gs_kfold(&grid(&families[i])?, &x_axis))?;
    for (fam, c) in families.iter().zip(&certs) {
        out.expect_holds(format_args!("grids {fam:?}"), c);
        out.expect(c.slack() == crate::certificate::Bound::Exact(int(0)), || {
            format!("grids {fam:?}: non-zero slack {}", c.slack())
        });
    }
    out.note(format!("{} grid families", families.len()));
    let count = kind.pick(200, 1000);
    let certs = par_cases(count, |i| {
        let mut rng = rng_for(seed, 3, i);
        let k = 2 + rng.below(3) as usize;
        let sets = (0..k).map(|_| small_set(&mut rng, 2, 15, 6)).collect::<Result<Vec<_>>>()?;
        let l = nonzero_vector(&mut rng, 2, 2);
        check_gs_kfold(&sets, &l)
    })?;
    for (i, c) in certs.iter().enumerate() {
        out.expect_holds(format_args!("random case {i}"), c);
    }
    Ok(out.finish())
}

/// Containment, cardinality monotonicity, projection monotonicity and
/// cardinality preservation under random compressions.
pub fn compression_laws(kind: SuiteKind, seed: u64) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(4);
    let count = kind.pick(200, 1000);
    let results = par_cases(count, |i| {
        let mut rng = rng_for(seed, 4, i);
        let d = 1 + rng.below(3) as usize;
        let k = 1 + rng.below(3) as usize;
        let side = if d == 1 { 16 } else { 5 };
        let sets = (0..k).map(|_| small_set(&mut rng, d, 12, side)).collect::<Result<Vec<_>>>()?;
        let spec = if rng.below(3) == 0 {
            CompressionSpec::axis(d, rng.below(d as u64) as usize)
        } else {
            let v = nonzero_vector(&mut rng, d, 2);
            let n = loop {
                let n = nonzero_vector(&mut rng, d, 2);
                if !num_traits::Zero::is_zero(&n.dot(&v)) {
                    break n;
                }
            };
            let offset = if rng.below(3) == 0 { int(rng.range_i64(-2, 2)) } else { int(0) };
            CompressionSpec::new(n, offset, v)?
        };
        let sizes_kept = sets
            .iter()
            .map(|s| compress(s, &spec).map(|c| c.len() == s.len()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|x| x);
        let sum = check_sum_monotone(&sets, &spec)?;
        let axis = rng.below(d as u64) as usize;
        let indices: Vec<usize> = (0..d).filter(|_| rng.below(2) == 1).collect();
        let proj = check_projection_monotone(&sets, axis, &Basis::standard(d), &indices)?;
        Ok((sizes_kept, sum, proj))
    })?;
    for (i, (kept, sum, proj)) in results.iter().enumerate() {
        out.expect(*kept, || format!("case {i}: compression changed a cardinality"));
        out.expect_holds(format_args!("case {i} sum"), sum);
        out.expect(sum.details.get("containment").is_some_and(|v| v == "true"), || {
            format!("case {i}: containment failed")
        });
        out.expect_holds(format_args!("case {i} projection"), proj);
    }
    Ok(out.finish())
}

/// `|ΣL_i(cube(d, N))| = (2dN + 1)^d`, irreducibility and coprimality of the
/// rotation system for `d ∈ {2, 3}`.
pub fn rotation_example(kind: SuiteKind) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(5);
    for d in 2..=3usize {
        let sys = rotation_system(d)?;
        let verdict = decide_irreducible(&sys)?;
        out.expect(verdict.status == IrreducibilityStatus::Irreducible, || {
            format!("d={d}: irreducibility {:?}", verdict.status)
        });
        let cop = coprime_sufficient(&sys)?;
        out.expect(cop == Coprimality::Coprime, || format!("d={d}: coprimality {cop:?}"));
        let n_max = if d == 3 { kind.pick(3, 5) } else { 5 };
        for n in 1..=n_max {
            let size = weighted_sumset(&sys, &cube(d, n as u32)?)?.len();
            let expected = (2 * d * n + 1).pow(d as u32);
            out.cases += 1;
            if size == expected {
                out.holds += 1;
            } else {
                out.violated += 1;
                out.fail(format!("d={d} N={n}: {size} != {expected}"));
            }
        }
    }
    Ok(out.finish())
}

/// The shear pair: `|X| = 2N − 1` and `|L_1(X) + L_2(X)| = (2N − 1)^2`.
pub fn shear_regression(kind: SuiteKind) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(6);
    let n_max = kind.pick(20, 50);
    let certs = par_cases(n_max, |i| {
        let (sys, a) = shear_counterexample(i + 1)?;
        check_shear_counterexample(&sys, &a)
    })?;
    for (i, c) in certs.iter().enumerate() {
        let n = i + 1;
        out.expect_holds(format_args!("N={n}"), c);
        out.expect(c.details["x_size"] == (2 * n - 1).to_string(), || {
            format!("N={n}: |X| = {}", c.details["x_size"])
        });
    }
    Ok(out.finish())
}

/// Plünnecke–Ruzsa, its iterated and linear forms, and Ruzsa's triangle
/// inequality on random instances.
pub fn plunnecke_ruzsa_family(kind: SuiteKind, seed: u64) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(7);
    let count = kind.pick(200, 1000);
    let results = par_cases(count, |i| {
        let mut rng = rng_for(seed, 7, i);
        let d = 1 + rng.below(2) as usize;
        let side = if d == 1 { 20 } else { 6 };
        let a = small_set(&mut rng, d, 10, side)?;
        let b = small_set(&mut rng, d, 10, side)?;
        let m = rng.below(3) as usize;
        let n = rng.below(3 - m as u64) as usize;
        let pr = check_plunnecke_ruzsa(&a, &b, m, n)?;

        let k = 2 + rng.below(2) as usize;
        let size = 1 + rng.below(8) as usize;
        let sets = (0..k)
            .map(|_| random_set(d, size, side, rng.next_u64()))
            .collect::<Result<Vec<_>>>()?;
        let it = check_iterated_pr(&sets)?;

        let maps = 1 + rng.below(2) as usize;
        let mut system = vec![RationalMatrix::identity(2)];
        system.extend((0..maps).map(|_| invertible_matrix(&mut rng, 2, 2)));
        let max_a = if maps == 1 { 6 } else { 4 };
        let base = small_set(&mut rng, 2, max_a, 5)?;
        let lin = check_linear_pr(&LinearSystem::new(system)?, &base)?;

        let u = small_set(&mut rng, d, 10, side)?;
        let v = small_set(&mut rng, d, 10, side)?;
        let w = small_set(&mut rng, d, 10, side)?;
        let tri = check_ruzsa_triangle(&u, &v, &w)?;
        Ok([pr, it, lin, tri])
    })?;
    for (i, certs) in results.iter().enumerate() {
        for c in certs {
            out.expect_holds(format_args!("case {i}"), c);
        }
    }
    Ok(out.finish())
}

/// Discrete Brunn–Minkowski on random instances and the cube equality case.
pub fn discrete_bm(kind: SuiteKind, seed: u64) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(8);
    let square: Vec<Point> = (1..=3).flat_map(|x| (1..=3).map(move |y| Point::from_ints(&[x, y]))).collect();
    let square = PointSet::new(2, square)?;
    let eq = check_discrete_bm(&[square.clone(), square], &Basis::standard(2))?;
    out.expect_holds("cubes d=2 k=2 N=3", &eq);
    out.expect(eq.lhs.exact() == Some(&int(25)) && eq.rhs.exact() == Some(&int(25)), || {
        format!("cube equality case: {eq}")
    });
    let count = kind.pick(100, 500);
    let certs = par_cases(count, |i| {
        let mut rng = rng_for(seed, 8, i);
        let d = 1 + rng.below(3) as usize;
        let k = 1 + rng.below(3) as usize;
        let side = if d == 1 { 20 } else { 5 };
        let sets = (0..k).map(|_| small_set(&mut rng, d, 10, side)).collect::<Result<Vec<_>>>()?;
        let basis = if rng.below(3) == 0 {
            let m = invertible_matrix(&mut rng, d, 2);
            Basis::new((0..d).map(|c| m.column(c)).collect())?
        } else {
            Basis::standard(d)
        };
        check_discrete_bm(&sets, &basis)
    })?;
    for (i, c) in certs.iter().enumerate() {
        out.record(c);
        out.expect(c.verdict != Verdict::Violated, || format!("case {i}: {c}"));
    }
    let indeterminate = out.indeterminate;
    out.expect(indeterminate == 0, || {
        format!("{indeterminate} indeterminate verdicts at default precision")
    });
    Ok(out.finish())
}

/// Deficit `8N + 3` for the planar rotation system on `cube(2, N)` and the
/// local growth exponent near `N = 20`.
pub fn main_term(kind: SuiteKind) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(9);
    let sys = rotation_system(2)?;
    let n_max = kind.pick(20, 20);
    let mut deficits: Vec<(usize, Rational)> = Vec::new();
    for n in 1..=n_max {
        let a = cube(2, n as u32)?;
        let c = main_term_probe(&sys, &a)?;
        out.record(&c);
        out.expect(c.verdict != Verdict::Violated, || format!("N={n}: probe reported Violated"));
        let deficit = &int(4 * a.len() as i64) - c.lhs.exact().expect("exact");
        let expected = int(8 * n as i64 + 3);
        out.expect(deficit == expected, || format!("N={n}: deficit {deficit} != {expected}"));
        deficits.push((a.len(), deficit));
    }
    let (s1, d1) = &deficits[n_max - 2];
    let (s2, d2) = &deficits[n_max - 1];
    let slope = local_growth_exponent((*s1, d1), (*s2, d2))?;
    out.note(format!("local exponent at N={n_max}: {slope:.4}"));
    out.expect((slope - 0.5).abs() < 0.1, || format!("exponent {slope:.4} not within 0.1 of 1/2"));
    Ok(out.finish())
}

/// The fitted polynomial for `A_{2,4}` is `(k + 1)^2 = Q_A(k)`.
pub fn khovanskii(_kind: SuiteKind) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(10);
    let report = khovanskii_probe(&long_simplex(2, 4)?, 6)?;
    out.expect_holds("A_{2,4}", &report.certificate);
    let target = crate::poly::Polynomial::new(vec![int(1), int(2), int(1)]);
    out.expect(report.polynomial.as_ref() == Some(&target), || {
        format!("fitted {:?}", report.polynomial.as_ref().map(ToString::to_string))
    });
    out.expect(report.lower_polynomial == target, || format!("Q_A = {}", report.lower_polynomial));
    for (k, &s) in report.sizes.iter().enumerate() {
        let k = k + 1;
        out.expect(s == (k + 1) * (k + 1), || format!("|{k}A| = {s}"));
    }
    Ok(out.finish())
}

/// Random full-dimensional planar sets reduce to `A_{2,|A|}` with
/// non-increasing `|2·(intermediate)|` along the trace.
pub fn reduction_pipeline(kind: SuiteKind, seed: u64) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(11);
    let count = kind.pick(50, 200);
    let results = par_cases(count, |i| {
        let mut rng = rng_for(seed, 11, i);
        let size = 3 + rng.below(10) as usize;
        let a = random_full_dimensional_set(2, size, 6, rng.next_u64())?;
        let outcome = match reduce_to_simplex(&a) {
            Ok(r) => r,
            Err(e) => return Ok(Err(format!("case {i}: {e}"))),
        };
        let target = long_simplex(2, a.len())?;
        if outcome.simplex() != &target {
            return Ok(Err(format!("case {i}: ended at {:?}", outcome.simplex())));
        }
        let doubled = outcome
            .trace
            .replay()?
            .iter()
            .map(|s| iterated_sumset(s, 2).map(|x| x.len()))
            .collect::<Result<Vec<_>>>()?;
        if doubled.windows(2).any(|w| w[1] > w[0]) {
            return Ok(Err(format!("case {i}: |2A| increased along {doubled:?}")));
        }
        Ok(Ok(outcome.trace.steps.len()))
    })?;
    let mut steps = 0;
    for r in results {
        out.cases += 1;
        match r {
            Ok(s) => {
                out.holds += 1;
                steps += s;
            }
            Err(m) => {
                out.violated += 1;
                out.fail(m);
            }
        }
    }
    out.note(format!("{steps} compressions in total"));
    Ok(out.finish())
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, kind: SuiteKind, seed: u64) -> Result<CriterionOutcome> {
    match id {
        1 => simplex_formula_oracle(kind),
        2 => freiman_kfold_equality(kind, seed),
        3 => gs_kfold(kind, seed),
        4 => compression_laws(kind, seed),
        5 => rotation_example(kind),
        6 => shear_regression(kind),
        7 => plunnecke_ruzsa_family(kind, seed),
        8 => discrete_bm(kind, seed),
        9 => main_term(kind),
        10 => khovanskii(kind),
        11 => reduction_pipeline(kind, seed),
        _ => Err(Error::InvalidArgument(format!("no criterion {id}"))),
    }
}

pub fn run_suite(kind: SuiteKind, seed: u64) -> Result<SuiteReport> {
    let outcomes = (1..=CRITERIA.len())
        .map(|id| run_criterion(id, kind, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { kind, seed, outcomes })
}
