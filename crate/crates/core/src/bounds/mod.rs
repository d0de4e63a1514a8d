//! Exact and interval-certified evaluation of the sumset inequalities.
//!
//! Every check returns a [`Certificate`]; counts are exact integers and
//! doubling constants `K` are exact rationals, taken as the smallest value
//! satisfying each lemma's hypothesis.

mod bm;
mod probes;

pub use bm::check_discrete_bm;
pub use probes::{
    determinant_probe, khovanskii_probe, local_growth_exponent, main_term_probe, KhovanskiiReport,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::certificate::{Certificate, Relation, StatementId, Verdict};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{affine_dimension, covering_number, max_fiber};
use crate::io::{digest_point_set, digest_system};
use crate::linalg::{LinearSystem, Subspace};
use crate::point::{Point, PointSet};
use crate::rational::{binomial, pow, Rational};
use crate::structure::{decide_irreducible, IrreducibilityStatus};
use crate::sumset::{difference_sumset, iterated_sumset, linear_image, minkowski_sum, minkowski_sum_refs, weighted_sumset};

fn count(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub(crate) fn common_dim(sets: &[PointSet]) -> Result<usize> {
    let first = sets.first().ok_or(Error::Empty("list of sets"))?;
    for s in sets {
        check_dim(first.dim(), s.dim())?;
        s.require_nonempty("set")?;
    }
    Ok(first.dim())
}

fn digests(sets: &[PointSet]) -> Vec<String> {
    sets.iter().map(digest_point_set).collect()
}

pub(crate) fn require_full_dimensional(a: &PointSet) -> Result<usize> {
    a.require_nonempty("set")?;
    let d = a.dim();
    let dim = affine_dimension(a)?;
    if dim != d {
        return Err(Error::Precondition(format!(
            "set has affine dimension {dim}, expected {d}"
        )));
    }
    Ok(d)
}

/// `|A_1 + … + A_k| ≥ |A_1| + … + |A_k| − (k − 1)`.
pub fn check_elementary(sets: &[PointSet]) -> Result<Certificate> {
    common_dim(sets)?;
    let k = sets.len();
    let lhs = minkowski_sum(sets)?.len();
    let rhs = sets.iter().map(PointSet::len).sum::<usize>() - (k - 1);
    Ok(Certificate::exact(StatementId::Elementary, Relation::AtLeast, count(lhs), count(rhs))
        .with_inputs(digests(sets))
        .with_detail("k", k))
}

/// `|ΣA_i| ≥ (Σ|A_i|/r_i − (k − 1))(Σr_i − (k − 1))` for planar sets, where
/// `r_i` is the number of lines parallel to `direction` needed to cover `A_i`.
pub fn check_gs_kfold(sets: &[PointSet], direction: &Point) -> Result<Certificate> {
    let d = common_dim(sets)?;
    if d != 2 {
        return Err(Error::Precondition(format!("planar sets required, got dimension {d}")));
    }
    let k = sets.len();
    if k < 2 {
        return Err(Error::InvalidArgument("at least two sets are required".into()));
    }
    let r: Vec<usize> = sets
        .iter()
        .map(|s| covering_number(s, direction))
        .collect::<Result<_>>()?;
    let lhs = minkowski_sum(sets)?.len();
    let km1 = count(k - 1);
    let density: Rational = sets.iter().zip(&r).map(|(s, &ri)| count(s.len()) / count(ri)).sum();
    let lines: Rational = r.iter().map(|&ri| count(ri)).sum();
    let rhs = (density - &km1) * (lines - &km1);
    Ok(Certificate::exact(StatementId::GsKfold, Relation::AtLeast, count(lhs), rhs)
        .with_inputs(digests(sets))
        .with_detail("k", k)
        .with_detail("r", format!("{r:?}")))
}

/// `binom(k+d−1, d)|A| − (k−1)binom(k+d−1, d−1)`.
pub fn freiman_kfold_bound(d: usize, size: usize, k: usize) -> Rational {
    let top = (k + d - 1) as u64;
    big(binomial(top, d as u64)) * count(size) - count(k - 1) * big(binomial(top, d as u64 - 1))
}

/// The same bound written as `binom(k+d−1, d−1)(k(|A| − d)/d + 1)`.
pub fn freiman_kfold_bound_rewritten(d: usize, size: usize, k: usize) -> Rational {
    let top = (k + d - 1) as u64;
    let inner = count(k) * (count(size) - count(d)) / count(d) + Rational::one();
    big(binomial(top, d as u64 - 1)) * inner
}

/// `|kA| ≥ binom(k+d−1, d)|A| − (k−1)binom(k+d−1, d−1)` for full-dimensional `A`.
pub fn check_freiman_kfold(a: &PointSet, k: usize) -> Result<Certificate> {
    let d = require_full_dimensional(a)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let rhs = freiman_kfold_bound(d, a.len(), k);
    let rewritten = freiman_kfold_bound_rewritten(d, a.len(), k);
    if rhs != rewritten {
        return Err(Error::InvalidArgument(format!(
            "bound forms disagree: {rhs} vs {rewritten}"
        )));
    }
    let lhs = iterated_sumset(a, k)?.len();
    Ok(Certificate::exact(StatementId::FreimanKfold, Relation::AtLeast, count(lhs), rhs)
        .with_inputs([digest_point_set(a)])
        .with_detail("d", d)
        .with_detail("k", k))
}

/// `|2A| ≥ (d+1)|A| − d(d+1)/2` for full-dimensional `A`.
pub fn check_freiman_lemma(a: &PointSet) -> Result<Certificate> {
    let d = require_full_dimensional(a)?;
    let rhs = count((d + 1) * a.len()) - count(d * (d + 1) / 2);
    if rhs != freiman_kfold_bound(d, a.len(), 2) {
        return Err(Error::InvalidArgument("k = 2 bound forms disagree".into()));
    }
    let lhs = iterated_sumset(a, 2)?.len();
    Ok(Certificate::exact(StatementId::FreimanLemma, Relation::AtLeast, count(lhs), rhs)
        .with_inputs([digest_point_set(a)])
        .with_detail("d", d))
}

/// `|kA_{d,N}| = binom(k+d−1, d)(N − d) + binom(k+d−1, d−1)`.
pub fn simplex_cardinality(d: usize, n: usize, k: usize) -> Result<BigInt> {
    if d == 0 || n <= d {
        return Err(Error::InvalidArgument(format!("need N >= d + 1, got d = {d}, N = {n}")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let top = (k + d - 1) as u64;
    Ok(binomial(top, d as u64) * BigInt::from(n - d) + binomial(top, d as u64 - 1))
}

/// Compares the closed form against the enumerated `|kA_{d,N}|`.
pub fn check_simplex_formula(d: usize, n: usize, k: usize) -> Result<Certificate> {
    let formula = simplex_cardinality(d, n, k)?;
    let a = crate::generators::long_simplex(d, n)?;
    let lhs = iterated_sumset(&a, k)?.len();
    Ok(Certificate::exact(StatementId::SimplexFormula, Relation::Equal, count(lhs), big(formula))
        .with_inputs([digest_point_set(&a)])
        .with_detail("d", d)
        .with_detail("N", n)
        .with_detail("k", k))
}

/// `|U||V + W| ≤ |V + U||U + W|`.
pub fn check_ruzsa_triangle(u: &PointSet, v: &PointSet, w: &PointSet) -> Result<Certificate> {
    let sets = [u.clone(), v.clone(), w.clone()];
    common_dim(&sets)?;
    let lhs = u.len() * minkowski_sum_refs(&[v, w])?.len();
    let rhs = minkowski_sum_refs(&[v, u])?.len() * minkowski_sum_refs(&[u, w])?.len();
    Ok(Certificate::exact(StatementId::RuzsaTriangle, Relation::AtMost, count(lhs), count(rhs))
        .with_inputs(digests(&sets)))
}

/// `|mA − nA| ≤ K^{m+n}|B|` with `K = |A + B|/|B|`.
pub fn check_plunnecke_ruzsa(a: &PointSet, b: &PointSet, m: usize, n: usize) -> Result<Certificate> {
    common_dim(&[a.clone(), b.clone()])?;
    let k = count(minkowski_sum_refs(&[a, b])?.len()) / count(b.len());
    let lhs = difference_sumset(a, m, n)?.len();
    let rhs = pow(&k, (m + n) as u32) * count(b.len());
    Ok(Certificate::exact(StatementId::PlunneckeRuzsa, Relation::AtMost, count(lhs), rhs)
        .with_inputs([digest_point_set(a), digest_point_set(b)])
        .with_detail("K", &k)
        .with_detail("m", m)
        .with_detail("n", n))
}

/// `|X + X| ≤ K^7 N` for `X = A_1 + … + A_k` with all `|A_i| = N` and `K = |X|/N`.
pub fn check_iterated_pr(sets: &[PointSet]) -> Result<Certificate> {
    common_dim(sets)?;
    let n = sets[0].len();
    if sets.iter().any(|s| s.len() != n) {
        return Err(Error::Precondition("all sets must have the same size".into()));
    }
    let x = minkowski_sum(sets)?;
    let k = count(x.len()) / count(n);
    let lhs = minkowski_sum_refs(&[&x, &x])?.len();
    let rhs = pow(&k, 7) * count(n);
    Ok(Certificate::exact(StatementId::IteratedPr, Relation::AtMost, count(lhs), rhs)
        .with_inputs(digests(sets))
        .with_detail("K", &k)
        .with_detail("k", sets.len()))
}

/// `|X + L_2(X) + … + L_k(X)| ≤ K^{7k+1}|A|` for `X = A + L_2(A) + … + L_k(A)`
/// and `K = |X|/|A|`. The first map must be the identity: with an arbitrary
/// leading map the bound fails (see [`check_shear_counterexample`]).
pub fn check_linear_pr(system: &LinearSystem, a: &PointSet) -> Result<Certificate> {
    check_dim(system.dim(), a.dim())?;
    a.require_nonempty("set")?;
    if !system.maps()[0].is_identity() {
        return Err(Error::Precondition("the first map must be the identity".into()));
    }
    let x = weighted_sumset(system, a)?;
    let k = count(x.len()) / count(a.len());
    let lhs = weighted_sumset(system, &x)?.len();
    let rhs = pow(&k, (7 * system.len() + 1) as u32) * count(a.len());
    Ok(Certificate::exact(StatementId::LinearPr, Relation::AtMost, count(lhs), rhs)
        .with_inputs([digest_system(system), digest_point_set(a)])
        .with_detail("K", &k)
        .with_detail("k", system.len()))
}

/// Fibre bound for an irreducible system: with `K = |ΣL_i(A)|/|A|` and
/// `r = dim U < d`, `max_x |(x + U) ∩ A| ≤ (K|A|)^{1 − 2^{−r}}`, compared
/// exactly after raising both sides to the power `2^r`.
pub fn check_fiber_bound(system: &LinearSystem, a: &PointSet, u: &Subspace) -> Result<Certificate> {
    check_dim(system.dim(), a.dim())?;
    check_dim(system.dim(), u.ambient_dim())?;
    a.require_nonempty("set")?;
    let r = u.dim();
    if r >= system.dim() {
        return Err(Error::Precondition("subspace must be proper".into()));
    }
    let verdict = decide_irreducible(system)?;
    if verdict.status != IrreducibilityStatus::Irreducible {
        return Err(Error::Precondition(format!(
            "system must be certified irreducible, got {:?}",
            verdict.status
        )));
    }
    let fiber = max_fiber(a, u)?;
    let total = weighted_sumset(system, a)?.len();
    let power = 1u32 << r;
    let lhs = pow(&count(fiber), power);
    let rhs = pow(&count(total), power - 1);
    Ok(Certificate::exact(StatementId::FiberBound, Relation::AtMost, lhs, rhs)
        .with_inputs([digest_system(system), digest_point_set(a)])
        .with_detail("r", r)
        .with_detail("max_fiber", fiber)
        .with_detail("K", count(total) / count(a.len())))
}

/// For a two-map system with `X = L_1(A) + L_2(A)`, asserts
/// `|L_1(X) + L_2(X)| = |X|^2`. On the shear pair this holds for every `N`,
/// which is why [`check_linear_pr`] insists on an identity leading map.
pub fn check_shear_counterexample(system: &LinearSystem, a: &PointSet) -> Result<Certificate> {
    check_dim(system.dim(), a.dim())?;
    a.require_nonempty("set")?;
    let x = weighted_sumset(system, a)?;
    let images = system
        .maps()
        .iter()
        .map(|m| linear_image(m, &x))
        .collect::<Result<Vec<_>>>()?;
    let lhs = minkowski_sum(&images)?.len();
    let rhs = pow(&count(x.len()), system.len() as u32);
    Ok(Certificate::exact(StatementId::ShearCounterexample, Relation::Equal, count(lhs), rhs)
        .with_inputs([digest_system(system), digest_point_set(a)])
        .with_detail("x_size", x.len())
        .with_detail("a_size", a.len()))
}

pub(crate) fn informational(cert: Certificate, holds: bool) -> Certificate {
    let verdict = if holds { Verdict::Holds } else { Verdict::Indeterminate };
    cert.with_verdict(verdict)
}

pub(crate) fn is_zero_or_less(v: &Rational) -> bool {
    v <= &Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cube, grid, long_simplex, rotation_system, shear_counterexample};
    use crate::rational::{int, ratio};

    fn set1(v: &[i64]) -> PointSet {
        PointSet::new(1, v.iter().map(|&x| Point::from_ints(&[x]))).unwrap()
    }

    fn range(n: i64) -> PointSet {
        set1(&(0..n).collect::<Vec<_>>())
    }

    fn exact(c: &Certificate) -> (Rational, Rational) {
        (c.lhs.exact().unwrap().clone(), c.rhs.exact().unwrap().clone())
    }

    #[test]
    fn elementary_is_sharp_on_progressions() {
        let c = check_elementary(&[set1(&[0, 1, 2]), set1(&[0, 1])]).unwrap();
        assert_eq!(exact(&c), (int(4), int(4)));
        assert!(c.holds());
        let c = check_elementary(&[set1(&[5]), set1(&[7]), set1(&[1])]).unwrap();
        assert_eq!(exact(&c), (int(1), int(1)));
    }

    #[test]
    fn gs_grids_are_equality_cases() {
        let gs = grid(&[(2, 2), (2, 2), (2, 2)]).unwrap();
        let c = check_gs_kfold(&gs, &Point::from_ints(&[1, 0])).unwrap();
        assert_eq!(exact(&c), (int(16), int(16)));
        let gs = grid(&[(3, 1), (2, 4)]).unwrap();
        let c = check_gs_kfold(&gs, &Point::from_ints(&[1, 0])).unwrap();
        assert_eq!(exact(&c), (int(16), int(16)));
        assert!(check_gs_kfold(&gs[..1], &Point::from_ints(&[1, 0])).is_err());
    }

    #[test]
    fn freiman_instances() {
        let sq = PointSet::from_ints(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]).unwrap();
        let c = check_freiman_kfold(&sq, 2).unwrap();
        assert_eq!(exact(&c), (int(9), int(9)));
        let c = check_freiman_kfold(&range(6), 4).unwrap();
        assert_eq!(exact(&c), (int(21), int(21)));
        let c = check_freiman_lemma(&long_simplex(2, 5).unwrap()).unwrap();
        assert_eq!(exact(&c), (int(12), int(12)));
        let tri = PointSet::from_ints(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let c = check_freiman_lemma(&tri).unwrap();
        assert_eq!(exact(&c), (int(10), int(10)));
        let flat = PointSet::from_ints(2, &[&[0, 0], &[1, 1]]).unwrap();
        assert!(matches!(check_freiman_kfold(&flat, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn simplex_formula_values() {
        assert_eq!(simplex_cardinality(2, 4, 2).unwrap(), BigInt::from(9));
        assert_eq!(simplex_cardinality(3, 6, 3).unwrap(), BigInt::from(40));
        for n in 2..8 {
            for k in 1..5 {
                assert_eq!(simplex_cardinality(1, n, k).unwrap(), BigInt::from(k * (n - 1) + 1));
            }
        }
        assert!(check_simplex_formula(3, 6, 3).unwrap().holds());
        assert!(simplex_cardinality(2, 2, 1).is_err());
    }

    #[test]
    fn plunnecke_family() {
        let a = range(10);
        let c = check_plunnecke_ruzsa(&a, &a, 2, 1).unwrap();
        assert_eq!(exact(&c), (int(28), ratio(6859, 100)));
        assert!(c.holds());
        let c = check_plunnecke_ruzsa(&a, &range(3), 0, 0).unwrap();
        assert_eq!(exact(&c), (int(1), int(3)));
        let c = check_iterated_pr(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(exact(&c), (int(37), ratio(893_871_739, 1_000_000)));
        let u = set1(&[0, 1]);
        let c = check_ruzsa_triangle(&u, &u, &u).unwrap();
        assert_eq!(exact(&c), (int(6), int(9)));
    }

    #[test]
    fn linear_pr_requires_identity_lead() {
        let sys = rotation_system(2).unwrap();
        let c = check_linear_pr(&sys, &cube(2, 2).unwrap()).unwrap();
        assert!(c.holds());
        let (shear, a) = shear_counterexample(4).unwrap();
        assert!(matches!(check_linear_pr(&shear, &a), Err(Error::Precondition(_))));
        let c = check_shear_counterexample(&shear, &a).unwrap();
        assert_eq!(exact(&c), (int(49), int(49)));
    }

    #[test]
    fn fiber_bound_on_rotation() {
        let sys = rotation_system(2).unwrap();
        let a = cube(2, 3).unwrap();
        let line = Subspace::span(2, &[Point::from_ints(&[1, 0])]).unwrap();
        let c = check_fiber_bound(&sys, &a, &line).unwrap();
        assert_eq!(exact(&c), (int(49), int(169)));
        let c = check_fiber_bound(&sys, &a, &Subspace::zero(2)).unwrap();
        assert_eq!(exact(&c), (int(1), int(1)));
        let shear = LinearSystem::new(vec![
            crate::RationalMatrix::identity(2),
            crate::RationalMatrix::from_ints(&[&[1, 1], &[0, 1]]).unwrap(),
        ])
        .unwrap();
        assert!(check_fiber_bound(&shear, &a, &line).is_err());
    }
}
