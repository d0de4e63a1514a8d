//! Minkowski sums, linear images and iterated sumsets.
//!
//! Sums are folded left to right, `((A_1 + A_2) + A_3) + …`, deduplicating
//! after each step so memory tracks the true partial sumset size. When every
//! summand can be scaled by a common denominator into `i64` coordinates
//! without overflow, the fold runs on machine integers.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{LinearSystem, RationalMatrix};
use crate::point::{Point, PointSet};
use crate::rational::Rational;

const I64_HEADROOM: i64 = 1 << 62;

struct Scaled {
    denom: BigInt,
    sets: Vec<Vec<Vec<i64>>>,
}

fn scale_to_lattice(sets: &[&PointSet]) -> Option<Scaled> {
    let denom = sets
        .iter()
        .fold(BigInt::from(1), |acc, s| num_integer::Integer::lcm(&acc, &s.common_denominator()));
    let d = Rational::from_integer(denom.clone());
    let mut total = Rational::zero();
    for s in sets {
        total += s.max_abs() * &d;
    }
    if total >= Rational::from_integer(BigInt::from(I64_HEADROOM)) {
        return None;
    }
    let scaled = sets
        .iter()
        .map(|s| {
            s.iter()
                .map(|p| {
                    p.coords()
                        .iter()
                        .map(|c| (c * &d).to_integer().to_i64().expect("bounded above"))
                        .collect()
                })
                .collect()
        })
        .collect();
    Some(Scaled { denom, sets: scaled })
}

fn unscale(dim: usize, denom: &BigInt, points: impl IntoIterator<Item = Vec<i64>>) -> PointSet {
    let pts = points
        .into_iter()
        .map(|v| {
            Point::new(
                v.into_iter()
                    .map(|x| Rational::new(BigInt::from(x), denom.clone()))
                    .collect(),
            )
        })
        .collect();
    PointSet::from_points_unchecked(dim, pts)
}

fn fold_i64(acc: &HashSet<Vec<i64>>, next: &[Vec<i64>]) -> HashSet<Vec<i64>> {
    let mut out = HashSet::with_capacity(acc.len().saturating_mul(2));
    for a in acc {
        for b in next {
            out.insert(a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>());
        }
    }
    out
}

fn fold_exact(acc: &HashSet<Point>, next: &PointSet) -> HashSet<Point> {
    let mut out = HashSet::with_capacity(acc.len().saturating_mul(2));
    for a in acc {
        for b in next {
            out.insert(a.add(b));
        }
    }
    out
}

fn sum_of(sets: &[&PointSet]) -> Result<PointSet> {
    let first = sets.first().ok_or(Error::Empty("list of summands"))?;
    let dim = first.dim();
    for s in sets {
        check_dim(dim, s.dim())?;
        s.require_nonempty("summand")?;
    }
    if let Some(scaled) = scale_to_lattice(sets) {
        let mut acc: HashSet<Vec<i64>> = scaled.sets[0].iter().cloned().collect();
        for next in &scaled.sets[1..] {
            acc = fold_i64(&acc, next);
        }
        return Ok(unscale(dim, &scaled.denom, acc));
    }
    let mut acc: HashSet<Point> = first.iter().cloned().collect();
    for next in &sets[1..] {
        acc = fold_exact(&acc, next);
    }
    Ok(PointSet::from_points_unchecked(dim, acc.into_iter().collect()))
}

/// Upper bound on `|A_1 + … + A_k|`: the smaller of `Π|A_i|` and the number
/// of points of the common lattice in the bounding box of the sum.
pub fn sumset_size_bound(sets: &[&PointSet]) -> u128 {
    let product = sets
        .iter()
        .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128));
    let Some(first) = sets.first() else { return 1 };
    if sets.iter().any(|s| s.is_empty()) {
        return 0;
    }
    let denom = Rational::from_integer(
        sets.iter()
            .fold(BigInt::from(1), |acc, s| num_integer::Integer::lcm(&acc, &s.common_denominator())),
    );
    let mut volume = 1u128;
    for j in 0..first.dim() {
        let mut extent = Rational::zero();
        for s in sets {
            let lo = s.iter().map(|p| &p.coords()[j]).min().expect("non-empty");
            let hi = s.iter().map(|p| &p.coords()[j]).max().expect("non-empty");
            extent += hi - lo;
        }
        let side: BigInt = (extent * &denom).to_integer() + 1;
        volume = volume.saturating_mul(side.to_u128().unwrap_or(u128::MAX));
    }
    product.min(volume)
}

/// `A_1 + … + A_k`.
pub fn minkowski_sum(sets: &[PointSet]) -> Result<PointSet> {
    let refs: Vec<&PointSet> = sets.iter().collect();
    sum_of(&refs)
}

/// Same as [`minkowski_sum`] over borrowed summands.
pub fn minkowski_sum_refs(sets: &[&PointSet]) -> Result<PointSet> {
    sum_of(sets)
}

/// `{ M·a : a ∈ A }`.
pub fn linear_image(m: &RationalMatrix, a: &PointSet) -> Result<PointSet> {
    check_dim(m.dim(), a.dim())?;
    Ok(PointSet::from_points_unchecked(
        a.dim(),
        a.iter().map(|p| m.apply(p)).collect(),
    ))
}

/// `L_1(A) + … + L_k(A)`.
pub fn weighted_sumset(system: &LinearSystem, a: &PointSet) -> Result<PointSet> {
    check_dim(system.dim(), a.dim())?;
    a.require_nonempty("point set")?;
    let images = system
        .maps()
        .iter()
        .map(|m| linear_image(m, a))
        .collect::<Result<Vec<_>>>()?;
    minkowski_sum(&images)
}

/// `kA`, the `k`-fold sum of `A` with itself.
pub fn iterated_sumset(a: &PointSet, k: usize) -> Result<PointSet> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let refs = vec![a; k];
    sum_of(&refs)
}

/// `|jA|` for `j = 1..=k_max`, reusing each partial sum for the next.
pub fn iterated_sumset_sizes(a: &PointSet, k_max: usize) -> Result<Vec<usize>> {
    a.require_nonempty("point set")?;
    let mut sizes = Vec::with_capacity(k_max);
    if k_max == 0 {
        return Ok(sizes);
    }
    if let Some(scaled) = scale_to_lattice(&vec![a; k_max]) {
        let base = &scaled.sets[0];
        let mut acc: HashSet<Vec<i64>> = base.iter().cloned().collect();
        sizes.push(acc.len());
        for _ in 1..k_max {
            acc = fold_i64(&acc, base);
            sizes.push(acc.len());
        }
        return Ok(sizes);
    }
    let mut acc: HashSet<Point> = a.iter().cloned().collect();
    sizes.push(acc.len());
    for _ in 1..k_max {
        acc = fold_exact(&acc, a);
        sizes.push(acc.len());
    }
    Ok(sizes)
}

/// `mA − nA`; the empty sum (`m = n = 0`) is `{0}`.
pub fn difference_sumset(a: &PointSet, m: usize, n: usize) -> Result<PointSet> {
    a.require_nonempty("point set")?;
    if m + n == 0 {
        return Ok(PointSet::singleton(Point::zero(a.dim())));
    }
    let neg = a.negate();
    let mut refs: Vec<&PointSet> = vec![a; m];
    refs.extend(std::iter::repeat_n(&neg, n));
    sum_of(&refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn set(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_ints(dim, rows).unwrap()
    }

    #[test]
    fn size_bound_is_an_upper_bound() {
        let a = PointSet::from_ints(2, &[&[0, 0], &[1, 5], &[3, 2]]).unwrap();
        let b = PointSet::from_ints(2, &[&[0, 0], &[0, 1]]).unwrap();
        assert_eq!(sumset_size_bound(&[&a, &b]), 6);
        let line = PointSet::new(1, (0..100).map(|i| Point::from_ints(&[i]))).unwrap();
        assert_eq!(sumset_size_bound(&[&line, &line, &line]), 298);
    }

    #[test]
    fn singleton_list_is_identity() {
        let a = set(1, &[&[0]]);
        assert_eq!(minkowski_sum(std::slice::from_ref(&a)).unwrap(), a);
    }

    #[test]
    fn two_segments_make_a_square() {
        let a = set(2, &[&[0, 0], &[1, 0]]);
        let b = set(2, &[&[0, 0], &[0, 1]]);
        let s = minkowski_sum(&[a, b]).unwrap();
        assert_eq!(s, set(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
    }

    #[test]
    fn errors() {
        assert_eq!(minkowski_sum(&[]), Err(Error::Empty("list of summands")));
        let a = set(1, &[&[0]]);
        let b = set(2, &[&[0, 0]]);
        assert!(matches!(
            minkowski_sum(&[a.clone(), b]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(iterated_sumset(&a, 0).is_err());
    }

    #[test]
    fn rational_points_sum_exactly() {
        let a = PointSet::new(1, [Point::new(vec![ratio(1, 2)]), Point::new(vec![ratio(1, 3)])]).unwrap();
        let s = iterated_sumset(&a, 2).unwrap();
        let expect = PointSet::new(
            1,
            [ratio(1, 1), ratio(5, 6), ratio(2, 3)].map(|x| Point::new(vec![x])),
        )
        .unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn huge_coordinates_fall_back_to_exact_path() {
        let big = i64::MAX / 2;
        let a = set(1, &[&[0], &[big]]);
        let s = iterated_sumset(&a, 3).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.contains(&Point::new(vec![Rational::from_integer(BigInt::from(big) * 3)])));
    }

    #[test]
    fn linear_images() {
        let rot = RationalMatrix::from_ints(&[&[0, -1], &[1, 0]]).unwrap();
        assert_eq!(
            linear_image(&rot, &set(2, &[&[1, 0]])).unwrap(),
            set(2, &[&[0, 1]])
        );
        let two = RationalMatrix::from_ints(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(
            linear_image(&two, &set(2, &[&[0, 0], &[1, 1]])).unwrap(),
            set(2, &[&[0, 0], &[2, 2]])
        );
    }

    #[test]
    fn iterated_sizes_match_direct_sums() {
        let a = set(1, &[&[0], &[1], &[3]]);
        let sizes = iterated_sumset_sizes(&a, 6).unwrap();
        assert_eq!(sizes, vec![3, 6, 9, 12, 15, 18]);
        for (k, &n) in sizes.iter().enumerate() {
            assert_eq!(iterated_sumset(&a, k + 1).unwrap().len(), n);
        }
    }

    #[test]
    fn difference_sets() {
        let a = PointSet::from_int_vecs(1, (0..10).map(|i| vec![i])).unwrap();
        assert_eq!(difference_sumset(&a, 2, 1).unwrap().len(), 28);
        assert_eq!(difference_sumset(&a, 0, 0).unwrap().len(), 1);
    }
}
