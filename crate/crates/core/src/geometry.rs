//! Dimension, projections, fibers and line coverings of point sets.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{rank, Basis, Subspace};
use crate::point::{Point, PointSet};
use crate::rational::Rational;

/// Dimension of the affine span of `A`.
pub fn affine_dimension(a: &PointSet) -> Result<usize> {
    a.require_nonempty("point set")?;
    let base = &a.points()[0];
    let rows: Vec<Vec<Rational>> = a.points()[1..]
        .iter()
        .map(|p| p.sub(base).into_coords())
        .collect();
    Ok(rank(&rows))
}

/// Validates a 0-based index set against the dimension and returns it sorted.
pub fn index_set(dim: usize, indices: &[usize]) -> Result<BTreeSet<usize>> {
    let set: BTreeSet<usize> = indices.iter().copied().collect();
    if let Some(&bad) = set.iter().find(|&&i| i >= dim) {
        return Err(Error::InvalidArgument(format!(
            "index {bad} out of range for dimension {dim}"
        )));
    }
    Ok(set)
}

/// `π_I(A)`: writes each point in basis `B`, keeps the coordinates in `I`
/// (0-based) and maps back to `Q^d`.
pub fn project(a: &PointSet, basis: &Basis, indices: &[usize]) -> Result<PointSet> {
    check_dim(a.dim(), basis.dim())?;
    let keep = index_set(a.dim(), indices)?;
    let pts = a
        .iter()
        .map(|p| {
            let mut coords = basis.coordinates(p);
            for (i, c) in coords.iter_mut().enumerate() {
                if !keep.contains(&i) {
                    *c = Rational::zero();
                }
            }
            basis.combine(&coords)
        })
        .collect();
    Ok(PointSet::from_points_unchecked(a.dim(), pts))
}

/// Number of distinct values of `π_I` on `A`, without materialising points.
pub(crate) fn projection_size(a: &PointSet, basis: &Basis, keep: &BTreeSet<usize>) -> usize {
    let distinct: std::collections::HashSet<Vec<Rational>> = a
        .iter()
        .map(|p| {
            let coords = basis.coordinates(p);
            keep.iter().map(|&i| coords[i].clone()).collect()
        })
        .collect();
    distinct.len()
}

/// Largest number of points of `A` in a single coset `x + U`.
pub fn max_fiber(a: &PointSet, u: &Subspace) -> Result<usize> {
    check_dim(a.dim(), u.ambient_dim())?;
    let counts = fiber_counts(a, u);
    Ok(counts.values().copied().max().unwrap_or(0))
}

/// Number of distinct cosets of `U` meeting `A`.
pub fn coset_count(a: &PointSet, u: &Subspace) -> Result<usize> {
    check_dim(a.dim(), u.ambient_dim())?;
    Ok(fiber_counts(a, u).len())
}

fn fiber_counts(a: &PointSet, u: &Subspace) -> HashMap<Vec<Rational>, usize> {
    let mut counts = HashMap::new();
    for p in a {
        *counts.entry(u.reduce(p.coords())).or_insert(0) += 1;
    }
    counts
}

/// Minimal number of lines parallel to `direction` covering the planar set `A`.
pub fn covering_number(a: &PointSet, direction: &Point) -> Result<usize> {
    if a.dim() != 2 {
        return Err(Error::InvalidArgument(format!(
            "covering number needs a planar set, got dimension {}",
            a.dim()
        )));
    }
    check_dim(2, direction.dim())?;
    if direction.is_zero() {
        return Err(Error::InvalidArgument("direction must be non-zero".into()));
    }
    // f(x) = v_2·x_1 − v_1·x_2 vanishes exactly on span(v).
    let v = direction.coords();
    let values: BTreeSet<Rational> = a
        .iter()
        .map(|p| &v[1] * &p.coords()[0] - &v[0] * &p.coords()[1])
        .collect();
    Ok(values.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_ints(dim, rows).unwrap()
    }

    fn square(n: i64) -> PointSet {
        PointSet::from_int_vecs(
            2,
            (-n..=n).flat_map(|x| (-n..=n).map(move |y| vec![x, y])),
        )
        .unwrap()
    }

    #[test]
    fn affine_dimensions() {
        assert_eq!(affine_dimension(&set(2, &[&[3, 4]])).unwrap(), 0);
        assert_eq!(affine_dimension(&set(2, &[&[0, 0], &[1, 0], &[2, 0]])).unwrap(), 1);
        assert_eq!(affine_dimension(&set(2, &[&[1, 1], &[2, 2], &[1, 2]])).unwrap(), 2);
    }

    #[test]
    fn projections() {
        let a = set(2, &[&[0, 0], &[0, 3], &[1, 7]]);
        let b = Basis::standard(2);
        assert_eq!(project(&a, &b, &[0, 1]).unwrap(), a);
        assert_eq!(project(&a, &b, &[]).unwrap().len(), 1);
        assert_eq!(project(&a, &b, &[0]).unwrap().len(), 2);
        assert!(project(&a, &b, &[2]).is_err());
    }

    #[test]
    fn projection_in_a_skew_basis() {
        let b = Basis::new(vec![Point::from_ints(&[1, 1]), Point::from_ints(&[0, 1])]).unwrap();
        // (x, y) = x·(1,1) + (y − x)·(0,1); keeping the first coordinate sees x only.
        let a = set(2, &[&[0, 5], &[1, 0], &[1, 9]]);
        assert_eq!(project(&a, &b, &[0]).unwrap(), set(2, &[&[0, 0], &[1, 1]]));
    }

    #[test]
    fn fibers() {
        let a = square(3);
        assert_eq!(max_fiber(&a, &Subspace::zero(2)).unwrap(), 1);
        assert_eq!(max_fiber(&a, &Subspace::full(2)).unwrap(), a.len());
        let line = Subspace::span(2, &[Point::unit(2, 0)]).unwrap();
        assert_eq!(max_fiber(&a, &line).unwrap(), 7);
        assert_eq!(coset_count(&a, &line).unwrap(), 7);
    }

    #[test]
    fn covering_numbers() {
        let grid = PointSet::from_int_vecs(2, (1..=3).flat_map(|x| (1..=5).map(move |y| vec![x, y]))).unwrap();
        assert_eq!(covering_number(&grid, &Point::unit(2, 1)).unwrap(), 3);
        assert_eq!(covering_number(&grid, &Point::unit(2, 0)).unwrap(), 5);
        assert_eq!(covering_number(&set(2, &[&[4, 4]]), &Point::unit(2, 0)).unwrap(), 1);
        let diag = set(2, &[&[0, 0], &[1, 1], &[2, 2]]);
        assert_eq!(covering_number(&diag, &Point::from_ints(&[1, 1])).unwrap(), 1);
        assert!(covering_number(&diag, &Point::zero(2)).is_err());
        assert!(covering_number(&set(1, &[&[0]]), &Point::unit(1, 0)).is_err());
    }
}
