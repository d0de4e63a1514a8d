//! Named fixture sets and matrix families, plus seeded random inputs.

use crate::error::{Error, Result};
use crate::geometry::affine_dimension;
use crate::linalg::{LinearSystem, RationalMatrix};
use crate::point::{Point, PointSet};
use crate::rational::int;
use crate::rng::SplitMix64;
use crate::sumset::minkowski_sum;

pub fn int_matrix(rows: &[Vec<i64>]) -> Result<RationalMatrix> {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    RationalMatrix::from_ints(&refs)
}

fn require_long(d: usize, n: usize) -> Result<()> {
    if d == 0 || n <= d {
        return Err(Error::InvalidArgument(format!(
            "long simplex needs d >= 1 and N >= d + 1, got d = {d}, N = {n}"
        )));
    }
    Ok(())
}

/// `A_{d,N} = {0, e_2, …, e_d} ∪ {e_1, 2e_1, …, (N − d)e_1}`.
pub fn long_simplex(d: usize, n: usize) -> Result<PointSet> {
    require_long(d, n)?;
    let mut pts = vec![Point::zero(d)];
    pts.extend((1..d).map(|i| Point::unit(d, i)));
    pts.extend((1..=(n - d) as i64).map(|t| Point::unit(d, 0).scale(&int(t))));
    PointSet::new(d, pts)
}

/// The sumset presentation `{0, e_2, …, e_d} + {e_1, 2e_1, …, (N − d)e_1}`.
/// For `d ≥ 2` this is a different set from [`long_simplex`].
pub fn long_simplex_sumset_form(d: usize, n: usize) -> Result<PointSet> {
    require_long(d, n)?;
    let mut corner = vec![Point::zero(d)];
    corner.extend((1..d).map(|i| Point::unit(d, i)));
    let axis = (1..=(n - d) as i64).map(|t| Point::unit(d, 0).scale(&int(t)));
    minkowski_sum(&[PointSet::new(d, corner)?, PointSet::new(d, axis)?])
}

/// `{x ∈ Z^d : |x_i| ≤ N}`.
pub fn cube(d: usize, n: u32) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let side = 2 * n as usize + 1;
    let total = side.checked_pow(d as u32).ok_or_else(|| Error::InvalidArgument("cube too large".into()))?;
    let pts = (0..total).map(|mut code| {
        let coords: Vec<i64> = (0..d)
            .map(|_| {
                let c = (code % side) as i64 - n as i64;
                code /= side;
                c
            })
            .collect();
        Point::from_ints(&coords)
    });
    PointSet::new(d, pts)
}

/// `L_1 = I` and, for `j ≥ 2`, `L_j(e_1) = e_j`, `L_j(e_j) = −e_1`, fixing the
/// other basis vectors.
pub fn rotation_system(d: usize) -> Result<LinearSystem> {
    if d < 2 {
        return Err(Error::InvalidArgument("rotation system needs d >= 2".into()));
    }
    let mut maps = vec![RationalMatrix::identity(d)];
    for j in 1..d {
        let mut rows: Vec<Vec<i64>> = (0..d)
            .map(|r| (0..d).map(|c| i64::from(r == c)).collect())
            .collect();
        rows[0][0] = 0;
        rows[j][j] = 0;
        rows[j][0] = 1;
        rows[0][j] = -1;
        maps.push(int_matrix(&rows)?);
    }
    LinearSystem::new(maps)
}

/// The shear pair `((1,1),(0,1))`, `((1,1),(−1,1))` with `A = {(0,i) : 1 ≤ i ≤ N}`.
pub fn shear_counterexample(n: usize) -> Result<(LinearSystem, PointSet)> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let l1 = RationalMatrix::from_ints(&[&[1, 1], &[0, 1]])?;
    let l2 = RationalMatrix::from_ints(&[&[1, 1], &[-1, 1]])?;
    let a = PointSet::new(2, (1..=n as i64).map(|i| Point::from_ints(&[0, i])))?;
    Ok((LinearSystem::new(vec![l1, l2])?, a))
}

/// Grids `{1..n_i} × {1..m_i}`.
pub fn grid(dims: &[(usize, usize)]) -> Result<Vec<PointSet>> {
    dims.iter()
        .map(|&(n, m)| {
            if n == 0 || m == 0 {
                return Err(Error::InvalidArgument("grid sides must be positive".into()));
            }
            let pts = (1..=n as i64)
                .flat_map(|x| (1..=m as i64).map(move |y| Point::from_ints(&[x, y])));
            PointSet::new(2, pts)
        })
        .collect()
}

/// `size` distinct points drawn uniformly from `{0, …, side − 1}^d`.
pub fn random_set(d: usize, size: usize, side: u64, seed: u64) -> Result<PointSet> {
    random_set_from(&mut SplitMix64::new(seed), d, size, side)
}

pub(crate) fn random_set_from(rng: &mut SplitMix64, d: usize, size: usize, side: u64) -> Result<PointSet> {
    if d == 0 || side == 0 {
        return Err(Error::InvalidArgument("dimension and box side must be positive".into()));
    }
    let volume = side
        .checked_pow(d as u32)
        .ok_or_else(|| Error::InvalidArgument("box volume overflows".into()))?;
    if size as u64 > volume {
        return Err(Error::InvalidArgument(format!(
            "cannot draw {size} distinct points from a box of {volume}"
        )));
    }
    let pts = rng.distinct_below(volume, size as u64).into_iter().map(|mut code| {
        let coords: Vec<i64> = (0..d)
            .map(|_| {
                let c = (code % side) as i64;
                code /= side;
                c
            })
            .collect();
        Point::from_ints(&coords)
    });
    PointSet::new(d, pts)
}

/// Like [`random_set`] but redrawn until the set spans `Q^d` affinely.
pub fn random_full_dimensional_set(d: usize, size: usize, side: u64, seed: u64) -> Result<PointSet> {
    if size <= d || side < 2 {
        return Err(Error::InvalidArgument(format!(
            "a full-dimensional set in Q^{d} needs at least {} points and box side >= 2",
            d + 1
        )));
    }
    let mut rng = SplitMix64::new(seed);
    loop {
        let a = random_set_from(&mut rng, d, size, side)?;
        if affine_dimension(&a)? == d {
            return Ok(a);
        }
    }
}

/// `k` invertible `d × d` integer matrices with entries in `[−bound, bound]`.
pub fn random_system(d: usize, k: usize, bound: i64, seed: u64) -> Result<LinearSystem> {
    if d == 0 || k == 0 || bound <= 0 {
        return Err(Error::InvalidArgument(
            "random system needs positive dimension, count and entry bound".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let mut maps = Vec::with_capacity(k);
    while maps.len() < k {
        let rows: Vec<Vec<i64>> = (0..d)
            .map(|_| (0..d).map(|_| rng.range_i64(-bound, bound)).collect())
            .collect();
        let m = int_matrix(&rows)?;
        if !num_traits::Zero::is_zero(&m.determinant()) {
            maps.push(m);
        }
    }
    LinearSystem::new(maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compression::is_down_set;
    use crate::sumset::{iterated_sumset, linear_image, minkowski_sum_refs};

    #[test]
    fn long_simplex_instances() {
        assert_eq!(long_simplex(1, 5).unwrap(), PointSet::from_ints(1, &[&[0], &[1], &[2], &[3], &[4]]).unwrap());
        assert_eq!(
            long_simplex(2, 4).unwrap(),
            PointSet::from_ints(2, &[&[0, 0], &[0, 1], &[1, 0], &[2, 0]]).unwrap()
        );
        let a = long_simplex(3, 5).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(affine_dimension(&a).unwrap(), 3);
        assert!(is_down_set(&a));
        assert!(long_simplex(3, 3).is_err());
    }

    #[test]
    fn sumset_form_differs_from_union_form() {
        let s = long_simplex_sumset_form(2, 5).unwrap();
        let expected: Vec<&[i64]> = vec![&[1, 0], &[2, 0], &[3, 0], &[1, 1], &[2, 1], &[3, 1]];
        assert_eq!(s, PointSet::from_ints(2, &expected).unwrap());
        assert_ne!(s, long_simplex(2, 5).unwrap());
        assert_eq!(long_simplex_sumset_form(1, 4).unwrap().len(), 3);
    }

    #[test]
    fn union_form_growth_ratio() {
        for d in 1..=3 {
            for n in (d + 1)..=7 {
                let a = long_simplex(d, n).unwrap();
                for k in 1..=4u32 {
                    let ka = iterated_sumset(&a, k as usize).unwrap().len();
                    assert!(ka <= a.len() * (d + 1).pow(k - 1), "d={d} N={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn cube_sizes() {
        assert_eq!(cube(1, 1).unwrap(), PointSet::from_ints(1, &[&[-1], &[0], &[1]]).unwrap());
        assert_eq!(cube(2, 1).unwrap().len(), 9);
        assert_eq!(cube(3, 2).unwrap().len(), 125);
    }

    #[test]
    fn rotation_system_fixes_cube() {
        let sys = rotation_system(2).unwrap();
        assert_eq!(sys.maps()[1], RationalMatrix::from_ints(&[&[0, -1], &[1, 0]]).unwrap());
        let c = cube(2, 2).unwrap();
        for m in sys.maps() {
            assert_eq!(linear_image(m, &c).unwrap(), c);
        }
        for d in 2..=5 {
            for m in rotation_system(d).unwrap().maps() {
                assert_eq!(m.determinant(), int(1));
            }
        }
        assert!(rotation_system(1).is_err());
    }

    #[test]
    fn shear_pair_for_two() {
        let (sys, a) = shear_counterexample(2).unwrap();
        let images: Vec<PointSet> = sys.maps().iter().map(|m| linear_image(m, &a).unwrap()).collect();
        let diag = PointSet::from_ints(2, &[&[1, 1], &[2, 2]]).unwrap();
        assert_eq!(images[0], diag);
        assert_eq!(images[1], diag);
        let x = minkowski_sum(&images).unwrap();
        assert_eq!(x, PointSet::from_ints(2, &[&[2, 2], &[3, 3], &[4, 4]]).unwrap());
        let y1 = linear_image(&sys.maps()[0], &x).unwrap();
        let y2 = linear_image(&sys.maps()[1], &x).unwrap();
        assert_eq!(minkowski_sum_refs(&[&y1, &y2]).unwrap().len(), 9);
    }

    #[test]
    fn grid_sums() {
        let g = grid(&[(2, 3)]).unwrap();
        assert_eq!(g[0].len(), 6);
        let gs = grid(&[(2, 3), (4, 1), (3, 3)]).unwrap();
        assert_eq!(minkowski_sum(&gs).unwrap().len(), (9 - 2) * (7 - 2));
        let ones = grid(&[(1, 1), (1, 1)]).unwrap();
        assert_eq!(minkowski_sum(&ones).unwrap().len(), 1);
    }

    #[test]
    fn random_fixtures_are_reproducible() {
        let a = random_set(2, 10, 6, 42).unwrap();
        assert_eq!(a, random_set(2, 10, 6, 42).unwrap());
        assert_eq!(a.len(), 10);
        assert!(a.iter().all(|p| p.coords().iter().all(|c| *c >= int(0) && *c < int(6))));
        assert!(random_set(2, 37, 6, 1).is_err());
        let s = random_system(3, 4, 2, 5).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.maps().iter().all(|m| !num_traits::Zero::is_zero(&m.determinant())));
        let f = random_full_dimensional_set(3, 5, 3, 8).unwrap();
        assert_eq!(affine_dimension(&f).unwrap(), 3);
    }
}
