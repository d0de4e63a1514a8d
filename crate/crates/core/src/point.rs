//! Points of `Q^d` and finite deduplicated point sets.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::rational::{format_rational, int, Rational};

/// A vector of exact rational coordinates.
///
/// Points order lexicographically by coordinate, each coordinate compared as
/// its `(numerator, denominator)` pair. On integer points this is the usual
/// lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<Rational>,
}

fn cmp_coord(a: &Rational, b: &Rational) -> Ordering {
    a.numer()
        .cmp(b.numer())
        .then_with(|| a.denom().cmp(b.denom()))
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match cmp_coord(a, b) {
                Ordering::Equal => continue,
                non_eq => return non_eq,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Rational::zero(); dim])
    }

    /// The standard basis vector `e_{index+1}` (0-based `index`).
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut p = Self::zero(dim);
        p.coords[index] = int(1);
        p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rational::is_integer)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Point {
        Point::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, factor: &Rational) -> Point {
        Point::new(self.coords.iter().map(|a| a * factor).collect())
    }

    pub fn dot(&self, other: &Point) -> Rational {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Coordinates as `i64` when the point is integral and every coordinate fits.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.numer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub(crate) fn max_abs(&self) -> Rational {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A finite set of points in `Q^dim`, stored sorted and without duplicates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    /// Builds a set, rejecting points of the wrong length. Duplicates are dropped.
    pub fn new(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let mut points: Vec<Point> = points.into_iter().collect();
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        points.sort_unstable();
        points.dedup();
        Ok(Self { dim, points })
    }

    /// Same as [`PointSet::new`] for callers that already guarantee the lengths.
    pub(crate) fn from_points_unchecked(dim: usize, mut points: Vec<Point>) -> Self {
        points.sort_unstable();
        points.dedup();
        Self { dim, points }
    }

    pub fn from_ints(dim: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::new(dim, rows.iter().map(|r| Point::from_ints(r)))
    }

    pub fn from_int_vecs(dim: usize, rows: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        Self::new(dim, rows.into_iter().map(|r| Point::from_ints(&r)))
    }

    pub fn singleton(point: Point) -> Self {
        Self {
            dim: point.dim(),
            points: vec![point],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, point: &Point) -> bool {
        self.points.binary_search(point).is_ok()
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.dim == other.dim && self.points.iter().all(|p| other.contains(p))
    }

    pub fn is_integral(&self) -> bool {
        self.points.iter().all(Point::is_integral)
    }

    pub fn translate(&self, by: &Point) -> Result<PointSet> {
        check_dim(self.dim, by.dim())?;
        Ok(Self::from_points_unchecked(
            self.dim,
            self.points.iter().map(|p| p.add(by)).collect(),
        ))
    }

    pub fn negate(&self) -> PointSet {
        Self::from_points_unchecked(self.dim, self.points.iter().map(Point::neg).collect())
    }

    pub(crate) fn require_nonempty(&self, what: &'static str) -> Result<()> {
        if self.is_empty() {
            Err(Error::Empty(what))
        } else {
            Ok(())
        }
    }

    /// Integer coordinates as `i64` rows, if the set is integral and fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.points.iter().map(Point::to_i64).collect()
    }

    /// Common denominator of every coordinate in the set.
    pub(crate) fn common_denominator(&self) -> BigInt {
        crate::rational::lcm_of_denominators(self.points.iter().flat_map(|p| p.coords().iter()))
    }

    pub(crate) fn max_abs(&self) -> Rational {
        self.points
            .iter()
            .map(Point::max_abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn dedups_and_sorts() {
        let a = PointSet::from_ints(2, &[&[1, 0], &[0, 0], &[1, 0]]).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.points()[0], Point::from_ints(&[0, 0]));
    }

    #[test]
    fn rejects_ragged_points() {
        let err = PointSet::from_ints(2, &[&[1, 0], &[0]]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn ordering_uses_numerator_then_denominator() {
        let half = Point::new(vec![ratio(1, 2)]);
        let one = Point::new(vec![int(1)]);
        let two = Point::new(vec![int(2)]);
        assert!(one < half);
        assert!(half < two);
    }
}
