//! Reduction of a full-dimensional lattice set to the long simplex
//! `A_{d,N} = {0, e_2, …, e_d} ∪ {e_1, 2e_1, …, (N − d)e_1}` by compressions.
//!
//! The set is first moved by an injective affine map into `Z^d` so that it
//! contains `0` and a positive multiple of every `e_i`; such a map preserves
//! `|kA|` for every `k`. From there the schedule alternates:
//!
//! 1. down-normalisation with `C_1, …, C_d`, which turns the multiples of
//!    `e_i` into `e_i` and keeps `0, e_1, …, e_d` thereafter;
//! 2. one compression onto `H_j = {x_j = 0}` along `e_j − m·e_1`, where
//!    `m + 1` is the number of points on the `e_1`-axis.
//!
//! Step 2 keeps `0, e_1, …, e_d` (the fibre of `e_j` also holds `m·e_1`) and
//! strictly lowers the off-axis weight `Σ_a Σ_{j≥2} a_j` on any down set other
//! than `A_{d,N}`, the unique full-dimensional down set of minimal weight
//! `d − 1`. If it ever fails to make progress a bounded search over small
//! integer directions is tried before giving up with
//! [`Error::ReductionStalled`].

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::affine_dimension;
use crate::linalg::{RationalMatrix, Subspace};
use crate::point::{Point, PointSet};
use crate::rational::{int, Rational};

use super::{compress, sweep_down, CompressionSpec, CompressionTrace};

const FALLBACK_RADIUS: i64 = 3;

/// `x ↦ linear · (x − origin)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineEmbedding {
    pub origin: Point,
    pub linear: RationalMatrix,
}

impl AffineEmbedding {
    pub fn identity(dim: usize) -> Self {
        Self {
            origin: Point::zero(dim),
            linear: RationalMatrix::identity(dim),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.origin.is_zero() && self.linear.is_identity()
    }

    pub fn apply(&self, p: &Point) -> Point {
        self.linear.apply(&p.sub(&self.origin))
    }

    pub fn apply_set(&self, a: &PointSet) -> PointSet {
        PointSet::from_points_unchecked(a.dim(), a.iter().map(|p| self.apply(p)).collect())
    }
}

fn contains_origin_and_units(a: &PointSet) -> bool {
    let d = a.dim();
    a.contains(&Point::zero(d)) && (0..d).all(|i| a.contains(&Point::unit(d, i)))
}

/// Moves a full-dimensional `A ⊂ Q^d` into `Z^d` so that it contains `0` and
/// a positive multiple of each `e_i`. Sets already in `Z^d` containing
/// `0, e_1, …, e_d` are left unchanged.
pub fn embed_for_reduction(a: &PointSet) -> Result<(PointSet, AffineEmbedding)> {
    let d = a.dim();
    if affine_dimension(a)? != d {
        return Err(Error::Precondition(format!(
            "set is not full-dimensional in Q^{d}"
        )));
    }
    if a.is_integral() && contains_origin_and_units(a) {
        return Ok((a.clone(), AffineEmbedding::identity(d)));
    }
    let origin = a.points()[0].clone();
    let mut chosen: Vec<Point> = Vec::with_capacity(d);
    let mut span = Subspace::zero(d);
    for p in &a.points()[1..] {
        let v = p.sub(&origin);
        if !span.contains(v.coords()) {
            chosen.push(v);
            span = Subspace::span(d, &chosen)?;
            if chosen.len() == d {
                break;
            }
        }
    }
    let to_coords = RationalMatrix::from_columns(&chosen)?.inverse()?;
    let coords: Vec<Point> = a.iter().map(|p| to_coords.apply(&p.sub(&origin))).collect();
    let denom = crate::rational::lcm_of_denominators(coords.iter().flat_map(|c| c.coords().iter()));
    let linear = to_coords.scale(&Rational::from_integer(denom));
    let embedding = AffineEmbedding { origin, linear };
    Ok((embedding.apply_set(a), embedding))
}

/// Outcome of [`reduce_to_simplex`]. `trace.initial` is the embedded set.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub embedding: AffineEmbedding,
    pub trace: CompressionTrace,
}

impl Reduction {
    pub fn simplex(&self) -> &PointSet {
        &self.trace.final_set
    }
}

fn off_axis_weight(a: &PointSet) -> Rational {
    a.iter()
        .flat_map(|p| p.coords()[1..].iter())
        .fold(Rational::zero(), |acc, x| acc + x)
}

fn axis_count(a: &PointSet) -> usize {
    a.iter()
        .filter(|p| p.coords()[1..].iter().all(Zero::is_zero))
        .count()
}

fn admissible(candidate: &PointSet, current_weight: &Rational) -> bool {
    candidate.is_integral()
        && candidate
            .iter()
            .all(|p| p.coords().iter().all(|x| !x.is_negative()))
        && contains_origin_and_units(candidate)
        && off_axis_weight(candidate) < *current_weight
}

fn scheduled_step(current: &PointSet) -> Result<Option<(CompressionSpec, PointSet)>> {
    let d = current.dim();
    let weight = off_axis_weight(current);
    let m = axis_count(current) as i64 - 1;
    for j in 1..d {
        let v = Point::unit(d, j).sub(&Point::unit(d, 0).scale(&int(m)));
        let spec = CompressionSpec::onto_axis_hyperplane(d, j, v)?;
        let next = compress(current, &spec)?;
        if admissible(&next, &weight) {
            return Ok(Some((spec, next)));
        }
    }
    Ok(None)
}

fn small_directions(d: usize, j: usize) -> impl Iterator<Item = Point> {
    let side = (2 * FALLBACK_RADIUS + 1) as u64;
    let total = side.pow(d as u32);
    (0..total).filter_map(move |mut code| {
        let mut v = Vec::with_capacity(d);
        for _ in 0..d {
            v.push((code % side) as i64 - FALLBACK_RADIUS);
            code /= side;
        }
        (v[j] != 0).then(|| Point::from_ints(&v))
    })
}

fn fallback_step(current: &PointSet) -> Result<Option<(CompressionSpec, PointSet)>> {
    let d = current.dim();
    let weight = off_axis_weight(current);
    for j in 0..d {
        for v in small_directions(d, j) {
            let spec = CompressionSpec::onto_axis_hyperplane(d, j, v)?;
            let next = compress(current, &spec)?;
            if admissible(&next, &weight) {
                return Ok(Some((spec, next)));
            }
        }
    }
    Ok(None)
}

/// The long simplex `A_{d,N}`, built locally so this module does not depend on
/// the fixture generators.
fn target(d: usize, n: usize) -> PointSet {
    let mut pts = vec![Point::zero(d)];
    pts.extend((1..d).map(|i| Point::unit(d, i)));
    pts.extend((1..=(n - d) as i64).map(|t| Point::unit(d, 0).scale(&Rational::from_integer(BigInt::from(t)))));
    PointSet::from_points_unchecked(d, pts)
}

/// Transforms a full-dimensional `A` (after [`embed_for_reduction`]) into
/// `A_{d,|A|}` by a finite sequence of compressions.
pub fn reduce_to_simplex(a: &PointSet) -> Result<Reduction> {
    let (start, embedding) = embed_for_reduction(a)?;
    let goal = target(a.dim(), a.len());
    let mut trace = CompressionTrace::empty(start);
    loop {
        sweep_down(&mut trace)?;
        if trace.final_set == goal {
            return Ok(Reduction { embedding, trace });
        }
        let step = match scheduled_step(&trace.final_set)? {
            Some(step) => Some(step),
            None => fallback_step(&trace.final_set)?,
        };
        match step {
            Some((spec, next)) => trace.push(spec, next),
            None => {
                return Err(Error::ReductionStalled {
                    steps: trace.steps.len(),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compression::is_down_set;
    use crate::sumset::iterated_sumset;

    fn set(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_ints(dim, rows).unwrap()
    }

    #[test]
    fn simplex_is_a_fixed_point() {
        let a = target(2, 5);
        let r = reduce_to_simplex(&a).unwrap();
        assert!(r.embedding.is_identity());
        assert!(r.trace.steps.is_empty());
        assert_eq!(r.simplex(), &a);
    }

    #[test]
    fn unit_square_reduces_to_a24() {
        let a = set(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let r = reduce_to_simplex(&a).unwrap();
        assert_eq!(r.simplex(), &set(2, &[&[0, 0], &[0, 1], &[1, 0], &[2, 0]]));
        assert_eq!(iterated_sumset(&a, 2).unwrap().len(), 9);
        assert_eq!(iterated_sumset(r.simplex(), 2).unwrap().len(), 9);
        assert_eq!(r.trace.replay().unwrap().last().unwrap(), r.simplex());
    }

    #[test]
    fn embedding_preserves_sumset_sizes() {
        let a = set(2, &[&[3, 1], &[5, 2], &[4, 7], &[10, -2], &[6, 6]]);
        let (b, emb) = embed_for_reduction(&a).unwrap();
        assert!(!emb.is_identity());
        assert!(b.is_integral());
        assert!(b.contains(&Point::zero(2)));
        for k in 1..=3 {
            assert_eq!(
                iterated_sumset(&a, k).unwrap().len(),
                iterated_sumset(&b, k).unwrap().len()
            );
        }
    }

    #[test]
    fn rejects_dimension_deficient_sets() {
        let a = set(2, &[&[0, 0], &[1, 1], &[2, 2]]);
        assert!(matches!(reduce_to_simplex(&a), Err(Error::Precondition(_))));
    }

    #[test]
    fn three_dimensional_reduction() {
        let a = set(3, &[&[0, 0, 0], &[1, 2, 0], &[0, 1, 3], &[2, 2, 2], &[5, 0, 1], &[1, 1, 1], &[0, 4, 0]]);
        let r = reduce_to_simplex(&a).unwrap();
        assert_eq!(r.simplex(), &target(3, 7));
        assert!(is_down_set(r.simplex()));
        let sets = r.trace.replay().unwrap();
        let sizes: Vec<usize> = sets.iter().map(|s| iterated_sumset(s, 2).unwrap().len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] >= w[1]), "{sizes:?}");
    }
}
