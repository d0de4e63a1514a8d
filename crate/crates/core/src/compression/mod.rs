//! The compression operator `C_{H,v}` and down-set normalisation.
//!
//! For a hyperplane `H = {x : ⟨n, x⟩ = c}` and a direction `v` with
//! `⟨n, v⟩ ≠ 0`, every point `a` lies on the line `a + Rv`, which meets `H`
//! in a single point `u`. The fibre `A_u` is replaced by the initial segment
//! `u, u + v, …, u + (|A_u| − 1)·v`.

mod monotone;
mod reduce;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::io::{encode_row, Coord};
use crate::point::{Point, PointSet};
use crate::rational::{format_rational, int, parse_rational, Rational};

pub use monotone::{check_projection_monotone, check_sum_containment, check_sum_monotone};
pub use reduce::{embed_for_reduction, reduce_to_simplex, AffineEmbedding, Reduction};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompressionSpec {
    normal: Point,
    offset: Rational,
    direction: Point,
}

impl CompressionSpec {
    /// General hyperplane `⟨normal, x⟩ = offset` with compression direction `direction`.
    pub fn new(normal: Point, offset: Rational, direction: Point) -> Result<Self> {
        check_dim(normal.dim(), direction.dim())?;
        if normal.dot(&direction).is_zero() {
            return Err(Error::InvalidArgument(
                "compression direction is parallel to the hyperplane".into(),
            ));
        }
        Ok(Self {
            normal,
            offset,
            direction,
        })
    }

    /// `C_i = C_{H_i, e_i}` for the 0-based coordinate `i`.
    pub fn axis(dim: usize, i: usize) -> Self {
        Self {
            normal: Point::unit(dim, i),
            offset: Rational::zero(),
            direction: Point::unit(dim, i),
        }
    }

    /// Compression onto the coordinate hyperplane `H_i = {x_i = 0}` along `direction`.
    pub fn onto_axis_hyperplane(dim: usize, i: usize, direction: Point) -> Result<Self> {
        if i >= dim {
            return Err(Error::InvalidArgument(format!("axis {i} out of range")));
        }
        Self::new(Point::unit(dim, i), Rational::zero(), direction)
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn direction(&self) -> &Point {
        &self.direction
    }

    /// The 0-based `i` if this is exactly `(H_i, e_i)`.
    pub fn axis_index(&self) -> Option<usize> {
        let dim = self.dim();
        (0..dim).find(|&i| *self == Self::axis(dim, i))
    }

    /// Same hyperplane direction with the offset multiplied by `factor`.
    pub fn with_scaled_offset(&self, factor: usize) -> Self {
        Self {
            normal: self.normal.clone(),
            offset: &self.offset * int(factor as i64),
            direction: self.direction.clone(),
        }
    }

    /// The point where the line `point + Rv` meets `H`.
    fn base_of(&self, point: &Point, nv: &Rational) -> Point {
        let t = (&self.offset - self.normal.dot(point)) / nv;
        point.add(&self.direction.scale(&t))
    }

    pub fn to_json(&self) -> serde_json::Value {
        if let Some(i) = self.axis_index() {
            return serde_json::json!({ "axis": i + 1 });
        }
        serde_json::to_value(SpecFile::General {
            hyperplane: HyperplaneFile {
                normal: encode_row(self.normal.coords()),
                offset: format_rational(&self.offset),
            },
            direction: encode_row(self.direction.coords()),
        })
        .expect("serializable")
    }

    /// Parses `{"axis": i}` (1-based) or the general hyperplane form.
    /// `dim` is needed to expand the axis shorthand.
    pub fn from_json(value: &serde_json::Value, dim: usize) -> Result<Self> {
        let file: SpecFile =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        match file {
            SpecFile::Axis { axis } => {
                if axis == 0 || axis > dim {
                    return Err(Error::InvalidArgument(format!(
                        "axis {axis} out of range 1..={dim}"
                    )));
                }
                Ok(Self::axis(dim, axis - 1))
            }
            SpecFile::General {
                hyperplane,
                direction,
            } => {
                let parse = |row: &[Coord]| -> Result<Point> {
                    Ok(Point::new(
                        row.iter().map(Coord::to_rational).collect::<Result<_>>()?,
                    ))
                };
                let normal = parse(&hyperplane.normal)?;
                let direction = parse(&direction)?;
                check_dim(dim, normal.dim())?;
                Self::new(normal, parse_rational(&hyperplane.offset)?, direction)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct HyperplaneFile {
    normal: Vec<Coord>,
    #[serde(default = "zero_offset")]
    offset: String,
}

fn zero_offset() -> String {
    "0".into()
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SpecFile {
    Axis {
        axis: usize,
    },
    General {
        hyperplane: HyperplaneFile,
        direction: Vec<Coord>,
    },
}

/// `C_{H,v}(A)`.
pub fn compress(a: &PointSet, spec: &CompressionSpec) -> Result<PointSet> {
    check_dim(a.dim(), spec.dim())?;
    let nv = spec.normal.dot(&spec.direction);
    let mut fibres: BTreeMap<Point, usize> = BTreeMap::new();
    for p in a {
        *fibres.entry(spec.base_of(p, &nv)).or_insert(0) += 1;
    }
    let mut out = Vec::with_capacity(a.len());
    for (base, count) in fibres {
        let mut cur = base;
        for _ in 0..count {
            let next = cur.add(&spec.direction);
            out.push(cur);
            cur = next;
        }
    }
    Ok(PointSet::from_points_unchecked(a.dim(), out))
}

/// `true` iff `A` is fixed by every coordinate compression `C_1, …, C_d`.
pub fn is_down_set(a: &PointSet) -> bool {
    (0..a.dim()).all(|i| {
        compress(a, &CompressionSpec::axis(a.dim(), i)).is_ok_and(|c| c == *a)
    })
}

/// A sequence of compressions together with its start and end sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionTrace {
    pub steps: Vec<CompressionSpec>,
    pub initial: PointSet,
    pub final_set: PointSet,
}

impl CompressionTrace {
    pub fn empty(initial: PointSet) -> Self {
        Self {
            steps: Vec::new(),
            final_set: initial.clone(),
            initial,
        }
    }

    /// Applies the steps to `initial`, returning every intermediate set
    /// (starting with `initial`, ending with the final set).
    pub fn replay(&self) -> Result<Vec<PointSet>> {
        let mut sets = vec![self.initial.clone()];
        for step in &self.steps {
            let next = compress(sets.last().expect("non-empty"), step)?;
            sets.push(next);
        }
        Ok(sets)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.steps.iter().map(CompressionSpec::to_json).collect())
    }

    fn push(&mut self, step: CompressionSpec, result: PointSet) {
        self.steps.push(step);
        self.final_set = result;
    }
}

/// Round-robin `C_1, …, C_d` until a full round changes nothing. Only steps
/// that change the set are recorded.
pub(crate) fn sweep_down(trace: &mut CompressionTrace) -> Result<()> {
    let dim = trace.final_set.dim();
    loop {
        let mut changed = false;
        for i in 0..dim {
            let spec = CompressionSpec::axis(dim, i);
            let next = compress(&trace.final_set, &spec)?;
            if next != trace.final_set {
                trace.push(spec, next);
                changed = true;
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Compresses `A ⊂ Q^d_{≥0}` to a down set of the same size.
pub fn normalize_down(a: &PointSet) -> Result<(PointSet, CompressionTrace)> {
    if a.iter().any(|p| p.coords().iter().any(Signed::is_negative)) {
        return Err(Error::Precondition(
            "normalize_down needs non-negative coordinates; translate first".into(),
        ));
    }
    let mut trace = CompressionTrace::empty(a.clone());
    sweep_down(&mut trace)?;
    Ok((trace.final_set.clone(), trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_ints(dim, rows).unwrap()
    }

    #[test]
    fn compresses_fibres_to_initial_segments() {
        let a = set(2, &[&[0, 0], &[0, 3], &[1, 7]]);
        let c = compress(&a, &CompressionSpec::axis(2, 1)).unwrap();
        assert_eq!(c, set(2, &[&[0, 0], &[0, 1], &[1, 0]]));
    }

    #[test]
    fn parallel_direction_is_rejected() {
        let err = CompressionSpec::new(Point::unit(2, 0), int(0), Point::unit(2, 1));
        assert!(err.is_err());
    }

    #[test]
    fn diagonal_direction() {
        // Lines x − y = const meet {y = 0} at (x − y, 0).
        let spec = CompressionSpec::onto_axis_hyperplane(2, 1, Point::from_ints(&[1, 1])).unwrap();
        let a = set(2, &[&[3, 3], &[5, 5], &[2, 0]]);
        assert_eq!(compress(&a, &spec).unwrap(), set(2, &[&[0, 0], &[1, 1], &[2, 0]]));
    }

    #[test]
    fn offset_hyperplane_translates_the_result() {
        let a = set(2, &[&[0, 2], &[0, 5], &[3, 1]]);
        let base = CompressionSpec::axis(2, 1);
        let shifted = CompressionSpec::new(Point::unit(2, 1), int(4), Point::unit(2, 1)).unwrap();
        let lhs = compress(&a, &shifted).unwrap();
        let rhs = compress(&a, &base).unwrap().translate(&Point::from_ints(&[0, 4])).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn down_sets() {
        assert!(is_down_set(&set(2, &[&[0, 0]])));
        assert!(!is_down_set(&set(2, &[&[1, 1]])));
        assert!(is_down_set(&set(2, &[&[0, 0], &[1, 0], &[2, 0], &[0, 1]])));
    }

    #[test]
    fn normalize_sweeps_e1_first() {
        let a = set(2, &[&[1, 1], &[0, 0]]);
        let (down, trace) = normalize_down(&a).unwrap();
        assert_eq!(down, set(2, &[&[0, 0], &[0, 1]]));
        assert!(is_down_set(&down));
        assert_eq!(trace.replay().unwrap().last().unwrap(), &down);
        assert_eq!(trace.steps, vec![CompressionSpec::axis(2, 0)]);
    }

    #[test]
    fn normalize_leaves_down_sets_alone() {
        let a = set(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let (down, trace) = normalize_down(&a).unwrap();
        assert_eq!(down, a);
        assert!(trace.steps.is_empty());
        assert!(normalize_down(&set(1, &[&[-1]])).is_err());
    }

    #[test]
    fn spec_json_forms() {
        let axis = CompressionSpec::axis(3, 1);
        assert_eq!(axis.to_json(), serde_json::json!({"axis": 2}));
        assert_eq!(CompressionSpec::from_json(&axis.to_json(), 3).unwrap(), axis);
        let general = CompressionSpec::new(
            Point::from_ints(&[1, 1]),
            crate::rational::ratio(1, 2),
            Point::from_ints(&[0, 1]),
        )
        .unwrap();
        let j = general.to_json();
        assert_eq!(j["hyperplane"]["offset"], "1/2");
        assert_eq!(CompressionSpec::from_json(&j, 2).unwrap(), general);
        assert!(CompressionSpec::from_json(&serde_json::json!({"axis": 0}), 2).is_err());
    }
}
