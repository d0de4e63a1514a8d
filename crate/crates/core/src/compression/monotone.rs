use crate::certificate::{Certificate, Relation, StatementId, Verdict};
use crate::error::{Error, Result};
use crate::geometry::{index_set, projection_size};
use crate::io::digest_point_set;
use crate::linalg::Basis;
use crate::point::PointSet;
use crate::rational::int;
use crate::sumset::minkowski_sum;

use super::{compress, CompressionSpec};

fn common_dim(sets: &[PointSet]) -> Result<usize> {
    let first = sets.first().ok_or(Error::Empty("list of sets"))?;
    for s in sets {
        crate::error::check_dim(first.dim(), s.dim())?;
        s.require_nonempty("set")?;
    }
    Ok(first.dim())
}

/// Sum monotonicity under a shared compression: `|ΣA_i| ≥ |ΣC(A_i)|`,
/// together with the containment `C(ΣA_i) ⊇ ΣC(A_i)`.
///
/// For a hyperplane through the origin the containment is checked as is. For
/// `H = {⟨n,x⟩ = c}` the compressed summands carry `k` copies of the offset,
/// so the containment is checked against the compression of `ΣA_i` onto
/// `{⟨n,x⟩ = k·c}`. A failed containment downgrades the verdict to `Violated`.
pub fn check_sum_monotone(sets: &[PointSet], spec: &CompressionSpec) -> Result<Certificate> {
    let dim = common_dim(sets)?;
    crate::error::check_dim(dim, spec.dim())?;
    let total = minkowski_sum(sets)?;
    let compressed = sets
        .iter()
        .map(|s| compress(s, spec))
        .collect::<Result<Vec<_>>>()?;
    let compressed_sum = minkowski_sum(&compressed)?;
    let compressed_total = compress(&total, &spec.with_scaled_offset(sets.len()))?;
    let contained = compressed_sum.is_subset_of(&compressed_total);
    let mut cert = Certificate::exact(
        StatementId::SumMonotone,
        Relation::AtLeast,
        int(total.len() as i64),
        int(compressed_sum.len() as i64),
    )
    .with_inputs(sets.iter().map(digest_point_set))
    .with_detail("k", sets.len())
    .with_detail("containment", contained)
    .with_detail("compression", spec.to_json());
    if !contained {
        cert = cert.with_verdict(Verdict::Violated);
    }
    Ok(cert)
}

/// Containment `ΣC(A_i) ⊆ C(ΣA_i)` as a count: the number of points of the
/// left side missing from the right side must be zero. Offsets are handled as
/// in [`check_sum_monotone`].
pub fn check_sum_containment(sets: &[PointSet], spec: &CompressionSpec) -> Result<Certificate> {
    let dim = common_dim(sets)?;
    crate::error::check_dim(dim, spec.dim())?;
    let compressed = sets
        .iter()
        .map(|s| compress(s, spec))
        .collect::<Result<Vec<_>>>()?;
    let compressed_sum = minkowski_sum(&compressed)?;
    let compressed_total = compress(&minkowski_sum(sets)?, &spec.with_scaled_offset(sets.len()))?;
    let missing = compressed_sum
        .iter()
        .filter(|p| !compressed_total.contains(p))
        .count();
    Ok(Certificate::exact(
        StatementId::SumContainment,
        Relation::AtMost,
        int(missing as i64),
        int(0),
    )
    .with_inputs(sets.iter().map(digest_point_set))
    .with_detail("k", sets.len())
    .with_detail("compression", spec.to_json()))
}

/// Projection monotonicity for a coordinate compression `C_i` in the
/// standard basis: `|π_I(ΣC_i(A_j))| ≤ |π_I(ΣA_j)|`. Indices are 0-based.
pub fn check_projection_monotone(
    sets: &[PointSet],
    axis: usize,
    basis: &Basis,
    indices: &[usize],
) -> Result<Certificate> {
    let dim = common_dim(sets)?;
    crate::error::check_dim(dim, basis.dim())?;
    if !basis.is_standard() {
        return Err(Error::Precondition(
            "projection monotonicity is stated for the standard basis".into(),
        ));
    }
    if axis >= dim {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range")));
    }
    let keep = index_set(dim, indices)?;
    let spec = CompressionSpec::axis(dim, axis);
    let compressed = sets
        .iter()
        .map(|s| compress(s, &spec))
        .collect::<Result<Vec<_>>>()?;
    let lhs = projection_size(&minkowski_sum(&compressed)?, basis, &keep);
    let rhs = projection_size(&minkowski_sum(sets)?, basis, &keep);
    let shown: Vec<String> = keep.iter().map(|i| (i + 1).to_string()).collect();
    Ok(Certificate::exact(
        StatementId::ProjectionMonotone,
        Relation::AtMost,
        int(lhs as i64),
        int(rhs as i64),
    )
    .with_inputs(sets.iter().map(digest_point_set))
    .with_detail("axis", axis + 1)
    .with_detail("indices", format!("{{{}}}", shown.join(","))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Bound;
    use crate::point::Point;
    use crate::rational::int;

    fn set(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_ints(dim, rows).unwrap()
    }

    #[test]
    fn worked_example() {
        let a = set(2, &[&[0, 0], &[0, 3], &[1, 7]]);
        let cert = check_sum_monotone(&[a.clone(), a], &CompressionSpec::axis(2, 1)).unwrap();
        assert_eq!(cert.lhs, Bound::Exact(int(6)));
        assert_eq!(cert.rhs, Bound::Exact(int(6)));
        assert!(cert.holds());
    }

    #[test]
    fn containment_with_offset_hyperplane() {
        let a = set(2, &[&[0, 0], &[2, 1], &[1, 3], &[4, 4]]);
        let b = set(2, &[&[1, 1], &[0, 2], &[3, 0]]);
        let spec = CompressionSpec::new(Point::from_ints(&[1, 1]), int(2), Point::from_ints(&[1, 0])).unwrap();
        let cert = check_sum_containment(&[a.clone(), b.clone()], &spec).unwrap();
        assert_eq!(cert.lhs, Bound::Exact(int(0)));
        assert!(cert.holds());
        assert!(check_sum_monotone(&[a, b], &spec).unwrap().holds());
    }

    #[test]
    fn singletons_hold_trivially() {
        let a = set(2, &[&[3, 1]]);
        let b = set(2, &[&[-2, 5]]);
        let cert = check_sum_monotone(&[a, b], &CompressionSpec::axis(2, 0)).unwrap();
        assert_eq!(cert.lhs, Bound::Exact(int(1)));
        assert!(cert.holds());
    }

    #[test]
    fn offset_hyperplane_containment() {
        let a = set(2, &[&[0, 2], &[1, 5], &[1, 9]]);
        let b = set(2, &[&[0, 0], &[4, 4]]);
        let spec = CompressionSpec::new(Point::unit(2, 1), int(3), Point::from_ints(&[1, 1])).unwrap();
        let cert = check_sum_monotone(&[a, b], &spec).unwrap();
        assert!(cert.holds(), "{cert}");
        assert_eq!(cert.details["containment"], "true");
    }

    #[test]
    fn projection_off_axis_is_an_equality() {
        let a = set(2, &[&[0, 0], &[0, 3], &[1, 7]]);
        let b = set(2, &[&[2, 2], &[5, 1]]);
        // Compressing along e_2 cannot change first coordinates.
        let cert = check_projection_monotone(&[a, b], 1, &Basis::standard(2), &[0]).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.slack(), Bound::Exact(int(0)));
    }

    #[test]
    fn projection_needs_standard_basis() {
        let a = set(2, &[&[0, 0]]);
        let skew = Basis::new(vec![Point::from_ints(&[1, 1]), Point::from_ints(&[0, 1])]).unwrap();
        assert!(check_projection_monotone(std::slice::from_ref(&a), 0, &skew, &[0]).is_err());
        assert!(check_projection_monotone(&[a], 0, &Basis::standard(2), &[4]).is_err());
    }
}
