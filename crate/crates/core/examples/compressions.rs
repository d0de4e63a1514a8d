//! Coordinate and general compressions, and the sum monotonicity checks.

use sumsetlab::compression::{check_projection_monotone, check_sum_containment, check_sum_monotone, normalize_down};
use sumsetlab::generators::random_set;
use sumsetlab::{compress, Basis, CompressionSpec, Point, PointSet, Result};

fn main() -> Result<()> {
    let a = PointSet::from_ints(2, &[&[0, 3], &[0, 5], &[2, 1], &[2, 4], &[3, 7]])?;
    let down = compress(&a, &CompressionSpec::axis(2, 1))?;
    println!("C_2(A) = {:?}", down.to_i64_rows().unwrap());

    let skew = CompressionSpec::onto_axis_hyperplane(2, 1, Point::from_ints(&[1, 1]))?;
    println!("C_(H,(1,1))(A) = {:?}", compress(&a, &skew)?.to_i64_rows().unwrap());

    let (normal, trace) = normalize_down(&a)?;
    println!("down set after {} steps: {:?}", trace.steps.len(), normal.to_i64_rows().unwrap());

    let sets = vec![random_set(3, 8, 4, 1)?, random_set(3, 6, 4, 2)?];
    let spec = CompressionSpec::axis(3, 0);
    println!("{}", check_sum_monotone(&sets, &spec)?);
    println!("{}", check_sum_containment(&sets, &spec)?);
    println!("{}", check_projection_monotone(&sets, 0, &Basis::standard(3), &[1, 2])?);
    Ok(())
}
