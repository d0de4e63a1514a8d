//! Generalised arithmetic progressions: containment and properness.

use sumsetlab::structure::{gap_contains, gap_is_proper, Gap, DEFAULT_GAP_BUDGET};
use sumsetlab::sumset::iterated_sumset;
use sumsetlab::{Point, PointSet, Result};

fn main() -> Result<()> {
    let a = PointSet::from_ints(2, &[&[1, 1], &[2, 1], &[1, 3]])?;
    let sum = iterated_sumset(&a, 2)?;
    let gap = Gap::new(Point::from_ints(&[1, 0]), vec![Point::from_ints(&[1, 0]), Point::from_ints(&[0, 2])], vec![3, 3])?;
    println!("{}", gap.to_json());
    println!("size {} proper {}", gap.size(), gap_is_proper(&gap, DEFAULT_GAP_BUDGET)?);
    println!("contains 2A: {}", gap_contains(&gap, &sum, DEFAULT_GAP_BUDGET)?);

    let folded = Gap::new(Point::from_ints(&[0]), vec![Point::from_ints(&[1]), Point::from_ints(&[2])], vec![3, 3])?;
    println!("1-dimensional overlap proper: {}", gap_is_proper(&folded, DEFAULT_GAP_BUDGET)?);
    Ok(())
}
