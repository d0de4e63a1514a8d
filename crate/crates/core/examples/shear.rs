//! The shear pair maps a segment onto a full grid; the fiber bound explains why.

use sumsetlab::bounds::{check_fiber_bound, check_shear_counterexample};
use sumsetlab::generators::{cube, rotation_system, shear_counterexample};
use sumsetlab::{Point, Result, Subspace};

fn main() -> Result<()> {
    for n in [3, 5, 8] {
        let (system, a) = shear_counterexample(n)?;
        println!("N = {n}: {}", check_shear_counterexample(&system, &a)?);
    }
    let line = Subspace::span(2, &[Point::from_ints(&[1, 0])])?;
    println!("{}", check_fiber_bound(&rotation_system(2)?, &cube(2, 2)?, &line)?);
    Ok(())
}
