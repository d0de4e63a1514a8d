//! Discrete Brunn–Minkowski and the planar k-fold covering bound.

use sumsetlab::bounds::{check_discrete_bm, check_gs_kfold};
use sumsetlab::generators::{grid, random_set};
use sumsetlab::{Basis, Point, Result};

fn main() -> Result<()> {
    let grids = grid(&[(2, 3), (2, 3), (2, 3)])?;
    println!("{}", check_gs_kfold(&grids, &Point::from_ints(&[1, 0]))?);

    let sets = vec![random_set(2, 10, 6, 3)?, random_set(2, 7, 6, 4)?];
    println!("{}", check_gs_kfold(&sets, &Point::from_ints(&[0, 1]))?);
    let bm = check_discrete_bm(&sets, &Basis::standard(2))?;
    println!("{bm} (precision {:?})", bm.precision_bits);
    Ok(())
}
