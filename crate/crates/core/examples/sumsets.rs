//! Minkowski, iterated and weighted sumsets.

use sumsetlab::generators::{cube, rotation_system};
use sumsetlab::sumset::{iterated_sumset, minkowski_sum, weighted_sumset};
use sumsetlab::{PointSet, Result};

fn main() -> Result<()> {
    let a = PointSet::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1]])?;
    let b = PointSet::from_ints(2, &[&[0, 0], &[3, 0]])?;
    println!("|A| = {}, |B| = {}, |A + B| = {}", a.len(), b.len(), minkowski_sum(&[a.clone(), b])?.len());
    for k in 1..=4 {
        println!("|{k}A| = {}", iterated_sumset(&a, k)?.len());
    }
    let c = cube(2, 2)?;
    let w = weighted_sumset(&rotation_system(2)?, &c)?;
    println!("|C| = {}, |C + R(C)| = {}", c.len(), w.len());
    Ok(())
}
