//! The rotation family on cubes: sizes, irreducibility and coprimality.

use sumsetlab::generators::{cube, rotation_system};
use sumsetlab::structure::{coprime_sufficient, decide_irreducible};
use sumsetlab::sumset::weighted_sumset;
use sumsetlab::Result;

fn main() -> Result<()> {
    for d in 2..=3 {
        let system = rotation_system(d)?;
        println!(
            "d = {d}: {:?}, {:?}",
            decide_irreducible(&system)?.status,
            coprime_sufficient(&system)?
        );
        for n in 1..=3u32 {
            let size = weighted_sumset(&system, &cube(d, n)?)?.len();
            let expected = (2 * d as u64 * u64::from(n) + 1).pow(d as u32);
            println!("  N = {n}: |sum| = {size}, (2dN+1)^d = {expected}");
        }
    }
    Ok(())
}
