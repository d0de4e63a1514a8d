//! Informational probes: main-term deficit, determinant constant, eventual polynomial.

use sumsetlab::bounds::{determinant_probe, khovanskii_probe, main_term_probe};
use sumsetlab::generators::{long_simplex, random_full_dimensional_set, rotation_system};
use sumsetlab::Result;

fn main() -> Result<()> {
    let system = rotation_system(2)?;
    for seed in 1..=3 {
        let a = random_full_dimensional_set(2, 15, 6, seed)?;
        println!("{}", main_term_probe(&system, &a)?);
        println!("{}", determinant_probe(&system, &a)?);
    }
    let report = khovanskii_probe(&long_simplex(2, 5)?, 8)?;
    println!("{}", report.to_json());
    let report = khovanskii_probe(&random_full_dimensional_set(2, 6, 4, 11)?, 10)?;
    println!("{}", report.to_json());
    Ok(())
}
