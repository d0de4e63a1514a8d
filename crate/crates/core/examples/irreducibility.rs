//! Deciding irreducibility of matrix families over Q, with witnesses.

use sumsetlab::generators::{int_matrix, rotation_system};
use sumsetlab::poly::Polynomial;
use sumsetlab::rational::int;
use sumsetlab::structure::{decide_irreducible, irreducible_factors, is_reducible_witness};
use sumsetlab::{LinearSystem, RationalMatrix, Result};

fn main() -> Result<()> {
    let rot = rotation_system(3)?;
    println!("rotation(3): {}", decide_irreducible(&rot)?.to_json());

    let upper = LinearSystem::new(vec![RationalMatrix::identity(2), int_matrix(&[vec![2, 1], vec![0, 3]])?])?;
    let verdict = decide_irreducible(&upper)?;
    println!("upper triangular: {}", verdict.to_json());
    if let Some(u) = &verdict.witness {
        println!("witness confirmed: {}", is_reducible_witness(&upper, u)?);
    }

    let x4_plus_1 = Polynomial::new(vec![int(1), int(0), int(0), int(0), int(1)]);
    let x4_minus_1 = Polynomial::new(vec![int(-1), int(0), int(0), int(0), int(1)]);
    for f in [x4_plus_1, x4_minus_1] {
        let factors: Vec<String> = irreducible_factors(&f).iter().map(|g| format!("({g})")).collect();
        println!("{f} = {}", factors.join(""));
    }
    Ok(())
}
