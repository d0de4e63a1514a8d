//! Ruzsa triangle and Plünnecke–Ruzsa style bounds, including linear images.

use sumsetlab::bounds::{check_iterated_pr, check_linear_pr, check_plunnecke_ruzsa, check_ruzsa_triangle};
use sumsetlab::generators::{random_set, random_system};
use sumsetlab::{LinearSystem, RationalMatrix, Result};

fn main() -> Result<()> {
    let u = random_set(2, 6, 5, 1)?;
    let v = random_set(2, 6, 5, 2)?;
    let w = random_set(2, 6, 5, 3)?;
    println!("{}", check_ruzsa_triangle(&u, &v, &w)?);
    println!("{}", check_plunnecke_ruzsa(&u, &v, 2, 1)?);
    println!("{}", check_iterated_pr(&[u.clone(), v, w])?);

    let random = random_system(2, 2, 2, 9)?;
    let mut maps = vec![RationalMatrix::identity(2)];
    maps.extend(random.maps().iter().skip(1).cloned());
    println!("{}", check_linear_pr(&LinearSystem::new(maps)?, &u)?);
    Ok(())
}
