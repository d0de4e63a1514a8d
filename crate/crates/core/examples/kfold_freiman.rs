//! The k-fold Freiman bound, tight on long simplices.

use sumsetlab::bounds::{check_freiman_kfold, check_freiman_lemma, check_simplex_formula, simplex_cardinality};
use sumsetlab::generators::{long_simplex, random_full_dimensional_set};
use sumsetlab::Result;

fn main() -> Result<()> {
    for k in 1..=4 {
        println!("|{k}A_(3,8)| = {}", simplex_cardinality(3, 8, k)?);
        println!("  {}", check_simplex_formula(3, 8, k)?);
        println!("  {}", check_freiman_kfold(&long_simplex(3, 8)?, k)?);
    }
    let a = random_full_dimensional_set(2, 12, 5, 7)?;
    println!("{}", check_freiman_lemma(&a)?);
    println!("{}", check_freiman_kfold(&a, 3)?);
    Ok(())
}
