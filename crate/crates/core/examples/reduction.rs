//! Reducing a full-dimensional set to the long simplex by compressions.

use sumsetlab::compression::reduce_to_simplex;
use sumsetlab::generators::{long_simplex, random_full_dimensional_set};
use sumsetlab::sumset::iterated_sumset;
use sumsetlab::Result;

fn main() -> Result<()> {
    let a = random_full_dimensional_set(3, 9, 4, 42)?;
    let reduction = reduce_to_simplex(&a)?;
    println!("embedding is identity: {}", reduction.embedding.is_identity());
    for (i, step) in reduction.trace.steps.iter().enumerate() {
        println!("step {i}: {}", step.to_json());
    }
    assert_eq!(reduction.simplex(), &long_simplex(3, a.len())?);
    let embedded = reduction.embedding.apply_set(&a);
    for k in 1..=3 {
        println!(
            "k = {k}: |kA| = {}, |k·simplex| = {}",
            iterated_sumset(&embedded, k)?.len(),
            iterated_sumset(reduction.simplex(), k)?.len()
        );
    }
    Ok(())
}
