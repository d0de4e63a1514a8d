//! Runs one criterion of the acceptance suite (default: 5) and prints its outcome.

use sumsetlab::suite::{run_criterion, SuiteKind, DEFAULT_SEED};
use sumsetlab::Result;

fn main() -> Result<()> {
    let id = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    println!("{}", run_criterion(id, SuiteKind::Smoke, DEFAULT_SEED)?);
    Ok(())
}
