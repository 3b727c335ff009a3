//! Randomized check of the graded commutator and squaring formulas.

use morava_s2::catalog::{commutator_formula_trials, squaring_trials};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = commutator_formula_trials(&mut rng, 10_000, 10, 24);
    println!("commutators: {}/{} pass", c.passed, c.trials);
    let s = squaring_trials(&mut rng, 2_000, 10, 24);
    println!("squares: {}/{} pass", s.passed, s.trials);
    if let Some(f) = c.first_failure.or(s.first_failure) {
        println!("first failure: {f}");
    }
}
