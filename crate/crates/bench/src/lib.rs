//! Shared fixtures for the benchmark suite: the orders the benchmarks run
//! against and deterministic unit sampling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use metacommute_core::{EichlerOrder, Mat2};

/// The heaviest order the test sweeps touch: p = 13 at level 3.
pub fn large_order() -> EichlerOrder {
    EichlerOrder::new(13, 3).expect("13 is prime")
}

/// The smallest order with a radical ideal: p = 3 at level 1.
pub fn small_order() -> EichlerOrder {
    EichlerOrder::new(3, 1).expect("3 is prime")
}

/// A reproducible batch of units of the order.
pub fn seeded_units(order: &EichlerOrder, count: usize, seed: u64) -> Vec<Mat2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| order.random_unit(&mut rng)).collect()
}
