//! Fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use turan_core::Graph;

/// `count` random graphs `G(n, p)` from a fixed seed.
pub fn random_graphs(n: usize, p: f64, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Graph::random(n, p, &mut rng).expect("n within capacity"))
        .collect()
}
