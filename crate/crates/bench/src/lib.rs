//! Seeded fixtures shared by the benchmarks.

use fuzzy_nerve::umap::Dataset;
use fuzzy_nerve::{Distance, FiniteEPMet, TruncatedSimplicialFuzzySet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` uniform points in `[0, 1]^dim` under the Euclidean metric.
pub fn euclidean_space(n: usize, dim: usize, seed: u64) -> FiniteEPMet {
    let pts = random_rows(n, dim, seed);
    FiniteEPMet::from_fn((0..n).map(|i| format!("x{i}")).collect(), |i, j| {
        let d: f64 = pts[i].iter().zip(&pts[j]).map(|(a, b)| (a - b) * (a - b)).sum();
        Distance::Finite(d.sqrt())
    })
    .expect("square matrix with unique labels")
}

/// Path graph on `n` vertices with random edge memberships, truncated at
/// `max_dim`.
pub fn path_complex(n: usize, max_dim: usize, seed: u64) -> TruncatedSimplicialFuzzySet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<(Vec<String>, f64)> = (0..n).map(|i| (vec![format!("v{i}")], 1.0)).collect();
    for i in 1..n {
        gens.push((vec![format!("v{}", i - 1), format!("v{i}")], rng.random_range(0.05..1.0)));
    }
    TruncatedSimplicialFuzzySet::from_generators(max_dim, gens).expect("well-formed generators")
}

/// Gaussian-ish blobs around `clusters` well-separated centers.
pub fn blobs(per_cluster: usize, clusters: usize, dim: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..clusters * per_cluster)
        .map(|p| {
            (0..dim)
                .map(|j| {
                    let center = if j == p / per_cluster % dim { 10.0 } else { 0.0 };
                    center + rng.random_range(-0.2..0.2)
                })
                .collect()
        })
        .collect();
    Dataset::new(rows).expect("finite rows of equal length")
}

fn random_rows(n: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (0..dim).map(|_| rng.random_range(0.0..1.0)).collect()).collect()
}
