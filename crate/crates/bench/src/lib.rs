//! Shared inputs for the benchmarks.

use parteval::benchgen::{gen_fixed_clique_mu, gen_sbm};
use parteval::{PlantedGraph, ScorePoint};
use rand::Rng;

/// 45 cliques of 11 nodes at mixing 0.5: 495 nodes, about 5000 edges.
pub fn fixed_clique() -> PlantedGraph {
    gen_fixed_clique_mu(45, 11, 0.5, 42).expect("valid parameters")
}

/// `blocks` blocks of 20 nodes with `p_in = 0.5`, `p_out = 0.02`.
pub fn sbm(blocks: usize) -> PlantedGraph {
    gen_sbm(&vec![20; blocks], 0.5, 0.02, 7).expect("valid parameters")
}

/// Uniform points in the unit square.
pub fn random_points(n: usize, seed: u64) -> Vec<ScorePoint> {
    let mut rng = parteval::rng::seeded(seed);
    (0..n)
        .map(|i| ScorePoint::new(format!("p{i}"), rng.gen(), rng.gen()))
        .collect()
}
