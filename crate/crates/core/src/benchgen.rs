//! Seeded benchmark graphs with a known community structure.
//!
//! All generators label nodes `"0".."n-1"` and return the planted partition
//! alongside the graph. Randomized generators draw from [`crate::rng`], so the
//! output is a pure function of the parameters and the seed.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::rng::{seeded, Rng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum GeneratorParams {
    Sbm {
        block_sizes: Vec<usize>,
        p_in: f64,
        p_out: f64,
        seed: u64,
    },
    HierarchicalSbm {
        groups: usize,
        blocks_per_group: usize,
        block_size: usize,
        p_in: f64,
        p_mid: f64,
        p_out: f64,
        seed: u64,
    },
    FixedClique {
        num_cliques: usize,
        clique_size: usize,
        mu: f64,
        external_stubs_per_node: usize,
        dropped_stubs: usize,
        seed: u64,
    },
    Ring {
        cliques: usize,
        clique_size: usize,
    },
    Chain {
        components: usize,
        chain_len: usize,
        clique_size: usize,
    },
    DisjointCliques {
        cliques: usize,
        clique_size: usize,
    },
}

#[derive(Debug, Clone)]
pub struct PlantedGraph {
    pub graph: Graph,
    pub planted: Partition,
    pub params: GeneratorParams,
}

fn clique_edges(first: usize, size: usize, edges: &mut Vec<(usize, usize)>) {
    for i in first..first + size {
        for j in (i + 1)..first + size {
            edges.push((i, j));
        }
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {p} outside [0, 1]")))
    }
}

/// Samples every pair independently with a probability chosen by
/// `prob(i, j)`. Retries once on an edgeless outcome.
fn sample_pairs(n: usize, rng: &mut Rng, what: &str, prob: impl Fn(usize, usize) -> f64) -> Result<Graph> {
    for _ in 0..2 {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen::<f64>() < prob(i, j) {
                    edges.push((i, j));
                }
            }
        }
        if !edges.is_empty() {
            return Graph::from_edges(n, edges);
        }
    }
    Err(Error::DegenerateGenerator(format!(
        "{what} sampled no edges twice"
    )))
}

/// Stochastic block model: pairs inside a block are edges with probability
/// `p_in`, pairs across blocks with `p_out`.
pub fn gen_sbm(block_sizes: &[usize], p_in: f64, p_out: f64, seed: u64) -> Result<PlantedGraph> {
    check_probability("p_in", p_in)?;
    check_probability("p_out", p_out)?;
    if block_sizes.contains(&0) {
        return Err(Error::InvalidParameter("empty block".into()));
    }
    let n: usize = block_sizes.iter().sum();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two nodes".into()));
    }
    let block: Vec<usize> = block_sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &size)| std::iter::repeat(b).take(size))
        .collect();
    let mut rng = seeded(seed);
    let graph = sample_pairs(n, &mut rng, "sbm", |i, j| {
        if block[i] == block[j] {
            p_in
        } else {
            p_out
        }
    })?;
    Ok(PlantedGraph {
        graph,
        planted: Partition::from_assignment(&block)?,
        params: GeneratorParams::Sbm {
            block_sizes: block_sizes.to_vec(),
            p_in,
            p_out,
            seed,
        },
    })
}

/// Two-level block model: `groups` super-blocks, each holding
/// `blocks_per_group` blocks of `block_size` nodes. Pairs in the same block
/// connect with `p_in`, in the same group with `p_mid`, otherwise `p_out`.
///
/// Returns the fine (block) partition as `planted` and the coarse (group)
/// partition separately.
pub fn gen_hierarchical_sbm(
    groups: usize,
    blocks_per_group: usize,
    block_size: usize,
    (p_in, p_mid, p_out): (f64, f64, f64),
    seed: u64,
) -> Result<(PlantedGraph, Partition)> {
    for (name, p) in [("p_in", p_in), ("p_mid", p_mid), ("p_out", p_out)] {
        check_probability(name, p)?;
    }
    if groups == 0 || blocks_per_group == 0 || block_size == 0 {
        return Err(Error::InvalidParameter(
            "all hierarchy sizes must be positive".into(),
        ));
    }
    let n = groups * blocks_per_group * block_size;
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two nodes".into()));
    }
    let fine: Vec<usize> = (0..n).map(|u| u / block_size).collect();
    let coarse: Vec<usize> = fine.iter().map(|b| b / blocks_per_group).collect();
    let mut rng = seeded(seed);
    let graph = sample_pairs(n, &mut rng, "hierarchical sbm", |i, j| {
        if fine[i] == fine[j] {
            p_in
        } else if coarse[i] == coarse[j] {
            p_mid
        } else {
            p_out
        }
    })?;
    Ok((
        PlantedGraph {
            graph,
            planted: Partition::from_assignment(&fine)?,
            params: GeneratorParams::HierarchicalSbm {
                groups,
                blocks_per_group,
                block_size,
                p_in,
                p_mid,
                p_out,
                seed,
            },
        },
        Partition::from_assignment(&coarse)?,
    ))
}

/// External stubs per node so that a fraction `mu` of each node's edges
/// leave its clique: `round((s - 1) mu / (1 - mu))`.
pub fn external_stubs_per_node(clique_size: usize, mu: f64) -> usize {
    ((clique_size - 1) as f64 * mu / (1.0 - mu)).round() as usize
}

const MATCHING_ROUNDS: usize = 64;
const SWITCH_ATTEMPTS: usize = 256;

/// Disjoint `s`-cliques plus random inter-clique edges, so that each node
/// has internal degree `s - 1` and about `(s - 1) mu / (1 - mu)` external
/// edges.
///
/// External edges come from stub matching. Pairs that would be a self-loop,
/// an intra-clique edge or a duplicate are re-shuffled for a bounded number
/// of rounds, then repaired by switching endpoints with an accepted edge;
/// stubs that still cannot be placed are dropped and counted in the
/// returned parameters. An odd stub total drops one stub of the last node.
pub fn gen_fixed_clique_mu(
    num_cliques: usize,
    clique_size: usize,
    mu: f64,
    seed: u64,
) -> Result<PlantedGraph> {
    if clique_size < 3 {
        return Err(Error::InvalidParameter("clique size must be at least 3".into()));
    }
    if num_cliques < 2 {
        return Err(Error::InvalidParameter("need at least two cliques".into()));
    }
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::InvalidParameter(format!("mu = {mu} outside (0, 1)")));
    }
    let n = num_cliques * clique_size;
    let community = |u: usize| u / clique_size;
    let per_node = external_stubs_per_node(clique_size, mu);

    let mut edges = Vec::new();
    for c in 0..num_cliques {
        clique_edges(c * clique_size, clique_size, &mut edges);
    }

    let mut stubs: Vec<usize> = (0..n).flat_map(|u| std::iter::repeat(u).take(per_node)).collect();
    let mut dropped = 0;
    if stubs.len() % 2 == 1 {
        stubs.pop();
        dropped += 1;
    }

    let mut rng = seeded(seed);
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut external: Vec<(usize, usize)> = Vec::new();
    let mut present: HashSet<(usize, usize)> = HashSet::new();
    let valid = |a: usize, b: usize, present: &HashSet<(usize, usize)>| {
        community(a) != community(b) && !present.contains(&key(a, b))
    };

    let mut pending = stubs;
    for _ in 0..MATCHING_ROUNDS {
        if pending.is_empty() {
            break;
        }
        pending.shuffle(&mut rng);
        let mut rejected = Vec::new();
        for pair in pending.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            if valid(a, b, &present) {
                present.insert(key(a, b));
                external.push((a, b));
            } else {
                rejected.extend_from_slice(pair);
            }
        }
        pending = rejected;
    }

    // repair what is left by switching: (a,b) + (c,d) -> (a,c) + (b,d)
    for pair in pending.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        let mut placed = false;
        for _ in 0..SWITCH_ATTEMPTS {
            if external.is_empty() {
                break;
            }
            let slot = rng.gen_range(0..external.len());
            let (c, d) = external[slot];
            present.remove(&key(c, d));
            if a != c && b != d && valid(a, c, &present) && valid(b, d, &present) && key(a, c) != key(b, d) {
                present.insert(key(a, c));
                present.insert(key(b, d));
                external[slot] = (a, c);
                external.push((b, d));
                placed = true;
                break;
            }
            present.insert(key(c, d));
        }
        if !placed {
            dropped += 2;
        }
    }

    edges.extend(external);
    let planted: Vec<usize> = (0..n).map(community).collect();
    Ok(PlantedGraph {
        graph: Graph::from_edges(n, edges)?,
        planted: Partition::from_assignment(&planted)?,
        params: GeneratorParams::FixedClique {
            num_cliques,
            clique_size,
            mu,
            external_stubs_per_node: per_node,
            dropped_stubs: dropped,
            seed,
        },
    })
}

/// `q` copies of `K_s` in a ring; clique `i`'s last node is joined to clique
/// `i+1`'s first node. Planted partition: one community per clique.
pub fn gen_ring_of_cliques(q: usize, s: usize) -> Result<PlantedGraph> {
    if q < 3 || s < 3 {
        return Err(Error::InvalidParameter(
            "ring of cliques needs q >= 3 and s >= 3".into(),
        ));
    }
    let n = q * s;
    let mut edges = Vec::new();
    for c in 0..q {
        clique_edges(c * s, s, &mut edges);
        edges.push((c * s + s - 1, ((c + 1) % q) * s));
    }
    let planted: Vec<usize> = (0..n).map(|u| u / s).collect();
    Ok(PlantedGraph {
        graph: Graph::from_edges(n, edges)?,
        planted: Partition::from_assignment(&planted)?,
        params: GeneratorParams::Ring {
            cliques: q,
            clique_size: s,
        },
    })
}

/// Ring-of-cliques partition merging cliques `2i` and `2i+1`.
pub fn ring_paired_partition(q: usize, s: usize) -> Result<Partition> {
    if q % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "cannot pair an odd number of cliques ({q})"
        )));
    }
    if q < 3 || s < 3 {
        return Err(Error::InvalidParameter(
            "ring of cliques needs q >= 3 and s >= 3".into(),
        ));
    }
    let raw: Vec<usize> = (0..q * s).map(|u| u / s / 2).collect();
    Partition::from_assignment(&raw)
}

/// Disconnected components, each a path of `chain_len` nodes with a
/// `K_clique_size` hanging off either end. Planted partition: the
/// components.
pub fn gen_clique_chain(num_components: usize, chain_len: usize, clique_size: usize) -> Result<PlantedGraph> {
    if num_components == 0 || chain_len == 0 {
        return Err(Error::InvalidParameter(
            "components and chain length must be positive".into(),
        ));
    }
    if clique_size < 3 {
        return Err(Error::InvalidParameter("clique size must be at least 3".into()));
    }
    let per = 2 * clique_size + chain_len;
    let mut edges = Vec::new();
    for comp in 0..num_components {
        let base = comp * per;
        let path = base + clique_size;
        let tail = path + chain_len;
        clique_edges(base, clique_size, &mut edges);
        clique_edges(tail, clique_size, &mut edges);
        edges.push((path - 1, path));
        for i in path..path + chain_len - 1 {
            edges.push((i, i + 1));
        }
        edges.push((tail - 1, tail));
    }
    let n = num_components * per;
    let planted: Vec<usize> = (0..n).map(|u| u / per).collect();
    Ok(PlantedGraph {
        graph: Graph::from_edges(n, edges)?,
        planted: Partition::from_assignment(&planted)?,
        params: GeneratorParams::Chain {
            components: num_components,
            chain_len,
            clique_size,
        },
    })
}

/// `q` disjoint copies of `K_s`.
pub fn gen_disjoint_cliques(q: usize, s: usize) -> Result<PlantedGraph> {
    if q == 0 || s < 2 {
        return Err(Error::InvalidParameter("need q >= 1 cliques of size >= 2".into()));
    }
    let mut edges = Vec::new();
    for c in 0..q {
        clique_edges(c * s, s, &mut edges);
    }
    let planted: Vec<usize> = (0..q * s).map(|u| u / s).collect();
    Ok(PlantedGraph {
        graph: Graph::from_edges(q * s, edges)?,
        planted: Partition::from_assignment(&planted)?,
        params: GeneratorParams::DisjointCliques {
            cliques: q,
            clique_size: s,
        },
    })
}
