//! Baseline community detectors.
//!
//! Reference implementations meant to produce sensible partitions for
//! evaluation, not to compete with tuned tools. Every detector is
//! deterministic given its inputs and seed.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::partition_modularity;
use crate::null_model::NullModelKind;
use crate::partition::Partition;
use crate::rng::seeded;

pub const MAX_LABEL_SWEEPS: usize = 100;
const MAX_LOCAL_PASSES: usize = 1000;
const GAIN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectorKind {
    LabelPropagation,
    GreedyAgglomerative,
    LouvainStyle,
}

impl DetectorKind {
    /// The detector's default single answer: the converged labels, the
    /// best cut of the merge hierarchy, or the last aggregation level.
    pub fn detect(self, g: &Graph, seed: u64, null: NullModelKind) -> Result<Partition> {
        match self {
            DetectorKind::LabelPropagation => label_propagation(g, seed),
            DetectorKind::GreedyAgglomerative => Ok(greedy_agglomerative(g, null)?.best().clone()),
            DetectorKind::LouvainStyle => Ok(louvain_style(g, seed)?.pop().expect("at least one level")),
        }
    }

    /// Every partition the detector produces. For greedy agglomeration this
    /// is the whole merge sequence, singletons first.
    pub fn all_levels(self, g: &Graph, seed: u64, null: NullModelKind) -> Result<Vec<Partition>> {
        match self {
            DetectorKind::LabelPropagation => Ok(vec![label_propagation(g, seed)?]),
            DetectorKind::GreedyAgglomerative => Ok(greedy_agglomerative(g, null)?.partitions),
            DetectorKind::LouvainStyle => louvain_style(g, seed),
        }
    }
}

impl fmt::Display for DetectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetectorKind::LabelPropagation => "labelprop",
            DetectorKind::GreedyAgglomerative => "greedy",
            DetectorKind::LouvainStyle => "louvain",
        })
    }
}

impl FromStr for DetectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "labelprop" | "label-propagation" => Ok(DetectorKind::LabelPropagation),
            "greedy" => Ok(DetectorKind::GreedyAgglomerative),
            "louvain" => Ok(DetectorKind::LouvainStyle),
            other => Err(Error::InvalidParameter(format!("unknown detector {other:?}"))),
        }
    }
}

fn require_edges(g: &Graph) -> Result<()> {
    if g.edge_count() == 0 {
        Err(Error::EmptyGraph)
    } else {
        Ok(())
    }
}

/// Asynchronous label propagation.
///
/// Each sweep visits nodes in a freshly shuffled order; a node keeps its
/// label if it is among the most frequent around it and otherwise adopts one
/// of the most frequent labels uniformly at random. Stops after a sweep with
/// no change, or after [`MAX_LABEL_SWEEPS`]. Isolated nodes stay alone.
pub fn label_propagation(g: &Graph, seed: u64) -> Result<Partition> {
    require_edges(g)?;
    let n = g.node_count();
    let mut rng = seeded(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut counts = vec![0usize; n];
    let mut touched = Vec::new();
    let mut best = Vec::new();
    for _ in 0..MAX_LABEL_SWEEPS {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &u in &order {
            if g.degree(u) == 0 {
                continue;
            }
            for &v in g.neighbors(u) {
                let l = labels[v];
                if counts[l] == 0 {
                    touched.push(l);
                }
                counts[l] += 1;
            }
            let top = touched.iter().map(|&l| counts[l]).max().unwrap_or(0);
            best.clear();
            best.extend(touched.iter().copied().filter(|&l| counts[l] == top));
            if !best.contains(&labels[u]) {
                best.sort_unstable();
                labels[u] = best[rng.gen_range(0..best.len())];
                changed = true;
            }
            for l in touched.drain(..) {
                counts[l] = 0;
            }
        }
        if !changed {
            break;
        }
    }
    Partition::from_assignment(&labels)
}

/// Every partition along a greedy merge sequence.
#[derive(Debug, Clone)]
pub struct GreedyHierarchy {
    /// `partitions[0]` is all singletons, each subsequent entry merges one
    /// pair, the last is a single community.
    pub partitions: Vec<Partition>,
    /// Modularity of each entry under the null model used for merging.
    pub modularity: Vec<f64>,
    /// Index of the first maximum of `modularity`.
    pub best: usize,
    pub null: NullModelKind,
}

impl GreedyHierarchy {
    pub fn best(&self) -> &Partition {
        &self.partitions[self.best]
    }
}

/// Agglomerative modularity maximization in the style of fast greedy.
///
/// Starting from singletons, merges the pair of communities with the largest
/// modularity gain until one community remains. Disconnected pairs are
/// candidates too, so the sequence always ends in a single community. Ties
/// go to the lexicographically smallest pair of community ids, a merged
/// community keeping the smaller id.
///
/// The full pair scan costs `O(n^3)` overall, fine for the graph sizes this
/// is used on.
pub fn greedy_agglomerative(g: &Graph, null: NullModelKind) -> Result<GreedyHierarchy> {
    require_edges(g)?;
    let n = g.node_count();
    let m = g.edge_count() as f64;
    let p = g.vertex_pair_count() as f64;

    // null-model weight per community: degree sum or size
    let mut weight: Vec<f64> = match null {
        NullModelKind::Configuration => g.degrees().iter().map(|&d| d as f64).collect(),
        NullModelKind::Uniform => vec![1.0; n],
    };
    let expected_between = |wa: f64, wb: f64| match null {
        NullModelKind::Configuration => wa * wb / (2.0 * m),
        NullModelKind::Uniform => wa * wb * m / p,
    };
    let mut links: Vec<HashMap<usize, f64>> = (0..n)
        .map(|u| g.neighbors(u).iter().map(|&v| (v, 1.0)).collect())
        .collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut assignment: Vec<usize> = (0..n).collect();
    let mut partitions = vec![Partition::singletons(n)];

    while alive.len() > 1 {
        let mut choice: Option<(f64, usize, usize)> = None;
        for (i, &a) in alive.iter().enumerate() {
            for &b in &alive[i + 1..] {
                let between = links[a].get(&b).copied().unwrap_or(0.0);
                let gain = (between - expected_between(weight[a], weight[b])) / m;
                if choice.map_or(true, |(best, _, _)| gain > best) {
                    choice = Some((gain, a, b));
                }
            }
        }
        let (_, a, b) = choice.expect("two live communities");
        let absorbed = std::mem::take(&mut links[b]);
        for (c, w) in absorbed {
            if c == a {
                continue;
            }
            *links[a].entry(c).or_insert(0.0) += w;
            let back = links[c].remove(&b).expect("symmetric links");
            *links[c].entry(a).or_insert(0.0) += back;
        }
        links[a].remove(&b);
        weight[a] += weight[b];
        alive.retain(|&c| c != b);
        for c in assignment.iter_mut() {
            if *c == b {
                *c = a;
            }
        }
        partitions.push(Partition::from_assignment(&assignment)?);
    }

    let modularity = partitions
        .iter()
        .map(|part| partition_modularity(g, part, null))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, &q) in modularity.iter().enumerate() {
        if q > modularity[best] {
            best = i;
        }
    }
    Ok(GreedyHierarchy {
        partitions,
        modularity,
        best,
        null,
    })
}

/// Weighted graph with self-loops, the working representation between
/// Louvain levels.
struct LevelGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
}

impl LevelGraph {
    fn from_graph(g: &Graph) -> Self {
        LevelGraph {
            adjacency: (0..g.node_count())
                .map(|u| g.neighbors(u).iter().map(|&v| (v, 1.0)).collect())
                .collect(),
            self_loops: vec![0.0; g.node_count()],
        }
    }

    fn len(&self) -> usize {
        self.adjacency.len()
    }

    fn strength(&self, u: usize) -> f64 {
        self.adjacency[u].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_loops[u]
    }

    fn aggregate(&self, part: &Partition) -> LevelGraph {
        let c = part.community_count();
        let mut self_loops = vec![0.0; c];
        let mut between: Vec<HashMap<usize, f64>> = vec![HashMap::new(); c];
        for u in 0..self.len() {
            let cu = part.community_of(u);
            self_loops[cu] += self.self_loops[u];
            for &(v, w) in &self.adjacency[u] {
                let cv = part.community_of(v);
                if cu == cv {
                    // each internal edge is seen from both ends
                    self_loops[cu] += w / 2.0;
                } else {
                    *between[cu].entry(cv).or_insert(0.0) += w;
                }
            }
        }
        let adjacency = between
            .into_iter()
            .map(|row| {
                let mut row: Vec<(usize, f64)> = row.into_iter().collect();
                row.sort_unstable_by_key(|&(v, _)| v);
                row
            })
            .collect();
        LevelGraph {
            adjacency,
            self_loops,
        }
    }
}

/// One round of local moving. Returns the (dense) partition and whether any
/// node changed community.
fn local_moving(level: &LevelGraph, total_weight: f64, rng: &mut crate::rng::Rng) -> (Partition, bool) {
    let n = level.len();
    let strength: Vec<f64> = (0..n).map(|u| level.strength(u)).collect();
    let mut community: Vec<usize> = (0..n).collect();
    let mut totals = strength.clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let two_m = 2.0 * total_weight;
    let mut links_to = vec![0.0f64; n];
    let mut seen: Vec<usize> = Vec::new();
    let mut moved_any = false;
    for _ in 0..MAX_LOCAL_PASSES {
        let mut moved = false;
        for &u in &order {
            let home = community[u];
            seen.clear();
            for &(v, w) in &level.adjacency[u] {
                let c = community[v];
                if links_to[c] == 0.0 && !seen.contains(&c) {
                    seen.push(c);
                }
                links_to[c] += w;
            }
            totals[home] -= strength[u];
            let gain = |c: usize, links: f64| links - totals[c] * strength[u] / two_m;
            let mut best = home;
            let mut best_gain = gain(home, links_to[home]);
            for &c in &seen {
                let g = gain(c, links_to[c]);
                if g > best_gain + GAIN_EPS {
                    best = c;
                    best_gain = g;
                }
            }
            totals[best] += strength[u];
            if best != home {
                community[u] = best;
                moved = true;
            }
            for &c in &seen {
                links_to[c] = 0.0;
            }
            links_to[home] = 0.0;
        }
        moved_any |= moved;
        if !moved {
            break;
        }
    }
    (
        Partition::from_assignment(&community).expect("non-empty"),
        moved_any,
    )
}

/// Two-phase modularity optimization (configuration null): local moving of
/// nodes between neighboring communities, then aggregation of communities
/// into nodes, repeated while local moving changes anything.
///
/// Nodes are visited in a seeded random order fixed per level. A node moves
/// only for a strictly positive gain, to the first community with the
/// largest gain in neighbor-scan order. Returns one partition of the input
/// nodes per level, finest first; the list is never empty.
pub fn louvain_style(g: &Graph, seed: u64) -> Result<Vec<Partition>> {
    require_edges(g)?;
    let mut rng = seeded(seed);
    let total_weight = g.edge_count() as f64;
    let mut level = LevelGraph::from_graph(g);
    let mut flat = Partition::singletons(g.node_count());
    let mut levels = Vec::new();
    loop {
        let (coarse, moved) = local_moving(&level, total_weight, &mut rng);
        if !moved {
            if levels.is_empty() {
                levels.push(flat);
            }
            break;
        }
        flat = flat.compose(&coarse);
        levels.push(flat.clone());
        if coarse.community_count() == 1 {
            break;
        }
        level = level.aggregate(&coarse);
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchgen::{gen_disjoint_cliques, gen_ring_of_cliques};
    use crate::metrics::metric_report;

    fn two_triangles() -> Graph {
        Graph::parse_edge_list("0 1\n0 2\n1 2\n3 4\n3 5\n4 5").unwrap()
    }

    fn triangles_partition() -> Partition {
        Partition::from_assignment(&[0, 0, 0, 1, 1, 1]).unwrap()
    }

    #[test]
    fn label_propagation_components() {
        let g = two_triangles();
        for seed in 0..10 {
            assert_eq!(label_propagation(&g, seed).unwrap(), triangles_partition());
        }
        let edge = Graph::parse_edge_list("a b").unwrap();
        assert_eq!(label_propagation(&edge, 1).unwrap().community_count(), 1);
    }

    #[test]
    fn label_propagation_ring_calibration() {
        let pg = gen_ring_of_cliques(4, 5).unwrap();
        let hits = (0..10)
            .filter(|&seed| label_propagation(&pg.graph, seed).unwrap() == pg.planted)
            .count();
        assert!(hits >= 8, "only {hits}/10 seeds recovered the cliques");
    }

    #[test]
    fn isolated_nodes_stay_put() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        for kind in [DetectorKind::LabelPropagation, DetectorKind::LouvainStyle] {
            let p = kind.detect(&g, 3, NullModelKind::Configuration).unwrap();
            assert!(p.same_community(0, 1));
            assert!(!p.same_community(2, 3));
        }
    }

    #[test]
    fn greedy_two_triangles() {
        let g = two_triangles();
        let h = greedy_agglomerative(&g, NullModelKind::Configuration).unwrap();
        assert_eq!(h.partitions.len(), 6);
        assert_eq!(h.best(), &triangles_partition());
        assert_eq!(h.modularity[h.best], 0.5);
        assert_eq!(h.partitions.last().unwrap().community_count(), 1);
    }

    #[test]
    fn greedy_bowtie() {
        let g = Graph::parse_edge_list("0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3").unwrap();
        let h = greedy_agglomerative(&g, NullModelKind::Configuration).unwrap();
        assert_eq!(h.best(), &triangles_partition());
        assert!((h.modularity[h.best] - 2.5 / 7.0).abs() < 1e-12);
    }

    fn set_partitions(n: usize) -> Vec<Vec<usize>> {
        // restricted growth strings
        let mut out = Vec::new();
        let mut current = vec![0usize; n];
        fn rec(i: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == current.len() {
                out.push(current.clone());
                return;
            }
            for c in 0..=max + 1 {
                current[i] = c;
                rec(i + 1, max.max(c), current, out);
            }
        }
        rec(1, 0, &mut current, &mut out);
        out
    }

    #[test]
    fn greedy_k4_exhaustive() {
        let g = Graph::parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        let all = set_partitions(4);
        assert_eq!(all.len(), 15);
        let best_possible = all
            .iter()
            .map(|raw| {
                partition_modularity(
                    &g,
                    &Partition::from_assignment(raw).unwrap(),
                    NullModelKind::Configuration,
                )
                .unwrap()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(best_possible, 0.0);
        let h = greedy_agglomerative(&g, NullModelKind::Configuration).unwrap();
        assert_eq!(h.best().community_count(), 1);
        assert_eq!(h.modularity[h.best], 0.0);
    }

    #[test]
    fn greedy_uniform_null() {
        let pg = gen_disjoint_cliques(3, 4).unwrap();
        let h = greedy_agglomerative(&pg.graph, NullModelKind::Uniform).unwrap();
        assert_eq!(h.best(), &pg.planted);
        let r = metric_report(&pg.graph, h.best(), NullModelKind::Uniform).unwrap();
        assert!((h.modularity[h.best] - r.modularity).abs() < 1e-15);
    }

    #[test]
    fn greedy_improves_until_best_cut() {
        let pg = gen_ring_of_cliques(6, 4).unwrap();
        let h = greedy_agglomerative(&pg.graph, NullModelKind::Configuration).unwrap();
        for w in h.modularity[..=h.best].windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
    }

    #[test]
    fn louvain_two_triangles() {
        let levels = louvain_style(&two_triangles(), 42).unwrap();
        assert_eq!(levels[0], triangles_partition());
    }

    #[test]
    fn louvain_levels_monotone_and_ring_limit() {
        let pg = gen_ring_of_cliques(40, 5).unwrap();
        let single = partition_modularity(&pg.graph, &pg.planted, NullModelKind::Configuration).unwrap();
        for seed in [1, 42] {
            let levels = louvain_style(&pg.graph, seed).unwrap();
            let qs: Vec<f64> = levels
                .iter()
                .map(|p| partition_modularity(&pg.graph, p, NullModelKind::Configuration).unwrap())
                .collect();
            for w in qs.windows(2) {
                assert!(w[1] >= w[0] - 1e-12, "{qs:?}");
            }
            assert!(qs.iter().any(|&q| q > single), "{qs:?} vs {single}");
        }
    }

    #[test]
    fn determinism() {
        let pg = gen_ring_of_cliques(8, 4).unwrap();
        for kind in [
            DetectorKind::LabelPropagation,
            DetectorKind::GreedyAgglomerative,
            DetectorKind::LouvainStyle,
        ] {
            let a = kind
                .all_levels(&pg.graph, 9, NullModelKind::Configuration)
                .unwrap();
            let b = kind
                .all_levels(&pg.graph, 9, NullModelKind::Configuration)
                .unwrap();
            assert_eq!(a, b);
            for p in &a {
                assert_eq!(p.node_count(), pg.graph.node_count());
            }
        }
    }

    #[test]
    fn kind_round_trip() {
        for kind in [
            DetectorKind::LabelPropagation,
            DetectorKind::GreedyAgglomerative,
            DetectorKind::LouvainStyle,
        ] {
            assert_eq!(kind.to_string().parse::<DetectorKind>().unwrap(), kind);
        }
        assert!("infomap".parse::<DetectorKind>().is_err());
    }
}
