//! Partitions scored as vertex-pair classifiers on held-out edges.
//!
//! A split removes a fraction `P` of the edges (`RE`) and draws a matching
//! set of non-edges (`FPT`) so that the validation set `VS = RE ∪ FPT`
//! holds `round(P·p)` pairs. A partition of the training graph predicts
//! EDGE for a pair exactly when both ends share a community.
//!
//! Sizes round half up: `round(x) = floor(x + 0.5)`.

use std::collections::HashSet;

use rand::seq::index;
use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::rng::seeded;

pub const DEFAULT_REMOVAL_FRACTION: f64 = 0.1;

pub fn round_half_up(x: f64) -> u64 {
    (x + 0.5).floor() as u64
}

#[derive(Debug, Clone)]
pub struct EvalSplit {
    pub training_graph: Graph,
    /// `RE`, as `(u, v)` with `u < v`.
    pub removed_edges: Vec<(usize, usize)>,
    /// `FPT`, as `(u, v)` with `u < v`.
    pub sampled_nonedges: Vec<(usize, usize)>,
    pub removal_fraction: f64,
    pub seed: u64,
}

impl EvalSplit {
    pub fn validation_size(&self) -> usize {
        self.removed_edges.len() + self.sampled_nonedges.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PRResult {
    pub seed: u64,
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
    pub precision: f64,
    pub recall: f64,
}

/// Builds the training graph and validation set for one seed.
///
/// `RE` is a uniform sample without replacement of the edges (in
/// [`Graph::edges`] order); `FPT` a uniform sample without replacement of
/// the non-edges, drawn by rejection when non-edges are plentiful and by
/// enumeration otherwise.
pub fn make_split(g: &Graph, removal_fraction: f64, seed: u64) -> Result<EvalSplit> {
    if !(removal_fraction > 0.0 && removal_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "removal fraction {removal_fraction} outside (0, 1)"
        )));
    }
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::EmptyGraph);
    }
    let p = g.vertex_pair_count();
    let removed_count = round_half_up(removal_fraction * m as f64);
    let validation_count = round_half_up(removal_fraction * p as f64);
    if validation_count < removed_count {
        return Err(Error::InvalidParameter(format!(
            "validation set of {validation_count} pairs cannot hold {removed_count} removed edges"
        )));
    }
    let nonedge_count = validation_count - removed_count;
    if nonedge_count > p - m {
        return Err(Error::InvalidParameter(format!(
            "graph too dense: need {nonedge_count} non-edges, only {} exist",
            p - m
        )));
    }

    let mut rng = seeded(seed);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut picked = index::sample(&mut rng, edges.len(), removed_count as usize).into_vec();
    picked.sort_unstable();
    let removed_edges: Vec<(usize, usize)> = picked.into_iter().map(|i| edges[i]).collect();

    let n = g.node_count();
    let sampled_nonedges = if 2 * nonedge_count <= p - m {
        let mut chosen = HashSet::with_capacity(nonedge_count as usize);
        let mut out = Vec::with_capacity(nonedge_count as usize);
        while (out.len() as u64) < nonedge_count {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let pair = (u.min(v), u.max(v));
            if !g.has_edge(pair.0, pair.1) && chosen.insert(pair) {
                out.push(pair);
            }
        }
        out
    } else {
        let all: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        index::sample(&mut rng, all.len(), nonedge_count as usize)
            .into_iter()
            .map(|i| all[i])
            .collect()
    };

    Ok(EvalSplit {
        training_graph: g.without_edges(&removed_edges),
        removed_edges,
        sampled_nonedges,
        removal_fraction,
        seed,
    })
}

/// Confusion counts of `part` (a partition of the training graph) on the
/// validation pairs.
pub fn evaluate_partition(split: &EvalSplit, part: &Partition) -> Result<PRResult> {
    part.check_covers(&split.training_graph)?;
    let tp = split
        .removed_edges
        .iter()
        .filter(|&&(u, v)| part.same_community(u, v))
        .count() as u64;
    let fp = split
        .sampled_nonedges
        .iter()
        .filter(|&&(u, v)| part.same_community(u, v))
        .count() as u64;
    let fn_ = split.removed_edges.len() as u64 - tp;
    let tn = split.sampled_nonedges.len() as u64 - fp;
    let ratio = |a: u64, b: u64| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    Ok(PRResult {
        seed: split.seed,
        tp,
        fp,
        fn_,
        tn,
        precision: ratio(tp, tp + fp),
        recall: ratio(tp, tp + fn_),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialSummary {
    pub results: Vec<PRResult>,
    pub mean_precision: f64,
    pub mean_recall: f64,
}

/// One split per seed, each scored on the partition `detector` returns for
/// that split's training graph. The detector receives the trial seed.
pub fn run_trials<F>(g: &Graph, removal_fraction: f64, seeds: &[u64], mut detector: F) -> Result<TrialSummary>
where
    F: FnMut(&Graph, u64) -> Result<Partition>,
{
    if seeds.is_empty() {
        return Err(Error::InvalidParameter("at least one seed is required".into()));
    }
    let mut results = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let split = make_split(g, removal_fraction, seed)?;
        let part = detector(&split.training_graph, seed)?;
        results.push(evaluate_partition(&split, &part)?);
    }
    let count = results.len() as f64;
    Ok(TrialSummary {
        mean_precision: results.iter().map(|r| r.precision).sum::<f64>() / count,
        mean_recall: results.iter().map(|r| r.recall).sum::<f64>() / count,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bowtie() -> Graph {
        Graph::parse_edge_list("0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3").unwrap()
    }

    #[test]
    fn rounding() {
        assert_eq!(round_half_up(1.4), 1);
        assert_eq!(round_half_up(1.5), 2);
        assert_eq!(round_half_up(2.5), 3);
        assert_eq!(round_half_up(0.2 * 15.0), 3);
    }

    #[test]
    fn triangle_has_no_room_for_nonedges() {
        let g = Graph::parse_edge_list("0 1\n1 2\n0 2").unwrap();
        let s = make_split(&g, 1.0 / 3.0, 5).unwrap();
        assert_eq!(s.removed_edges.len(), 1);
        assert_eq!(s.validation_size(), 1);
        assert!(s.sampled_nonedges.is_empty());
        assert_eq!(s.training_graph.edge_count(), 2);
    }

    #[test]
    fn bowtie_sizes_and_determinism() {
        let g = bowtie();
        let a = make_split(&g, 0.2, 17).unwrap();
        assert_eq!(
            (
                a.removed_edges.len(),
                a.validation_size(),
                a.sampled_nonedges.len()
            ),
            (1, 3, 2)
        );
        let b = make_split(&g, 0.2, 17).unwrap();
        assert_eq!(a.removed_edges, b.removed_edges);
        assert_eq!(a.sampled_nonedges, b.sampled_nonedges);
    }

    #[test]
    fn bad_parameters() {
        let g = bowtie();
        assert!(make_split(&g, 0.0, 1).is_err());
        assert!(make_split(&g, 1.0, 1).is_err());
        let k4 = Graph::parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        // p = m = 6: any fraction needs more non-edges iff rounding differs
        let s = make_split(&k4, 0.5, 1).unwrap();
        assert!(s.sampled_nonedges.is_empty());
    }

    #[test]
    fn hand_checked_bowtie_split() {
        let g = bowtie();
        let split = EvalSplit {
            training_graph: g.without_edges(&[(0, 1)]),
            removed_edges: vec![(0, 1)],
            sampled_nonedges: vec![(0, 4), (1, 5)],
            removal_fraction: 0.2,
            seed: 0,
        };
        let part = Partition::from_assignment(&[0, 0, 0, 1, 1, 1]).unwrap();
        let r = evaluate_partition(&split, &part).unwrap();
        assert_eq!((r.tp, r.fp, r.fn_, r.tn), (1, 0, 0, 2));
        assert_eq!((r.precision, r.recall), (1.0, 1.0));

        let alone = evaluate_partition(&split, &Partition::singletons(6)).unwrap();
        assert_eq!(
            (alone.tp, alone.fp, alone.precision, alone.recall),
            (0, 0, 0.0, 0.0)
        );

        let whole = evaluate_partition(&split, &Partition::single_community(6)).unwrap();
        assert_eq!(whole.recall, 1.0);
        assert_eq!(whole.precision, 1.0 / 3.0);
    }

    #[test]
    fn trials_reproducible() {
        let g = bowtie();
        let seeds: Vec<u64> = (0..20).collect();
        let detect = |t: &Graph, _| Ok(Partition::single_community(t.node_count()));
        let a = run_trials(&g, 0.2, &seeds, detect).unwrap();
        let b = run_trials(&g, 0.2, &seeds, detect).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.results.len(), 20);
        assert!(run_trials(&g, 0.2, &[], detect).is_err());
        let c = run_trials(&g, 0.1, &seeds, detect).unwrap();
        assert!(c.results.iter().all(|r| r.tp + r.fn_ == 1));
    }

    proptest! {
        #[test]
        fn split_invariants(
            n in 4usize..40,
            edges in prop::collection::vec((0usize..40, 0usize..40), 1..120),
            fraction in 0.05f64..0.6,
            seed in any::<u64>(),
        ) {
            let edges: Vec<_> = edges.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
            prop_assume!(!edges.is_empty());
            let g = Graph::from_edges(n, edges).unwrap();
            let Ok(split) = make_split(&g, fraction, seed) else {
                return Ok(());
            };
            let m = g.edge_count() as f64;
            let p = g.vertex_pair_count() as f64;
            prop_assert_eq!(split.removed_edges.len() as u64, round_half_up(fraction * m));
            prop_assert_eq!(split.validation_size() as u64, round_half_up(fraction * p));
            let re: HashSet<_> = split.removed_edges.iter().copied().collect();
            let fpt: HashSet<_> = split.sampled_nonedges.iter().copied().collect();
            prop_assert_eq!(re.len(), split.removed_edges.len());
            prop_assert_eq!(fpt.len(), split.sampled_nonedges.len());
            for &(u, v) in &re {
                prop_assert!(g.has_edge(u, v));
                prop_assert!(!split.training_graph.has_edge(u, v));
            }
            for &(u, v) in &fpt {
                prop_assert!(u < v && !g.has_edge(u, v));
            }
            prop_assert_eq!(split.training_graph.node_count(), n);
            prop_assert_eq!(split.training_graph.edge_count(), g.edge_count() - re.len() as u64);
        }
    }
}
