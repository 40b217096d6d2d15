//! Scalar quality functions of a partition.
//!
//! Every function here is a closed form in a handful of counts:
//!
//! | symbol | meaning                                       |
//! |--------|-----------------------------------------------|
//! | `m`    | edges in the graph                            |
//! | `p`    | vertex pairs in the graph, `n(n-1)/2`         |
//! | `l`    | edges inside communities                      |
//! | `k`    | vertex pairs inside communities               |
//! | `l'`   | expected edges inside communities (null model)|
//! | `k'`   | `l' p / m`                                    |
//!
//! Ratios whose denominator vanishes (`k = 0` for the all-singleton
//! partition, `k' = 0` when nothing is expected inside communities) are
//! reported as `0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::null_model::{expected_internal_edges, NullExpectation, NullModelKind};
use crate::partition::{community_stats, CommunityStats, Partition};

/// Metric column names, in report order.
pub const METRIC_COLUMNS: [&str; 8] = [
    "precision",
    "recall",
    "c_size",
    "q_prime",
    "modularity",
    "ccs",
    "density_gain",
    "mdensity",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub precision: f64,
    pub recall: f64,
    pub c_size: f64,
    pub q_prime: f64,
    pub modularity: f64,
    pub ccs: f64,
    pub density_gain: f64,
    pub mdensity: f64,
    pub null_kind: NullModelKind,
}

impl MetricReport {
    /// Looks a metric up by its column name.
    pub fn get(&self, column: &str) -> Option<f64> {
        Some(match column {
            "precision" => self.precision,
            "recall" => self.recall,
            "c_size" => self.c_size,
            "q_prime" => self.q_prime,
            "modularity" => self.modularity,
            "ccs" => self.ccs,
            "density_gain" => self.density_gain,
            "mdensity" => self.mdensity,
            _ => return None,
        })
    }

    pub fn values(&self) -> [f64; 8] {
        [
            self.precision,
            self.recall,
            self.c_size,
            self.q_prime,
            self.modularity,
            self.ccs,
            self.density_gain,
            self.mdensity,
        ]
    }
}

fn ratio_or_zero(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

fn edges_or_err(g: &Graph) -> Result<f64> {
    match g.edge_count() {
        0 => Err(Error::EmptyGraph),
        m => Ok(m as f64),
    }
}

/// Density of the communities taken together, `l / k`.
pub fn precision(stats: &CommunityStats) -> f64 {
    ratio_or_zero(
        stats.total_internal_edges() as f64,
        stats.total_internal_pairs() as f64,
    )
}

/// Fraction of edges inside communities, `l / m`. Also the partitioning
/// quality `1 - (m - l)/m`.
pub fn recall(stats: &CommunityStats, g: &Graph) -> Result<f64> {
    Ok(stats.total_internal_edges() as f64 / edges_or_err(g)?)
}

/// Fraction of vertex pairs falling between communities, `1 - k / p`.
pub fn c_size(stats: &CommunityStats, g: &Graph) -> f64 {
    1.0 - ratio_or_zero(stats.total_internal_pairs() as f64, g.vertex_pair_count() as f64)
}

fn separation_gain(stats: &CommunityStats, null: &NullExpectation, g: &Graph) -> Result<f64> {
    let m = edges_or_err(g)?;
    Ok(stats.total_internal_edges() as f64 / m - null.expected_internal_edges / m)
}

/// `l/m - l'/m`: observed edge fraction inside communities over the
/// null-model baseline.
pub fn q_prime(stats: &CommunityStats, null: &NullExpectation, g: &Graph) -> Result<f64> {
    separation_gain(stats, null, g)
}

/// Same quantity as [`q_prime`]; with the configuration null this is
/// Newman-Girvan modularity.
pub fn modularity(stats: &CommunityStats, null: &NullExpectation, g: &Graph) -> Result<f64> {
    separation_gain(stats, null, g)
}

/// Corrected community size, `1 - l'/m`.
pub fn ccs(null: &NullExpectation, g: &Graph) -> Result<f64> {
    Ok(1.0 - null.expected_internal_edges / edges_or_err(g)?)
}

/// `(l - l') / k`, the size-weighted mean of per-community density gains.
pub fn density_gain(stats: &CommunityStats, null: &NullExpectation) -> f64 {
    ratio_or_zero(
        stats.total_internal_edges() as f64 - null.expected_internal_edges,
        stats.total_internal_pairs() as f64,
    )
}

/// `(l - l') / k' * l / m`.
pub fn mdensity(stats: &CommunityStats, null: &NullExpectation, g: &Graph) -> Result<f64> {
    let m = edges_or_err(g)?;
    let l = stats.total_internal_edges() as f64;
    let gain = ratio_or_zero(l - null.expected_internal_edges, null.corrected_pairs);
    Ok(gain * (l / m))
}

/// All metrics from one [`CommunityStats`] and one [`NullExpectation`].
pub fn report_from_parts(g: &Graph, stats: &CommunityStats, null: &NullExpectation) -> Result<MetricReport> {
    let modularity = modularity(stats, null, g)?;
    Ok(MetricReport {
        precision: precision(stats),
        recall: recall(stats, g)?,
        c_size: c_size(stats, g),
        q_prime: q_prime(stats, null, g)?,
        modularity,
        ccs: ccs(null, g)?,
        density_gain: density_gain(stats, null),
        mdensity: mdensity(stats, null, g)?,
        null_kind: null.kind,
    })
}

pub fn metric_report(g: &Graph, part: &Partition, kind: NullModelKind) -> Result<MetricReport> {
    let stats = community_stats(g, part)?;
    let null = expected_internal_edges(g, &stats, kind)?;
    report_from_parts(g, &stats, &null)
}

/// Modularity alone, without building the full report.
pub fn partition_modularity(g: &Graph, part: &Partition, kind: NullModelKind) -> Result<f64> {
    let stats = community_stats(g, part)?;
    let null = expected_internal_edges(g, &stats, kind)?;
    modularity(&stats, &null, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn bowtie() -> Graph {
        Graph::parse_edge_list("0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3").unwrap()
    }

    fn two_triangles() -> Partition {
        Partition::from_assignment(&[0, 0, 0, 1, 1, 1]).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= TOL
    }

    #[test]
    fn bowtie_configuration() {
        let r = metric_report(&bowtie(), &two_triangles(), NullModelKind::Configuration).unwrap();
        assert_eq!(r.precision, 1.0);
        assert!(close(r.recall, 6.0 / 7.0));
        assert!(close(r.c_size, 0.6));
        assert!(close(r.q_prime, 2.5 / 7.0));
        assert_eq!(r.q_prime.to_bits(), r.modularity.to_bits());
        assert!(close(r.ccs, 0.5));
        assert!(close(r.density_gain, 2.5 / 6.0));
        assert!(close(r.mdensity, 2.0 / 7.0));
    }

    #[test]
    fn bowtie_uniform() {
        let r = metric_report(&bowtie(), &two_triangles(), NullModelKind::Uniform).unwrap();
        assert!(close(r.q_prime, 3.2 / 7.0));
        assert!(close(r.mdensity, r.precision * r.modularity));
        assert!(close(r.mdensity, 3.2 / 7.0));
    }

    #[test]
    fn bowtie_single_community() {
        let g = bowtie();
        let r = metric_report(&g, &Partition::single_community(6), NullModelKind::Configuration).unwrap();
        assert!(close(r.precision, 7.0 / 15.0));
        assert_eq!(r.recall, 1.0);
        assert_eq!(r.c_size, 0.0);
        assert_eq!(r.modularity, 0.0);
        assert_eq!(r.ccs, 0.0);
        assert_eq!(r.mdensity, 0.0);
    }

    #[test]
    fn all_singletons_uniform() {
        let g = bowtie();
        let r = metric_report(&g, &Partition::singletons(6), NullModelKind::Uniform).unwrap();
        assert_eq!(
            (
                r.precision,
                r.recall,
                r.modularity,
                r.c_size,
                r.ccs,
                r.density_gain,
                r.mdensity
            ),
            (0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0)
        );
    }

    #[test]
    fn singleton_modularity_sign() {
        let g = bowtie();
        let r = metric_report(&g, &Partition::singletons(6), NullModelKind::Configuration).unwrap();
        let m = g.edge_count() as f64;
        let direct: f64 = -g.degrees().iter().map(|&d| (d * d) as f64).sum::<f64>() / (4.0 * m * m);
        assert!(close(r.modularity, direct));
        assert!(r.modularity < 0.0);
    }

    #[test]
    fn disjoint_cliques_uniform_law() {
        // 4 disjoint K5: l = k = m = 40, p = 190
        let mut edges = Vec::new();
        for c in 0..4 {
            for i in 0..5 {
                for j in (i + 1)..5 {
                    edges.push((5 * c + i, 5 * c + j));
                }
            }
        }
        let g = Graph::from_edges(20, edges).unwrap();
        let part = Partition::from_assignment(&(0..20).map(|u| u / 5).collect::<Vec<_>>()).unwrap();
        let r = metric_report(&g, &part, NullModelKind::Uniform).unwrap();
        assert!(close(r.mdensity, 1.0 - 40.0 / 190.0));
        assert!(close(r.density_gain, 1.0 - 40.0 / 190.0));
    }

    #[test]
    fn empty_graph_errors() {
        let g = Graph::from_edges(2, []).unwrap();
        assert!(metric_report(&g, &Partition::singletons(2), NullModelKind::Uniform).is_err());
    }

    #[test]
    fn column_lookup() {
        let r = metric_report(&bowtie(), &two_triangles(), NullModelKind::Configuration).unwrap();
        for (name, value) in METRIC_COLUMNS.iter().zip(r.values()) {
            assert_eq!(r.get(name), Some(value));
        }
        assert_eq!(r.get("conductance"), None);
    }

    fn instance() -> impl Strategy<Value = (Graph, Partition)> {
        (2usize..40).prop_flat_map(|n| {
            (
                prop::collection::vec((0..n, 0..n), 1..150),
                prop::collection::vec(0..n, n),
            )
                .prop_filter_map("needs an edge", move |(edges, raw)| {
                    let edges: Vec<_> = edges.into_iter().filter(|(a, b)| a != b).collect();
                    if edges.is_empty() {
                        return None;
                    }
                    Some((
                        Graph::from_edges(n, edges).unwrap(),
                        Partition::from_assignment(&raw).unwrap(),
                    ))
                })
        })
    }

    proptest! {
        #[test]
        fn ranges_and_identities((g, part) in instance()) {
            for kind in [NullModelKind::Uniform, NullModelKind::Configuration] {
                let r = metric_report(&g, &part, kind).unwrap();
                prop_assert_eq!(r.q_prime.to_bits(), r.modularity.to_bits());
                prop_assert!((r.ccs - (1.0 - (r.recall - r.modularity))).abs() <= TOL);
                prop_assert!((0.0..=1.0).contains(&r.precision));
                prop_assert!((0.0..=1.0).contains(&r.recall));
                prop_assert!((0.0..=1.0).contains(&r.c_size));
                prop_assert!(r.modularity >= -1.0 && r.modularity < 1.0);
                if kind == NullModelKind::Uniform {
                    prop_assert!((r.mdensity - r.precision * r.modularity).abs() <= TOL);
                    prop_assert!((0.0..=1.0).contains(&r.ccs));
                }
            }
            let whole = metric_report(&g, &Partition::single_community(g.node_count()), NullModelKind::Configuration).unwrap();
            prop_assert_eq!(whole.recall, 1.0);
            prop_assert_eq!(whole.modularity, 0.0);
        }

        #[test]
        fn adjacent_merge_raises_recall((g, part) in instance(), pick in any::<prop::sample::Index>()) {
            let crossing: Vec<_> = g
                .edges()
                .filter(|&(u, v)| !part.same_community(u, v))
                .collect();
            prop_assume!(!crossing.is_empty());
            let (u, v) = crossing[pick.index(crossing.len())];
            let merged = part.merge(part.community_of(u), part.community_of(v));
            let before = metric_report(&g, &part, NullModelKind::Configuration).unwrap();
            let after = metric_report(&g, &merged, NullModelKind::Configuration).unwrap();
            prop_assert!(after.recall > before.recall);
            prop_assert!(after.c_size <= before.c_size);
        }
    }
}
