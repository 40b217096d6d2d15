//! Scoring and selecting graph partitions on several quality criteria.
//!
//! The crate scores a community partition of an undirected simple graph with
//! a family of edge/pair counting quality functions (precision and recall on
//! vertex pairs, size-corrected separation, modularity, MDensity), selects
//! non-dominated partitions on two criteria, and ships the seeded benchmark
//! generators and baseline detectors needed to produce partitions end to end.
//!
//! ```
//! use parteval::{metric_report, Graph, NullModelKind, Partition};
//!
//! let g = Graph::parse_edge_list("0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3").unwrap();
//! let part = Partition::from_assignment(&[0, 0, 0, 1, 1, 1]).unwrap();
//! let report = metric_report(&g, &part, NullModelKind::Configuration).unwrap();
//! assert!((report.modularity - 2.5 / 7.0).abs() < 1e-12);
//! ```

pub mod benchgen;
pub mod detectors;
mod error;
pub mod graph;
pub mod metrics;
pub mod null_model;
pub mod pareto;
pub mod partition;
pub mod pr_eval;
pub mod report;
pub mod rng;

pub use benchgen::{GeneratorParams, PlantedGraph};
pub use detectors::{DetectorKind, GreedyHierarchy};
pub use error::{Error, Result};
pub use graph::Graph;
pub use metrics::{metric_report, MetricReport};
pub use null_model::{expected_internal_edges, NullExpectation, NullModelKind};
pub use pareto::{alpha_envelope, pareto_frontier, two_fq, AlphaInterval, ScorePoint, TwoFqMode};
pub use partition::{community_stats, CommunityStats, Partition};
pub use pr_eval::{evaluate_partition, make_split, run_trials, EvalSplit, PRResult, TrialSummary};
