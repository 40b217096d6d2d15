//! Disjoint, complete node partitions and the per-community counts every
//! quality function is built from.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{vertex_pair_count, Graph};

/// Assignment of every node to exactly one community.
///
/// Community ids are dense (`0..community_count`) and numbered in order of
/// first appearance over the node indices, so two partitions grouping nodes
/// the same way compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<usize>,
    community_count: usize,
}

impl Partition {
    /// Relabels arbitrary community keys densely. Fails on an empty slice.
    pub fn from_assignment(raw: &[usize]) -> Result<Partition> {
        if raw.is_empty() {
            return Err(Error::InvalidParameter("partition of zero nodes".into()));
        }
        let mut remap = HashMap::new();
        let assignment = raw
            .iter()
            .map(|&c| {
                let next = remap.len();
                *remap.entry(c).or_insert(next)
            })
            .collect();
        Ok(Partition {
            assignment,
            community_count: remap.len(),
        })
    }

    /// Builds a partition of `n` nodes from explicit member lists.
    pub fn from_communities(n: usize, communities: &[Vec<usize>]) -> Result<Partition> {
        let mut raw = vec![usize::MAX; n];
        for (c, members) in communities.iter().enumerate() {
            for &u in members {
                if u >= n {
                    return Err(Error::NodeOutOfRange { index: u, n });
                }
                if raw[u] != usize::MAX && raw[u] != c {
                    return Err(Error::OverlappingPartition {
                        label: u.to_string(),
                        first: raw[u].to_string(),
                        second: c.to_string(),
                    });
                }
                raw[u] = c;
            }
        }
        let missing: Vec<String> = (0..n)
            .filter(|&u| raw[u] == usize::MAX)
            .map(|u| u.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::IncompletePartition { missing });
        }
        Self::from_assignment(&raw)
    }

    pub fn singletons(n: usize) -> Partition {
        Partition {
            assignment: (0..n).collect(),
            community_count: n,
        }
    }

    pub fn single_community(n: usize) -> Partition {
        Partition {
            assignment: vec![0; n],
            community_count: usize::from(n > 0),
        }
    }

    /// Parses either the TSV or the JSON partition format, chosen by the
    /// first non-blank character.
    pub fn parse(text: &str, g: &Graph) -> Result<Partition> {
        if text.trim_start().starts_with('[') {
            Self::parse_json(text, g)
        } else {
            Self::parse_tsv(text, g)
        }
    }

    /// `node<TAB>community` per line. Lines without a tab are split on the
    /// first run of whitespace; `#` comments and blank lines are skipped.
    pub fn parse_tsv(text: &str, g: &Graph) -> Result<Partition> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim_end_matches(['\r', '\n']);
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let split = line
                .split_once('\t')
                .or_else(|| line.trim().split_once(char::is_whitespace));
            let (node, community) = match split {
                Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => (a.trim(), b.trim()),
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected node<TAB>community, got {line:?}"),
                    })
                }
            };
            entries.push((line_no, node.to_string(), community.to_string()));
        }
        Self::from_labeled(entries, g)
    }

    /// `[["a","b"],["c"]]`. Numeric labels are accepted and compared by their
    /// decimal rendering.
    pub fn parse_json(text: &str, g: &Graph) -> Result<Partition> {
        let groups: Vec<Vec<Value>> = serde_json::from_str(text)?;
        let mut entries = Vec::new();
        for (c, group) in groups.iter().enumerate() {
            for value in group {
                let label = match value {
                    Value::String(s) => s.clone(),
                    Value::Number(x) => x.to_string(),
                    other => {
                        return Err(Error::Parse {
                            line: 0,
                            message: format!("community {c}: node label must be a string, got {other}"),
                        })
                    }
                };
                entries.push((0, label, c.to_string()));
            }
        }
        Self::from_labeled(entries, g)
    }

    fn from_labeled(entries: Vec<(usize, String, String)>, g: &Graph) -> Result<Partition> {
        let n = g.node_count();
        let mut community_names: Vec<Option<String>> = vec![None; n];
        let mut keys: HashMap<String, usize> = HashMap::new();
        let mut raw = vec![usize::MAX; n];
        for (line, label, community) in entries {
            let u = g.index_of(&label).ok_or_else(|| Error::UnknownNode {
                line,
                label: label.clone(),
            })?;
            if let Some(previous) = &community_names[u] {
                if *previous != community {
                    return Err(Error::OverlappingPartition {
                        label,
                        first: previous.clone(),
                        second: community,
                    });
                }
                continue;
            }
            let next = keys.len();
            raw[u] = *keys.entry(community.clone()).or_insert(next);
            community_names[u] = Some(community);
        }
        let missing: Vec<String> = (0..n)
            .filter(|&u| raw[u] == usize::MAX)
            .map(|u| g.label(u).to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::IncompletePartition { missing });
        }
        Self::from_assignment(&raw)
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn community_of(&self, u: usize) -> usize {
        self.assignment[u]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn same_community(&self, u: usize, v: usize) -> bool {
        self.assignment[u] == self.assignment[v]
    }

    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.community_count];
        for (u, &c) in self.assignment.iter().enumerate() {
            out[c].push(u);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.community_count];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }

    /// Puts the members of community `b` into community `a`.
    pub fn merge(&self, a: usize, b: usize) -> Partition {
        let raw: Vec<usize> = self
            .assignment
            .iter()
            .map(|&c| if c == b { a } else { c })
            .collect();
        Self::from_assignment(&raw).expect("non-empty")
    }

    /// Maps a partition of an aggregated graph back onto original nodes:
    /// node `u` goes to `coarse[self[u]]`.
    pub fn compose(&self, coarse: &Partition) -> Partition {
        let raw: Vec<usize> = self.assignment.iter().map(|&c| coarse.community_of(c)).collect();
        Self::from_assignment(&raw).expect("non-empty")
    }

    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.node_count() != g.node_count() {
            return Err(Error::PartitionSizeMismatch {
                expected: g.node_count(),
                got: self.node_count(),
            });
        }
        Ok(())
    }

    /// TSV rendering with community ids as integers.
    pub fn to_tsv(&self, g: &Graph) -> String {
        let mut out = String::new();
        for (u, &c) in self.assignment.iter().enumerate() {
            let _ = writeln!(out, "{}\t{}", g.label(u), c);
        }
        out
    }

    pub fn to_json(&self, g: &Graph) -> String {
        let groups: Vec<Vec<&str>> = self
            .communities()
            .iter()
            .map(|members| members.iter().map(|&u| g.label(u)).collect())
            .collect();
        serde_json::to_string(&groups).expect("string arrays serialize")
    }
}

/// Exact integer counts per community.
///
/// For community `c` of size `s_c`: internal edge count `l_c`, internal pair
/// count `k_c = s_c(s_c-1)/2` and degree sum `d_c`. `l` and `k` are the sums
/// over communities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityStats {
    sizes: Vec<u64>,
    internal_edges: Vec<u64>,
    internal_pairs: Vec<u64>,
    degree_sums: Vec<u64>,
    total_internal_edges: u64,
    total_internal_pairs: u64,
}

impl CommunityStats {
    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn internal_edges(&self) -> &[u64] {
        &self.internal_edges
    }

    pub fn internal_pairs(&self) -> &[u64] {
        &self.internal_pairs
    }

    pub fn degree_sums(&self) -> &[u64] {
        &self.degree_sums
    }

    /// `l`
    pub fn total_internal_edges(&self) -> u64 {
        self.total_internal_edges
    }

    /// `k`
    pub fn total_internal_pairs(&self) -> u64 {
        self.total_internal_pairs
    }

    pub fn community_count(&self) -> usize {
        self.sizes.len()
    }
}

/// Counts `l_c`, `k_c`, `d_c` and `s_c` in one pass over the adjacency.
pub fn community_stats(g: &Graph, part: &Partition) -> Result<CommunityStats> {
    part.check_covers(g)?;
    let c = part.community_count();
    let mut sizes = vec![0u64; c];
    let mut internal_edges = vec![0u64; c];
    let mut degree_sums = vec![0u64; c];
    for u in 0..g.node_count() {
        let cu = part.community_of(u);
        sizes[cu] += 1;
        degree_sums[cu] += g.degree(u) as u64;
        internal_edges[cu] += g
            .neighbors(u)
            .iter()
            .filter(|&&v| v > u && part.community_of(v) == cu)
            .count() as u64;
    }
    let internal_pairs: Vec<u64> = sizes.iter().map(|&s| vertex_pair_count(s as usize)).collect();
    Ok(CommunityStats {
        total_internal_edges: internal_edges.iter().sum(),
        total_internal_pairs: internal_pairs.iter().sum(),
        sizes,
        internal_edges,
        internal_pairs,
        degree_sums,
    })
}
