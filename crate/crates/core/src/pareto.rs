//! Two-criteria Pareto selection and the 2FQ preference envelope.
//!
//! Both criteria are maximized. A point is dominated when some other point
//! is at least as good on both coordinates and strictly better on one; equal
//! points never dominate each other.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Intervals shorter than this are dropped from the envelope.
pub const MIN_INTERVAL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScorePoint {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

impl ScorePoint {
    pub fn new(id: impl Into<String>, x: f64, y: f64) -> Self {
        ScorePoint { id: id.into(), x, y }
    }

    pub fn dominates(&self, other: &ScorePoint) -> bool {
        self.x >= other.x && self.y >= other.y && (self.x > other.x || self.y > other.y)
    }
}

fn check_finite(points: &[ScorePoint]) -> Result<()> {
    match points.iter().find(|p| !p.x.is_finite() || !p.y.is_finite()) {
        Some(p) => Err(Error::NonFiniteScore { id: p.id.clone() }),
        None => Ok(()),
    }
}

/// Per-point frontier membership, in input order. `O(n log n)`.
pub fn frontier_mask(points: &[ScorePoint]) -> Result<Vec<bool>> {
    check_finite(points)?;
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[b]
            .x
            .total_cmp(&points[a].x)
            .then(points[b].y.total_cmp(&points[a].y))
    });
    let mut mask = vec![false; points.len()];
    // best y among points with strictly larger x
    let mut best_y = f64::NEG_INFINITY;
    let mut i = 0;
    while i < order.len() {
        let x = points[order[i]].x;
        let group_top = points[order[i]].y;
        let mut j = i;
        while j < order.len() && points[order[j]].x == x {
            if points[order[j]].y == group_top && group_top > best_y {
                mask[order[j]] = true;
            }
            j += 1;
        }
        best_y = best_y.max(group_top);
        i = j;
    }
    Ok(mask)
}

/// The non-dominated points, in input order. Exact duplicates of a
/// frontier point are all kept.
pub fn pareto_frontier(points: &[ScorePoint]) -> Result<Vec<ScorePoint>> {
    let mask = frontier_mask(points)?;
    Ok(points
        .iter()
        .zip(mask)
        .filter(|&(_, keep)| keep)
        .map(|(p, _)| p.clone())
        .collect())
}

/// How modularity and MDensity are combined into one score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwoFqMode {
    /// `alpha * modularity + (1 - alpha) * mdensity`
    #[default]
    Convex,
    /// `alpha * modularity * (1 - alpha) * mdensity`
    Product,
}

impl FromStr for TwoFqMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convex" => Ok(TwoFqMode::Convex),
            "product" => Ok(TwoFqMode::Product),
            other => Err(Error::InvalidParameter(format!("unknown 2FQ mode {other:?}"))),
        }
    }
}

pub fn two_fq(modularity: f64, mdensity: f64, alpha: f64, mode: TwoFqMode) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha {alpha} outside [0, 1]")));
    }
    Ok(match mode {
        TwoFqMode::Convex if alpha == 1.0 => modularity,
        TwoFqMode::Convex if alpha == 0.0 => mdensity,
        TwoFqMode::Convex => alpha * modularity + (1.0 - alpha) * mdensity,
        TwoFqMode::Product => alpha * modularity * (1.0 - alpha) * mdensity,
    })
}

/// Range of `alpha` on which one partition has the highest convex 2FQ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaInterval {
    pub id: String,
    pub lo: f64,
    pub hi: f64,
}

/// Upper envelope of `alpha -> alpha * mod_i + (1 - alpha) * md_i` over
/// `[0, 1]`, as `(id, modularity, mdensity)` triples.
///
/// Sweeps from `alpha = 0`, always jumping to the line that overtakes the
/// current winner first. Where several lines tie the steepest one wins, since
/// it stays on top to the right; identical lines go to the earliest input.
/// The returned intervals are sorted and tile `[0, 1]`.
pub fn alpha_envelope(points: &[(String, f64, f64)]) -> Result<Vec<AlphaInterval>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let as_points: Vec<ScorePoint> = points
        .iter()
        .map(|(id, a, b)| ScorePoint::new(id.clone(), *a, *b))
        .collect();
    check_finite(&as_points)?;

    // line i: intercept md_i, slope mod_i - md_i
    let intercept = |i: usize| points[i].2;
    let slope = |i: usize| points[i].1 - points[i].2;

    let better_start = |a: usize, b: usize| {
        // is line a preferred over b at alpha = 0?
        intercept(a) > intercept(b) || (intercept(a) == intercept(b) && slope(a) > slope(b))
    };
    let mut current = 0;
    for i in 1..points.len() {
        if better_start(i, current) {
            current = i;
        }
    }

    let mut raw: Vec<(usize, f64, f64)> = Vec::new();
    let mut lo = 0.0;
    loop {
        let mut next: Option<(usize, f64)> = None;
        for j in 0..points.len() {
            if slope(j) <= slope(current) {
                continue;
            }
            let cross = (intercept(current) - intercept(j)) / (slope(j) - slope(current));
            let cross = cross.max(lo);
            if cross >= 1.0 {
                continue;
            }
            next = match next {
                None => Some((j, cross)),
                Some((k, at)) if cross < at || (cross == at && slope(j) > slope(k)) => Some((j, cross)),
                keep => keep,
            };
        }
        match next {
            Some((j, at)) => {
                raw.push((current, lo, at));
                current = j;
                lo = at;
            }
            None => {
                raw.push((current, lo, 1.0));
                break;
            }
        }
    }

    // drop slivers by folding them into the following interval
    let mut out: Vec<AlphaInterval> = Vec::new();
    let mut carry: Option<f64> = None;
    let last = raw.len() - 1;
    for (pos, (i, lo, hi)) in raw.into_iter().enumerate() {
        let lo = carry.take().unwrap_or(lo);
        if hi - lo < MIN_INTERVAL && pos != last {
            carry = Some(lo);
            continue;
        }
        if hi - lo < MIN_INTERVAL {
            if let Some(prev) = out.last_mut() {
                prev.hi = hi;
                continue;
            }
        }
        if let Some(prev) = out.last_mut() {
            if prev.id == points[i].0 && prev.hi == lo {
                prev.hi = hi;
                continue;
            }
        }
        out.push(AlphaInterval {
            id: points[i].0.clone(),
            lo,
            hi,
        });
    }
    Ok(out)
}
