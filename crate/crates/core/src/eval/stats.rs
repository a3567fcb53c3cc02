// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::phase1::EdgeCloseness;
use crate::ties::TieStrengthTable;

pub const DEFAULT_BIN_WIDTH: f64 = 0.05;

// Bin edges are multiples of the width; values within this of an edge
// belong to the upper bin, so 0.95 = 19 · 0.05 lands in [0.95, 1.0].
const EDGE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub low: f64,
    pub high: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosenessStats {
    /// Pearson correlation of tie-strength and closeness; `None` when either
    /// has zero variance.
    pub pearson_r: Option<f64>,
    /// Bins `[low, high)` covering `[0, 1]`; the last bin is closed.
    pub histogram: Vec<HistogramBin>,
    /// `(t, p)` per edge, in edge-id order.
    pub scatter: Vec<(f64, f64)>,
}

impl ClosenessStats {
    /// Number of edges with `lo < p < hi`.
    pub fn count_open(&self, lo: f64, hi: f64) -> usize {
        self.scatter.iter().filter(|&&(_, p)| p > lo && p < hi).count()
    }
}

pub fn closeness_stats(
    graph: &Graph,
    ties: &TieStrengthTable,
    closeness: &EdgeCloseness,
    bin_width: f64,
) -> Result<ClosenessStats> {
    if closeness.len() != graph.m() || ties.edge.len() != graph.m() {
        return Err(Error::InvalidConfig(
            "tie-strength and closeness tables must cover every edge".into(),
        ));
    }
    let pairs: Vec<(f64, f64)> = (0..graph.m())
        .map(|e| (ties.edge(e), closeness.p(e)))
        .collect();
    closeness_stats_from_pairs(pairs, bin_width)
}

/// Statistics over `(t, p)` pairs, e.g. read back from a closeness CSV.
pub fn closeness_stats_from_pairs(pairs: Vec<(f64, f64)>, bin_width: f64) -> Result<ClosenessStats> {
    if !(bin_width > 0.0 && bin_width <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "bin width must be in (0, 1], got {bin_width}"
        )));
    }
    if let Some(&(_, p)) = pairs.iter().find(|(_, p)| !(0.0..=1.0).contains(p)) {
        return Err(Error::InvalidConfig(format!("closeness {p} outside [0, 1]")));
    }
    let bins = ((1.0 / bin_width) - EDGE_SLACK).ceil() as usize;
    let mut histogram: Vec<HistogramBin> = (0..bins)
        .map(|i| HistogramBin {
            low: i as f64 * bin_width,
            high: ((i + 1) as f64 * bin_width).min(1.0),
            count: 0,
        })
        .collect();
    for &(_, p) in &pairs {
        let i = ((p / bin_width) + EDGE_SLACK).floor() as usize;
        histogram[i.min(bins - 1)].count += 1;
    }
    Ok(ClosenessStats {
        pearson_r: pearson(&pairs),
        histogram,
        scatter: pairs,
    })
}

fn pearson(pairs: &[(f64, f64)]) -> Option<f64> {
    if pairs.len() < 2 {
        return None;
    }
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}
