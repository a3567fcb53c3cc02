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

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Weighted Newman modularity of a disjoint partition:
/// `Q = Σ_c [ w_in(c) / W − (d(c) / 2W)² ]`.
pub fn modularity(graph: &Graph, partition: &Cover) -> Result<f64> {
    if partition.n() != graph.n() {
        return Err(Error::UniverseMismatch {
            left: graph.n(),
            right: partition.n(),
        });
    }
    if let Some(v) = (0..graph.n()).find(|&v| partition.memberships(v).len() != 1) {
        return Err(Error::NotDisjoint(v, partition.memberships(v).len()));
    }
    let total = graph.total_weight();
    if total <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let community = |v: usize| partition.memberships(v)[0];
    let mut inner = vec![0.0; partition.len()];
    let mut degree = vec![0.0; partition.len()];
    for e in graph.edges() {
        let (cu, cv) = (community(e.u), community(e.v));
        degree[cu] += e.w;
        degree[cv] += e.w;
        if cu == cv {
            inner[cu] += e.w;
        }
    }
    Ok(inner
        .iter()
        .zip(&degree)
        .map(|(&w_in, &d)| w_in / total - (d / (2.0 * total)).powi(2))
        .sum())
}
