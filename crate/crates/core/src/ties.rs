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

//! Tie-strength of an edge: its own weight plus, for every common neighbour
//! `k`, the weights of both wedge edges `(i, k)` and `(j, k)`.

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct TieStrengthTable {
    /// `t(i, j)` by edge id.
    pub edge: Vec<f64>,
    /// `t(i, j)` aligned with the graph's adjacency slots.
    pub slot: Vec<f64>,
    /// `t_i`, the sum of tie-strengths over `i`'s edges.
    pub vertex: Vec<f64>,
    /// `Σ_i t_i`.
    pub total: f64,
    /// `Σ_(i,j) t(i, j)`; half of `total`.
    pub total_edge: f64,
}

impl TieStrengthTable {
    pub fn edge(&self, id: usize) -> f64 {
        self.edge[id]
    }

    pub fn vertex(&self, v: usize) -> f64 {
        self.vertex[v]
    }
}

/// Computes every tie-strength by merging the two sorted neighbour lists of
/// each edge, `O(Σ (d(i) + d(j)))` overall.
pub fn compute_tie_strengths(graph: &Graph) -> TieStrengthTable {
    let edge: Vec<f64> = graph
        .edges()
        .iter()
        .map(|e| {
            let (a, wa) = (graph.neighbors(e.u), graph.neighbor_weights(e.u));
            let (b, wb) = (graph.neighbors(e.v), graph.neighbor_weights(e.v));
            let (mut i, mut j) = (0, 0);
            let mut t = e.w;
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        t += wa[i] + wb[j];
                        i += 1;
                        j += 1;
                    }
                }
            }
            t
        })
        .collect();

    let slot: Vec<f64> = (0..graph.slot_count())
        .map(|s| edge[graph.slot_edge(s)])
        .collect();
    let vertex: Vec<f64> = (0..graph.n())
        .map(|v| slot[graph.slots(v)].iter().sum())
        .collect();
    let total = vertex.iter().sum();
    let total_edge = edge.iter().sum();
    TieStrengthTable {
        edge,
        slot,
        vertex,
        total,
        total_edge,
    }
}
