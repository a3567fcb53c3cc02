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

#![allow(dead_code)]

use nash_overlap::seed::rng_from;
use nash_overlap::{Cover, Graph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rng_from(seed)
}

/// G(n, p) with weights drawn from `[0.5, 3)` when `weighted`, else 1.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, weighted: bool) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                let w = if weighted { rng.random_range(0.5..3.0) } else { 1.0 };
                edges.push((u, v, w));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap().0
}

pub fn clique_edges(members: std::ops::Range<usize>) -> Vec<(usize, usize, f64)> {
    let mut edges = Vec::new();
    for u in members.clone() {
        for v in u + 1..members.end {
            edges.push((u, v, 1.0));
        }
    }
    edges
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edges(n, clique_edges(0..n)).unwrap().0
}

/// Two `size`-cliques on `0..size` and `size..2·size` joined by the edge
/// `(size - 1, size)`.
pub fn two_cliques(size: usize) -> Graph {
    let mut edges = clique_edges(0..size);
    edges.extend(clique_edges(size..2 * size));
    edges.push((size - 1, size, 1.0));
    Graph::from_edges(2 * size, edges).unwrap().0
}

pub fn two_clique_truth(size: usize) -> Cover {
    Cover::new(2 * size, vec![(0..size).collect(), (size..2 * size).collect()]).unwrap()
}

/// Random cover of `0..n` with up to `max_comm` communities and one to
/// three memberships per vertex.
pub fn random_cover(rng: &mut ChaCha8Rng, n: usize, max_comm: usize) -> Cover {
    let communities = rng.random_range(1..=max_comm);
    let memberships: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let count = rng.random_range(1..=3.min(communities));
            (0..count).map(|_| rng.random_range(0..communities)).collect()
        })
        .collect();
    Cover::from_memberships(&memberships).unwrap().compact()
}
