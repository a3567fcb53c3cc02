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

//! Phase 2: refine the intermediate partition into an overlapping cover.
//!
//! A vertex's closeness to a community is the summed edge-closeness to its
//! neighbours inside it, and its utility is the sum over the communities it
//! belongs to. Each step a vertex proposes the adjacent communities within
//! a factor `alpha` of its best one and switches if that raises its
//! utility. `Φ₂`, half the total utility, changes by exactly the mover's
//! utility change, so the dynamics terminate.
//!
//! Closeness sums are tracked as integer agreement counts (`p · k`), which
//! keeps every comparison exact.

use rand::seq::SliceRandom;
use smallvec::SmallVec;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::phase1::{EdgeCloseness, IntermediatePartition};
use crate::seed::{rng_from, stream_seed, PHASE2_STREAM};

#[derive(Debug, Clone, PartialEq)]
pub struct Phase2Config {
    /// Overlap parameter in `(0, 1]`; 1 yields a disjoint cover.
    pub alpha: f64,
    pub master_seed: u64,
    pub max_rounds: usize,
}

impl Default for Phase2Config {
    fn default() -> Self {
        Phase2Config {
            alpha: 0.5,
            master_seed: 0,
            max_rounds: 1000,
        }
    }
}

impl Phase2Config {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must be in (0, 1], got {}",
                self.alpha
            )));
        }
        if self.max_rounds == 0 {
            return Err(Error::InvalidConfig("max_rounds must be positive".into()));
        }
        Ok(())
    }
}

/// `p(v, C)`: summed closeness from `v` to its neighbours in `community`
/// (sorted ascending).
pub fn community_closeness(
    v: usize,
    community: &[usize],
    closeness: &EdgeCloseness,
    graph: &Graph,
) -> f64 {
    graph
        .neighbors(v)
        .iter()
        .zip(graph.neighbor_edges(v))
        .filter(|(j, _)| community.binary_search(j).is_ok())
        .map(|(_, &e)| closeness.p(e))
        .sum()
}

/// `Φ₂ = ½ Σ_i Σ_{C ∋ i} p(i, C)`, recomputed from scratch.
pub fn potential_phi2(cover: &Cover, closeness: &EdgeCloseness, graph: &Graph) -> f64 {
    let total: f64 = (0..cover.n())
        .flat_map(|v| {
            cover
                .memberships(v)
                .iter()
                .map(move |&c| community_closeness(v, cover.community(c), closeness, graph))
        })
        .sum();
    0.5 * total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    /// Proposed community ids, ascending.
    pub candidate: Vec<usize>,
    pub accepted: bool,
}

type Memberships = SmallVec<[u32; 2]>;

/// Mutable cover state for the phase-2 dynamics. Community ids are stable;
/// a community whose last member leaves is dead for good, since nobody can
/// be adjacent to it any more.
#[derive(Debug, Clone)]
pub struct Phase2State<'a> {
    graph: &'a Graph,
    closeness: &'a EdgeCloseness,
    memberships: Vec<Memberships>,
    sizes: Vec<usize>,
    live: usize,
    acc: Vec<u64>,
    seen: Vec<bool>,
    touched: Vec<u32>,
}

impl<'a> Phase2State<'a> {
    /// Starts from `cover`; community `i` of the cover gets id `i`.
    pub fn new(graph: &'a Graph, closeness: &'a EdgeCloseness, cover: &Cover) -> Self {
        assert_eq!(cover.n(), graph.n());
        assert_eq!(closeness.len(), graph.m());
        let memberships: Vec<Memberships> = (0..graph.n())
            .map(|v| cover.memberships(v).iter().map(|&c| c as u32).collect())
            .collect();
        let sizes: Vec<usize> = cover.communities().iter().map(Vec::len).collect();
        Phase2State {
            graph,
            closeness,
            memberships,
            live: sizes.iter().filter(|&&s| s > 0).count(),
            acc: vec![0; sizes.len()],
            seen: vec![false; sizes.len()],
            sizes,
            touched: Vec::new(),
        }
    }

    pub fn from_partition(
        graph: &'a Graph,
        closeness: &'a EdgeCloseness,
        partition: &IntermediatePartition,
    ) -> Self {
        Self::new(graph, closeness, &partition.to_cover())
    }

    pub fn memberships(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.memberships[v].iter().map(|&c| c as usize)
    }

    /// Communities with at least one member.
    pub fn live_communities(&self) -> usize {
        self.live
    }

    /// Accumulates `k · p(v, C)` for every community adjacent to `v`.
    fn gather(&mut self, v: usize) {
        for &c in &self.touched {
            self.acc[c as usize] = 0;
            self.seen[c as usize] = false;
        }
        self.touched.clear();
        let g = self.graph;
        for (&j, &e) in g.neighbors(v).iter().zip(g.neighbor_edges(v)) {
            let a = self.closeness.agree(e) as u64;
            for &c in &self.memberships[j] {
                if !self.seen[c as usize] {
                    self.seen[c as usize] = true;
                    self.touched.push(c);
                }
                self.acc[c as usize] += a;
            }
        }
    }

    /// Utility of `v` scaled by `k`.
    fn utility_counts(&mut self, v: usize) -> u64 {
        self.gather(v);
        self.memberships[v].iter().map(|&c| self.acc[c as usize]).sum()
    }

    /// `u_v = Σ_{C ∋ v} p(v, C)`.
    pub fn utility(&mut self, v: usize) -> f64 {
        self.utility_counts(v) as f64 / self.closeness.k() as f64
    }

    /// `Φ₂` from the current state.
    pub fn potential(&mut self) -> f64 {
        let total: u64 = (0..self.graph.n()).map(|v| self.utility_counts(v)).sum();
        0.5 * total as f64 / self.closeness.k() as f64
    }

    /// Adjacent communities with `p(v, C) ≥ alpha · max_C p(v, C)`; empty
    /// when `v` has no closeness to any community. With `alpha = 1` only one
    /// community is kept when several attain the maximum: a current one if
    /// possible, else the smallest id.
    pub fn candidate(&mut self, v: usize, alpha: f64) -> Vec<usize> {
        self.gather(v);
        self.threshold_set(v, alpha)
    }

    fn threshold_set(&self, v: usize, alpha: f64) -> Vec<usize> {
        let max = self
            .touched
            .iter()
            .map(|&c| self.acc[c as usize])
            .max()
            .unwrap_or(0);
        if max == 0 {
            return Vec::new();
        }
        if alpha >= 1.0 {
            let current = self.memberships[v]
                .iter()
                .find(|&&c| self.acc[c as usize] == max);
            let best = match current {
                Some(&c) => c,
                None => *self
                    .touched
                    .iter()
                    .filter(|&&c| self.acc[c as usize] == max)
                    .min()
                    .expect("max is attained"),
            };
            return vec![best as usize];
        }
        let cut = alpha * max as f64;
        let mut set: Vec<usize> = self
            .touched
            .iter()
            .filter(|&&c| self.acc[c as usize] as f64 >= cut)
            .map(|&c| c as usize)
            .collect();
        set.sort_unstable();
        set
    }

    /// One phase-2 decision for `v`: adopt the candidate set if it strictly
    /// raises `v`'s utility.
    pub fn step(&mut self, v: usize, alpha: f64) -> StepOutcome {
        self.gather(v);
        let candidate = self.threshold_set(v, alpha);
        if candidate.is_empty() {
            return StepOutcome {
                candidate,
                accepted: false,
            };
        }
        let proposed: u64 = candidate.iter().map(|&c| self.acc[c]).sum();
        let current: u64 = self.memberships[v].iter().map(|&c| self.acc[c as usize]).sum();
        let accepted = proposed > current;
        if accepted {
            self.set_memberships(v, &candidate);
        }
        StepOutcome {
            candidate,
            accepted,
        }
    }

    /// Replaces the memberships of `v` with `new` (community ids).
    pub fn set_memberships(&mut self, v: usize, new: &[usize]) {
        for &c in &self.memberships[v] {
            self.sizes[c as usize] -= 1;
            if self.sizes[c as usize] == 0 {
                self.live -= 1;
            }
        }
        let mut next: Memberships = new.iter().map(|&c| c as u32).collect();
        next.sort_unstable();
        next.dedup();
        for &c in &next {
            if self.sizes[c as usize] == 0 {
                self.live += 1;
            }
            self.sizes[c as usize] += 1;
        }
        self.memberships[v] = next;
    }

    /// Canonical cover: empty communities dropped, identical ones merged,
    /// ordered by smallest member.
    pub fn to_cover(&self) -> Cover {
        let memberships: Vec<Vec<usize>> = self
            .memberships
            .iter()
            .map(|m| m.iter().map(|&c| c as usize).collect())
            .collect();
        Cover::from_memberships(&memberships)
            .expect("memberships reference valid community ids")
            .canonical()
    }
}

#[derive(Debug, Clone)]
pub struct Phase2Result {
    pub cover: Cover,
    pub passes: usize,
    pub accepted_moves: u64,
    pub converged: bool,
}

/// Runs the phase-2 dynamics from the intermediate partition. A single
/// random vertex permutation is drawn from `master_seed` and reused for
/// every pass.
pub fn run_phase2(
    graph: &Graph,
    closeness: &EdgeCloseness,
    partition: &IntermediatePartition,
    config: &Phase2Config,
) -> Result<Phase2Result> {
    config.validate()?;
    let mut state = Phase2State::from_partition(graph, closeness, partition);
    let mut order: Vec<usize> = (0..graph.n()).collect();
    order.shuffle(&mut rng_from(stream_seed(config.master_seed, PHASE2_STREAM)));

    let mut passes = 0;
    let mut accepted_moves = 0;
    let mut converged = false;
    while passes < config.max_rounds {
        passes += 1;
        let mut changes = 0u64;
        for &v in &order {
            if state.step(v, config.alpha).accepted {
                changes += 1;
            }
        }
        accepted_moves += changes;
        if changes == 0 {
            converged = true;
            break;
        }
    }
    Ok(Phase2Result {
        cover: state.to_cover(),
        passes,
        accepted_moves,
        converged,
    })
}
