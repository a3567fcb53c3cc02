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

//! Phase 1: `k` independent `r`-strategy coordination games, aggregated into
//! per-edge closeness values and an intermediate partition.
//!
//! In one game every vertex holds a strategy in `0..r` and earns
//! `u_i = (Σ_{j ~ i, s_j = s_i} t(i, j)) / t_i`. The numerator is cached per
//! vertex as the *agreement weight*. The game has the weighted potential
//! `Φ₁ = Σ_{(i,j) uncut} t(i, j)`: a unilateral change of vertex `i` moves
//! `Φ₁` by exactly `t_i · Δu_i`, the change in `i`'s agreement weight.
//! Sequential best responses therefore climb `Φ₁` and stop at a pure Nash
//! equilibrium.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::{game_seed, rng_from};
use crate::ties::TieStrengthTable;
use crate::union_find::UnionFind;

/// Relative slack below which a gain in agreement weight counts as zero.
/// Unit-weight graphs have integral tie-strengths and never get near it;
/// with real weights it keeps rounding noise from passing as an improvement.
const GAIN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Phase1Config {
    /// Number of strategies per player, at least 2.
    pub r: usize,
    /// Number of independent games.
    pub k: usize,
    /// Closeness threshold for the intermediate partition, in `(0, 1]`.
    pub beta: f64,
    /// Good-enough improvement parameter; 0 means exact best response.
    pub epsilon: f64,
    pub master_seed: u64,
    /// Cap on full passes over the vertex ordering, per game.
    pub max_rounds: usize,
}

impl Default for Phase1Config {
    fn default() -> Self {
        Phase1Config {
            r: 40,
            k: 100,
            beta: 0.95,
            epsilon: 0.0,
            master_seed: 0,
            max_rounds: 1000,
        }
    }
}

impl Phase1Config {
    pub fn validate(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::InvalidConfig(format!("r must be at least 2, got {}", self.r)));
        }
        if self.r > u32::MAX as usize {
            return Err(Error::InvalidConfig(format!("r = {} is too large", self.r)));
        }
        if self.k == 0 || self.k > u32::MAX as usize {
            return Err(Error::InvalidConfig(format!("k must be in 1..=2^32-1, got {}", self.k)));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::InvalidConfig(format!("beta must be in (0, 1], got {}", self.beta)));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be finite and non-negative, got {}",
                self.epsilon
            )));
        }
        if self.max_rounds == 0 {
            return Err(Error::InvalidConfig("max_rounds must be positive".into()));
        }
        Ok(())
    }
}

/// Result of one best-response evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestResponse {
    pub strategy: usize,
    /// Change in the vertex's agreement weight, which equals `ΔΦ₁`.
    pub gain: f64,
    pub accepted: bool,
}

/// One game's strategy assignment with cached agreement weights and an
/// incrementally maintained `Φ₁`.
#[derive(Debug, Clone)]
pub struct StrategyProfile {
    r: usize,
    strategy: Vec<u32>,
    agreement: Vec<f64>,
    phi: f64,
    // Per-strategy agreement weights of the vertex under evaluation; only
    // the `touched` entries are non-zero between calls.
    scratch: Vec<f64>,
    touched: Vec<u32>,
}

impl StrategyProfile {
    /// Profile with the given strategies; every entry must be `< r`.
    pub fn from_strategies(
        graph: &Graph,
        ties: &TieStrengthTable,
        r: usize,
        strategy: Vec<u32>,
    ) -> StrategyProfile {
        assert_eq!(strategy.len(), graph.n());
        assert!(strategy.iter().all(|&s| (s as usize) < r));
        let mut profile = StrategyProfile {
            r,
            strategy,
            agreement: vec![0.0; graph.n()],
            phi: 0.0,
            scratch: vec![0.0; r],
            touched: Vec::new(),
        };
        for v in 0..graph.n() {
            profile.agreement[v] = profile.agreement_from_scratch(graph, ties, v);
        }
        profile.phi = potential_phi1(&profile, graph, ties);
        profile
    }

    fn random(graph: &Graph, ties: &TieStrengthTable, r: usize, rng: &mut ChaCha8Rng) -> Self {
        let strategy = (0..graph.n())
            .map(|_| rng.random_range(0..r as u32))
            .collect();
        Self::from_strategies(graph, ties, r, strategy)
    }

    /// The same profile with vertex `order[i]` stored at index `i`.
    fn permuted(&self, order: &[usize]) -> StrategyProfile {
        StrategyProfile {
            r: self.r,
            strategy: order.iter().map(|&v| self.strategy[v]).collect(),
            agreement: order.iter().map(|&v| self.agreement[v]).collect(),
            phi: self.phi,
            scratch: vec![0.0; self.r],
            touched: Vec::new(),
        }
    }

    /// Inverse of [`StrategyProfile::permuted`].
    fn unpermuted(&self, order: &[usize]) -> StrategyProfile {
        let mut strategy = vec![0; order.len()];
        let mut agreement = vec![0.0; order.len()];
        for (pos, &v) in order.iter().enumerate() {
            strategy[v] = self.strategy[pos];
            agreement[v] = self.agreement[pos];
        }
        StrategyProfile {
            r: self.r,
            strategy,
            agreement,
            phi: self.phi,
            scratch: vec![0.0; self.r],
            touched: Vec::new(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn strategy(&self, v: usize) -> usize {
        self.strategy[v] as usize
    }

    pub fn strategies(&self) -> &[u32] {
        &self.strategy
    }

    /// Cached `Σ_{j ~ v, s_j = s_v} t(v, j)`.
    pub fn agreement(&self, v: usize) -> f64 {
        self.agreement[v]
    }

    /// `u_v` in `[0, 1]`; 0 for a vertex without edges.
    pub fn utility(&self, ties: &TieStrengthTable, v: usize) -> f64 {
        let tv = ties.vertex(v);
        if tv > 0.0 {
            self.agreement[v] / tv
        } else {
            0.0
        }
    }

    /// Incrementally maintained `Φ₁`.
    pub fn potential(&self) -> f64 {
        self.phi
    }

    pub fn agreement_from_scratch(&self, graph: &Graph, ties: &TieStrengthTable, v: usize) -> f64 {
        let s = self.strategy[v];
        graph
            .slots(v)
            .filter(|&slot| self.strategy[graph.slot_target(slot)] == s)
            .map(|slot| ties.slot[slot])
            .sum()
    }

    /// True when every vertex holds the same strategy.
    pub fn is_monochromatic(&self) -> bool {
        self.strategy.windows(2).all(|w| w[0] == w[1])
    }

    /// Moves `v` to strategy `s`, updating the caches of `v` and its
    /// neighbours in `O(d(v))`. Returns the change in `Φ₁`.
    pub fn set_strategy(&mut self, graph: &Graph, ties: &TieStrengthTable, v: usize, s: usize) -> f64 {
        self.move_to(v, s, neighbours(graph, ties, v))
    }

    fn move_to<I: Iterator<Item = (usize, f64)>>(&mut self, v: usize, s: usize, nbrs: I) -> f64 {
        let old = self.strategy[v];
        let new = s as u32;
        assert!(s < self.r);
        if old == new {
            return 0.0;
        }
        let mut agree_new = 0.0;
        for (j, t) in nbrs {
            let sj = self.strategy[j];
            if sj == old {
                self.agreement[j] -= t;
            } else if sj == new {
                self.agreement[j] += t;
                agree_new += t;
            }
        }
        let gain = agree_new - self.agreement[v];
        self.agreement[v] = agree_new;
        self.strategy[v] = new;
        self.phi += gain;
        gain
    }

    /// Fills the scratch table with `v`'s agreement weight for each
    /// strategy present among its neighbours and returns the best strategy:
    /// the current one if it attains the maximum, else the smallest index
    /// that does.
    fn best_strategy<I: Iterator<Item = (usize, f64)>>(&mut self, v: usize, nbrs: I) -> (usize, f64) {
        for &s in &self.touched {
            self.scratch[s as usize] = 0.0;
        }
        self.touched.clear();
        for (j, t) in nbrs {
            let s = self.strategy[j];
            if self.scratch[s as usize] == 0.0 {
                self.touched.push(s);
            }
            self.scratch[s as usize] += t;
        }
        let current = self.strategy[v] as usize;
        let mut best = current;
        let mut best_weight = self.scratch[current];
        for &s in &self.touched {
            let w = self.scratch[s as usize];
            let s = s as usize;
            if w > best_weight || (w == best_weight && best != current && s < best) {
                best = s;
                best_weight = w;
            }
        }
        if best != current && best_weight == self.scratch[current] {
            best = current;
        }
        (best, best_weight)
    }

    /// Best response of `v` under the good-enough rule with parameter
    /// `epsilon`. The move is applied when accepted: with `epsilon = 0` any
    /// strictly positive gain is accepted, otherwise the gain must exceed
    /// `(2 ε / n) · Φ₁`.
    pub fn best_response(
        &mut self,
        graph: &Graph,
        ties: &TieStrengthTable,
        v: usize,
        epsilon: f64,
    ) -> BestResponse {
        let tv = ties.vertex(v);
        self.respond(v, tv, graph.n(), epsilon, || neighbours(graph, ties, v))
    }

    fn respond<I, F>(&mut self, v: usize, tv: f64, n: usize, epsilon: f64, nbrs: F) -> BestResponse
    where
        I: Iterator<Item = (usize, f64)>,
        F: Fn() -> I,
    {
        let (best, best_weight) = self.best_strategy(v, nbrs());
        let gain = best_weight - self.agreement[v];
        let floor = GAIN_TOLERANCE * tv;
        let threshold = if epsilon > 0.0 {
            (2.0 * epsilon / n as f64 * self.phi).max(floor)
        } else {
            floor
        };
        let accepted = best != self.strategy[v] as usize && gain > threshold;
        if accepted {
            self.move_to(v, best, nbrs());
        }
        BestResponse {
            strategy: best,
            gain,
            accepted,
        }
    }

    /// Exhaustive Nash check: the vertices that have some strategy strictly
    /// better than their current one.
    pub fn improving_vertices(&mut self, graph: &Graph, ties: &TieStrengthTable) -> Vec<usize> {
        (0..graph.n())
            .filter(|&v| {
                let current = self.agreement_from_scratch(graph, ties, v);
                let best = (0..self.r)
                    .map(|s| {
                        graph
                            .slots(v)
                            .filter(|&slot| self.strategy[graph.slot_target(slot)] as usize == s)
                            .map(|slot| ties.slot[slot])
                            .sum::<f64>()
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                best - current > GAIN_TOLERANCE * ties.vertex(v)
            })
            .collect()
    }
}

fn neighbours<'a>(
    graph: &'a Graph,
    ties: &'a TieStrengthTable,
    v: usize,
) -> impl Iterator<Item = (usize, f64)> + 'a {
    graph
        .slots(v)
        .map(move |slot| (graph.slot_target(slot), ties.slot[slot]))
}

/// A game's graph data relabelled by visiting position: vertex `order[i]`
/// becomes `i`. A game reuses one ordering for every pass, so in these
/// coordinates each pass reads the slot arrays and per-vertex state
/// sequentially; only neighbour lookups jump around.
struct VisitLayout {
    start: Vec<usize>,
    target: Vec<u32>,
    tie: Vec<f64>,
    tie_vertex: Vec<f64>,
}

impl VisitLayout {
    fn new(graph: &Graph, ties: &TieStrengthTable, order: &[usize]) -> Self {
        assert!(graph.n() <= u32::MAX as usize);
        let mut position = vec![0u32; graph.n()];
        for (pos, &v) in order.iter().enumerate() {
            position[v] = pos as u32;
        }
        let mut start = Vec::with_capacity(order.len() + 1);
        let mut target = Vec::with_capacity(graph.slot_count());
        let mut tie = Vec::with_capacity(graph.slot_count());
        start.push(0);
        for &v in order {
            target.extend(graph.neighbors(v).iter().map(|&j| position[j]));
            tie.extend_from_slice(&ties.slot[graph.slots(v)]);
            start.push(target.len());
        }
        VisitLayout {
            start,
            target,
            tie,
            tie_vertex: order.iter().map(|&v| ties.vertex(v)).collect(),
        }
    }

    fn neighbours(&self, pos: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.start[pos]..self.start[pos + 1];
        self.target[range.clone()]
            .iter()
            .zip(&self.tie[range])
            .map(|(&j, &t)| (j as usize, t))
    }
}

/// `Φ₁` recomputed from scratch: the tie-strength of every uncut edge.
pub fn potential_phi1(profile: &StrategyProfile, graph: &Graph, ties: &TieStrengthTable) -> f64 {
    graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| profile.strategy[e.u] == profile.strategy[e.v])
        .map(|(id, _)| ties.edge(id))
        .sum()
}

/// Uniform random initial profile for the game seeded by `seed`. This is
/// the profile [`run_game`] starts from.
pub fn init_profile(
    graph: &Graph,
    ties: &TieStrengthTable,
    r: usize,
    seed: u64,
) -> Result<StrategyProfile> {
    if r < 2 {
        return Err(Error::InvalidConfig(format!("r must be at least 2, got {r}")));
    }
    Ok(StrategyProfile::random(graph, ties, r, &mut rng_from(seed)))
}

#[derive(Debug, Clone)]
pub struct GameOutcome {
    pub index: usize,
    pub profile: StrategyProfile,
    /// Full passes executed, including the final pass without changes.
    pub passes: usize,
    pub accepted_moves: u64,
    pub converged: bool,
}

impl GameOutcome {
    pub fn summary(&self) -> GameSummary {
        GameSummary {
            index: self.index,
            passes: self.passes,
            accepted_moves: self.accepted_moves,
            converged: self.converged,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameSummary {
    pub index: usize,
    pub passes: usize,
    pub accepted_moves: u64,
    pub converged: bool,
}

/// Plays game `game_index` to convergence.
///
/// The game's stream first draws the initial profile, then one vertex
/// permutation that is reused for every pass. Passes stop after one with no
/// accepted move, or after `max_rounds` passes (reported as not converged).
pub fn run_game(
    graph: &Graph,
    ties: &TieStrengthTable,
    config: &Phase1Config,
    game_index: usize,
) -> Result<GameOutcome> {
    config.validate()?;
    Ok(play(graph, ties, config, game_index))
}

fn play(graph: &Graph, ties: &TieStrengthTable, config: &Phase1Config, index: usize) -> GameOutcome {
    let mut rng = rng_from(game_seed(config.master_seed, index as u64));
    let profile = StrategyProfile::random(graph, ties, config.r, &mut rng);
    let mut order: Vec<usize> = (0..graph.n()).collect();
    order.shuffle(&mut rng);
    let layout = VisitLayout::new(graph, ties, &order);
    let mut local = profile.permuted(&order);

    let mut passes = 0;
    let mut accepted_moves = 0;
    let mut converged = false;
    while passes < config.max_rounds {
        passes += 1;
        let mut changes = 0u64;
        for pos in 0..graph.n() {
            let tv = layout.tie_vertex[pos];
            if local
                .respond(pos, tv, graph.n(), config.epsilon, || layout.neighbours(pos))
                .accepted
            {
                changes += 1;
            }
        }
        accepted_moves += changes;
        if changes == 0 {
            converged = true;
            break;
        }
    }
    GameOutcome {
        index,
        profile: local.unpermuted(&order),
        passes,
        accepted_moves,
        converged,
    }
}

/// Per-edge agreement counts over `k` games.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCloseness {
    k: usize,
    agree: Vec<u32>,
}

impl EdgeCloseness {
    /// Counts indexed by edge id; each must be at most `k`.
    pub fn from_counts(k: usize, agree: Vec<u32>) -> Result<EdgeCloseness> {
        if k == 0 {
            return Err(Error::InvalidConfig("k must be positive".into()));
        }
        if let Some(&c) = agree.iter().find(|&&c| c as usize > k) {
            return Err(Error::InvalidConfig(format!("agreement count {c} exceeds k = {k}")));
        }
        Ok(EdgeCloseness { k, agree })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of games in which the endpoints of edge `id` agreed.
    pub fn agree(&self, id: usize) -> u32 {
        self.agree[id]
    }

    pub fn counts(&self) -> &[u32] {
        &self.agree
    }

    /// `p(i, j)` of edge `id`.
    pub fn p(&self, id: usize) -> f64 {
        self.agree[id] as f64 / self.k as f64
    }

    pub fn len(&self) -> usize {
        self.agree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agree.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Phase1Result {
    pub closeness: EdgeCloseness,
    /// One entry per game, ordered by game index.
    pub games: Vec<GameSummary>,
}

impl Phase1Result {
    pub fn non_converged(&self) -> usize {
        self.games.iter().filter(|g| !g.converged).count()
    }
}

struct Tally {
    agree: Vec<u32>,
    games: Vec<GameSummary>,
}

/// Runs all `k` games on the current rayon pool and aggregates closeness.
///
/// Game `g` uses seed `game_seed(master_seed, g)` and only integer counts are
/// merged, so the result is identical for any number of threads.
pub fn run_phase1(
    graph: &Graph,
    ties: &TieStrengthTable,
    config: &Phase1Config,
) -> Result<Phase1Result> {
    config.validate()?;
    let m = graph.m();
    let tally = (0..config.k)
        .into_par_iter()
        .fold(
            || Tally {
                agree: vec![0; m],
                games: Vec::new(),
            },
            |mut tally, g| {
                let outcome = play(graph, ties, config, g);
                let s = outcome.profile.strategies();
                for (id, e) in graph.edges().iter().enumerate() {
                    tally.agree[id] += (s[e.u] == s[e.v]) as u32;
                }
                tally.games.push(outcome.summary());
                tally
            },
        )
        .reduce(
            || Tally {
                agree: vec![0; m],
                games: Vec::new(),
            },
            |mut a, b| {
                for (x, y) in a.agree.iter_mut().zip(&b.agree) {
                    *x += y;
                }
                a.games.extend(b.games);
                a
            },
        );
    let mut games = tally.games;
    games.sort_by_key(|g| g.index);
    Ok(Phase1Result {
        closeness: EdgeCloseness::from_counts(config.k, tally.agree)?,
        games,
    })
}

/// Connected components over the edges with `p(i, j) > beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntermediatePartition {
    /// Component index of each vertex.
    pub component: Vec<usize>,
    /// Components ordered by smallest vertex, members ascending.
    pub components: Vec<Vec<usize>>,
}

impl IntermediatePartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn to_cover(&self) -> Cover {
        Cover::new(self.component.len(), self.components.clone())
            .expect("components are non-empty and in range")
    }
}

pub fn intermediate_partition(
    graph: &Graph,
    closeness: &EdgeCloseness,
    beta: f64,
) -> IntermediatePartition {
    assert_eq!(closeness.len(), graph.m(), "closeness must cover every edge");
    let mut uf = UnionFind::new(graph.n());
    for (id, e) in graph.edges().iter().enumerate() {
        if closeness.p(id) > beta {
            uf.union(e.u, e.v);
        }
    }
    let components = uf.into_sets();
    let mut component = vec![0; graph.n()];
    for (ci, c) in components.iter().enumerate() {
        for &v in c {
            component[v] = ci;
        }
    }
    IntermediatePartition {
        component,
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ties::compute_tie_strengths;

    fn setup(n: usize, edges: &[(usize, usize, f64)]) -> (Graph, TieStrengthTable) {
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap().0;
        let t = compute_tie_strengths(&g);
        (g, t)
    }

    fn clique(n: usize) -> Vec<(usize, usize, f64)> {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v, 1.0));
            }
        }
        e
    }

    #[test]
    fn config_validation() {
        assert!(Phase1Config::default().validate().is_ok());
        for bad in [
            Phase1Config { r: 1, ..Default::default() },
            Phase1Config { k: 0, ..Default::default() },
            Phase1Config { beta: 0.0, ..Default::default() },
            Phase1Config { beta: 1.5, ..Default::default() },
            Phase1Config { epsilon: -0.1, ..Default::default() },
            Phase1Config { max_rounds: 0, ..Default::default() },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))), "{bad:?}");
        }
        let (g, t) = setup(3, &clique(3));
        assert!(init_profile(&g, &t, 1, 0).is_err());
    }

    #[test]
    fn init_is_deterministic_and_matches_game_start() {
        let (g, t) = setup(30, &clique(30));
        let a = init_profile(&g, &t, 5, 99).unwrap();
        let b = init_profile(&g, &t, 5, 99).unwrap();
        assert_eq!(a.strategies(), b.strategies());
        let c = init_profile(&g, &t, 5, 100).unwrap();
        assert_ne!(a.strategies(), c.strategies());
    }

    #[test]
    fn init_is_uniform() {
        let n = 100_000;
        let g = Graph::from_edges(n, []).unwrap().0;
        let t = compute_tie_strengths(&g);
        for seed in [0, 1, 0xdead_beef] {
            let p = init_profile(&g, &t, 2, seed).unwrap();
            let ones = p.strategies().iter().filter(|&&s| s == 1).count() as f64;
            let sigma = (n as f64 * 0.25).sqrt();
            assert!((ones - n as f64 / 2.0).abs() < 5.0 * sigma, "{ones}");
        }
    }

    #[test]
    fn best_response_moves_to_heavier_neighbour() {
        // star: no common neighbours, so t equals w
        let (g, t) = setup(3, &[(0, 1, 3.0), (0, 2, 1.0)]);
        let mut p = StrategyProfile::from_strategies(&g, &t, 2, vec![1, 0, 1]);
        assert_eq!(p.agreement(0), 1.0);
        let br = p.best_response(&g, &t, 0, 0.0);
        assert_eq!(br, BestResponse { strategy: 0, gain: 2.0, accepted: true });
        assert_eq!(p.strategy(0), 0);
        assert_eq!(p.agreement(0), 3.0);
        assert_eq!(p.agreement(1), 3.0);
        assert_eq!(p.agreement(2), 0.0);
    }

    #[test]
    fn best_response_keeps_current_when_maximal() {
        let (g, t) = setup(4, &clique(4));
        let mut p = StrategyProfile::from_strategies(&g, &t, 3, vec![2, 2, 2, 2]);
        let br = p.best_response(&g, &t, 0, 0.0);
        assert_eq!(br.strategy, 2);
        assert!(!br.accepted);

        // tie between current (1) and 0
        let (g, t) = setup(3, &[(0, 1, 1.0), (0, 2, 1.0)]);
        let mut p = StrategyProfile::from_strategies(&g, &t, 3, vec![1, 0, 1]);
        let br = p.best_response(&g, &t, 0, 0.0);
        assert_eq!((br.strategy, br.accepted), (1, false));
    }

    #[test]
    fn best_response_tie_prefers_smallest_index() {
        // v=0 holds 0, neighbours hold 3 and 2 with equal tie-strength.
        let (g, t) = setup(3, &[(0, 1, 1.0), (0, 2, 1.0)]);
        let mut p = StrategyProfile::from_strategies(&g, &t, 4, vec![0, 3, 2]);
        let br = p.best_response(&g, &t, 0, 0.0);
        assert_eq!((br.strategy, br.accepted), (2, true));
    }

    #[test]
    fn good_enough_rule_rejects_small_gains() {
        // Φ₁ = 10 from the heavy edge; moving 2 gains 1 < (2·ε/n)·Φ₁ = 2·1/4·10
        let (g, t) = setup(4, &[(0, 1, 10.0), (2, 3, 1.0)]);
        let mut p = StrategyProfile::from_strategies(&g, &t, 2, vec![0, 0, 0, 1]);
        assert_eq!(p.potential(), 10.0);
        assert!(!p.best_response(&g, &t, 2, 1.0).accepted);
        assert!(p.best_response(&g, &t, 2, 0.1).accepted);
    }

    #[test]
    fn potential_examples() {
        let (g, t) = setup(3, &clique(3));
        let p = StrategyProfile::from_strategies(&g, &t, 2, vec![0, 0, 0]);
        assert_eq!(potential_phi1(&p, &g, &t), t.total_edge);
        let p = StrategyProfile::from_strategies(&g, &t, 3, vec![0, 1, 2]);
        assert_eq!(potential_phi1(&p, &g, &t), 0.0);
        let p = StrategyProfile::from_strategies(&g, &t, 2, vec![0, 0, 1]);
        assert_eq!(potential_phi1(&p, &g, &t), 3.0);
        assert_eq!(p.potential(), 3.0);
    }

    #[test]
    fn complete_graph_goes_monochromatic() {
        let (g, t) = setup(20, &clique(20));
        let config = Phase1Config { r: 5, ..Default::default() };
        for i in 0..20 {
            let out = run_game(&g, &t, &config, i).unwrap();
            assert!(out.converged);
            assert!(out.profile.is_monochromatic());
        }
    }

    #[test]
    fn edgeless_graph_is_left_alone() {
        let g = Graph::from_edges(10, []).unwrap().0;
        let t = compute_tie_strengths(&g);
        let config = Phase1Config { r: 3, master_seed: 5, ..Default::default() };
        let out = run_game(&g, &t, &config, 7).unwrap();
        let init = init_profile(&g, &t, 3, game_seed(5, 7)).unwrap();
        assert_eq!(out.profile.strategies(), init.strategies());
        assert_eq!(out.passes, 1);
        assert!(out.converged);
    }

    #[test]
    fn max_rounds_is_reported() {
        let (g, t) = setup(20, &clique(20));
        let config = Phase1Config { r: 40, max_rounds: 1, ..Default::default() };
        let out = run_game(&g, &t, &config, 0).unwrap();
        assert!(!out.converged);
        assert_eq!(out.passes, 1);
    }

    #[test]
    fn clique_closeness_is_one() {
        let (g, t) = setup(8, &clique(8));
        let config = Phase1Config { r: 4, k: 10, ..Default::default() };
        let res = run_phase1(&g, &t, &config).unwrap();
        assert!((0..g.m()).all(|e| res.closeness.p(e) == 1.0));
        assert_eq!(res.games.len(), 10);
        assert_eq!(res.non_converged(), 0);
    }

    #[test]
    fn closeness_ratio() {
        let c = EdgeCloseness::from_counts(4, vec![3, 0, 4]).unwrap();
        assert_eq!(c.p(0), 0.75);
        assert_eq!(c.p(1), 0.0);
        assert!(EdgeCloseness::from_counts(4, vec![5]).is_err());
    }

    #[test]
    fn partition_examples() {
        // path a-b-c-d with p = (0.99, 0.3, 0.99)
        let g = Graph::from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap().0;
        let c = EdgeCloseness::from_counts(100, vec![99, 30, 99]).unwrap();
        let part = intermediate_partition(&g, &c, 0.95);
        assert_eq!(part.components, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(part.component, vec![0, 0, 1, 1]);

        let c = EdgeCloseness::from_counts(100, vec![100; 3]).unwrap();
        assert_eq!(intermediate_partition(&g, &c, 0.95).len(), 1);

        // strict threshold: exactly beta does not join
        let c = EdgeCloseness::from_counts(100, vec![95, 10, 0]).unwrap();
        assert_eq!(intermediate_partition(&g, &c, 0.95).len(), 4);
    }
}
