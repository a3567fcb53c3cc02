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

//! Overlapping community detection with graph coordination games.
//!
//! Detection runs in two phases:
//!
//! 1. `k` independent `r`-strategy coordination games are played to a pure
//!    Nash equilibrium with sequential best responses. Each player's payoff
//!    for agreeing with a neighbour is the tie-strength of the edge. The
//!    fraction of games in which an edge's endpoints agree is its
//!    *edge-closeness*; the connected components over edges with closeness
//!    above `beta` form the intermediate partition.
//! 2. Starting from that partition, every vertex repeatedly joins the
//!    adjacent communities whose summed closeness is at least `alpha` times
//!    the best one, until the cover is stable.
//!
//! The crate also ships the evaluation side: overlapping NMI, weighted
//! modularity, closeness statistics, and a planted-partition generator.

pub mod benchgen;
pub mod cover;
mod error;
pub mod eval;
pub mod graph;
pub mod phase1;
pub mod phase2;
pub mod seed;
pub mod ties;
mod union_find;

pub use cover::{parse_cover_file, write_cover, Cover, CoverFormat, LabeledCover};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, write_edge_list, Edge, Graph, ParseOptions, ParsedGraph};
pub use phase1::{
    intermediate_partition, potential_phi1, run_game, run_phase1, EdgeCloseness, GameOutcome,
    IntermediatePartition, Phase1Config, Phase1Result, StrategyProfile,
};
pub use phase2::{community_closeness, potential_phi2, run_phase2, Phase2Config, Phase2Result};
pub use ties::{compute_tie_strengths, TieStrengthTable};
pub use union_find::UnionFind;

/// Phase 1 followed by phase 2 with the given configurations.
pub fn detect(
    graph: &Graph,
    phase1: &Phase1Config,
    phase2: &Phase2Config,
) -> Result<(Phase1Result, Phase2Result)> {
    let ties = compute_tie_strengths(graph);
    let p1 = run_phase1(graph, &ties, phase1)?;
    let partition = intermediate_partition(graph, &p1.closeness, phase1.beta);
    let p2 = run_phase2(graph, &p1.closeness, &partition, phase2)?;
    Ok((p1, p2))
}
