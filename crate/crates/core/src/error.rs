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

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: edge weight must be positive, got {weight}")]
    NonPositiveWeight { line: usize, weight: f64 },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown vertex label {0}")]
    UnknownVertex(u64),

    #[error("empty community")]
    EmptyCommunity,

    #[error("universe is empty")]
    EmptyUniverse,

    #[error("vertex {vertex} is outside the universe of {universe} vertices")]
    OutsideUniverse { vertex: usize, universe: usize },

    #[error("covers are over different universes ({left} vs {right} vertices)")]
    UniverseMismatch { left: usize, right: usize },

    #[error("modularity needs a disjoint cover; vertex {0} has {1} memberships")]
    NotDisjoint(usize, usize),

    #[error("infeasible benchmark parameters: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
