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

//! Scoring detected covers and describing edge-closeness distributions.

mod modularity;
mod nmi;
mod stats;

pub use modularity::modularity;
pub use nmi::{nmi_overlapping, NmiReport};
pub use stats::{
    closeness_stats, closeness_stats_from_pairs, ClosenessStats, HistogramBin,
    DEFAULT_BIN_WIDTH,
};
