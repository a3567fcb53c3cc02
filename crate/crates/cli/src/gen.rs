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

use std::io::Write;

use anyhow::{Context, Result};
use nash_overlap::benchgen::{generate_planted, PlantedParams};
use nash_overlap::{write_edge_list, LabeledCover};

use crate::io::{create, write_cover_file};
use crate::PlantedArgs;

pub fn planted(args: &PlantedArgs) -> Result<()> {
    let mut params = PlantedParams::new(
        args.n,
        args.communities,
        args.mu,
        args.on_fraction,
        args.om,
        args.avg_degree,
        args.seed,
    );
    if let Some(size) = args.comm_size {
        params.comm_size = size;
    }
    let bench = generate_planted(&params)?;

    let mut out = create(&args.out_graph)?;
    write_edge_list(&bench.graph, &mut out, false)?;
    out.flush()
        .with_context(|| format!("writing {}", args.out_graph.display()))?;
    write_cover_file(
        &args.out_truth,
        &LabeledCover::from_cover(&bench.truth, &bench.graph),
    )?;

    let a = bench.audit;
    println!("n={} m={} communities={}", bench.graph.n(), bench.graph.m(), bench.truth.len());
    println!("overlapping_vertices={}", bench.truth.overlapping_vertices());
    println!(
        "mixing vertices={} min={:.4} mean={:.4} max={:.4} over_limit={}",
        a.vertices, a.min, a.mean, a.max, a.over_limit
    );
    Ok(())
}
