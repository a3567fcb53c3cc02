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

use anyhow::{bail, Context, Result};
use nash_overlap::compute_tie_strengths;
use nash_overlap::eval::closeness_stats_from_pairs;

use crate::io::{create, read_closeness, read_graph};
use crate::ClosenessArgs;

pub fn closeness(args: &ClosenessArgs) -> Result<()> {
    let (parsed, _) = read_graph(&args.graph, args.graph_flags)?;
    let graph = &parsed.graph;
    let rows = read_closeness(&args.closeness)?;

    // every edge exactly once; tie-strength comes from the graph
    let ties = compute_tie_strengths(graph);
    let mut p = vec![None; graph.m()];
    for row in &rows {
        let (Some(u), Some(v)) = (graph.id_of(row.u), graph.id_of(row.v)) else {
            bail!("closeness row {}-{} names a vertex not in the graph", row.u, row.v);
        };
        let Some(id) = graph.edge_id(u, v) else {
            bail!("closeness row {}-{} is not an edge of the graph", row.u, row.v);
        };
        if p[id].replace(row.p).is_some() {
            bail!("edge {}-{} appears twice", row.u, row.v);
        }
    }
    let pairs = p
        .iter()
        .enumerate()
        .map(|(id, p)| {
            let e = graph.edges()[id];
            p.map(|p| (ties.edge(id), p))
                .with_context(|| format!("edge {}-{} has no closeness row", graph.label(e.u), graph.label(e.v)))
        })
        .collect::<Result<Vec<_>>>()?;
    let stats = closeness_stats_from_pairs(pairs, args.bin_width)?;

    let mut out = create(&args.out_scatter)?;
    writeln!(out, "t,p")?;
    for (t, p) in &stats.scatter {
        writeln!(out, "{t},{p}")?;
    }
    out.flush()?;
    let mut out = create(&args.out_hist)?;
    writeln!(out, "bin_low,bin_high,count")?;
    for b in &stats.histogram {
        writeln!(out, "{},{},{}", tidy(b.low), tidy(b.high), b.count)?;
    }
    out.flush()?;

    match stats.pearson_r {
        Some(r) => println!("pearson_r={r}"),
        None => println!("pearson_r=undefined"),
    }
    Ok(())
}

/// Drops float noise from bin edges such as `3 · 0.05`.
fn tidy(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}
