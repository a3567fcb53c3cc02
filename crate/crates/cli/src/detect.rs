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

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use nash_overlap::{
    compute_tie_strengths, intermediate_partition, run_phase1, run_phase2, write_cover,
    LabeledCover, Phase1Config, Phase2Config,
};

use crate::io::{read_graph, sha256_hex, write_closeness};
use crate::manifest::{Manifest, RUNTIME_PREFIX};
use crate::DetectArgs;

/// `lo:hi:step` for `--alpha-sweep`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

pub fn parse_sweep(s: &str) -> Result<Sweep, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err("expected lo:hi:step".into());
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    let sweep = Sweep {
        lo: num(lo)?,
        hi: num(hi)?,
        step: num(step)?,
    };
    if !(sweep.step > 0.0) || !(sweep.lo > 0.0) || !(sweep.lo <= sweep.hi) || sweep.hi > 1.0 {
        return Err("need 0 < lo <= hi <= 1 and step > 0".into());
    }
    Ok(sweep)
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=count)
            .map(|i| {
                let a = self.lo + i as f64 * self.step;
                (a * 1e9).round() / 1e9
            })
            .collect()
    }

    /// Decimals needed to print every value of the sweep distinctly.
    pub fn decimals(&self) -> usize {
        (2..=9)
            .find(|&d| {
                let scale = 10f64.powi(d as i32);
                [self.lo, self.step]
                    .iter()
                    .all(|x| ((x * scale).round() - x * scale).abs() < 1e-6)
            })
            .unwrap_or(9)
    }
}

fn sweep_path(out: &Path, alpha: f64, decimals: usize) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(format!(".alpha{alpha:.decimals$}"));
    PathBuf::from(name)
}

/// Writes `bytes` to `path` and returns their digest.
fn emit(path: &Path, bytes: &[u8]) -> Result<String> {
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(sha256_hex(bytes))
}

pub fn run(args: &DetectArgs) -> Result<()> {
    let phase1 = Phase1Config {
        r: args.r,
        k: args.k,
        beta: args.beta,
        epsilon: args.epsilon,
        master_seed: args.seed,
        max_rounds: args.max_rounds,
    };
    let phase2 = Phase2Config {
        alpha: args.alpha,
        master_seed: args.seed,
        max_rounds: args.max_rounds,
    };
    phase1.validate()?;
    phase2.validate()?;
    let threads = match args.threads {
        Some(0) => bail!("--threads must be positive"),
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("building worker pool")?;

    let mut m = Manifest::default();
    m.set("input.graph", args.graph.display());
    let clock = Instant::now();
    let (parsed, digest) = read_graph(&args.graph, args.graph_flags)?;
    let t_parse = clock.elapsed();
    let graph = &parsed.graph;
    if parsed.self_loops_dropped > 0 {
        eprintln!("warning: dropped {} self-loops", parsed.self_loops_dropped);
    }
    m.set("input.sha256", digest);
    m.set("input.weighted", args.graph_flags.weighted);
    m.set("input.one_indexed", args.graph_flags.one_indexed);
    m.set("graph.n", graph.n());
    m.set("graph.m", graph.m());
    m.set("graph.self_loops_dropped", parsed.self_loops_dropped);
    m.set("graph.duplicates_merged", parsed.duplicates_merged);
    m.set("config.r", phase1.r);
    m.set("config.k", phase1.k);
    m.set("config.alpha", phase2.alpha);
    m.set("config.beta", phase1.beta);
    m.set("config.epsilon", phase1.epsilon);
    m.set("config.seed", args.seed);
    m.set("config.max_rounds", args.max_rounds);

    let clock = Instant::now();
    let ties = compute_tie_strengths(graph);
    let t_ties = clock.elapsed();

    let clock = Instant::now();
    let p1 = pool.install(|| run_phase1(graph, &ties, &phase1))?;
    let t_phase1 = clock.elapsed();
    if !args.quiet {
        for g in &p1.games {
            eprintln!(
                "game {}: passes={} moves={}{}",
                g.index,
                g.passes,
                g.accepted_moves,
                if g.converged { "" } else { " NOT CONVERGED" }
            );
        }
    }
    let stalled = p1.non_converged();
    m.set("phase1.games_converged", p1.games.len() - stalled);
    m.set("phase1.games_not_converged", stalled);
    m.set(
        "phase1.accepted_moves",
        p1.games.iter().map(|g| g.accepted_moves).sum::<u64>(),
    );
    m.set(
        "phase1.passes",
        p1.games.iter().map(|g| g.passes.to_string()).collect::<Vec<_>>().join(","),
    );

    let clock = Instant::now();
    let partition = intermediate_partition(graph, &p1.closeness, phase1.beta);
    m.set("partition.components", partition.len());
    let p2 = run_phase2(graph, &p1.closeness, &partition, &phase2)?;
    let t_phase2 = clock.elapsed();
    m.set("phase2.passes", p2.passes);
    m.set("phase2.accepted_moves", p2.accepted_moves);
    m.set("phase2.converged", p2.converged);
    m.set("cover.communities", p2.cover.len());
    m.set("cover.overlapping_vertices", p2.cover.overlapping_vertices());

    let mut bytes = Vec::new();
    write_cover(&LabeledCover::from_cover(&p2.cover, graph), &mut bytes)?;
    m.set("output.cover.sha256", emit(&args.out, &bytes)?);

    if let Some(path) = &args.emit_closeness {
        let mut bytes = Vec::new();
        write_closeness(graph, &ties, &p1.closeness, &mut bytes)?;
        m.set("output.closeness.sha256", emit(path, &bytes)?);
    }

    let mut sweep_stalled = Vec::new();
    if let Some(sweep) = args.alpha_sweep {
        let decimals = sweep.decimals();
        for alpha in sweep.values() {
            let config = Phase2Config { alpha, ..phase2.clone() };
            let result = run_phase2(graph, &p1.closeness, &partition, &config)?;
            let mut bytes = Vec::new();
            write_cover(&LabeledCover::from_cover(&result.cover, graph), &mut bytes)?;
            let key = format!("sweep.alpha{alpha:.decimals$}");
            m.set(format!("{key}.communities"), result.cover.len());
            m.set(format!("{key}.overlapping_vertices"), result.cover.overlapping_vertices());
            m.set(format!("{key}.sha256"), emit(&sweep_path(&args.out, alpha, decimals), &bytes)?);
            if !result.converged {
                sweep_stalled.push(alpha);
            }
        }
    }

    let ms = |d: std::time::Duration| format!("{:.3}", d.as_secs_f64() * 1e3);
    m.set(format!("{RUNTIME_PREFIX}threads"), threads);
    m.set(format!("{RUNTIME_PREFIX}ms.parse"), ms(t_parse));
    m.set(format!("{RUNTIME_PREFIX}ms.ties"), ms(t_ties));
    m.set(format!("{RUNTIME_PREFIX}ms.phase1"), ms(t_phase1));
    m.set(format!("{RUNTIME_PREFIX}ms.phase2"), ms(t_phase2));
    match &args.manifest {
        Some(path) => m.write(crate::io::create(path)?)?,
        None => m.write(std::io::stderr().lock())?,
    }

    if stalled > 0 {
        bail!("{stalled} of {} games hit max_rounds without converging", p1.games.len());
    }
    if !p2.converged {
        bail!("phase 2 hit max_rounds without converging");
    }
    if !sweep_stalled.is_empty() {
        bail!("phase 2 did not converge for alpha {sweep_stalled:?}");
    }
    Ok(())
}
