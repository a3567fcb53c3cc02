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

//! Planted overlapping communities with near-regular degrees.
//!
//! Every vertex gets `⌈(1 − μ)·d⌉` intra-community and `⌊μ·d⌋`
//! inter-community endpoints, where `d` is the target average degree. An
//! overlapping vertex splits its intra endpoints evenly over its `om`
//! communities. Community sizes are balanced over all memberships.
//!
//! Intra-community edges of each community are built with Havel–Hakimi
//! (random tie-breaking) and then shuffled with degree-preserving double
//! edge swaps; rejection sampling stalls on communities this dense.
//! Inter-community stubs are paired at random, and invalid pairs are
//! repaired by swapping with a random valid pair.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::{rng_from, stream_seed, BENCHGEN_STREAM};

const ROUNDING_SLACK: f64 = 1e-9;
const SWAPS_PER_EDGE: usize = 10;
const REPAIR_TRIES: usize = 1000;
const PAIRING_RESTARTS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedParams {
    pub n: usize,
    pub n_comm: usize,
    /// Nominal community size; `n_comm · comm_size` must reach `n`. Realized
    /// sizes are the balanced split of all memberships, so overlap makes
    /// communities slightly larger.
    pub comm_size: usize,
    /// Mixing factor in `[0, 0.5]`.
    pub mu: f64,
    /// Fraction of overlapping vertices in `[0, 0.5]`.
    pub on_fraction: f64,
    /// Memberships per overlapping vertex, at least 2.
    pub om: usize,
    pub avg_degree: usize,
    pub seed: u64,
}

impl PlantedParams {
    /// Parameters with `comm_size = ⌈n / n_comm⌉`.
    pub fn new(
        n: usize,
        n_comm: usize,
        mu: f64,
        on_fraction: f64,
        om: usize,
        avg_degree: usize,
        seed: u64,
    ) -> PlantedParams {
        PlantedParams {
            n,
            n_comm,
            comm_size: n.div_ceil(n_comm.max(1)),
            mu,
            on_fraction,
            om,
            avg_degree,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n == 0 || self.n_comm == 0 || self.comm_size == 0 || self.avg_degree == 0 {
            return bad("n, communities, community size and average degree must be positive".into());
        }
        if self.n_comm * self.comm_size < self.n {
            return bad(format!(
                "{} communities of {} cannot hold {} vertices",
                self.n_comm, self.comm_size, self.n
            ));
        }
        if !(0.0..=0.5).contains(&self.mu) {
            return bad(format!("mu must be in [0, 0.5], got {}", self.mu));
        }
        if !(0.0..=0.5).contains(&self.on_fraction) {
            return bad(format!("on fraction must be in [0, 0.5], got {}", self.on_fraction));
        }
        if self.om < 2 {
            return bad(format!("om must be at least 2, got {}", self.om));
        }
        Ok(())
    }

    pub fn overlapping(&self) -> usize {
        (self.on_fraction * self.n as f64).round() as usize
    }

    pub fn intra_degree(&self) -> usize {
        ((1.0 - self.mu) * self.avg_degree as f64 - ROUNDING_SLACK).ceil() as usize
    }

    pub fn inter_degree(&self) -> usize {
        (self.mu * self.avg_degree as f64 + ROUNDING_SLACK).floor() as usize
    }
}

/// Realized mixing over non-overlapping vertices with at least one edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAudit {
    pub vertices: usize,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
    /// Vertices whose external fraction exceeds `mu + 1 / avg_degree`.
    pub over_limit: usize,
}

#[derive(Debug, Clone)]
pub struct PlantedBenchmark {
    /// Unit-weight graph labelled `1..=n`.
    pub graph: Graph,
    pub truth: Cover,
    pub audit: MixingAudit,
}

pub fn generate_planted(params: &PlantedParams) -> Result<PlantedBenchmark> {
    params.validate()?;
    let mut rng = rng_from(stream_seed(params.seed, BENCHGEN_STREAM));
    let n = params.n;
    let on = params.overlapping();
    if on > 0 && params.om > params.n_comm {
        return Err(Error::Infeasible(format!(
            "om = {} exceeds the {} communities",
            params.om, params.n_comm
        )));
    }

    // Memberships: a shuffled deck holding each community id once per seat,
    // with seats split as evenly as possible.
    let total = n + on * (params.om - 1);
    let base = total / params.n_comm;
    let mut extra: Vec<usize> = (0..params.n_comm).collect();
    extra.shuffle(&mut rng);
    let mut seats = vec![base; params.n_comm];
    for &c in &extra[..total % params.n_comm] {
        seats[c] += 1;
    }
    if seats.iter().any(|&s| s == 0) {
        return Err(Error::Infeasible(format!(
            "{} memberships cannot fill {} communities",
            total, params.n_comm
        )));
    }
    let mut deck: Vec<usize> = seats
        .iter()
        .enumerate()
        .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
        .collect();
    deck.shuffle(&mut rng);

    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(&mut rng);
    let mut overlapping = vec![false; n];
    let mut memberships: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pos = 0;
    for (rank, &v) in vertices.iter().enumerate() {
        let want = if rank < on { params.om } else { 1 };
        overlapping[v] = rank < on;
        for _ in 0..want {
            let j = (pos..deck.len())
                .find(|&j| !memberships[v].contains(&deck[j]))
                .ok_or_else(|| {
                    Error::Infeasible("not enough distinct communities left".into())
                })?;
            deck.swap(pos, j);
            memberships[v].push(deck[pos]);
            pos += 1;
        }
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); params.n_comm];
    for (v, ms) in memberships.iter_mut().enumerate() {
        for &c in ms.iter() {
            members[c].push(v);
        }
        ms.sort_unstable();
    }

    // Intra endpoints per (vertex, membership).
    let d_in = params.intra_degree();
    let mut shares: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let k = memberships[v].len();
        let mut s = vec![d_in / k; k];
        let mut slots: Vec<usize> = (0..k).collect();
        slots.shuffle(&mut rng);
        for &i in &slots[..d_in % k] {
            s[i] += 1;
        }
        shares[v] = s;
    }
    let min_size = members.iter().map(Vec::len).min().unwrap();
    let max_share = shares.iter().flatten().copied().max().unwrap_or(0);
    if max_share + 1 > min_size {
        return Err(Error::Infeasible(format!(
            "intra degree {max_share} needs communities larger than {min_size}"
        )));
    }

    let mut edge_set: HashSet<(usize, usize)> = HashSet::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (c, comm) in members.iter().enumerate() {
        let mut degrees: Vec<usize> = comm
            .iter()
            .map(|&v| {
                let i = memberships[v].binary_search(&c).unwrap();
                shares[v][i]
            })
            .collect();
        if degrees.iter().sum::<usize>() % 2 == 1 {
            // drop one endpoint, from an overlapping member when possible
            let mut pick: Vec<usize> = (0..comm.len()).filter(|&i| degrees[i] > 0).collect();
            pick.shuffle(&mut rng);
            let i = pick
                .iter()
                .copied()
                .find(|&i| overlapping[comm[i]])
                .unwrap_or(pick[0]);
            degrees[i] -= 1;
        }
        for (a, b) in community_edges(comm, &degrees, &mut rng)
            .ok_or_else(|| Error::Infeasible(format!("community {c} degrees are not graphical")))?
        {
            // pairs sharing two communities may come up twice
            if edge_set.insert((a, b)) {
                edges.push((a, b));
            }
        }
    }

    let d_out = params.inter_degree();
    if d_out > 0 {
        // a vertex in every community has nobody outside them to link to
        let mut stubs: Vec<usize> = (0..n)
            .filter(|&v| memberships[v].len() < params.n_comm)
            .flat_map(|v| std::iter::repeat_n(v, d_out))
            .collect();
        if stubs.len() % 2 == 1 {
            let i = rng.random_range(0..stubs.len());
            stubs.swap_remove(i);
        }
        let inter = pair_stubs(&stubs, &memberships, &mut rng).ok_or_else(|| {
            Error::Infeasible("could not pair inter-community endpoints".into())
        })?;
        for e in inter {
            edge_set.insert(e);
            edges.push(e);
        }
    }
    edges.sort_unstable();

    let labels: Vec<u64> = (1..=n as u64).collect();
    let (graph, _) = Graph::with_labels(labels, edges.into_iter().map(|(u, v)| (u, v, 1.0)))?;
    let truth = Cover::new(n, members)?;
    let audit = audit_mixing(&graph, &truth, params.mu + 1.0 / params.avg_degree as f64);
    Ok(PlantedBenchmark {
        graph,
        truth,
        audit,
    })
}

/// A simple graph on `comm` with the given degrees, or `None` if the
/// sequence is not graphical.
fn community_edges(
    comm: &[usize],
    degrees: &[usize],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<(usize, usize)>> {
    let s = comm.len();
    let keys: Vec<u64> = (0..s).map(|_| rng.random()).collect();
    let mut rem = degrees.to_vec();
    let mut local: Vec<(usize, usize)> = Vec::new();
    let mut order: Vec<usize> = (0..s).collect();
    loop {
        order.sort_by(|&a, &b| rem[b].cmp(&rem[a]).then(keys[a].cmp(&keys[b])));
        let head = order[0];
        let d = rem[head];
        if d == 0 {
            break;
        }
        if d > s - 1 || rem[order[d]] == 0 {
            return None;
        }
        rem[head] = 0;
        for &x in &order[1..=d] {
            rem[x] -= 1;
            local.push((head.min(x), head.max(x)));
        }
    }

    // degree-preserving randomization
    let mut present: HashSet<(usize, usize)> = local.iter().copied().collect();
    let m = local.len();
    if m >= 2 {
        for _ in 0..SWAPS_PER_EDGE * m {
            let i = rng.random_range(0..m);
            let j = rng.random_range(0..m);
            let (a, b) = local[i];
            let (c, d) = local[j];
            let (c, d) = if rng.random() { (c, d) } else { (d, c) };
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let e1 = (a.min(d), a.max(d));
            let e2 = (c.min(b), c.max(b));
            if present.contains(&e1) || present.contains(&e2) {
                continue;
            }
            present.remove(&local[i]);
            present.remove(&local[j]);
            present.insert(e1);
            present.insert(e2);
            local[i] = e1;
            local[j] = e2;
        }
    }
    Some(
        local
            .into_iter()
            .map(|(a, b)| {
                let (u, v) = (comm[a], comm[b]);
                (u.min(v), u.max(v))
            })
            .collect(),
    )
}

fn share_community(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|c| b.binary_search(c).is_ok())
}

/// Pairs stubs into distinct edges between vertices without a common
/// community. A bad pair is repaired by exchanging endpoints with another
/// pair, good or bad, so that both results are good.
fn pair_stubs(
    stubs: &[usize],
    memberships: &[Vec<usize>],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<(usize, usize)>> {
    let valid = |a: usize, b: usize| a != b && !share_community(&memberships[a], &memberships[b]);
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    'restart: for _ in 0..PAIRING_RESTARTS {
        let mut shuffled = stubs.to_vec();
        shuffled.shuffle(rng);
        let mut pairs: Vec<(usize, usize)> =
            shuffled.chunks_exact(2).map(|ch| norm(ch[0], ch[1])).collect();
        let mut good = vec![false; pairs.len()];
        let mut present: HashSet<(usize, usize)> = HashSet::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            good[i] = valid(a, b) && present.insert((a, b));
        }
        for i in 0..pairs.len() {
            if good[i] {
                continue;
            }
            let (a, b) = pairs[i];
            let mut fixed = false;
            for _ in 0..REPAIR_TRIES {
                let j = rng.random_range(0..pairs.len());
                if j == i {
                    continue;
                }
                let (c, d) = pairs[j];
                let (c, d) = if rng.random() { (c, d) } else { (d, c) };
                let e1 = norm(a, c);
                let e2 = norm(b, d);
                if e1 == e2
                    || !valid(e1.0, e1.1)
                    || !valid(e2.0, e2.1)
                    || present.contains(&e1)
                    || present.contains(&e2)
                {
                    continue;
                }
                if good[j] {
                    present.remove(&pairs[j]);
                }
                present.insert(e1);
                present.insert(e2);
                pairs[i] = e1;
                pairs[j] = e2;
                good[i] = true;
                good[j] = true;
                fixed = true;
                break;
            }
            if !fixed {
                continue 'restart;
            }
        }
        return Some(pairs);
    }
    None
}

fn audit_mixing(graph: &Graph, truth: &Cover, limit: f64) -> MixingAudit {
    let mut audit = MixingAudit {
        vertices: 0,
        min: f64::INFINITY,
        mean: 0.0,
        max: 0.0,
        over_limit: 0,
    };
    for v in 0..graph.n() {
        let own = truth.memberships(v);
        if own.len() != 1 || graph.degree(v) == 0 {
            continue;
        }
        let external = graph
            .neighbors(v)
            .iter()
            .filter(|&&j| !truth.memberships(j).contains(&own[0]))
            .count();
        let fraction = external as f64 / graph.degree(v) as f64;
        audit.vertices += 1;
        audit.min = audit.min.min(fraction);
        audit.max = audit.max.max(fraction);
        audit.mean += fraction;
        if fraction > limit + ROUNDING_SLACK {
            audit.over_limit += 1;
        }
    }
    if audit.vertices > 0 {
        audit.mean /= audit.vertices as f64;
    } else {
        audit.min = 0.0;
    }
    audit
}
