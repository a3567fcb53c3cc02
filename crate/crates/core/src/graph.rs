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

//! Weighted undirected graphs in CSR form, plus edge-list I/O.

use std::io::{BufRead, Write};
use std::ops::Range;

use crate::error::{Error, Result};

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Weighted undirected graph with contiguous vertex ids `0..n`.
///
/// Adjacency is stored in CSR form with every neighbour list sorted by id.
/// Each adjacency slot also records the id of the undirected edge it
/// belongs to, so per-edge tables (tie-strength, closeness) can be indexed
/// from either endpoint. Vertex labels are kept sorted ascending, so id
/// order and label order agree.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
    slot_edge: Vec<usize>,
    edges: Vec<Edge>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph over `n` vertices labelled `0..n`.
    ///
    /// Duplicate edges are merged by summing their weights and self-loops are
    /// dropped. Returns the graph together with the number of dropped loops.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Graph, usize)>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::with_labels((0..n as u64).collect(), edges)
    }

    /// Like [`Graph::from_edges`] with explicit labels, one per vertex,
    /// strictly increasing.
    pub fn with_labels<I>(labels: Vec<u64>, edges: I) -> Result<(Graph, usize)>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let n = labels.len();
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "vertex labels must be strictly increasing".into(),
            ));
        }
        let mut loops = 0;
        let mut raw = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::OutsideUniverse {
                    vertex: u.max(v),
                    universe: n,
                });
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::NonPositiveWeight { line: 0, weight: w });
            }
            if u == v {
                loops += 1;
                continue;
            }
            raw.push(Edge {
                u: u.min(v),
                v: u.max(v),
                w,
            });
        }
        raw.sort_by(|a, b| (a.u, a.v).cmp(&(b.u, b.v)));

        let mut edges: Vec<Edge> = Vec::with_capacity(raw.len());
        for e in raw {
            match edges.last_mut() {
                Some(last) if last.u == e.u && last.v == e.v => last.w += e.w,
                _ => edges.push(e),
            }
        }

        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let slots = *offsets.last().unwrap();
        let mut targets = vec![0; slots];
        let mut weights = vec![0.0; slots];
        let mut slot_edge = vec![0; slots];
        let mut cursor = offsets[..n].to_vec();
        // Edges are sorted by (u, v), so filling in this order leaves every
        // neighbour list sorted: for vertex x, the neighbours y < x arrive
        // (as the `v` side) before any y > x (as the `u` side).
        for (id, e) in edges.iter().enumerate() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                let s = cursor[a];
                targets[s] = b;
                weights[s] = e.w;
                slot_edge[s] = id;
                cursor[a] += 1;
            }
        }
        debug_assert!((0..n).all(|x| targets[offsets[x]..offsets[x + 1]]
            .windows(2)
            .all(|w| w[0] < w[1])));

        Ok((
            Graph {
                offsets,
                targets,
                weights,
                slot_edge,
                edges,
                labels,
            },
            loops,
        ))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Sorted neighbour ids of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.slots(v)]
    }

    /// Edge weights aligned with [`Graph::neighbors`].
    pub fn neighbor_weights(&self, v: usize) -> &[f64] {
        &self.weights[self.slots(v)]
    }

    /// Edge ids aligned with [`Graph::neighbors`].
    pub fn neighbor_edges(&self, v: usize) -> &[usize] {
        &self.slot_edge[self.slots(v)]
    }

    /// Range of adjacency slots owned by `v`.
    pub fn slots(&self, v: usize) -> Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    /// Total number of adjacency slots, `2 m`.
    pub fn slot_count(&self) -> usize {
        self.targets.len()
    }

    pub fn slot_target(&self, slot: usize) -> usize {
        self.targets[slot]
    }

    pub fn slot_edge(&self, slot: usize) -> usize {
        self.slot_edge[slot]
    }

    /// Weight of edge `(u, v)`, if present.
    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        let nbrs = self.neighbors(u);
        nbrs.binary_search(&v)
            .ok()
            .map(|i| self.neighbor_weights(u)[i])
    }

    /// Id of edge `(u, v)`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|i| self.neighbor_edges(u)[i])
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Internal id of an original vertex label.
    pub fn id_of(&self, label: u64) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }
}

/// How to read an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Read a third column as the edge weight. Without it every edge has
    /// unit weight and any extra columns are ignored.
    pub weighted: bool,
    /// Labels are `1..=N` and map to ids `label - 1`; every label up to the
    /// largest one seen becomes a vertex, isolated or not (LFR files). When
    /// unset, the distinct labels seen are compacted to `0..n` in ascending
    /// order.
    pub one_indexed: bool,
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub self_loops_dropped: usize,
    /// Edge lines that repeated an already-seen vertex pair.
    pub duplicates_merged: usize,
}

/// Reads a whitespace-delimited edge list. Lines starting with `#` and blank
/// lines are skipped.
pub fn parse_edge_list<R: BufRead>(reader: R, opts: ParseOptions) -> Result<ParsedGraph> {
    let mut raw: Vec<(u64, u64, f64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let parse_label = |tok: Option<&str>| -> Result<u64> {
            let tok = tok.ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected \"u v\" or \"u v w\"".into(),
            })?;
            let label = tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex id {tok:?}"),
            })?;
            if opts.one_indexed && label == 0 {
                return Err(Error::Parse {
                    line: lineno,
                    message: "vertex id 0 in a one-indexed file".into(),
                });
            }
            Ok(label)
        };
        let u = parse_label(fields.next())?;
        let v = parse_label(fields.next())?;
        let w = if opts.weighted {
            let tok = fields.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: "missing weight column".into(),
            })?;
            let w = tok.parse::<f64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid weight {tok:?}"),
            })?;
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::NonPositiveWeight {
                    line: lineno,
                    weight: w,
                });
            }
            if fields.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    message: "too many columns".into(),
                });
            }
            w
        } else {
            1.0
        };
        raw.push((u, v, w));
    }
    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let labels: Vec<u64> = if opts.one_indexed {
        let max = raw.iter().map(|&(u, v, _)| u.max(v)).max().unwrap();
        (1..=max).collect()
    } else {
        let mut l: Vec<u64> = raw.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        l.sort_unstable();
        l.dedup();
        l
    };
    let id = |label: u64| -> usize {
        if opts.one_indexed {
            (label - 1) as usize
        } else {
            labels.binary_search(&label).unwrap()
        }
    };

    let mut pairs: Vec<(usize, usize)> = raw
        .iter()
        .filter(|(u, v, _)| u != v)
        .map(|&(u, v, _)| (id(u.min(v)), id(u.max(v))))
        .collect();
    let distinct_lines = pairs.len();
    pairs.sort_unstable();
    pairs.dedup();
    let duplicates_merged = distinct_lines - pairs.len();

    let edges: Vec<(usize, usize, f64)> = raw.iter().map(|&(u, v, w)| (id(u), id(v), w)).collect();
    let (graph, self_loops_dropped) = Graph::with_labels(labels, edges)?;
    if graph.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(ParsedGraph {
        graph,
        self_loops_dropped,
        duplicates_merged,
    })
}

/// Writes one `u v` (or `u v w`) line per edge using original labels, in
/// edge-id order.
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W, weighted: bool) -> Result<()> {
    for e in graph.edges() {
        if weighted {
            writeln!(out, "{} {} {}", graph.label(e.u), graph.label(e.v), e.w)?;
        } else {
            writeln!(out, "{} {}", graph.label(e.u), graph.label(e.v))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, weighted: bool, one_indexed: bool) -> Result<ParsedGraph> {
        parse_edge_list(
            text.as_bytes(),
            ParseOptions {
                weighted,
                one_indexed,
            },
        )
    }

    #[test]
    fn one_indexed_path() {
        let p = parse("1 2\n2 3\n", false, true).unwrap();
        let g = &p.graph;
        assert_eq!(g.n(), 3);
        assert_eq!(
            g.edges(),
            &[
                Edge { u: 0, v: 1, w: 1.0 },
                Edge { u: 1, v: 2, w: 1.0 }
            ]
        );
        assert_eq!(g.labels(), &[1, 2, 3]);
    }

    #[test]
    fn duplicates_are_summed() {
        let p = parse("1 2 2.5\n2 1 1.5\n", true, true).unwrap();
        assert_eq!(p.graph.m(), 1);
        assert_eq!(p.graph.edges()[0], Edge { u: 0, v: 1, w: 4.0 });
        assert_eq!(p.duplicates_merged, 1);
    }

    #[test]
    fn self_loops_are_dropped() {
        let p = parse("1 1\n1 2\n", false, true).unwrap();
        assert_eq!(p.graph.m(), 1);
        assert_eq!(p.self_loops_dropped, 1);
    }

    #[test]
    fn compact_labels() {
        let p = parse("# comment\n10 30\n\n30 20\n", false, false).unwrap();
        let g = &p.graph;
        assert_eq!(g.labels(), &[10, 20, 30]);
        assert_eq!(g.neighbors(g.id_of(30).unwrap()), &[0, 1]);
        assert_eq!(g.id_of(15), None);
    }

    #[test]
    fn one_indexed_keeps_isolated_vertices() {
        let g = parse("1 2\n4 2\n", false, true).unwrap().graph;
        assert_eq!(g.n(), 4);
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse("1 2\n2 x\n", false, false),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("1 2\n3\n", false, false),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("1 2 0\n", true, false),
            Err(Error::NonPositiveWeight { line: 1, .. })
        ));
        assert!(matches!(
            parse("1 2 -3\n", true, false),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(parse("1 2\n", true, false), Err(Error::Parse { .. })));
        assert!(matches!(parse("# nothing\n", false, false), Err(Error::EmptyGraph)));
        assert!(matches!(parse("3 3\n", false, false), Err(Error::EmptyGraph)));
        assert!(matches!(parse("0 1\n", false, true), Err(Error::Parse { .. })));
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let text = "5 1\n1 3\n3 5\n2 5\n4 1\n2 3\n";
        let g = parse(text, false, true).unwrap().graph;
        for u in 0..g.n() {
            let nbrs = g.neighbors(u);
            assert!(nbrs.windows(2).all(|w| w[0] < w[1]));
            for (i, &v) in nbrs.iter().enumerate() {
                assert_eq!(g.weight(v, u), Some(g.neighbor_weights(u)[i]));
                assert_eq!(g.edge_id(v, u), Some(g.neighbor_edges(u)[i]));
            }
        }
    }

    #[test]
    fn write_then_parse_is_identity() {
        let g = parse("1 2 0.5\n2 3 2\n1 3 1.25\n", true, true).unwrap().graph;
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf, true).unwrap();
        let back = parse(std::str::from_utf8(&buf).unwrap(), true, true).unwrap().graph;
        assert_eq!(g, back);
    }
}
