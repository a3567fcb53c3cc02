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

//! Overlapping covers, over internal ids ([`Cover`]) or original labels
//! ([`LabeledCover`]), and their two text formats.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A family of vertex sets over the universe `0..n`, with the per-vertex
/// membership lists kept as the inverse index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    n: usize,
    communities: Vec<Vec<usize>>,
    memberships: Vec<Vec<usize>>,
}

impl Cover {
    /// Members are sorted and deduplicated; community order is kept.
    pub fn new(n: usize, communities: Vec<Vec<usize>>) -> Result<Cover> {
        let mut communities = communities;
        for c in &mut communities {
            if c.is_empty() {
                return Err(Error::EmptyCommunity);
            }
            c.sort_unstable();
            c.dedup();
            if let Some(&v) = c.last().filter(|&&v| v >= n) {
                return Err(Error::OutsideUniverse { vertex: v, universe: n });
            }
        }
        let mut memberships = vec![Vec::new(); n];
        for (ci, c) in communities.iter().enumerate() {
            for &v in c {
                memberships[v].push(ci);
            }
        }
        Ok(Cover {
            n,
            communities,
            memberships,
        })
    }

    /// Builds a cover from per-vertex membership lists over community ids
    /// `0..`; ids nobody uses are dropped.
    pub fn from_memberships(memberships: &[Vec<usize>]) -> Result<Cover> {
        let m = memberships
            .iter()
            .flatten()
            .max()
            .map_or(0, |&c| c + 1);
        let mut communities = vec![Vec::new(); m];
        for (v, cs) in memberships.iter().enumerate() {
            for &c in cs {
                communities[c].push(v);
            }
        }
        communities.retain(|c| !c.is_empty());
        Cover::new(memberships.len(), communities)
    }

    /// Universe size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of communities.
    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn communities(&self) -> &[Vec<usize>] {
        &self.communities
    }

    pub fn community(&self, c: usize) -> &[usize] {
        &self.communities[c]
    }

    /// Community indices of `v`, ascending.
    pub fn memberships(&self, v: usize) -> &[usize] {
        &self.memberships[v]
    }

    /// `Σ_v |memberships(v)|`.
    pub fn total_memberships(&self) -> usize {
        self.memberships.iter().map(Vec::len).sum()
    }

    /// Every vertex in exactly one community.
    pub fn is_disjoint(&self) -> bool {
        self.memberships.iter().all(|m| m.len() == 1)
    }

    /// Union of communities is the whole universe.
    pub fn covers_all(&self) -> bool {
        self.memberships.iter().all(|m| !m.is_empty())
    }

    pub fn overlapping_vertices(&self) -> usize {
        self.memberships.iter().filter(|m| m.len() > 1).count()
    }

    /// Replaces the memberships of `v`. Communities emptied by the move stay
    /// in place (indices are stable) until [`Cover::compact`].
    pub fn reassign(&mut self, v: usize, new: &[usize]) {
        for &c in &self.memberships[v] {
            let members = &mut self.communities[c];
            if let Ok(i) = members.binary_search(&v) {
                members.remove(i);
            }
        }
        let mut new = new.to_vec();
        new.sort_unstable();
        new.dedup();
        for &c in &new {
            let members = &mut self.communities[c];
            if let Err(i) = members.binary_search(&v) {
                members.insert(i, v);
            }
        }
        self.memberships[v] = new;
    }

    /// Drops empty communities.
    pub fn compact(self) -> Cover {
        let communities = self
            .communities
            .into_iter()
            .filter(|c| !c.is_empty())
            .collect();
        Cover::new(self.n, communities).expect("non-empty communities over the same universe")
    }

    /// Identical communities merged, empties dropped, and communities
    /// ordered by smallest member (then lexicographically).
    pub fn canonical(&self) -> Cover {
        let mut communities: Vec<Vec<usize>> = self
            .communities
            .iter()
            .filter(|c| !c.is_empty())
            .cloned()
            .collect();
        communities.sort();
        communities.dedup();
        Cover::new(self.n, communities).expect("canonicalizing a valid cover")
    }
}

/// Cover over original vertex labels, as read from or written to a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledCover {
    pub communities: Vec<Vec<u64>>,
}

impl LabeledCover {
    pub fn from_cover(cover: &Cover, graph: &Graph) -> LabeledCover {
        LabeledCover {
            communities: cover
                .communities()
                .iter()
                .map(|c| c.iter().map(|&v| graph.label(v)).collect())
                .collect(),
        }
    }

    /// Maps labels to graph ids.
    pub fn to_cover(&self, graph: &Graph) -> Result<Cover> {
        self.to_cover_over(graph.labels())
    }

    /// Maps labels to their positions in `universe`, which must be sorted.
    pub fn to_cover_over(&self, universe: &[u64]) -> Result<Cover> {
        let communities = self
            .communities
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| universe.binary_search(&l).map_err(|_| Error::UnknownVertex(l)))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Cover::new(universe.len(), communities)
    }

    /// Sorted distinct labels referenced by the cover.
    pub fn vertex_labels(&self) -> Vec<u64> {
        let mut labels: Vec<u64> = self.communities.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    /// Members sorted, identical communities merged, communities ordered by
    /// smallest member label.
    pub fn canonical(&self) -> LabeledCover {
        let mut communities: Vec<Vec<u64>> = self
            .communities
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        communities.sort();
        communities.dedup();
        LabeledCover { communities }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverFormat {
    /// One community per line, space-separated vertex labels.
    CommunityPerLine,
    /// `vertex comm [comm ...]` per line (LFR `community.dat`).
    VertexMemberships,
}

/// Reads a cover file. Blank lines and `#` comments are skipped. In the
/// vertex-memberships format, communities are ordered by community id.
pub fn parse_cover_file<R: BufRead>(reader: R, format: CoverFormat) -> Result<LabeledCover> {
    let mut per_line: Vec<Vec<u64>> = Vec::new();
    let mut by_id: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let ids = trimmed
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("invalid id {tok:?}"),
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        match format {
            CoverFormat::CommunityPerLine => per_line.push(ids),
            CoverFormat::VertexMemberships => {
                let (&vertex, comms) = ids.split_first().expect("non-empty line");
                if comms.is_empty() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("vertex {vertex} has no community"),
                    });
                }
                for &c in comms {
                    by_id.entry(c).or_default().push(vertex);
                }
            }
        }
    }
    let mut communities = match format {
        CoverFormat::CommunityPerLine => per_line,
        CoverFormat::VertexMemberships => by_id.into_values().collect(),
    };
    for c in &mut communities {
        c.sort_unstable();
        c.dedup();
    }
    Ok(LabeledCover { communities })
}

/// Writes the canonical form of `cover`, one community per line.
pub fn write_cover<W: Write>(cover: &LabeledCover, mut out: W) -> Result<()> {
    for c in cover.canonical().communities {
        let line: Vec<String> = c.iter().map(u64::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(cover: &LabeledCover) -> LabeledCover {
        let mut buf = Vec::new();
        write_cover(cover, &mut buf).unwrap();
        parse_cover_file(&buf[..], CoverFormat::CommunityPerLine).unwrap()
    }

    #[test]
    fn community_per_line() {
        let c = parse_cover_file("1 2 3\n\n4 5\n".as_bytes(), CoverFormat::CommunityPerLine).unwrap();
        assert_eq!(c.communities, vec![vec![1, 2, 3], vec![4, 5]]);
    }

    #[test]
    fn vertex_memberships() {
        let c = parse_cover_file("1 7\n2 7\n3 7 9\n".as_bytes(), CoverFormat::VertexMemberships)
            .unwrap();
        assert_eq!(c.communities, vec![vec![1, 2, 3], vec![3]]);
        let universe = c.vertex_labels();
        let cover = c.to_cover_over(&universe).unwrap();
        assert_eq!(cover.memberships(2), &[0, 1]);
        assert_eq!(cover.overlapping_vertices(), 1);
    }

    #[test]
    fn both_formats_roundtrip_to_the_same_canonical_cover() {
        let a = parse_cover_file("5 4\n3 2 1\n".as_bytes(), CoverFormat::CommunityPerLine).unwrap();
        let b = parse_cover_file(
            "1 0\n2 0\n3 0\n4 1\n5 1\n".as_bytes(),
            CoverFormat::VertexMemberships,
        )
        .unwrap();
        assert_eq!(roundtrip(&a), roundtrip(&b));
        assert_eq!(roundtrip(&a).communities, vec![vec![1, 2, 3], vec![4, 5]]);
        assert_eq!(roundtrip(&roundtrip(&a)), roundtrip(&a));
    }

    #[test]
    fn unknown_label_against_graph() {
        let g = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap().0;
        let c = LabeledCover {
            communities: vec![vec![0, 1], vec![7]],
        };
        assert!(matches!(c.to_cover(&g), Err(Error::UnknownVertex(7))));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(
            parse_cover_file("1 a\n".as_bytes(), CoverFormat::CommunityPerLine),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_cover_file("1 2\n3\n".as_bytes(), CoverFormat::VertexMemberships),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(Cover::new(3, vec![vec![]]), Err(Error::EmptyCommunity)));
        assert!(matches!(
            Cover::new(3, vec![vec![0, 3]]),
            Err(Error::OutsideUniverse { vertex: 3, .. })
        ));
    }

    #[test]
    fn reassign_keeps_inverse_index() {
        let mut c = Cover::new(4, vec![vec![0, 1], vec![2, 3], vec![1]]).unwrap();
        c.reassign(1, &[1, 0]);
        assert_eq!(c.community(0), &[0, 1]);
        assert_eq!(c.community(1), &[1, 2, 3]);
        assert!(c.community(2).is_empty());
        let c = c.compact();
        assert_eq!(c.len(), 2);
        for v in 0..4 {
            for &ci in c.memberships(v) {
                assert!(c.community(ci).contains(&v));
            }
        }
    }

    #[test]
    fn canonical_merges_duplicates() {
        let c = Cover::new(4, vec![vec![2, 3], vec![0, 1], vec![3, 2]]).unwrap();
        assert_eq!(c.canonical().communities(), &[vec![0, 1], vec![2, 3]]);
    }
}
