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

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use nash_overlap::{
    parse_cover_file, parse_edge_list, write_cover, CoverFormat, EdgeCloseness, Graph,
    LabeledCover, ParseOptions, ParsedGraph, TieStrengthTable,
};
use sha2::{Digest, Sha256};

use crate::{FormatArg, GraphFlags};

pub const CLOSENESS_HEADER: &str = "u,v,w,t,p";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parsed graph plus the digest of the file bytes.
pub fn read_graph(path: &Path, flags: GraphFlags) -> Result<(ParsedGraph, String)> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let opts = ParseOptions {
        weighted: flags.weighted,
        one_indexed: flags.one_indexed,
    };
    let parsed =
        parse_edge_list(bytes.as_slice(), opts).with_context(|| format!("parsing {}", path.display()))?;
    Ok((parsed, sha256_hex(&bytes)))
}

pub fn read_cover(path: &Path, format: FormatArg) -> Result<LabeledCover> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let format = match format {
        FormatArg::Communities => CoverFormat::CommunityPerLine,
        FormatArg::Memberships => CoverFormat::VertexMemberships,
    };
    parse_cover_file(BufReader::new(file), format).with_context(|| format!("parsing {}", path.display()))
}

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

pub fn write_cover_file(path: &Path, cover: &LabeledCover) -> Result<()> {
    let mut out = create(path)?;
    write_cover(cover, &mut out)?;
    out.flush().with_context(|| format!("writing {}", path.display()))
}

pub fn write_closeness<W: Write>(
    graph: &Graph,
    ties: &TieStrengthTable,
    closeness: &EdgeCloseness,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "{CLOSENESS_HEADER}")?;
    for (id, e) in graph.edges().iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{}",
            graph.label(e.u),
            graph.label(e.v),
            e.w,
            ties.edge(id),
            closeness.p(id)
        )?;
    }
    out.flush()
}

/// One closeness CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosenessRow {
    pub u: u64,
    pub v: u64,
    pub t: f64,
    pub p: f64,
}

pub fn read_closeness(path: &Path) -> Result<Vec<ClosenessRow>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut rows = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || (idx == 0 && line == CLOSENESS_HEADER) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            bail!("{}:{}: expected 5 fields, got {}", path.display(), idx + 1, fields.len());
        }
        let bad = |what: &str| format!("{}:{}: invalid {what}", path.display(), idx + 1);
        rows.push(ClosenessRow {
            u: fields[0].parse().with_context(|| bad("u"))?,
            v: fields[1].parse().with_context(|| bad("v"))?,
            t: fields[3].parse().with_context(|| bad("t"))?,
            p: fields[4].parse().with_context(|| bad("p"))?,
        });
    }
    Ok(rows)
}
