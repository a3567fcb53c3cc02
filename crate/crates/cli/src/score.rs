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

use anyhow::{anyhow, bail, Context, Result};
use nash_overlap::eval::{modularity as modularity_of, nmi_overlapping};
use nash_overlap::Error;

use crate::io::{read_cover, read_graph};
use crate::{ModularityArgs, NmiArgs};

pub fn nmi(args: &NmiArgs) -> Result<()> {
    let detected = read_cover(&args.detected, args.detected_format)?;
    let truth = read_cover(&args.truth, args.truth_format)?;
    let universe = truth.vertex_labels();
    let other = detected.vertex_labels();
    if universe != other {
        let missing = universe.iter().filter(|l| other.binary_search(l).is_err()).count();
        let extra = other.iter().filter(|l| universe.binary_search(l).is_err()).count();
        bail!(
            "covers span different vertex sets: truth has {} vertices, detected has {} \
             ({missing} only in truth, {extra} only in detected)",
            universe.len(),
            other.len()
        );
    }
    let x = detected.to_cover_over(&universe)?;
    let y = truth.to_cover_over(&universe)?;
    let report = nmi_overlapping(&x, &y)?;
    if args.json {
        println!("{{\"nmi\": {:?}}}", report.value);
    } else {
        println!("{:?}", report.value);
    }
    Ok(())
}

pub fn modularity(args: &ModularityArgs) -> Result<()> {
    let (parsed, _) = read_graph(&args.graph, args.graph_flags)?;
    let cover = read_cover(&args.cover, args.cover_format)?
        .to_cover(&parsed.graph)
        .context("cover does not match the graph")?;
    let q = modularity_of(&parsed.graph, &cover).map_err(|e| match e {
        Error::NotDisjoint(v, count) => anyhow!(
            "modularity needs a disjoint cover; vertex {} has {count} memberships",
            parsed.graph.label(v)
        ),
        e => e.into(),
    })?;
    if args.json {
        println!("{{\"modularity\": {q:?}}}");
    } else {
        println!("{q:?}");
    }
    Ok(())
}
