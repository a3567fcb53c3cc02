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

mod common;

use std::collections::HashSet;

use common::{random_cover, rng, two_clique_truth};
use nash_overlap::eval::nmi_overlapping;
use nash_overlap::Cover;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Brute-force overlapping NMI: every 2×2 table is tallied by walking the
/// whole universe, with natural logarithms throughout.
fn oracle(x: &[Vec<usize>], y: &[Vec<usize>], n: usize) -> f64 {
    fn plogp(p: f64) -> f64 {
        if p == 0.0 {
            0.0
        } else {
            -p * p.ln()
        }
    }
    fn binary_entropy(set: &HashSet<usize>, n: usize) -> f64 {
        let p = set.len() as f64 / n as f64;
        plogp(p) + plogp(1.0 - p)
    }
    fn normalized(a: &[HashSet<usize>], b: &[HashSet<usize>], n: usize) -> f64 {
        let mut sum = 0.0;
        for xk in a {
            let hx = binary_entropy(xk, n);
            if hx == 0.0 {
                continue;
            }
            let mut best = hx;
            for yl in b {
                let mut t = [[0usize; 2]; 2];
                for v in 0..n {
                    t[xk.contains(&v) as usize][yl.contains(&v) as usize] += 1;
                }
                let p = |i: usize, j: usize| t[i][j] as f64 / n as f64;
                let (p00, p01, p10, p11) = (p(0, 0), p(0, 1), p(1, 0), p(1, 1));
                if plogp(p11) + plogp(p00) < plogp(p01) + plogp(p10) {
                    continue;
                }
                let joint = plogp(p00) + plogp(p01) + plogp(p10) + plogp(p11);
                best = best.min(joint - binary_entropy(yl, n));
            }
            sum += best / hx;
        }
        sum / a.len() as f64
    }
    let sets = |c: &[Vec<usize>]| -> Vec<HashSet<usize>> {
        c.iter().map(|s| s.iter().copied().collect()).collect()
    };
    let (a, b) = (sets(x), sets(y));
    1.0 - 0.5 * (normalized(&a, &b, n) + normalized(&b, &a, n))
}

fn oracle_of(x: &Cover, y: &Cover) -> f64 {
    oracle(x.communities(), y.communities(), x.n())
}

#[test]
fn matches_oracle_on_random_pairs() {
    let mut rng = rng(31);
    for _ in 0..50 {
        let n = rng.random_range(2..=30);
        let x = random_cover(&mut rng, n, 5);
        let y = random_cover(&mut rng, n, 5);
        let got = nmi_overlapping(&x, &y).unwrap().value;
        let want = oracle_of(&x, &y);
        assert!((got - want).abs() <= 1e-9, "{got} vs {want}");
        let back = nmi_overlapping(&y, &x).unwrap().value;
        assert!((got - back).abs() <= 1e-12);
        assert_eq!(nmi_overlapping(&x, &x).unwrap().value, 1.0);
        assert!((0.0..=1.0).contains(&got));
    }
}

#[test]
fn one_misassigned_vertex_on_two_cliques() {
    let truth = two_clique_truth(10);
    let detected = Cover::new(20, vec![(0..9).collect(), (9..20).collect()]).unwrap();
    let got = nmi_overlapping(&detected, &truth).unwrap().value;
    assert!((got - oracle_of(&detected, &truth)).abs() <= 1e-9);
    assert!(got > 0.5 && got < 1.0);
}

#[test]
fn independent_random_covers_score_low() {
    let n = 1000;
    for seed in 0..10 {
        let mut rng = rng(100 + seed);
        let mut labels: Vec<usize> = (0..n).map(|v| v % 40).collect();
        let truth = Cover::from_memberships(&labels.iter().map(|&c| vec![c]).collect::<Vec<_>>()).unwrap();
        labels.shuffle(&mut rng);
        let random = Cover::from_memberships(
            &labels.iter().map(|&c| vec![c, (c + 1 + rng.random_range(0..5)) % 40]).collect::<Vec<_>>(),
        )
        .unwrap();
        let value = nmi_overlapping(&truth, &random).unwrap().value;
        assert!(value < 0.1, "seed {seed}: {value}");
    }
}

fn cover_strategy() -> impl Strategy<Value = (Cover, Cover)> {
    (2usize..=30).prop_flat_map(|n| {
        let side = move || {
            prop::collection::vec(prop::collection::vec(0usize..5, 1..=3), n)
                .prop_map(|m| Cover::from_memberships(&m).unwrap())
        };
        (side(), side())
    })
}

proptest! {
    #[test]
    fn oracle_agreement((x, y) in cover_strategy()) {
        let got = nmi_overlapping(&x, &y).unwrap();
        prop_assert!((got.value - oracle_of(&x, &y)).abs() <= 1e-9);
        prop_assert!((got.value - nmi_overlapping(&y, &x).unwrap().value).abs() <= 1e-12);
    }

    #[test]
    fn community_order_is_irrelevant((x, y) in cover_strategy()) {
        let mut reversed = y.communities().to_vec();
        reversed.reverse();
        let y2 = Cover::new(y.n(), reversed).unwrap();
        prop_assert_eq!(nmi_overlapping(&x, &y).unwrap().value, nmi_overlapping(&x, &y2).unwrap().value);
    }
}
