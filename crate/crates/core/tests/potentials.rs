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

use common::{random_cover, random_graph, rng};
use nash_overlap::benchgen::{generate_planted, PlantedParams};
use nash_overlap::phase1::init_profile;
use nash_overlap::phase2::Phase2State;
use nash_overlap::{
    community_closeness, compute_tie_strengths, potential_phi1, potential_phi2, run_game,
    EdgeCloseness, Phase1Config, StrategyProfile,
};
use rand::Rng;

const REL: f64 = 1e-9;

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= REL * scale.max(1.0)
}

#[test]
fn phi1_tracks_weighted_utility_changes() {
    let mut rng = rng(11);
    let mut checked = 0;
    for g in 0..20 {
        let n = rng.random_range(20..=200);
        let graph = random_graph(&mut rng, n, 8.0 / n as f64, g % 2 == 1);
        let ties = compute_tie_strengths(&graph);
        let r = rng.random_range(2..=6);
        let mut profile = init_profile(&graph, &ties, r, g).unwrap();
        for _ in 0..500 {
            let v = rng.random_range(0..n);
            let s = rng.random_range(0..r);
            let before = potential_phi1(&profile, &graph, &ties);
            let u_before = profile.utility(&ties, v);
            let gain = profile.set_strategy(&graph, &ties, v, s);
            let after = potential_phi1(&profile, &graph, &ties);
            let tv = ties.vertex(v);
            let u_after = if tv > 0.0 {
                profile.agreement_from_scratch(&graph, &ties, v) / tv
            } else {
                0.0
            };
            let scale = ties.total_edge;
            assert!(close(after - before, tv * (u_after - u_before), scale));
            assert!(close(after - before, gain, scale));
            assert!(close(profile.potential(), after, scale));
            checked += 1;
        }
    }
    assert!(checked >= 10_000);
}

#[test]
fn phi2_is_an_exact_potential() {
    let mut rng = rng(12);
    let mut checked = 0;
    for g in 0..20 {
        let n = rng.random_range(20..=200);
        let graph = random_graph(&mut rng, n, 8.0 / n as f64, false);
        let k = 100;
        let counts = (0..graph.m()).map(|_| rng.random_range(0..=k as u32)).collect();
        let closeness = EdgeCloseness::from_counts(k, counts).unwrap();
        let mut cover = random_cover(&mut rng, n, 2 + g as usize % 8);
        let utility = |cover: &nash_overlap::Cover, v: usize| -> f64 {
            cover
                .memberships(v)
                .iter()
                .map(|&c| community_closeness(v, cover.community(c), &closeness, &graph))
                .sum()
        };
        for _ in 0..500 {
            let v = rng.random_range(0..n);
            let size = rng.random_range(1..=3.min(cover.len()));
            let new: Vec<usize> = (0..size).map(|_| rng.random_range(0..cover.len())).collect();
            let before = potential_phi2(&cover, &closeness, &graph);
            let u_before = utility(&cover, v);
            cover.reassign(v, &new);
            let after = potential_phi2(&cover, &closeness, &graph);
            let u_after = utility(&cover, v);
            assert!(close(after - before, u_after - u_before, graph.m() as f64));
            checked += 1;
        }
    }
    assert!(checked >= 10_000);
}

#[test]
fn phase2_state_agrees_with_cover_potential() {
    let mut rng = rng(13);
    for _ in 0..10 {
        let n = rng.random_range(20..=120);
        let graph = random_graph(&mut rng, n, 6.0 / n as f64, false);
        let counts = (0..graph.m()).map(|_| rng.random_range(0..=50u32)).collect();
        let closeness = EdgeCloseness::from_counts(50, counts).unwrap();
        let cover = random_cover(&mut rng, n, 6);
        let mut state = Phase2State::new(&graph, &closeness, &cover);
        assert!(close(state.potential(), potential_phi2(&cover, &closeness, &graph), 1.0));
        for _ in 0..200 {
            let v = rng.random_range(0..n);
            let before = state.potential();
            let u_before = state.utility(v);
            if state.step(v, rng.random_range(0.1..=1.0)).accepted {
                let gain = state.utility(v) - u_before;
                assert!(gain > 0.0);
                assert!(close(state.potential() - before, gain, graph.m() as f64));
            } else {
                assert_eq!(state.potential(), before);
            }
        }
        let out = state.to_cover();
        assert!(out.covers_all());
    }
}

#[test]
fn best_responses_increase_phi1() {
    let mut rng = rng(14);
    for g in 0..10 {
        let n = rng.random_range(50..=200);
        let graph = random_graph(&mut rng, n, 10.0 / n as f64, g % 2 == 0);
        let ties = compute_tie_strengths(&graph);
        let mut profile = init_profile(&graph, &ties, 5, g).unwrap();
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                let before = profile.potential();
                let br = profile.best_response(&graph, &ties, v, 0.0);
                if br.accepted {
                    assert!(profile.potential() > before);
                    changed = true;
                } else {
                    assert_eq!(profile.potential(), before);
                }
            }
        }
        assert!(profile.improving_vertices(&graph, &ties).is_empty());
    }
}

/// Every exact-best-response equilibrium is Nash and keeps at least a
/// `1 / r` share of the total tie-strength on uncut edges.
fn check_equilibria(graph: &nash_overlap::Graph, r: usize, games: usize, seed: u64) {
    let ties = compute_tie_strengths(graph);
    let config = Phase1Config {
        r,
        master_seed: seed,
        ..Phase1Config::default()
    };
    for g in 0..games {
        let mut outcome = run_game(graph, &ties, &config, g).unwrap();
        assert!(outcome.converged);
        assert!(outcome.profile.improving_vertices(graph, &ties).is_empty());
        let phi = potential_phi1(&outcome.profile, graph, &ties);
        assert!(phi >= ties.total_edge / r as f64 - 1e-9 * ties.total_edge);
    }
}

#[test]
fn random_graph_equilibria() {
    let mut rng = rng(15);
    for g in 0..10 {
        let n = rng.random_range(30..=200);
        let graph = random_graph(&mut rng, n, 6.0 / n as f64, g % 3 == 0);
        check_equilibria(&graph, [2, 3, 5, 40][g % 4], 5, g as u64);
    }
}

#[test]
fn planted_graph_equilibria() {
    for seed in 0..3 {
        let bench = generate_planted(&PlantedParams::new(1000, 40, 0.2, 0.1, 2, 20, seed)).unwrap();
        check_equilibria(&bench.graph, 40, 3, seed);
    }
}

#[test]
fn good_enough_moves_respect_round_bound() {
    let bench = generate_planted(&PlantedParams::new(1000, 40, 0.1, 0.1, 2, 20, 3)).unwrap();
    let ties = compute_tie_strengths(&bench.graph);
    for epsilon in [0.05, 0.1, 0.5] {
        let config = Phase1Config {
            epsilon,
            ..Phase1Config::default()
        };
        let bound = 10.0 / epsilon * 1000.0 * (1.0 + ties.total_edge).log2();
        for g in 0..5 {
            let outcome = run_game(&bench.graph, &ties, &config, g).unwrap();
            assert!(outcome.converged);
            assert!((outcome.accepted_moves as f64) <= bound);
        }
    }
}

#[test]
fn potential_of_uniform_and_split_profiles() {
    let graph = common::complete_graph(6);
    let ties = compute_tie_strengths(&graph);
    let same = StrategyProfile::from_strategies(&graph, &ties, 2, vec![1; 6]);
    assert!(close(same.potential(), ties.total_edge, 1.0));
    let path = nash_overlap::Graph::from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap().0;
    let pties = compute_tie_strengths(&path);
    let alternating = StrategyProfile::from_strategies(&path, &pties, 2, vec![0, 1, 0, 1]);
    assert_eq!(alternating.potential(), 0.0);
}
