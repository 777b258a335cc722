//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Every tolerance here is exact rational equality or an explicit rational
//! inequality; nothing is floating point and nothing is deferred.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use netform::game::{
    construct_high_cost_equilibrium, construct_mixed_equilibrium, high_cost_partition, verify_nash,
    Player, VerifyMode,
};
use netform::graph::Graph;
use netform::io::{greedy_gap_schedule, nine_high_cost_schedules, two_hub_graph};
use netform::rational::{parse_rational, rat, ratio, Rational};
use netform::reduction::{brn_instance_from_tts, tts_decision, verify_reduction, TtsInstance};
use netform::schedule::{BenefitSchedule, CostClass};
use netform::solver::{
    brn_decision, exhaustive_best_response, greedy_local_search, solve_best_response,
    SolverChoice, SolverConfig,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn run_criterion(name: &str, body: impl FnOnce()) {
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = started.elapsed();
    match outcome {
        Ok(()) => println!("acceptance {name}: PASS ({elapsed:.2?})"),
        Err(payload) => {
            println!("acceptance {name}: FAIL ({elapsed:.2?})");
            std::panic::resume_unwind(payload);
        }
    }
}

fn schedule(values: &[&str], cost: &str) -> BenefitSchedule {
    BenefitSchedule::new(
        values.iter().map(|s| parse_rational(s).unwrap()).collect(),
        parse_rational(cost).unwrap(),
    )
    .unwrap()
}

/// Criterion 1: on a complete reference with strictly decreasing benefits,
/// the exhaustive optimum is the complete graph, a star, or the empty graph
/// exactly as the cost crosses b(1)-b(2) and b(1)+(n-2)b(2)/2, unique up to
/// relabeling away from the boundaries.
#[test]
fn criterion_1_complete_reference_regimes() {
    run_criterion("1 complete-reference regimes", || {
        let values = ["1", "0.5", "0.25", "0.125", "0.0625"];
        for n in [4usize, 5, 6] {
            let threshold = rat(1) + ratio(n as i64 - 2, 2) * ratio(1, 2);
            let step = ratio(1, 100);
            let costs: Vec<Rational> = vec![
                ratio(2, 5),
                ratio(3, 5),
                rat(1),
                threshold - step,
                threshold + step,
            ];
            let reference = Graph::complete(n).unwrap();
            let low_edge = ratio(1, 2); // b(1) - b(2)
            for c in costs {
                let s = BenefitSchedule::new(
                    values.iter().map(|v| parse_rational(v).unwrap()).collect(),
                    c,
                )
                .unwrap();
                let cfg = SolverConfig {
                    want_all: true,
                    ..SolverConfig::default()
                };
                let result = exhaustive_best_response(&reference, &s, &cfg).unwrap();
                let optima = result.all_optima.unwrap();
                if c < low_edge {
                    assert_eq!(optima, vec![reference.clone()], "n={n} c={c} complete");
                } else if c < threshold {
                    // all optima are full stars, one per possible center
                    assert!(optima.iter().all(is_full_star), "n={n} c={c} stars");
                    let mut centers: Vec<usize> = optima
                        .iter()
                        .map(|g| (0..n).find(|&v| g.degree(v) == n - 1).unwrap())
                        .collect();
                    centers.sort_unstable();
                    centers.dedup();
                    assert_eq!(centers.len(), n, "n={n} c={c} one star per center");
                    assert_eq!(optima.len(), n, "n={n} c={c} exactly the stars");
                } else {
                    assert_eq!(optima, vec![Graph::empty(n).unwrap()], "n={n} c={c} empty");
                }
            }
        }
    });
}

/// Criterion 2: the 6-ring reference with benefits (1.01, .85, .8, .2, .1)
/// and unit cost has optimal utility exactly 16/25, with a double-star
/// optimum; when b(1)=b(2)=b(3) dominate, both the full star and the double
/// star appear among the optima.
#[test]
fn criterion_2_ring_reference_reproduction() {
    run_criterion("2 six-ring optimum", || {
        let ring = Graph::cycle(6).unwrap();
        let cfg = SolverConfig {
            want_all: true,
            ..SolverConfig::default()
        };

        let s = schedule(&["1.01", "0.85", "0.8", "0.2", "0.1"], "1");
        let result = exhaustive_best_response(&ring, &s, &cfg).unwrap();
        assert_eq!(result.utility, ratio(16, 25));
        let optima = result.all_optima.unwrap();
        assert!(optima.iter().any(is_double_star6), "double star optimum");
        // the double star earns 4 b(1) + 2 b(3) - 5 c, exactly
        let double = Graph::from_edges(6, &[(0, 1), (0, 3), (0, 5), (2, 3), (3, 4)]).unwrap();
        assert_eq!(
            s.conditional_utility(&double, &ring).unwrap(),
            ratio(16, 25)
        );
        assert!(optima.contains(&double));

        // flat head: both hub shapes are optimal
        let s = schedule(&["1.01", "1.01", "1.01", "0.2", "0.1"], "1");
        let result = exhaustive_best_response(&ring, &s, &cfg).unwrap();
        let optima = result.all_optima.unwrap();
        assert!(optima.iter().any(is_full_star), "full star present");
        assert!(optima.iter().any(is_double_star6), "double star present");
    });
}

/// Criterion 3: greedy hill climbing from the two-hub family sticks at
/// utility 5/2 while the certified optimum grows linearly; the ratio clears
/// 2 at n=10, 4 at n=20, and keeps increasing.
#[test]
fn criterion_3_greedy_gap() {
    run_criterion("3 greedy gap", || {
        let mut ratios: Vec<Rational> = Vec::new();
        for n in [10usize, 20, 40] {
            let reference = two_hub_graph(n).unwrap();
            let s = greedy_gap_schedule(n).unwrap();

            let (stuck, trace) = greedy_local_search(&reference, &reference, &s).unwrap();
            let stuck_value = s.conditional_utility(&stuck, &reference).unwrap();
            assert_eq!(stuck_value, ratio(5, 2), "n={n} greedy endpoint");
            assert_eq!(trace.len(), 1, "n={n} one removal then stuck");
            assert_eq!(trace[0].edge, (0, 1));

            // certified optimum: b(1) and (n-2) pairs at distance 2 via a hub
            let best = solve_best_response(
                &reference,
                &s,
                SolverChoice::ClosedFormOnly,
                &SolverConfig::default(),
            )
            .unwrap();
            let b1 = Rational::new(n as i128 - 1, n as i128 - 2);
            let expected = rat(n as i64 - 1) * (b1 - rat(1)) + rat(n as i64 - 2) * ratio(1, 2);
            assert_eq!(best.utility, expected, "n={n} optimal value");
            assert!(best.certificate.is_optimal());

            // the hub from the family's own figure reaches the same value
            let star = Graph::star(n, 1).unwrap();
            assert_eq!(s.conditional_utility(&star, &reference).unwrap(), expected);

            ratios.push(best.utility / stuck_value);
        }
        assert!(ratios[0] >= rat(2), "ratio at n=10: {}", ratios[0]);
        assert!(ratios[1] >= rat(4), "ratio at n=20: {}", ratios[1]);
        assert!(
            ratios[0] < ratios[1] && ratios[1] < ratios[2],
            "strictly increasing"
        );
    });
}

/// Criterion 4: over 100 random connected graphs on 6 and 7 nodes, the
/// spanning-tree oracle and the threshold-decision side agree on every
/// instance, and every "yes" witness is a spanning subtree within stretch 4.
#[test]
fn criterion_4_reduction_equivalence() {
    run_criterion("4 reduction equivalence", || {
        let mut rng = StdRng::seed_from_u64(0xacce_0004);
        let cfg = SolverConfig::default();
        let mut yes = 0;
        let mut no = 0;
        for round in 0..100 {
            let n = if round % 2 == 0 { 6 } else { 7 };
            let extra = [0.0, 0.1, 0.2, 0.35, 0.5][round % 5];
            let g = random_connected_graph(&mut rng, n, extra);
            let instance = TtsInstance::new(g.clone(), 4).unwrap();
            let report = verify_reduction(&instance, &cfg).unwrap();
            assert!(
                report.agree,
                "round {round}: tts={} brn={} on {:?}",
                report.tts, report.brn, g
            );
            // the decision entry point agrees with the witness-producing path
            let decided =
                brn_decision(&brn_instance_from_tts(&instance).unwrap(), &cfg).unwrap();
            assert_eq!(decided, report.brn, "round {round}");
            if report.brn {
                yes += 1;
                let w = report.witness.expect("yes answers carry a witness");
                assert!(w.is_subgraph_of(&g));
                assert!(w.is_forest());
                assert_eq!(w.edge_count(), n - 1);
                assert!(w.is_t_spanner_of(&g, 4).unwrap());
                // and the witness meets the threshold exactly
                let inst = brn_instance_from_tts(&instance).unwrap();
                assert_eq!(
                    inst.schedule.conditional_utility(&w, &g).unwrap(),
                    inst.threshold
                );
            } else {
                no += 1;
            }
        }
        assert_eq!(yes + no, 100);
        // the pool exercises both answers
        assert!(yes > 0 && no > 0, "yes={yes} no={no}");

        // pinned instances: the 6-ring has no tree 4-spanner, adding one
        // chord creates one
        let c6 = TtsInstance::new(Graph::cycle(6).unwrap(), 4).unwrap();
        assert!(!tts_decision(&c6).unwrap());
        let report = verify_reduction(&c6, &cfg).unwrap();
        assert!(!report.tts && !report.brn && report.agree);
        let chord = Graph::cycle(6).unwrap().with_edge(0, 3);
        let report = verify_reduction(&TtsInstance::new(chord, 4).unwrap(), &cfg).unwrap();
        assert!(report.tts && report.brn && report.agree);
    });
}

/// Criterion 5: (a) the 9-player, 11-node hub game partitions at anchors
/// (7, 5, 3, 1) and verifies structurally; (b) a 3-player, 5-node variant
/// verifies exhaustively; (c) the 13-node medium+high game verifies
/// structurally with the two medium hub nodes isolated in every high layer.
#[test]
fn criterion_5_equilibrium_constructions() {
    run_criterion("5 equilibrium constructions", || {
        let cfg = SolverConfig::default();

        // (a) 9 high-cost players on 11 nodes
        let n = 11;
        let players: Vec<Player> = nine_high_cost_schedules(n)
            .into_iter()
            .enumerate()
            .map(|(i, s)| Player::new(i, s, n).unwrap())
            .collect();
        let partition = high_cost_partition(&players, n).unwrap();
        assert_eq!(partition.anchors, vec![7, 5, 3, 1]);
        let profile = construct_high_cost_equilibrium(&players, n).unwrap();
        let report = verify_nash(&profile, &players, VerifyMode::Structural, &cfg).unwrap();
        assert!(report.overall, "9-player structural: {:?}", report.verdicts);

        // (b) three high-cost players with break-evens (3, 3, 4) on 5 nodes
        let n = 5;
        let mk = |cost: &str| {
            let mut values = vec!["1", "1"];
            values.resize(n - 1, "0");
            schedule(&values, cost)
        };
        let players: Vec<Player> = ["1.2", "1.2", "1.7"]
            .iter()
            .enumerate()
            .map(|(i, c)| Player::new(i, mk(c), n).unwrap())
            .collect();
        assert_eq!(
            players.iter().map(|p| p.break_even).collect::<Vec<_>>(),
            vec![Some(3), Some(3), Some(4)]
        );
        let profile = construct_high_cost_equilibrium(&players, n).unwrap();
        let report = verify_nash(&profile, &players, VerifyMode::Exhaustive, &cfg).unwrap();
        assert!(report.overall, "scaled instance: {:?}", report.verdicts);

        // (c) 2 medium + 9 high players on 13 nodes
        let n = 13;
        let mut schedules: Vec<BenefitSchedule> = (0..2)
            .map(|_| {
                let mut values = vec!["1", "0.5"];
                values.resize(n - 1, "0");
                schedule(&values, "0.75")
            })
            .collect();
        schedules.extend(nine_high_cost_schedules(n));
        let players: Vec<Player> = schedules
            .into_iter()
            .enumerate()
            .map(|(i, s)| Player::new(i, s, n).unwrap())
            .collect();
        assert_eq!(players[0].class, CostClass::Medium);
        assert_eq!(players[1].class, CostClass::Medium);
        let profile = construct_mixed_equilibrium(&players, n).unwrap();
        // the two medium hub nodes are isolated in every high-cost layer
        for (i, p) in players.iter().enumerate() {
            if p.class == CostClass::High {
                assert_eq!(profile.layers[i].degree(0), 0, "player {i}");
                assert_eq!(profile.layers[i].degree(1), 0, "player {i}");
            }
        }
        let report = verify_nash(&profile, &players, VerifyMode::Structural, &cfg).unwrap();
        assert!(report.overall, "mixed structural: {:?}", report.verdicts);
    });
}

/// Criterion 6: the five response-shape laws, each over at least 200
/// randomized instances at n <= 5 against the exhaustive optimum, with zero
/// violations: edge budget (and equality only on the copy), connectivity
/// preservation, utility bounds, isolated nodes staying isolated, and
/// peel-then-solve matching the whole-instance optimum.
#[test]
fn criterion_6_property_suites() {
    run_criterion("6 property suites", || {
        let cfg_all = SolverConfig {
            want_all: true,
            ..SolverConfig::default()
        };
        let cfg = SolverConfig::default();

        // edge budget; equality of edge counts only for the copy (b1 > b2)
        let mut rng = StdRng::seed_from_u64(0xacce_0601);
        for round in 0..200 {
            let n = rng.random_range(2..=5);
            let reference = random_graph(&mut rng, n, 0.5);
            let s = random_strict_schedule(&mut rng, (n - 1).max(2), 40);
            let result = exhaustive_best_response(&reference, &s, &cfg_all).unwrap();
            for g in result.all_optima.as_ref().unwrap() {
                assert!(g.edge_count() <= reference.edge_count(), "round {round}");
                if g.edge_count() == reference.edge_count() && reference.edge_count() > 0 {
                    assert_eq!(g, &reference, "round {round}: equality only on the copy");
                }
            }
        }

        // connectivity preservation when a direct edge beats any detour
        let mut rng = StdRng::seed_from_u64(0xacce_0602);
        let mut checked = 0;
        while checked < 200 {
            let n = rng.random_range(2..=5);
            let reference = random_graph(&mut rng, n, 0.5);
            let s = random_schedule(&mut rng, n.max(2) - 1, 40);
            if s.b(1).unwrap() <= s.cost() {
                continue;
            }
            checked += 1;
            // compare against the unpruned oracle so the law is tested, not
            // the solver's own pruning
            let (_, optima) = brute_force_optima(&reference, &s);
            let ref_comps = reference.components();
            for g in &optima {
                let comps = g.components();
                for rc in &ref_comps {
                    let within_one = comps.iter().any(|c| rc.0 & !c.0 == 0);
                    assert!(within_one, "reference component split in an optimum");
                }
            }
        }

        // utility bounds bracket the optimum for connected references in the
        // medium band
        let mut rng = StdRng::seed_from_u64(0xacce_0603);
        let mut checked = 0;
        while checked < 200 {
            let n = rng.random_range(2..=5);
            let reference = random_connected_graph(&mut rng, n, 0.3);
            let b1 = ratio(rng.random_range(8..=32), 16);
            let b2 = b1 - ratio(rng.random_range(0..=(*b1.numer() as i64).min(10)), 16);
            let mut values = vec![b1, b2];
            for _ in 2..(n.max(2) - 1) {
                values.push(b2);
            }
            // cost uniform inside [b1-b2, b1]
            let span = b2;
            let cost = (b1 - b2) + span * ratio(rng.random_range(0..=16), 16);
            if cost <= rat(0) {
                continue;
            }
            let s = BenefitSchedule::new(values, cost).unwrap();
            if s.classify().unwrap() != CostClass::Medium {
                continue;
            }
            checked += 1;
            let (lower, upper) = s.br_utility_bounds(&reference).unwrap();
            let best = exhaustive_best_response(&reference, &s, &cfg).unwrap();
            assert!(lower <= best.utility && best.utility <= upper);
        }

        // isolated reference nodes stay isolated in every optimum
        let mut rng = StdRng::seed_from_u64(0xacce_0604);
        let mut checked = 0;
        while checked < 200 {
            let n = rng.random_range(3..=5);
            // force at least one isolated node
            let sub = random_graph(&mut rng, n - 1, 0.55);
            let mut edges = sub.edges();
            edges.retain(|&(a, b)| a < n - 1 && b < n - 1);
            let reference = Graph::from_edges(n, &edges).unwrap();
            let s = random_schedule(&mut rng, n - 1, 40);
            checked += 1;
            let (_, optima) = brute_force_optima(&reference, &s);
            for g in &optima {
                assert_eq!(g.degree(n - 1), 0, "isolated node grew an edge");
            }
        }

        // peel-then-solve matches the whole-instance optimal utility
        let mut rng = StdRng::seed_from_u64(0xacce_0605);
        for round in 0..200 {
            let n = rng.random_range(2..=5);
            let reference = random_graph(&mut rng, n, 0.45);
            let s = random_schedule(&mut rng, n.max(2) - 1, 40);
            let peeled = peel_and_solve_utility(&reference, &s, &cfg).expect("peel path solves");
            let whole = exhaustive_best_response(&reference, &s, &cfg).unwrap();
            assert_eq!(peeled, whole.utility, "round {round}");
        }
    });
}

fn peel_and_solve_utility(
    reference: &Graph,
    s: &BenefitSchedule,
    cfg: &SolverConfig,
) -> Result<Rational, netform::Error> {
    netform::solver::peel_and_solve(reference, s, SolverChoice::Exhaustive, cfg).map(|r| r.utility)
}

/// Criterion 7: the edge-density parameter equals (n-2)/2 on complete
/// graphs, 0 on random trees, and 1/(n-1) on cycles, exactly, for n = 3..8.
#[test]
fn criterion_7_edge_density_values() {
    run_criterion("7 edge-density values", || {
        let mut rng = StdRng::seed_from_u64(0xacce_0007);
        for n in 3..=8usize {
            assert_eq!(
                Graph::complete(n).unwrap().edge_density_alpha().unwrap(),
                Rational::new(n as i128 - 2, 2),
                "complete on {n}"
            );
            assert_eq!(
                Graph::cycle(n).unwrap().edge_density_alpha().unwrap(),
                Rational::new(1, n as i128 - 1),
                "cycle on {n}"
            );
            for _ in 0..10 {
                let tree = random_tree(&mut rng, n);
                assert_eq!(tree.edge_density_alpha().unwrap(), rat(0), "tree on {n}");
            }
        }
    });
}
