//! Invariants checked on random instances.

mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ring_grooming::bounds::{gamma, lb_best};
use ring_grooming::constructions::construct_best;
use ring_grooming::io::{parse_solution, solution_to_json};
use ring_grooming::ring::double_solution;
use ring_grooming::solver::{solve_exact, SolverOptions};
use ring_grooming::{Block, GroomingSolution, HalfArcRule, Provenance, RingInstance};

fn instance(n: usize, c: u32, bits: u32) -> RingInstance {
    let rule = if n % 2 == 0 {
        HalfArcRule::Explicit((0..n / 2).map(|i| bits >> i & 1 == 1).collect())
    } else {
        HalfArcRule::AllForward
    };
    RingInstance::with_rule(n, c, rule).unwrap()
}

/// Random first-fit partition of the tournament into blocks within load `C`.
fn random_partition(inst: &RingInstance, seed: u64) -> GroomingSolution {
    let n = inst.n();
    let mut arcs = inst.tournament().arcs().to_vec();
    arcs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut blocks: Vec<(Vec<(usize, usize)>, Vec<u32>)> = Vec::new();
    for (u, v) in arcs {
        let segs = common::segments(n, u, v);
        let slot = blocks.iter().position(|(_, load)| segs.iter().all(|&e| load[e] < inst.c()));
        let i = slot.unwrap_or_else(|| {
            blocks.push((Vec::new(), vec![0; n]));
            blocks.len() - 1
        });
        blocks[i].0.push((u, v));
        segs.iter().for_each(|&e| blocks[i].1[e] += 1);
    }
    let blocks = blocks.into_iter().map(|(a, _)| Block::new(a)).collect();
    GroomingSolution::new(inst.clone(), blocks, Provenance::External)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valid_solutions_cover_every_pair_once(n in 3usize..24, c in 1u32..8, bits in any::<u32>(), seed in any::<u64>()) {
        let inst = instance(n, c, bits);
        let sol = random_partition(&inst, seed);
        prop_assert!(sol.validate().is_ok());
        let total: usize = sol.blocks().iter().map(|b| b.arcs().len()).sum();
        prop_assert_eq!(total, n * (n - 1) / 2);
        prop_assert!(sol.adm() as u64 >= lb_best(c, n).unwrap().ceiling);
    }

    #[test]
    fn dropping_an_arc_is_rejected(n in 3usize..16, c in 1u32..5, seed in any::<u64>()) {
        let inst = instance(n, c, 0);
        let sol = random_partition(&inst, seed);
        let mut blocks = sol.blocks().to_vec();
        let first = blocks.remove(0);
        blocks.push(Block::new(first.arcs()[1..].to_vec()));
        let broken = GroomingSolution::new(inst, blocks, Provenance::External);
        prop_assert!(broken.validate().is_err());
    }

    #[test]
    fn blocks_respect_gamma(n in 3usize..40, c in 1u32..7, seed in any::<u64>()) {
        for sol in [construct_best(c, n).unwrap().solution, random_partition(&RingInstance::new(n, c).unwrap(), seed)] {
            for b in sol.blocks() {
                prop_assert!(b.arcs().len() as u64 <= gamma(c, b.vertices().len()).unwrap());
            }
        }
    }

    #[test]
    fn constructions_validate_above_the_bound(n in 3usize..60, c in 1u32..7) {
        let r = construct_best(c, n).unwrap();
        let blocks: Vec<Vec<(usize, usize)>> = r.solution.blocks().iter().map(|b| b.arcs().to_vec()).collect();
        let forward: Vec<bool> = r.solution.instance().diameter_arcs().iter().map(|&(u, v)| u < v).collect();
        let adm = common::check_partition(n, c, &forward, &blocks).map_err(TestCaseError::fail)?;
        prop_assert_eq!(adm, r.achieved_adm);
        prop_assert!(adm >= lb_best(c, n).unwrap().ceiling);
    }

    #[test]
    fn doubling_mirrors_a_valid_solution(n in 3usize..24, c in 1u32..6, bits in any::<u32>(), seed in any::<u64>()) {
        let sol = random_partition(&instance(n, c, bits), seed);
        let both = double_solution(&sol).unwrap();
        prop_assert!(both.counterclockwise.validate().is_ok());
        prop_assert_eq!(both.total_adm(), 2 * sol.adm());
    }

    #[test]
    fn json_round_trip(n in 3usize..24, c in 1u32..6, bits in any::<u32>(), seed in any::<u64>()) {
        let sol = random_partition(&instance(n, c, bits), seed);
        let text = solution_to_json(&sol).unwrap();
        let back = parse_solution(&text).unwrap();
        prop_assert_eq!(&back, &sol);
        prop_assert_eq!(solution_to_json(&back).unwrap(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn solver_is_deterministic_and_sandwiched(n in 3usize..8, c in 1u32..5, bits in any::<u32>()) {
        let inst = instance(n, c, bits);
        let a = solve_exact(&inst, &SolverOptions::default()).unwrap();
        let b = solve_exact(&inst, &SolverOptions::default()).unwrap();
        prop_assert_eq!(&a.solution, &b.solution);
        prop_assert_eq!(a.nodes_explored, b.nodes_explored);
        prop_assert!(a.solution.validate().is_ok());
        prop_assert!(a.best_adm >= lb_best(c, n).unwrap().ceiling);
        if inst.same_tournament(&RingInstance::new(n, c).unwrap()) {
            prop_assert!(a.best_adm <= construct_best(c, n).unwrap().achieved_adm);
        }
    }
}
