mod common;

use common::brute_feasible;

use codebound::feasibility::{LeafOutcome, PruneRule, Pruner};
use codebound::{
    build_problem, check_distribution, macwilliams_dual_with, search, CodeParams,
    FeasibilityProblem, FeasibilityVerdict, KrawtchoukContext, SearchConfig, SpectrumMode,
    WeightDistribution,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ratio(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn check(prob: &FeasibilityProblem, cfg: &SearchConfig) {
    let expect = brute_feasible(prob);
    let got = search(prob, cfg).unwrap();
    assert_eq!(got.is_feasible(), expect, "{prob:?}");
    if let FeasibilityVerdict::Feasible { a1, witness, dual } = got {
        check_distribution(&witness, prob.k).unwrap();
        assert_eq!(dual.get(1), ratio(a1));
        assert!(witness
            .support()
            .all(|w| w == 0 || prob.weights.contains(&w)));
    }
}

#[test]
fn matches_brute_force_on_full_weight_ranges() {
    let cfg = SearchConfig::default();
    for n in 1..=12u32 {
        for k in 1..=4u32.min(n) {
            for d in 1..=n {
                let p = CodeParams::binary(n, k, d).unwrap();
                let ws: Vec<u32> = (d..=n).collect();
                check(&build_problem(&p, &ws, None).unwrap(), &cfg);
                check(&build_problem(&p, &ws, Some(0)).unwrap(), &cfg);
            }
        }
    }
}

#[test]
fn matches_brute_force_on_random_weight_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let seq = SearchConfig {
        parallel: false,
        ..SearchConfig::default()
    };
    for _ in 0..400 {
        let n = rng.gen_range(1..=12u32);
        let k = rng.gen_range(1..=4u32.min(n));
        let d = rng.gen_range(1..=n);
        let mut ws: Vec<u32> = (d..=n).filter(|_| rng.gen_bool(0.5)).collect();
        if ws.is_empty() {
            ws.push(d);
        }
        let p = CodeParams::binary(n, k, d).unwrap();
        let a1 = rng.gen_bool(0.5).then(|| rng.gen_range(0..3));
        let prob = build_problem(&p, &ws, a1).unwrap();
        check(&prob, &seq);
        check(&prob, &SearchConfig::default());
    }
}

#[test]
fn hamming_spectrum_is_the_witness() {
    let p = CodeParams::binary(7, 4, 3).unwrap();
    let prob = build_problem(&p, &[3, 4, 7], Some(0)).unwrap();
    match search(&prob, &SearchConfig::default()).unwrap() {
        FeasibilityVerdict::Feasible { witness, .. } => {
            let expect =
                WeightDistribution::new(7, [(0u32, 1u64), (3, 7), (4, 7), (7, 1)]).unwrap();
            assert_eq!(witness, expect);
        }
        v => panic!("expected feasible, got {v:?}"),
    }
}

fn leaf_agreement(prob: &FeasibilityProblem, sample: f64, seed: u64) -> usize {
    let cfg = SearchConfig::default();
    let pruner = Pruner::new(prob, &cfg).unwrap();
    let ctx = KrawtchoukContext::binary(prob.n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for a1 in prob.a1_values() {
        prob.for_each_leaf(a1, |counts| {
            if !rng.gen_bool(sample) {
                return;
            }
            checked += 1;
            let a = WeightDistribution::new(
                prob.n,
                std::iter::once((0u32, 1u64))
                    .chain(prob.weights.iter().copied().zip(counts.iter().copied())),
            )
            .unwrap();
            let dual = macwilliams_dual_with(&ctx, &a, prob.k, SpectrumMode::Strict).unwrap();
            let real = dual.first_non_integral().is_none()
                && dual.first_negative().is_none()
                && dual.get(1) == ratio(a1);
            match pruner.classify(a1, counts) {
                LeafOutcome::Feasible => assert!(real, "{counts:?}"),
                LeafOutcome::Pruned(rule) => assert!(!real, "{rule} pruned {counts:?}"),
            }
        })
        .unwrap();
    }
    checked
}

#[test]
fn pruning_is_sound_on_sampled_leaves() {
    let p = CodeParams::binary(1988, 12, 992).unwrap();
    let prob = build_problem(&p, &[992, 1008, 1024, 1056, 1088], Some(0)).unwrap();
    assert!(leaf_agreement(&prob, 0.01, 3) > 5000);

    // random mid-sized systems; congruence and nonnegativity do most of the work here
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut rules = std::collections::BTreeSet::new();
    let budget = SearchConfig {
        node_budget: Some(300_000),
        ..SearchConfig::default()
    };
    for _ in 0..200 {
        let n = rng.gen_range(20..=80u32);
        let k = rng.gen_range(4..=7u32);
        let d = rng.gen_range(n / 4..=n / 2);
        let ws: Vec<u32> = (d..=n).filter(|_| rng.gen_bool(0.15)).collect();
        if !(3..=6).contains(&ws.len()) {
            continue;
        }
        let p = CodeParams::binary(n, k, d).unwrap();
        let prob = build_problem(&p, &ws, None).unwrap();
        if let Ok(FeasibilityVerdict::Infeasible(cert)) = search(&prob, &budget) {
            rules.extend(cert.eliminated.into_keys());
            leaf_agreement(&prob, 0.01, u64::from(n));
        }
    }
    for rule in [
        PruneRule::Congruence,
        PruneRule::Nonnegativity,
        PruneRule::SecondMoment,
    ] {
        assert!(rules.contains(&rule), "{rule} never fired");
    }

    // small systems, every leaf, unknown A1
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let n = rng.gen_range(4..=12u32);
        let k = rng.gen_range(2..=4u32.min(n));
        let d = rng.gen_range(1..=n / 2 + 1);
        let ws: Vec<u32> = (d..=n).filter(|_| rng.gen_bool(0.6)).collect();
        if ws.is_empty() {
            continue;
        }
        let p = CodeParams::binary(n, k, d).unwrap();
        leaf_agreement(&build_problem(&p, &ws, None).unwrap(), 1.0, 0);
    }
}

#[test]
fn final_system_is_deterministic() {
    let p = CodeParams::binary(1988, 12, 992).unwrap();
    let prob = build_problem(&p, &[992, 1008, 1024, 1056, 1088], Some(0)).unwrap();
    let par = search(&prob, &SearchConfig::default()).unwrap();
    let seq = search(
        &prob,
        &SearchConfig {
            parallel: false,
            ..SearchConfig::default()
        },
    )
    .unwrap();
    let again = search(&prob, &SearchConfig::default()).unwrap();
    assert_eq!(par, seq);
    assert_eq!(par, again);
    let FeasibilityVerdict::Infeasible(cert) = par else {
        panic!("final system should be infeasible");
    };
    assert_eq!(cert.leaves, 680_952);
}

#[test]
fn budgets_stop_the_search() {
    let p = CodeParams::binary(1988, 12, 992).unwrap();
    let prob = build_problem(&p, &[992, 1008, 1024, 1056, 1088], Some(0)).unwrap();
    let cfg = SearchConfig {
        node_budget: Some(1000),
        ..SearchConfig::default()
    };
    assert!(matches!(
        search(&prob, &cfg),
        Err(codebound::Error::BudgetExhausted { .. })
    ));
}

#[test]
fn verdict_and_witness_ignore_prune_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut shuffled: Vec<u32> = (1..=12).collect();
    for i in (1..shuffled.len()).rev() {
        shuffled.swap(i, rng.gen_range(0..=i));
    }
    let orders = [
        SearchConfig::default(),
        SearchConfig {
            prune_indices: (1..=12).rev().collect(),
            parallel: false,
            ..SearchConfig::default()
        },
        SearchConfig {
            prune_indices: shuffled,
            ..SearchConfig::default()
        },
    ];
    let mut feasible = 0;
    for _ in 0..150 {
        let n = rng.gen_range(6..=40u32);
        let k = rng.gen_range(2..=5u32.min(n));
        let d = rng.gen_range(1..=n / 2);
        let ws: Vec<u32> = (d..=n).filter(|_| rng.gen_bool(0.3)).take(5).collect();
        if ws.is_empty() {
            continue;
        }
        let p = CodeParams::binary(n, k, d).unwrap();
        let prob = build_problem(&p, &ws, None).unwrap();
        let verdicts: Vec<_> = orders
            .iter()
            .map(|cfg| match search(&prob, cfg).unwrap() {
                FeasibilityVerdict::Feasible { a1, witness, .. } => Some((a1, witness)),
                FeasibilityVerdict::Infeasible(_) => None,
            })
            .collect();
        feasible += usize::from(verdicts[0].is_some());
        assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "{prob:?}");
    }
    assert!(feasible > 10);
}
