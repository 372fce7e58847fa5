mod common;

use codebound::certificate::Verdict;
use codebound::feasibility::a1_upper_bound;
use codebound::spectra::MomentStatus;
use codebound::{
    build_problem, candidate_weights, check_distribution, descent_chain, dual_a1_zero,
    macwilliams_dual, moment_solve_small, pless_residuals, prove, search, CodeParams,
    FeasibilityVerdict, NoOracle, ProveConfig, SearchConfig,
};
use common::{optimal_codes, small_table, SmallCode};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_codes(count: usize, seed: u64) -> Vec<SmallCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=14);
        let k = rng.gen_range(1..=6u32.min(n));
        let c = SmallCode::random(&mut rng, n, k);
        if c.k() > 0 {
            out.push(c);
        }
    }
    out
}

/// Punctures the last coordinate and appends an overall parity bit.
fn even_version(c: &SmallCode) -> SmallCode {
    let rows: Vec<u32> = c
        .basis
        .iter()
        .map(|&b| {
            let p = b >> 1;
            (p << 1) | (p.count_ones() & 1)
        })
        .collect();
    SmallCode::from_rows(c.n, &rows)
}

fn params(c: &SmallCode) -> CodeParams {
    CodeParams::binary(c.n, c.k(), c.min_distance().unwrap()).unwrap()
}

#[test]
fn transform_matches_enumerated_dual() {
    for c in random_codes(200, 1) {
        let dual = c.dual();
        assert_eq!(dual.k(), c.n - c.k());
        let t = macwilliams_dual(&c.spectrum(), c.k()).unwrap();
        assert_eq!(
            t.to_distribution().unwrap(),
            dual.spectrum(),
            "n={} k={}",
            c.n,
            c.k()
        );
        check_distribution(&c.spectrum(), c.k()).unwrap();
    }
}

#[test]
fn moments_hold_with_enumerated_dual_counts() {
    for c in random_codes(200, 2) {
        let dual = c.dual().spectrum();
        let a1 = BigInt::from(dual.count(1));
        let a2 = BigInt::from(dual.count(2));
        let r = pless_residuals(&c.spectrum(), c.k(), &a1, &a2);
        assert!(r.iter().all(Zero::is_zero));
    }
}

#[test]
fn exclusions_never_remove_occurring_weights() {
    let table = small_table();
    let mut fired = std::collections::BTreeMap::new();
    for c in random_codes(200, 3).into_iter().chain(optimal_codes(14, 6)) {
        let p = params(&c);
        // an even-distance code is judged through its even-weight version
        let c = if p.d.is_multiple_of(2) {
            even_version(&c)
        } else {
            c
        };
        assert_eq!(params(&c), p);
        let report = candidate_weights(&p, table, &mut NoOracle).unwrap();
        assert!(!report.minimum_weight_excluded(), "{p}");
        for e in &report.exclusions {
            *fired.entry(e.rule().to_string()).or_insert(0u32) += 1;
        }
        for w in c.weights() {
            let v = report.verdict(w);
            assert!(
                !v.is_excluded(),
                "{p}: weight {w} excluded by {:?}",
                v.excluded_by
            );
        }
    }
    for rule in ["odd-parity", "descent-griesmer"] {
        assert!(fired.contains_key(rule), "{rule} never fired: {fired:?}");
    }
}

#[test]
fn descent_chains_never_contradict_real_codes() {
    let table = small_table();
    for c in random_codes(200, 4).into_iter().chain(optimal_codes(14, 6)) {
        let p = params(&c);
        if p.k < 2 {
            continue;
        }
        for w in c.weights().into_iter().filter(|&w| w < 2 * p.d) {
            let chain = descent_chain(&p, w, table).unwrap();
            assert!(!chain.verdict.is_contradiction(), "{chain}");
        }
    }
}

#[test]
fn dual_a1_zero_is_sound() {
    let table = small_table();
    for c in random_codes(200, 5).into_iter().chain(optimal_codes(14, 6)) {
        let p = params(&c);
        if dual_a1_zero(&p, table).unwrap().is_proven() {
            assert!(c.dual().spectrum().count(1).is_zero(), "{p}");
        }
    }
}

fn few_weight_codes() -> Vec<SmallCode> {
    let mut v = vec![
        // simplex [7,3,4]
        SmallCode::from_rows(7, &[0b1010101, 0b0110011, 0b0001111]),
        // [15,4,8] simplex
        SmallCode::from_rows(
            15,
            &[
                0b101010101010101,
                0b011001100110011,
                0b000111100001111,
                0b000000011111111,
            ],
        ),
        SmallCode::from_rows(5, &[0b11100, 0b00111]),
        SmallCode::from_rows(6, &[0b111111]),
    ];
    v.extend(
        random_codes(2000, 6)
            .into_iter()
            .filter(|c| c.weights().len() <= 2)
            .take(100),
    );
    v
}

#[test]
fn moment_solver_accepts_real_few_weight_codes() {
    for c in few_weight_codes() {
        let v = moment_solve_small(c.n, c.k(), &c.weights()).unwrap();
        assert_eq!(
            v.status,
            MomentStatus::Undetermined,
            "n={} k={} {:?}",
            c.n,
            c.k(),
            c.weights()
        );
    }
}

#[test]
fn search_finds_real_spectra_feasible() {
    let cfg = SearchConfig::default();
    for c in random_codes(200, 7)
        .into_iter()
        .filter(|c| c.weights().len() <= 4)
    {
        let p = params(&c);
        let real_a1 = c.dual().spectrum().count(1);
        let prob = build_problem(&p, &c.weights(), None).unwrap();
        let bound = a1_upper_bound(p.n, p.k, p.d).unwrap();
        assert!(real_a1 <= bound.into());
        assert!(
            matches!(
                search(&prob, &cfg).unwrap(),
                FeasibilityVerdict::Feasible { .. }
            ),
            "{p} {:?}",
            c.weights()
        );
    }
}

#[test]
fn prover_never_refutes_a_real_code() {
    let table = small_table();
    let small = SearchConfig {
        node_budget: Some(200_000),
        ..SearchConfig::default()
    };
    let cfg = ProveConfig {
        recursion_depth: 2,
        search: small.clone(),
        lemma_search: small,
        ..ProveConfig::default()
    };
    let optimal = optimal_codes(14, 6);
    for c in random_codes(120, 8)
        .iter()
        .chain(&few_weight_codes())
        .chain(&optimal)
    {
        if c.n > 14 {
            continue;
        }
        let p = params(c);
        let cert = prove(&p, table, &cfg).unwrap();
        assert_eq!(cert.verdict(), Verdict::Undecided, "{p}");
        // weaker distances are also realised by the same code
        if p.d > 1 {
            let weaker = CodeParams::binary(p.n, p.k, p.d - 1).unwrap();
            assert_eq!(
                prove(&weaker, table, &cfg).unwrap().verdict(),
                Verdict::Undecided
            );
        }
    }
}
