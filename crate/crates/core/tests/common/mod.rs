#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use codebound::{
    griesmer_dmax, krawtchouk, BoundsTable, FeasibilityProblem, KrawtchoukContext,
    WeightDistribution,
};
use num_traits::ToPrimitive;
use rand::Rng;

/// An explicitly enumerated binary linear code.
pub struct SmallCode {
    pub n: u32,
    pub basis: Vec<u32>,
    pub words: Vec<u32>,
}

impl SmallCode {
    /// Row-reduces `rows` and enumerates the span.
    pub fn from_rows(n: u32, rows: &[u32]) -> Self {
        let mut basis: Vec<u32> = Vec::new();
        for &r in rows {
            let mut v = r;
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        let mut words = vec![0u32];
        for &b in &basis {
            let more: Vec<u32> = words.iter().map(|w| w ^ b).collect();
            words.extend(more);
        }
        Self { n, basis, words }
    }

    pub fn random(rng: &mut impl Rng, n: u32, k: u32) -> Self {
        let rows: Vec<u32> = (0..k).map(|_| rng.gen_range(0..1u32 << n)).collect();
        Self::from_rows(n, &rows)
    }

    pub fn k(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn min_distance(&self) -> Option<u32> {
        self.words
            .iter()
            .filter(|&&w| w != 0)
            .map(|w| w.count_ones())
            .min()
    }

    pub fn spectrum(&self) -> WeightDistribution {
        spectrum_of(self.n, &self.words)
    }

    /// The dual code, by testing every vector of the ambient space.
    pub fn dual(&self) -> SmallCode {
        let words: Vec<u32> = (0..1u32 << self.n)
            .filter(|v| self.basis.iter().all(|b| (v & b).count_ones() % 2 == 0))
            .collect();
        let basis = SmallCode::from_rows(self.n, &words).basis;
        SmallCode {
            n: self.n,
            basis,
            words,
        }
    }

    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self
            .words
            .iter()
            .filter(|&&w| w != 0)
            .map(|w| w.count_ones())
            .collect();
        w.sort_unstable();
        w.dedup();
        w
    }
}

pub fn spectrum_of(n: u32, words: &[u32]) -> WeightDistribution {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for w in words {
        *counts.entry(w.count_ones()).or_default() += 1;
    }
    WeightDistribution::new(n, counts).unwrap()
}

/// Searches systematic generator matrices `[I | P]` with non-decreasing rows
/// of `P` for a binary `[n, k, >= d]` code.
pub fn find_code(n: u32, k: u32, d: u32) -> Option<SmallCode> {
    if k == 0 || k > n || d > n {
        return None;
    }
    let r = n - k;
    // every subset sum of rows must have weight >= d including identity part
    fn extend(
        rows_left: u32,
        min_row: u32,
        r: u32,
        d: u32,
        combos: &mut Vec<(u32, u32)>,
        rows: &mut Vec<u32>,
    ) -> bool {
        if rows_left == 0 {
            return true;
        }
        for row in min_row..1u32 << r {
            let ok = combos
                .iter()
                .all(|&(x, s)| (x ^ row).count_ones() + s + 1 >= d);
            if !ok {
                continue;
            }
            let len = combos.len();
            for i in 0..len {
                let (x, s) = combos[i];
                combos.push((x ^ row, s + 1));
            }
            rows.push(row);
            if extend(rows_left - 1, row, r, d, combos, rows) {
                return true;
            }
            rows.pop();
            combos.truncate(len);
        }
        false
    }
    let mut combos = vec![(0u32, 0u32)];
    let mut rows = Vec::new();
    if !extend(k, 0, r, d, &mut combos, &mut rows) {
        return None;
    }
    let gen: Vec<u32> = rows
        .iter()
        .enumerate()
        .map(|(i, &p)| (1u32 << (n - 1 - i as u32)) | p)
        .collect();
    Some(SmallCode::from_rows(n, &gen))
}

pub fn code_exists(n: u32, k: u32, d: u32) -> bool {
    k == 0 || d == 0 || find_code(n, k, d).is_some()
}

/// One code of largest distance for each `(n, k)` with `k <= min(n, max_k)`.
pub fn optimal_codes(max_n: u32, max_k: u32) -> Vec<SmallCode> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 1..=n.min(max_k) {
            let mut d = griesmer_dmax(n, k, 2);
            loop {
                if let Some(c) = find_code(n, k, d) {
                    out.push(c);
                    break;
                }
                d -= 1;
            }
        }
    }
    out
}

/// Exact `dmax(n, k)` for `1 <= k <= min(n, max_k)`, `n <= max_n`.
pub fn exact_table(max_n: u32, max_k: u32) -> BoundsTable {
    let mut t = BoundsTable::new();
    for n in 1..=max_n {
        for k in 1..=n.min(max_k) {
            let mut d = griesmer_dmax(n, k, 2);
            while d > 1 && !code_exists(n, k, d) {
                d -= 1;
            }
            t.insert(n, k, d, "exhaustive");
        }
    }
    t
}

/// Exact table for `n <= 14`, `k <= 6`, computed once per test binary.
pub fn small_table() -> &'static BoundsTable {
    static T: OnceLock<BoundsTable> = OnceLock::new();
    T.get_or_init(|| exact_table(14, 6))
}

/// Exhaustive enumeration of every count vector with the right total,
/// accumulating dual sums incrementally in i64.
pub struct Brute {
    k: u32,
    weights: Vec<u32>,
    // kr[t][j] = K_j(weights[t])
    kr: Vec<Vec<i64>>,
    a1_ok: Box<dyn Fn(i64) -> bool>,
}

impl Brute {
    fn new(prob: &FeasibilityProblem) -> Self {
        let ctx = KrawtchoukContext::binary(prob.n);
        let kr = prob
            .weights
            .iter()
            .map(|&w| {
                (0..=prob.n)
                    .map(|j| krawtchouk(&ctx, j, w).unwrap().to_i64().unwrap())
                    .collect()
            })
            .collect();
        let range = prob.a1_values();
        Self {
            k: prob.k,
            weights: prob.weights.clone(),
            kr,
            a1_ok: Box::new(move |a1| a1 >= 0 && range.contains(&(a1 as u64))),
        }
    }

    fn feasible(&self, n: u32) -> bool {
        // K_j(0) = C(n, j)
        let ctx = KrawtchoukContext::binary(n);
        let mut sums: Vec<i64> = (0..=n)
            .map(|j| krawtchouk(&ctx, j, 0).unwrap().to_i64().unwrap())
            .collect();
        let total = (1i64 << self.k) - 1;
        self.walk(0, total, &mut sums)
    }

    fn walk(&self, t: usize, left: i64, sums: &mut Vec<i64>) -> bool {
        let m = 1i64 << self.k;
        if t + 1 == self.weights.len() {
            for (s, kv) in sums.iter_mut().zip(&self.kr[t]) {
                *s += kv * left;
            }
            let ok = sums.iter().all(|&s| s >= 0 && s % m == 0) && (self.a1_ok)(sums[1] / m);
            for (s, kv) in sums.iter_mut().zip(&self.kr[t]) {
                *s -= kv * left;
            }
            return ok;
        }
        for c in 0..=left {
            for (s, kv) in sums.iter_mut().zip(&self.kr[t]) {
                *s += kv * c;
            }
            let found = self.walk(t + 1, left - c, sums);
            for (s, kv) in sums.iter_mut().zip(&self.kr[t]) {
                *s -= kv * c;
            }
            if found {
                return true;
            }
        }
        false
    }
}

/// Feasibility of `prob` by brute force, without any pruning.
pub fn brute_feasible(prob: &FeasibilityProblem) -> bool {
    Brute::new(prob).feasible(prob.n)
}

/// Generator rows of a standard `[7,4,3]` Hamming code, grouped as identity | parity.
#[allow(clippy::unusual_byte_groupings)]
pub const HAMMING_ROWS: [u32; 4] = [0b1000_110, 0b0100_101, 0b0010_011, 0b0001_111];
