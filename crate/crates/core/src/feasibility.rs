//! Exact integer feasibility of the binary MacWilliams system over a fixed
//! set of candidate weights.
//!
//! The first two power moments eliminate the two largest weights; the
//! remaining counts are enumerated depth-first with interval bounds, and
//! each complete candidate is screened by the second moment, congruences
//! modulo `2^k`, low-order nonnegativity and finally the full transform.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::CodeParams;
use crate::combinatorics::KrawtchoukContext;
use crate::error::{Error, Result};
use crate::spectra::{macwilliams_dual, DualSpectrum, WeightDistribution};

/// How `A_1^perp` enters a problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum A1Constraint {
    Fixed {
        value: u64,
    },
    /// Unknown, ranging over `0..=max`.
    Bounded {
        max: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeasibilityProblem {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    /// Candidate nonzero weights, strictly increasing.
    pub weights: Vec<u32>,
    pub a1: A1Constraint,
}

impl FeasibilityProblem {
    /// Admissible `A_1^perp` values, ascending.
    pub fn a1_values(&self) -> std::ops::RangeInclusive<u64> {
        match self.a1 {
            A1Constraint::Fixed { value } => value..=value,
            A1Constraint::Bounded { max } => 0..=max,
        }
    }

    /// Calls `f` on every nonnegative integer solution of the first two
    /// moments for the given `A_1^perp`, in lexicographic order.
    pub fn for_each_leaf(&self, a1: u64, mut f: impl FnMut(&[u64])) -> Result<()> {
        let space = LeafSpace::new(self, a1)?;
        let mut v = vec![0i128; self.weights.len()];
        let mut out = vec![0u64; self.weights.len()];
        space.walk(0, space.r, space.s, &mut v, &mut |vals: &[i128]| {
            for (o, x) in out.iter_mut().zip(vals) {
                *o = *x as u64;
            }
            f(&out);
            true
        });
        Ok(())
    }
}

impl fmt::Display for FeasibilityProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(u32::to_string).collect();
        write!(
            f,
            "[{},{},{}] over {{{}}}, ",
            self.n,
            self.k,
            self.d,
            ws.join(",")
        )?;
        match self.a1 {
            A1Constraint::Fixed { value } => write!(f, "A1 = {value}"),
            A1Constraint::Bounded { max } => write!(f, "0 <= A1 <= {max}"),
        }
    }
}

/// Largest `A_1^perp` compatible with the first moment when every nonzero
/// word has weight at least `w_min`.
pub fn a1_upper_bound(n: u32, k: u32, w_min: u32) -> Option<u64> {
    // 2^(k-1) (n - a1) >= w_min (2^k - 1)
    let half = 1i128 << (k - 1);
    let need = i128::from(w_min) * ((1i128 << k) - 1);
    let max = i128::from(n) - (need + half - 1) / half;
    (max >= 0).then_some(max as u64)
}

/// Builds the feasibility problem for `p` over weight set `weights`.
pub fn build_problem(
    p: &CodeParams,
    weights: &[u32],
    a1_dual_known: Option<u64>,
) -> Result<FeasibilityProblem> {
    if p.q != 2 {
        return Err(Error::Unsupported(
            "feasibility search is binary only".into(),
        ));
    }
    p.validate()?;
    if p.k > 60 {
        return Err(Error::Unsupported(format!(
            "dimension {} too large for the search",
            p.k
        )));
    }
    let mut ws = weights.to_vec();
    ws.sort_unstable();
    ws.dedup();
    if ws.is_empty() {
        return Err(Error::Precondition("empty weight set".into()));
    }
    if let Some(&w) = ws.iter().find(|&&w| w < p.d || w > p.n) {
        return Err(Error::Precondition(format!(
            "weight {w} outside [{}, {}]",
            p.d, p.n
        )));
    }
    let a1 = match a1_dual_known {
        Some(value) => A1Constraint::Fixed { value },
        None => match a1_upper_bound(p.n, p.k, ws[0]) {
            Some(max) => A1Constraint::Bounded { max },
            // no admissible value at all; an empty range is still a valid problem
            None => A1Constraint::Fixed {
                value: u64::from(p.n) + 1,
            },
        },
    };
    Ok(FeasibilityProblem {
        n: p.n,
        k: p.k,
        d: p.d,
        weights: ws,
        a1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Dual indices screened by congruence and nonnegativity before the
    /// full transform.
    pub prune_indices: Vec<u32>,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            prune_indices: (1..=12).collect(),
            node_budget: None,
            time_budget: None,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PruneRule {
    /// `A_2^perp` from the second moment is negative.
    SecondMoment,
    /// Some screened `A_j^perp` is not an integer.
    Congruence,
    /// Some screened `A_j^perp` is negative.
    Nonnegativity,
    /// The full transform has a non-integral or negative entry.
    FullTransform,
}

impl fmt::Display for PruneRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PruneRule::SecondMoment => "second-moment",
            PruneRule::Congruence => "congruence",
            PruneRule::Nonnegativity => "nonnegativity",
            PruneRule::FullTransform => "full-transform",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafOutcome {
    Pruned(PruneRule),
    /// Every dual coefficient is a nonnegative integer.
    Feasible,
}

/// Record of an exhausted search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExhaustionCertificate {
    pub problem: FeasibilityProblem,
    pub prune_indices: Vec<u32>,
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// Complete candidates satisfying the first two moments.
    pub leaves: u64,
    pub eliminated: BTreeMap<PruneRule, u64>,
}

impl fmt::Display for ExhaustionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} nodes, {} leaves",
            self.problem, self.nodes, self.leaves
        )?;
        for (rule, c) in &self.eliminated {
            write!(f, ", {rule} {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityVerdict {
    Feasible {
        a1: u64,
        witness: WeightDistribution,
        dual: DualSpectrum,
    },
    Infeasible(ExhaustionCertificate),
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Feasible { .. })
    }
}

/// First condition violated by a candidate spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributionViolation {
    MissingUnitZero,
    WrongTotal { total: BigUint },
    NonIntegralDual { j: u32 },
    NegativeDual { j: u32 },
    DualTooLarge { j: u32 },
    WrongDualMass,
}

impl fmt::Display for DistributionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionViolation::MissingUnitZero => write!(f, "A_0 != 1"),
            DistributionViolation::WrongTotal { total } => write!(f, "total {total} is not 2^k"),
            DistributionViolation::NonIntegralDual { j } => write!(f, "dual A_{j} not an integer"),
            DistributionViolation::NegativeDual { j } => write!(f, "dual A_{j} negative"),
            DistributionViolation::DualTooLarge { j } => write!(f, "dual A_{j} >= 2^(n-k)"),
            DistributionViolation::WrongDualMass => write!(f, "dual total is not 2^(n-k)"),
        }
    }
}

/// Checks that `a` could be the spectrum of a binary `[n, k]` code.
pub fn check_distribution(
    a: &WeightDistribution,
    k: u32,
) -> std::result::Result<(), DistributionViolation> {
    if !a.has_unit_zero() {
        return Err(DistributionViolation::MissingUnitZero);
    }
    let total = a.total();
    if total != BigUint::one() << k as usize {
        return Err(DistributionViolation::WrongTotal { total });
    }
    let dual = macwilliams_dual(a, k).map_err(|_| DistributionViolation::MissingUnitZero)?;
    if let Some(j) = dual.first_non_integral() {
        return Err(DistributionViolation::NonIntegralDual { j });
    }
    if let Some(j) = dual.first_negative() {
        return Err(DistributionViolation::NegativeDual { j });
    }
    let cap = BigInt::one() << (a.n().saturating_sub(k)) as usize;
    if let Some((j, _)) = dual.iter().find(|(j, v)| *j > 0 && v.to_integer() >= cap) {
        if a.n() >= k {
            return Err(DistributionViolation::DualTooLarge { j });
        }
    }
    if a.n() >= k && dual.total() != num_rational::BigRational::from_integer(cap) {
        return Err(DistributionViolation::WrongDualMass);
    }
    Ok(())
}

/// Enumeration domain for one value of `A_1^perp`.
struct LeafSpace {
    w: Vec<i128>,
    r: i128,
    s: i128,
}

impl LeafSpace {
    fn new(prob: &FeasibilityProblem, a1: u64) -> Result<Self> {
        if prob.k > 60 {
            return Err(Error::Unsupported(format!(
                "dimension {} too large",
                prob.k
            )));
        }
        let r = (1i128 << prob.k) - 1;
        let s = (1i128 << (prob.k - 1)) * (i128::from(prob.n) - i128::from(a1));
        Ok(Self {
            w: prob.weights.iter().map(|&w| i128::from(w)).collect(),
            r,
            s,
        })
    }

    fn m(&self) -> usize {
        self.w.len()
    }

    /// Value range for variable `p` given remaining count `r` and weight sum `s`.
    fn range(&self, p: usize, r: i128, s: i128) -> (i128, i128) {
        let m = self.m();
        let (wp, wn, wmax) = (self.w[p], self.w[p + 1], self.w[m - 1]);
        let lo = ceil_div(r * wn - s, wn - wp).max(0);
        let hi = floor_div(r * wmax - s, wmax - wp).min(r);
        (lo, hi)
    }

    /// Depth-first walk from variable `p`; `leaf` returns false to stop.
    /// Returns false when stopped.
    fn walk(
        &self,
        p: usize,
        r: i128,
        s: i128,
        v: &mut [i128],
        leaf: &mut dyn FnMut(&[i128]) -> bool,
    ) -> bool {
        let m = self.m();
        if m == 1 {
            if r * self.w[0] == s {
                v[0] = r;
                return leaf(v);
            }
            return true;
        }
        if p + 2 == m {
            let (wa, wb) = (self.w[m - 2], self.w[m - 1]);
            let num = s - wa * r;
            let den = wb - wa;
            if num < 0 || num % den != 0 {
                return true;
            }
            let vb = num / den;
            if vb > r {
                return true;
            }
            v[m - 2] = r - vb;
            v[m - 1] = vb;
            return leaf(v);
        }
        let (lo, hi) = self.range(p, r, s);
        let mut x = lo;
        while x <= hi {
            v[p] = x;
            if !self.walk(p + 1, r - x, s - self.w[p] * x, v, leaf) {
                return false;
            }
            x += 1;
        }
        true
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// Screening row for one dual index.
struct Row {
    modular: Vec<u64>,
    exact: Option<Vec<i128>>,
    big: Vec<BigInt>,
}

/// Leaf classifier shared by the search and its tests.
pub struct Pruner {
    n: u32,
    k: u32,
    weights: Vec<u32>,
    rows: Vec<Row>,
    columns: Vec<Arc<[BigInt]>>,
    mask: u64,
}

impl Pruner {
    pub fn new(prob: &FeasibilityProblem, cfg: &SearchConfig) -> Result<Self> {
        if prob.k > 60 {
            return Err(Error::Unsupported(format!(
                "dimension {} too large",
                prob.k
            )));
        }
        let ctx = KrawtchoukContext::binary(prob.n);
        let mut columns = vec![ctx.column(0)?];
        for &w in &prob.weights {
            columns.push(ctx.column(w)?);
        }
        let total_bits = 2 + (prob.weights.len() as u64 + 1).ilog2() as u64 + u64::from(prob.k);
        let rows = cfg
            .prune_indices
            .iter()
            .filter(|&&j| j >= 1 && j <= prob.n)
            .map(|&j| {
                let big: Vec<BigInt> = columns.iter().map(|c| c[j as usize].clone()).collect();
                let modular = big.iter().map(low_u64).collect();
                let fits = big.iter().all(|v| v.bits() + total_bits < 126);
                let exact = fits.then(|| big.iter().map(|v| v.to_i128().unwrap()).collect());
                Row {
                    modular,
                    exact,
                    big,
                }
            })
            .collect();
        let mask = if prob.k >= 64 {
            u64::MAX
        } else {
            (1u64 << prob.k) - 1
        };
        Ok(Self {
            n: prob.n,
            k: prob.k,
            weights: prob.weights.clone(),
            rows,
            columns,
            mask,
        })
    }

    /// Classifies a complete candidate. `counts` is aligned with the
    /// problem's weights and must satisfy the first two moments for `a1`.
    pub fn classify(&self, a1: u64, counts: &[u64]) -> LeafOutcome {
        let c: Vec<i128> = counts.iter().map(|&x| i128::from(x)).collect();
        self.classify_i128(a1, &c)
    }

    fn classify_i128(&self, a1: u64, c: &[i128]) -> LeafOutcome {
        // 4 sum w^2 A_w - 2^k (n(n+1) - 2 n a1) = 2^(k+1) A_2^perp
        let n = i128::from(self.n);
        let sq: i128 = self
            .weights
            .iter()
            .zip(c)
            .map(|(&w, &x)| i128::from(w) * i128::from(w) * x)
            .sum();
        let t = 4 * sq - (1i128 << self.k) * (n * (n + 1) - 2 * n * i128::from(a1));
        if t < 0 {
            return LeafOutcome::Pruned(PruneRule::SecondMoment);
        }
        for row in &self.rows {
            let mut acc = row.modular[0];
            for (kv, &x) in row.modular[1..].iter().zip(c) {
                acc = acc.wrapping_add(kv.wrapping_mul(x as u64));
            }
            if acc & self.mask != 0 {
                return LeafOutcome::Pruned(PruneRule::Congruence);
            }
        }
        for row in &self.rows {
            let negative = match &row.exact {
                Some(ex) => ex[0] + ex[1..].iter().zip(c).map(|(kv, &x)| kv * x).sum::<i128>() < 0,
                None => {
                    let mut acc = row.big[0].clone();
                    for (kv, &x) in row.big[1..].iter().zip(c) {
                        acc += kv * BigInt::from(x);
                    }
                    acc.is_negative()
                }
            };
            if negative {
                return LeafOutcome::Pruned(PruneRule::Nonnegativity);
            }
        }
        if self.full_transform_ok(c) {
            LeafOutcome::Feasible
        } else {
            LeafOutcome::Pruned(PruneRule::FullTransform)
        }
    }

    fn full_transform_ok(&self, c: &[i128]) -> bool {
        let counts: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        for j in 0..=self.n as usize {
            let mut acc = self.columns[0][j].clone();
            for (col, x) in self.columns[1..].iter().zip(&counts) {
                if !x.is_zero() {
                    acc += &col[j] * x;
                }
            }
            if acc.is_negative()
                || (!acc.is_zero() && acc.trailing_zeros().unwrap_or(0) < u64::from(self.k))
            {
                return false;
            }
        }
        true
    }
}

fn low_u64(v: &BigInt) -> u64 {
    let mag = v.magnitude().iter_u64_digits().next().unwrap_or(0);
    if v.is_negative() {
        mag.wrapping_neg()
    } else {
        mag
    }
}

#[derive(Default, Clone)]
struct Tally {
    nodes: u64,
    leaves: u64,
    eliminated: BTreeMap<PruneRule, u64>,
}

impl Tally {
    fn merge(&mut self, o: &Tally) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        for (r, c) in &o.eliminated {
            *self.eliminated.entry(*r).or_default() += c;
        }
    }
}

struct Shared {
    nodes: AtomicU64,
    exhausted: AtomicBool,
    best_hit: AtomicUsize,
    node_budget: Option<u64>,
    deadline: Option<Instant>,
}

enum PartOutcome {
    Done(Tally, Option<Vec<i128>>),
    Cancelled,
    Exhausted,
}

/// Decides the problem exactly, or fails with [`Error::BudgetExhausted`].
pub fn search(prob: &FeasibilityProblem, cfg: &SearchConfig) -> Result<FeasibilityVerdict> {
    let pruner = Pruner::new(prob, cfg)?;
    let shared = Shared {
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        best_hit: AtomicUsize::new(usize::MAX),
        node_budget: cfg.node_budget,
        deadline: cfg.time_budget.map(|t| Instant::now() + t),
    };
    let mut tally = Tally::default();
    let a1_max = a1_upper_bound(prob.n, prob.k, prob.weights[0]);
    for a1 in prob.a1_values() {
        if a1_max.is_none_or(|m| a1 > m) {
            continue;
        }
        let space = LeafSpace::new(prob, a1)?;
        shared.best_hit.store(usize::MAX, Ordering::SeqCst);
        let parts: Vec<i128> = if space.m() >= 3 {
            let (lo, hi) = space.range(0, space.r, space.s);
            (lo..=hi).collect()
        } else {
            vec![-1]
        };
        let run = |(idx, &x): (usize, &i128)| run_partition(&space, &pruner, &shared, a1, idx, x);
        let outcomes: Vec<PartOutcome> = if cfg.parallel {
            parts.par_iter().enumerate().map(run).collect()
        } else {
            parts.iter().enumerate().map(run).collect()
        };
        let mut hit = None;
        for o in outcomes {
            match o {
                PartOutcome::Done(t, found) => {
                    tally.merge(&t);
                    if hit.is_none() {
                        hit = found;
                    }
                }
                PartOutcome::Cancelled => {}
                PartOutcome::Exhausted => {
                    return Err(Error::BudgetExhausted {
                        nodes: shared.nodes.load(Ordering::SeqCst),
                        reason: budget_reason(&shared),
                    })
                }
            }
        }
        if let Some(v) = hit {
            let witness = WeightDistribution::code(
                prob.n,
                prob.weights
                    .iter()
                    .zip(&v)
                    .map(|(&w, &x)| (w, BigUint::from(x as u64))),
            )?;
            let dual = macwilliams_dual(&witness, prob.k)?;
            return Ok(FeasibilityVerdict::Feasible { a1, witness, dual });
        }
    }
    Ok(FeasibilityVerdict::Infeasible(ExhaustionCertificate {
        problem: prob.clone(),
        prune_indices: cfg.prune_indices.clone(),
        nodes: tally.nodes,
        leaves: tally.leaves,
        eliminated: tally.eliminated,
    }))
}

fn budget_reason(shared: &Shared) -> String {
    match (shared.node_budget, shared.deadline) {
        (Some(b), _) if shared.nodes.load(Ordering::SeqCst) >= b => format!("node budget {b}"),
        _ => "time budget".to_string(),
    }
}

struct Budget<'a> {
    shared: &'a Shared,
    idx: usize,
    nodes: u64,
    cancelled: bool,
}

impl Budget<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        let total = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.shared.node_budget.is_some_and(|b| total > b) {
            self.shared.exhausted.store(true, Ordering::Relaxed);
        }
        if self.nodes.is_multiple_of(4096) {
            if self.shared.deadline.is_some_and(|d| Instant::now() > d) {
                self.shared.exhausted.store(true, Ordering::Relaxed);
            }
            if self.shared.best_hit.load(Ordering::Relaxed) < self.idx {
                self.cancelled = true;
            }
        }
        !self.cancelled && !self.shared.exhausted.load(Ordering::Relaxed)
    }
}

fn run_partition(
    space: &LeafSpace,
    pruner: &Pruner,
    shared: &Shared,
    a1: u64,
    idx: usize,
    first: i128,
) -> PartOutcome {
    if shared.best_hit.load(Ordering::SeqCst) < idx {
        return PartOutcome::Cancelled;
    }
    let mut tally = Tally::default();
    let mut found: Option<Vec<i128>> = None;
    let mut v = vec![0i128; space.m()];
    let mut on_leaf = |vals: &[i128]| -> bool {
        tally.leaves += 1;
        match pruner.classify_i128(a1, vals) {
            LeafOutcome::Pruned(rule) => {
                *tally.eliminated.entry(rule).or_default() += 1;
                true
            }
            LeafOutcome::Feasible => {
                found = Some(vals.to_vec());
                shared.best_hit.fetch_min(idx, Ordering::SeqCst);
                false
            }
        }
    };
    let mut budget = Budget {
        shared,
        idx,
        nodes: 0,
        cancelled: false,
    };
    if budget.tick() {
        if first < 0 {
            space.walk(0, space.r, space.s, &mut v, &mut on_leaf);
        } else {
            v[0] = first;
            let (r, s) = (space.r - first, space.s - space.w[0] * first);
            walk_guarded(space, 1, r, s, &mut v, &mut on_leaf, &mut budget);
        }
    }
    tally.nodes = budget.nodes;
    if found.is_some() {
        return PartOutcome::Done(tally, found);
    }
    if shared.exhausted.load(Ordering::SeqCst) {
        return PartOutcome::Exhausted;
    }
    if budget.cancelled {
        return PartOutcome::Cancelled;
    }
    PartOutcome::Done(tally, None)
}

/// Like [`LeafSpace::walk`] but charges every inner node to `budget`.
fn walk_guarded(
    space: &LeafSpace,
    p: usize,
    r: i128,
    s: i128,
    v: &mut [i128],
    leaf: &mut dyn FnMut(&[i128]) -> bool,
    budget: &mut Budget<'_>,
) -> bool {
    if p + 2 >= space.m() {
        return space.walk(p, r, s, v, leaf);
    }
    let (lo, hi) = space.range(p, r, s);
    let mut x = lo;
    while x <= hi {
        if !budget.tick() {
            return false;
        }
        v[p] = x;
        if !walk_guarded(space, p + 1, r - x, s - space.w[p] * x, v, leaf, budget) {
            return false;
        }
        x += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(n: u32, k: u32, d: u32) -> CodeParams {
        CodeParams::binary(n, k, d).unwrap()
    }

    #[test]
    fn hamming_is_feasible() {
        let prob = build_problem(&bp(7, 4, 3), &[3, 4, 7], None).unwrap();
        match search(&prob, &SearchConfig::default()).unwrap() {
            FeasibilityVerdict::Feasible { witness, dual, a1 } => {
                assert_eq!(a1, 0);
                assert_eq!(witness.to_string(), "{0:1, 3:7, 4:7, 7:1}");
                assert_eq!(dual.to_string(), "{0:1, 4:7}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lemma_two_instance_is_infeasible() {
        let prob = build_problem(&bp(356, 10, 176), &[176, 192], None).unwrap();
        assert!(!search(&prob, &SearchConfig::default())
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn build_problem_rejects_bad_weights() {
        assert!(build_problem(&bp(7, 4, 3), &[2, 3], None).is_err());
        assert!(build_problem(&bp(7, 4, 3), &[8], None).is_err());
        assert!(build_problem(&bp(7, 4, 3), &[], None).is_err());
    }

    #[test]
    fn check_distribution_examples() {
        let h = WeightDistribution::code(7, [(3u32, 7u32), (4, 7), (7, 1)]).unwrap();
        assert_eq!(check_distribution(&h, 4), Ok(()));
        let bad = WeightDistribution::code(324, [(160u32, 1023u32)]).unwrap();
        assert_eq!(
            check_distribution(&bad, 10),
            Err(DistributionViolation::NonIntegralDual { j: 1 })
        );
        let zero = WeightDistribution::code(5, Vec::<(u32, u32)>::new()).unwrap();
        assert_eq!(check_distribution(&zero, 0), Ok(()));
    }

    #[test]
    fn budget_is_reported() {
        let prob = build_problem(
            &bp(60, 6, 20),
            &(20..=60).step_by(2).collect::<Vec<_>>(),
            None,
        )
        .unwrap();
        let cfg = SearchConfig {
            node_budget: Some(10),
            ..SearchConfig::default()
        };
        assert!(matches!(
            search(&prob, &cfg),
            Err(Error::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn a1_bound() {
        assert_eq!(a1_upper_bound(7, 4, 3), Some(1));
        assert_eq!(a1_upper_bound(324, 10, 160), Some(4));
        assert_eq!(a1_upper_bound(10, 4, 8), None);
    }
}
