//! Weight exclusion for a hypothetical binary `[n, k, d]` code.
//!
//! Rules run in a fixed order: below-distance, odd parity, residual descent
//! on `[d, 2d)`, the `2d` shortening argument, the codeword-sum argument on
//! `(2d, n]`, and finally sub-lemma refutation of descent targets.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    descent_chain, griesmer_length, BoundsTable, ChainVerdict, CodeParams, DescentChain,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionRule {
    BelowDistance,
    OddParity,
    DescentTable,
    DescentGriesmer,
    Shortening2d,
    SumArgument,
    Sublemma,
}

impl fmt::Display for ExclusionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExclusionRule::BelowDistance => "below-distance",
            ExclusionRule::OddParity => "odd-parity",
            ExclusionRule::DescentTable => "descent-table",
            ExclusionRule::DescentGriesmer => "descent-griesmer",
            ExclusionRule::Shortening2d => "shortening-2d",
            ExclusionRule::SumArgument => "sum-argument",
            ExclusionRule::Sublemma => "sublemma",
        })
    }
}

/// One exclusion together with the data needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule", deny_unknown_fields)]
pub enum Exclusion {
    /// Every weight in `[1, d)`.
    BelowDistance { d: u32 },
    /// Every odd weight; `d` is even.
    OddParity { d: u32 },
    /// The residual descent from a weight-`weight` word is contradictory.
    Descent { weight: u32, chain: DescentChain },
    /// Weight `2d`: every minimum-weight word would lie inside the
    /// weight-`2d` support, leaving a `[2d, k, d]` code below the Griesmer
    /// length. No possible weight lies in `(d, window_hi]`.
    Shortening2d {
        weight: u32,
        griesmer_length: u64,
        window_hi: u32,
    },
    /// No possible weight lies in `[lo, hi]`, the weights reachable by adding
    /// a minimum-weight word.
    SumArgument { weight: u32, lo: u32, hi: u32 },
    /// Node `node` of `chain` is refuted by sub-lemma `lemma`.
    Sublemma {
        weight: u32,
        chain: DescentChain,
        node: usize,
        lemma: usize,
    },
}

impl Exclusion {
    pub fn rule(&self) -> ExclusionRule {
        match self {
            Exclusion::BelowDistance { .. } => ExclusionRule::BelowDistance,
            Exclusion::OddParity { .. } => ExclusionRule::OddParity,
            Exclusion::Descent { chain, .. } => match chain.verdict {
                ChainVerdict::ContradictionByGriesmer { .. } => ExclusionRule::DescentGriesmer,
                _ => ExclusionRule::DescentTable,
            },
            Exclusion::Shortening2d { .. } => ExclusionRule::Shortening2d,
            Exclusion::SumArgument { .. } => ExclusionRule::SumArgument,
            Exclusion::Sublemma { .. } => ExclusionRule::Sublemma,
        }
    }

    pub fn covers(&self, w: u32) -> bool {
        match self {
            Exclusion::BelowDistance { d } => w >= 1 && w < *d,
            Exclusion::OddParity { .. } => w % 2 == 1,
            Exclusion::Descent { weight, .. }
            | Exclusion::Shortening2d { weight, .. }
            | Exclusion::SumArgument { weight, .. }
            | Exclusion::Sublemma { weight, .. } => *weight == w,
        }
    }

    /// The single weight this exclusion is about, if it covers exactly one.
    pub fn weight(&self) -> Option<u32> {
        match self {
            Exclusion::BelowDistance { .. } | Exclusion::OddParity { .. } => None,
            Exclusion::Descent { weight, .. }
            | Exclusion::Shortening2d { weight, .. }
            | Exclusion::SumArgument { weight, .. }
            | Exclusion::Sublemma { weight, .. } => Some(*weight),
        }
    }
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exclusion::BelowDistance { d } => write!(f, "below-distance: weights < {d}"),
            Exclusion::OddParity { d } => write!(f, "odd-parity: d = {d} even, weights even"),
            Exclusion::Descent { chain, .. } => write!(f, "{}: {chain}", self.rule()),
            Exclusion::Shortening2d { griesmer_length, window_hi, weight } => write!(
                f,
                "shortening-2d: no weight in ({}, {window_hi}], Griesmer length {griesmer_length} > {weight}",
                weight / 2
            ),
            Exclusion::SumArgument { lo, hi, .. } => {
                write!(f, "sum-argument: no possible weight in [{lo}, {hi}]")
            }
            Exclusion::Sublemma { chain, node, lemma, .. } => {
                let t = chain.nodes[*node];
                write!(f, "sublemma: [{},{},>={}] refuted by lemma {lemma}", t.n, t.k, t.d)
            }
        }
    }
}

/// Status of a single weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightVerdict {
    pub weight: u32,
    pub excluded_by: Option<Exclusion>,
}

impl WeightVerdict {
    pub fn possible(weight: u32) -> Self {
        Self {
            weight,
            excluded_by: None,
        }
    }

    pub fn is_excluded(&self) -> bool {
        self.excluded_by.is_some()
    }

    pub fn rule(&self) -> Option<ExclusionRule> {
        self.excluded_by.as_ref().map(Exclusion::rule)
    }
}

/// Parity restriction available for a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityRule {
    /// A basis of minimum-weight words with `d` even forces even weights.
    EvenOnly,
    Unrestricted,
}

impl ParityRule {
    pub fn allows(&self, w: u32) -> bool {
        match self {
            ParityRule::EvenOnly => w.is_multiple_of(2),
            ParityRule::Unrestricted => true,
        }
    }
}

pub fn even_weight_restriction(p: &CodeParams) -> ParityRule {
    if p.q == 2 && p.d.is_multiple_of(2) {
        ParityRule::EvenOnly
    } else {
        ParityRule::Unrestricted
    }
}

fn require_binary(p: &CodeParams) -> Result<()> {
    if p.q != 2 {
        return Err(Error::Unsupported(format!(
            "{p}: exclusion rules are binary only"
        )));
    }
    Ok(())
}

/// Residual-descent test for `d <= w < 2d`.
pub fn exclude_by_descent(p: &CodeParams, w: u32, table: &BoundsTable) -> Result<WeightVerdict> {
    require_binary(p)?;
    if w < p.d || w >= 2 * p.d || w > p.n {
        return Err(Error::Precondition(format!(
            "descent needs {} <= w < {} and w <= {}, got {w}",
            p.d,
            2 * p.d,
            p.n
        )));
    }
    let chain = descent_chain(p, w, table)?;
    let excluded_by = chain
        .verdict
        .is_contradiction()
        .then_some(Exclusion::Descent { weight: w, chain });
    Ok(WeightVerdict {
        weight: w,
        excluded_by,
    })
}

/// Interval `[w - d, min(w + d, 2n - w - d)]` of weights of `c + m` for a
/// weight-`w` word `c` and a minimum-weight word `m`.
pub fn sum_interval(p: &CodeParams, w: u32) -> (u32, u32) {
    let hi = (w + p.d).min(2 * p.n - w - p.d);
    (w - p.d, hi)
}

/// Codeword-sum test for `2d < w <= n` against the currently possible weights.
pub fn exclude_by_sum(w: u32, p: &CodeParams, possible: &BTreeSet<u32>) -> Result<WeightVerdict> {
    require_binary(p)?;
    if w <= 2 * p.d || w > p.n {
        return Err(Error::Precondition(format!(
            "sum argument needs {} < w <= {}, got {w}",
            2 * p.d,
            p.n
        )));
    }
    let (lo, hi) = sum_interval(p, w);
    let hit = possible.range(lo..=hi).next().is_some();
    let excluded_by = (!hit).then_some(Exclusion::SumArgument { weight: w, lo, hi });
    Ok(WeightVerdict {
        weight: w,
        excluded_by,
    })
}

/// Upper end of the window `(d, min(3d, 2n - 3d)]` that must be free of
/// possible weights for the shortening argument.
pub fn shortening_window(p: &CodeParams) -> u32 {
    (3 * p.d).min((2 * p.n).saturating_sub(3 * p.d))
}

/// The shortening test for weight exactly `2d`.
pub fn exclude_2d_shortening(p: &CodeParams, possible: &BTreeSet<u32>) -> Result<WeightVerdict> {
    require_binary(p)?;
    let w = 2 * p.d;
    if w > p.n {
        return Err(Error::Precondition(format!("2d = {w} exceeds n = {}", p.n)));
    }
    let gl = griesmer_length(p.k, p.d, 2);
    let window_hi = shortening_window(p);
    let window_clear = window_hi <= p.d || possible.range(p.d + 1..=window_hi).next().is_none();
    let excluded_by = (gl > u64::from(w) && window_clear).then_some(Exclusion::Shortening2d {
        weight: w,
        griesmer_length: gl,
        window_hi,
    });
    Ok(WeightVerdict {
        weight: w,
        excluded_by,
    })
}

/// Outcome of the `A_1^perp = 0` deduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum A1Verdict {
    /// The punctured parameters violate the Griesmer bound.
    ProvenByGriesmer {
        punctured: CodeParams,
        griesmer_length: u64,
    },
    /// The descent from the punctured parameters is contradictory.
    ProvenByChain {
        chain: DescentChain,
    },
    Unknown,
}

impl A1Verdict {
    pub fn is_proven(&self) -> bool {
        !matches!(self, A1Verdict::Unknown)
    }
}

/// Tries to show the code has no zero coordinate, i.e. `A_1^perp = 0`, by
/// refuting the punctured parameters `[n - 1, k, d]`.
pub fn dual_a1_zero(p: &CodeParams, table: &BoundsTable) -> Result<A1Verdict> {
    require_binary(p)?;
    if p.n <= 1 || p.d >= p.n || p.k >= p.n {
        return Ok(A1Verdict::Unknown);
    }
    let punctured = CodeParams::unchecked(p.n - 1, p.k, p.d, p.q);
    let gl = griesmer_length(p.k, p.d, 2);
    if gl > u64::from(punctured.n) {
        return Ok(A1Verdict::ProvenByGriesmer {
            punctured,
            griesmer_length: gl,
        });
    }
    if p.k < 2 {
        return Ok(A1Verdict::Unknown);
    }
    let chain = descent_chain(&punctured, p.d, table)?;
    if chain.verdict.is_contradiction() {
        Ok(A1Verdict::ProvenByChain { chain })
    } else {
        Ok(A1Verdict::Unknown)
    }
}

/// Source of recursive non-existence proofs for descent targets.
pub trait SublemmaOracle {
    /// Returns an identifier of a proof that no code with parameters
    /// `[target.n, target.k, >= target.d]` exists, if one can be found.
    fn refute(&mut self, target: &CodeParams) -> Option<usize>;
}

/// Oracle that never proves anything.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoOracle;

impl SublemmaOracle for NoOracle {
    fn refute(&mut self, _: &CodeParams) -> Option<usize> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Parity,
    Descent,
    Shortening,
    Sum,
    Sublemma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageSnapshot {
    pub stage: Stage,
    pub possible: Vec<u32>,
}

/// Result of [`candidate_weights`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateReport {
    pub params: CodeParams,
    /// Exclusions in the order they were derived.
    pub exclusions: Vec<Exclusion>,
    pub stages: Vec<StageSnapshot>,
    possible: BTreeSet<u32>,
}

impl CandidateReport {
    pub fn possible(&self) -> Vec<u32> {
        self.possible.iter().copied().collect()
    }

    pub fn possible_set(&self) -> &BTreeSet<u32> {
        &self.possible
    }

    pub fn after(&self, stage: Stage) -> Option<&[u32]> {
        self.stages
            .iter()
            .find(|s| s.stage == stage)
            .map(|s| s.possible.as_slice())
    }

    /// True when the minimum distance itself was excluded, so the
    /// parameters are contradictory.
    pub fn minimum_weight_excluded(&self) -> bool {
        !self.possible.contains(&self.params.d)
    }

    pub fn verdict(&self, w: u32) -> WeightVerdict {
        let excluded_by = self.exclusions.iter().find(|e| e.covers(w)).cloned();
        WeightVerdict {
            weight: w,
            excluded_by,
        }
    }

    /// One verdict per weight in `[1, n]`.
    pub fn verdicts(&self) -> Vec<WeightVerdict> {
        let mut out: Vec<WeightVerdict> =
            (1..=self.params.n).map(WeightVerdict::possible).collect();
        for e in &self.exclusions {
            match e.weight() {
                Some(w) => out[w as usize - 1].excluded_by = Some(e.clone()),
                None => {
                    for v in out
                        .iter_mut()
                        .filter(|v| v.excluded_by.is_none() && e.covers(v.weight))
                    {
                        v.excluded_by = Some(e.clone());
                    }
                }
            }
        }
        out
    }
}

/// Derives the possible nonzero weights of a hypothetical `[n, k, d]` code.
pub fn candidate_weights(
    p: &CodeParams,
    table: &BoundsTable,
    oracle: &mut dyn SublemmaOracle,
) -> Result<CandidateReport> {
    require_binary(p)?;
    p.validate()?;
    let mut exclusions = Vec::new();
    let mut stages = Vec::new();
    let mut possible: BTreeSet<u32> = (p.d..=p.n).collect();
    if p.d > 1 {
        exclusions.push(Exclusion::BelowDistance { d: p.d });
    }

    if even_weight_restriction(p) == ParityRule::EvenOnly {
        exclusions.push(Exclusion::OddParity { d: p.d });
        possible.retain(|w| w % 2 == 0);
    }
    stages.push(StageSnapshot {
        stage: Stage::Parity,
        possible: possible.iter().copied().collect(),
    });

    let sub2d: Vec<u32> = possible
        .range(p.d..(2 * p.d).min(p.n + 1))
        .copied()
        .collect();
    let mut chains: Vec<(u32, DescentChain)> = Vec::new();
    if p.k >= 2 {
        let results: Vec<Result<DescentChain>> = sub2d
            .par_iter()
            .map(|&w| descent_chain(p, w, table))
            .collect();
        for (&w, chain) in sub2d.iter().zip(results) {
            let chain = chain?;
            if chain.verdict.is_contradiction() {
                possible.remove(&w);
                exclusions.push(Exclusion::Descent { weight: w, chain });
            } else {
                chains.push((w, chain));
            }
        }
    }
    stages.push(StageSnapshot {
        stage: Stage::Descent,
        possible: possible.iter().copied().collect(),
    });

    if 2 * p.d <= p.n && possible.contains(&(2 * p.d)) {
        if let Some(e) = exclude_2d_shortening(p, &possible)?.excluded_by {
            possible.remove(&(2 * p.d));
            exclusions.push(e);
        }
    }
    stages.push(StageSnapshot {
        stage: Stage::Shortening,
        possible: possible.iter().copied().collect(),
    });

    // greatest fixpoint: drop weights until every survivor has a partner
    loop {
        let mut changed = false;
        let high: Vec<u32> = possible.range(2 * p.d + 1..).copied().collect();
        for w in high {
            if let Some(e) = exclude_by_sum(w, p, &possible)?.excluded_by {
                possible.remove(&w);
                exclusions.push(e);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    stages.push(StageSnapshot {
        stage: Stage::Sum,
        possible: possible.iter().copied().collect(),
    });

    if possible.contains(&p.d) {
        for (w, chain) in chains {
            if !possible.contains(&w) {
                continue;
            }
            let hit = chain
                .nodes
                .iter()
                .enumerate()
                .find_map(|(i, node)| oracle.refute(node).map(|lemma| (i, lemma)));
            if let Some((node, lemma)) = hit {
                possible.remove(&w);
                exclusions.push(Exclusion::Sublemma {
                    weight: w,
                    chain,
                    node,
                    lemma,
                });
                if w == p.d {
                    break;
                }
            }
        }
    }
    stages.push(StageSnapshot {
        stage: Stage::Sublemma,
        possible: possible.iter().copied().collect(),
    });

    Ok(CandidateReport {
        params: *p,
        exclusions,
        stages,
        possible,
    })
}
