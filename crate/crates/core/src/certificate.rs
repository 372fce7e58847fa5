//! Proof certificates: JSON serialization, digest and independent replay.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::{descent_chain, griesmer_length, BoundsTable, CodeParams};
use crate::error::{Error, Result};
use crate::exclusion::{
    dual_a1_zero, exclude_2d_shortening, exclude_by_descent, exclude_by_sum, A1Verdict, Exclusion,
};
use crate::feasibility::{
    a1_upper_bound, check_distribution, search, A1Constraint, ExhaustionCertificate,
    FeasibilityProblem, FeasibilityVerdict, SearchConfig,
};
use crate::spectra::{moment_solve_small, MomentStatus, MomentVerdict, WeightDistribution};

pub const FORMAT: &str = "codebound-certificate/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Nonexistent,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Nonexistent => "nonexistent",
            Verdict::Undecided => "undecided",
        })
    }
}

/// Outcome of a feasibility search as recorded in a proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum SearchOutcome {
    Exhausted {
        certificate: ExhaustionCertificate,
    },
    Witness {
        a1: u64,
        #[serde(with = "crate::serde_num::weight_map")]
        counts: BTreeMap<u32, u64>,
    },
    BudgetExhausted {
        nodes: u64,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum StepRule {
    /// The target is shorter than its Griesmer length.
    GriesmerBound {
        length: u64,
    },
    /// The bounds table caps `[n, k]` below the target distance.
    TableBound {
        dmax: u32,
        provenance: String,
    },
    Exclude {
        exclusion: Exclusion,
    },
    /// The minimum distance itself was excluded.
    MinimumWeightExcluded,
    DualA1 {
        verdict: A1Verdict,
    },
    Moments {
        weights: Vec<u32>,
        verdict: MomentVerdict,
    },
    Search {
        problem: FeasibilityProblem,
        outcome: SearchOutcome,
    },
    Undecided {
        reason: String,
    },
}

impl StepRule {
    pub fn is_terminal(&self) -> bool {
        match self {
            StepRule::GriesmerBound { .. }
            | StepRule::TableBound { .. }
            | StepRule::MinimumWeightExcluded => true,
            StepRule::Moments { verdict, .. } => verdict.status == MomentStatus::Infeasible,
            StepRule::Search { outcome, .. } => matches!(outcome, SearchOutcome::Exhausted { .. }),
            _ => false,
        }
    }
}

impl fmt::Display for StepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepRule::GriesmerBound { length } => write!(f, "Griesmer length {length} exceeds n"),
            StepRule::TableBound { dmax, provenance } => {
                write!(f, "table bound dmax = {dmax} ({provenance})")
            }
            StepRule::Exclude { exclusion } => write!(f, "{exclusion}"),
            StepRule::MinimumWeightExcluded => write!(f, "minimum weight excluded"),
            StepRule::DualA1 { verdict } => match verdict {
                A1Verdict::Unknown => write!(f, "A1 dual: unknown"),
                _ => write!(f, "A1 dual = 0"),
            },
            StepRule::Moments { weights, verdict } => {
                write!(
                    f,
                    "moments over {weights:?}: {}",
                    verdict.derivation().join("; ")
                )
            }
            StepRule::Search { outcome, problem } => match outcome {
                SearchOutcome::Exhausted { certificate } => {
                    write!(f, "search exhausted: {certificate}")
                }
                SearchOutcome::Witness { a1, counts } => {
                    write!(
                        f,
                        "search found witness {counts:?} with A1 = {a1} for {problem}"
                    )
                }
                SearchOutcome::BudgetExhausted { nodes, reason } => {
                    write!(
                        f,
                        "search undecided for {problem}: {reason} after {nodes} nodes"
                    )
                }
            },
            StepRule::Undecided { reason } => write!(f, "undecided: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub id: usize,
    /// Earlier steps whose conclusions this step depends on.
    pub uses: Vec<usize>,
    pub rule: StepRule,
}

/// A derivation about one parameter set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Proof {
    pub target: CodeParams,
    pub verdict: Verdict,
    pub steps: Vec<Step>,
    /// Weights still possible after the last exclusion.
    pub possible: Vec<u32>,
}

impl Proof {
    /// The moment step, if any.
    pub fn moments(&self) -> Option<&MomentVerdict> {
        self.steps.iter().find_map(|s| match &s.rule {
            StepRule::Moments { verdict, .. } => Some(verdict),
            _ => None,
        })
    }
}

/// Settings needed to replay a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub recursion_depth: u32,
    pub max_search_weights: usize,
    pub prune_indices: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub format: String,
    pub tool_version: String,
    pub table_fingerprint: String,
    pub settings: Settings,
    /// Sub-lemma proofs; each cites only lemmas with smaller index.
    pub lemmas: Vec<Proof>,
    pub proof: Proof,
    /// SHA-256 of the compact JSON encoding with this field empty.
    pub digest: String,
}

impl Certificate {
    pub fn compute_digest(&self) -> String {
        let mut c = self.clone();
        c.digest.clear();
        let bytes = serde_json::to_vec(&c).expect("certificate serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn seal(&mut self) {
        self.digest = self.compute_digest();
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }

    pub fn verdict(&self) -> Verdict {
        self.proof.verdict
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub verdict: Verdict,
    pub lemmas: usize,
    pub steps: usize,
    pub searches_replayed: usize,
}

fn fail(location: &str, message: impl Into<String>) -> Error {
    Error::VerificationFailed {
        location: location.to_string(),
        message: message.into(),
    }
}

/// Replays every step of `cert` against `table`.
pub fn verify(cert: &Certificate, table: &BoundsTable) -> Result<VerifyReport> {
    if cert.format != FORMAT {
        return Err(Error::MalformedCertificate(format!(
            "unknown format `{}`",
            cert.format
        )));
    }
    if cert.digest != cert.compute_digest() {
        return Err(Error::MalformedCertificate("digest mismatch".into()));
    }
    let actual = table.fingerprint();
    if cert.table_fingerprint != actual {
        return Err(Error::FingerprintMismatch {
            expected: cert.table_fingerprint.clone(),
            actual,
        });
    }
    let cfg = SearchConfig {
        prune_indices: cert.settings.prune_indices.clone(),
        ..SearchConfig::default()
    };
    let mut report = VerifyReport {
        verdict: cert.proof.verdict,
        lemmas: cert.lemmas.len(),
        steps: 0,
        searches_replayed: 0,
    };
    for (i, lemma) in cert.lemmas.iter().enumerate() {
        let loc = format!("lemma {i}");
        if lemma.verdict != Verdict::Nonexistent {
            return Err(fail(&loc, "lemma is not a non-existence proof"));
        }
        replay(
            lemma,
            &cert.lemmas[..i],
            table,
            &cfg,
            &cert.settings,
            &loc,
            &mut report,
        )?;
    }
    replay(
        &cert.proof,
        &cert.lemmas,
        table,
        &cfg,
        &cert.settings,
        "proof",
        &mut report,
    )?;
    Ok(report)
}

/// Running state of a replay: which step excluded each weight.
struct Excluded {
    by: Vec<Option<usize>>,
}

impl Excluded {
    fn possible(&self, from: u32) -> BTreeSet<u32> {
        (from..self.by.len() as u32)
            .filter(|&w| self.by[w as usize].is_none())
            .collect()
    }

    fn excluders(&self, lo: u32, hi: u32) -> BTreeSet<usize> {
        (lo..=hi.min(self.by.len() as u32 - 1))
            .filter_map(|w| self.by[w as usize])
            .collect()
    }
}

/// Dependencies of an exclusion given the weights already excluded.
pub(crate) fn exclusion_uses(p: &CodeParams, e: &Exclusion, by: &[Option<usize>]) -> Vec<usize> {
    let ex = Excluded { by: by.to_vec() };
    match e {
        Exclusion::SumArgument { lo, hi, .. } => ex.excluders(*lo, *hi).into_iter().collect(),
        Exclusion::Shortening2d { window_hi, .. } if *window_hi > p.d => {
            ex.excluders(p.d + 1, *window_hi).into_iter().collect()
        }
        _ => Vec::new(),
    }
}

fn replay(
    proof: &Proof,
    lemmas: &[Proof],
    table: &BoundsTable,
    cfg: &SearchConfig,
    settings: &Settings,
    loc: &str,
    report: &mut VerifyReport,
) -> Result<()> {
    let p = proof.target;
    if p.q != 2 {
        return Err(fail(loc, "only binary targets are supported"));
    }
    if p.n == 0 || p.k == 0 || p.n > 1 << 20 {
        return Err(fail(loc, format!("implausible target {p}")));
    }
    let mut ex = Excluded {
        by: vec![None; p.n as usize + 1],
    };
    let mut exclude_steps = Vec::new();
    let mut a1_step: Option<(usize, bool)> = None;
    for (pos, step) in proof.steps.iter().enumerate() {
        let sloc = format!("{loc}, step {pos}");
        if step.id != pos {
            return Err(fail(&sloc, format!("step id {} out of sequence", step.id)));
        }
        let expected_uses: Vec<usize> = match &step.rule {
            StepRule::GriesmerBound { length } => {
                let gl = griesmer_length(p.k, p.d, 2);
                if gl != *length || gl <= u64::from(p.n) {
                    return Err(fail(&sloc, format!("Griesmer length is {gl}, n = {}", p.n)));
                }
                vec![]
            }
            StepRule::TableBound { dmax, provenance } => {
                match table.entry(p.n, p.k) {
                    Some(e) if e.dmax == *dmax && &e.provenance == provenance && e.dmax < p.d => {}
                    _ => return Err(fail(&sloc, "table entry does not support the bound")),
                }
                vec![]
            }
            StepRule::Exclude { exclusion } => {
                check_exclusion(&p, exclusion, &ex, lemmas, table).map_err(|m| fail(&sloc, m))?;
                let uses = exclusion_uses(&p, exclusion, &ex.by);
                for w in 1..=p.n {
                    if ex.by[w as usize].is_none() && exclusion.covers(w) {
                        ex.by[w as usize] = Some(pos);
                    }
                }
                exclude_steps.push(pos);
                uses
            }
            StepRule::MinimumWeightExcluded => match ex.by[p.d as usize] {
                Some(s) => vec![s],
                None => return Err(fail(&sloc, "minimum weight is still possible")),
            },
            StepRule::DualA1 { verdict } => {
                let again = dual_a1_zero(&p, table).map_err(|e| fail(&sloc, e.to_string()))?;
                if &again != verdict {
                    return Err(fail(&sloc, "A1 deduction does not replay"));
                }
                a1_step = Some((pos, verdict.is_proven()));
                vec![]
            }
            StepRule::Moments { weights, verdict } => {
                let possible: Vec<u32> = ex.possible(1).into_iter().collect();
                if &possible != weights {
                    return Err(fail(&sloc, "moment weights differ from the possible set"));
                }
                let again = moment_solve_small(p.n, p.k, weights)
                    .map_err(|e| fail(&sloc, e.to_string()))?;
                if &again != verdict {
                    return Err(fail(&sloc, "moment derivation does not replay"));
                }
                exclude_steps.clone()
            }
            StepRule::Search { problem, outcome } => {
                let possible: Vec<u32> = ex.possible(1).into_iter().collect();
                if problem.weights != possible
                    || (problem.n, problem.k, problem.d) != (p.n, p.k, p.d)
                {
                    return Err(fail(&sloc, "search problem differs from the possible set"));
                }
                let mut uses = exclude_steps.clone();
                match problem.a1 {
                    A1Constraint::Fixed { value: 0 } => match a1_step {
                        Some((s, true)) => uses.push(s),
                        _ => return Err(fail(&sloc, "A1 = 0 used without proof")),
                    },
                    A1Constraint::Bounded { max } => {
                        if a1_upper_bound(p.n, p.k, possible[0]) != Some(max) {
                            return Err(fail(
                                &sloc,
                                "A1 range differs from the first-moment bound",
                            ));
                        }
                    }
                    A1Constraint::Fixed { .. } => {
                        if a1_upper_bound(p.n, p.k, possible[0]).is_some() {
                            return Err(fail(&sloc, "unsupported A1 constraint"));
                        }
                    }
                }
                check_search(problem, outcome, cfg, settings).map_err(|m| fail(&sloc, m))?;
                if matches!(outcome, SearchOutcome::Exhausted { .. }) {
                    report.searches_replayed += 1;
                }
                uses
            }
            StepRule::Undecided { .. } => vec![],
        };
        if step.uses != expected_uses {
            return Err(fail(
                &sloc,
                format!("uses {:?}, expected {expected_uses:?}", step.uses),
            ));
        }
        report.steps += 1;
    }
    let possible: Vec<u32> = ex.possible(1).into_iter().collect();
    if possible != proof.possible {
        return Err(fail(
            loc,
            "recorded possible weights differ from the replay",
        ));
    }
    let terminal = proof.steps.last().is_some_and(|s| s.rule.is_terminal());
    match proof.verdict {
        Verdict::Nonexistent if !terminal => {
            Err(fail(loc, "non-existence claimed without a contradiction"))
        }
        Verdict::Undecided if terminal => {
            Err(fail(loc, "contradiction reached but verdict is undecided"))
        }
        _ => Ok(()),
    }
}

fn check_exclusion(
    p: &CodeParams,
    e: &Exclusion,
    ex: &Excluded,
    lemmas: &[Proof],
    table: &BoundsTable,
) -> std::result::Result<(), String> {
    if let Some(w) = e.weight() {
        if w == 0 || w > p.n || ex.by[w as usize].is_some() {
            return Err(format!("weight {w} is not a possible weight"));
        }
    }
    let possible = || ex.possible(1);
    let again = match e {
        Exclusion::BelowDistance { d } => {
            return (*d == p.d)
                .then_some(())
                .ok_or_else(|| "wrong distance".to_string());
        }
        Exclusion::OddParity { d } => {
            return (*d == p.d && d % 2 == 0)
                .then_some(())
                .ok_or_else(|| "parity rule needs even d".to_string());
        }
        Exclusion::Descent { weight, .. } => exclude_by_descent(p, *weight, table),
        Exclusion::Shortening2d { .. } => exclude_2d_shortening(p, &possible()),
        Exclusion::SumArgument { weight, .. } => exclude_by_sum(*weight, p, &possible()),
        Exclusion::Sublemma {
            weight,
            chain,
            node,
            lemma,
        } => {
            let fresh = descent_chain(p, *weight, table).map_err(|e| e.to_string())?;
            if &fresh != chain || chain.verdict.is_contradiction() {
                return Err("chain does not replay".into());
            }
            let target = chain.nodes.get(*node).ok_or("node index out of range")?;
            let l = lemmas.get(*lemma).ok_or("lemma index out of range")?;
            if l.target.n != target.n || l.target.k != target.k || l.target.d > target.d {
                return Err(format!("lemma {lemma} is about {}, not {target}", l.target));
            }
            return Ok(());
        }
    }
    .map_err(|e| e.to_string())?;
    if again.excluded_by.as_ref() == Some(e) {
        Ok(())
    } else {
        Err(format!("{} does not replay", e.rule()))
    }
}

fn check_search(
    problem: &FeasibilityProblem,
    outcome: &SearchOutcome,
    cfg: &SearchConfig,
    settings: &Settings,
) -> std::result::Result<(), String> {
    if problem.weights.len() > settings.max_search_weights {
        return Err("search over more weights than allowed".into());
    }
    match outcome {
        SearchOutcome::Exhausted { certificate } => {
            if &certificate.problem != problem || certificate.prune_indices != cfg.prune_indices {
                return Err("exhaustion record does not match the problem".into());
            }
            match search(problem, cfg).map_err(|e| e.to_string())? {
                FeasibilityVerdict::Infeasible(again) if &again == certificate => Ok(()),
                FeasibilityVerdict::Infeasible(_) => Err("exhaustion counts do not replay".into()),
                FeasibilityVerdict::Feasible { .. } => Err("search replay found a witness".into()),
            }
        }
        SearchOutcome::Witness { counts, .. } => {
            let a = WeightDistribution::code(problem.n, counts.iter().map(|(&w, &c)| (w, c)))
                .map_err(|e| e.to_string())?;
            check_distribution(&a, problem.k).map_err(|v| format!("witness fails: {v}"))
        }
        SearchOutcome::BudgetExhausted { .. } => Ok(()),
    }
}
