//! The non-existence pipeline with recursive sub-lemmas.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use crate::bounds::{griesmer_length, BoundsTable, CodeParams};
use crate::certificate::{
    exclusion_uses, Certificate, Proof, SearchOutcome, Settings, Step, StepRule, Verdict, FORMAT,
};
use crate::error::{Error, Result};
use crate::exclusion::{
    candidate_weights, dual_a1_zero, CandidateReport, Exclusion, NoOracle, SublemmaOracle,
};
use crate::feasibility::{build_problem, search, FeasibilityVerdict, SearchConfig};
use crate::spectra::{moment_solve_small, MomentStatus};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProveConfig {
    /// Levels of sub-lemma recursion below the target.
    pub recursion_depth: u32,
    /// Largest possible-weight set handed to the feasibility search.
    pub max_search_weights: usize,
    /// Search settings for the target itself.
    pub search: SearchConfig,
    /// Search settings inside sub-lemmas.
    pub lemma_search: SearchConfig,
}

impl Default for ProveConfig {
    fn default() -> Self {
        Self {
            recursion_depth: 3,
            max_search_weights: 6,
            search: SearchConfig {
                time_budget: Some(Duration::from_secs(24 * 3600)),
                ..SearchConfig::default()
            },
            lemma_search: SearchConfig {
                node_budget: Some(2_000_000),
                ..SearchConfig::default()
            },
        }
    }
}

/// Attempts to prove that no binary `[n, k, d]` code exists.
pub fn prove(p: &CodeParams, table: &BoundsTable, cfg: &ProveConfig) -> Result<Certificate> {
    if p.q != 2 {
        return Err(Error::Unsupported("the prover is binary only".into()));
    }
    if cfg.search.prune_indices != cfg.lemma_search.prune_indices {
        return Err(Error::Precondition(
            "target and lemma searches must screen the same indices".into(),
        ));
    }
    let mut prover = Prover {
        table,
        cfg,
        lemmas: Vec::new(),
        memo: BTreeMap::new(),
    };
    let proof = prover.prove_node(p, cfg.recursion_depth, true)?;
    let (lemmas, proof) = prune_lemmas(prover.lemmas, proof);
    let mut cert = Certificate {
        format: FORMAT.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        table_fingerprint: table.fingerprint(),
        settings: Settings {
            recursion_depth: cfg.recursion_depth,
            max_search_weights: cfg.max_search_weights,
            prune_indices: cfg.search.prune_indices.clone(),
        },
        lemmas,
        proof,
        digest: String::new(),
    };
    cert.seal();
    Ok(cert)
}

/// Runs the weight exclusions for `p` with sub-lemma recursion, returning
/// the report and every lemma proven along the way. Sub-lemma exclusions in
/// the report index into the returned list.
pub fn candidate_weights_recursive(
    p: &CodeParams,
    table: &BoundsTable,
    cfg: &ProveConfig,
) -> Result<(CandidateReport, Vec<Proof>)> {
    let mut prover = Prover {
        table,
        cfg,
        lemmas: Vec::new(),
        memo: BTreeMap::new(),
    };
    let report = match cfg.recursion_depth {
        0 => candidate_weights(p, table, &mut NoOracle)?,
        depth => candidate_weights(
            p,
            table,
            &mut Oracle {
                prover: &mut prover,
                depth: depth - 1,
            },
        )?,
    };
    Ok((report, prover.lemmas))
}

#[derive(Debug, Clone, Copy)]
enum Memo {
    Proven(usize),
    /// Not proven with this much recursion left.
    Failed(u32),
}

struct Prover<'a> {
    table: &'a BoundsTable,
    cfg: &'a ProveConfig,
    lemmas: Vec<Proof>,
    memo: BTreeMap<(u32, u32, u32), Memo>,
}

struct Oracle<'p, 'a> {
    prover: &'p mut Prover<'a>,
    depth: u32,
}

impl SublemmaOracle for Oracle<'_, '_> {
    fn refute(&mut self, target: &CodeParams) -> Option<usize> {
        self.prover.refute(target, self.depth)
    }
}

impl Prover<'_> {
    /// Looks for a lemma refuting `[n, k, >= d]`, proving one if needed.
    fn refute(&mut self, t: &CodeParams, depth: u32) -> Option<usize> {
        if t.validate().is_err() {
            return None;
        }
        let known = self
            .memo
            .range((t.n, t.k, 0)..=(t.n, t.k, t.d))
            .find_map(|(_, m)| match m {
                Memo::Proven(i) => Some(*i),
                Memo::Failed(_) => None,
            });
        if known.is_some() {
            return known;
        }
        if let Some(Memo::Failed(had)) = self.memo.get(&(t.n, t.k, t.d)) {
            if *had >= depth {
                return None;
            }
        }
        let proof = match self.prove_node(t, depth, false) {
            Ok(proof) => proof,
            Err(_) => {
                self.memo.insert((t.n, t.k, t.d), Memo::Failed(depth));
                return None;
            }
        };
        if proof.verdict == Verdict::Nonexistent {
            self.lemmas.push(proof);
            let idx = self.lemmas.len() - 1;
            self.memo.insert((t.n, t.k, t.d), Memo::Proven(idx));
            Some(idx)
        } else {
            self.memo.insert((t.n, t.k, t.d), Memo::Failed(depth));
            None
        }
    }

    fn prove_node(&mut self, p: &CodeParams, depth: u32, root: bool) -> Result<Proof> {
        let mut steps: Vec<Step> = Vec::new();
        let push = |steps: &mut Vec<Step>, uses: Vec<usize>, rule: StepRule| {
            let id = steps.len();
            steps.push(Step { id, uses, rule });
        };
        let finish = |steps: Vec<Step>, verdict: Verdict, possible: Vec<u32>| Proof {
            target: *p,
            verdict,
            steps,
            possible,
        };

        let gl = griesmer_length(p.k, p.d, 2);
        if gl > u64::from(p.n) {
            push(&mut steps, vec![], StepRule::GriesmerBound { length: gl });
            return Ok(finish(steps, Verdict::Nonexistent, (1..=p.n).collect()));
        }
        p.validate()?;
        if let Some(e) = self.table.entry(p.n, p.k) {
            if e.dmax < p.d {
                let rule = StepRule::TableBound {
                    dmax: e.dmax,
                    provenance: e.provenance.clone(),
                };
                push(&mut steps, vec![], rule);
                return Ok(finish(steps, Verdict::Nonexistent, (1..=p.n).collect()));
            }
        }

        let table = self.table;
        let report = if depth > 0 {
            candidate_weights(
                p,
                table,
                &mut Oracle {
                    prover: self,
                    depth: depth - 1,
                },
            )?
        } else {
            candidate_weights(p, table, &mut NoOracle)?
        };
        let mut by: Vec<Option<usize>> = vec![None; p.n as usize + 1];
        let mut exclude_ids = Vec::new();
        for e in &report.exclusions {
            let uses = exclusion_uses(p, e, &by);
            let id = steps.len();
            for w in 1..=p.n {
                if by[w as usize].is_none() && e.covers(w) {
                    by[w as usize] = Some(id);
                }
            }
            exclude_ids.push(id);
            push(
                &mut steps,
                uses,
                StepRule::Exclude {
                    exclusion: e.clone(),
                },
            );
        }
        let possible = report.possible();
        if report.minimum_weight_excluded() {
            let s = by[p.d as usize].expect("d was excluded");
            push(&mut steps, vec![s], StepRule::MinimumWeightExcluded);
            return Ok(finish(steps, Verdict::Nonexistent, possible));
        }

        let a1 = dual_a1_zero(p, table)?;
        let a1_known = a1.is_proven();
        let a1_id = steps.len();
        push(&mut steps, vec![], StepRule::DualA1 { verdict: a1 });

        if possible.len() <= 2 {
            let verdict = moment_solve_small(p.n, p.k, &possible)?;
            let infeasible = verdict.status == MomentStatus::Infeasible;
            push(
                &mut steps,
                exclude_ids.clone(),
                StepRule::Moments {
                    weights: possible.clone(),
                    verdict,
                },
            );
            if infeasible {
                return Ok(finish(steps, Verdict::Nonexistent, possible));
            }
        }

        if possible.len() > self.cfg.max_search_weights {
            let reason = format!(
                "{} weights remain, above the search limit {}",
                possible.len(),
                self.cfg.max_search_weights
            );
            push(&mut steps, vec![], StepRule::Undecided { reason });
            return Ok(finish(steps, Verdict::Undecided, possible));
        }

        let problem = build_problem(p, &possible, a1_known.then_some(0))?;
        let mut uses = exclude_ids;
        if a1_known {
            uses.push(a1_id);
        }
        let scfg = if root {
            &self.cfg.search
        } else {
            &self.cfg.lemma_search
        };
        let (outcome, verdict) = match search(&problem, scfg) {
            Ok(FeasibilityVerdict::Infeasible(certificate)) => (
                SearchOutcome::Exhausted { certificate },
                Verdict::Nonexistent,
            ),
            Ok(FeasibilityVerdict::Feasible { a1, witness, .. }) => {
                let counts = witness
                    .iter()
                    .filter(|(w, _)| *w > 0)
                    .map(|(w, c)| (w, u64::try_from(c).expect("count below 2^k")))
                    .collect();
                (SearchOutcome::Witness { a1, counts }, Verdict::Undecided)
            }
            Err(Error::BudgetExhausted { nodes, reason }) => (
                SearchOutcome::BudgetExhausted { nodes, reason },
                Verdict::Undecided,
            ),
            Err(e) => return Err(e),
        };
        push(&mut steps, uses, StepRule::Search { problem, outcome });
        Ok(finish(steps, verdict, possible))
    }
}

/// Keeps only lemmas reachable from `root` and renumbers citations.
fn prune_lemmas(lemmas: Vec<Proof>, root: Proof) -> (Vec<Proof>, Proof) {
    fn cited(p: &Proof) -> Vec<usize> {
        p.steps
            .iter()
            .filter_map(|s| match &s.rule {
                StepRule::Exclude {
                    exclusion: Exclusion::Sublemma { lemma, .. },
                } => Some(*lemma),
                _ => None,
            })
            .collect()
    }
    let mut keep = BTreeSet::new();
    let mut stack = cited(&root);
    while let Some(i) = stack.pop() {
        if keep.insert(i) {
            stack.extend(cited(&lemmas[i]));
        }
    }
    let remap: BTreeMap<usize, usize> = keep
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    let renumber = |mut p: Proof| {
        for s in &mut p.steps {
            if let StepRule::Exclude {
                exclusion: Exclusion::Sublemma { lemma, .. },
            } = &mut s.rule
            {
                *lemma = remap[lemma];
            }
        }
        p
    };
    let kept = lemmas
        .into_iter()
        .enumerate()
        .filter(|(i, _)| keep.contains(i))
        .map(|(_, p)| renumber(p))
        .collect();
    (kept, renumber(root))
}
