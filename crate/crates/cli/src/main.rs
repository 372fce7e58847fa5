//! `codebound`: command-line front end.
//!
//! Exit codes: 0 when the claim is established or the certificate verified,
//! 1 when undecided, 2 on any error.

mod spectrum;

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use codebound::{
    build_problem, candidate_weights_recursive, check_distribution, descent_chain, fixture_table,
    gray_map, griesmer_length, import_bounds, kerdock_params, krawtchouk, lee_weight,
    macwilliams_dual, prove, residual_params, search, verify, BoundsFormat, BoundsTable,
    Certificate, CodeParams, Exclusion, FeasibilityVerdict, KrawtchoukContext, ProveConfig,
    SearchConfig, StepRule, Verdict, Z4Word,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "codebound",
    version,
    about = "Non-existence proofs for binary linear codes"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Bounds table CSV (`n,k,dmax,provenance`); the bundled fixture if absent.
    #[arg(long, global = true, value_name = "FILE")]
    table: Option<PathBuf>,
    /// Time budget in seconds for feasibility searches.
    #[arg(long, global = true, value_name = "SECONDS")]
    budget: Option<u64>,
    /// Sub-lemma recursion depth.
    #[arg(long, global = true, value_name = "DEPTH")]
    recurse: Option<u32>,
    /// Write the full certificate as JSON.
    #[arg(long, global = true, value_name = "FILE")]
    emit_cert: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct Nkd {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    d: u32,
}

impl Nkd {
    fn params(self) -> Result<CodeParams> {
        Ok(CodeParams::binary(self.n, self.k, self.d)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Attempt to prove that no [n,k,d] code exists.
    Prove {
        #[command(flatten)]
        p: Nkd,
        /// Largest possible-weight set handed to the search.
        #[arg(long, default_value_t = 6)]
        max_weights: usize,
        /// Print every step, not only the terminal ones.
        #[arg(long)]
        steps: bool,
    },
    /// Replay a certificate against the table.
    Verify { certificate: PathBuf },
    /// Per-weight exclusion verdicts.
    Weights {
        #[command(flatten)]
        p: Nkd,
    },
    /// Integer feasibility of the MacWilliams system over a weight set.
    Feasible {
        #[command(flatten)]
        p: Nkd,
        /// Comma-separated candidate weights.
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        /// Fix the number of dual words of weight 1.
        #[arg(long)]
        a1dual: Option<u64>,
        /// Check a given spectrum against the system instead of searching.
        #[arg(long, value_name = "FILE")]
        witness_check: Option<PathBuf>,
    },
    /// MacWilliams transform of a spectrum file.
    Dual {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_name = "FILE")]
        spectrum: PathBuf,
    },
    /// Residual descent chain from a codeword of weight w.
    Chain {
        #[command(flatten)]
        p: Nkd,
        #[arg(long)]
        w: u32,
    },
    /// Griesmer length for dimension k and distance d.
    Griesmer {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Residual parameters with respect to a weight-w word.
    Residual {
        #[command(flatten)]
        p: Nkd,
        #[arg(long)]
        w: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Exact Krawtchouk value K_j(i).
    Krawtchouk {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        i: u32,
    },
    /// Gray image of a Z4 word.
    Gray {
        /// Symbols in 0..=3, comma separated.
        #[arg(long)]
        word: Z4Word,
    },
    /// Parameters of the extended dualized Kerdock code.
    Kerdock {
        #[arg(long)]
        k: u32,
    },
}

/// Outcome of a command, mapped onto the exit-code contract.
enum Status {
    Established,
    Undecided,
}

fn load_table(path: Option<&Path>) -> Result<BoundsTable> {
    let Some(path) = path else {
        return Ok(fixture_table());
    };
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let table = import_bounds(BufReader::new(file), BoundsFormat::Csv)?;
    for w in table.warnings() {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(table)
}

fn write_json(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn search_config(g: &Global) -> SearchConfig {
    SearchConfig {
        time_budget: g.budget.map(Duration::from_secs),
        ..SearchConfig::default()
    }
}

fn prove_config(g: &Global, default_depth: u32) -> ProveConfig {
    let mut cfg = ProveConfig {
        recursion_depth: g.recurse.unwrap_or(default_depth),
        ..ProveConfig::default()
    };
    if let Some(s) = g.budget {
        cfg.search.time_budget = Some(Duration::from_secs(s));
    }
    cfg
}

fn print_steps(cert: &Certificate, all: bool) {
    let proofs = cert
        .lemmas
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("lemma {i}"), p))
        .chain([("proof".to_string(), &cert.proof)]);
    for (name, proof) in proofs {
        println!("{name}: {} {}", proof.target, proof.verdict);
        for s in &proof.steps {
            let shown = all
                || s.rule.is_terminal()
                || matches!(s.rule, StepRule::Moments { .. } | StepRule::Search { .. });
            if shown {
                println!("  {:>4} {}", s.id, s.rule);
            }
        }
        if let Some(m) = proof.moments() {
            for line in m.derivation() {
                println!("       {line}");
            }
        }
    }
}

fn cmd_prove(g: &Global, p: Nkd, max_weights: usize, steps: bool) -> Result<Status> {
    let table = load_table(g.table.as_deref())?;
    let cfg = ProveConfig {
        max_search_weights: max_weights,
        ..prove_config(g, 3)
    };
    let cert = prove(&p.params()?, &table, &cfg)?;
    print_steps(&cert, steps);
    let possible: Vec<String> = cert.proof.possible.iter().map(u32::to_string).collect();
    println!("possible weights: {{{}}}", possible.join(","));
    println!("verdict: {}", cert.verdict());
    if let Some(path) = &g.emit_cert {
        write_json(path, &cert.to_json_pretty())?;
    }
    Ok(match cert.verdict() {
        Verdict::Nonexistent => Status::Established,
        Verdict::Undecided => Status::Undecided,
    })
}

fn cmd_verify(g: &Global, path: &Path) -> Result<Status> {
    let table = load_table(g.table.as_deref())?;
    let src =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let cert = Certificate::from_json(&src)?;
    let report = verify(&cert, &table)?;
    println!(
        "verified {}: {} ({} lemmas, {} steps, {} searches replayed)",
        cert.proof.target, report.verdict, report.lemmas, report.steps, report.searches_replayed
    );
    Ok(match report.verdict {
        Verdict::Nonexistent => Status::Established,
        Verdict::Undecided => Status::Undecided,
    })
}

fn cmd_weights(g: &Global, p: Nkd) -> Result<Status> {
    let table = load_table(g.table.as_deref())?;
    let p = p.params()?;
    let (report, lemmas) = candidate_weights_recursive(&p, &table, &prove_config(g, 0))?;
    if p.d > 1 {
        println!("1..{}: excluded below-distance", p.d - 1);
    }
    for v in report.verdicts().iter().filter(|v| v.weight >= p.d) {
        match &v.excluded_by {
            None => println!("{}: possible", v.weight),
            Some(e @ Exclusion::Sublemma { lemma, .. }) => println!(
                "{}: excluded {e} ({} {})",
                v.weight, lemmas[*lemma].target, lemmas[*lemma].verdict
            ),
            Some(e) => println!("{}: excluded {e}", v.weight),
        }
    }
    let possible: Vec<String> = report.possible().iter().map(u32::to_string).collect();
    println!("possible weights: {{{}}}", possible.join(","));
    if report.minimum_weight_excluded() {
        println!("minimum weight {} excluded: no {p} code", p.d);
        Ok(Status::Established)
    } else {
        Ok(Status::Undecided)
    }
}

fn cmd_feasible(
    g: &Global,
    p: Nkd,
    weights: &[u32],
    a1dual: Option<u64>,
    witness: Option<&Path>,
) -> Result<Status> {
    let p = p.params()?;
    let prob = build_problem(&p, weights, a1dual)?;
    println!("problem: {prob}");
    if let Some(path) = witness {
        let a = spectrum::read(path, p.n)?;
        if let Some(w) = a.support().find(|&w| w != 0 && !prob.weights.contains(&w)) {
            println!("not admissible: weight {w} is outside the weight set");
            return Ok(Status::Undecided);
        }
        if let Err(v) = check_distribution(&a, p.k) {
            println!("not admissible: {v}");
            return Ok(Status::Undecided);
        }
        let a1 = macwilliams_dual(&a, p.k)?.get(1);
        if !prob
            .a1_values()
            .any(|v| num_rational::BigRational::from_integer(v.into()) == a1)
        {
            println!("not admissible: dual A1 = {a1} outside the allowed range");
            return Ok(Status::Undecided);
        }
        println!("admissible: {a}");
        return Ok(Status::Established);
    }
    let verdict = match search(&prob, &search_config(g)) {
        Ok(v) => v,
        Err(codebound::Error::BudgetExhausted { nodes, reason }) => {
            println!("undecided: budget exhausted after {nodes} nodes ({reason})");
            return Ok(Status::Undecided);
        }
        Err(e) => return Err(e.into()),
    };
    let record = match &verdict {
        FeasibilityVerdict::Feasible { a1, witness, dual } => {
            println!("feasible with A1 = {a1}");
            println!("witness: {witness}");
            println!("dual: {dual}");
            json!({
                "verdict": "feasible",
                "a1": a1,
                "witness": witness.iter().map(|(w, c)| (w.to_string(), json!(c.to_string())))
                    .collect::<serde_json::Map<_, _>>(),
            })
        }
        FeasibilityVerdict::Infeasible(cert) => {
            println!("infeasible: {cert}");
            json!({
                "verdict": "infeasible",
                "certificate": serde_json::to_value(cert)?,
            })
        }
    };
    if let Some(path) = &g.emit_cert {
        write_json(path, &serde_json::to_string_pretty(&record)?)?;
    }
    Ok(Status::Established)
}

fn cmd_dual(n: u32, k: u32, path: &Path) -> Result<Status> {
    let a = spectrum::read(path, n)?;
    let dual = macwilliams_dual(&a, k)?;
    for j in 0..=n {
        let v = &dual.get(j);
        let flag = if !v.is_integer() {
            "non-integral"
        } else if v < &num_rational::BigRational::from_integer(0.into()) {
            "negative"
        } else {
            "integral"
        };
        println!("{j}: {v} {flag}");
    }
    match check_distribution(&a, k) {
        Ok(()) => {
            println!("admissible spectrum of a [{n},{k}] code");
            Ok(Status::Established)
        }
        Err(v) => {
            println!("not admissible: {v}");
            Ok(Status::Undecided)
        }
    }
}

fn cmd_chain(g: &Global, p: Nkd, w: u32) -> Result<Status> {
    let table = load_table(g.table.as_deref())?;
    let chain = descent_chain(&p.params()?, w, &table)?;
    println!("{chain}");
    Ok(if chain.verdict.is_contradiction() {
        Status::Established
    } else {
        Status::Undecided
    })
}

fn run(cli: Cli) -> Result<Status> {
    let g = &cli.global;
    match cli.command {
        Command::Prove {
            p,
            max_weights,
            steps,
        } => cmd_prove(g, p, max_weights, steps),
        Command::Verify { certificate } => cmd_verify(g, &certificate),
        Command::Weights { p } => cmd_weights(g, p),
        Command::Feasible {
            p,
            weights,
            a1dual,
            witness_check,
        } => cmd_feasible(g, p, &weights, a1dual, witness_check.as_deref()),
        Command::Dual { n, k, spectrum } => cmd_dual(n, k, &spectrum),
        Command::Chain { p, w } => cmd_chain(g, p, w),
        Command::Griesmer { k, d, q } => {
            if q < 2 {
                bail!("q must be at least 2");
            }
            println!("{}", griesmer_length(k, d, q));
            Ok(Status::Established)
        }
        Command::Residual { p, w, q } => {
            let r = residual_params(&CodeParams::new(p.n, p.k, p.d, q)?, w)?;
            println!("{r}");
            Ok(Status::Established)
        }
        Command::Krawtchouk { n, q, j, i } => {
            let ctx = KrawtchoukContext::new(n, q)?;
            println!("{}", krawtchouk(&ctx, j, i)?);
            Ok(Status::Established)
        }
        Command::Gray { word } => {
            let bits: String = gray_map(&word)
                .iter()
                .map(|b| char::from(b'0' + b))
                .collect();
            println!("image: {bits}");
            println!("lee weight: {}", lee_weight(&word));
            println!(
                "hamming weight: {}",
                bits.bytes().filter(|&b| b == b'1').count()
            );
            Ok(Status::Established)
        }
        Command::Kerdock { k } => {
            let p = kerdock_params(k)?;
            println!("z4: {p}");
            println!(
                "gray image: ({}, 2^{}, {})",
                p.gray_length(),
                p.gray_log2_size(),
                p.min_lee_distance
            );
            Ok(Status::Established)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Status::Established) => ExitCode::SUCCESS,
        Ok(Status::Undecided) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
