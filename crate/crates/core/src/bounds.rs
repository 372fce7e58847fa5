//! Griesmer bound, residual-code reduction, descent chains and the store of
//! best-known minimum-distance upper bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Parameters `[n, k, d]_q` of a linear code. Inside descent chains `d` is a
/// lower bound on the minimum distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeParams {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    pub q: u32,
}

impl CodeParams {
    pub fn new(n: u32, k: u32, d: u32, q: u32) -> Result<Self> {
        let p = Self { n, k, d, q };
        p.validate()?;
        Ok(p)
    }

    pub fn binary(n: u32, k: u32, d: u32) -> Result<Self> {
        Self::new(n, k, d, 2)
    }

    /// A parameter triple that is not required to be realizable, such as a
    /// node deep inside a descent chain.
    pub fn unchecked(n: u32, k: u32, d: u32, q: u32) -> Self {
        Self { n, k, d, q }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q < 2 {
            return Err(Error::Domain(format!("field size {} < 2", self.q)));
        }
        if self.k < 1 || self.k > self.n {
            return Err(Error::Domain(format!("need 1 <= k <= n, got {self}")));
        }
        if self.d < 1 || self.d > self.n {
            return Err(Error::Domain(format!("need 1 <= d <= n, got {self}")));
        }
        Ok(())
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.n, self.k, self.d)?;
        if self.q != 2 {
            write!(f, "_{}", self.q)?;
        }
        Ok(())
    }
}

/// Minimal length `sum_{i<k} ceil(d / q^i)` of a `[n, k, d]_q` code.
pub fn griesmer_length(k: u32, d: u32, q: u32) -> u64 {
    let d = u64::from(d);
    if d == 0 {
        return 0;
    }
    let mut total = 0u64;
    let mut div = 1u64;
    for i in 0..k {
        if div >= d {
            // every remaining term is 1
            return total + u64::from(k - i);
        }
        total += d.div_ceil(div);
        div = div.saturating_mul(u64::from(q));
    }
    total
}

/// Largest `d` with `griesmer_length(k, d, q) <= n`; 0 when even `d = 1`
/// does not fit.
pub fn griesmer_dmax(n: u32, k: u32, q: u32) -> u32 {
    let (mut lo, mut hi) = (0u32, n);
    // griesmer_length is strictly increasing in d
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if griesmer_length(k, mid, q) <= u64::from(n) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Parameters of the residual code with respect to a codeword of weight `w`:
/// `[n - w, k - 1, >= d - w + ceil(w / q)]`.
pub fn residual_params(p: &CodeParams, w: u32) -> Result<CodeParams> {
    if p.k <= 1 {
        return Err(Error::Precondition(format!(
            "{p} has no residual code (k = 1)"
        )));
    }
    let admissible =
        w >= p.d && w <= p.n && u64::from(w) * u64::from(p.q - 1) < u64::from(p.d) * u64::from(p.q);
    if !admissible {
        return Err(Error::Precondition(format!(
            "weight {w} outside [d, dq/(q-1)) for {p}"
        )));
    }
    Ok(CodeParams::unchecked(
        p.n - w,
        p.k - 1,
        p.d + w.div_ceil(p.q) - w,
        p.q,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum ChainVerdict {
    /// Node `node` needs minimum distance `required` but the table caps
    /// `[n, k]` at `dmax`.
    ContradictionByTable {
        node: usize,
        dmax: u32,
        required: u32,
    },
    /// Node `node` is shorter than its Griesmer length.
    ContradictionByGriesmer {
        node: usize,
        griesmer_length: u64,
    },
    NoContradiction,
}

impl ChainVerdict {
    pub fn is_contradiction(&self) -> bool {
        !matches!(self, ChainVerdict::NoContradiction)
    }
}

/// Iterated residual reduction starting from `start` with a codeword of
/// weight `first_weight`, continuing with minimum-weight codewords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescentChain {
    pub start: CodeParams,
    pub first_weight: u32,
    pub nodes: Vec<CodeParams>,
    pub verdict: ChainVerdict,
}

impl fmt::Display for DescentChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} --w={}-->", self.start, self.first_weight)?;
        for (i, node) in self.nodes.iter().enumerate() {
            if i > 0 {
                write!(f, " ->")?;
            }
            write!(f, " [{},{},>={}]", node.n, node.k, node.d)?;
        }
        match &self.verdict {
            ChainVerdict::ContradictionByTable { dmax, .. } => write!(f, " : table dmax {dmax}"),
            ChainVerdict::ContradictionByGriesmer {
                griesmer_length, ..
            } => {
                write!(f, " : Griesmer length {griesmer_length}")
            }
            ChainVerdict::NoContradiction => write!(f, " : no contradiction"),
        }
    }
}

/// Runs the descent from `p` with a codeword of weight `w`.
///
/// After every residual step the node is checked against the Griesmer
/// bound and then against `table`; the chain stops at the first
/// contradiction or once the dimension reaches 1.
pub fn descent_chain(p: &CodeParams, w: u32, table: &BoundsTable) -> Result<DescentChain> {
    let mut nodes = Vec::new();
    let mut current = residual_params(p, w)?;
    loop {
        nodes.push(current);
        let idx = nodes.len() - 1;
        let gl = griesmer_length(current.k, current.d, current.q);
        if gl > u64::from(current.n) {
            let verdict = ChainVerdict::ContradictionByGriesmer {
                node: idx,
                griesmer_length: gl,
            };
            return Ok(DescentChain {
                start: *p,
                first_weight: w,
                nodes,
                verdict,
            });
        }
        if current.q == 2 {
            if let Some(dmax) = table.lookup_dmax(current.n, current.k) {
                if dmax < current.d {
                    let verdict = ChainVerdict::ContradictionByTable {
                        node: idx,
                        dmax,
                        required: current.d,
                    };
                    return Ok(DescentChain {
                        start: *p,
                        first_weight: w,
                        nodes,
                        verdict,
                    });
                }
            }
        }
        if current.k <= 1 {
            break;
        }
        current = residual_params(&current, current.d)?;
    }
    Ok(DescentChain {
        start: *p,
        first_weight: w,
        nodes,
        verdict: ChainVerdict::NoContradiction,
    })
}

/// Input formats accepted by [`import_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsFormat {
    /// `n,k,dmax,provenance` per line, `#` comments.
    Csv,
}

impl FromStr for BoundsFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(BoundsFormat::Csv),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub dmax: u32,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImportWarning {
    Malformed {
        line: usize,
        message: String,
    },
    Duplicate {
        line: usize,
        n: u32,
        k: u32,
        kept: u32,
        dropped: u32,
    },
    NotMonotoneInLength {
        n: u32,
        k: u32,
    },
    NotMonotoneInDimension {
        n: u32,
        k: u32,
    },
}

impl fmt::Display for ImportWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImportWarning::Malformed { line, message } => write!(f, "line {line}: {message}"),
            ImportWarning::Duplicate {
                line,
                n,
                k,
                kept,
                dropped,
            } => write!(
                f,
                "line {line}: duplicate entry for ({n},{k}); kept {kept}, dropped {dropped}"
            ),
            ImportWarning::NotMonotoneInLength { n, k } => {
                write!(f, "dmax({n},{k}) > dmax({},{k})", n + 1)
            }
            ImportWarning::NotMonotoneInDimension { n, k } => {
                write!(f, "dmax({n},{k}) < dmax({n},{})", k + 1)
            }
        }
    }
}

/// Best-known upper bounds `dmax(n, k)` for binary linear codes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundsTable {
    entries: BTreeMap<(u32, u32), BoundEntry>,
    warnings: Vec<ImportWarning>,
}

impl BoundsTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry, keeping the smaller bound on conflict.
    pub fn insert(&mut self, n: u32, k: u32, dmax: u32, provenance: impl Into<String>) {
        let entry = BoundEntry {
            dmax,
            provenance: provenance.into(),
        };
        match self.entries.get(&(n, k)) {
            Some(old) if old.dmax <= dmax => {}
            _ => {
                self.entries.insert((n, k), entry);
            }
        }
    }

    pub fn with(mut self, n: u32, k: u32, dmax: u32, provenance: &str) -> Self {
        self.insert(n, k, dmax, provenance);
        self
    }

    pub fn lookup_dmax(&self, n: u32, k: u32) -> Option<u32> {
        self.entries.get(&(n, k)).map(|e| e.dmax)
    }

    pub fn entry(&self, n: u32, k: u32) -> Option<&BoundEntry> {
        self.entries.get(&(n, k))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &BoundEntry)> {
        self.entries.iter().map(|(key, e)| (*key, e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn warnings(&self) -> &[ImportWarning] {
        &self.warnings
    }

    /// SHA-256 over the canonical `n,k,dmax,provenance` lines in key order.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        for ((n, k), e) in &self.entries {
            h.update(format!("{n},{k},{},{}\n", e.dmax, e.provenance).as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn check_monotonicity(&mut self) {
        let mut warnings = Vec::new();
        for (&(n, k), e) in &self.entries {
            if let Some(next) = self.entries.get(&(n + 1, k)) {
                if e.dmax > next.dmax {
                    warnings.push(ImportWarning::NotMonotoneInLength { n, k });
                }
            }
            if let Some(next) = self.entries.get(&(n, k + 1)) {
                if e.dmax < next.dmax {
                    warnings.push(ImportWarning::NotMonotoneInDimension { n, k });
                }
            }
        }
        self.warnings.extend(warnings);
    }
}

/// Reads a bounds table. Malformed lines and duplicate keys are skipped and
/// reported through [`BoundsTable::warnings`]; only I/O failures are errors.
pub fn import_bounds<R: BufRead>(source: R, format: BoundsFormat) -> Result<BoundsTable> {
    let BoundsFormat::Csv = format;
    let mut table = BoundsTable::new();
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split(',').map(str::trim).collect();
        let parsed = match fields.as_slice() {
            [n, k, d, prov] if !prov.is_empty() => {
                match (n.parse::<u32>(), k.parse::<u32>(), d.parse::<u32>()) {
                    (Ok(n), Ok(k), Ok(d)) if k >= 1 => Ok((n, k, d, prov.to_string())),
                    _ => Err("expected unsigned integers n,k,dmax with k >= 1".to_string()),
                }
            }
            _ => Err(format!(
                "expected 4 fields n,k,dmax,provenance, got `{body}`"
            )),
        };
        let (n, k, d, prov) = match parsed {
            Ok(v) => v,
            Err(message) => {
                table.warnings.push(ImportWarning::Malformed {
                    line: lineno,
                    message,
                });
                continue;
            }
        };
        if let Some(old) = table.entries.get(&(n, k)) {
            let (kept, dropped) = (old.dmax.min(d), old.dmax.max(d));
            table.warnings.push(ImportWarning::Duplicate {
                line: lineno,
                n,
                k,
                kept,
                dropped,
            });
            if d < old.dmax {
                table.entries.insert(
                    (n, k),
                    BoundEntry {
                        dmax: d,
                        provenance: prov,
                    },
                );
            }
            continue;
        }
        table.entries.insert(
            (n, k),
            BoundEntry {
                dmax: d,
                provenance: prov,
            },
        );
    }
    table.check_monotonicity();
    Ok(table)
}

/// The bundled table shipped in `data/bounds.csv`.
pub fn fixture_table() -> BoundsTable {
    import_bounds(FIXTURE_CSV.as_bytes(), BoundsFormat::Csv).expect("in-memory read")
}

pub const FIXTURE_CSV: &str = include_str!("../data/bounds.csv");

/// The free-function lookup; never infers values for absent keys.
pub fn lookup_dmax(table: &BoundsTable, n: u32, k: u32) -> Option<u32> {
    if k > n {
        return None;
    }
    table.lookup_dmax(n, k)
}
