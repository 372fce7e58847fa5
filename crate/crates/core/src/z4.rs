//! Words over Z4, the Lee weight and the Gray map, plus parameter data for
//! Z4-linear codes with better-than-linear Gray images.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A word over `Z4`; every symbol lies in `0..4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Z4Word {
    symbols: Vec<u8>,
}

impl Z4Word {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if let Some((i, s)) = symbols.iter().enumerate().find(|(_, &s)| s > 3) {
            return Err(Error::Domain(format!(
                "symbol {s} at position {i} is not in Z4"
            )));
        }
        Ok(Self { symbols })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol-wise difference `self - other` in `Z4`.
    pub fn sub(&self, other: &Z4Word) -> Result<Z4Word> {
        if self.len() != other.len() {
            return Err(Error::Domain(format!(
                "lengths {} and {} differ",
                self.len(),
                other.len()
            )));
        }
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(a, b)| (a + 4 - b) % 4)
            .collect();
        Ok(Z4Word { symbols })
    }
}

impl FromStr for Z4Word {
    type Err = Error;

    /// Parses comma-separated symbols such as `1,2,3`; the empty string is
    /// the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Z4Word::default());
        }
        let symbols = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Domain(format!("bad Z4 symbol `{t}`")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Z4Word::new(symbols)
    }
}

impl fmt::Display for Z4Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(u8::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

const LEE: [u32; 4] = [0, 1, 2, 1];
const GRAY: [[u8; 2]; 4] = [[0, 0], [1, 0], [1, 1], [0, 1]];

pub fn lee_weight(w: &Z4Word) -> u32 {
    w.symbols.iter().map(|&s| LEE[s as usize]).sum()
}

pub fn lee_distance(x: &Z4Word, y: &Z4Word) -> Result<u32> {
    Ok(lee_weight(&x.sub(y)?))
}

/// Binary image of length `2n` under `0, 1, 2, 3 -> 00, 10, 11, 01`.
pub fn gray_map(w: &Z4Word) -> Vec<u8> {
    w.symbols.iter().flat_map(|&s| GRAY[s as usize]).collect()
}

pub fn hamming_weight(bits: &[u8]) -> u32 {
    bits.iter().filter(|&&b| b != 0).count() as u32
}

pub fn hamming_distance(a: &[u8], b: &[u8]) -> Result<u32> {
    if a.len() != b.len() {
        return Err(Error::Domain(format!(
            "lengths {} and {} differ",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count() as u32)
}

/// Parameters `(length, 4^(k+1), min Lee distance)` of an extended dualized
/// Kerdock code over `Z4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KerdockParams {
    pub k: u32,
    pub length: u64,
    /// The code has `4^log4_size` words.
    pub log4_size: u32,
    pub min_lee_distance: u64,
}

impl KerdockParams {
    pub fn gray_length(&self) -> u64 {
        2 * self.length
    }

    pub fn gray_log2_size(&self) -> u32 {
        2 * self.log4_size
    }
}

impl fmt::Display for KerdockParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, 4^{}, {})",
            self.length, self.log4_size, self.min_lee_distance
        )
    }
}

/// Parameters for odd `k >= 3`.
pub fn kerdock_params(k: u32) -> Result<KerdockParams> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "k must be odd and at least 3, got {k}"
        )));
    }
    if k > 31 {
        return Err(Error::Domain(format!("k = {k} overflows 64-bit lengths")));
    }
    let full = (1u64 << (2 * k)) - (1u64 << k);
    Ok(KerdockParams {
        k,
        length: full + (1u64 << ((k - 3) / 2)),
        log4_size: k + 1,
        min_lee_distance: full,
    })
}

/// Binary parameters `(length, 2^log2_size, min_distance)` of a Gray image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImageRecord {
    pub name: String,
    pub length: u64,
    pub log2_size: u32,
    pub min_distance: u64,
    /// Hamming weight distribution, when published.
    pub spectrum: Option<BTreeMap<u64, u64>>,
}

impl GrayImageRecord {
    pub fn new(name: &str, length: u64, log2_size: u32, min_distance: u64) -> Self {
        Self {
            name: name.to_string(),
            length,
            log2_size,
            min_distance,
            spectrum: None,
        }
    }

    /// Checks that a stored spectrum sums to the size and has the stated
    /// minimum distance.
    pub fn validate(&self) -> Result<()> {
        if let Some(s) = &self.spectrum {
            let total: u128 = s.values().map(|&c| u128::from(c)).sum();
            if self.log2_size >= 127 || total != 1u128 << self.log2_size {
                return Err(Error::Domain(format!(
                    "{}: spectrum sums to {total}",
                    self.name
                )));
            }
            let dmin = s.iter().find(|(&w, &c)| w > 0 && c > 0).map(|(&w, _)| w);
            if dmin != Some(self.min_distance) {
                return Err(Error::Domain(format!(
                    "{}: minimum weight {dmin:?}",
                    self.name
                )));
            }
            if s.keys().any(|&w| w > self.length) {
                return Err(Error::Domain(format!(
                    "{}: weight beyond length",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GrayImageRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, 2^{}, {})",
            self.length, self.log2_size, self.min_distance
        )
    }
}

/// Published Gray image of the extended dualized Kerdock code for `k = 5`.
pub fn k6_gray_image() -> GrayImageRecord {
    let spectrum = [(0, 1), (992, 4000), (1024, 31), (1120, 64)]
        .into_iter()
        .collect();
    GrayImageRecord {
        spectrum: Some(spectrum),
        ..GrayImageRecord::new("extended dualized Kerdock K*6", 1988, 12, 992)
    }
}

/// What is known about the best binary linear code of matching length and
/// dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearBound {
    Exact(u64),
    Range(u64, u64),
    AtMost(u64),
    Unknown,
}

impl From<u64> for LinearBound {
    fn from(d: u64) -> Self {
        LinearBound::Exact(d)
    }
}

impl fmt::Display for LinearBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearBound::Exact(d) => write!(f, "{d}"),
            LinearBound::Range(a, b) => write!(f, "{a}-{b}"),
            LinearBound::AtMost(b) => write!(f, "<= {b}"),
            LinearBound::Unknown => write!(f, "?"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Btl {
    Btl,
    NotBtl,
    Unknown,
}

impl fmt::Display for Btl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Btl::Btl => "BTL",
            Btl::NotBtl => "not BTL",
            Btl::Unknown => "unknown",
        })
    }
}

/// Better-than-linear iff the Gray image beats every linear code.
pub fn btl_statement(g: &GrayImageRecord, best_linear: impl Into<LinearBound>) -> Btl {
    let d = g.min_distance;
    match best_linear.into() {
        LinearBound::Exact(b) | LinearBound::AtMost(b) if d > b => Btl::Btl,
        LinearBound::Range(_, hi) if d > hi => Btl::Btl,
        LinearBound::Exact(_) => Btl::NotBtl,
        LinearBound::Range(lo, _) if lo >= d => Btl::NotBtl,
        _ => Btl::Unknown,
    }
}

/// A row of the reference list of Z4-linear codes with BTL Gray images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BtlRow {
    pub length: u64,
    pub log2_size: u32,
    pub min_distance: u64,
    pub linear_bound: LinearBound,
    pub code: &'static str,
}

impl BtlRow {
    pub fn record(&self) -> GrayImageRecord {
        GrayImageRecord::new(self.code, self.length, self.log2_size, self.min_distance)
    }
}

/// Known Z4-linear codes with better-than-linear Gray images (fixed rows).
pub const BTL_ROWS: &[BtlRow] = &[
    BtlRow {
        length: 14,
        log2_size: 6,
        min_distance: 6,
        linear_bound: LinearBound::Exact(5),
        code: "Heptacode",
    },
    BtlRow {
        length: 16,
        log2_size: 8,
        min_distance: 6,
        linear_bound: LinearBound::Exact(5),
        code: "Octacode",
    },
    BtlRow {
        length: 58,
        log2_size: 7,
        min_distance: 28,
        linear_bound: LinearBound::Exact(27),
        code: "lengthened Simplex code",
    },
    BtlRow {
        length: 60,
        log2_size: 8,
        min_distance: 28,
        linear_bound: LinearBound::Exact(27),
        code: "doubly shortened Z4-Kerdock code",
    },
    BtlRow {
        length: 62,
        log2_size: 10,
        min_distance: 28,
        linear_bound: LinearBound::Range(26, 27),
        code: "shortened Z4-Kerdock code",
    },
    BtlRow {
        length: 62,
        log2_size: 12,
        min_distance: 26,
        linear_bound: LinearBound::Range(24, 25),
        code: "punctured Z4-Kerdock code",
    },
    BtlRow {
        length: 64,
        log2_size: 11,
        min_distance: 28,
        linear_bound: LinearBound::Range(26, 27),
        code: "expurgated Z4-Kerdock code",
    },
    BtlRow {
        length: 64,
        log2_size: 12,
        min_distance: 28,
        linear_bound: LinearBound::Range(25, 26),
        code: "Z4-Kerdock code",
    },
    BtlRow {
        length: 114,
        log2_size: 8,
        min_distance: 56,
        linear_bound: LinearBound::Exact(55),
        code: "extended dualized Kerdock code K*4",
    },
    BtlRow {
        length: 372,
        log2_size: 10,
        min_distance: 184,
        linear_bound: LinearBound::AtMost(183),
        code: "dualized Teichmueller code",
    },
    BtlRow {
        length: 1988,
        log2_size: 12,
        min_distance: 992,
        linear_bound: LinearBound::AtMost(991),
        code: "extended dualized Kerdock code K*6",
    },
];

/// Gray image parameters `(2^(k+1), 2^(2^(k+1) - 2(k+1)), 6)` of the
/// Z4-Preparata code for odd `k >= 3`, as listed; the linear bound is 5.
pub fn preparata_row(k: u32) -> Result<BtlRow> {
    if k < 3 || k.is_multiple_of(2) || k > 31 {
        return Err(Error::Domain(format!("need odd 3 <= k <= 31, got {k}")));
    }
    let length = 1u64 << (k + 1);
    Ok(BtlRow {
        length,
        log2_size: (length - 2 * u64::from(k + 1)) as u32,
        min_distance: 6,
        linear_bound: LinearBound::AtMost(5),
        code: "Z4-Preparata code",
    })
}
