//! Weight distributions, the exact MacWilliams transform and the first three
//! Pless power moments.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::KrawtchoukContext;
use crate::error::{Error, Result};

/// Sparse weight distribution `weight -> count` of a length-`n` word set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightDistribution {
    n: u32,
    counts: BTreeMap<u32, BigUint>,
}

impl WeightDistribution {
    /// Builds a distribution from explicit `(weight, count)` pairs. Zero
    /// counts are dropped and repeated weights are summed.
    pub fn new<I, C>(n: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigUint>,
    {
        let mut counts = BTreeMap::new();
        for (w, c) in entries {
            if w > n {
                return Err(Error::Domain(format!("weight {w} exceeds length {n}")));
            }
            let c: BigUint = c.into();
            if !c.is_zero() {
                *counts.entry(w).or_insert_with(BigUint::zero) += c;
            }
        }
        Ok(Self { n, counts })
    }

    /// A code spectrum: the given nonzero-weight counts plus `A_0 = 1`.
    pub fn code<I, C>(n: u32, nonzero: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigUint>,
    {
        let mut d = Self::new(n, nonzero)?;
        if d.counts.contains_key(&0) {
            return Err(Error::Domain(
                "code spectrum given with explicit weight 0".into(),
            ));
        }
        d.counts.insert(0, BigUint::one());
        Ok(d)
    }

    /// Spectrum of the full space `F_2^n`.
    pub fn full_space(n: u32) -> Self {
        let counts = (0..=n)
            .map(|i| {
                (
                    i,
                    crate::combinatorics::binomial(n.into(), i.into())
                        .to_biguint()
                        .unwrap(),
                )
            })
            .collect();
        Self { n, counts }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn count(&self, w: u32) -> BigUint {
        self.counts.get(&w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> {
        self.counts.iter().map(|(w, c)| (*w, c))
    }

    /// Weights with a nonzero count, ascending.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.counts.keys().copied()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Smallest nonzero weight present, if any.
    pub fn min_nonzero_weight(&self) -> Option<u32> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn has_unit_zero(&self) -> bool {
        self.counts.get(&0).is_some_and(|c| c.is_one())
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Exact dual spectrum `A_j^perp` as rationals, with zero entries omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSpectrum {
    n: u32,
    entries: BTreeMap<u32, BigRational>,
}

impl DualSpectrum {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, j: u32) -> BigRational {
        self.entries
            .get(&j)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.entries.iter().map(|(j, v)| (*j, v))
    }

    pub fn total(&self) -> BigRational {
        self.entries
            .values()
            .fold(BigRational::zero(), |acc, v| acc + v)
    }

    pub fn is_integral(&self, j: u32) -> bool {
        self.get(j).is_integer()
    }

    pub fn first_non_integral(&self) -> Option<u32> {
        self.entries
            .iter()
            .find(|(_, v)| !v.is_integer())
            .map(|(j, _)| *j)
    }

    pub fn first_negative(&self) -> Option<u32> {
        self.entries
            .iter()
            .find(|(_, v)| v.is_negative())
            .map(|(j, _)| *j)
    }

    /// The dual as a weight distribution when every entry is a nonnegative
    /// integer.
    pub fn to_distribution(&self) -> Option<WeightDistribution> {
        let mut counts = BTreeMap::new();
        for (j, v) in &self.entries {
            if !v.is_integer() || v.is_negative() {
                return None;
            }
            counts.insert(*j, v.to_integer().to_biguint()?);
        }
        Some(WeightDistribution { n: self.n, counts })
    }
}

impl fmt::Display for DualSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(j, v)| format!("{j}:{v}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Whether [`macwilliams_dual`] insists the input is a genuine code spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMode {
    /// Require `A_0 = 1` and `sum A_i = q^k`.
    Strict,
    /// Require only `A_0 = 1`.
    Lenient,
}

/// Binary MacWilliams transform: `A_j^perp = 2^-k sum_i K_j(i) A_i`.
pub fn macwilliams_dual(a: &WeightDistribution, k: u32) -> Result<DualSpectrum> {
    let ctx = KrawtchoukContext::binary(a.n());
    macwilliams_dual_with(&ctx, a, k, SpectrumMode::Lenient)
}

/// MacWilliams transform over the field size of `ctx`.
pub fn macwilliams_dual_with(
    ctx: &KrawtchoukContext,
    a: &WeightDistribution,
    k: u32,
    mode: SpectrumMode,
) -> Result<DualSpectrum> {
    if ctx.n() != a.n() {
        return Err(Error::Precondition(format!(
            "context length {} differs from spectrum length {}",
            ctx.n(),
            a.n()
        )));
    }
    if !a.has_unit_zero() {
        return Err(Error::Precondition("spectrum must have A_0 = 1".into()));
    }
    let size = BigUint::from(ctx.q()).pow(k);
    if mode == SpectrumMode::Strict && a.total() != size {
        return Err(Error::Precondition(format!(
            "spectrum total {} differs from q^k = {size}",
            a.total()
        )));
    }
    let n = a.n();
    let mut sums = vec![BigInt::zero(); n as usize + 1];
    for (i, count) in a.iter() {
        let col = ctx.column(i)?;
        let count = BigInt::from(count.clone());
        for (s, kv) in sums.iter_mut().zip(col.iter()) {
            *s += kv * &count;
        }
    }
    let denom = BigInt::from(size);
    let entries = sums
        .into_iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(j, s)| (j as u32, reduce(s, &denom)))
        .collect();
    Ok(DualSpectrum { n, entries })
}

// gcd against the small residue; a direct gcd with a huge numerator is slow
fn reduce(num: BigInt, den: &BigInt) -> BigRational {
    let g = den.gcd(&(&num % den));
    BigRational::new_raw(num / &g, den / &g)
}

/// Residuals of the first three binary power moments, each written as
/// `(dual side) - (primal side)`:
///
/// ```text
/// r0 = 2^k                                  - sum A_j
/// r1 = 2^(k-1) (n - a1)                     - sum j A_j
/// r2 = 2^(k-2) (n(n+1) - 2n a1 + 2 a2)      - sum j^2 A_j
/// ```
///
/// All three vanish exactly when the moments hold for the given `a1`, `a2`.
pub fn pless_residuals(
    a: &WeightDistribution,
    k: u32,
    a1_dual: &BigInt,
    a2_dual: &BigInt,
) -> [BigRational; 3] {
    let n = BigInt::from(a.n());
    let mut m = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (w, c) in a.iter() {
        let c = BigInt::from(c.clone());
        let w = BigInt::from(w);
        m[0] += &c;
        m[1] += &w * &c;
        m[2] += &w * &w * &c;
    }
    let pow2 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
        }
    };
    let k = i64::from(k);
    let rhs0 = pow2(k);
    let rhs1 = pow2(k - 1) * BigRational::from_integer(&n - a1_dual);
    let rhs2 = pow2(k - 2)
        * BigRational::from_integer(&n * (&n + 1u32) - 2u32 * &n * a1_dual + 2u32 * a2_dual);
    let [m0, m1, m2] = m;
    [
        rhs0 - BigRational::from_integer(m0),
        rhs1 - BigRational::from_integer(m1),
        rhs2 - BigRational::from_integer(m2),
    ]
}

/// `value + slope * A_1^perp`, with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineCount {
    pub weight: u32,
    #[serde(with = "crate::serde_num::rational")]
    pub constant: BigRational,
    #[serde(with = "crate::serde_num::rational")]
    pub a1_coeff: BigRational,
}

impl fmt::Display for AffineCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{} = {}", self.weight, self.constant)?;
        if !self.a1_coeff.is_zero() {
            let sign = if self.a1_coeff.is_negative() {
                '-'
            } else {
                '+'
            };
            write!(f, " {sign} {}*A1", self.a1_coeff.abs())?;
        }
        Ok(())
    }
}

/// An integer relation `a1_coeff * A_1^perp + a2_coeff * A_2^perp = rhs`,
/// reduced so the coefficients are coprime and the leading nonzero one
/// among `(a2_coeff, a1_coeff)` is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualRelation {
    #[serde(with = "crate::serde_num::integer")]
    pub a1_coeff: BigInt,
    #[serde(with = "crate::serde_num::integer")]
    pub a2_coeff: BigInt,
    #[serde(with = "crate::serde_num::integer")]
    pub rhs: BigInt,
}

impl DualRelation {
    fn normalized(a1: BigRational, a2: BigRational, rhs: BigRational) -> Self {
        let den = a1.denom().lcm(a2.denom()).lcm(rhs.denom());
        let scale = BigRational::from_integer(den);
        let (mut x, mut y, mut z) = (
            (a1 * &scale).to_integer(),
            (a2 * &scale).to_integer(),
            (rhs * &scale).to_integer(),
        );
        let g = x.gcd(&y).gcd(&z);
        if !g.is_zero() {
            x /= &g;
            y /= &g;
            z /= &g;
        }
        let lead_negative = if y.is_zero() {
            x.is_negative()
        } else {
            y.is_negative()
        };
        if lead_negative {
            x = -x;
            y = -y;
            z = -z;
        }
        Self {
            a1_coeff: x,
            a2_coeff: y,
            rhs: z,
        }
    }

    /// True when no pair of nonnegative integers satisfies the relation
    /// because every coefficient is nonnegative and the right side is
    /// negative.
    pub fn forces_negative(&self) -> bool {
        !self.a1_coeff.is_negative() && !self.a2_coeff.is_negative() && self.rhs.is_negative()
    }
}

impl fmt::Display for DualRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (c, name) in [(&self.a1_coeff, "A1"), (&self.a2_coeff, "A2")] {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = if mag.is_one() {
                name.to_string()
            } else {
                format!("{mag}*{name}")
            };
            if terms.is_empty() {
                terms.push(if c.is_negative() {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                terms.push(format!(
                    "{} {body}",
                    if c.is_negative() { '-' } else { '+' }
                ));
            }
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} = {}", terms.join(" "), self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentStatus {
    Infeasible,
    Undetermined,
}

/// Why the moment system has no admissible solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum MomentReason {
    /// `P0` cannot hold: no nonzero weight is available but `2^k > 1`.
    EmptyWeightSet,
    /// The first moment pins `A_1^perp` to a non-integer value.
    NonIntegralA1 {
        #[serde(with = "crate::serde_num::rational")]
        a1: BigRational,
    },
    /// The second-moment relation has nonnegative coefficients and a
    /// negative right-hand side.
    NegativeRelation,
    /// Exhausting every admissible `A_1^perp` produced no nonnegative
    /// integral point.
    NoIntegralPoint { a1_max: u64 },
    /// An admissible point exists.
    Witness { a1: u64, a2: u64 },
}

/// Outcome of [`moment_solve_small`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentVerdict {
    pub status: MomentStatus,
    /// Weight counts as affine functions of `A_1^perp`.
    pub counts: Vec<AffineCount>,
    /// The first moment as a relation in `A_1^perp` alone (single weight only).
    pub first_moment: Option<DualRelation>,
    /// The second moment after substituting `counts`.
    pub relation: Option<DualRelation>,
    pub reason: MomentReason,
    /// Residual of the first moment at `A_1^perp = 0`, i.e.
    /// `2^(k-1) n - sum_w w A_w` for a single-weight spectrum.
    #[serde(with = "crate::serde_num::option_integer")]
    pub first_moment_gap: Option<BigInt>,
}

impl MomentVerdict {
    pub fn derivation(&self) -> Vec<String> {
        let mut lines: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        if let Some(gap) = &self.first_moment_gap {
            lines.push(format!("first moment gap at A1 = 0: {gap}"));
        }
        if let Some(r) = &self.first_moment {
            lines.push(format!("first moment: {r}"));
        }
        if let Some(r) = &self.relation {
            lines.push(format!("second moment: {r}"));
        }
        lines.push(match &self.reason {
            MomentReason::EmptyWeightSet => "no nonzero weight available".to_string(),
            MomentReason::NonIntegralA1 { a1 } => format!("A1 = {a1} is not an integer"),
            MomentReason::NegativeRelation => "no solution with nonnegative A1, A2".to_string(),
            MomentReason::NoIntegralPoint { a1_max } => {
                format!("no integral nonnegative point for 0 <= A1 <= {a1_max}")
            }
            MomentReason::Witness { a1, a2 } => {
                format!("moments satisfied at A1 = {a1}, A2 = {a2}")
            }
        });
        lines
    }
}

fn rat(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Solves the binary power moments symbolically for a spectrum supported on
/// at most two nonzero weights, with `A_1^perp` and `A_2^perp` as
/// nonnegative integer unknowns.
pub fn moment_solve_small(n: u32, k: u32, weights: &[u32]) -> Result<MomentVerdict> {
    let mut ws: Vec<u32> = weights.to_vec();
    ws.sort_unstable();
    ws.dedup();
    if ws.len() > 2 {
        return Err(Error::Unsupported(format!(
            "moment solver handles at most two weights, got {}",
            ws.len()
        )));
    }
    if let Some(&w) = ws.iter().find(|&&w| w == 0 || w > n) {
        return Err(Error::Domain(format!("weight {w} outside [1, {n}]")));
    }
    let nn = rat(n);
    let total = rat(BigInt::one() << k as usize) - rat(1);
    let half = |e: i64| -> BigRational {
        if e >= 0 {
            rat(BigInt::one() << e as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
        }
    };
    let p1 = half(i64::from(k) - 1); // 2^(k-1)
    let p2 = half(i64::from(k) - 2); // 2^(k-2)

    let mut verdict = MomentVerdict {
        status: MomentStatus::Infeasible,
        counts: Vec::new(),
        first_moment: None,
        relation: None,
        reason: MomentReason::EmptyWeightSet,
        first_moment_gap: None,
    };

    match ws.as_slice() {
        [] => {
            if total.is_zero() {
                verdict.status = MomentStatus::Undetermined;
                verdict.reason = MomentReason::Witness {
                    a1: u64::from(n),
                    a2: 0,
                };
            }
            Ok(verdict)
        }
        [w] => {
            let w = rat(*w);
            // P1: w * total = 2^(k-1) (n - a1)  =>  2^(k-1) a1 = 2^(k-1) n - w total
            let gap = &p1 * &nn - &w * &total;
            verdict.first_moment_gap = gap.is_integer().then(|| gap.to_integer());
            verdict.counts.push(AffineCount {
                weight: ws[0],
                constant: total.clone(),
                a1_coeff: BigRational::zero(),
            });
            verdict.first_moment = Some(DualRelation::normalized(
                p1.clone(),
                BigRational::zero(),
                gap.clone(),
            ));
            let a1 = &gap / &p1;
            if !a1.is_integer() {
                verdict.reason = MomentReason::NonIntegralA1 { a1 };
                return Ok(verdict);
            }
            // P2: w^2 total = 2^(k-2) (n(n+1) - 2n a1 + 2 a2)
            let rhs_const = &p2 * (&nn * (&nn + rat(1)));
            let rel = DualRelation::normalized(
                -(&p2 * rat(2) * &nn),
                &p2 * rat(2),
                &w * &w * &total - rhs_const,
            );
            let a2 = (&w * &w * &total / &p2 - &nn * (&nn + rat(1)) + rat(2) * &nn * &a1) / rat(2);
            verdict.relation = Some(rel);
            if a1.is_negative() || !a2.is_integer() || a2.is_negative() {
                verdict.reason = if a1.is_negative() {
                    MomentReason::NegativeRelation
                } else {
                    MomentReason::NoIntegralPoint {
                        a1_max: a1.to_integer().to_u64().unwrap_or(0),
                    }
                };
                return Ok(verdict);
            }
            verdict.status = MomentStatus::Undetermined;
            verdict.reason = MomentReason::Witness {
                a1: a1.to_integer().to_u64().unwrap_or(u64::MAX),
                a2: a2.to_integer().to_u64().unwrap_or(u64::MAX),
            };
            Ok(verdict)
        }
        [u, v] => {
            let (u, v) = (rat(*u), rat(*v));
            // A_u + A_v = total ; u A_u + v A_v = 2^(k-1) (n - a1)
            // => A_v = (2^(k-1) n - u total - 2^(k-1) a1) / (v - u)
            let dv = &v - &u;
            let av_c = (&p1 * &nn - &u * &total) / &dv;
            let av_s = -(&p1) / &dv;
            let au_c = &total - &av_c;
            let au_s = -av_s.clone();
            verdict.counts = vec![
                AffineCount {
                    weight: ws[0],
                    constant: au_c.clone(),
                    a1_coeff: au_s.clone(),
                },
                AffineCount {
                    weight: ws[1],
                    constant: av_c.clone(),
                    a1_coeff: av_s.clone(),
                },
            ];
            // P2: u^2 A_u + v^2 A_v = 2^(k-2) (n(n+1) - 2n a1 + 2 a2)
            // collect as  c1 a1 + c2 a2 = c0
            let lhs_c = &u * &u * &au_c + &v * &v * &av_c;
            let lhs_s = &u * &u * &au_s + &v * &v * &av_s;
            let c1 = &p2 * rat(2) * &nn + &lhs_s;
            let c2 = -(&p2 * rat(2));
            let c0 = &p2 * (&nn * (&nn + rat(1))) - &lhs_c;
            let rel = DualRelation::normalized(c1.clone(), c2.clone(), c0.clone());
            let negative = rel.forces_negative();
            verdict.relation = Some(rel);
            // a1 range from nonnegativity of both counts.
            let mut hi: Option<BigRational> = None;
            for (c, s) in [(&au_c, &au_s), (&av_c, &av_s)] {
                if s.is_negative() {
                    let bound = -(c / s);
                    hi = Some(match hi {
                        Some(h) if h < bound => h,
                        _ => bound,
                    });
                }
            }
            let a1_max = hi
                .map(|h| h.floor().to_integer())
                .unwrap_or_else(BigInt::zero);
            if negative {
                verdict.reason = MomentReason::NegativeRelation;
                return Ok(verdict);
            }
            let a1_max_u = a1_max.to_u64().unwrap_or(0);
            if a1_max.sign() != Sign::Minus {
                for a1 in 0..=a1_max_u {
                    let a1r = rat(a1);
                    let cu = &au_c + &au_s * &a1r;
                    let cv = &av_c + &av_s * &a1r;
                    if !cu.is_integer() || !cv.is_integer() || cu.is_negative() || cv.is_negative()
                    {
                        continue;
                    }
                    // c1 a1 + c2 a2 = c0
                    let a2 = (&c0 - &c1 * &a1r) / &c2;
                    if a2.is_integer() && !a2.is_negative() {
                        verdict.status = MomentStatus::Undetermined;
                        verdict.reason = MomentReason::Witness {
                            a1,
                            a2: a2.to_integer().to_u64().unwrap_or(u64::MAX),
                        };
                        return Ok(verdict);
                    }
                }
            }
            verdict.reason = MomentReason::NoIntegralPoint { a1_max: a1_max_u };
            Ok(verdict)
        }
        _ => unreachable!(),
    }
}
