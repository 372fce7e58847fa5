//! Exact binomial coefficients and Krawtchouk polynomial values.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc = C(n, i) * (n - i) / (i + 1), exact at every step
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Per-(n, q) store of Krawtchouk values `K_j(i)`.
///
/// Values are computed a whole column (all `j` for a fixed `i`) at a time
/// with the three-term recurrence in `j` and cached behind a lock. The cache
/// only ever grows, and a column once inserted is never replaced, so
/// concurrent readers always observe the same values.
#[derive(Debug)]
pub struct KrawtchoukContext {
    n: u32,
    q: u32,
    columns: RwLock<HashMap<u32, Arc<[BigInt]>>>,
}

impl KrawtchoukContext {
    pub fn new(n: u32, q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!(
                "field size q = {q} must be at least 2"
            )));
        }
        Ok(Self {
            n,
            q,
            columns: RwLock::new(HashMap::new()),
        })
    }

    pub fn binary(n: u32) -> Self {
        Self::new(n, 2).expect("q = 2 is valid")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `K_j^{n,q}(i)`.
    pub fn value(&self, j: u32, i: u32) -> Result<BigInt> {
        self.check_index("j", j)?;
        Ok(self.column(i)?[j as usize].clone())
    }

    /// The column `[K_0(i), K_1(i), ..., K_n(i)]`.
    pub fn column(&self, i: u32) -> Result<Arc<[BigInt]>> {
        self.check_index("i", i)?;
        if let Some(col) = self.columns.read().expect("cache lock").get(&i) {
            return Ok(Arc::clone(col));
        }
        let col: Arc<[BigInt]> = self.compute_column(i).into();
        let mut cache = self.columns.write().expect("cache lock");
        Ok(Arc::clone(cache.entry(i).or_insert(col)))
    }

    fn check_index(&self, name: &str, v: u32) -> Result<()> {
        if v > self.n {
            return Err(Error::Domain(format!(
                "Krawtchouk index {name} = {v} outside [0, {}]",
                self.n
            )));
        }
        Ok(())
    }

    // (j+1) K_{j+1}(x) = ((n-j)(q-1) + j - q x) K_j(x) - (q-1)(n-j+1) K_{j-1}(x)
    fn compute_column(&self, x: u32) -> Vec<BigInt> {
        let n = i64::from(self.n);
        let q = i64::from(self.q);
        let x = i64::from(x);
        let mut col = Vec::with_capacity(self.n as usize + 1);
        col.push(BigInt::one());
        if n == 0 {
            return col;
        }
        col.push(BigInt::from((q - 1) * n - q * x));
        for j in 1..n {
            let a = (n - j) * (q - 1) + j - q * x;
            let b = (q - 1) * (n - j + 1);
            let next: BigInt = (&col[j as usize] * a - &col[j as usize - 1] * b) / (j + 1);
            col.push(next);
        }
        col
    }
}

/// Free-function form of [`KrawtchoukContext::value`].
pub fn krawtchouk(ctx: &KrawtchoukContext, j: u32, i: u32) -> Result<BigInt> {
    ctx.value(j, i)
}
