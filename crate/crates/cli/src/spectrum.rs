//! Spectrum files: one `weight,count` pair per line, `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use codebound::WeightDistribution;
use num_bigint::BigUint;
use num_traits::One;

pub fn parse(src: &str, n: u32) -> Result<WeightDistribution> {
    let mut counts: BTreeMap<u32, BigUint> = BTreeMap::new();
    for (idx, line) in src.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let Some((w, c)) = body.split_once(',') else {
            bail!("line {lineno}: expected `weight,count`, got `{body}`");
        };
        let w: u32 = w
            .trim()
            .parse()
            .with_context(|| format!("line {lineno}: bad weight `{}`", w.trim()))?;
        let c: BigUint = c
            .trim()
            .parse()
            .with_context(|| format!("line {lineno}: bad count `{}`", c.trim()))?;
        if w > n {
            bail!("line {lineno}: weight {w} exceeds n = {n}");
        }
        if counts.insert(w, c).is_some() {
            bail!("line {lineno}: weight {w} listed twice");
        }
    }
    counts.entry(0).or_insert_with(BigUint::one);
    Ok(WeightDistribution::new(n, counts)?)
}

pub fn read(path: &Path, n: u32) -> Result<WeightDistribution> {
    let src = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read spectrum file {}", path.display()))?;
    parse(&src, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_implicit_zero() {
        let a = parse("# hamming\n3,7\n4,7 # middle\n\n7,1\n", 7).unwrap();
        assert_eq!(a.count(0), BigUint::one());
        assert_eq!(a.count(3), BigUint::from(7u32));
        assert_eq!(a.total(), BigUint::from(16u32));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse("3;7\n", 7).is_err());
        assert!(parse("8,1\n", 7).is_err());
        assert!(parse("3,1\n3,2\n", 7).is_err());
        assert!(parse("3,-1\n", 7).is_err());
    }
}
