//! Decimal-string serde adapters for arbitrary-precision numbers.

pub mod integer {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(D::Error::custom)
    }

    pub(crate) fn parse(s: &str) -> Result<BigInt, String> {
        // Reject forms like "+5" or "007" so the encoding stays canonical.
        let digits = s.strip_prefix('-').unwrap_or(s);
        let canonical = !digits.is_empty()
            && digits.bytes().all(|b| b.is_ascii_digit())
            && (digits == "0" || !digits.starts_with('0'))
            && s != "-0";
        if !canonical {
            return Err(format!("non-canonical integer `{s}`"));
        }
        s.parse().map_err(|e| format!("{e}"))
    }
}

pub mod option_integer {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| super::integer::parse(&s).map_err(D::Error::custom))
            .transpose()
    }
}

pub mod rational {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s.as_str(), "1"),
        };
        let num = super::integer::parse(num).map_err(D::Error::custom)?;
        let den: BigInt = super::integer::parse(den).map_err(D::Error::custom)?;
        if den <= BigInt::from(0) {
            return Err(D::Error::custom("rational denominator must be positive"));
        }
        let r = BigRational::new(num, den);
        // Only reduced fractions (and bare integers) are accepted.
        if r.to_string() != s && !(r.denom().is_one() && !s.contains('/')) {
            return Err(D::Error::custom(format!("non-canonical rational `{s}`")));
        }
        Ok(r)
    }
}

/// `u32`-keyed maps with decimal-string keys, readable inside tagged enums.
pub mod weight_map {
    use std::collections::BTreeMap;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BTreeMap<u32, u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(v.iter().map(|(k, c)| (k.to_string(), c)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u32, u64>, D::Error> {
        BTreeMap::<String, u64>::deserialize(d)?
            .into_iter()
            .map(|(k, c)| match k.parse::<u32>() {
                Ok(w) if w.to_string() == k => Ok((w, c)),
                _ => Err(D::Error::custom(format!("bad weight key `{k}`"))),
            })
            .collect()
    }
}
