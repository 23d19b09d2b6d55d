//! Exact rational scalars and their `"p/q"` text form.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational used for every coordinate and length in the crate.
pub type Q = Ratio<i128>;

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn frac(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// Canonical representative of `x` modulo `modulus` in `[0, modulus)`.
/// A zero modulus leaves `x` untouched (generic cycle).
pub fn reduce_mod(x: Q, modulus: u32) -> Q {
    if modulus == 0 {
        return x;
    }
    let m = q(modulus as i128);
    let k = (x / m).floor();
    x - m * k
}

/// `a ≡ b (mod modulus)`, with exact equality when the modulus is zero.
pub fn congruent(a: Q, b: Q, modulus: u32) -> bool {
    if modulus == 0 {
        return a == b;
    }
    let diff = (a - b) / q(modulus as i128);
    diff.is_integer()
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => s.parse::<i128>().map(q).map_err(|_| bad()),
    }
}

/// Least common multiple of denominators, used to clear fractions.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> i128 {
    xs.into_iter().fold(1i128, |acc, x| acc.lcm(x.denom()))
}

pub fn abs(x: Q) -> Q {
    x.abs()
}

/// Serde adapter storing a [`Q`] as a `"p/q"` string.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        parse_q(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod serde_qvec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|r| parse_q(r).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_into_window() {
        assert_eq!(reduce_mod(q(-2), 3), q(1));
        assert_eq!(reduce_mod(frac(7, 2), 3), frac(1, 2));
        assert_eq!(reduce_mod(q(-4), 0), q(-4));
    }

    #[test]
    fn congruence() {
        assert!(congruent(q(-1), q(2), 3));
        assert!(!congruent(frac(1, 2), q(2), 3));
        assert!(congruent(q(5), q(5), 0));
        assert!(!congruent(q(5), q(2), 0));
    }

    #[test]
    fn text_form() {
        assert_eq!(format_q(&frac(-6, 4)), "-3/2");
        assert_eq!(format_q(&q(7)), "7");
        assert_eq!(parse_q(" -3/2 ").unwrap(), frac(-3, 2));
        assert_eq!(parse_q("12").unwrap(), q(12));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
