//! Nonnegative integer vectors indexed by vertices.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

macro_rules! nonneg_vector {
    ($(#[$meta:meta])* $name:ident, $what:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(Vec<BigInt>);

        impl Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                json_ints::serialize(&self.0, s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let v = json_ints::deserialize(d)?;
                Self::new(v).map_err(serde::de::Error::custom)
            }
        }

        impl $name {
            /// Fails if any entry is negative.
            pub fn new(entries: Vec<BigInt>) -> Result<Self> {
                if let Some(v) = entries.iter().position(Signed::is_negative) {
                    return Err(Error::InvalidInput(format!(
                        concat!($what, " has negative entry at v{}"),
                        v + 1
                    )));
                }
                Ok(Self(entries))
            }

            pub fn zeros(n: usize) -> Self {
                Self(vec![BigInt::zero(); n])
            }

            pub fn from_u64s(entries: &[u64]) -> Self {
                Self(entries.iter().map(|&x| BigInt::from(x)).collect())
            }

            pub fn entries(&self) -> &[BigInt] {
                &self.0
            }

            pub fn into_inner(self) -> Vec<BigInt> {
                self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(Zero::is_zero)
            }

            pub fn total(&self) -> BigInt {
                self.0.iter().sum()
            }

            /// Parses whitespace-separated integers.
            pub fn parse(text: &str) -> Result<Self> {
                let entries = parse_ints(text)?;
                Self::new(entries)
            }

            pub(crate) fn from_vec_unchecked(entries: Vec<BigInt>) -> Self {
                debug_assert!(entries.iter().all(|e| !e.is_negative()));
                Self(entries)
            }
        }

        impl Index<usize> for $name {
            type Output = BigInt;
            fn index(&self, i: usize) -> &BigInt {
                &self.0[i]
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_ints(f, &self.0)
            }
        }

        impl TryFrom<Vec<BigInt>> for $name {
            type Error = Error;
            fn try_from(v: Vec<BigInt>) -> Result<Self> {
                Self::new(v)
            }
        }

        impl From<$name> for Vec<BigInt> {
            fn from(v: $name) -> Vec<BigInt> {
                v.0
            }
        }
    };
}

nonneg_vector!(
    /// Chips per vertex: a position of the game.
    ChipDistribution,
    "chip distribution"
);

nonneg_vector!(
    /// Number of firings per vertex. Also used as an upper bound for
    /// bounded games.
    FiringVector,
    "firing vector"
);

nonneg_vector!(
    /// A nonnegative integer kernel vector of the Laplacian.
    PeriodVector,
    "period vector"
);

/// Serde adapter writing arbitrary-precision integers as plain JSON
/// numbers.
pub mod json_ints {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let nums: Vec<Number> = v
            .iter()
            .map(|x| x.to_string().parse::<Number>().expect("decimal integer is a JSON number"))
            .collect();
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let nums = Vec::<Number>::deserialize(d)?;
        nums.iter()
            .map(|n| {
                n.to_string()
                    .parse::<BigInt>()
                    .map_err(|_| serde::de::Error::custom(format!("expected integer, found {n}")))
            })
            .collect()
    }
}

/// Parses whitespace- or comma-separated integers, allowing `#` comments.
pub fn parse_ints(text: &str) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            out.push(tok.parse::<BigInt>().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("expected integer, found {tok:?}"),
            })?);
        }
    }
    Ok(out)
}

pub(crate) fn write_ints(f: &mut fmt::Formatter<'_>, v: &[BigInt]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Formats an arbitrary integer vector the same way the newtypes display.
pub fn format_ints(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
