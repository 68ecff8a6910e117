use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of objects an enumeration may produce.
pub const DEFAULT_MAX_OBJECTS: u64 = 10_000_000;

/// The triple `(m, n, t)`: blocks have sizes divisible by `m`, the ground set
/// is `[mn]`, and the first `t` elements must lie in distinct blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct Params {
    m: usize,
    n: usize,
    t: usize,
}

#[derive(Deserialize)]
struct RawParams {
    m: usize,
    n: usize,
    t: usize,
}

impl TryFrom<RawParams> for Params {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        Params::new(raw.m, raw.n, raw.t)
    }
}

impl Params {
    pub fn new(m: usize, n: usize, t: usize) -> Result<Self> {
        if m == 0 || n == 0 || t == 0 {
            return Err(Error::param(format!(
                "m, n, t must be positive (got m={m}, n={n}, t={t})"
            )));
        }
        if t > n {
            return Err(Error::param(format!("t={t} exceeds n={n}")));
        }
        Ok(Params { m, n, t })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Size `mn` of the ground set.
    pub fn ground_size(&self) -> usize {
        self.m * self.n
    }

    /// Rank of the poset, `n - t`.
    pub fn max_rank(&self) -> usize {
        self.n - self.t
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, n={}, t={})", self.m, self.n, self.t)
    }
}

/// Refuses a job whose predicted size exceeds `cap`.
pub fn check_cap(predicted: &BigInt, cap: u64) -> Result<()> {
    if *predicted > BigInt::from(cap) {
        return Err(Error::Resource {
            predicted: predicted.to_string(),
            cap,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_triples() {
        assert!(Params::new(0, 3, 1).is_err());
        assert!(Params::new(1, 0, 1).is_err());
        assert!(Params::new(1, 3, 0).is_err());
        assert!(matches!(Params::new(1, 3, 4), Err(Error::Parameter(_))));
        let p = Params::new(2, 3, 2).unwrap();
        assert_eq!((p.ground_size(), p.max_rank()), (6, 1));
    }

    #[test]
    fn deserialization_validates() {
        let ok: Params = serde_json::from_str(r#"{"m":2,"n":3,"t":2}"#).unwrap();
        assert_eq!(ok, Params::new(2, 3, 2).unwrap());
        assert!(serde_json::from_str::<Params>(r#"{"m":2,"n":3,"t":4}"#).is_err());
    }
}
