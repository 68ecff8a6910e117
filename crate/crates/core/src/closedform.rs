//! Closed counting formulas for `NC_{n,t}^{(m)}`, evaluated exactly.
//!
//! Every formula is computed as a [`BigRational`] and then checked to be a
//! non-negative integer, so a mistyped factor shows up as an
//! [`Error::Invariant`] instead of a silently wrong count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ncpart::BlockProfile;
use crate::params::Params;

/// Composition `(s_1, ..., s_{l+1})` of `n - t`; the chain length is
/// `l = len - 1` and `rk(pi_i) = s_1 + ... + s_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankVector(Vec<usize>);

impl RankVector {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::param(
                "a rank vector needs at least two parts (l >= 1)",
            ));
        }
        Ok(RankVector(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Chain length `l`.
    pub fn chain_len(&self) -> usize {
        self.0.len() - 1
    }

    /// Target ranks `s_1, s_1 + s_2, ..., s_1 + ... + s_l`.
    pub fn cumulative_ranks(&self) -> Vec<usize> {
        self.0[..self.chain_len()]
            .iter()
            .scan(0, |acc, s| {
                *acc += s;
                Some(*acc)
            })
            .collect()
    }

    /// Slack part `s_{l+1}`.
    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    fn check_sum(&self, p: &Params) -> Result<()> {
        let total: usize = self.0.iter().sum();
        if total != p.max_rank() {
            return Err(Error::param(format!(
                "rank vector {:?} sums to {total}, expected n - t = {}",
                self.0,
                p.max_rank()
            )));
        }
        Ok(())
    }

    /// All compositions of `total` into `parts` non-negative parts, in
    /// lexicographic order.
    pub fn compositions(total: usize, parts: usize) -> Vec<RankVector> {
        fn rec(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<RankVector>) {
            if slots == 1 {
                cur.push(left);
                out.push(RankVector(cur.clone()));
                cur.pop();
                return;
            }
            for first in 0..=left {
                cur.push(first);
                rec(left - first, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if parts >= 2 {
            rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
        }
        out
    }
}

/// Generalised binomial coefficient `r (r-1) ... (r-k+1) / k!`, and zero for
/// negative `k`. The upper index may be negative.
pub fn binomial(r: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if r >= 0 && k > r {
        return BigInt::zero();
    }
    // use the smaller of k and r-k when the upper index is a non-negative integer
    let k = if r >= 0 && k > r - k { r - k } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(r - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient `(b_1 + ... + b_k)! / (b_1! ... b_k!)` as a
/// product of binomials.
pub fn multinomial(parts: &[usize]) -> BigInt {
    let mut running = 0i64;
    let mut acc = BigInt::one();
    for &b in parts {
        running += b as i64;
        acc *= binomial(running, b as i64);
    }
    acc
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

fn ratio(num: BigInt, den: BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::invariant("zero denominator in closed formula"));
    }
    Ok(BigRational::new(num, den))
}

/// Asserts that a formula value is a non-negative integer.
pub(crate) fn integral(value: BigRational, what: &str) -> Result<BigInt> {
    if !value.is_integer() {
        return Err(Error::invariant(format!("{what} evaluated to non-integer {value}")));
    }
    let v = value.to_integer();
    if v.is_negative() {
        return Err(Error::invariant(format!("{what} evaluated to negative {v}")));
    }
    Ok(v)
}

/// Number of multi-chains `pi_1 <= ... <= pi_l` with prescribed ranks.
pub fn multichain_count_formula(p: &Params, s: &RankVector) -> Result<BigInt> {
    s.check_sum(p)?;
    let (m, n, t) = (p.m() as i64, p.n() as i64, p.t() as i64);
    let mn = m * n;
    let parts = s.parts();
    let l = s.chain_len();
    let last = s.last() as i64;

    let num = BigInt::from(t * (mn - t + 1) - last * (t - 1));
    let den = BigInt::from(n * (mn - t + 1));
    let mut prod = binomial(n, parts[0] as i64);
    for &si in &parts[1..l] {
        prod *= binomial(mn, si as i64);
    }
    prod *= binomial(mn - t + 1, last);
    integral(ratio(num, den)? * BigRational::from_integer(prod), "multi-chain formula")
}

fn check_profile(p: &Params, b: &BlockProfile) -> Result<()> {
    if b.weighted_sum() != p.n() {
        return Err(Error::param(format!(
            "block profile {:?} has sum i*b_i = {}, expected n = {}",
            b.counts(),
            b.weighted_sum(),
            p.n()
        )));
    }
    Ok(())
}

/// Number of elements with `b_i` blocks of size `m i`.
pub fn count_by_profile(p: &Params, b: &BlockProfile) -> Result<BigInt> {
    check_profile(p, b)?;
    let (m, n, t) = (p.m() as i64, p.n() as i64, p.t() as i64);
    let mn = m * n;
    let blocks = b.block_count() as i64;
    let num = BigInt::from((mn - t + 1) * blocks - mn * (blocks - t));
    let den = BigInt::from((mn - t + 1) * blocks);
    let prod = binomial(mn - t + 1, blocks - t) * multinomial(b.counts());
    integral(ratio(num, den)? * BigRational::from_integer(prod), "profile census")
}

/// Number of elements of rank `s`.
pub fn count_by_rank(p: &Params, s: usize) -> Result<BigInt> {
    if s > p.max_rank() {
        return Err(Error::param(format!(
            "rank {s} outside [0, {}]",
            p.max_rank()
        )));
    }
    let (m, n, t, s) = (p.m() as i64, p.n() as i64, p.t() as i64, s as i64);
    let mn = m * n;
    let num = BigInt::from(mn * t - (n - s) * (t - 1));
    let den = BigInt::from(n * (mn - t + 1));
    let prod = binomial(mn - t + 1, n - s - t) * binomial(n, s);
    integral(ratio(num, den)? * BigRational::from_integer(prod), "rank census")
}

/// Cardinality of `NC_{n,t}^{(m)}`.
pub fn total_count(p: &Params) -> Result<BigInt> {
    let (m, n, t) = (p.m() as i64, p.n() as i64, p.t() as i64);
    let num = BigInt::from(m * t + 1);
    let den = BigInt::from(m * n + 1);
    let prod = binomial((m + 1) * n - t, n - t);
    integral(ratio(num, den)? * BigRational::from_integer(prod), "total count")
}

/// Number of multi-chains with prescribed ranks whose bottom element has
/// block profile `b`; zero unless `sum i b_i = n` and `s_1 + sum b_i = n`.
pub fn chain_count_with_profile(p: &Params, s: &RankVector, b: &BlockProfile) -> Result<BigInt> {
    s.check_sum(p)?;
    if b.counts().len() != p.n() {
        return Err(Error::param(format!(
            "block profile has {} entries, expected n = {}",
            b.counts().len(),
            p.n()
        )));
    }
    let blocks = b.block_count();
    if b.weighted_sum() != p.n() || s.parts()[0] + blocks != p.n() {
        return Ok(BigInt::zero());
    }
    let (m, n, t) = (p.m() as i64, p.n() as i64, p.t() as i64);
    let mn = m * n;
    let parts = s.parts();
    let l = s.chain_len();
    let last = s.last() as i64;

    let num = BigInt::from(t * (mn - t + 1) - last * (t - 1));
    let den = BigInt::from((mn - t + 1) * blocks as i64);
    let mut prod = multinomial(b.counts());
    for &si in &parts[1..l] {
        prod *= binomial(mn, si as i64);
    }
    prod *= binomial(mn - t + 1, last);
    integral(ratio(num, den)? * BigRational::from_integer(prod), "profiled chain formula")
}

/// `t (mn)^{n-t-1}`; only defined for `n > t`.
pub fn max_chains_formula(p: &Params) -> Result<BigInt> {
    if p.n() == p.t() {
        return Err(Error::Unsupported(format!(
            "maximal-chain formula needs n > t, got {p}"
        )));
    }
    let base = big(p.ground_size());
    Ok(big(p.t()) * num_traits::pow(base, p.max_rank() - 1))
}

/// Zeta polynomial evaluated at `l`: the number of multi-chains of length `l - 1`.
pub fn zeta_formula(p: &Params, l: usize) -> Result<BigInt> {
    if l == 0 {
        return Err(Error::param("zeta polynomial needs l >= 1"));
    }
    let (m, n, t, l) = (p.m() as i64, p.n() as i64, p.t() as i64, l as i64);
    let num = BigInt::from((l - 1) * m * t + 1);
    let den = BigInt::from((l - 1) * m * n + 1);
    let prod = binomial(n + (l - 1) * m * n - t, n - t);
    integral(ratio(num, den)? * BigRational::from_integer(prod), "zeta polynomial")
}
