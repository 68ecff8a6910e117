//! Set partitions of `[N]`, the `t`-aware non-crossing condition, and the
//! enumeration of `NC_{n,t}^{(m)}`.
//!
//! A [`SetPartition`] is always stored in canonical form: every block sorted
//! ascending, blocks ordered by their minimum. Equality and hashing are then
//! structural.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closedform::total_count;
use crate::error::{Error, Result};
use crate::params::{check_cap, Params, DEFAULT_MAX_OBJECTS};

/// A partition of `{1, ..., N}` into non-empty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionJson {
            n: self.ground_size,
            blocks: self.blocks.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PartitionJson::deserialize(d)?;
        SetPartition::new(raw.n, raw.blocks).map_err(serde::de::Error::custom)
    }
}

impl SetPartition {
    /// Validates that `blocks` cover `[ground_size]` exactly once and brings
    /// them into canonical form.
    pub fn new(ground_size: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if ground_size == 0 {
            return Err(Error::param("ground set must be non-empty"));
        }
        let mut seen = vec![false; ground_size + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::domain("empty block"));
            }
            block.sort_unstable();
            for &e in block.iter() {
                if e == 0 || e > ground_size {
                    return Err(Error::domain(format!(
                        "element {e} outside [1, {ground_size}]"
                    )));
                }
                if seen[e] {
                    return Err(Error::domain(format!("element {e} appears twice")));
                }
                seen[e] = true;
            }
        }
        if let Some(missing) = (1..=ground_size).find(|&e| !seen[e]) {
            return Err(Error::domain(format!("element {missing} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { ground_size, blocks })
    }

    /// Builds a partition from block labels, `labels[e - 1]` naming the block of `e`.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (idx, &label) in labels.iter().enumerate() {
            groups.entry(label).or_default().push(idx + 1);
        }
        SetPartition::new(labels.len(), groups.into_values().collect())
    }

    /// All elements in singleton blocks.
    pub fn singletons(ground_size: usize) -> Self {
        SetPartition {
            ground_size,
            blocks: (1..=ground_size).map(|e| vec![e]).collect(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of every element, `labels()[e - 1]`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.ground_size];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                labels[e - 1] = b;
            }
        }
        labels
    }

    pub fn is_m_divisible(&self, m: usize) -> bool {
        self.blocks.iter().all(|b| b.len() % m == 0)
    }

    /// Relabels element `i <= t` as `t + 1 - i` and leaves the rest fixed.
    pub fn tilde(&self, t: usize) -> Result<Self> {
        if t == 0 || t > self.ground_size {
            return Err(Error::param(format!(
                "t={t} outside [1, {}]",
                self.ground_size
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&e| if e <= t { t + 1 - e } else { e })
                    .collect()
            })
            .collect();
        SetPartition::new(self.ground_size, blocks)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (i, e) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

fn check_t(pi: &SetPartition, t: usize) -> Result<()> {
    if t == 0 || t > pi.ground_size() {
        return Err(Error::param(format!(
            "t={t} outside [1, {}]",
            pi.ground_size()
        )));
    }
    Ok(())
}

/// True iff no block holds two of the elements `1, ..., t`.
pub fn is_t_partition(pi: &SetPartition, t: usize) -> Result<bool> {
    check_t(pi, t)?;
    Ok(pi
        .blocks()
        .iter()
        .all(|b| b.iter().take_while(|&&e| e <= t).count() <= 1))
}

/// The `t`-aware non-crossing test, by a direct scan over all quadruples
/// `i < j < k < l`:
/// for `j <= t` the pattern `{i, l} | {j, k}` is forbidden, for `j > t` the
/// classical pattern `{i, k} | {j, l}`.
pub fn is_noncrossing_t(pi: &SetPartition, t: usize) -> Result<bool> {
    if !is_t_partition(pi, t)? {
        return Err(Error::domain(format!("{pi} is not a {t}-partition")));
    }
    let lab = pi.labels();
    let n = lab.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    // 0-based j < t  <=>  1-based j <= t
                    let crossing = if j < t {
                        lab[i] == lab[l] && lab[j] == lab[k] && lab[i] != lab[j]
                    } else {
                        lab[i] == lab[k] && lab[j] == lab[l] && lab[i] != lab[j]
                    };
                    if crossing {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Membership test for `NC_{n,t}^{(m)}`.
pub fn is_member(pi: &SetPartition, p: &Params) -> bool {
    pi.ground_size() == p.ground_size()
        && pi.is_m_divisible(p.m())
        && matches!(is_t_partition(pi, p.t()), Ok(true))
        && matches!(is_noncrossing_t(pi, p.t()), Ok(true))
}

/// `pi1 <= pi2` in refinement order.
pub fn refines(pi1: &SetPartition, pi2: &SetPartition) -> Result<bool> {
    if pi1.ground_size() != pi2.ground_size() {
        return Err(Error::domain(format!(
            "ground sizes differ ({} vs {})",
            pi1.ground_size(),
            pi2.ground_size()
        )));
    }
    let outer = pi2.labels();
    Ok(pi1
        .blocks()
        .iter()
        .all(|b| b.iter().all(|&e| outer[e - 1] == outer[b[0] - 1])))
}

/// `n - bl(pi)`.
pub fn rank_of(pi: &SetPartition, p: &Params) -> Result<usize> {
    if pi.ground_size() != p.ground_size() {
        return Err(Error::domain(format!(
            "partition of [{}] is not on the ground set [{}]",
            pi.ground_size(),
            p.ground_size()
        )));
    }
    p.n().checked_sub(pi.block_count()).ok_or_else(|| {
        Error::domain(format!("{pi} has more than n = {} blocks", p.n()))
    })
}

/// `b_i` = number of blocks of size `m i`, for `i = 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockProfile(Vec<usize>);

impl BlockProfile {
    pub fn new(counts: Vec<usize>) -> Self {
        BlockProfile(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// `sum_i i b_i`.
    pub fn weighted_sum(&self) -> usize {
        self.0.iter().enumerate().map(|(i, b)| (i + 1) * b).sum()
    }

    /// `sum_i b_i`.
    pub fn block_count(&self) -> usize {
        self.0.iter().sum()
    }

    /// Every profile of length `n` with `sum_i i b_i = n`, i.e. the integer
    /// partitions of `n` in multiplicity form.
    pub fn all_for(n: usize) -> Vec<BlockProfile> {
        fn rec(part: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<BlockProfile>) {
            if part == 0 {
                if left == 0 {
                    out.push(BlockProfile(cur.clone()));
                }
                return;
            }
            for mult in 0..=left / part {
                cur[part - 1] = mult;
                rec(part - 1, left - mult * part, cur, out);
            }
            cur[part - 1] = 0;
        }
        let mut out = Vec::new();
        rec(n, n, &mut vec![0; n], &mut out);
        out.sort();
        out
    }

    pub fn weight_signature(&self) -> WeightSignature {
        WeightSignature(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &b)| b > 0)
                .map(|(i, &b)| (i + 1, b))
                .collect(),
        )
    }
}

/// The monomial `prod_i x_i^{b_i}`, stored as `(i, exponent)` pairs with
/// non-zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSignature(Vec<(usize, usize)>);

impl WeightSignature {
    pub fn exponents(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> usize {
        self.0
            .iter()
            .find(|(var, _)| *var == i)
            .map_or(0, |(_, e)| *e)
    }
}

impl fmt::Display for WeightSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(i, e)| if *e == 1 { format!("x_{i}") } else { format!("x_{i}^{e}") })
            .collect();
        write!(f, "{}", terms.join(" "))
    }
}

/// Block profile of an `m`-divisible partition of `[mn]`.
pub fn block_profile(pi: &SetPartition, p: &Params) -> Result<BlockProfile> {
    if pi.ground_size() != p.ground_size() {
        return Err(Error::domain(format!(
            "partition of [{}] is not on [{}]",
            pi.ground_size(),
            p.ground_size()
        )));
    }
    let mut counts = vec![0; p.n()];
    for block in pi.blocks() {
        if block.len() % p.m() != 0 {
            return Err(Error::domain(format!(
                "block of size {} is not divisible by m = {}",
                block.len(),
                p.m()
            )));
        }
        counts[block.len() / p.m() - 1] += 1;
    }
    Ok(BlockProfile(counts))
}

/// Classical `m`-divisible non-crossing partitions of the interval
/// `lo..=hi`, split by the block containing `lo`.
fn classical_nc(lo: usize, hi: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    grow_first_block(vec![lo], vec![Vec::new()], hi, m, &mut out);
    out
}

fn grow_first_block(
    block: Vec<usize>,
    inner: Vec<Vec<Vec<usize>>>,
    hi: usize,
    m: usize,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let last = *block.last().expect("first block is never empty");
    // close the block; everything after it is an independent interval
    if block.len().is_multiple_of(m) && (hi - last).is_multiple_of(m) {
        let rest = classical_nc(last + 1, hi, m);
        for left in &inner {
            for right in &rest {
                let mut blocks = Vec::with_capacity(1 + left.len() + right.len());
                blocks.push(block.clone());
                blocks.extend(left.iter().cloned());
                blocks.extend(right.iter().cloned());
                out.push(blocks);
            }
        }
    }
    // or extend it by v, with the gap last+1..v-1 partitioned on its own
    let mut v = last + 1;
    while v <= hi {
        let gap = classical_nc(last + 1, v - 1, m);
        let mut inner_next = Vec::with_capacity(inner.len() * gap.len());
        for left in &inner {
            for g in &gap {
                let mut merged = left.clone();
                merged.extend(g.iter().cloned());
                inner_next.push(merged);
            }
        }
        let mut next = block.clone();
        next.push(v);
        grow_first_block(next, inner_next, hi, m, out);
        v += m;
    }
}

/// Classical `m`-divisible non-crossing partitions of `[mn]`, i.e. `NC_{n,1}^{(m)}`.
pub fn enumerate_classical_nc(m: usize, n: usize) -> Vec<SetPartition> {
    let mut out: Vec<SetPartition> = classical_nc(1, m * n, m)
        .into_iter()
        .map(|blocks| SetPartition::new(m * n, blocks).expect("generator covers [mn]"))
        .collect();
    out.sort();
    out
}

/// `NC_{n,t}^{(m)}` with the default object cap.
pub fn enumerate_nc(p: &Params) -> Result<Vec<SetPartition>> {
    enumerate_nc_capped(p, DEFAULT_MAX_OBJECTS)
}

/// `NC_{n,t}^{(m)}`, sorted by rank and then by blocks. The tilde image of
/// every member is a classical non-crossing partition, so members are found
/// by pulling back classical ones and filtering.
pub fn enumerate_nc_capped(p: &Params, cap: u64) -> Result<Vec<SetPartition>> {
    check_cap(&total_count(p)?, cap)?;
    let t = p.t();
    let mut out = Vec::new();
    for sigma in enumerate_classical_nc(p.m(), p.n()) {
        let pi = sigma.tilde(t)?;
        if is_t_partition(&pi, t)? && is_noncrossing_t(&pi, t)? {
            out.push(pi);
        }
    }
    out.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: &[&[usize]]) -> SetPartition {
        SetPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn sample_partition() -> SetPartition {
        part(14, &[&[1, 6, 7, 8], &[2, 9, 12, 13], &[3, 14], &[4, 5], &[10, 11]])
    }

    #[test]
    fn canonical_form_and_validation() {
        let a = part(4, &[&[4, 2], &[3, 1]]);
        assert_eq!(a.blocks(), &[vec![1, 3], vec![2, 4]]);
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2, 3], vec![]]).is_err());
        assert_eq!(SetPartition::from_labels(&[7, 3, 7, 3]).unwrap(), a);
        assert_eq!(a.to_string(), "{{1,3},{2,4}}");
    }

    #[test]
    fn json_encoding() {
        let a = part(4, &[&[2, 4], &[1, 3]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":4,"blocks":[[1,3],[2,4]]}"#);
        let back: SetPartition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<SetPartition>(r#"{"n":3,"blocks":[[1,2]]}"#).is_err());
    }

    #[test]
    fn t_partition_examples() {
        assert!(is_t_partition(&sample_partition(), 3).unwrap());
        assert!(!is_t_partition(&part(2, &[&[1, 2]]), 2).unwrap());
        assert!(is_t_partition(&SetPartition::singletons(5), 5).unwrap());
        assert!(matches!(
            is_t_partition(&SetPartition::singletons(5), 6),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn noncrossing_examples() {
        assert!(is_noncrossing_t(&sample_partition(), 3).unwrap());
        let crossing = part(14, &[&[1, 6, 7, 8], &[2, 9, 12, 13], &[3, 4, 5, 14], &[10, 11]]);
        assert!(!is_noncrossing_t(&crossing, 3).unwrap());
        let x = part(4, &[&[1, 3], &[2, 4]]);
        assert!(!is_noncrossing_t(&x, 1).unwrap());
        assert!(is_noncrossing_t(&x, 2).unwrap());
        assert!(matches!(
            is_noncrossing_t(&part(2, &[&[1, 2]]), 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let nc = enumerate_nc(&Params::new(2, 3, 2).unwrap()).unwrap();
        assert_eq!(nc.len(), 5);
        let one = enumerate_nc(&Params::new(1, 4, 4).unwrap()).unwrap();
        assert_eq!(one, vec![SetPartition::singletons(4)]);
        assert_eq!(enumerate_nc(&Params::new(1, 4, 2).unwrap()).unwrap().len(), 9);
        assert_eq!(enumerate_classical_nc(1, 4).len(), 14);
        assert_eq!(enumerate_classical_nc(2, 3).len(), 12);
    }

    #[test]
    fn enumeration_respects_cap() {
        let p = Params::new(1, 6, 1).unwrap();
        assert!(matches!(enumerate_nc_capped(&p, 100), Err(Error::Resource { .. })));
        assert_eq!(enumerate_nc_capped(&p, 132).unwrap().len(), 132);
    }

    #[test]
    fn enumeration_is_rank_sorted() {
        let p = Params::new(1, 5, 2).unwrap();
        let nc = enumerate_nc(&p).unwrap();
        let ranks: Vec<usize> = nc.iter().map(|pi| rank_of(pi, &p).unwrap()).collect();
        assert!(ranks.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn refinement_examples() {
        let a = part(3, &[&[1, 2], &[3]]);
        let b = part(3, &[&[1, 3], &[2]]);
        assert!(refines(&a, &a).unwrap());
        assert!(refines(&SetPartition::singletons(3), &b).unwrap());
        assert!(!refines(&a, &b).unwrap());
        assert!(!refines(&b, &a).unwrap());
        assert!(matches!(
            refines(&a, &SetPartition::singletons(4)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_of(&sample_partition(), &Params::new(2, 7, 3).unwrap()).unwrap(), 2);
        assert_eq!(
            rank_of(&SetPartition::singletons(4), &Params::new(1, 4, 2).unwrap()).unwrap(),
            0
        );
        assert_eq!(
            rank_of(&part(3, &[&[1, 2, 3]]), &Params::new(1, 3, 1).unwrap()).unwrap(),
            2
        );
    }

    #[test]
    fn profile_examples() {
        let p = Params::new(2, 7, 3).unwrap();
        let prof = block_profile(&sample_partition(), &p).unwrap();
        assert_eq!(prof.counts(), &[3, 2, 0, 0, 0, 0, 0]);
        assert_eq!(prof.weight_signature().to_string(), "x_1^3 x_2^2");
        assert_eq!(prof.weight_signature().exponent(2), 2);
        assert_eq!(prof.weighted_sum(), 7);

        let p = Params::new(1, 4, 1).unwrap();
        assert_eq!(block_profile(&SetPartition::singletons(4), &p).unwrap().counts(), &[4, 0, 0, 0]);
        let whole = part(4, &[&[1, 2, 3, 4]]);
        assert_eq!(block_profile(&whole, &p).unwrap().counts(), &[0, 0, 0, 1]);
        let p2 = Params::new(2, 2, 1).unwrap();
        assert!(matches!(
            block_profile(&part(4, &[&[1, 2, 3], &[4]]), &p2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn all_profiles_are_integer_partitions() {
        let counts: Vec<usize> = (1..=8).map(|n| BlockProfile::all_for(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn tilde_examples() {
        let x = part(4, &[&[1, 3], &[2, 4]]);
        let y = x.tilde(2).unwrap();
        assert_eq!(y, part(4, &[&[2, 3], &[1, 4]]));
        assert!(is_noncrossing_t(&y, 1).unwrap());
        assert_eq!(x.tilde(1).unwrap(), x);
        let f = sample_partition();
        assert_eq!(f.tilde(3).unwrap().tilde(3).unwrap(), f);
    }
}
