//! Filters in the triangular poset `T_n`, geometric multi-chains of
//! `t`-filters, their inclusion poset and the `H~` polynomial built from the
//! floor labels of its covers.
//!
//! Pairs `(i, j)` with `i < j` are packed into one `u64` by the column-major
//! index `(j-1)(j-2)/2 + (i-1)`, which does not depend on `n`. This limits
//! `n` to [`MAX_N`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closedform::total_count;
use crate::error::{Error, Result};
use crate::params::{Params, DEFAULT_MAX_OBJECTS};
use crate::polyalg::{h_triangle_closed, BivariatePolynomial};
use crate::poset::FinitePoset;

/// Largest `n` whose pairs fit in a 64-bit mask.
pub const MAX_N: usize = 11;

/// A pair `(i, j)` with `1 <= i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct PairIJ {
    i: usize,
    j: usize,
}

impl TryFrom<(usize, usize)> for PairIJ {
    type Error = Error;

    fn try_from((i, j): (usize, usize)) -> Result<Self> {
        PairIJ::new(i, j)
    }
}

impl From<PairIJ> for (usize, usize) {
    fn from(p: PairIJ) -> Self {
        (p.i, p.j)
    }
}

impl PairIJ {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j || j > MAX_N {
            return Err(Error::domain(format!(
                "({i},{j}) is not a pair 1 <= i < j <= {MAX_N}"
            )));
        }
        Ok(PairIJ { i, j })
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }

    fn bit(self) -> u32 {
        ((self.j - 1) * (self.j - 2) / 2 + self.i - 1) as u32
    }

    fn from_bit(bit: u32) -> PairIJ {
        let mut j = 2;
        while (j * (j - 1) / 2) as u32 <= bit {
            j += 1;
        }
        let i = bit as usize - (j - 1) * (j - 2) / 2 + 1;
        PairIJ { i, j }
    }

    /// `self <= other` in `T_n`: `i >= k` and `j <= l`.
    pub fn below(self, other: PairIJ) -> bool {
        self.i >= other.i && self.j <= other.j
    }
}

impl fmt::Display for PairIJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `(i,j) + (k,l) = (i,l)` when `j = k`; otherwise undefined.
pub fn formal_sum(a: PairIJ, b: PairIJ) -> Option<PairIJ> {
    (a.j == b.i).then_some(PairIJ { i: a.i, j: b.j })
}

/// A set of pairs as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PairSet(u64);

impl PairSet {
    pub fn empty() -> Self {
        PairSet(0)
    }

    pub fn from_pairs<I: IntoIterator<Item = PairIJ>>(pairs: I) -> Self {
        PairSet(pairs.into_iter().fold(0, |acc, p| acc | 1 << p.bit()))
    }

    /// All of `T_n`.
    pub fn triangle(n: usize) -> Self {
        PairSet::from_pairs((2..=n).flat_map(|j| (1..j).map(move |i| PairIJ { i, j })))
    }

    /// `T_{n,t}`: the pairs of `T_n` with `j > t`.
    pub fn truncated_triangle(n: usize, t: usize) -> Self {
        PairSet::from_pairs(
            (t + 1..=n)
                .filter(|&j| j >= 2)
                .flat_map(|j| (1..j).map(move |i| PairIJ { i, j })),
        )
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: PairIJ) -> bool {
        self.0 >> p.bit() & 1 == 1
    }

    pub fn is_subset(self, other: PairSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: PairSet) -> PairSet {
        PairSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PairSet) -> PairSet {
        PairSet(self.0 & other.0)
    }

    pub fn difference(self, other: PairSet) -> PairSet {
        PairSet(self.0 & !other.0)
    }

    /// Pairs in `(i, j)` lexicographic order.
    pub fn pairs(self) -> Vec<PairIJ> {
        let mut out: Vec<PairIJ> = (0..64)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(PairIJ::from_bit)
            .collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `A + B`: every defined formal sum `a + b`.
pub fn setwise_sum(a: PairSet, b: PairSet) -> PairSet {
    let b_pairs = b.pairs();
    let mut out = 0u64;
    for pa in a.pairs() {
        for &pb in &b_pairs {
            if let Some(s) = formal_sum(pa, pb) {
                out |= 1 << s.bit();
            }
        }
    }
    PairSet(out)
}

/// An up-closed subset of `T_{n,t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TFilter {
    n: usize,
    t: usize,
    members: PairSet,
}

impl TFilter {
    pub fn new(n: usize, t: usize, members: PairSet) -> Result<Self> {
        if n > MAX_N || t == 0 || t > n {
            return Err(Error::param(format!("need 1 <= t <= n <= {MAX_N}, got n={n}, t={t}")));
        }
        if !members.is_subset(PairSet::truncated_triangle(n, t)) {
            return Err(Error::domain(format!("{members} is not inside T_({n},{t})")));
        }
        let filter = TFilter { n, t, members };
        if !filter.is_up_closed() {
            return Err(Error::domain(format!("{members} is not up-closed")));
        }
        Ok(filter)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn members(&self) -> PairSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Every pair of `T_n` above a member is a member.
    pub fn is_up_closed(&self) -> bool {
        let all = PairSet::triangle(self.n).pairs();
        self.members
            .pairs()
            .into_iter()
            .all(|p| all.iter().filter(|q| p.below(**q)).all(|q| self.members.contains(*q)))
    }
}

/// All `t`-filters of `T_n`, smallest first.
///
/// Row `i` of a filter is `{(i, j) : j >= c_i}`; up-closure is equivalent to
/// `c_1 <= c_2 <= ...`, with `c_i` ranging over `max(i+1, t+1) ..= n+1`.
pub fn enumerate_t_filters(n: usize, t: usize) -> Result<Vec<TFilter>> {
    if n > MAX_N || t == 0 || t > n {
        return Err(Error::param(format!("need 1 <= t <= n <= {MAX_N}, got n={n}, t={t}")));
    }
    fn rec(row: usize, lower: usize, n: usize, t: usize, acc: u64, out: &mut Vec<u64>) {
        if row >= n {
            out.push(acc);
            return;
        }
        for c in lower.max(row + 1).max(t + 1)..=n + 1 {
            let mut mask = acc;
            for j in c..=n {
                mask |= 1 << PairIJ { i: row, j }.bit();
            }
            rec(row + 1, c, n, t, mask, out);
        }
    }
    let mut masks = Vec::new();
    rec(1, 0, n, t, 0, &mut masks);
    let mut out: Vec<TFilter> = masks
        .into_iter()
        .map(|m| TFilter {
            n,
            t,
            members: PairSet(m),
        })
        .collect();
    out.sort_by_key(|f| (f.len(), f.members.pairs()));
    Ok(out)
}

/// Which complement the subtraction condition uses. `Paper` takes it in `T_n`, `Adapted` in `T_{n,t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Paper,
    Adapted,
}

impl Variant {
    fn universe(self, n: usize, t: usize) -> PairSet {
        match self {
            Variant::Paper => PairSet::triangle(n),
            Variant::Adapted => PairSet::truncated_triangle(n, t),
        }
    }
}

/// `(V_m, ..., V_1)` with `V_m ⊆ ... ⊆ V_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilterChain {
    filters: Vec<TFilter>,
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    m: usize,
    filters: Vec<Vec<PairIJ>>,
}

impl FilterChain {
    /// Takes the filters in the order `V_m, ..., V_1`.
    pub fn new(filters: Vec<TFilter>) -> Result<Self> {
        let first = filters
            .first()
            .ok_or_else(|| Error::param("a chain needs at least one filter"))?;
        if filters.iter().any(|f| f.n != first.n || f.t != first.t) {
            return Err(Error::domain("filters of a chain must share n and t"));
        }
        if filters.windows(2).any(|w| !w[0].members.is_subset(w[1].members)) {
            return Err(Error::domain("filters must satisfy V_m ⊆ ... ⊆ V_1"));
        }
        Ok(FilterChain { filters })
    }

    /// Parses the JSON form `{"m": m, "filters": [[[i,j],...],...]}` for given `n`, `t`.
    pub fn from_json(value: &serde_json::Value, n: usize, t: usize) -> Result<Self> {
        let raw: ChainJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::domain(e.to_string()))?;
        if raw.filters.len() != raw.m {
            return Err(Error::domain(format!(
                "m = {} but {} filters given",
                raw.m,
                raw.filters.len()
            )));
        }
        let filters = raw
            .filters
            .into_iter()
            .map(|pairs| TFilter::new(n, t, PairSet::from_pairs(pairs)))
            .collect::<Result<Vec<_>>>()?;
        FilterChain::new(filters)
    }

    fn raw(&self) -> ChainJson {
        ChainJson {
            m: self.m(),
            filters: self.filters.iter().map(|f| f.members.pairs()).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.raw()).expect("chain JSON is always serialisable")
    }

    pub fn m(&self) -> usize {
        self.filters.len()
    }

    pub fn n(&self) -> usize {
        self.filters[0].n
    }

    pub fn t(&self) -> usize {
        self.filters[0].t
    }

    /// Filters in stored order `V_m, ..., V_1`.
    pub fn filters(&self) -> &[TFilter] {
        &self.filters
    }

    /// `V_k` for `1 <= k <= m`.
    pub fn component(&self, k: usize) -> &TFilter {
        &self.filters[self.m() - k]
    }

    /// `sum_k |V_k|`.
    pub fn rank(&self) -> usize {
        self.filters.iter().map(TFilter::len).sum()
    }

    /// Componentwise inclusion.
    pub fn leq(&self, other: &FilterChain) -> bool {
        self.filters
            .iter()
            .zip(&other.filters)
            .all(|(a, b)| a.members.is_subset(b.members))
    }
}

impl Serialize for FilterChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.raw().serialize(s)
    }
}

impl fmt::Display for FilterChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.filters.iter().map(|v| v.members.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Checks the sum and subtraction conditions at step `k` of a chain listed as `V_1, ..., V_k`.
/// Pairs `i + j = k` are tested, and when `k = m` also every `i + j > m`
/// against `V_m`. Beyond `m` all indices clamp to `V_m`, so this covers
/// every `i, j >= 1`.
fn step_ok(sets: &[PairSet], k: usize, m: usize, universe: PairSet) -> bool {
    let v = |idx: usize| sets[idx - 1];
    for i in 1..k {
        let j = k - i;
        if !setwise_sum(v(i), v(j)).is_subset(v(k)) {
            return false;
        }
        let comp = |s: PairSet| universe.difference(s);
        if !setwise_sum(comp(v(i)), comp(v(j))).is_subset(comp(v(k))) {
            return false;
        }
    }
    if k == m {
        for i in 1..=m {
            for j in 1..=m {
                if i + j > m && !setwise_sum(v(i), v(j)).is_subset(v(m)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Definition of a geometric multi-chain, with complements taken according to `variant`.
pub fn is_geometric(chain: &FilterChain, variant: Variant) -> bool {
    let m = chain.m();
    let universe = variant.universe(chain.n(), chain.t());
    let sets: Vec<PairSet> = (1..=m).map(|k| chain.component(k).members).collect();
    (1..=m).all(|k| step_ok(&sets, k, m, universe))
}

/// `NN_{n,t}^{(m)}` with the default cap.
pub fn enumerate_nn(p: &Params, variant: Variant) -> Result<Vec<FilterChain>> {
    enumerate_nn_capped(p, variant, DEFAULT_MAX_OBJECTS)
}

/// All geometric multi-chains, sorted by rank and then by filters
/// (`V_m` first). The search fixes `V_1 ⊇ V_2 ⊇ ...` and prunes at every
/// step with the conditions whose indices are already fixed.
pub fn enumerate_nn_capped(p: &Params, variant: Variant, cap: u64) -> Result<Vec<FilterChain>> {
    let (m, n, t) = (p.m(), p.n(), p.t());
    let filters = enumerate_t_filters(n, t)?;
    let universe = variant.universe(n, t);
    let mut found: Vec<Vec<PairSet>> = Vec::new();

    fn rec(
        sets: &mut Vec<PairSet>,
        filters: &[TFilter],
        m: usize,
        universe: PairSet,
        cap: u64,
        found: &mut Vec<Vec<PairSet>>,
    ) -> Result<()> {
        let k = sets.len();
        if k == m {
            if found.len() as u64 >= cap {
                return Err(Error::Resource {
                    predicted: format!("more than {cap} multi-chains"),
                    cap,
                });
            }
            found.push(sets.clone());
            return Ok(());
        }
        for f in filters {
            if let Some(&prev) = sets.last() {
                if !f.members.is_subset(prev) {
                    continue;
                }
            }
            sets.push(f.members);
            if step_ok(sets, k + 1, m, universe) {
                rec(sets, filters, m, universe, cap, found)?;
            }
            sets.pop();
        }
        Ok(())
    }
    rec(&mut Vec::with_capacity(m), &filters, m, universe, cap, &mut found)?;

    let mut out: Vec<FilterChain> = found
        .into_iter()
        .map(|sets| FilterChain {
            filters: sets
                .into_iter()
                .rev()
                .map(|members| TFilter { n, t, members })
                .collect(),
        })
        .collect();
    out.sort_by_cached_key(|c| {
        (
            c.rank(),
            c.filters.iter().map(|f| f.members.pairs()).collect::<Vec<_>>(),
        )
    });
    Ok(out)
}

/// A cover of the chain poset whose components are not equal except at one
/// index with a single-element difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverViolation {
    pub lower: usize,
    pub upper: usize,
    pub detail: String,
}

/// The inclusion poset on `NN_{n,t}^{(m)}` with floor data on its covers.
#[derive(Debug)]
pub struct NnPoset {
    pub params: Params,
    pub poset: FinitePoset<FilterChain>,
    /// `(lower, upper, W_m \ V_m)` for every cover.
    pub covers: Vec<(usize, usize, PairSet)>,
    /// `FL(W)`, the union of the cover labels into `W`.
    pub floor: Vec<PairSet>,
    pub violations: Vec<CoverViolation>,
}

impl NnPoset {
    /// `S_{n,t} = {(t,t+1), ..., (n-1,n)}`.
    pub fn simple_pairs(&self) -> PairSet {
        let (n, t) = (self.params.n(), self.params.t());
        PairSet::from_pairs((t..n).map(|k| PairIJ { i: k, j: k + 1 }))
    }

    /// `sum_W x^|FL(W)| y^|FL(W) ∩ S_{n,t}|`.
    pub fn h_tilde(&self) -> BivariatePolynomial {
        let s = self.simple_pairs();
        let mut out = BivariatePolynomial::zero();
        for fl in &self.floor {
            out.add_term(
                fl.len() as i32,
                fl.intersection(s).len() as i32,
                num_rational::BigRational::from_integer(1.into()),
            );
        }
        out
    }
}

/// Builds the chain poset with complements taken in `T_n`.
pub fn nn_poset(p: &Params) -> Result<NnPoset> {
    nn_poset_with(p, Variant::Paper, DEFAULT_MAX_OBJECTS)
}

pub fn nn_poset_with(p: &Params, variant: Variant, cap: u64) -> Result<NnPoset> {
    let chains = enumerate_nn_capped(p, variant, cap)?;
    let ranks = chains.iter().map(FilterChain::rank).collect();
    let poset = FinitePoset::new(chains, ranks, FilterChain::leq)?;
    let mut covers = Vec::new();
    let mut floor = vec![PairSet::empty(); poset.len()];
    let mut violations = Vec::new();
    for (a, b) in poset.cover_relations() {
        let (lo, hi) = (poset.element(a), poset.element(b));
        let label = hi.filters[0].members.difference(lo.filters[0].members);
        covers.push((a, b, label));
        floor[b] = floor[b].union(label);

        let diffs: Vec<usize> = lo
            .filters
            .iter()
            .zip(&hi.filters)
            .map(|(x, y)| y.members.difference(x.members).len())
            .collect();
        let changed: Vec<usize> = (0..diffs.len()).filter(|&k| diffs[k] > 0).collect();
        if changed.len() != 1 || diffs[changed[0]] != 1 {
            violations.push(CoverViolation {
                lower: a,
                upper: b,
                detail: format!("{lo} -> {hi}: per-component growth {diffs:?}"),
            });
        }
    }
    Ok(NnPoset {
        params: *p,
        poset,
        covers,
        floor,
        violations,
    })
}

/// `H~` with complements taken in `T_n`.
pub fn h_tilde(p: &Params) -> Result<BivariatePolynomial> {
    Ok(nn_poset(p)?.h_tilde())
}

/// One row of the chain-model report: count, `H~` and cover checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub params: Params,
    pub variant: Variant,
    pub nn_count: u64,
    pub formula_count: String,
    pub count_matches: bool,
    pub h_tilde: BivariatePolynomial,
    pub h_closed: BivariatePolynomial,
    pub h_matches: bool,
    pub lemma_violations: usize,
}

/// Compares `|NN|` with the closed count and `H~` with the closed H-triangle
/// for every parameter triple. Only reports; never fails on a mismatch.
pub fn verify_conjectures(params: &[Params], variant: Variant, cap: u64) -> Result<Vec<ConjectureRow>> {
    params
        .iter()
        .map(|p| {
            let nn = nn_poset_with(p, variant, cap)?;
            let formula = total_count(p)?;
            let h_tilde = nn.h_tilde();
            let h_closed = h_triangle_closed(p)?;
            let count = nn.poset.len() as u64;
            Ok(ConjectureRow {
                params: *p,
                variant,
                nn_count: count,
                count_matches: formula == count.into(),
                formula_count: formula.to_string(),
                h_matches: h_tilde == h_closed,
                h_tilde,
                h_closed,
                lemma_violations: nn.violations.len(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(i: usize, j: usize) -> PairIJ {
        PairIJ::new(i, j).unwrap()
    }

    fn set(pairs: &[(usize, usize)]) -> PairSet {
        PairSet::from_pairs(pairs.iter().map(|&(i, j)| pair(i, j)))
    }

    fn chain(n: usize, t: usize, filters: &[&[(usize, usize)]]) -> FilterChain {
        FilterChain::new(
            filters
                .iter()
                .map(|f| TFilter::new(n, t, set(f)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn pr(m: usize, n: usize, t: usize) -> Params {
        Params::new(m, n, t).unwrap()
    }

    #[test]
    fn pair_bits_round_trip() {
        for j in 2..=MAX_N {
            for i in 1..j {
                let p = pair(i, j);
                assert_eq!(PairIJ::from_bit(p.bit()), p);
            }
        }
        assert!(PairIJ::new(2, 2).is_err());
        assert!(PairIJ::new(0, 2).is_err());
    }

    #[test]
    fn formal_sums() {
        assert_eq!(formal_sum(pair(1, 2), pair(2, 3)), Some(pair(1, 3)));
        assert_eq!(formal_sum(pair(1, 3), pair(2, 3)), None);
        assert_eq!(formal_sum(pair(2, 3), pair(2, 3)), None);
        assert_eq!(formal_sum(pair(2, 3), pair(1, 2)), None);
    }

    #[test]
    fn setwise_sums() {
        assert_eq!(setwise_sum(set(&[(1, 2)]), set(&[(2, 3)])), set(&[(1, 3)]));
        assert_eq!(setwise_sum(set(&[(1, 2), (2, 3)]), PairSet::empty()), PairSet::empty());
        let a = set(&[(1, 2), (2, 3)]);
        assert_eq!(setwise_sum(a, a), set(&[(1, 3)]));
    }

    #[test]
    fn filter_validation() {
        assert!(TFilter::new(3, 2, set(&[(1, 3)])).is_ok());
        assert!(TFilter::new(3, 2, set(&[(2, 3)])).is_err());
        assert!(TFilter::new(3, 2, set(&[(1, 2)])).is_err());
    }

    #[test]
    fn filter_counts() {
        assert_eq!(enumerate_t_filters(3, 2).unwrap().len(), 3);
        assert_eq!(enumerate_t_filters(4, 4).unwrap().len(), 1);
        for n in 1..=7 {
            for t in 1..=n {
                let filters = enumerate_t_filters(n, t).unwrap();
                assert!(filters.iter().all(TFilter::is_up_closed));
                let expected = total_count(&pr(1, n, t)).unwrap();
                assert_eq!(expected, (filters.len() as u64).into(), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn example_chain_variants() {
        let c = chain(3, 2, &[&[(1, 3)], &[(1, 3)]]);
        assert!(!is_geometric(&c, Variant::Paper));
        assert!(is_geometric(&c, Variant::Adapted));
        let empty = chain(3, 2, &[&[], &[]]);
        assert!(is_geometric(&empty, Variant::Paper));
        assert!(is_geometric(&empty, Variant::Adapted));
    }

    #[test]
    fn example_counts() {
        let p = pr(2, 3, 2);
        assert_eq!(enumerate_nn(&p, Variant::Paper).unwrap().len(), 5);
        assert_eq!(enumerate_nn(&p, Variant::Adapted).unwrap().len(), 6);
        for n in 1..=4 {
            assert_eq!(enumerate_nn(&pr(1, n, n), Variant::Paper).unwrap().len(), 1);
        }
        assert!(matches!(
            enumerate_nn_capped(&pr(2, 4, 1), Variant::Paper, 3),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn small_chain_poset_labels() {
        let nn = nn_poset(&pr(2, 3, 2)).unwrap();
        assert!(nn.violations.is_empty());
        let mut labels: Vec<(usize, PairSet)> = nn
            .covers
            .iter()
            .map(|&(a, _, l)| (nn.poset.rank(a), l))
            .collect();
        labels.sort();
        let expected = vec![
            PairSet::empty(),
            PairSet::empty(),
            set(&[(1, 3)]),
            set(&[(2, 3)]),
        ];
        assert_eq!(labels.into_iter().map(|(_, l)| l).collect::<Vec<_>>(), expected);
        let top = nn.poset.len() - 1;
        assert_eq!(nn.floor[top], set(&[(2, 3)]));
        assert_eq!(nn.floor[0], PairSet::empty());
        assert_eq!(nn.h_tilde(), BivariatePolynomial::from_int_terms(&[(1, 1, 1), (1, 0, 1), (0, 0, 3)]));
    }

    #[test]
    fn h_tilde_four_two() {
        let h = h_tilde(&pr(1, 4, 2)).unwrap();
        let expected = BivariatePolynomial::from_int_terms(&[
            (2, 2, 1),
            (2, 1, 1),
            (2, 0, 1),
            (1, 1, 2),
            (1, 0, 3),
            (0, 0, 1),
        ]);
        assert_eq!(h, expected);
        assert_eq!(h, h_triangle_closed(&pr(1, 4, 2)).unwrap());
    }

    #[test]
    fn chain_json() {
        let c = chain(3, 2, &[&[(1, 3)], &[(1, 3), (2, 3)]]);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"m":2,"filters":[[[1,3]],[[1,3],[2,3]]]}"#);
        let v = c.to_json();
        assert_eq!(FilterChain::from_json(&v, 3, 2).unwrap(), c);
        assert_eq!(c.component(1).len(), 2);
        assert_eq!(c.component(2).len(), 1);
    }

    #[test]
    fn conjecture_rows() {
        let rows = verify_conjectures(&[pr(2, 3, 2), pr(1, 4, 2)], Variant::Paper, 1000).unwrap();
        assert!(rows.iter().all(|r| r.count_matches && r.h_matches && r.lemma_violations == 0));
    }
}
