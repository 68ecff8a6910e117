//! Finite posets given by an explicit comparability matrix.
//!
//! Elements are addressed by index. The order relation is stored twice as a
//! bit matrix (rows of up-sets and rows of down-sets) so that interval
//! queries are word-parallel intersections.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ncpart::{enumerate_nc, enumerate_nc_capped, rank_of, refines, SetPartition};
use crate::params::{Params, DEFAULT_MAX_OBJECTS};

/// Square bit matrix, one row of `u64` words per element.
#[derive(Debug, Clone)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(size: usize) -> Self {
        let words = size.div_ceil(64).max(1);
        BitMatrix {
            words,
            bits: vec![0; words * size],
        }
    }

    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words + col / 64] |= 1 << (col % 64);
    }

    fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words + col / 64] >> (col % 64) & 1 == 1
    }

    fn row(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words..(row + 1) * self.words]
    }
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + bit)
        })
    })
}

/// A finite poset over handles of type `T` with a rank function.
#[derive(Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    rank: Vec<usize>,
    up: BitMatrix,
    down: BitMatrix,
    /// indices in a linear extension
    order: Vec<usize>,
    moebius_rows: Vec<OnceLock<Vec<i64>>>,
}

impl<T> FinitePoset<T> {
    /// Builds the poset from a comparison closure and checks that it is
    /// reflexive, antisymmetric and transitive.
    pub fn new<F>(elements: Vec<T>, rank: Vec<usize>, leq: F) -> Result<Self>
    where
        F: Fn(&T, &T) -> bool,
    {
        let size = elements.len();
        if rank.len() != size {
            return Err(Error::param("rank vector length differs from element count"));
        }
        let mut up = BitMatrix::new(size);
        let mut down = BitMatrix::new(size);
        for a in 0..size {
            for b in 0..size {
                if leq(&elements[a], &elements[b]) {
                    up.set(a, b);
                    down.set(b, a);
                }
            }
        }
        for a in 0..size {
            if !up.get(a, a) {
                return Err(Error::domain(format!("relation is not reflexive at {a}")));
            }
            for b in ones(up.row(a)) {
                if b != a && up.get(b, a) {
                    return Err(Error::domain(format!(
                        "relation is not antisymmetric on ({a}, {b})"
                    )));
                }
                // up(b) must be contained in up(a)
                if up.row(b).iter().zip(up.row(a)).any(|(x, y)| x & !y != 0) {
                    return Err(Error::domain(format!(
                        "relation is not transitive through ({a}, {b})"
                    )));
                }
            }
        }
        let mut order: Vec<usize> = (0..size).collect();
        // x < y implies down(x) is a proper subset of down(y)
        order.sort_by_key(|&x| (ones(down.row(x)).count(), x));
        Ok(FinitePoset {
            elements,
            rank,
            up,
            down,
            order,
            moebius_rows: (0..size).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &T {
        &self.elements[idx]
    }

    pub fn rank(&self, idx: usize) -> usize {
        self.rank[idx]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn max_rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    /// Number of elements at each rank `0..=max_rank`.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.max_rank() + 1];
        for &r in &self.rank {
            sizes[r] += 1;
        }
        sizes
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up.get(a, b)
    }

    /// Indices `b` with `a <= b`.
    pub fn upset(&self, a: usize) -> Vec<usize> {
        ones(self.up.row(a)).collect()
    }

    /// Indices `b` with `b <= a`.
    pub fn downset(&self, a: usize) -> Vec<usize> {
        ones(self.down.row(a)).collect()
    }

    /// All pairs `(a, b)` with `a < b` and nothing strictly between them.
    ///
    /// The strict up-set of `a` is swept in linear-extension order; `b` is a
    /// cover unless it lies above a cover already found.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let mut position = vec![0; self.len()];
        for (pos, &x) in self.order.iter().enumerate() {
            position[x] = pos;
        }
        let mut covers = Vec::new();
        let mut above = vec![0u64; self.up.words];
        for a in 0..self.len() {
            above.iter_mut().for_each(|w| *w = 0);
            let mut strict: Vec<usize> = ones(self.up.row(a)).filter(|&b| b != a).collect();
            strict.sort_unstable_by_key(|&b| position[b]);
            let start = covers.len();
            for b in strict {
                if above[b / 64] >> (b % 64) & 1 == 1 {
                    continue;
                }
                covers.push((a, b));
                for (w, x) in above.iter_mut().zip(self.up.row(b)) {
                    *w |= x;
                }
            }
            covers[start..].sort_unstable();
        }
        covers
    }

    /// Checks that every cover raises the rank by exactly one.
    pub fn check_graded(&self) -> Result<()> {
        for (a, b) in self.cover_relations() {
            if self.rank[b] != self.rank[a] + 1 {
                return Err(Error::invariant(format!(
                    "cover ({a}, {b}) goes from rank {} to rank {}",
                    self.rank[a], self.rank[b]
                )));
            }
        }
        Ok(())
    }

    /// `mu(a, b)` for every `b`, zero where `a` and `b` are not comparable.
    /// Rows are computed once and cached.
    pub fn moebius_row(&self, a: usize) -> &[i64] {
        self.moebius_rows[a].get_or_init(|| {
            let mut row = vec![0i64; self.len()];
            row[a] = 1;
            for &b in &self.order {
                if b == a || !self.leq(a, b) {
                    continue;
                }
                // mu(a, b) = - sum over a <= c < b of mu(a, c)
                let mut sum = 0i64;
                for (w, (x, y)) in self.up.row(a).iter().zip(self.down.row(b)).enumerate() {
                    let mut rest = x & y;
                    while rest != 0 {
                        let c = w * 64 + rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        if c != b {
                            sum += row[c];
                        }
                    }
                }
                row[b] = -sum;
            }
            row
        })
    }

    /// `mu(a, b)`; fails unless `a <= b`.
    pub fn moebius(&self, a: usize, b: usize) -> Result<i64> {
        if !self.leq(a, b) {
            return Err(Error::domain(format!("element {a} is not below element {b}")));
        }
        Ok(self.moebius_row(a)[b])
    }

    /// Number of tuples `x_1 <= ... <= x_l` with `rank(x_i) = targets[i]`.
    pub fn count_rank_multichains(&self, targets: &[usize]) -> Result<BigUint> {
        self.count_rank_multichains_where(targets, |_| true)
    }

    /// As [`Self::count_rank_multichains`], with `x_1` restricted to indices
    /// accepted by `first`.
    pub fn count_rank_multichains_where<F>(&self, targets: &[usize], first: F) -> Result<BigUint>
    where
        F: Fn(usize) -> bool,
    {
        if targets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::param(format!("target ranks {targets:?} are not weakly increasing")));
        }
        if let Some(&top) = targets.last() {
            if top > self.max_rank() {
                return Err(Error::param(format!(
                    "target rank {top} exceeds the maximal rank {}",
                    self.max_rank()
                )));
            }
        }
        let Some((&bottom, rest)) = targets.split_first() else {
            return Ok(BigUint::one());
        };
        let mut counts: Vec<BigUint> = (0..self.len())
            .map(|x| {
                if self.rank[x] == bottom && first(x) {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            })
            .collect();
        let mut level = bottom;
        for &next in rest {
            let mut fresh = vec![BigUint::zero(); self.len()];
            for y in (0..self.len()).filter(|&y| self.rank[y] == next) {
                let mut acc = BigUint::zero();
                for x in ones(self.down.row(y)) {
                    if self.rank[x] == level {
                        acc += &counts[x];
                    }
                }
                fresh[y] = acc;
            }
            counts = fresh;
            level = next;
        }
        Ok(counts.into_iter().sum())
    }

    /// Saturated chains from a rank-0 element to an element of maximal rank,
    /// counted along covers. In a poset concentrated in rank 0 every element
    /// is its own (empty) chain, so a single-element poset gives 1.
    pub fn count_maximal_chains(&self) -> BigUint {
        if self.is_empty() {
            return BigUint::zero();
        }
        let top = self.max_rank();
        if top == 0 {
            return BigUint::from(self.len());
        }
        let mut counts: Vec<BigUint> = (0..self.len())
            .map(|x| if self.rank[x] == 0 { BigUint::one() } else { BigUint::zero() })
            .collect();
        let mut covers = self.cover_relations();
        covers.sort_by_key(|&(a, _)| self.rank[a]);
        for (a, b) in covers {
            let add = counts[a].clone();
            counts[b] += add;
        }
        (0..self.len())
            .filter(|&x| self.rank[x] == top)
            .map(|x| counts[x].clone())
            .sum()
    }

    /// Number of multi-chains `x_1 <= ... <= x_{l-1}`, the zeta polynomial at `l`.
    pub fn zeta_brute(&self, l: usize) -> Result<BigUint> {
        if l == 0 {
            return Err(Error::param("zeta polynomial needs l >= 1"));
        }
        let mut counts = vec![BigUint::one(); self.len()];
        if l == 1 {
            return Ok(BigUint::one());
        }
        for _ in 2..l {
            let mut fresh = vec![BigUint::zero(); self.len()];
            for (y, slot) in fresh.iter_mut().enumerate() {
                for x in ones(self.down.row(y)) {
                    *slot += &counts[x];
                }
            }
            counts = fresh;
        }
        Ok(counts.into_iter().sum())
    }
}

/// `(NC_{n,t}^{(m)}, <=_ref)` with rank `n - bl`; gradedness is asserted.
pub fn build_refinement_poset(p: &Params) -> Result<FinitePoset<SetPartition>> {
    build_refinement_poset_capped(p, DEFAULT_MAX_OBJECTS)
}

pub fn build_refinement_poset_capped(p: &Params, cap: u64) -> Result<FinitePoset<SetPartition>> {
    let elements = enumerate_nc_capped(p, cap)?;
    let rank = elements
        .iter()
        .map(|pi| rank_of(pi, p))
        .collect::<Result<Vec<_>>>()?;
    let poset = FinitePoset::new(elements, rank, |a, b| {
        refines(a, b).expect("members share the ground set")
    })?;
    poset.check_graded()?;
    Ok(poset)
}

/// Checks that the tilde image of `NC_{n,t}^{(m)}` is an order ideal of
/// `NC_{n,1}^{(m)}`.
pub fn verify_ideal_embedding(p: &Params) -> Result<bool> {
    let classical = Params::new(p.m(), p.n(), 1)?;
    let whole = enumerate_nc_capped(&classical, DEFAULT_MAX_OBJECTS)?;
    let image: std::collections::HashSet<SetPartition> = enumerate_nc(p)?
        .iter()
        .map(|pi| pi.tilde(p.t()))
        .collect::<Result<_>>()?;
    if !image.iter().all(|sigma| whole.contains(sigma)) {
        return Ok(false);
    }
    for sigma in &whole {
        if image.contains(sigma) {
            continue;
        }
        for tau in &image {
            if refines(sigma, tau)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
