//! `t`-Dyck paths and the bijection `Θ` with `t`-filters for `m = 1`.
//!
//! A minimal pair `(i, j)` of a filter sits at the valley
//! `(i + j - 1, j - i - 1)` of its path; a path is determined by its valleys.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nonnest::{enumerate_t_filters, PairIJ, PairSet, TFilter};
use crate::polyalg::BivariatePolynomial;

/// A Dyck path that starts with at least `t` up-steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    /// `true` for an up-step
    steps: Vec<bool>,
    heights: Vec<usize>,
    t: usize,
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    n: usize,
    t: usize,
    steps: String,
}

impl DyckPath {
    /// Validates the step sequence as a `t`-Dyck path.
    pub fn new(steps: Vec<bool>, t: usize) -> Result<Self> {
        if steps.is_empty() || !steps.len().is_multiple_of(2) {
            return Err(Error::domain(format!("path length {} is not a positive even number", steps.len())));
        }
        let mut heights = Vec::with_capacity(steps.len() + 1);
        let mut h: i64 = 0;
        heights.push(0);
        for &up in &steps {
            h += if up { 1 } else { -1 };
            if h < 0 {
                return Err(Error::domain("path goes below the axis"));
            }
            heights.push(h as usize);
        }
        if h != 0 {
            return Err(Error::domain("path does not return to the axis"));
        }
        let n = steps.len() / 2;
        if t == 0 || t > n {
            return Err(Error::param(format!("t={t} outside [1, {n}]")));
        }
        if steps.iter().take(t).any(|&up| !up) {
            return Err(Error::domain(format!("path does not start with {t} up-steps")));
        }
        Ok(DyckPath { steps, heights, t })
    }

    /// Parses a string over `{U, D}`.
    pub fn parse(s: &str, t: usize) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(true),
                'D' | 'd' => Ok(false),
                other => Err(Error::domain(format!("unexpected step '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps, t)
    }

    pub fn n(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn steps(&self) -> &[bool] {
        &self.steps
    }

    /// Heights after `0, 1, ..., 2n` steps.
    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Valleys `(x, height)` left to right.
    pub fn valleys(&self) -> Vec<(usize, usize)> {
        (1..self.steps.len())
            .filter(|&x| !self.steps[x - 1] && self.steps[x])
            .map(|x| (x, self.heights[x]))
            .collect()
    }

    fn peak_count(&self) -> usize {
        (1..self.steps.len())
            .filter(|&x| self.steps[x - 1] && !self.steps[x])
            .count()
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    /// Every non-empty Dyck path is a 1-Dyck path.
    fn from_str(s: &str) -> Result<Self> {
        DyckPath::parse(s, 1)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &up in &self.steps {
            write!(f, "{}", if up { 'U' } else { 'D' })?;
        }
        Ok(())
    }
}

impl Serialize for DyckPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PathJson {
            n: self.n(),
            t: self.t,
            steps: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DyckPath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PathJson::deserialize(d)?;
        let path = DyckPath::parse(&raw.steps, raw.t).map_err(serde::de::Error::custom)?;
        if path.n() != raw.n {
            return Err(serde::de::Error::custom("n does not match the step count"));
        }
        Ok(path)
    }
}

/// Valley, peak and height-0 valley counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub v: usize,
    pub p: usize,
    pub r: usize,
    pub length: usize,
}

pub fn path_stats(path: &DyckPath) -> PathStats {
    let valleys = path.valleys();
    PathStats {
        v: valleys.len(),
        p: path.peak_count(),
        r: valleys.iter().filter(|&&(_, h)| h == 0).count(),
        length: path.steps.len(),
    }
}

/// All `t`-Dyck paths of length `2n`, in lexicographic order with `U < D`.
pub fn enumerate_tdyck(n: usize, t: usize) -> Result<Vec<DyckPath>> {
    if n == 0 || t == 0 || t > n {
        return Err(Error::param(format!("need 1 <= t <= n, got n={n}, t={t}")));
    }
    fn rec(steps: &mut Vec<bool>, ups: usize, downs: usize, n: usize, t: usize, out: &mut Vec<DyckPath>) {
        if steps.len() == 2 * n {
            out.push(DyckPath::new(steps.clone(), t).expect("generator only builds valid paths"));
            return;
        }
        if ups < n {
            steps.push(true);
            rec(steps, ups + 1, downs, n, t, out);
            steps.pop();
        }
        if downs < ups && steps.len() >= t {
            steps.push(false);
            rec(steps, ups, downs + 1, n, t, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(2 * n), 0, 0, n, t, &mut out);
    Ok(out)
}

/// Minimal elements of a filter under the order of `T_n`.
pub fn minimal_elements(v: &TFilter) -> Vec<PairIJ> {
    let members = v.members().pairs();
    members
        .iter()
        .copied()
        .filter(|&p| !members.iter().any(|&q| q != p && q.below(p)))
        .collect()
}

/// `Θ`: the path whose valleys are the images of the minimal pairs.
pub fn theta(v: &TFilter) -> Result<DyckPath> {
    let n = v.n();
    let mut valleys: Vec<(usize, usize)> = minimal_elements(v)
        .into_iter()
        .map(|p| (p.i() + p.j() - 1, p.j() - p.i() - 1))
        .collect();
    valleys.sort_unstable();

    let mut steps = Vec::with_capacity(2 * n);
    let (mut x, mut y) = (0usize, 0usize);
    for &(vx, vy) in valleys.iter().chain(std::iter::once(&(2 * n, 0))) {
        let dx = vx as i64 - x as i64;
        let dy = vy as i64 - y as i64;
        if (dx + dy) % 2 != 0 {
            return Err(Error::invariant(format!("valley ({vx},{vy}) has the wrong parity")));
        }
        let (up, down) = ((dx + dy) / 2, (dx - dy) / 2);
        if up < 1 || down < 1 {
            return Err(Error::invariant(format!(
                "valley ({vx},{vy}) cannot follow ({x},{y})"
            )));
        }
        steps.extend(std::iter::repeat_n(true, up as usize));
        steps.extend(std::iter::repeat_n(false, down as usize));
        (x, y) = (vx, vy);
    }
    let path = DyckPath::new(steps, v.t()).map_err(|e| Error::invariant(format!("theta: {e}")))?;
    if path.valleys() != valleys {
        return Err(Error::invariant("theta produced extra valleys"));
    }
    Ok(path)
}

/// `Θ^{-1}`: the up-closure of the pairs read off the valleys.
pub fn theta_inverse(path: &DyckPath) -> Result<TFilter> {
    let (n, t) = (path.n(), path.t());
    let mut generators = Vec::new();
    for (x, y) in path.valleys() {
        if (x + y) % 2 != 0 || x < y {
            return Err(Error::invariant(format!("valley ({x},{y}) has the wrong parity")));
        }
        generators.push(PairIJ::new((x - y) / 2, (x + y) / 2 + 1)?);
    }
    let closure = PairSet::from_pairs(
        PairSet::triangle(n)
            .pairs()
            .into_iter()
            .filter(|q| generators.iter().any(|g| g.below(*q))),
    );
    TFilter::new(n, t, closure)
}

/// `P1 <=_ddom P2`: `P2` lies weakly below `P1`.
pub fn ddom_leq(p1: &DyckPath, p2: &DyckPath) -> Result<bool> {
    if p1.steps.len() != p2.steps.len() {
        return Err(Error::domain(format!(
            "paths have lengths {} and {}",
            p1.steps.len(),
            p2.steps.len()
        )));
    }
    Ok(p2.heights.iter().zip(&p1.heights).all(|(a, b)| a <= b))
}

/// `sum_P x^v(P) y^r(P)` over `D_{n,t}`.
pub fn h_via_paths(n: usize, t: usize) -> Result<BivariatePolynomial> {
    let mut out = BivariatePolynomial::zero();
    for path in enumerate_tdyck(n, t)? {
        let s = path_stats(&path);
        out.add_term(s.v as i32, s.r as i32, BigRational::from_integer(BigInt::from(1)));
    }
    Ok(out)
}

/// Result of checking `Θ` exhaustively for one `(n, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub n: usize,
    pub t: usize,
    pub filters: usize,
    pub paths: usize,
    pub round_trip: bool,
    pub onto: bool,
    pub order_isomorphism: bool,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.filters == self.paths && self.round_trip && self.onto && self.order_isomorphism
    }
}

/// Checks that `Θ` and its inverse are mutually inverse and that
/// `V ⊆ W` exactly when `Θ(V) <=_ddom Θ(W)`.
pub fn verify_bijection(n: usize, t: usize) -> Result<BijectionReport> {
    let filters = enumerate_t_filters(n, t)?;
    let paths = enumerate_tdyck(n, t)?;
    let images = filters.iter().map(theta).collect::<Result<Vec<_>>>()?;

    let mut round_trip = true;
    for (f, img) in filters.iter().zip(&images) {
        round_trip &= theta_inverse(img)? == *f;
    }
    for path in &paths {
        round_trip &= theta(&theta_inverse(path)?)? == *path;
    }
    let mut sorted_images = images.clone();
    sorted_images.sort();
    sorted_images.dedup();
    let mut sorted_paths = paths.clone();
    sorted_paths.sort();
    let onto = sorted_images == sorted_paths;

    let mut order_isomorphism = true;
    for (a, ia) in filters.iter().zip(&images) {
        for (b, ib) in filters.iter().zip(&images) {
            order_isomorphism &= a.members().is_subset(b.members()) == ddom_leq(ia, ib)?;
        }
    }
    Ok(BijectionReport {
        n,
        t,
        filters: filters.len(),
        paths: paths.len(),
        round_trip,
        onto,
        order_isomorphism,
    })
}
