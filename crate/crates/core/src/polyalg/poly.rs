use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse polynomial in `x` and `y` with exact rational coefficients.
/// Exponents may be negative. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(i32, i32), BigRational>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: i32,
    y: i32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for BivariatePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| TermJson { x, y, c: c.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivariatePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut poly = BivariatePolynomial::zero();
        for term in raw.terms {
            let c: BigRational = term.c.parse().map_err(serde::de::Error::custom)?;
            poly.add_term(term.x, term.y, c);
        }
        Ok(poly)
    }
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c x^ex y^ey`.
    pub fn monomial(ex: i32, ey: i32, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(ex, ey, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    /// Builds a polynomial from `(ex, ey, c)` triples with integer coefficients.
    pub fn from_int_terms(terms: &[(i32, i32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(ex, ey, c) in terms {
            p.add_term(ex, ey, BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    pub fn add_term(&mut self, ex: i32, ey: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((ex, ey)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(ex, ey));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, ex: i32, ey: i32) -> BigRational {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in lexicographic `(ex, ey)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, &BigRational)> {
        self.terms.iter().map(|(&(ex, ey), c)| (ex, ey, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `x` and `y` exponents; `(0, 0)` for the zero polynomial.
    pub fn max_degrees(&self) -> (i32, i32) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), &(ex, ey)| (a.max(ex), b.max(ey)))
    }

    /// Smallest `x` and `y` exponents; `(0, 0)` for the zero polynomial.
    pub fn min_degrees(&self) -> (i32, i32) {
        if self.terms.is_empty() {
            return (0, 0);
        }
        self.terms
            .keys()
            .fold((i32::MAX, i32::MAX), |(a, b), &(ex, ey)| (a.min(ex), b.min(ey)))
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        BivariatePolynomial {
            terms: self.terms.iter().map(|(k, c)| (*k, c * factor)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Power with a signed exponent; negative exponents are rejected.
    pub fn pow_signed(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return Err(Error::param(format!("negative exponent {exp}")));
        }
        let exp = u32::try_from(exp).map_err(|_| Error::param("exponent too large"))?;
        Ok(self.pow(exp))
    }

    /// Exact value at `(x0, y0)`. Negative exponents need non-zero arguments.
    pub fn eval_exact(&self, x0: &BigRational, y0: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&(ex, ey), c) in &self.terms {
            acc += c * rational_pow(x0, ex)? * rational_pow(y0, ey)?;
        }
        Ok(acc)
    }
}

fn rational_pow(base: &BigRational, exp: i32) -> Result<BigRational> {
    if exp >= 0 {
        return Ok(num_traits::pow(base.clone(), exp as usize));
    }
    if base.is_zero() {
        return Err(Error::domain("zero raised to a negative power"));
    }
    Ok(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(ex, ey), c) in &rhs.terms {
            out.add_term(ex, ey, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(ex, ey), c) in &rhs.terms {
            out.add_term(ex, ey, -c.clone());
        }
        out
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &rhs.terms {
                out.add_term(ax + bx, ay + by, ac * bc);
            }
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for BivariatePolynomial {
            type Output = BivariatePolynomial;

            fn $method(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for BivariatePolynomial {
    /// Highest total degree first, e.g. `x*y + x + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(i32, i32)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (idx, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            for (var, e) in [("x", key.0), ("y", key.1)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Quotient of two polynomials, compared by cross-multiplication.
#[derive(Debug, Clone)]
pub struct RationalExpr {
    numerator: BivariatePolynomial,
    denominator: BivariatePolynomial,
}

impl RationalExpr {
    pub fn new(numerator: BivariatePolynomial, denominator: BivariatePolynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::invariant("zero denominator"));
        }
        Ok(RationalExpr {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: BivariatePolynomial) -> Self {
        RationalExpr {
            numerator: p,
            denominator: BivariatePolynomial::one(),
        }
    }

    pub fn numerator(&self) -> &BivariatePolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &BivariatePolynomial {
        &self.denominator
    }

    /// Multiplies the numerator by a polynomial prefactor.
    pub fn times_poly(&self, factor: &BivariatePolynomial) -> Self {
        RationalExpr {
            numerator: &self.numerator * factor,
            denominator: self.denominator.clone(),
        }
    }

    /// Substitutes `x -> sx`, `y -> sy` into `p`. Each monomial `x^r y^s`
    /// becomes `a^r c^s / (b^r d^s)`; the sum is brought over the common
    /// denominator `b^R d^S` with `R`, `S` the largest exponents in `p`.
    pub fn substitute(p: &BivariatePolynomial, sx: &RationalExpr, sy: &RationalExpr) -> Result<Self> {
        let (min_x, min_y) = p.min_degrees();
        if min_x < 0 || min_y < 0 {
            return Err(Error::domain("substitution needs non-negative exponents"));
        }
        let (max_x, max_y) = p.max_degrees();
        let powers = |base: &BivariatePolynomial, top: i32| -> Vec<BivariatePolynomial> {
            let mut out = Vec::with_capacity(top as usize + 1);
            let mut cur = BivariatePolynomial::one();
            for _ in 0..=top {
                out.push(cur.clone());
                cur = &cur * base;
            }
            out
        };
        let xa = powers(&sx.numerator, max_x);
        let xb = powers(&sx.denominator, max_x);
        let ya = powers(&sy.numerator, max_y);
        let yb = powers(&sy.denominator, max_y);

        let mut numerator = BivariatePolynomial::zero();
        for (ex, ey, c) in p.terms() {
            let (r, s) = (ex as usize, ey as usize);
            let (rr, ss) = ((max_x - ex) as usize, (max_y - ey) as usize);
            let term = &(&(&xa[r] * &xb[rr]) * &ya[s]) * &yb[ss];
            numerator = &numerator + &term.scale(c);
        }
        let denominator = &xb[max_x as usize] * &yb[max_y as usize];
        RationalExpr::new(numerator, denominator)
    }

    /// Exact equality `n1 d2 == n2 d1`.
    pub fn equals(&self, other: &RationalExpr) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}
