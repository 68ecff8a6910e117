//! Exact bivariate polynomials, the M-, F- and H-triangles, and a symbolic
//! check of the substitution identities linking them.

mod poly;

pub use poly::{BivariatePolynomial, RationalExpr};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::closedform::binomial;
use crate::error::{Error, Result};
use crate::params::{Params, DEFAULT_MAX_OBJECTS};
use crate::poset::build_refinement_poset_capped;

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn i(v: usize) -> i64 {
    v as i64
}

/// Rejects non-integral coefficients, and negative ones when `nonneg` is set.
fn check_coefficients(poly: &BivariatePolynomial, what: &str, nonneg: bool) -> Result<()> {
    for (ex, ey, c) in poly.terms() {
        if !c.is_integer() {
            return Err(Error::invariant(format!(
                "{what}: coefficient of x^{ex} y^{ey} is {c}"
            )));
        }
        if nonneg && c.is_negative() {
            return Err(Error::invariant(format!(
                "{what}: coefficient of x^{ex} y^{ey} is negative ({c})"
            )));
        }
    }
    Ok(())
}

/// M-triangle from the poset: the sum of `mu(a, b) x^rk(a) y^rk(b)`.
pub fn m_triangle_brute(p: &Params) -> Result<BivariatePolynomial> {
    m_triangle_brute_capped(p, DEFAULT_MAX_OBJECTS)
}

pub fn m_triangle_brute_capped(p: &Params, cap: u64) -> Result<BivariatePolynomial> {
    let poset = build_refinement_poset_capped(p, cap)?;
    let mut out = BivariatePolynomial::zero();
    for a in 0..poset.len() {
        let row = poset.moebius_row(a);
        for (b, &mu) in row.iter().enumerate() {
            if mu != 0 {
                out.add_term(
                    poset.rank(a) as i32,
                    poset.rank(b) as i32,
                    int(BigInt::from(mu)),
                );
            }
        }
    }
    Ok(out)
}

/// M-triangle from its double-sum closed form over `0 <= r <= s <= n - t`.
pub fn m_triangle_closed(p: &Params) -> Result<BivariatePolynomial> {
    let (m, n, t) = (i(p.m()), i(p.n()), i(p.t()));
    let big_n = n - t;
    let den = BigInt::from(n * (m * n - t + 1));
    let mut out = BivariatePolynomial::zero();
    for s in 0..=big_n {
        let lead = BigInt::from(t * (m * n - t + 1) - (big_n - s) * (t - 1));
        for r in 0..=s {
            let sign = if (s - r) % 2 == 0 { 1 } else { -1 };
            let num = BigInt::from(sign)
                * &lead
                * binomial(n, r)
                * binomial(m * n - t + 1, big_n - s)
                * binomial(m * n + s - r - 1, s - r);
            out.add_term(r as i32, s as i32, BigRational::new(num, den.clone()));
        }
    }
    check_coefficients(&out, "M-triangle", false)?;
    Ok(out)
}

/// H-triangle: coefficient of `x^{n-t-k} y^{n-t-k-h}` is
/// `C(mn-t+1, k) C(t+k+h-2, h) - m C(mn-t, k-1) C(t+k+h-1, h)`.
pub fn h_triangle_closed(p: &Params) -> Result<BivariatePolynomial> {
    let (m, n, t) = (i(p.m()), i(p.n()), i(p.t()));
    let big_n = n - t;
    let mut out = BivariatePolynomial::zero();
    for k in 0..=big_n {
        for h in 0..=big_n - k {
            let c = binomial(m * n - t + 1, k) * binomial(t + k + h - 2, h)
                - BigInt::from(m) * binomial(m * n - t, k - 1) * binomial(t + k + h - 1, h);
            out.add_term((big_n - k) as i32, (big_n - k - h) as i32, int(c));
        }
    }
    check_coefficients(&out, "H-triangle", true)?;
    Ok(out)
}

/// F-triangle: coefficient of `x^a y^b` is `C(mn+a-1, a) C(n, t+a+b) (t+b)/n`.
pub fn f_triangle_closed(p: &Params) -> Result<BivariatePolynomial> {
    let (m, n, t) = (i(p.m()), i(p.n()), i(p.t()));
    let big_n = n - t;
    let mut out = BivariatePolynomial::zero();
    for a in 0..=big_n {
        for b in 0..=big_n - a {
            let num = binomial(m * n + a - 1, a) * binomial(n, t + a + b) * BigInt::from(t + b);
            out.add_term(a as i32, b as i32, BigRational::new(num, BigInt::from(n)));
        }
    }
    check_coefficients(&out, "F-triangle", true)?;
    Ok(out)
}

/// Outcome of one substitution identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub holds: bool,
}

/// Outcome of all six identities for one parameter triple, plus the
/// alternative `(1 + x(y+1))` prefactor for the H-from-M identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub params: Params,
    pub identities: Vec<IdentityResult>,
    pub h_from_m_plus_variant_holds: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.identities
            .iter()
            .filter(|r| !r.holds)
            .map(|r| r.name.as_str())
            .collect()
    }
}

fn poly(terms: &[(i32, i32, i64)]) -> BivariatePolynomial {
    BivariatePolynomial::from_int_terms(terms)
}

fn frac(num: BivariatePolynomial, den: BivariatePolynomial) -> Result<RationalExpr> {
    RationalExpr::new(num, den)
}

/// `target == prefactor * source(sx, sy)` after clearing the common denominator.
fn identity_holds(
    target: &BivariatePolynomial,
    prefactor: &BivariatePolynomial,
    source: &BivariatePolynomial,
    sx: &RationalExpr,
    sy: &RationalExpr,
) -> Result<bool> {
    let sub = RationalExpr::substitute(source, sx, sy)?;
    Ok(target * sub.denominator() == prefactor * sub.numerator())
}

/// Checks the six identities between the M-, F- and H-triangles exactly.
pub fn verify_transformation_identities(p: &Params) -> Result<IdentityReport> {
    let m_tri = m_triangle_closed(p)?;
    let f_tri = f_triangle_closed(p)?;
    let h_tri = h_triangle_closed(p)?;
    let big_n = (p.n() - p.t()) as u32;

    let x = BivariatePolynomial::x();
    let y = BivariatePolynomial::y();
    let one = BivariatePolynomial::one();
    let xy_minus_x = poly(&[(1, 1, 1), (1, 0, -1)]);
    let one_plus_x_ym1 = &one + &xy_minus_x;
    let xy_minus_1 = poly(&[(1, 1, 1), (0, 0, -1)]);
    let x_minus_1 = &x - &one;
    let one_minus_y = &one - &y;

    let mut identities = Vec::with_capacity(6);
    let mut record = |name: &str, holds: bool| {
        identities.push(IdentityResult {
            name: name.to_string(),
            holds,
        })
    };

    // F = y^N M((y+1)/(y-x), (y-x)/y)
    record(
        "F from M",
        identity_holds(
            &f_tri,
            &y.pow(big_n),
            &m_tri,
            &frac(&y + &one, &y - &x)?,
            &frac(&y - &x, y.clone())?,
        )?,
    );
    // F = x^N H((x+1)/x, (y+1)/(x+1))
    record(
        "F from H",
        identity_holds(
            &f_tri,
            &x.pow(big_n),
            &h_tri,
            &frac(&x + &one, x.clone())?,
            &frac(&y + &one, &x + &one)?,
        )?,
    );
    // H = (1 + x(y-1))^N M(y/(y-1), x(y-1)/(x(y-1)+1))
    let hm_sx = frac(y.clone(), &y - &one)?;
    let hm_sy = frac(xy_minus_x.clone(), one_plus_x_ym1.clone())?;
    record(
        "H from M",
        identity_holds(&h_tri, &one_plus_x_ym1.pow(big_n), &m_tri, &hm_sx, &hm_sy)?,
    );
    // H = (x-1)^N F(1/(x-1), (x(y-1)+1)/(x-1))
    record(
        "H from F",
        identity_holds(
            &h_tri,
            &x_minus_1.pow(big_n),
            &f_tri,
            &frac(one.clone(), x_minus_1.clone())?,
            &frac(one_plus_x_ym1.clone(), x_minus_1.clone())?,
        )?,
    );
    // M = (xy-1)^N F((1-y)/(xy-1), 1/(xy-1))
    record(
        "M from F",
        identity_holds(
            &m_tri,
            &xy_minus_1.pow(big_n),
            &f_tri,
            &frac(one_minus_y.clone(), xy_minus_1.clone())?,
            &frac(one.clone(), xy_minus_1.clone())?,
        )?,
    );
    // M = (1-y)^N H(y(x-1)/(1-y), x/(x-1))
    record(
        "M from H",
        identity_holds(
            &m_tri,
            &one_minus_y.pow(big_n),
            &h_tri,
            &frac(&y * &x_minus_1, one_minus_y.clone())?,
            &frac(x.clone(), x_minus_1.clone())?,
        )?,
    );

    let plus_prefactor = &one + &(&x * &(&y + &one));
    let plus_variant = identity_holds(&h_tri, &plus_prefactor.pow(big_n), &m_tri, &hm_sx, &hm_sy)?;

    Ok(IdentityReport {
        params: *p,
        identities,
        h_from_m_plus_variant_holds: plus_variant,
    })
}
