//! One function per job kind. Each takes a parameter triple and returns a
//! JSON row plus a pass flag, so that single runs, `verify` and `sweep` all
//! share the same code.

use clap::ValueEnum;
use nclab::closedform::{
    chain_count_with_profile, count_by_profile, count_by_rank, multichain_count_formula,
    total_count, RankVector,
};
use nclab::dyck::{enumerate_tdyck, h_via_paths, verify_bijection};
use nclab::ncpart::{block_profile, enumerate_nc_capped, rank_of, BlockProfile};
use nclab::nonnest::{enumerate_nn_capped, nn_poset_with, Variant};
use nclab::params::check_cap;
use nclab::polyalg::{
    f_triangle_closed, h_triangle_closed, m_triangle_brute_capped, m_triangle_closed,
    verify_transformation_identities, BivariatePolynomial,
};
use nclab::poset::build_refinement_poset_capped;
use nclab::{Error, Params};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Nc,
    Nn,
    Dyck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountBy {
    Rank,
    Profile,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    M,
    F,
    H,
    Htilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    ConjCount,
    ConjH,
    Bijection,
    Lemma54,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Paper,
    Adapted,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Paper => Variant::Paper,
            VariantArg::Adapted => Variant::Adapted,
        }
    }
}

/// Result of one job on one parameter triple.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub params: Params,
    pub pass: bool,
    pub data: Value,
}

impl Row {
    fn new(params: &Params, pass: bool, data: Value) -> Self {
        Row {
            params: *params,
            pass,
            data,
        }
    }
}

/// The things `sweep` can iterate.
#[derive(Debug, Clone)]
pub enum Job {
    Count(CountBy),
    /// Every rank vector with `parts` parts.
    Chains(usize),
    Triangle(Which, Variant),
    Enumerate(Kind, Variant),
    Verify(Suite, Variant),
}

pub fn run_job(job: &Job, p: &Params, cap: u64) -> Result<Row, Error> {
    match job {
        Job::Count(by) => count(p, *by, cap),
        Job::Chains(parts) => chains_all(p, *parts, cap),
        Job::Triangle(which, variant) => {
            let poly = triangle(p, *which, *variant, false, cap)?;
            Ok(Row::new(p, true, serde_json::to_value(poly).expect("polynomials serialise")))
        }
        Job::Enumerate(kind, variant) => {
            let objects = enumerate(p, *kind, *variant, cap)?;
            Ok(Row::new(p, true, json!({ "count": objects.len().to_string() })))
        }
        Job::Verify(suite, variant) => verify(p, *suite, *variant, cap),
    }
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

fn compare(key: Value, formula: &BigInt, brute: &BigInt) -> (bool, Value) {
    let ok = formula == brute;
    (
        ok,
        json!({
            "key": key,
            "formula": formula.to_string(),
            "brute": brute.to_string(),
            "match": ok,
        }),
    )
}

pub fn count(p: &Params, by: CountBy, cap: u64) -> Result<Row, Error> {
    let all = enumerate_nc_capped(p, cap)?;
    let mut rows = Vec::new();
    let mut pass = true;
    match by {
        CountBy::Total => {
            let (ok, row) = compare(json!("total"), &total_count(p)?, &big(all.len()));
            pass &= ok;
            rows.push(row);
        }
        CountBy::Rank => {
            for s in 0..=p.max_rank() {
                let brute = all
                    .iter()
                    .filter(|pi| rank_of(pi, p).map(|r| r == s).unwrap_or(false))
                    .count();
                let (ok, row) = compare(json!(s), &count_by_rank(p, s)?, &big(brute));
                pass &= ok;
                rows.push(row);
            }
        }
        CountBy::Profile => {
            let profiles = all
                .iter()
                .map(|pi| block_profile(pi, p))
                .collect::<Result<Vec<_>, _>>()?;
            for b in BlockProfile::all_for(p.n()) {
                let brute = profiles.iter().filter(|x| **x == b).count();
                let (ok, row) = compare(json!(b.counts()), &count_by_profile(p, &b)?, &big(brute));
                pass &= ok;
                rows.push(row);
            }
        }
    }
    Ok(Row::new(p, pass, json!({ "by": by, "rows": rows })))
}

/// Multi-chain formula against the poset count for one rank vector,
/// optionally with the bottom element's block profile fixed.
pub fn chains(p: &Params, ranks: &RankVector, profile: Option<&BlockProfile>, cap: u64) -> Result<Row, Error> {
    let poset = build_refinement_poset_capped(p, cap)?;
    let targets = ranks.cumulative_ranks();
    let (formula, brute) = match profile {
        None => (
            multichain_count_formula(p, ranks)?,
            poset.count_rank_multichains(&targets)?,
        ),
        Some(b) => (
            chain_count_with_profile(p, ranks, b)?,
            poset.count_rank_multichains_where(&targets, |x| {
                block_profile(poset.element(x), p).map(|q| q == *b).unwrap_or(false)
            })?,
        ),
    };
    let brute = BigInt::from(brute);
    let ok = formula == brute;
    let mut data = json!({
        "ranks": ranks.parts(),
        "cumulative": targets,
        "formula": formula.to_string(),
        "brute": brute.to_string(),
        "match": ok,
    });
    if let Some(b) = profile {
        data["profile"] = json!(b.counts());
    }
    Ok(Row::new(p, ok, data))
}

fn chains_all(p: &Params, parts: usize, cap: u64) -> Result<Row, Error> {
    let poset = build_refinement_poset_capped(p, cap)?;
    let mut rows = Vec::new();
    let mut pass = true;
    for rv in RankVector::compositions(p.max_rank(), parts) {
        let formula = multichain_count_formula(p, &rv)?;
        let brute = BigInt::from(poset.count_rank_multichains(&rv.cumulative_ranks())?);
        let (ok, row) = compare(json!(rv.parts()), &formula, &brute);
        pass &= ok;
        rows.push(row);
    }
    Ok(Row::new(p, pass, json!({ "rows": rows })))
}

pub fn triangle(p: &Params, which: Which, variant: Variant, brute: bool, cap: u64) -> Result<BivariatePolynomial, Error> {
    match which {
        Which::M if brute => m_triangle_brute_capped(p, cap),
        Which::M => m_triangle_closed(p),
        Which::F => f_triangle_closed(p),
        Which::H => h_triangle_closed(p),
        Which::Htilde => {
            check_cap(&total_count(p)?, cap)?;
            Ok(nn_poset_with(p, variant, cap)?.h_tilde())
        }
    }
}

/// Objects as JSON values in their canonical order.
pub fn enumerate(p: &Params, kind: Kind, variant: Variant, cap: u64) -> Result<Vec<Value>, Error> {
    fn values<T: Serialize>(items: &[T]) -> Vec<Value> {
        items
            .iter()
            .map(|x| serde_json::to_value(x).expect("objects serialise"))
            .collect()
    }
    match kind {
        Kind::Nc => Ok(values(&enumerate_nc_capped(p, cap)?)),
        Kind::Nn => {
            check_cap(&total_count(p)?, cap)?;
            Ok(values(&enumerate_nn_capped(p, variant, cap)?))
        }
        Kind::Dyck => {
            if p.m() != 1 {
                return Err(Error::Unsupported("the path model exists only for m = 1".into()));
            }
            check_cap(&total_count(p)?, cap)?;
            Ok(values(&enumerate_tdyck(p.n(), p.t())?))
        }
    }
}

pub fn verify(p: &Params, suite: Suite, variant: Variant, cap: u64) -> Result<Row, Error> {
    match suite {
        Suite::Identities => {
            let report = verify_transformation_identities(p)?;
            let pass = report.all_hold();
            Ok(Row::new(p, pass, serde_json::to_value(&report).expect("reports serialise")))
        }
        Suite::ConjCount | Suite::ConjH | Suite::Lemma54 => {
            check_cap(&total_count(p)?, cap)?;
            let nn = nn_poset_with(p, variant, cap)?;
            match suite {
                Suite::ConjCount => {
                    let formula = total_count(p)?;
                    let (ok, data) = compare(json!("total"), &formula, &big(nn.poset.len()));
                    Ok(Row::new(p, ok, data))
                }
                Suite::ConjH => {
                    let h_tilde = nn.h_tilde();
                    let h = h_triangle_closed(p)?;
                    let ok = h_tilde == h;
                    Ok(Row::new(
                        p,
                        ok,
                        json!({ "h_tilde": h_tilde, "h_closed": h, "match": ok }),
                    ))
                }
                _ => {
                    let ok = nn.violations.is_empty();
                    Ok(Row::new(
                        p,
                        ok,
                        json!({ "covers": nn.covers.len(), "violations": nn.violations }),
                    ))
                }
            }
        }
        Suite::Bijection => {
            check_cap(&total_count(&Params::new(1, p.n(), p.t())?)?, cap)?;
            let report = verify_bijection(p.n(), p.t())?;
            let from_paths = h_via_paths(p.n(), p.t())?;
            let closed = h_triangle_closed(&Params::new(1, p.n(), p.t())?)?;
            let h_ok = from_paths == closed;
            let pass = report.passed() && h_ok;
            Ok(Row::new(
                p,
                pass,
                json!({ "bijection": report, "h_paths_match": h_ok }),
            ))
        }
    }
}
