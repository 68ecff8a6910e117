//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//! Run with `cargo test -p nclab-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use nclab::closedform::{
    chain_count_with_profile, count_by_profile, count_by_rank, max_chains_formula,
    multichain_count_formula, total_count, zeta_formula, RankVector,
};
use nclab::dyck::{h_via_paths, path_stats, theta, verify_bijection};
use nclab::ncpart::{block_profile, enumerate_nc, rank_of, BlockProfile, SetPartition};
use nclab::nonnest::{enumerate_nn, nn_poset, PairIJ, PairSet, Variant};
use nclab::polyalg::{
    f_triangle_closed, h_triangle_closed, m_triangle_brute, m_triangle_closed,
    verify_transformation_identities, BivariatePolynomial,
};
use nclab::poset::build_refinement_poset;
use nclab::Params;
use num_bigint::BigInt;
use num_rational::BigRational;

type Outcome = Result<String, String>;

/// Triples with `m` in `ms` and `pred(m, n, t)`, for `n` up to `max_n`.
fn triples(ms: &[usize], max_n: usize, pred: impl Fn(usize, usize, usize) -> bool) -> Vec<Params> {
    let mut out = Vec::new();
    for &m in ms {
        for n in 1..=max_n {
            for t in 1..=n {
                if pred(m, n, t) {
                    out.push(Params::new(m, n, t).unwrap());
                }
            }
        }
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let ps = triples(&[1, 2, 3], 10, |m, n, _| m * n <= 10);
    for p in &ps {
        let found = enumerate_nc(p).map_err(e2s)?.len();
        let formula = total_count(p).map_err(e2s)?;
        ensure(formula == BigInt::from(found), || format!("{p}: enumerated {found}, formula {formula}"))?;
    }
    Ok(format!("{} triples with mn <= 10", ps.len()))
}

fn criterion_2() -> Outcome {
    let ps = triples(&[1, 2, 3, 4, 5, 6, 7, 8], 8, |m, n, _| m * n <= 8);
    let mut checks = 0;
    for p in &ps {
        let all = enumerate_nc(p).map_err(e2s)?;
        for s in 0..=p.max_rank() {
            let brute = all.iter().filter(|x| rank_of(x, p).unwrap() == s).count();
            let formula = count_by_rank(p, s).map_err(e2s)?;
            ensure(formula == BigInt::from(brute), || format!("{p} rank {s}: {brute} vs {formula}"))?;
            checks += 1;
        }
        let profiles: Vec<BlockProfile> = all.iter().map(|x| block_profile(x, p).unwrap()).collect();
        for b in BlockProfile::all_for(p.n()) {
            let brute = profiles.iter().filter(|x| **x == b).count();
            let formula = count_by_profile(p, &b).map_err(e2s)?;
            ensure(formula == BigInt::from(brute), || {
                format!("{p} profile {:?}: {brute} vs {formula}", b.counts())
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} rank/profile classes over {} triples", ps.len()))
}

fn criterion_3() -> Outcome {
    let ps = triples(&[1, 2, 3, 4, 5, 6, 7, 8], 8, |m, n, _| m * n <= 8);
    let mut vectors = 0;
    for p in &ps {
        let poset = build_refinement_poset(p).map_err(e2s)?;
        for l in 1..=3 {
            for rv in RankVector::compositions(p.max_rank(), l + 1) {
                let formula = multichain_count_formula(p, &rv).map_err(e2s)?;
                let dp = poset.count_rank_multichains(&rv.cumulative_ranks()).map_err(e2s)?;
                ensure(formula == BigInt::from(dp.clone()), || {
                    format!("{p} ranks {:?}: dp {dp} vs formula {formula}", rv.parts())
                })?;
                vectors += 1;
            }
        }
        for l in 1..=4 {
            let formula = zeta_formula(p, l).map_err(e2s)?;
            let brute = poset.zeta_brute(l).map_err(e2s)?;
            ensure(formula == BigInt::from(brute.clone()), || format!("{p} zeta({l}): {brute} vs {formula}"))?;
        }
    }
    // maximal chains: chains through ranks 1..n-t, and for m = 1 also the
    // saturated chains from the unique bottom
    let chain_ps = triples(&[1, 2, 3], 10, |m, n, t| m * n <= 10 && n > t && n - t <= 4);
    for p in &chain_ps {
        let poset = build_refinement_poset(p).map_err(e2s)?;
        let formula = max_chains_formula(p).map_err(e2s)?;
        let ranks: Vec<usize> = (1..=p.max_rank()).collect();
        let dp = poset.count_rank_multichains(&ranks).map_err(e2s)?;
        ensure(formula == BigInt::from(dp.clone()), || format!("{p} max chains: {dp} vs {formula}"))?;
        if p.m() == 1 {
            let saturated = poset.count_maximal_chains();
            ensure(formula == BigInt::from(saturated.clone()), || {
                format!("{p} saturated chains: {saturated} vs {formula}")
            })?;
        }
    }
    Ok(format!(
        "{vectors} rank vectors, zeta l<=4 on {} triples, max chains on {} triples",
        ps.len(),
        chain_ps.len()
    ))
}

fn criterion_4() -> Outcome {
    let ps = triples(&[1, 2, 3, 4, 5, 6, 7, 8], 8, |m, n, _| m * n <= 8);
    let mut cases = 0;
    for p in &ps {
        let poset = build_refinement_poset(p).map_err(e2s)?;
        let profiles: Vec<BlockProfile> = poset
            .elements()
            .iter()
            .map(|x| block_profile(x, p).unwrap())
            .collect();
        for rv in RankVector::compositions(p.max_rank(), 3) {
            let (r1, r2) = (rv.parts()[0], rv.parts()[0] + rv.parts()[1]);
            for b in BlockProfile::all_for(p.n()) {
                let mut brute = 0u64;
                for a in 0..poset.len() {
                    if poset.rank(a) != r1 || profiles[a] != b {
                        continue;
                    }
                    brute += poset
                        .upset(a)
                        .into_iter()
                        .filter(|&c| poset.rank(c) == r2)
                        .count() as u64;
                }
                let formula = chain_count_with_profile(p, &rv, &b).map_err(e2s)?;
                ensure(formula == BigInt::from(brute), || {
                    format!("{p} s={:?} b={:?}: {brute} vs {formula}", rv.parts(), b.counts())
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (s, b) cases over {} triples", ps.len()))
}

fn criterion_5() -> Outcome {
    let ps = triples(&[1, 2, 3, 4, 5, 6, 7, 8], 8, |m, n, _| m * n <= 8);
    for p in &ps {
        let brute = m_triangle_brute(p).map_err(e2s)?;
        let closed = m_triangle_closed(p).map_err(e2s)?;
        ensure(brute == closed, || format!("{p}: brute {brute} vs closed {closed}"))?;
    }
    let m = m_triangle_brute(&Params::new(1, 3, 1).unwrap()).map_err(e2s)?;
    let c = m.coefficient(0, 2);
    ensure(c == BigRational::from_integer(2.into()), || format!("mu(NC(3)) coefficient {c}"))?;
    Ok(format!("{} triples; [x^0 y^2] M_(3,1)^(1) = 2", ps.len()))
}

fn criterion_6() -> Outcome {
    let ps = triples(&[1, 2, 3], 6, |_, _, _| true);
    for p in &ps {
        let report = verify_transformation_identities(p).map_err(e2s)?;
        ensure(report.all_hold(), || format!("{p}: failed {:?}", report.failures()))?;
        for (name, poly) in [("F", f_triangle_closed(p)), ("H", h_triangle_closed(p))] {
            let poly = poly.map_err(e2s)?;
            ensure(poly.has_nonnegative_coefficients() && poly.has_integer_coefficients(), || {
                format!("{p}: {name} = {poly}")
            })?;
        }
    }
    Ok(format!("6 identities and F/H positivity on {} triples", ps.len()))
}

fn poly_json(p: &BivariatePolynomial) -> String {
    serde_json::to_string(p).unwrap()
}

fn criterion_7() -> Outcome {
    let h = h_triangle_closed(&Params::new(2, 3, 2).unwrap()).map_err(e2s)?;
    let expected_h = r#"{"terms":[{"x":0,"y":0,"c":"3"},{"x":1,"y":0,"c":"1"},{"x":1,"y":1,"c":"1"}]}"#;
    ensure(poly_json(&h) == expected_h, || format!("H_(3,2)^(2) = {}", poly_json(&h)))?;

    let ht = nclab::nonnest::h_tilde(&Params::new(1, 4, 2).unwrap()).map_err(e2s)?;
    let expected_ht = concat!(
        r#"{"terms":[{"x":0,"y":0,"c":"1"},{"x":1,"y":0,"c":"3"},{"x":1,"y":1,"c":"2"},"#,
        r#"{"x":2,"y":0,"c":"1"},{"x":2,"y":1,"c":"1"},{"x":2,"y":2,"c":"1"}]}"#
    );
    ensure(poly_json(&ht) == expected_ht, || format!("H~_(4,2)^(1) = {}", poly_json(&ht)))?;

    let p = Params::new(2, 3, 2).unwrap();
    let full = enumerate_nn(&p, Variant::Paper).map_err(e2s)?.len();
    let adapted = enumerate_nn(&p, Variant::Adapted).map_err(e2s)?.len();
    ensure(full == 5 && adapted == 6, || format!("|NN_(3,2)^(2)| = {full} / {adapted}"))?;

    let fig1 = SetPartition::new(
        14,
        vec![vec![1, 6, 7, 8], vec![2, 9, 12, 13], vec![3, 14], vec![4, 5], vec![10, 11]],
    )
    .map_err(e2s)?;
    let w = block_profile(&fig1, &Params::new(2, 7, 3).unwrap()).map_err(e2s)?.weight_signature();
    ensure(w.to_string() == "x_1^3 x_2^2", || format!("sample partition weight {w}"))?;
    Ok("H_(3,2)^(2), H~_(4,2)^(1), |NN| = 5/6, weight x_1^3 x_2^2".into())
}

fn criterion_8() -> Outcome {
    let ps = triples(&[2, 3], 5, |_, _, _| true);
    let mut mismatches = Vec::new();
    for p in &ps {
        let found = enumerate_nn(p, Variant::Paper).map_err(e2s)?.len();
        let formula = total_count(p).map_err(e2s)?;
        if formula != BigInt::from(found) {
            mismatches.push(format!("{p}: {found} vs {formula}"));
        }
    }
    let attested = Params::new(2, 3, 2).unwrap();
    ensure(!mismatches.iter().any(|m| m.starts_with(&attested.to_string())), || {
        "the (2,3,2) case does not match".into()
    })?;
    if mismatches.is_empty() {
        Ok(format!("{} of {} triples match (m in {{2,3}}, n <= 5)", ps.len(), ps.len()))
    } else {
        Ok(format!(
            "{} of {} triples match; reported mismatches: {}",
            ps.len() - mismatches.len(),
            ps.len(),
            mismatches.join("; ")
        ))
    }
}

fn set(pairs: &[(usize, usize)]) -> PairSet {
    PairSet::from_pairs(pairs.iter().map(|&(i, j)| PairIJ::new(i, j).unwrap()))
}

fn criterion_9() -> Outcome {
    for n in 1..=7 {
        for t in 1..=n {
            let p = Params::new(1, n, t).unwrap();
            let paths = h_via_paths(n, t).map_err(e2s)?;
            let tilde = nclab::nonnest::h_tilde(&p).map_err(e2s)?;
            let closed = h_triangle_closed(&p).map_err(e2s)?;
            ensure(paths == tilde && tilde == closed, || {
                format!("(n={n}, t={t}): paths {paths}, H~ {tilde}, H {closed}")
            })?;
            let report = verify_bijection(n, t).map_err(e2s)?;
            ensure(report.passed(), || format!("bijection report {report:?}"))?;
        }
    }

    // reference table for (1,4,2): (filter, path, monomial x^v y^r) per node
    let nodes: [(&[(usize, usize)], &str, (i32, i32)); 9] = [
        (&[], "UUUUDDDD", (0, 0)),
        (&[(1, 4)], "UUUDUDDD", (1, 0)),
        (&[(1, 3), (1, 4)], "UUDUUDDD", (1, 0)),
        (&[(1, 4), (2, 4)], "UUUDDUDD", (1, 0)),
        (&[(1, 3), (1, 4), (2, 4)], "UUDUDUDD", (2, 0)),
        (&[(1, 4), (2, 4), (3, 4)], "UUUDDDUD", (1, 1)),
        (&[(1, 3), (1, 4), (2, 3), (2, 4)], "UUDDUUDD", (1, 1)),
        (&[(1, 3), (1, 4), (2, 4), (3, 4)], "UUDUDDUD", (2, 1)),
        (&[(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], "UUDDUDUD", (2, 2)),
    ];
    let edges: [(usize, usize, &[(usize, usize)]); 11] = [
        (1, 2, &[(1, 4)]),
        (2, 3, &[(1, 3)]),
        (2, 4, &[(2, 4)]),
        (3, 5, &[(2, 4)]),
        (4, 5, &[(1, 3)]),
        (4, 6, &[(3, 4)]),
        (5, 7, &[(2, 3)]),
        (5, 8, &[(3, 4)]),
        (6, 8, &[(1, 3)]),
        (7, 9, &[(3, 4)]),
        (8, 9, &[(2, 3)]),
    ];
    let nn = nn_poset(&Params::new(1, 4, 2).unwrap()).map_err(e2s)?;
    ensure(nn.poset.len() == 9, || format!("{} elements instead of 9", nn.poset.len()))?;
    let simple = nn.simple_pairs();
    let mut index = Vec::new();
    for (members, steps, (ex, ey)) in nodes {
        let target = set(members);
        let idx = (0..nn.poset.len())
            .find(|&k| nn.poset.element(k).component(1).members() == target)
            .ok_or_else(|| format!("filter {target} missing"))?;
        let path = theta(nn.poset.element(idx).component(1)).map_err(e2s)?;
        ensure(path.to_string() == steps, || format!("Θ({target}) = {path}, expected {steps}"))?;
        let stats = path_stats(&path);
        let fl = nn.floor[idx];
        ensure(
            (fl.len() as i32, fl.intersection(simple).len() as i32) == (ex, ey)
                && (stats.v as i32, stats.r as i32) == (ex, ey),
            || format!("node {target}: FL {fl}, path stats {stats:?}, expected x^{ex} y^{ey}"),
        )?;
        index.push(idx);
    }
    let found: BTreeSet<(usize, usize, PairSet)> = nn.covers.iter().copied().collect();
    let expected: BTreeSet<(usize, usize, PairSet)> = edges
        .iter()
        .map(|&(a, b, l)| (index[a - 1], index[b - 1], set(l)))
        .collect();
    ensure(found == expected, || "reference edges or labels differ".into())?;
    Ok("H via paths = H~ = H for n <= 7; Θ exhaustive; reference poset matched (9 nodes, 11 edges)".into())
}

fn criterion_10() -> Outcome {
    let ps = triples(&[1, 2, 3], 5, |_, _, _| true);
    let mut covers = 0;
    for p in &ps {
        let nn = nn_poset(p).map_err(e2s)?;
        ensure(nn.violations.is_empty(), || format!("{p}: {:?}", nn.violations))?;
        covers += nn.covers.len();
    }
    Ok(format!("{covers} covers over {} triples, no violations", ps.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("cardinality, mn <= 10", criterion_1),
        ("rank and profile censuses, mn <= 8", criterion_2),
        ("multi-chains, max chains, zeta", criterion_3),
        ("profiled chains, l = 2", criterion_4),
        ("M-triangle brute = closed", criterion_5),
        ("six substitution identities, F/H positivity", criterion_6),
        ("golden values", criterion_7),
        ("NN count evidence", criterion_8),
        ("H via paths / H~ / H, Θ, reference poset", criterion_9),
        ("cover property of the chain poset", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {:>2}: {name} ({detail}) [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {:>2}: {name}: {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
