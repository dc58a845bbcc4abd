//! The seeded invariant suite behind `tricover verify`.

use std::time::Instant;

use serde_json::json;
use tricover::algebra::{random_form, random_line, restrict_to_line};
use tricover::bundle::{splitting_on_line, BundleClass, SplittingType};
use tricover::chart::verify_u1_discriminant_identity;
use tricover::classify::{classify_branch_degree, uniformity_verdict, Status, CLASSIFICATION_TABLE};
use tricover::miranda::DerivedSections;
use tricover::tan::{abc_data, tan_decomposition};
use tricover::testgen::{random_minimal_cubic, random_miranda};
use tricover::{Field, Form};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::format_field;
use crate::{CliError, Report};

pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failing: Vec<u64>,
    pub millis: u128,
}

fn check(name: &'static str, seeds: impl Iterator<Item = u64>, mut case: impl FnMut(u64) -> bool) -> Check {
    let start = Instant::now();
    let mut cases = 0;
    let mut failing = Vec::new();
    for s in seeds {
        cases += 1;
        if !case(s) {
            failing.push(s);
        }
    }
    Check {
        name,
        cases,
        failing,
        millis: start.elapsed().as_millis(),
    }
}

fn forms(seed: u64, field: Field, n: usize) -> Vec<Form> {
    (0..n as u64)
        .map(|i| {
            let s = seed.wrapping_mul(31).wrapping_add(i);
            random_form((s % 4) as u32, s, 4).into_field(field)
        })
        .collect()
}

/// Runs every check over `cases` seeds starting at `seed`.
pub fn checks(seed: u64, cases: usize, field: Field) -> Vec<Check> {
    let seeds = || seed..seed + cases as u64;
    vec![
        check("exact_div inverts multiplication", seeds(), |s| {
            let v = forms(s, field, 2);
            (&v[0] * &v[1]).exact_div(&v[1]).is_ok_and(|q| q == v[0])
        }),
        check("gcd(fh, gh) = h gcd(f, g)", seeds(), |s| {
            let v = forms(s, field, 3);
            let lhs = (&v[0] * &v[2]).gcd(&(&v[1] * &v[2]));
            let rhs = v[0].gcd(&v[1]).map(|g| (&v[2] * &g).monic());
            matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
        }),
        check("square-free decomposition", seeds(), |s| {
            let v = forms(s, field, 2);
            let p = &v[0] * &v[1].pow(2);
            let Ok(dec) = p.squarefree_decomposition() else {
                return false;
            };
            dec.expand() == p
                && dec.parts.iter().all(|(g, _)| {
                    (0..3)
                        .try_fold(g.clone(), |acc, i| acc.gcd(&g.derivative(i)))
                        .is_ok_and(|h| h.is_constant())
                })
        }),
        check("restriction is a ring map", seeds(), |s| {
            let v = forms(s, field, 2);
            let line = random_line(&mut ChaCha8Rng::seed_from_u64(s), 5);
            let lhs = restrict_to_line(&(&v[0] * &v[1]), &line);
            lhs == &restrict_to_line(&v[0], &line) * &restrict_to_line(&v[1], &line)
        }),
        check("Tan decomposition round trip and gcd formulas", seeds(), |s| {
            let rc = random_minimal_cubic(s, field);
            let Ok(td) = tan_decomposition(&rc.minimal()) else {
                return false;
            };
            td.validate().is_ok()
                && td.s() == rc.s.expand()
                && td.t() == rc.t.expand()
                && abc_data(&td).is_ok_and(|abc| abc.gcd_formulas_agree)
        }),
        check("U1 discriminant identity", seeds(), |s| {
            tan_decomposition(&random_minimal_cubic(s, field).minimal())
                .and_then(|td| verify_u1_discriminant_identity(&td))
                .is_ok_and(|c| c.holds)
        }),
        check("Miranda algebra and discriminant", seeds(), |s| {
            let md = random_miranda(s, field);
            let efg = DerivedSections::from_abcd(md.a(), md.b(), md.c(), md.d());
            let branch = md.discriminant();
            md.multiplication_table().is_associative()
                && efg == md.derived_efg()
                && branch.degree.is_none_or(|d| d as i64 == branch.expected_degree)
        }),
        check("Omega(0) has type (-1, -2) on every line", seeds(), |s| {
            let line = random_line(&mut ChaCha8Rng::seed_from_u64(s), 5);
            splitting_on_line(&BundleClass::CotangentTwist(0), &line)
                .is_ok_and(|t| t == SplittingType::new(-1, -2))
        }),
        check("classification table", CLASSIFICATION_TABLE.iter().map(|(d, _)| *d as u64), |d| {
            classify_branch_degree(d as i64).is_ok_and(|e| e.table_agrees == Some(true))
        }),
        check("jump eliminations for k = 1..7, 9", [1u64, 2, 3, 4, 5, 6, 7, 9].into_iter(), |k| {
            uniformity_verdict(k as i64).status == Status::Uniform
        }),
    ]
}

pub fn run_suite(seed: u64, cases: usize, field: Field) -> Result<Report, (Report, CliError)> {
    let results = checks(seed, cases, field);
    let mut r = Report::new(json!({"seed": seed, "cases": cases, "field": format_field(field)}));
    r.line(format!("invariant suite, seed {seed}, {cases} cases, field {}", format_field(field)));
    let mut failed = 0;
    for c in &results {
        let ok = c.failing.is_empty();
        failed += usize::from(!ok);
        r.line(format!(
            "  [{}] {} ({} cases, {} ms)",
            if ok { "pass" } else { "FAIL" },
            c.name,
            c.cases,
            c.millis
        ));
        if !ok {
            r.line(format!("         failing seeds: {:?}", c.failing));
        }
    }
    r.verification = Some(json!({
        "checks": results.iter().map(|c| json!({
            "name": c.name,
            "cases": c.cases,
            "passed": c.failing.is_empty(),
            "failing_seeds": c.failing,
        })).collect::<Vec<_>>(),
        "passed": failed == 0,
    }));
    if failed > 0 {
        Err((r, CliError::ChecksFailed(failed)))
    } else {
        Ok(r)
    }
}
