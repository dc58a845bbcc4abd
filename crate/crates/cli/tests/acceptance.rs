//! Acceptance criteria. Each criterion prints one pass/fail line; the process fails if any does.
//!
//! Expected values come from independent computations inside this file (hand-expanded identities,
//! degree arithmetic) or from the published classification, never from the code under test.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde_json::Value;
use tricover::algebra::{random_form, random_line, restrict_to_line};
use tricover::bundle::{
    euler_cotangent_presentation, jump_line_scan_lines, jumping_example, split_example,
    splitting_on_line, splitting_type_presented, BundleClass, Presentation, PresentationKind,
    SplittingType,
};
use tricover::chart::{square_root, to_miranda_u1, verify_u1_discriminant_identity};
use tricover::classify::{eliminate_jump, uniformity_verdict, EliminationReason, Status};
use tricover::miranda::{section_degrees, MirandaData};
use tricover::tan::{abc_data, analyze, tan_decomposition};
use tricover::testgen::random_minimal_cubic;
use tricover::{FactoredForm, Field, Form, LineP2, Scalar};
use tricover_cli::run;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TABLE_LIMIT: Duration = Duration::from_secs(1);
const EXCLUSION_LIMIT: Duration = Duration::from_secs(1);
const ELIMINATION_LIMIT: Duration = Duration::from_secs(1);
const IDENTITY_LIMIT: Duration = Duration::from_secs(30);
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(30);
const WORKED_LIMIT: Duration = Duration::from_secs(1);
const SPLITTING_LIMIT: Duration = Duration::from_secs(10);
const GALOIS_LIMIT: Duration = Duration::from_secs(1);
const ALGEBRA_LIMIT: Duration = Duration::from_secs(60);

const RANDOM_COVERS: u64 = 100;
const ALGEBRA_CASES: u64 = 1000;
const SEED: u64 = 20_240_601;

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: i64) -> Scalar {
    Scalar::from(n)
}

/// `O(a) + O(b)` written as in the classification.
fn split(a: i64, b: i64) -> String {
    let (hi, lo) = (a.max(b), a.min(b));
    format!("O({hi}) + O({lo})")
}

fn classify_json(degree: i64) -> Result<Value, String> {
    let (code, out) = run(["tricover", "--json", "classify", "--degree", &degree.to_string()]);
    if code != 0 {
        return Err(format!("classify --degree {degree} exited with {code}: {out}"));
    }
    serde_json::from_str(&out).map_err(|e| e.to_string())
}

fn table_reproduction() -> Outcome {
    let expected: [(i64, Vec<String>); 8] = [
        (2, vec!["Omega(1)".into()]),
        (4, vec![split(-1, -1)]),
        (6, vec![split(-1, -2), "Omega(0)".into()]),
        (8, vec![split(-2, -2)]),
        (10, vec![split(-2, -3), "Omega(-1)".into()]),
        (12, vec![split(-3, -3), split(-2, -4)]),
        (14, vec![split(-3, -4), "Omega(-2)".into()]),
        (18, vec![split(-4, -5), split(-3, -6), "Omega(-3)".into()]),
    ];
    for (degree, row) in expected {
        let v = classify_json(degree)?;
        let c = &v["classification"];
        let got: BTreeSet<String> = c["candidates"]
            .as_array()
            .ok_or("no candidates")?
            .iter()
            .map(|s| s.as_str().unwrap_or_default().to_string())
            .collect();
        let want: BTreeSet<String> = row.into_iter().collect();
        ensure(got == want, || format!("degree {degree}: got {got:?}, expected {want:?}"))?;
        ensure(c["table_agrees"] == true, || format!("degree {degree}: table disagrees"))?;
        ensure(c["status"] == "uniform", || format!("degree {degree}: not uniform"))?;
        ensure(c["c1"] == -degree / 2, || format!("degree {degree}: wrong c1"))?;
    }
    Ok(())
}

fn degree_sixteen() -> Outcome {
    let v = classify_json(16)?;
    ensure(v["classification"]["status"] == "inconclusive", || "degree 16 reported uniform".into())?;
    let e = eliminate_jump(8, 1);
    // On a jump line with m = 1 and k = 8 the degree of b~ is k/2 - 3m = 1.
    ensure(!e.eliminated(), || "eliminate_jump(8, 1) eliminated the jump".into())?;
    ensure(e.profile.deg_b == 1, || format!("deg_b = {}", e.profile.deg_b))?;
    ensure(
        e.reasons == vec![EliminationReason::Inconclusive { deg_b: 1 }],
        || format!("reasons {:?}", e.reasons),
    )
}

/// Degree of `b~` on a line of jump `m`, from the twist bookkeeping.
fn deg_b_tilde(k: i64, m: i64) -> i64 {
    if k % 2 == 0 {
        k / 2 - 3 * m
    } else {
        (k + 1) / 2 - 2 - 3 * m
    }
}

fn eliminations() -> Outcome {
    for k in [1, 2, 3, 4, 5, 6, 7, 9] {
        let verdict = uniformity_verdict(k);
        ensure(verdict.status == Status::Uniform, || format!("k = {k} not uniform"))?;
        let bound = (1..).find(|&m| deg_b_tilde(k, m) < 0).unwrap();
        ensure(verdict.m_bound == bound, || format!("k = {k}: bound {} vs {bound}", verdict.m_bound))?;
        for m in 1..=bound {
            let e = eliminate_jump(k, m);
            let deg_b = deg_b_tilde(k, m);
            ensure(e.profile.deg_b == deg_b, || format!("k = {k}, m = {m}: deg_b"))?;
            let ok = match deg_b {
                d if d < 0 => {
                    e.reasons.len() == 2
                        && matches!(e.reasons[0], EliminationReason::DTildeVanishes { .. })
                        && e.reasons[1] == EliminationReason::TotallyRamifiedCoprime
                }
                0 => matches!(
                    &e.reasons[..],
                    [EliminationReason::ConstantCaseDegreeMismatch { equation: "a1 + b0^2 = c1", .. }]
                ),
                _ => false,
            };
            ensure(ok && e.eliminated(), || format!("k = {k}, m = {m}: {:?}", e.reasons))?;
        }
    }
    Ok(())
}

fn field_for(seed: u64) -> Field {
    if seed % 4 == 3 {
        Field::prime(1_000_003).unwrap()
    } else {
        Field::Rational
    }
}

fn u1_identity() -> Outcome {
    for seed in SEED..SEED + RANDOM_COVERS {
        let rc = random_minimal_cubic(seed, field_for(seed));
        let td = tan_decomposition(&rc.minimal()).map_err(|e| format!("seed {seed}: {e}"))?;
        let (a0, a1, a2, b0, b1) = (
            td.a0.expand(),
            td.a1.expand(),
            td.a2.expand(),
            td.b0.expand(),
            td.b1.expand(),
        );
        // With a~ = 0: e = -b d, f = -b c, g = d^2, so D = b^2 c^2 + 4 b d^3. Here b = a2 b1,
        // c = -a1 b0 and d = a0 a1 a2 / 3, hence 27 D = 27 b^2 c^2 + 4 b (a0 a1 a2)^3.
        let b = &a2 * &b1;
        let c = &a1 * &b0;
        let d3 = (&(&a0 * &a1) * &a2).pow(3);
        let d27 = (&b.pow(2) * &c.pow(2))
            .scale(&int(27))
            .checked_add(&(&b * &d3).scale(&int(4)))
            .map_err(|e| e.to_string())?;
        let rhs = &d27 * &b.pow(2);
        let s = rc.s.expand();
        let t = rc.t.expand();
        let lhs = s.pow(3).scale(&int(4)).checked_add(&t.pow(2).scale(&int(27))).unwrap();
        ensure(lhs == rhs, || format!("seed {seed}: hand-expanded identity fails"))?;
        let check = verify_u1_discriminant_identity(&td).map_err(|e| e.to_string())?;
        ensure(check.holds, || format!("seed {seed}: library check fails"))?;
        let chart = to_miranda_u1(&td).map_err(|e| e.to_string())?;
        ensure(chart.a.is_zero() && chart.b.num() == &b, || format!("seed {seed}: chart data"))?;
    }
    Ok(())
}

fn round_trip() -> Outcome {
    for seed in SEED..SEED + RANDOM_COVERS {
        let rc = random_minimal_cubic(seed, field_for(seed));
        let td = tan_decomposition(&rc.minimal()).map_err(|e| format!("seed {seed}: {e}"))?;
        let (a0, a1, a2, b0, b1) = (
            td.a0.expand(),
            td.a1.expand(),
            td.a2.expand(),
            td.b0.expand(),
            td.b1.expand(),
        );
        let s = rc.s.expand();
        let t = rc.t.expand();
        let core = &a1 * &a2.pow(2);
        ensure(&(&core * &b1) * &a0 == s, || format!("seed {seed}: s"))?;
        ensure(&(&core * &b1.pow(2)) * &b0 == t, || format!("seed {seed}: t"))?;
        let g = s.pow(3).gcd(&t.pow(2)).map_err(|e| e.to_string())?;
        let a = s.pow(3).scale(&int(4)).exact_div(&g).map_err(|e| e.to_string())?;
        let factored = (&(&a1 * &a2.pow(2)) * &a0.pow(3)).scale(&int(4));
        ensure(a.is_associate(&factored), || format!("seed {seed}: a from gcd"))?;
        let abc = abc_data(&td).map_err(|e| e.to_string())?;
        ensure(abc.gcd_formulas_agree, || format!("seed {seed}: gcd formulas"))?;
        ensure(abc.a == factored, || format!("seed {seed}: factored a"))?;
    }
    Ok(())
}

fn worked_example() -> Outcome {
    let s = FactoredForm::from_factors(vec![(Form::x(), 1), (Form::y(), 1)]).unwrap();
    let t = FactoredForm::from_factors(vec![(Form::x(), 1), (Form::y(), 1), (Form::z(), 1)]).unwrap();
    let an = analyze(s, t, 1).map_err(|e| e.to_string())?;
    let quadric = (&Form::x() * &Form::y())
        .scale(&int(4))
        .checked_add(&Form::z().pow(2).scale(&int(27)))
        .unwrap();
    let mut want = vec![(Form::x(), 2), (Form::y(), 2), (quadric.monic(), 1)];
    let mut got: Vec<(Form, u32)> = an
        .ramification
        .branch_locus
        .components()
        .iter()
        .map(|(f, m)| (f.monic(), *m))
        .collect();
    let key = |p: &(Form, u32)| p.0.to_string();
    want.sort_by_key(key);
    got.sort_by_key(key);
    ensure(got == want, || format!("branch divisor {got:?}"))?;
    ensure(an.ramification.bar_d_degree == 6, || "branch degree".into())?;
    let (code, out) = run(["tricover", "--json", "classify", "--degree", "6"]);
    ensure(code == 0, || out.clone())?;
    let v: Value = serde_json::from_str(&out).unwrap();
    let c = &v["classification"];
    let names: BTreeSet<&str> = c["candidates"].as_array().unwrap().iter().filter_map(Value::as_str).collect();
    ensure(names == BTreeSet::from([split(-1, -2).as_str(), "Omega(0)"]), || format!("{names:?}"))?;
    let cubic = c["cubic_sections"].as_array().unwrap();
    ensure(
        cubic.len() == 1 && cubic[0]["bundle"] == split(-1, -2).as_str() && cubic[0]["line_bundle_degree"] == 1,
        || format!("cubic sections {cubic:?}"),
    )
}

/// `O(t1) + O(t2)` as the kernel of `(x^-t1, 0, 1): O(t1) + O(t2) + O -> O`, for `t1, t2 <= 0`.
fn split_presentation(t1: i64, t2: i64) -> Presentation {
    Presentation::new(
        PresentationKind::Kernel,
        vec![vec![Form::x().pow((-t1) as u32), Form::zero((-t2) as u32), Form::one()]],
        vec![0],
        vec![t1, t2, 0],
    )
    .unwrap()
}

fn splitting_engine() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let lines: Vec<LineP2> = (0..20).map(|_| random_line(&mut rng, 5)).collect();
    let check = |t: SplittingType, c1: i64, want: SplittingType, what: &str| {
        ensure(t == want && t.a1 + t.a2 == c1, || format!("{what}: {t}, expected {want}"))
    };
    for t in [-1, 0, 1, 2] {
        let euler = euler_cotangent_presentation(t);
        for line in &lines {
            let got = splitting_type_presented(&euler, line).map_err(|e| e.to_string())?;
            check(got, 2 * t - 3, SplittingType::new(t - 1, t - 2), "Euler presentation")?;
        }
    }
    for (t1, t2) in [(0, 0), (-1, -2), (-2, -2), (-1, -4), (-3, -6)] {
        let p = split_presentation(t1, t2);
        for line in lines.iter().take(5) {
            let got = splitting_type_presented(&p, line).map_err(|e| e.to_string())?;
            check(got, t1 + t2, SplittingType::new(t1, t2), "split presentation")?;
        }
    }
    for line in &lines {
        let got = splitting_type_presented(&split_example(), line).map_err(|e| e.to_string())?;
        check(got, -6, SplittingType::new(-2, -4), "split example")?;
    }
    // Kernel of (x, y, z^2): the point (0:0:1) is where all three entries vanish to low order.
    let jumping = BundleClass::Presented(jumping_example());
    let through = LineP2::from_ints(1, -2, 0).unwrap();
    let general = LineP2::from_ints(1, 1, 1).unwrap();
    check(splitting_on_line(&jumping, &through).unwrap(), -4, SplittingType::new(-1, -3), "jump line")?;
    check(splitting_on_line(&jumping, &general).unwrap(), -4, SplittingType::new(-2, -2), "general line")?;
    let mut sample = lines.clone();
    sample.push(through.clone());
    let report = jump_line_scan_lines(&jumping, &sample).map_err(|e| e.to_string())?;
    ensure(report.generic_type == SplittingType::new(-2, -2), || "generic type".into())?;
    ensure(report.deviations.iter().any(|(l, _)| *l == through), || "jump line not detected".into())?;
    for (l, _) in &report.deviations {
        ensure(l.linear_form().evaluate(&[int(0), int(0), int(1)]) == int(0), || format!("spurious jump {l:?}"))?;
    }
    Ok(())
}

fn sample_form(degree: i64, seed: u64) -> Form {
    loop {
        let f = random_form(degree as u32, seed, 5);
        if !f.is_zero() {
            return f;
        }
    }
}

fn galois() -> Outcome {
    for (t1, t2) in [(-1, -2), (-2, -2), (-2, -3), (-1, -1)] {
        let [da, db, dc, dd] = section_degrees(t1, t2);
        for seed in 0..5u64 {
            let b = sample_form(db, seed * 7 + 1);
            let c = sample_form(dc, seed * 7 + 2);
            let md = MirandaData::new(t1, t2, Form::zero(da as u32), b.clone(), c.clone(), Form::zero(dd as u32))
                .map_err(|e| e.to_string())?;
            let bc = &b * &c;
            let disc = md.discriminant().discriminant;
            ensure(md.is_galois(), || format!("({t1}, {t2}): not Galois"))?;
            ensure(disc == bc.pow(2), || format!("({t1}, {t2}): D != (bc)^2"))?;
            ensure(square_root(&disc).map_err(|e| e.to_string())?.is_some(), || "no square root".into())?;
            let a = sample_form(da, seed * 7 + 3);
            let perturbed = MirandaData::new(t1, t2, a, b, c, Form::zero(dd as u32)).map_err(|e| e.to_string())?;
            ensure(!perturbed.is_galois(), || format!("({t1}, {t2}): perturbed still Galois"))?;
            ensure(perturbed.discriminant().discriminant != bc.pow(2), || "perturbed D unchanged".into())?;
        }
    }
    Ok(())
}

fn forms(seed: u64, n: u64) -> Vec<Form> {
    let field = field_for(seed);
    (0..n)
        .map(|i| {
            let s = seed.wrapping_mul(131).wrapping_add(i);
            random_form((s % 4) as u32, s, 4).into_field(field)
        })
        .collect()
}

fn algebra_suites() -> Outcome {
    for seed in 0..ALGEBRA_CASES {
        let v = forms(seed, 3);
        let (f, g, h) = (&v[0], &v[1], &v[2]);
        if !g.is_zero() {
            ensure((f * g).exact_div(g).map_err(|e| e.to_string())? == *f, || format!("exact_div, seed {seed}"))?;
        }
        if !h.is_zero() && !(f.is_zero() && g.is_zero()) {
            let lhs = (f * h).gcd(&(g * h)).map_err(|e| e.to_string())?;
            let rhs = (h * &f.gcd(g).map_err(|e| e.to_string())?).monic();
            ensure(lhs == rhs, || format!("gcd scaling, seed {seed}"))?;
        }
        if !f.is_zero() && !g.is_zero() {
            let p = f * &g.pow(2);
            let dec = p.squarefree_decomposition().map_err(|e| e.to_string())?;
            ensure(dec.expand().is_associate(&p), || format!("squarefree expand, seed {seed}"))?;
            for (part, _) in &dec.parts {
                let mut acc = part.clone();
                for i in 0..3 {
                    acc = acc.gcd(&part.derivative(i)).map_err(|e| e.to_string())?;
                }
                ensure(acc.is_constant(), || format!("squarefree part, seed {seed}"))?;
            }
        }
        let line = random_line(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        let rf = restrict_to_line(f, &line);
        let rg = restrict_to_line(g, &line);
        ensure(restrict_to_line(&(f * g), &line) == &rf * &rg, || format!("restriction, seed {seed}"))?;
        ensure(rf.is_zero() || rf.degree() == f.degree(), || format!("restriction degree, seed {seed}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("classification table for degrees 2..18", TABLE_LIMIT, table_reproduction),
        ("degree 16 stays inconclusive", EXCLUSION_LIMIT, degree_sixteen),
        ("jump eliminations for k = 1..7, 9", ELIMINATION_LIMIT, eliminations),
        ("discriminant identity on the chart U1", IDENTITY_LIMIT, u1_identity),
        ("Tan decomposition round trip", ROUND_TRIP_LIMIT, round_trip),
        ("worked example s = xy, t = xyz", WORKED_LIMIT, worked_example),
        ("splitting types of presented bundles", SPLITTING_LIMIT, splitting_engine),
        ("Galois criterion", GALOIS_LIMIT, galois),
        ("algebra core properties", ALGEBRA_LIMIT, algebra_suites),
    ];
    let mut failed = 0;
    for (i, (name, limit, body)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = body();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= limit, || format!("took {elapsed:?}, limit {limit:?}"))
        });
        match outcome {
            Ok(()) => println!("PASS {} {name} ({} ms)", i + 1, elapsed.as_millis()),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name} ({} ms): {e}", i + 1, elapsed.as_millis());
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
