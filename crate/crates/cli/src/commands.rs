//! Subcommand implementations.

use std::path::Path;

use serde_json::{json, Value};
use tricover::bundle::{
    euler_cotangent_presentation, jump_line_scan, jumping_example, split_example, splitting_on_line,
    BundleClass,
};
use tricover::chart::{
    chart_compatibility, to_miranda_u1, to_miranda_u2, verify_u1_discriminant_identity,
    verify_u2_discriminant_identity, ChartLocus, ChartMirandaData, IdentityCheck,
};
use tricover::classify::classify_branch_degree;
use tricover::tan::{analyze as tan_analyze, tan_decomposition, MinimalCubic};
use tricover::{Field, LineP2};

use crate::cover::{format_field, parse_field, parse_line, parse_presentation, CoverData, CoverDefinition};
use crate::report::{classification_json, classification_text, Report};
use crate::{verify, Cli, CliError, Command};

type Outcome = Result<Report, (Report, CliError)>;

fn plain<T>(r: Result<T, CliError>) -> Result<T, (Report, CliError)> {
    r.map_err(|e| (Report::default(), e))
}

pub fn execute(cli: &Cli) -> Outcome {
    let field = plain(cli.field.as_deref().map(parse_field).transpose())?;
    match &cli.command {
        Command::Analyze { file } => plain(analyze(&load(file, field)?)),
        Command::Miranda { file } => plain(miranda(&load(file, field)?)),
        Command::Transform { file } => plain(transform(&load(file, field)?)),
        Command::Classify { degree } => plain(classify(*degree)),
        Command::Splitting { bundle, line } => plain(splitting(bundle, line, field.unwrap_or(Field::Rational))),
        Command::ScanJumps { bundle, samples, seed } => {
            plain(scan_jumps(bundle, *samples, *seed, field.unwrap_or(Field::Rational)))
        }
        Command::Verify { seed, cases } => verify::run_suite(*seed, *cases, field.unwrap_or(Field::Rational)),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load(path: &Path, field: Option<Field>) -> Result<CoverDefinition, (Report, CliError)> {
    plain((|| {
        let def = CoverDefinition::parse(&read(path)?)?;
        match field {
            Some(f) => def.over(f),
            None => Ok(def),
        }
    })())
}

fn input_json(def: &CoverDefinition) -> Value {
    match &def.data {
        CoverData::Tan { m, s, t, irreducible } => json!({
            "mode": "tan",
            "field": format_field(def.field),
            "m": m,
            "s": s.to_string(),
            "t": t.to_string(),
            "irreducible": irreducible,
        }),
        CoverData::Miranda { t1, t2, a, b, c, d } => json!({
            "mode": "miranda",
            "field": format_field(def.field),
            "t1": t1,
            "t2": t2,
            "a": a.to_string(),
            "b": b.to_string(),
            "c": c.to_string(),
            "d": d.to_string(),
        }),
    }
}

fn analyze(def: &CoverDefinition) -> Result<Report, CliError> {
    let (s, t, m) = def.tan()?;
    let mut r = Report::new(input_json(def));
    r.line(format!("cover z^3 + s z + t over {}, m = {m}", format_field(def.field)));
    r.line(format!("  s = {s}"));
    r.line(format!("  t = {t}"));
    let an = tan_analyze(s, t, m)?;
    let rep = &an.ramification;
    let factors: serde_json::Map<String, Value> = an
        .data
        .all()
        .iter()
        .map(|(name, f)| (name.to_string(), json!(f.to_string())))
        .collect();
    r.line("factors:");
    for (name, f) in an.data.all() {
        r.line(format!("  {name} = {f}"));
    }
    r.line("abc data:");
    r.line(format!("  a = {}", an.abc.a));
    r.line(format!("  b = {}", an.abc.b));
    r.line(format!("  c = {}", an.abc.c));
    r.line(format!("  gcd formulas agree: {}", an.abc.gcd_formulas_agree));
    r.line("ramification:");
    for (name, d) in [
        ("A0", &rep.a0),
        ("A1", &rep.a1),
        ("A2", &rep.a2),
        ("B0", &rep.b0),
        ("B1", &rep.b1),
        ("C0", &rep.c0),
        ("C1", &rep.c1),
    ] {
        r.line(format!("  {name} = {d}"));
    }
    r.line(format!("  totally ramified T = A1 + A2 = {}", rep.totally_ramified));
    r.line(format!("  simply ramified S = B1 + C1 = {}", rep.simple));
    r.line(format!("  branch locus 2A1 + 2A2 + B1 + C1 = {}", rep.branch_locus));
    r.line(format!("  non-normal locus A2 + B1 + C0 = {}", rep.non_normal_image));
    r.line(format!("  branch degree deg S + 2 deg T = {}", rep.bar_d_degree));
    r.ramification = Some(json!({
        "factors": factors,
        "abc": {
            "a": an.abc.a.to_string(),
            "b": an.abc.b.to_string(),
            "c": an.abc.c.to_string(),
            "c0": an.abc.c0.to_string(),
            "c1": an.abc.c1.to_string(),
            "gcd_formulas_agree": an.abc.gcd_formulas_agree,
        },
        "divisors": {
            "A0": rep.a0.to_string(),
            "A1": rep.a1.to_string(),
            "A2": rep.a2.to_string(),
            "B0": rep.b0.to_string(),
            "B1": rep.b1.to_string(),
            "C0": rep.c0.to_string(),
            "C1": rep.c1.to_string(),
        },
        "totally_ramified": rep.totally_ramified.to_string(),
        "simply_ramified": rep.simple.to_string(),
        "branch_locus": rep.branch_locus.to_string(),
        "non_normal_locus": rep.non_normal_image.to_string(),
        "branch_degree": rep.bar_d_degree,
    }));
    r.warnings.extend(rep.warnings.iter().cloned());
    let degree = rep.bar_d_degree as i64;
    match classify_branch_degree(degree) {
        Ok(entry) => {
            r.line("classification:");
            classification_text(&entry, &mut r);
            r.classification = Some(classification_json(&entry));
        }
        Err(e) => r.warnings.push(format!("no classification: {e}")),
    }
    Ok(r)
}

fn miranda(def: &CoverDefinition) -> Result<Report, CliError> {
    let md = def.miranda()?;
    let mut r = Report::new(input_json(def));
    let (t1, t2) = md.twists();
    r.line(format!("Miranda data for E = O({t1}) + O({t2}) over {}", format_field(def.field)));
    let efg = md.derived_efg();
    let branch = md.discriminant();
    r.line(format!("  e = {}", efg.e));
    r.line(format!("  f = {}", efg.f));
    r.line(format!("  g = {}", efg.g));
    r.line(format!("  discriminant f^2 - 4eg = {}", branch.discriminant));
    match branch.degree {
        Some(d) => r.line(format!("  branch degree {d} (expected {})", branch.expected_degree)),
        None => r.line("  discriminant vanishes identically"),
    }
    if branch.degenerate {
        r.warnings
            .push("discriminant vanishes identically; the cover is not generically etale".into());
    }
    let galois = md.is_galois();
    let associative = md.multiplication_table().is_associative();
    let cubic = md.cubic_section_twist();
    r.line(format!("  Galois: {galois}"));
    r.line(format!("  multiplication table associative: {associative}"));
    match cubic {
        Some(m) => r.line(format!("  cubic section of the total space of O({m})")),
        None => r.line("  not a cubic section type"),
    }
    r.ramification = Some(json!({
        "e": efg.e.to_string(),
        "f": efg.f.to_string(),
        "g": efg.g.to_string(),
        "discriminant": branch.discriminant.to_string(),
        "branch_degree": branch.degree,
        "expected_degree": branch.expected_degree,
        "degenerate": branch.degenerate,
    }));
    r.verification = Some(json!({
        "galois": galois,
        "associative": associative,
        "cubic_section_twist": cubic,
    }));
    if let Ok(entry) = classify_branch_degree(branch.expected_degree) {
        r.classification = Some(classification_json(&entry));
    }
    Ok(r)
}

fn chart_json(data: &ChartMirandaData, check: &IdentityCheck, locus: &ChartLocus) -> Value {
    let sections: serde_json::Map<String, Value> = data
        .sections()
        .iter()
        .map(|(n, s)| (n.to_string(), json!(s.to_string())))
        .collect();
    json!({
        "sections": sections,
        "identity_holds": check.holds,
        "square_factor": check.w.as_ref().map(|w| w.to_string()),
        "witness": check.witness.to_string(),
        "excluded": locus.excluded.to_string(),
        "discriminant_locus": locus.discriminant_locus.to_string(),
        "branch_locus": locus.branch_locus.to_string(),
        "compatible": locus.compatible,
    })
}

fn chart_text(r: &mut Report, data: &ChartMirandaData, check: &IdentityCheck, locus: &ChartLocus) {
    r.line(format!("chart {}:", data.chart));
    for (n, s) in data.sections() {
        r.line(format!("  {n} = {s}"));
    }
    match (&check.w, check.holds) {
        (Some(w), true) => r.line(format!("  4s^3 + 27t^2 = 27 D W^2 with W = {w}")),
        (_, _) if check.holds => r.line("  4s^3 + 27t^2 = 27 D W^2 holds"),
        _ => r.line(format!("  4s^3 + 27t^2 = 27 D W^2 FAILS; witness {}", check.witness)),
    }
    r.line(format!(
        "  away from {{{} = 0}}: discriminant locus {{{} = 0}}, branch locus {{{} = 0}}, compatible: {}",
        locus.excluded, locus.discriminant_locus, locus.branch_locus, locus.compatible
    ));
}

fn transform(def: &CoverDefinition) -> Result<Report, CliError> {
    let (s, t, m) = def.tan()?;
    let mut r = Report::new(input_json(def));
    let td = tan_decomposition(&MinimalCubic::new(s, t, m)?)?;
    let compat = chart_compatibility(&td)?;
    let u1 = to_miranda_u1(&td)?;
    let c1 = verify_u1_discriminant_identity(&td)?;
    chart_text(&mut r, &u1, &c1, &compat.u1);
    let mut charts = serde_json::Map::new();
    charts.insert("U1".into(), chart_json(&u1, &c1, &compat.u1));
    match (to_miranda_u2(&td), verify_u2_discriminant_identity(&td)) {
        (Ok(u2), Ok(c2)) => {
            chart_text(&mut r, &u2, &c2, &compat.u2);
            if !c2.holds {
                r.warnings
                    .push("U2: (4s^3 + 27t^2) / (27 D) is not a square; see the witness".into());
            }
            charts.insert("U2".into(), chart_json(&u2, &c2, &compat.u2));
        }
        (Err(e), _) | (_, Err(e)) => r.warnings.push(format!("U2 skipped: {e}")),
    }
    if !c1.holds {
        r.warnings.push("U1 discriminant identity fails".into());
    }
    r.verification = Some(json!({"charts": charts}));
    Ok(r)
}

fn classify(degree: i64) -> Result<Report, CliError> {
    let entry = classify_branch_degree(degree)?;
    let mut r = Report::new(json!({"degree": degree}));
    classification_text(&entry, &mut r);
    r.classification = Some(classification_json(&entry));
    if entry.table_agrees == Some(false) {
        r.warnings.push("enumeration disagrees with the known table".into());
    }
    Ok(r)
}

/// `split:t1,t2`, `omega:t`, `presentation:<file>`, `example:jumping` or `example:split`.
pub fn parse_bundle(spec: &str, field: Field) -> Result<BundleClass, CliError> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("bad bundle '{spec}'")))?;
    let ints = |s: &str| -> Result<Vec<i64>, CliError> {
        s.split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Usage(format!("bad twists in bundle '{spec}'")))
    };
    match kind {
        "split" => match ints(rest)?.as_slice() {
            [a, b] => Ok(BundleClass::Split(*a, *b)),
            _ => Err(CliError::Usage("split takes two twists".into())),
        },
        "omega" => match ints(rest)?.as_slice() {
            [t] => Ok(BundleClass::CotangentTwist(*t)),
            _ => Err(CliError::Usage("omega takes one twist".into())),
        },
        "presentation" => Ok(BundleClass::Presented(parse_presentation(&read(Path::new(rest))?, field)?)),
        "euler" => match ints(rest)?.as_slice() {
            [t] => Ok(BundleClass::Presented(euler_cotangent_presentation(*t))),
            _ => Err(CliError::Usage("euler takes one twist".into())),
        },
        "example" => match rest {
            "jumping" => Ok(BundleClass::Presented(jumping_example())),
            "split" => Ok(BundleClass::Presented(split_example())),
            _ => Err(CliError::Usage(format!("unknown example '{rest}'"))),
        },
        _ => Err(CliError::Usage(format!("unknown bundle kind '{kind}'"))),
    }
}

fn splitting(bundle: &str, line: &str, field: Field) -> Result<Report, CliError> {
    let b = parse_bundle(bundle, field)?;
    let l: LineP2 = parse_line(line, field)?;
    let st = splitting_on_line(&b, &l)?;
    let mut r = Report::new(json!({"bundle": bundle, "line": l.to_string()}));
    r.line(format!("{b} on {{{l}}}: O({}) + O({})", st.a1, st.a2));
    r.line(format!("  a1 + a2 = {}, c1 = {}", st.c1(), b.c1()));
    if st.c1() != b.c1() {
        r.warnings.push(format!("a1 + a2 = {} but c1 = {}", st.c1(), b.c1()));
    }
    r.splitting = Some(json!({
        "bundle": b.to_string(),
        "line": l.to_string(),
        "type": [st.a1, st.a2],
        "c1": b.c1(),
        "sum_matches_c1": st.c1() == b.c1(),
    }));
    Ok(r)
}

fn scan_jumps(bundle: &str, samples: usize, seed: u64, field: Field) -> Result<Report, CliError> {
    let b = parse_bundle(bundle, field)?;
    let rep = jump_line_scan(&b, samples, seed)?;
    let mut r = Report::new(json!({"bundle": bundle, "samples": samples, "seed": seed}));
    let g = rep.generic_type;
    r.line(format!("{b}: generic type O({}) + O({}) over {} sampled lines (seed {seed})", g.a1, g.a2, rep.samples));
    if rep.deviations.is_empty() {
        r.line("  no jumping line among the samples");
    }
    for (l, t) in &rep.deviations {
        r.line(format!("  jumping line {{{l}}}: O({}) + O({})", t.a1, t.a2));
    }
    if !rep.skipped.is_empty() {
        r.warnings.push(format!("{} sampled line(s) skipped: presentation degenerates there", rep.skipped.len()));
    }
    r.splitting = Some(json!({
        "bundle": b.to_string(),
        "generic_type": [g.a1, g.a2],
        "c1": b.c1(),
        "samples": rep.samples,
        "jumping_lines": rep.deviations.iter().map(|(l, t)| json!({"line": l.to_string(), "type": [t.a1, t.a2]})).collect::<Vec<_>>(),
        "skipped": rep.skipped.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
    }));
    Ok(r)
}
