//! Line-oriented definition files for covers and bundle presentations.
//!
//! Each non-blank line is `key=value`; `#` starts a comment. Keys may appear once.
//!
//! Tan covers: `mode=tan`, `field=`, `m=`, `s=`, `t=` and optionally `irreducible=true|false`.
//! `s` and `t` are factored forms such as `-2*(x - y)^2*(z)^1`.
//!
//! Miranda covers: `mode=miranda`, `field=`, `t1=`, `t2=`, `a=`, `b=`, `c=`, `d=`, each section an
//! expression. A zero section takes the degree fixed by the twists.
//!
//! Presentations: `kind=kernel|cokernel`, `rows=` and `cols=` (comma-separated twists), then one
//! `row=` line per matrix row with comma-separated entries.

use std::collections::BTreeMap;

use tricover::algebra::Poly;
use tricover::bundle::{Presentation, PresentationKind};
use tricover::miranda::{section_degrees, MirandaData};
use tricover::{FactoredForm, Field, Form, Scalar};

use crate::parse::{parse_expression, parse_factored, split_top_level, ParseError};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverData {
    Miranda {
        t1: i64,
        t2: i64,
        a: Form,
        b: Form,
        c: Form,
        d: Form,
    },
    Tan {
        m: u32,
        s: FactoredForm,
        t: FactoredForm,
        irreducible: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDefinition {
    pub field: Field,
    pub data: CoverData,
}

/// `q`/`Q` or `p:<prime>`.
pub fn parse_field(text: &str) -> Result<Field, CliError> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix("p:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| CliError::Usage(format!("bad field '{t}': expected q or p:<prime>")))?;
    Field::prime(p).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn format_field(field: Field) -> String {
    match field {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("p:{p}"),
    }
}

fn form_into_field(f: &Form, field: Field) -> Option<Form> {
    if field == Field::Rational {
        return Some(f.clone());
    }
    let degree = f.degree();
    let poly = Poly::from_terms(
        f.terms()
            .map(|(e, c)| c.clone().try_into_field(field).map(|c| (tricover::algebra::Monomial(e), c)))
            .collect::<Option<Vec<_>>>()?,
    );
    if poly.is_zero() {
        return Some(Form::zero(degree));
    }
    Form::from_poly(poly).ok()
}

fn factored_into_field(f: &FactoredForm, field: Field) -> Option<FactoredForm> {
    if f.is_zero() {
        return Some(FactoredForm::zero());
    }
    let unit = f.unit().clone().try_into_field(field)?;
    let factors = f
        .factors()
        .iter()
        .map(|(b, m)| form_into_field(b, field).map(|b| (b, *m)))
        .collect::<Option<Vec<_>>>()?;
    FactoredForm::new(unit, factors, f.irreducible_asserted()).ok()
}

struct Entries {
    map: BTreeMap<String, (usize, String)>,
    rows: Vec<(usize, String)>,
}

impl Entries {
    fn read(text: &str, repeated: Option<&str>) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| CliError::Definition {
                line: line_no,
                message: "expected key=value".into(),
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if Some(key.as_str()) == repeated {
                rows.push((line_no, value));
            } else if map.insert(key.clone(), (line_no, value)).is_some() {
                return Err(CliError::Definition {
                    line: line_no,
                    message: format!("duplicate key '{key}'"),
                });
            }
        }
        Ok(Entries { map, rows })
    }

    fn take(&mut self, key: &str) -> Result<(usize, String), CliError> {
        self.map.remove(key).ok_or_else(|| CliError::Definition {
            line: 0,
            message: format!("missing key '{key}'"),
        })
    }

    fn take_opt(&mut self, key: &str) -> Option<(usize, String)> {
        self.map.remove(key)
    }

    fn finish(self) -> Result<(), CliError> {
        match self.map.into_iter().next() {
            None => Ok(()),
            Some((key, (line, _))) => Err(CliError::Definition {
                line,
                message: format!("unknown key '{key}'"),
            }),
        }
    }
}

fn at_line(line: usize) -> impl Fn(ParseError) -> CliError {
    move |e| CliError::Definition {
        line,
        message: e.to_string(),
    }
}

fn parse_int<T: std::str::FromStr>((line, v): (usize, String), what: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::Definition {
        line,
        message: format!("{what} must be an integer, found '{v}'"),
    })
}

fn not_in_field(line: usize, field: Field) -> CliError {
    CliError::Definition {
        line,
        message: format!("coefficient is undefined over {}", format_field(field)),
    }
}

impl CoverDefinition {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut e = Entries::read(text, None)?;
        let field = match e.take_opt("field") {
            Some((line, v)) => parse_field(&v).map_err(|err| CliError::Definition {
                line,
                message: err.to_string(),
            })?,
            None => Field::Rational,
        };
        let (mode_line, mode) = e.take("mode")?;
        let data = match mode.as_str() {
            "tan" => {
                let m = parse_int(e.take("m")?, "m")?;
                let irreducible = match e.take_opt("irreducible") {
                    None => true,
                    Some((_, v)) if v == "true" => true,
                    Some((_, v)) if v == "false" => false,
                    Some((line, v)) => {
                        return Err(CliError::Definition {
                            line,
                            message: format!("irreducible must be true or false, found '{v}'"),
                        })
                    }
                };
                let mut factored = |key: &str| -> Result<FactoredForm, CliError> {
                    let (line, v) = e.take(key)?;
                    let f = parse_factored(&v, irreducible).map_err(at_line(line))?;
                    factored_into_field(&f, field).ok_or_else(|| not_in_field(line, field))
                };
                let s = factored("s")?;
                let t = factored("t")?;
                CoverData::Tan { m, s, t, irreducible }
            }
            "miranda" => {
                let t1: i64 = parse_int(e.take("t1")?, "t1")?;
                let t2: i64 = parse_int(e.take("t2")?, "t2")?;
                let degrees = section_degrees(t1, t2);
                let mut section = |key: &str, i: usize| -> Result<Form, CliError> {
                    let (line, v) = e.take(key)?;
                    let f = parse_expression(&v).map_err(at_line(line))?;
                    let f = form_into_field(&f, field).ok_or_else(|| not_in_field(line, field))?;
                    Ok(if f.is_zero() {
                        Form::zero(degrees[i].max(0) as u32)
                    } else {
                        f
                    })
                };
                CoverData::Miranda {
                    t1,
                    t2,
                    a: section("a", 0)?,
                    b: section("b", 1)?,
                    c: section("c", 2)?,
                    d: section("d", 3)?,
                }
            }
            other => {
                return Err(CliError::Definition {
                    line: mode_line,
                    message: format!("mode must be tan or miranda, found '{other}'"),
                })
            }
        };
        e.finish()?;
        Ok(CoverDefinition { field, data })
    }

    pub fn format(&self) -> String {
        let mut out = format!("field={}\n", format_field(self.field));
        match &self.data {
            CoverData::Tan { m, s, t, irreducible } => {
                out.insert_str(0, "mode=tan\n");
                out += &format!("m={m}\ns={s}\nt={t}\nirreducible={irreducible}\n");
            }
            CoverData::Miranda { t1, t2, a, b, c, d } => {
                out.insert_str(0, "mode=miranda\n");
                out += &format!("t1={t1}\nt2={t2}\na={a}\nb={b}\nc={c}\nd={d}\n");
            }
        }
        out
    }

    /// The same definition over another field.
    pub fn over(&self, field: Field) -> Result<Self, CliError> {
        if field == self.field {
            return Ok(self.clone());
        }
        if self.field != Field::Rational {
            return Err(CliError::Usage(format!(
                "definition is over {}; it cannot be moved to {}",
                format_field(self.field),
                format_field(field)
            )));
        }
        let bad = || CliError::Usage(format!("a coefficient is undefined over {}", format_field(field)));
        let data = match &self.data {
            CoverData::Tan { m, s, t, irreducible } => CoverData::Tan {
                m: *m,
                s: factored_into_field(s, field).ok_or_else(bad)?,
                t: factored_into_field(t, field).ok_or_else(bad)?,
                irreducible: *irreducible,
            },
            CoverData::Miranda { t1, t2, a, b, c, d } => {
                let conv = |f: &Form| form_into_field(f, field).ok_or_else(bad);
                CoverData::Miranda {
                    t1: *t1,
                    t2: *t2,
                    a: conv(a)?,
                    b: conv(b)?,
                    c: conv(c)?,
                    d: conv(d)?,
                }
            }
        };
        Ok(CoverDefinition { field, data })
    }

    pub fn miranda(&self) -> Result<MirandaData, CliError> {
        match &self.data {
            CoverData::Miranda { t1, t2, a, b, c, d } => {
                Ok(MirandaData::new(*t1, *t2, a.clone(), b.clone(), c.clone(), d.clone())?)
            }
            CoverData::Tan { .. } => Err(CliError::Usage("expected a definition with mode=miranda".into())),
        }
    }

    pub fn tan(&self) -> Result<(FactoredForm, FactoredForm, u32), CliError> {
        match &self.data {
            CoverData::Tan { m, s, t, .. } => Ok((s.clone(), t.clone(), *m)),
            CoverData::Miranda { .. } => Err(CliError::Usage("expected a definition with mode=tan".into())),
        }
    }
}

fn parse_twists((line, v): (usize, String)) -> Result<Vec<i64>, CliError> {
    v.split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Definition {
            line,
            message: format!("expected comma-separated integers, found '{v}'"),
        })
}

pub fn parse_presentation(text: &str, field: Field) -> Result<Presentation, CliError> {
    let mut e = Entries::read(text, Some("row"))?;
    let (kind_line, kind) = e.take("kind")?;
    let kind = match kind.as_str() {
        "kernel" => PresentationKind::Kernel,
        "cokernel" => PresentationKind::Cokernel,
        other => {
            return Err(CliError::Definition {
                line: kind_line,
                message: format!("kind must be kernel or cokernel, found '{other}'"),
            })
        }
    };
    let rows = parse_twists(e.take("rows")?)?;
    let cols = parse_twists(e.take("cols")?)?;
    let mut matrix = Vec::new();
    for (line, text) in std::mem::take(&mut e.rows) {
        let mut row = Vec::new();
        for (offset, entry) in split_top_level(&text, ',') {
            let f = parse_expression(entry).map_err(|err| CliError::Definition {
                line,
                message: format!("entry at column {offset}: {err}"),
            })?;
            row.push(form_into_field(&f, field).ok_or_else(|| not_in_field(line, field))?);
        }
        matrix.push(row);
    }
    e.finish()?;
    Ok(Presentation::new(kind, matrix, rows, cols)?)
}

/// A line given either as a linear form such as `x - z` or as coefficients `1,0,-1`.
pub fn parse_line(text: &str, field: Field) -> Result<tricover::LineP2, CliError> {
    let coefficients: [Scalar; 3] = if text.contains(['x', 'y', 'z']) {
        let f = parse_expression(text)?;
        if f.degree() != 1 {
            return Err(CliError::Usage(format!("line '{text}' is not linear")));
        }
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|e| f.coefficient(e))
    } else {
        let parts: Vec<(usize, &str)> = split_top_level(text, ',');
        if parts.len() != 3 {
            return Err(CliError::Usage(format!("line '{text}' needs three coefficients")));
        }
        let mut out = Vec::with_capacity(3);
        for (_, p) in parts {
            let f = parse_expression(p)?;
            if !f.is_constant() {
                return Err(CliError::Usage(format!("coefficient '{p}' is not a number")));
            }
            out.push(f.coefficient([0, 0, 0]));
        }
        [out[0].clone(), out[1].clone(), out[2].clone()]
    };
    let coefficients = coefficients
        .map(|c| c.try_into_field(field))
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CliError::Usage(format!("line '{text}' is undefined over {}", format_field(field))))?;
    let [a, b, c]: [Scalar; 3] = coefficients.try_into().expect("three coefficients");
    Ok(tricover::LineP2::new([a, b, c])?)
}
