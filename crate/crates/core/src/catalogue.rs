//! Line-oriented text format for arrangements.
//!
//! ```text
//! # comment
//! arrangement <name>
//! field Q | Qsqrt <n>                  (optional, default Q)
//! lines <d>
//! tvector <t2> <t3> ...
//! expected mu <int>                    (optional)
//! expected disc pos|neg|zero           (optional)
//! expected roots <r1> [r2] | real | complex   (optional)
//! line <c1> <c2> <c3>                  (optional, d times)
//! end
//! ```
//!
//! Coefficients are rationals `p` or `p/q`, or over `Q(sqrt n)` literals such
//! as `1/2-3*sqrt(3)`, `sqrt(3)` or `-2*sqrt(3)`. Names are either `A(n,k)`,
//! where `n` must equal the number of lines, or any other token without
//! whitespace. When both a t-vector and lines are given they must agree.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{t_vector, Arrangement, ProjectiveLine, TVector};
use crate::classify::DiscSign;
use crate::field::{FieldSpec, NumberField, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogueError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("entry {entry}: {message}")]
    Consistency { entry: String, message: String },
    #[error("no entry named {0}")]
    NotFound(String),
}

/// Roots as printed in a table: integers, or only their nature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PrintedRoots {
    Integers(Vec<i64>),
    #[serde(serialize_with = "ser_real")]
    Real,
    #[serde(serialize_with = "ser_complex")]
    Complex,
}

fn ser_real<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("real")
}

fn ser_complex<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("complex")
}

impl std::fmt::Display for PrintedRoots {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PrintedRoots::Integers(v) => {
                let s: Vec<String> = v.iter().map(i64::to_string).collect();
                f.write_str(&s.join(" "))
            }
            PrintedRoots::Real => f.write_str("real"),
            PrintedRoots::Complex => f.write_str("complex"),
        }
    }
}

/// Values recorded alongside an entry, typically transcribed from a table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub mu: Option<u64>,
    pub disc: Option<DiscSign>,
    pub roots: Option<PrintedRoots>,
}

impl Expected {
    pub fn is_empty(&self) -> bool {
        self.mu.is_none() && self.disc.is_none() && self.roots.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub name: String,
    pub d: usize,
    pub t: TVector,
    pub realization: Option<Arrangement>,
    pub expected: Expected,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CatalogueFile {
    pub entries: Vec<CatalogueEntry>,
}

impl CatalogueFile {
    pub fn get(&self, name: &str) -> Option<&CatalogueEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn lookup(&self, name: &str) -> Result<&CatalogueEntry, CatalogueError> {
        self.get(name).ok_or_else(|| CatalogueError::NotFound(name.to_owned()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Parses `A(n,k)` into `(n, k)`.
pub fn parse_canonical_name(name: &str) -> Option<(usize, usize)> {
    let inner = name.strip_prefix("A(")?.strip_suffix(')')?;
    let (n, k) = inner.split_once(',')?;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(n) || !digits(k) {
        return None;
    }
    Some((n.parse().ok()?, k.parse().ok()?))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if s.is_empty() {
        return None;
    }
    if let Some((_, den)) = s.split_once('/') {
        if den.trim_start_matches(['+', '-']).bytes().all(|b| b == b'0') {
            return None;
        }
    }
    BigRational::from_str(s).ok()
}

/// Parses a coefficient literal. Irrational parts must use the field's own
/// radicand.
pub fn parse_scalar(s: &str, spec: FieldSpec) -> Result<Scalar, String> {
    let Some(pos) = s.find("sqrt(") else {
        return parse_rational(s).map(Scalar::rational).ok_or_else(|| format!("bad coefficient {s:?}"));
    };
    let bad = || format!("bad coefficient {s:?}");
    let radicand: u64 = s[pos + 5..].strip_suffix(')').and_then(|n| n.parse().ok()).ok_or_else(bad)?;
    if spec.radicand() != Some(radicand) {
        return Err(format!("coefficient {s:?} does not lie in {spec}"));
    }
    let head = &s[..pos];
    let head = match head.strip_suffix('*') {
        Some(h) if !h.is_empty() && !h.ends_with(['+', '-']) => h,
        Some(_) => return Err(bad()),
        None => head,
    };
    // split "a+b" / "a-b" at the last sign that is not leading
    let split = head.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').last().map(|(i, _)| i);
    let (a, b) = match split {
        Some(i) => (parse_rational(&head[..i]).ok_or_else(bad)?, &head[i..]),
        None => (BigRational::zero(), head),
    };
    let b = match b {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        b => parse_rational(b).ok_or_else(bad)?,
    };
    if b.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(a, b))
}

#[derive(Default)]
struct Draft {
    start: usize,
    name: String,
    field: Option<FieldSpec>,
    lines: Option<usize>,
    t: Option<TVector>,
    expected: Expected,
    coeffs: Vec<(usize, [String; 3])>,
}

fn syntax(line: usize, message: impl Into<String>) -> CatalogueError {
    CatalogueError::Syntax { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<CatalogueFile, CatalogueError> {
    let mut entries = Vec::new();
    let mut names = HashSet::new();
    let mut draft: Option<Draft> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let (&key, args) = words.split_first().expect("nonempty line");
        if key == "arrangement" {
            if draft.is_some() {
                return Err(syntax(ln, "missing 'end' before new arrangement"));
            }
            let [name] = args else { return Err(syntax(ln, "expected 'arrangement <name>'")) };
            if name.starts_with("A(") && parse_canonical_name(name).is_none() {
                return Err(syntax(ln, format!("malformed name {name:?}; expected A(n,k)")));
            }
            draft = Some(Draft { start: ln, name: (*name).to_owned(), ..Draft::default() });
            continue;
        }
        let Some(d) = draft.as_mut() else {
            return Err(syntax(ln, format!("'{key}' outside an arrangement block")));
        };
        match (key, args) {
            ("end", []) => {
                let entry = finish(draft.take().expect("inside a block"))?;
                if !names.insert(entry.name.clone()) {
                    return Err(CatalogueError::Consistency { entry: entry.name, message: "duplicate name".into() });
                }
                entries.push(entry);
            }
            ("field", ["Q"]) if d.field.is_none() => d.field = Some(FieldSpec::Rationals),
            ("field", ["Qsqrt", n]) if d.field.is_none() => {
                let n: u64 = n.parse().map_err(|_| syntax(ln, format!("bad radicand {n:?}")))?;
                let spec = FieldSpec::quadratic(n)
                    .map_err(|e| CatalogueError::Consistency { entry: d.name.clone(), message: e.to_string() })?;
                d.field = Some(spec);
            }
            ("lines", [n]) if d.lines.is_none() => {
                d.lines = Some(n.parse().map_err(|_| syntax(ln, format!("bad line count {n:?}")))?);
            }
            ("tvector", ts) if d.t.is_none() && !ts.is_empty() => {
                let ts = ts.iter().map(|t| t.parse::<usize>()).collect::<Result<Vec<_>, _>>().map_err(|_| syntax(ln, "bad t-vector"))?;
                d.t = Some(TVector::from_positional(&ts));
            }
            ("expected", ["mu", m]) if d.expected.mu.is_none() => {
                d.expected.mu = Some(m.parse().map_err(|_| syntax(ln, format!("bad mu {m:?}")))?);
            }
            ("expected", ["disc", s]) if d.expected.disc.is_none() => {
                d.expected.disc = Some(DiscSign::parse(s).ok_or_else(|| syntax(ln, format!("bad discriminant sign {s:?}")))?);
            }
            ("expected", ["roots", rest @ ..]) if d.expected.roots.is_none() => {
                d.expected.roots = Some(match rest {
                    ["real"] => PrintedRoots::Real,
                    ["complex"] => PrintedRoots::Complex,
                    [_] | [_, _] => PrintedRoots::Integers(
                        rest.iter().map(|r| r.parse()).collect::<Result<_, _>>().map_err(|_| syntax(ln, "bad roots"))?,
                    ),
                    _ => return Err(syntax(ln, "expected one or two roots, 'real' or 'complex'")),
                });
            }
            ("line", [a, b, c]) => d.coeffs.push((ln, [a, b, c].map(|s| (*s).to_owned()))),
            _ => return Err(syntax(ln, format!("unexpected or repeated declaration '{content}'"))),
        }
    }
    if let Some(d) = draft {
        return Err(syntax(d.start, format!("arrangement {} is not terminated by 'end'", d.name)));
    }
    Ok(CatalogueFile { entries })
}

fn finish(d: Draft) -> Result<CatalogueEntry, CatalogueError> {
    let name = d.name;
    let inconsistent = |message: String| CatalogueError::Consistency { entry: name.clone(), message };
    let spec = d.field.unwrap_or(FieldSpec::Rationals);
    let field = NumberField::new(spec);
    let realization = if d.coeffs.is_empty() {
        None
    } else {
        let mut lines = Vec::with_capacity(d.coeffs.len());
        for (ln, cs) in &d.coeffs {
            let mut parsed = Vec::with_capacity(3);
            for c in cs {
                parsed.push(parse_scalar(c, spec).map_err(|m| syntax(*ln, m))?);
            }
            let coeffs: [Scalar; 3] = parsed.try_into().expect("three coefficients");
            lines.push(ProjectiveLine::new(&field, coeffs).map_err(|e| syntax(*ln, e.to_string()))?);
        }
        Some(Arrangement::new(spec, lines, Some(name.clone())).map_err(|e| inconsistent(e.to_string()))?)
    };
    let count = realization.as_ref().map(Arrangement::degree);
    let deg = match (d.lines, count) {
        (Some(a), Some(b)) if a != b => return Err(inconsistent(format!("declares {a} lines but lists {b}"))),
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => return Err(syntax(d.start, format!("arrangement {name} has neither 'lines' nor 'line' records"))),
    };
    if let Some((n, _)) = parse_canonical_name(&name) {
        if n != deg {
            return Err(inconsistent(format!("name says {n} lines but there are {deg}")));
        }
    }
    let computed = realization.as_ref().map(t_vector);
    let t = match (d.t, computed) {
        (Some(a), Some(b)) if a != b => return Err(inconsistent(format!("declares t-vector {a} but the lines give {b}"))),
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => return Err(syntax(d.start, format!("arrangement {name} has neither a t-vector nor lines"))),
    };
    if !t.is_consistent_with(deg) {
        return Err(inconsistent(format!("t-vector {t} does not count the C({deg},2) pairs of lines")));
    }
    Ok(CatalogueEntry { name, d: deg, t, realization, expected: d.expected })
}

/// Renders a file in the format accepted by [`parse`].
pub fn serialize(file: &CatalogueFile) -> String {
    let mut out = String::new();
    for (i, e) in file.entries.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "arrangement {}", e.name).unwrap();
        let spec = e.realization.as_ref().map_or(FieldSpec::Rationals, Arrangement::field);
        if let Some(n) = spec.radicand() {
            writeln!(out, "field Qsqrt {n}").unwrap();
        }
        writeln!(out, "lines {}", e.d).unwrap();
        let ts: Vec<String> = e.t.positional().iter().map(usize::to_string).collect();
        writeln!(out, "tvector {}", ts.join(" ")).unwrap();
        if let Some(mu) = e.expected.mu {
            writeln!(out, "expected mu {mu}").unwrap();
        }
        if let Some(s) = e.expected.disc {
            writeln!(out, "expected disc {s}").unwrap();
        }
        if let Some(r) = &e.expected.roots {
            writeln!(out, "expected roots {r}").unwrap();
        }
        if let Some(arr) = &e.realization {
            for l in arr.lines() {
                let cs: Vec<String> = l.coeffs().iter().map(|c| c.to_literal(spec)).collect();
                writeln!(out, "line {}", cs.join(" ")).unwrap();
            }
        }
        writeln!(out, "end").unwrap();
    }
    out
}

const TABLE: &str = include_str!("../data/table1.cat");
const REALIZATIONS: &str = include_str!("../data/realizations.cat");

/// The sporadic simplicial arrangements up to 27 lines, with t-vectors and
/// the tabulated `mu`, discriminant sign and roots as expected values.
pub fn embedded_table() -> CatalogueFile {
    parse(TABLE).expect("embedded table parses")
}

/// Small arrangements with exact coordinates used as fixtures.
pub fn embedded_realizations() -> CatalogueFile {
    parse(REALIZATIONS).expect("embedded realizations parse")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_entry() {
        let f = parse("arrangement A(7,1)\nlines 7\ntvector 3 6\nend\n").unwrap();
        let e = &f.entries[0];
        assert_eq!(e.d, 7);
        assert_eq!(e.t, TVector::from_counts([(2, 3), (3, 6)]));
        assert!(e.realization.is_none());
    }

    #[test]
    fn triangle_with_lines() {
        let f = parse("arrangement triangle\nlines 3\ntvector 3\nline 1 0 0\nline 0 1 0\nline 0 0 1\nend").unwrap();
        assert_eq!(f.entries[0].realization.as_ref().unwrap().degree(), 3);
    }

    #[test]
    fn realization_must_match_tvector() {
        let text = "arrangement np4\ntvector 6\nline 1 0 0\nline 0 1 0\nline 0 0 1\nline 1 1 0\nend";
        assert!(matches!(parse(text), Err(CatalogueError::Consistency { .. })));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        assert!(matches!(parse("arrangement A(19.5)\nend"), Err(CatalogueError::Syntax { line: 1, .. })));
        assert!(matches!(parse("arrangement x\nlines 3\nbogus\nend"), Err(CatalogueError::Syntax { line: 3, .. })));
        assert!(matches!(parse("lines 3"), Err(CatalogueError::Syntax { line: 1, .. })));
        assert!(matches!(parse("arrangement x\nlines 3\ntvector 3"), Err(CatalogueError::Syntax { line: 1, .. })));
        assert!(matches!(parse("arrangement x\nline 1 0 0\nline 0 1/0 0\nend"), Err(CatalogueError::Syntax { line: 3, .. })));
    }

    #[test]
    fn consistency_errors() {
        assert!(matches!(parse("arrangement A(8,1)\nlines 7\ntvector 3 6\nend"), Err(CatalogueError::Consistency { .. })));
        assert!(matches!(parse("arrangement x\nlines 7\ntvector 3 5\nend"), Err(CatalogueError::Consistency { .. })));
        let dup = "arrangement x\nlines 3\ntvector 3\nend\narrangement x\nlines 3\ntvector 3\nend";
        assert!(matches!(parse(dup), Err(CatalogueError::Consistency { .. })));
        assert!(matches!(parse("arrangement x\nfield Qsqrt 12\nlines 3\ntvector 3\nend"), Err(CatalogueError::Consistency { .. })));
    }

    #[test]
    fn scalar_literals() {
        let k = FieldSpec::quadratic(3).unwrap();
        let q = |s: &str| BigRational::from_str(s).unwrap();
        assert_eq!(parse_scalar("1/2-3*sqrt(3)", k).unwrap(), Scalar::new(q("1/2"), q("-3")));
        assert_eq!(parse_scalar("sqrt(3)", k).unwrap(), Scalar::new(q("0"), q("1")));
        assert_eq!(parse_scalar("-sqrt(3)", k).unwrap(), Scalar::new(q("0"), q("-1")));
        assert_eq!(parse_scalar("-2+sqrt(3)", k).unwrap(), Scalar::new(q("-2"), q("1")));
        assert_eq!(parse_scalar("-5/7*sqrt(3)", k).unwrap(), Scalar::new(q("0"), q("-5/7")));
        assert!(parse_scalar("sqrt(2)", k).is_err());
        assert!(parse_scalar("sqrt(3)", FieldSpec::Rationals).is_err());
        assert!(parse_scalar("1+*sqrt(3)", k).is_err());
        for x in [Scalar::new(q("-1/2"), q("4/9")), Scalar::new(q("0"), q("-1")), Scalar::from_int(-3)] {
            assert_eq!(parse_scalar(&x.to_literal(k), k).unwrap(), x);
        }
    }

    #[test]
    fn embedded_lookups() {
        let t = embedded_table();
        let e = t.lookup("A(17,6)").unwrap();
        assert_eq!(e.t.positional(), vec![16, 15, 10, 0, 1]);
        assert_eq!(e.expected.mu, Some(191));
        assert_eq!(e.expected.disc, Some(DiscSign::Zero));
        assert_eq!(e.expected.roots, Some(PrintedRoots::Integers(vec![8])));
        assert_eq!(t.lookup("A(25,8)").unwrap().t.positional(), vec![24, 52, 6, 0, 0, 0, 3]);
        assert_eq!(t.lookup("A(99,1)"), Err(CatalogueError::NotFound("A(99,1)".into())));
        assert!(t.entries.iter().all(|e| e.realization.is_none()));
    }

    #[test]
    fn round_trip() {
        for f in [embedded_table(), embedded_realizations()] {
            assert_eq!(parse(&serialize(&f)).unwrap(), f);
        }
    }
}
