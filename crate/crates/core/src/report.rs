//! Rendering of profiles, screens, classifications and table reproductions.
//!
//! JSON output always uses [`Record`], whose keys are stable: `name`, `d`,
//! `tvector`, `mu`, `disc`, `disc_sign`, `roots`, `mdr`, `verdict`,
//! `exponents`, `notes`. Table rows add `expected_mu`, `expected_disc`,
//! `printed_roots` and `status`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arrangement::CombinatorialProfile;
use crate::catalogue::PrintedRoots;
use crate::classify::{quadratic, screen, Classification, DiscSign, RootClass, TableReport, TableRow, Verdict};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
    Csv,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "human" => Ok(OutputFormat::Human),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "markdown" => Ok(OutputFormat::Markdown),
            _ => Err(format!("unknown format {s:?}; expected human, json, csv or markdown")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Human => "human",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Markdown => "markdown",
        })
    }
}

impl From<RootClass> for PrintedRoots {
    fn from(r: RootClass) -> Self {
        match r {
            RootClass::RealIrrational => PrintedRoots::Real,
            RootClass::Complex => PrintedRoots::Complex,
            other => PrintedRoots::Integers(other.integers()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub name: String,
    pub d: usize,
    pub tvector: Vec<usize>,
    pub mu: u64,
    pub disc: i64,
    pub disc_sign: DiscSign,
    pub roots: PrintedRoots,
    pub mdr: Option<usize>,
    pub verdict: Option<&'static str>,
    pub exponents: Option<(usize, usize)>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_mu: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_disc: Option<DiscSign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_roots: Option<PrintedRoots>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(skip)]
    simplicial: Option<bool>,
}

impl Record {
    fn base(name: &str, profile: &CombinatorialProfile) -> Self {
        let q = quadratic(profile.d as u64, profile.mu);
        Record {
            name: name.to_owned(),
            d: profile.d,
            tvector: profile.t.positional(),
            mu: profile.mu,
            disc: q.disc,
            disc_sign: q.disc_sign(),
            roots: q.roots.into(),
            mdr: None,
            verdict: None,
            exponents: None,
            notes: Vec::new(),
            expected_mu: None,
            expected_disc: None,
            printed_roots: None,
            status: None,
            simplicial: Some(profile.simplicial),
        }
    }

    pub fn profile(name: &str, profile: &CombinatorialProfile) -> Self {
        Self::base(name, profile)
    }

    pub fn screened(name: &str, profile: &CombinatorialProfile) -> Self {
        let mut r = Self::base(name, profile);
        r.verdict = Some(Verdict::ScreenOnly { passes: screen(profile) }.key());
        r
    }

    pub fn classified(c: &Classification) -> Self {
        let profile = CombinatorialProfile::from_tvector(c.d, c.t.clone());
        let mut r = Self::base(c.name.as_deref().unwrap_or("arrangement"), &profile);
        r.mdr = Some(c.mdr);
        r.verdict = Some(c.verdict.key());
        r.exponents = c.verdict.exponents();
        r.notes = c.notes.clone();
        r
    }

    pub fn table_row(row: &TableRow) -> Self {
        let profile = CombinatorialProfile::from_tvector(row.d, row.t.clone());
        let mut r = Self::base(&row.name, &profile);
        r.expected_mu = row.expected_mu;
        r.expected_disc = row.expected_disc;
        r.printed_roots = row.printed_roots.clone();
        r.status = Some(row_status(row));
        r.simplicial = None;
        r
    }

    fn tvector_text(&self) -> String {
        let ts: Vec<String> = self.tvector.iter().map(usize::to_string).collect();
        format!("({})", ts.join(","))
    }
}

fn row_status(row: &TableRow) -> String {
    if row.matches() {
        return "ok".into();
    }
    let mut parts = Vec::new();
    if !row.mu_ok {
        parts.push(format!("mu printed {}", row.expected_mu.unwrap_or_default()));
    }
    if !row.disc_ok {
        parts.push(format!("disc printed {}", row.expected_disc.map(|s| s.to_string()).unwrap_or_default()));
    }
    if !row.roots_ok {
        let printed = row.printed_roots.as_ref().map(|r| r.to_string()).unwrap_or_default();
        if row.printed_roots_fail.is_empty() {
            parts.push(format!("roots printed {printed}"));
        } else {
            parts.push(format!("printed roots {printed} do not solve the quadratic"));
        }
    }
    let kind = if row.known_discrepancy { "flagged" } else { "MISMATCH" };
    format!("{kind}: {}", parts.join("; "))
}

fn roots_text(r: &PrintedRoots) -> String {
    match r {
        PrintedRoots::Integers(v) if v.len() == 1 => format!("r0={}", v[0]),
        PrintedRoots::Integers(v) => v.iter().enumerate().map(|(i, x)| format!("r{}={x}", i + 1)).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn disc_text(s: DiscSign) -> &'static str {
    match s {
        DiscSign::Pos => ">0",
        DiscSign::Neg => "<0",
        DiscSign::Zero => "0",
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn markdown(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    out
}

fn tabular(format: OutputFormat, header: &[&str], rows: &[Vec<String>]) -> String {
    match format {
        OutputFormat::Csv => csv_text(header, rows),
        _ => markdown(header, rows),
    }
}

const PROFILE_HEADER: [&str; 6] = ["name", "d", "tvector", "mu", "simplicial", "disc"];

pub fn render_profiles(records: &[Record], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(records),
        OutputFormat::Human => records
            .iter()
            .map(|r| {
                let simplicial = if r.simplicial.unwrap_or(false) { "yes" } else { "no" };
                format!("{}: d={} t={} mu={} simplicial={}\n", r.name, r.d, r.tvector_text(), r.mu, simplicial)
            })
            .collect(),
        _ => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    let simplicial = if r.simplicial.unwrap_or(false) { "yes" } else { "no" };
                    vec![r.name.clone(), r.d.to_string(), r.tvector_text(), r.mu.to_string(), simplicial.into(), r.disc.to_string()]
                })
                .collect();
            tabular(format, &PROFILE_HEADER, &rows)
        }
    }
}

const SCREEN_HEADER: [&str; 7] = ["name", "d", "tvector", "mu", "disc", "roots", "verdict"];

pub fn render_screen(records: &[Record], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(records),
        OutputFormat::Human => records
            .iter()
            .map(|r| {
                let pass = if r.verdict == Some("screen_pass") { "PASS" } else { "fail" };
                format!("{:<10} d={:<3} mu={:<4} disc={:<5} roots {:<14} {pass}\n", r.name, r.d, r.mu, r.disc, roots_text(&r.roots))
            })
            .collect(),
        _ => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        r.d.to_string(),
                        r.tvector_text(),
                        r.mu.to_string(),
                        r.disc.to_string(),
                        roots_text(&r.roots),
                        r.verdict.unwrap_or_default().to_owned(),
                    ]
                })
                .collect();
            tabular(format, &SCREEN_HEADER, &rows)
        }
    }
}

const CLASSIFY_HEADER: [&str; 8] = ["name", "d", "tvector", "mu", "mdr", "generator_degrees", "verdict", "exponents"];

pub fn render_classification(c: &Classification, format: OutputFormat) -> String {
    let record = Record::classified(c);
    let exps = c.verdict.exponents().map(|(a, b)| format!("({a},{b})")).unwrap_or_default();
    match format {
        OutputFormat::Json => json(&record),
        OutputFormat::Human => {
            let mut out = format!("{}: d={} t={} mu={}\n", record.name, c.d, record.tvector_text(), c.mu);
            out.push_str(&format!("mdr={} tau={} generator degrees {:?} ({})\n", c.mdr, c.tau, c.generator_degrees, c.shape));
            out.push_str(&format!("quadratic at mdr: {}; tau identity: {}; backend: {}\n", c.nearly_free_check, c.free_check, c.backend));
            for n in &c.notes {
                out.push_str(&format!("note: {n}\n"));
            }
            out.push_str(&format!("{}\n", c.verdict));
            out
        }
        _ => {
            let row = vec![
                record.name.clone(),
                c.d.to_string(),
                record.tvector_text(),
                c.mu.to_string(),
                c.mdr.to_string(),
                format!("{:?}", c.generator_degrees),
                c.verdict.key().to_owned(),
                exps,
            ];
            tabular(format, &CLASSIFY_HEADER, &[row])
        }
    }
}

const TABLE_HEADER: [&str; 6] = ["A(n,k)", "(t2,t3,...)", "mu", "disc", "roots", "status"];

pub fn render_table(report: &TableReport, format: OutputFormat) -> String {
    let records: Vec<Record> = report.rows.iter().map(Record::table_row).collect();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                r.tvector_text(),
                r.mu.to_string(),
                disc_text(r.disc_sign).to_owned(),
                roots_text(&r.roots),
                r.status.clone().unwrap_or_default(),
            ]
        })
        .collect();
    match format {
        OutputFormat::Json => json(&records),
        OutputFormat::Human => {
            let mut out = String::new();
            for r in &rows {
                out.push_str(&format!("{:<9} {:<24} {:>4} {:>3}  {:<14} {}\n", r[0], r[1], r[2], r[3], r[4], r[5]));
            }
            let flagged = report.mismatches().filter(|r| r.known_discrepancy).count();
            let unexpected = report.unexpected_mismatches().count();
            out.push_str(&format!("{} rows, {} flagged, {} unexpected mismatches\n", report.rows.len(), flagged, unexpected));
            out
        }
        _ => tabular(format, &TABLE_HEADER, &rows),
    }
}
