use std::fmt::Write as _;

use powmon_core::automorphisms::MonoidMap;
use powmon_core::lemma_harness::{CheckResult, CheckStatus, VerificationReport};
use powmon_core::power_monoid::CayleyTable;
use powmon_core::{GroupAutMap, PowerMonoidContext, SubsetId};
use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

#[derive(Debug, Serialize)]
pub struct AutReport {
    pub group: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Vec<u64>>,
    pub order: usize,
    pub aut_g_order: usize,
    pub aut_p0g_order: usize,
    pub trivial_pullback_order: usize,
    pub exceptional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<Vec<MapEntry>>,
}

#[derive(Debug, Serialize)]
pub struct MapEntry {
    pub images: Vec<u32>,
    pub pullback: Vec<usize>,
    pub subsets: Vec<SubsetImage>,
}

#[derive(Debug, Serialize)]
pub struct SubsetImage {
    pub subset: Vec<usize>,
    pub image: Vec<usize>,
}

impl MapEntry {
    pub fn new(ctx: &PowerMonoidContext, f: &MonoidMap, g: GroupAutMap) -> Self {
        MapEntry {
            images: f.images().to_vec(),
            pullback: g.images().to_vec(),
            subsets: ctx
                .enumerate_carrier()
                .map(|x| SubsetImage {
                    subset: x.elements(),
                    image: f.apply(x).elements(),
                })
                .collect(),
        }
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

fn group_name(factors: &[usize]) -> String {
    if factors.is_empty() {
        return "C1".into();
    }
    factors
        .iter()
        .map(|n| format!("C{n}"))
        .collect::<Vec<_>>()
        .join("+")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(n: Option<usize>) -> String {
    n.map_or_else(|| "-".into(), |n| n.to_string())
}

fn status(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skipped => "skipped",
    }
}

pub fn aut(report: &AutReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(
            &[
                "group",
                "order",
                "aut_g_order",
                "aut_p0g_order",
                "trivial_pullback_order",
                "exceptional",
            ],
            [vec![
                group_name(&report.group),
                report.order.to_string(),
                report.aut_g_order.to_string(),
                report.aut_p0g_order.to_string(),
                report.trivial_pullback_order.to_string(),
                report.exceptional.to_string(),
            ]],
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "group             {}", group_name(&report.group)).unwrap();
            if let Some(input) = &report.input {
                writeln!(s, "input             {input:?}").unwrap();
            }
            writeln!(s, "order             {}", report.order).unwrap();
            writeln!(s, "|Aut(G)|          {}", report.aut_g_order).unwrap();
            writeln!(s, "|Aut(P0(G))|      {}", report.aut_p0g_order).unwrap();
            writeln!(s, "trivial pullback  {}", report.trivial_pullback_order).unwrap();
            writeln!(s, "exceptional       {}", yes_no(report.exceptional)).unwrap();
            for (i, m) in report.automorphisms.iter().flatten().enumerate() {
                writeln!(s, "\nautomorphism {i}  pullback {:?}", m.pullback).unwrap();
                for p in &m.subsets {
                    let moved = if p.subset == p.image { "" } else { "  *" };
                    writeln!(s, "  {:?} -> {:?}{moved}", p.subset, p.image).unwrap();
                }
            }
            s
        }
    }
}

fn check_lines(s: &mut String, checks: &[CheckResult], indent: &str) {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in checks {
        write!(s, "{indent}{:<7}  {:<width$}", status(c.status), c.name).unwrap();
        if let Some(note) = &c.note {
            write!(s, "  {note}").unwrap();
        }
        if let Some(w) = &c.witness {
            write!(s, "  witness {w}").unwrap();
        }
        s.push('\n');
    }
}

fn report_header(r: &VerificationReport) -> String {
    format!(
        "{}  |Aut(G)| = {}  |Aut(P0(G))| = {}  trivial pullback = {}  exceptional = {}",
        group_name(&r.group),
        opt(r.aut_g_order),
        opt(r.aut_p0g_order),
        opt(r.trivial_pullback_order),
        yes_no(r.exceptional)
    )
}

fn report_json(r: &VerificationReport, input: Option<&[u64]>) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    if let Some(input) = input {
        v["input"] = json!(input);
    }
    v
}

fn check_row(c: &CheckResult) -> Vec<String> {
    vec![
        c.name.clone(),
        status(c.status).into(),
        c.note.clone().unwrap_or_default(),
        c.witness.as_ref().map(Value::to_string).unwrap_or_default(),
    ]
}

pub fn lemmas(report: &VerificationReport, input: Option<&[u64]>, format: Format) -> String {
    match format {
        Format::Json => to_json(&report_json(report, input)),
        Format::Csv => to_csv(
            &["check", "status", "note", "witness"],
            report.checks.iter().map(check_row),
        ),
        Format::Text => {
            let mut s = report_header(report);
            s.push('\n');
            if let Some(input) = input {
                writeln!(s, "input {input:?}").unwrap();
            }
            check_lines(&mut s, &report.checks, "  ");
            s
        }
    }
}

fn overall(r: &VerificationReport) -> &'static str {
    if !r.passed() {
        "fail"
    } else if r.has_skipped() {
        "skipped"
    } else {
        "pass"
    }
}

pub fn verify(max_order: usize, reports: &[VerificationReport], format: Format) -> String {
    let passed = reports.iter().all(VerificationReport::passed);
    match format {
        Format::Json => to_json(&json!({
            "max_order": max_order,
            "passed": passed,
            "groups": reports.iter().map(|r| report_json(r, None)).collect::<Vec<_>>(),
        })),
        Format::Csv => to_csv(
            &["group", "check", "status", "note", "witness"],
            reports.iter().flat_map(|r| {
                r.checks.iter().map(|c| {
                    let mut row = vec![group_name(&r.group)];
                    row.extend(check_row(c));
                    row
                })
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            let width = reports
                .iter()
                .map(|r| group_name(&r.group).len())
                .max()
                .unwrap_or(5)
                .max(5);
            writeln!(
                s,
                "{:<width$}  {:>6}  {:>8}  {:>12}  {:>11}  status",
                "group", "|G|", "|Aut(G)|", "|Aut(P0(G))|", "exceptional"
            )
            .unwrap();
            for r in reports {
                let order: usize = r.group.iter().product();
                writeln!(
                    s,
                    "{:<width$}  {:>6}  {:>8}  {:>12}  {:>11}  {}",
                    group_name(&r.group),
                    order,
                    opt(r.aut_g_order),
                    opt(r.aut_p0g_order),
                    yes_no(r.exceptional),
                    overall(r)
                )
                .unwrap();
                let failing: Vec<CheckResult> =
                    r.checks.iter().filter(|c| c.failed()).cloned().collect();
                check_lines(&mut s, &failing, "    ");
            }
            let fails = reports.iter().filter(|r| !r.passed()).count();
            let skips = reports
                .iter()
                .filter(|r| r.passed() && r.has_skipped())
                .count();
            writeln!(
                s,
                "{} groups: {} pass, {fails} fail, {skips} skipped",
                reports.len(),
                reports.len() - fails - skips
            )
            .unwrap();
            s
        }
    }
}

pub fn table(
    ctx: &PowerMonoidContext,
    table: &CayleyTable,
    input: Option<&[u64]>,
    format: Format,
) -> String {
    let carrier: Vec<SubsetId> = ctx.enumerate_carrier().collect();
    let n = table.size();
    match format {
        Format::Json => {
            let mut v = json!({
                "group": ctx.spec().map(|s| s.factors().to_vec()),
                "carrier": carrier.iter().map(|x| x.elements()).collect::<Vec<_>>(),
                "table": (0..n).map(|i| table.row(i).to_vec()).collect::<Vec<_>>(),
            });
            if let Some(input) = input {
                v["input"] = json!(input);
            }
            to_json(&v)
        }
        Format::Csv => {
            let mut header = vec!["carrier_index".to_string(), "subset".to_string()];
            header.extend((0..n).map(|j| j.to_string()));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            to_csv(
                &header,
                (0..n).map(|i| {
                    let mut row = vec![i.to_string(), carrier[i].to_string()];
                    row.extend(table.row(i).iter().map(u32::to_string));
                    row
                }),
            )
        }
        Format::Text => {
            let mut s = String::new();
            let name = ctx.spec().map(|g| g.to_string()).unwrap_or_default();
            writeln!(s, "carrier of P0({name}): {n} sets").unwrap();
            for (i, x) in carrier.iter().enumerate() {
                writeln!(s, "  {i:>4}  {x}").unwrap();
            }
            let w = (n.max(2) - 1).to_string().len();
            writeln!(s, "\nsumset table (carrier indices)").unwrap();
            write!(s, "{:>w$} |", "+").unwrap();
            for j in 0..n {
                write!(s, " {j:>w$}").unwrap();
            }
            s.push('\n');
            writeln!(s, "{}", "-".repeat((w + 1) * (n + 1) + 1)).unwrap();
            for i in 0..n {
                write!(s, "{i:>w$} |").unwrap();
                for &c in table.row(i) {
                    write!(s, " {c:>w$}").unwrap();
                }
                s.push('\n');
            }
            s
        }
    }
}
