//! Rendering of command results as Markdown, CSV or JSON.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Result;
use clap::ValueEnum;
use serde_json::{json, Value};

use agbound::moduli::{AgResult, Attainment};
use agbound::satake::SatakeCase;
use agbound::tables::TableSet;
use agbound::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

pub fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

fn json_out(mut value: Value, stamp: Option<u64>) -> String {
    if let (Some(t), Value::Object(map)) = (stamp, &mut value) {
        map.insert("generated_at".into(), json!(t));
    }
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}

fn text_out(body: String, stamp: Option<u64>) -> String {
    match stamp {
        Some(t) => format!("# generated_at: {t}\n{body}"),
        None => body,
    }
}

pub fn dmax(rows: &[(u64, u64)], format: Format, stamp: Option<u64>) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|&(g, d)| json!({"g": g, "dmax": d}))
                .collect();
            json_out(json!({"schema": "agbound.dmax/v1", "rows": rows}), stamp)
        }
        Format::Csv => {
            let mut s = String::from("g,dmax\n");
            for (g, d) in rows {
                let _ = writeln!(s, "{g},{d}");
            }
            text_out(s, stamp)
        }
        Format::Markdown => {
            let mut s = String::from("| g | dmax(g) |\n|--:|--:|\n");
            for (g, d) in rows {
                let _ = writeln!(s, "| {g} | {d} |");
            }
            text_out(s, stamp)
        }
    })
}

pub fn tables(set: &TableSet, format: Format, stamp: Option<u64>) -> Result<String> {
    Ok(match format {
        Format::Json => json_out(serde_json::to_value(set)?, stamp),
        Format::Csv => text_out(set.to_csv()?, stamp),
        Format::Markdown => text_out(set.to_markdown(), stamp),
    })
}

pub fn report(r: &VerificationReport, format: Format, stamp: Option<u64>) -> Result<String> {
    let range = r
        .range
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";");
    let status = if r.status.is_pass() { "pass" } else { "fail" };
    Ok(match format {
        Format::Json => json_out(serde_json::to_value(r)?, stamp),
        Format::Csv => {
            let mut s = String::from("claim,range,status,counterexamples,witnesses\n");
            let _ = writeln!(
                s,
                "{},{range},{status},{},{}",
                r.claim,
                r.counterexamples.len(),
                r.witnesses.len()
            );
            text_out(s, stamp)
        }
        Format::Markdown => {
            let mut s = String::new();
            let _ = writeln!(s, "**{}**: {status}\n", r.claim);
            let _ = writeln!(s, "- range: {range}");
            let _ = writeln!(s, "- witnesses: {}", r.witnesses.len());
            let _ = writeln!(s, "- counterexamples: {}", r.counterexamples.len());
            if !r.counterexamples.is_empty() {
                let _ = writeln!(
                    s,
                    "\n```json\n{}\n```",
                    serde_json::to_string_pretty(&r.counterexamples)?
                );
            }
            text_out(s, stamp)
        }
    })
}

fn describe(a: &Attainment) -> String {
    match a {
        Attainment::HodgeGeneric => {
            "complete intersection of ample divisors through a very general point".into()
        }
        Attainment::ShimuraCurve => "compact Shimura curve of a quaternion algebra in A_2".into(),
        Attainment::SpecialFamily { k, n } => format!(
            "compact special subvariety of type I with k={k}, n={n}, dimension (k-1)*ceil(n/2)*floor(n/2)"
        ),
        Attainment::ProductWithPoint(inner) => {
            format!("{} in A_{{g-1}}, times a point of A_1", describe(inner))
        }
    }
}

pub fn explain(r: &AgResult, format: Format, stamp: Option<u64>) -> Result<String> {
    let case = r.case.map_or("-", |c| c.label());
    let entries: Vec<(String, u64, String)> = r
        .attained_by
        .iter()
        .map(|a| Ok((a.to_string(), a.evaluate(r.g)?, describe(a))))
        .collect::<agbound::Result<_>>()?;
    Ok(match format {
        Format::Json => {
            let attained: Vec<Value> = entries
                .iter()
                .map(|(c, d, text)| json!({"construction": c, "dimension": d, "description": text}))
                .collect();
            json_out(
                json!({
                    "schema": "agbound.explain/v1",
                    "g": r.g,
                    "dmc": r.dmc,
                    "case": case,
                    "attained_by": attained,
                }),
                stamp,
            )
        }
        Format::Csv => {
            let mut s = String::from("g,dmc,case,construction,dimension\n");
            for (c, d, _) in &entries {
                let _ = writeln!(s, "{},{},{case},{c},{d}", r.g, r.dmc);
            }
            text_out(s, stamp)
        }
        Format::Markdown => {
            let mut s = String::new();
            let _ = writeln!(s, "dmc(A_{}) = {}", r.g, r.dmc);
            let _ = writeln!(s, "case {case}");
            let _ = writeln!(s, "attained by:");
            for (c, d, text) in &entries {
                let _ = writeln!(s, "- {c}, dim {d}: {text}");
            }
            text_out(s, stamp)
        }
    })
}

pub fn catalog(
    cases: &[SatakeCase],
    rep_dim_max: u64,
    format: Format,
    stamp: Option<u64>,
) -> Result<String> {
    let records: Vec<_> = cases.iter().map(SatakeCase::to_record).collect();
    let params = |c: &SatakeCase| {
        c.label
            .params()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    };
    Ok(match format {
        Format::Json => json_out(
            json!({"schema": "agbound.catalog/v1", "rep_dim_max": rep_dim_max, "cases": records}),
            stamp,
        ),
        Format::Csv => {
            let mut s = String::from("case,params,hss_dim,rep_dim,duality,min_compact_factors\n");
            for c in cases {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    c.label.case_name(),
                    params(c),
                    c.hss_dim,
                    c.rep_dim,
                    c.duality,
                    c.min_compact_factors
                );
            }
            text_out(s, stamp)
        }
        Format::Markdown => {
            let mut s = String::from(
                "| case | hss_dim | rep_dim | duality | min_compact_factors |\n|---|--:|--:|---|--:|\n",
            );
            for c in cases {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} |",
                    c.label, c.hss_dim, c.rep_dim, c.duality, c.min_compact_factors
                );
            }
            text_out(s, stamp)
        }
    })
}
