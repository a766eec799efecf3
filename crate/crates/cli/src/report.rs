//! Rendering search results and table reproductions as md, json or csv.

use anyhow::Result;
use clap::ValueEnum;
use qcdesign::search::{RegularComparison, SearchResult, TableReport, TableRow};
use serde::Serialize;

use crate::document::decimal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Md,
    Json,
    Csv,
}

/// One named observation about a row; `pass` is set only for checks.
#[derive(Clone, Debug, Serialize)]
pub struct Flag {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl Flag {
    fn info(name: &str, computed: impl ToString) -> Flag {
        Flag {
            name: name.to_string(),
            expected: None,
            computed: computed.to_string(),
            pass: None,
        }
    }

    fn render(&self) -> String {
        match (&self.expected, self.pass) {
            (Some(e), Some(p)) => format!(
                "{}: {} (expected {}){}",
                self.name,
                self.computed,
                e,
                if p { "" } else { " MISMATCH" }
            ),
            _ => format!("{}: {}", self.name, self.computed),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub design: String,
    pub family: String,
    pub n: usize,
    pub lambda: String,
    pub u0v0: String,
    pub resolution: String,
    pub resolution_decimal: Option<f64>,
    /// `A_1, …, A_q`.
    pub wlp: Vec<String>,
    pub projectivity: usize,
    pub flags: Vec<Flag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<&'static str>,
}

impl ReportRow {
    pub fn from_search(result: &SearchResult) -> ReportRow {
        let mut flags = vec![
            Flag::info("criterion", result.criterion),
            Flag::info("equivalent optima", result.ties.len()),
            Flag::info("max R and MA coincide", result.criteria_coincide),
        ];
        if let Some(regular) = result.regular_reference {
            flags.push(Flag::info("regular MA design R", regular.resolution));
            flags.push(Flag::info(
                "regular MA design WLP",
                match regular.wlp {
                    RegularComparison::Same => "same",
                    RegularComparison::Better => "better",
                },
            ));
            flags.push(Flag::info("regular MA design projectivity", regular.projectivity));
        }
        ReportRow {
            design: result.family.design_label(result.n),
            family: result.family.name().to_string(),
            n: result.n,
            lambda: result.lambda.to_string(),
            u0v0: result.branch.map_or_else(|| "-".to_string(), |b| b.to_string()),
            resolution: result.resolution.to_string(),
            resolution_decimal: decimal(result.resolution),
            wlp: result.wlp.iter().map(ToString::to_string).collect(),
            projectivity: result.projectivity,
            flags,
            status: None,
        }
    }

    pub fn from_table_row(row: &TableRow) -> ReportRow {
        let mut out = ReportRow::from_search(&row.result);
        out.design = row.design.clone();
        out.flags.retain(|f| f.name == "equivalent optima");
        out.flags.push(Flag::info("OA ceiling", row.oa_ceiling));
        out.flags.extend(row.checks.iter().map(|c| Flag {
            name: c.name.to_string(),
            expected: Some(c.expected.clone()),
            computed: c.computed.clone(),
            pass: Some(c.pass),
        }));
        out.status = Some(if row.passed() { "PASS" } else { "FAIL" });
        out
    }

    fn wlp_text(&self) -> String {
        format!("({})", self.wlp.join(", "))
    }

    fn resolution_text(&self) -> String {
        match self.resolution_decimal {
            Some(d) if self.resolution.contains('/') => format!("{} ({d})", self.resolution),
            _ => self.resolution.clone(),
        }
    }

    fn flags_text(&self, sep: &str) -> String {
        self.flags.iter().map(Flag::render).collect::<Vec<_>>().join(sep)
    }
}

pub fn render(rows: &[ReportRow], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
        ReportFormat::Md => Ok(markdown(rows)),
        ReportFormat::Csv => csv_text(rows),
    }
}

fn markdown(rows: &[ReportRow]) -> String {
    let with_status = rows.iter().any(|r| r.status.is_some());
    let mut out = String::from("| design | lambda | u0v0 | R | A | projectivity | notes |");
    out.push_str(if with_status { " status |\n" } else { "\n" });
    out.push_str("|---|---|---|---|---|---|---|");
    out.push_str(if with_status { "---|\n" } else { "\n" });
    for r in rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.design,
            r.lambda,
            r.u0v0,
            r.resolution_text(),
            r.wlp_text(),
            r.projectivity,
            r.flags_text("; ")
        ));
        match r.status {
            Some(s) => out.push_str(&format!(" {s} |\n")),
            None if with_status => out.push_str(" |\n"),
            None => out.push('\n'),
        }
    }
    out
}

fn csv_text(rows: &[ReportRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "design",
        "family",
        "n",
        "lambda",
        "u0v0",
        "resolution",
        "resolution_decimal",
        "wlp",
        "projectivity",
        "notes",
        "status",
    ])?;
    for r in rows {
        w.write_record([
            r.design.clone(),
            r.family.clone(),
            r.n.to_string(),
            r.lambda.clone(),
            r.u0v0.clone(),
            r.resolution.clone(),
            r.resolution_decimal.map_or_else(String::new, |d| d.to_string()),
            r.wlp.join(" "),
            r.projectivity.to_string(),
            r.flags_text("; "),
            r.status.unwrap_or("").to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn table_rows(report: &TableReport) -> Vec<ReportRow> {
    report.rows.iter().map(ReportRow::from_table_row).collect()
}
