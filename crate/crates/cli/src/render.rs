//! Output documents and their JSON, CSV and Markdown forms.

use std::fmt::Write as _;

use hilbcells::cells::TopologyReport;
use hilbcells::verify::CriterionOutcome;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRow {
    pub alphas: Vec<u32>,
    pub p_basis: Vec<u32>,
    pub shift: u32,
    pub min_generators: Vec<u32>,
    pub dim: u32,
    pub codim: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsDocument {
    pub semigroup: [u32; 2],
    pub r: u32,
    pub dim: u32,
    pub euler: u64,
    pub betti_homology: Vec<u64>,
    pub betti_cohomology: Vec<u64>,
    pub poincare: String,
    pub cells: Vec<CellRow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<String>,
}

impl CellsDocument {
    pub fn new(p: u32, q: u32, report: &TopologyReport) -> Self {
        Self {
            semigroup: [p, q],
            r: report.r,
            dim: report.dim_hilb,
            euler: report.euler,
            betti_homology: report.betti_hom.clone(),
            betti_cohomology: report.betti_coh.clone(),
            poincare: report.poincare(),
            cells: report
                .cells
                .iter()
                .map(|c| CellRow {
                    alphas: c.semimodule.lambda().alphas().to_vec(),
                    p_basis: c.semimodule.lambda().p_basis().to_vec(),
                    shift: c.semimodule.shift(),
                    min_generators: c.semimodule.minimal_generators(),
                    dim: c.dim,
                    codim: c.codim,
                })
                .collect(),
            oracle: None,
        }
    }
}

fn list(xs: &[impl ToString]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::acceptance(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

fn md_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    writeln!(out, "| {} |", header.join(" | ")).unwrap();
    writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
    for row in rows {
        writeln!(out, "| {} |", row.join(" | ")).unwrap();
    }
    out
}

const CELL_COLUMNS: [&str; 7] = ["r", "alphas", "p_basis", "shift", "min_generators", "dim", "codim"];

fn cell_rows(doc: &CellsDocument) -> (Vec<String>, Vec<Vec<String>>) {
    let header = CELL_COLUMNS.iter().map(|s| s.to_string()).collect();
    let rows = doc
        .cells
        .iter()
        .map(|c| {
            vec![
                doc.r.to_string(),
                list(&c.alphas),
                list(&c.p_basis),
                c.shift.to_string(),
                list(&c.min_generators),
                c.dim.to_string(),
                c.codim.to_string(),
            ]
        })
        .collect();
    (header, rows)
}

pub fn cells_csv(doc: &CellsDocument) -> Result<String, CliError> {
    let (header, rows) = cell_rows(doc);
    csv_string(&header, &rows)
}

pub fn cells_md(doc: &CellsDocument) -> String {
    let (header, rows) = cell_rows(doc);
    let mut out = format!(
        "# Hilb^{} for <{},{}>\n\n- euler: {}\n- dim: {}\n- poincare: {}\n",
        doc.r, doc.semigroup[0], doc.semigroup[1], doc.euler, doc.dim, doc.poincare
    );
    if let Some(o) = &doc.oracle {
        writeln!(out, "- oracle: {o}").unwrap();
    }
    out.push('\n');
    out.push_str(&md_table(&header, &rows));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub r: u32,
    pub dim: u32,
    pub euler: u64,
    pub betti_homology: Vec<u64>,
    pub betti_cohomology: Vec<u64>,
    pub poincare: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub semigroup: [u32; 2],
    pub rows: Vec<TableRow>,
}

impl TableDocument {
    fn width(&self) -> usize {
        self.rows.iter().map(|r| r.betti_homology.len()).max().unwrap_or(1)
    }

    fn padded(v: &[u64], width: usize, blank: &str) -> Vec<String> {
        (0..width)
            .map(|i| v.get(i).map_or(blank.to_string(), u64::to_string))
            .collect()
    }
}

pub fn table_csv(doc: &TableDocument) -> Result<String, CliError> {
    let w = doc.width();
    let mut header: Vec<String> = ["r", "euler", "dim"].iter().map(|s| s.to_string()).collect();
    header.extend((0..w).map(|d| format!("h_{}", 2 * d)));
    header.extend((0..w).map(|d| format!("h^{}", 2 * d)));
    let rows: Vec<Vec<String>> = doc
        .rows
        .iter()
        .map(|row| {
            let mut cols = vec![row.r.to_string(), row.euler.to_string(), row.dim.to_string()];
            cols.extend(TableDocument::padded(&row.betti_homology, w, "0"));
            cols.extend(TableDocument::padded(&row.betti_cohomology, w, "0"));
            cols
        })
        .collect();
    csv_string(&header, &rows)
}

/// Euler row, then homology and cohomology tables with blank cells above the
/// top degree.
pub fn table_md(doc: &TableDocument) -> String {
    let w = doc.width();
    let [p, q] = doc.semigroup;
    let mut out = format!("# Hilbert schemes of points for <{p},{q}>\n\n");

    let mut header = vec!["r".to_string()];
    header.extend(doc.rows.iter().map(|r| r.r.to_string()));
    let mut euler = vec!["e".to_string()];
    euler.extend(doc.rows.iter().map(|r| r.euler.to_string()));
    out.push_str(&md_table(&header, &[euler]));

    let hom: Vec<&[u64]> = doc.rows.iter().map(|r| r.betti_homology.as_slice()).collect();
    let coh: Vec<&[u64]> = doc.rows.iter().map(|r| r.betti_cohomology.as_slice()).collect();
    for (title, sub, rows) in [("homology", "h_", hom), ("cohomology", "h^", coh)] {
        let mut header = vec!["r".to_string()];
        header.extend((0..w).map(|d| format!("{sub}{}", 2 * d)));
        let rows: Vec<Vec<String>> = doc
            .rows
            .iter()
            .zip(rows)
            .map(|(row, v)| {
                let mut cols = vec![row.r.to_string()];
                cols.extend(TableDocument::padded(v, w, ""));
                cols
            })
            .collect();
        write!(out, "\n## {title}\n\n").unwrap();
        out.push_str(&md_table(&header, &rows));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub passed: usize,
    pub failed: usize,
    pub criteria: Vec<CriterionOutcome>,
}

pub fn verify_csv(doc: &VerifyDocument) -> Result<String, CliError> {
    let header: Vec<String> = ["id", "name", "status", "detail"].iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<String>> = doc
        .criteria
        .iter()
        .map(|c| {
            vec![
                c.id.to_string(),
                c.name.clone(),
                if c.pass { "PASS" } else { "FAIL" }.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    csv_string(&header, &rows)
}

pub fn verify_md(doc: &VerifyDocument) -> String {
    let mut out = String::new();
    for c in &doc.criteria {
        writeln!(out, "{c}").unwrap();
    }
    writeln!(out, "\n{} passed, {} failed", doc.passed, doc.failed).unwrap();
    out
}

/// Two-column `key,value` CSV.
pub fn pairs_csv(pairs: &[(String, String)]) -> Result<String, CliError> {
    let rows: Vec<Vec<String>> = pairs.iter().map(|(k, v)| vec![k.clone(), v.clone()]).collect();
    csv_string(&["key".to_string(), "value".to_string()], &rows)
}

pub fn pairs_md(title: &str, pairs: &[(String, String)]) -> String {
    let mut out = format!("# {title}\n\n");
    for (k, v) in pairs {
        writeln!(out, "- {k}: {v}").unwrap();
    }
    out
}
