mod cli;
mod error;
mod render;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;

use clap::Parser;
use hilbcells::cells::{topology_report, SumStart};
use hilbcells::oracle::oracle_enumerate_mod_r;
use hilbcells::ps::{counterexample_report, Expectations, PsFormula, ReportOptions, ReportStatus};
use hilbcells::semigroup::PlaneBranch;
use hilbcells::series::{parse_series_list, TruncatedSeries};
use hilbcells::stdbasis::{SagbiRing, StdBasisProblem};
use hilbcells::template::{subduce, AffineSeries};
use hilbcells::verify::{run_all, VerifyOptions};
use serde::Serialize;

use cli::{Cli, Command, Format, StdbasisAction};
use error::CliError;
use render::{CellsDocument, TableDocument, TableRow, VerifyDocument};

fn main() {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((text, failure)) => {
            if let Err(e) = emit(&cli, &text) {
                eprintln!("{e}");
                std::process::exit(e.code);
            }
            if let Some(e) = failure {
                eprintln!("{e}");
                std::process::exit(e.code);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.code);
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// The rendered document, plus a failure to report after it is written.
type Outcome = (String, Option<CliError>);

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Cells {
            semigroup,
            r,
            format,
            oracle,
        } => cmd_cells(semigroup.p, semigroup.q, *r, *format, *oracle),
        Command::Table {
            semigroup,
            r_max,
            format,
        } => cmd_table(semigroup.p, semigroup.q, *r_max, *format),
        Command::Stdbasis {
            ring,
            gens,
            trunc,
            format,
            action,
        } => cmd_stdbasis(ring, gens, *trunc, *format, action),
        Command::VerifyPaper { sum_from_one, format } => cmd_verify(*sum_from_one, *format),
        Command::Counterexample {
            p,
            q,
            delta,
            force_eq2_windows,
            format,
        } => cmd_counterexample(*p, *q, delta.as_deref(), *force_eq2_windows, *format),
    }
}

fn plane_branch(p: u32, q: u32) -> Result<PlaneBranch, CliError> {
    PlaneBranch::new(p, q).map_err(|e| CliError::usage(e.to_string()))
}

fn cmd_cells(p: u32, q: u32, r: u32, format: Format, oracle: bool) -> Result<Outcome, CliError> {
    let branch = plane_branch(p, q)?;
    let report = topology_report(&branch, r);
    let mut doc = CellsDocument::new(p, q, &report);
    let mut failure = None;
    if oracle {
        let family = oracle_enumerate_mod_r(&branch, r)?;
        let mut ours: Vec<Vec<u32>> = report
            .cells
            .iter()
            .map(|c| c.semimodule.elements_below(family.bound))
            .collect();
        ours.sort();
        let matched = ours == family.sets;
        doc.oracle = Some(if matched { "MATCH" } else { "MISMATCH" }.to_string());
        if !matched {
            failure = Some(CliError::acceptance("oracle mismatch"));
        }
    }
    let text = match format {
        Format::Json => render::json(&doc)?,
        Format::Csv => render::cells_csv(&doc)?,
        Format::Md => render::cells_md(&doc),
    };
    Ok((text, failure))
}

fn cmd_table(p: u32, q: u32, r_max: u32, format: Format) -> Result<Outcome, CliError> {
    let branch = plane_branch(p, q)?;
    let rows = (0..=r_max)
        .map(|r| {
            let rep = topology_report(&branch, r);
            TableRow {
                r,
                dim: rep.dim_hilb,
                euler: rep.euler,
                poincare: rep.poincare(),
                betti_homology: rep.betti_hom,
                betti_cohomology: rep.betti_coh,
            }
        })
        .collect();
    let doc = TableDocument {
        semigroup: [p, q],
        rows,
    };
    let text = match format {
        Format::Json => render::json(&doc)?,
        Format::Csv => render::table_csv(&doc)?,
        Format::Md => render::table_md(&doc),
    };
    Ok((text, None))
}

#[derive(Serialize)]
struct ResidueDoc {
    i: usize,
    j: usize,
    exponent: u32,
    s_process: String,
    remainder: String,
}

#[derive(Serialize)]
struct CheckDoc {
    command: &'static str,
    standard: bool,
    verdict: &'static str,
    residues: Vec<ResidueDoc>,
}

#[derive(Serialize)]
struct ReduceDoc {
    command: &'static str,
    f: String,
    quotients: Vec<String>,
    remainder: String,
}

#[derive(Serialize)]
struct InconsistencyDoc {
    generator: usize,
    exponent: u32,
    value: String,
}

#[derive(Serialize)]
struct SolveDoc {
    command: &'static str,
    consistent: bool,
    resolved: bool,
    assignments: BTreeMap<String, String>,
    unresolved: Vec<String>,
    generators: Vec<String>,
    inconsistency: Option<InconsistencyDoc>,
}

fn render_pairs<T: Serialize>(doc: &T, title: &str, pairs: Vec<(String, String)>, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => render::json(doc),
        Format::Csv => render::pairs_csv(&pairs),
        Format::Md => Ok(render::pairs_md(title, &pairs)),
    }
}

fn cmd_stdbasis(ring: &str, gens: &str, trunc: u32, format: Format, action: &StdbasisAction) -> Result<Outcome, CliError> {
    let ring_gens = parse_series_list(ring, trunc)?;
    match action {
        StdbasisAction::Check => {
            let problem = StdBasisProblem::new(&ring_gens, &parse_series_list(gens, trunc)?, trunc)?;
            let verdict = problem.is_standard_basis()?;
            let doc = CheckDoc {
                command: "check",
                standard: verdict.standard,
                verdict: if verdict.standard { "PASS" } else { "FAIL" },
                residues: verdict
                    .residues
                    .iter()
                    .map(|r| ResidueDoc {
                        i: r.i,
                        j: r.j,
                        exponent: r.exponent,
                        s_process: r.s_process.to_string(),
                        remainder: r.remainder.to_string(),
                    })
                    .collect(),
            };
            let mut pairs = vec![("verdict".to_string(), doc.verdict.to_string())];
            pairs.extend(doc.residues.iter().map(|r| {
                (
                    format!("S({},{}) at t^{}", r.i, r.j, r.exponent),
                    format!("{} -> {}", r.s_process, r.remainder),
                )
            }));
            Ok((render_pairs(&doc, "standard basis check", pairs, format)?, None))
        }
        StdbasisAction::Reduce { f } => {
            let problem = StdBasisProblem::new(&ring_gens, &parse_series_list(gens, trunc)?, trunc)?;
            let f = TruncatedSeries::parse(f, trunc)?;
            let red = problem.reduce(&f)?;
            let doc = ReduceDoc {
                command: "reduce",
                f: f.to_string(),
                quotients: red.quotients.iter().map(ToString::to_string).collect(),
                remainder: red.remainder.to_string(),
            };
            let mut pairs = vec![("f".to_string(), doc.f.clone())];
            pairs.extend(doc.quotients.iter().enumerate().map(|(j, q)| (format!("q{j}"), q.clone())));
            pairs.push(("remainder".to_string(), doc.remainder.clone()));
            Ok((render_pairs(&doc, "reduction", pairs, format)?, None))
        }
        StdbasisAction::Solve => {
            let ring = SagbiRing::new(&ring_gens, trunc)?;
            let templates = gens
                .split(',')
                .map(|g| AffineSeries::parse(g, trunc))
                .collect::<Result<Vec<_>, _>>()?;
            let out = subduce(&ring, &templates)?;
            let doc = SolveDoc {
                command: "solve",
                consistent: out.consistent(),
                resolved: out.resolved(),
                assignments: out.assignments.iter().map(|(v, e)| (v.clone(), e.to_string())).collect(),
                unresolved: out.unresolved.clone(),
                generators: out.generators.iter().map(ToString::to_string).collect(),
                inconsistency: out.inconsistency.as_ref().map(|w| InconsistencyDoc {
                    generator: w.generator,
                    exponent: w.exponent,
                    value: w.value.to_string(),
                }),
            };
            let mut pairs = vec![(
                "status".to_string(),
                match (&doc.inconsistency, doc.resolved) {
                    (Some(_), _) => "INCONSISTENT",
                    (None, true) => "RESOLVED",
                    (None, false) => "UNRESOLVED",
                }
                .to_string(),
            )];
            pairs.extend(doc.assignments.iter().map(|(v, e)| (v.clone(), e.clone())));
            if let Some(w) = &doc.inconsistency {
                pairs.push((
                    "witness".to_string(),
                    format!("generator {} needs coefficient {} at t^{} to vanish", w.generator, w.value, w.exponent),
                ));
            }
            if !doc.unresolved.is_empty() {
                pairs.push(("unresolved".to_string(), doc.unresolved.join(" ")));
            }
            pairs.extend(doc.generators.iter().enumerate().map(|(i, g)| (format!("h{i}"), g.clone())));
            Ok((render_pairs(&doc, "dependent coefficients", pairs, format)?, None))
        }
    }
}

fn cmd_verify(sum_from_one: bool, format: Format) -> Result<Outcome, CliError> {
    let opts = VerifyOptions {
        sum_start: if sum_from_one { SumStart::One } else { SumStart::Zero },
        ..VerifyOptions::default()
    };
    let criteria = run_all(&opts);
    let failed = criteria.iter().filter(|c| !c.pass).count();
    let doc = VerifyDocument {
        passed: criteria.len() - failed,
        failed,
        criteria,
    };
    let text = match format {
        Format::Json => render::json(&doc)?,
        Format::Csv => render::verify_csv(&doc)?,
        Format::Md => render::verify_md(&doc),
    };
    let failure = (failed > 0).then(|| CliError::acceptance(format!("{failed} acceptance criteria failed")));
    Ok((text, failure))
}

fn cmd_counterexample(
    p: Option<u32>,
    q: Option<u32>,
    delta: Option<&[i64]>,
    force: bool,
    format: Format,
) -> Result<Outcome, CliError> {
    let mut opts = match (p, q, delta) {
        (Some(p), Some(q), Some(gens)) => {
            plane_branch(p, q)?;
            ReportOptions {
                p,
                q,
                generators: gens.to_vec(),
                formula: PsFormula::PfisterSteenbrink,
                expect: None::<Expectations>,
            }
        }
        (None, None, None) => ReportOptions::e6(),
        _ => return Err(CliError::usage("--p, --q and --delta go together")),
    };
    if force {
        opts = opts.force_eq2_windows();
    }
    let report = counterexample_report(&opts)?;
    let text = match format {
        Format::Json => render::json(&report)?,
        Format::Md => report.to_markdown(),
        Format::Csv => {
            let pairs: Vec<(String, String)> = report
                .links
                .iter()
                .map(|l| (l.name.clone(), format!("{} {}", if l.pass { "PASS" } else { "FAIL" }, l.observed)))
                .collect();
            render::pairs_csv(&pairs)?
        }
    };
    // A forced comparison formula is a sanity inversion; its broken link is expected.
    let failure = (report.status == ReportStatus::Broken && !force)
        .then(|| CliError::acceptance("counterexample chain BROKEN"));
    Ok((text, failure))
}
