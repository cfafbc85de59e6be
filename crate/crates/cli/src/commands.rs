//! Argument model and command dispatch.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hurwitz_core::oracle::{branch_points, hurwitz_from_count, MAX_BRANCH_POINTS};
use hurwitz_core::partitions::partitions_of;
use hurwitz_core::{
    asymptotics, evaluate, monotone_generating, structure_checks, ConstellationQuery,
    GenusClosedForm, Kind, Partition, StructureReport,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::format::{self, Format, TableDoc, TableRow};
use crate::parallel;

/// Largest `|mu|` the engine accepts without `--force`.
pub const ENGINE_MAX_DEGREE: u32 = 12;

#[derive(Debug, Parser)]
#[command(name = "hurwitz", version, about = "Exact genus closed forms for simple and monotone Hurwitz numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output document format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Lift the engine (|mu| <= 12) and oracle (d <= 6, b <= 7) size guards.
    #[arg(long, global = true)]
    pub force: bool,
    /// Write the document to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Simple,
    Monotone,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Simple => Kind::Simple,
            KindArg::Monotone => Kind::Monotone,
        }
    }
}

fn parse_mu(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct Target {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Ramification type as comma-separated parts, e.g. 3,2,1.
    #[arg(long, value_parser = parse_mu)]
    pub mu: Partition,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the genus closed form.
    ClosedForm(Target),
    /// Evaluate the closed form at one genus.
    Eval {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        genus: u32,
    },
    /// Tabulate values for g = 0..=genus-max.
    Table {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        genus_max: u32,
    },
    /// Count constellations by brute force.
    Oracle {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        genus: u32,
    },
    /// Compare closed forms against the oracle.
    Verify(VerifyArgs),
    /// Sweep the leading-coefficient theorems over all partitions of d <= d-max.
    Checks {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        d_max: u32,
    },
    /// List terms by dominance at large genus.
    Asymptotics(Target),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// A single partition; genera 0..=genus-max.
    #[arg(long, value_parser = parse_mu, conflicts_with = "d_max", required_unless_present = "d_max")]
    pub mu: Option<Partition>,
    /// Every partition with 2 <= |mu| <= d-max.
    #[arg(long)]
    pub d_max: Option<u32>,
    #[arg(long)]
    pub genus_max: Option<u32>,
    /// Largest branch count compared (default: the oracle limit).
    #[arg(long)]
    pub b_max: Option<u32>,
    /// Perturb one closed-form coefficient before comparing.
    #[cfg(debug_assertions)]
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// A finished command: the document and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub document: String,
    pub status: u8,
}

impl Report {
    fn ok(document: String) -> Self {
        Report { document, status: 0 }
    }
}

pub const EXIT_MISMATCH: u8 = 2;

fn guard_engine(mu: &Partition, force: bool) -> Result<()> {
    if !force && mu.size() > ENGINE_MAX_DEGREE {
        bail!(
            "|mu| = {} exceeds the engine limit of {ENGINE_MAX_DEGREE}; pass --force to override",
            mu.size()
        );
    }
    Ok(())
}

fn form_for(target: &Target, force: bool) -> Result<GenusClosedForm> {
    guard_engine(&target.mu, force)?;
    Ok(parallel::closed_form_par(target.kind.into(), &target.mu)?)
}

fn json_doc<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<Report> {
    let fmt = cli.format;
    match &cli.command {
        Command::ClosedForm(target) => {
            let form = form_for(target, cli.force)?;
            let doc = match fmt {
                Format::Json => format::closed_form_json(&form),
                Format::Csv => format::closed_form_csv(&form),
                Format::Text => {
                    let orders = (form.kind == Kind::Monotone)
                        .then(|| monotone_generating(&form.mu))
                        .transpose()?
                        .map(|f| {
                            f.denominator_factors()
                                .iter()
                                .filter(|(&k, _)| k > 0)
                                .map(|(&k, &e)| (k, e))
                                .collect::<Vec<_>>()
                        });
                    format::closed_form_text(&form, orders.as_deref())
                }
            };
            Ok(Report::ok(doc))
        }
        Command::Eval { target, genus } => {
            let form = form_for(target, cli.force)?;
            let value = evaluate(&form, *genus);
            let b = form.branch_points(*genus);
            Ok(Report::ok(match fmt {
                Format::Text => format!("{value}\n"),
                Format::Json => json_doc(&json!({
                    "kind": form.kind.as_str(),
                    "mu": form.mu.parts(),
                    "g": genus,
                    "b": b,
                    "value": value.to_string(),
                })),
                Format::Csv => format!("g,b,value\n{genus},{b},{value}\n"),
            }))
        }
        Command::Table { target, genus_max } => {
            let form = form_for(target, cli.force)?;
            let rows = (0..=*genus_max)
                .map(|g| TableRow::new(g, form.branch_points(g), &evaluate(&form, g)))
                .collect();
            let doc = TableDoc {
                kind: form.kind.to_string(),
                mu: form.mu.parts().to_vec(),
                rows,
            };
            Ok(Report::ok(format::table(&doc, fmt)))
        }
        Command::Oracle { target, genus } => {
            let kind: Kind = target.kind.into();
            let b = branch_points(&target.mu, *genus);
            let q = ConstellationQuery {
                mu: target.mu.clone(),
                b,
                monotone: kind == Kind::Monotone,
                force: cli.force,
            };
            let count = parallel::count_constellations_par(&q)?;
            let value = hurwitz_from_count(&target.mu, count.clone());
            Ok(Report::ok(match fmt {
                Format::Text => format!("{kind} {} g={genus} b={b}\ncount {count}\nvalue {value}\n", target.mu),
                Format::Json => json_doc(&json!({
                    "kind": kind.as_str(),
                    "mu": target.mu.parts(),
                    "g": genus,
                    "b": b,
                    "count": count.to_string(),
                    "value": value.to_string(),
                })),
                Format::Csv => format!("g,b,count,value\n{genus},{b},{count},{value}\n"),
            }))
        }
        Command::Verify(args) => verify(args, fmt, cli.force),
        Command::Checks { kind, d_max } => checks((*kind).into(), *d_max, fmt, cli.force),
        Command::Asymptotics(target) => {
            let form = form_for(target, cli.force)?;
            let a = asymptotics(&form);
            Ok(Report::ok(match fmt {
                Format::Json => json_doc(&json!({
                    "kind": form.kind.as_str(),
                    "mu": form.mu.parts(),
                    "leading": a.leading,
                    "terms": a.terms.iter().map(|t| json!({
                        "k": t.k, "i": t.i, "coeff": t.coeff.to_string()
                    })).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    let mut s = String::from("k,i,coeff,leading\n");
                    for (n, t) in a.terms.iter().enumerate() {
                        s.push_str(&format!("{},{},{},{}\n", t.k, t.i, t.coeff, n < a.leading));
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!(
                        "{} {}: {} leading term(s){}\n",
                        form.kind,
                        form.mu,
                        a.leading,
                        if a.exact() { ", exact" } else { "" }
                    );
                    for (n, t) in a.terms.iter().enumerate() {
                        let mark = if n < a.leading { '*' } else { ' ' };
                        s.push_str(&format!("{mark} {:>4} {:>2}  {}\n", t.k, t.i, t.coeff));
                    }
                    s
                }
            }))
        }
    }
}

#[derive(Debug, Serialize)]
struct VerifyCase {
    mu: Vec<u32>,
    g: u32,
    b: u32,
    oracle: String,
    closed_form: String,
    matches: bool,
}

fn verify(args: &VerifyArgs, fmt: Format, force: bool) -> Result<Report> {
    let kind: Kind = args.kind.into();
    let b_max = args.b_max.unwrap_or(if force { u32::MAX } else { MAX_BRANCH_POINTS });
    let single = args.mu.is_some();
    let mus: Vec<Partition> = match (&args.mu, args.d_max) {
        (Some(mu), _) => vec![mu.clone()],
        (None, Some(d)) => (2..=d).flat_map(partitions_of).collect(),
        (None, None) => bail!("verify needs --mu or --d-max"),
    };
    let mut jobs = Vec::new();
    for mu in &mus {
        guard_engine(mu, force)?;
        let form = inject_fault(args, parallel::closed_form_par(kind, mu)?);
        if let Some(gmax) = args.genus_max {
            for g in 0..=gmax {
                jobs.push((mu.clone(), g, form.clone()));
            }
        } else {
            let mut g = 0;
            while form.branch_points(g) <= b_max {
                jobs.push((mu.clone(), g, form.clone()));
                g += 1;
            }
        }
    }
    let cases = jobs
        .par_iter()
        .map(|(mu, g, form)| -> Result<VerifyCase> {
            let b = form.branch_points(*g);
            let q = ConstellationQuery {
                mu: mu.clone(),
                b,
                monotone: kind == Kind::Monotone,
                force,
            };
            let oracle = hurwitz_from_count(mu, parallel::count_constellations_par(&q)?);
            let value = evaluate(form, *g);
            Ok(VerifyCase {
                mu: mu.parts().to_vec(),
                g: *g,
                b,
                matches: oracle == value,
                oracle: oracle.to_string(),
                closed_form: value.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let matched = cases.iter().filter(|c| c.matches).count();
    let noun = if single { "genera" } else { "cases" };
    let summary = format!("{matched}/{} {noun} match", cases.len());
    let document = match fmt {
        Format::Json => json_doc(&json!({
            "kind": kind.as_str(),
            "cases": cases,
            "matched": matched,
            "total": cases.len(),
        })),
        Format::Csv => {
            let mut s = String::from("mu,g,b,oracle,closed_form,match\n");
            for c in &cases {
                let mu = c.mu.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                s.push_str(&format!("{mu},{},{},{},{},{}\n", c.g, c.b, c.oracle, c.closed_form, c.matches));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &cases {
                let mu = Partition::new(c.mu.clone()).expect("canonical");
                s.push_str(&format!(
                    "{kind} {mu} g={} b={}: oracle {} closed form {} {}\n",
                    c.g,
                    c.b,
                    c.oracle,
                    c.closed_form,
                    if c.matches { "ok" } else { "MISMATCH" }
                ));
            }
            s.push_str(&summary);
            s.push('\n');
            s
        }
    };
    Ok(Report {
        document,
        status: if matched == cases.len() { 0 } else { EXIT_MISMATCH },
    })
}

#[cfg(debug_assertions)]
fn inject_fault(args: &VerifyArgs, mut form: GenusClosedForm) -> GenusClosedForm {
    if args.inject_fault {
        if let Some(t) = form.terms.first_mut() {
            t.coeff += hurwitz_core::exactarith::int(1);
        }
    }
    form
}

#[cfg(not(debug_assertions))]
fn inject_fault(_: &VerifyArgs, form: GenusClosedForm) -> GenusClosedForm {
    form
}

fn report_json(mu: &Partition, r: &StructureReport) -> serde_json::Value {
    json!({
        "mu": mu.parts(),
        "passed": r.passed(),
        "top_coefficient": r.top_coefficient.to_string(),
        "expected_top": r.expected_top.to_string(),
        "gap_all_zero": r.gap_all_zero,
        "second_coefficient": r.second_coefficient.as_ref().map(ToString::to_string),
        "expected_second": r.expected_second.as_ref().map(ToString::to_string),
    })
}

fn checks(kind: Kind, d_max: u32, fmt: Format, force: bool) -> Result<Report> {
    if !force && d_max > ENGINE_MAX_DEGREE {
        bail!("--d-max {d_max} exceeds the engine limit of {ENGINE_MAX_DEGREE}; pass --force to override");
    }
    let mus: Vec<Partition> = (2..=d_max).flat_map(partitions_of).collect();
    let forms = parallel::closed_forms(kind, &mus);
    let mut reports = Vec::with_capacity(mus.len());
    for (mu, form) in mus.iter().zip(forms) {
        reports.push((mu, structure_checks(&form?)));
    }
    let passed = reports.iter().filter(|(_, r)| r.passed()).count();
    let summary = format!("{passed}/{} partitions conform", reports.len());
    let document = match fmt {
        Format::Json => json_doc(&json!({
            "kind": kind.as_str(),
            "reports": reports.iter().map(|(mu, r)| report_json(mu, r)).collect::<Vec<_>>(),
            "passed": passed,
            "total": reports.len(),
        })),
        Format::Csv => {
            let mut s = String::from("mu,passed,top_coefficient,expected_top,gap_all_zero,second_coefficient,expected_second\n");
            for (mu, r) in &reports {
                let opt = |x: &Option<hurwitz_core::Rational>| x.as_ref().map(ToString::to_string).unwrap_or_default();
                let parts = mu.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                s.push_str(&format!(
                    "{parts},{},{},{},{},{},{}\n",
                    r.passed(),
                    r.top_coefficient,
                    r.expected_top,
                    r.gap_all_zero,
                    opt(&r.second_coefficient),
                    opt(&r.expected_second)
                ));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (mu, r) in &reports {
                s.push_str(&format!(
                    "{kind} {mu}: {} top {} (expected {}), gap {}",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.top_coefficient,
                    r.expected_top,
                    if r.gap_all_zero { "clear" } else { "NOT clear" },
                ));
                if let (Some(got), Some(want)) = (&r.second_coefficient, &r.expected_second) {
                    s.push_str(&format!(", second {got} (expected {want})"));
                }
                s.push('\n');
            }
            s.push_str(&summary);
            s.push('\n');
            s
        }
    };
    Ok(Report {
        document,
        status: if passed == reports.len() { 0 } else { EXIT_MISMATCH },
    })
}
