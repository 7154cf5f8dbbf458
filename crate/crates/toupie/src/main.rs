use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use toupie::cohomology::{Cohomology, CohomologyClass, Gen2, Label};
use toupie::gerstenhaber::{bracket_deg1_basis, bracket_deg1_degn, bracket_high, bracket_table};
use toupie::input::InputDocument;
use toupie::report::{build_oracle_block, build_report, render_text};
use toupie::ToupieAlgebra;

const EXIT_INTERNAL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;

/// Hochschild cohomology of toupie algebras: labeled bases, Gerstenhaber
/// structure, Lie reports, and a bar-complex verification oracle.
#[derive(Parser)]
#[command(name = "toupie", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit machine-readable JSON (default).
    #[arg(long)]
    json: bool,
    /// Emit a human-readable summary.
    #[arg(long, conflicts_with = "json")]
    text: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an algebra description and report every violation.
    Validate { path: PathBuf },
    /// Compute the full cohomology report.
    Report {
        path: PathBuf,
        /// Report through this degree (default: one past the vanishing bound).
        #[arg(long)]
        max_degree: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check the minimal-complex computation against the bar complex.
    Oracle {
        path: PathBuf,
        /// Verify dimensions through this degree (default 4).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Bar-space slot budget per degree.
        #[arg(long)]
        budget: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the Gerstenhaber bracket of two labeled basis classes.
    Bracket {
        path: PathBuf,
        label1: String,
        label2: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn load(path: &Path) -> Result<(InputDocument, ToupieAlgebra), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let doc = InputDocument::parse(&text).map_err(|e| e.to_string())?;
    let alg = doc.build().map_err(|e| e.to_string())?;
    Ok((doc, alg))
}

fn emit(output: &OutputArgs, json: String, text: String) -> Result<(), String> {
    let body = if output.text { text } else { json };
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(|e| e.to_string()),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Validate { path } => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", path.display());
                    return Ok(ExitCode::from(EXIT_INVALID));
                }
            };
            match InputDocument::parse(&text).and_then(|doc| doc.build()) {
                Ok(alg) => {
                    let inv = alg.invariants();
                    println!(
                        "valid: a={} l={} m={} n={} D={} r={}",
                        inv.a, inv.l, inv.m, inv.n, inv.big_d, inv.r
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(EXIT_INVALID))
                }
            }
        }
        Cmd::Report {
            path,
            max_degree,
            output,
        } => {
            let (doc, alg) = match load(&path) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("{e}");
                    return Ok(ExitCode::from(EXIT_INVALID));
                }
            };
            let coh = Cohomology::new(&alg).map_err(|e| e.to_string())?;
            let table = bracket_table(&coh).map_err(|e| e.to_string())?;
            let max = max_degree
                .or(doc.options.max_degree)
                .unwrap_or(coh.vanishes_above() + 1);
            let report = build_report(&coh, &table, max).map_err(|e| e.to_string())?;
            let json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            emit(&output, json, render_text(&report))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Oracle {
            path,
            max_degree,
            budget,
            output,
        } => {
            let (doc, alg) = match load(&path) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("{e}");
                    return Ok(ExitCode::from(EXIT_INVALID));
                }
            };
            let coh = Cohomology::new(&alg).map_err(|e| e.to_string())?;
            let table = bracket_table(&coh).map_err(|e| e.to_string())?;
            let max = max_degree.unwrap_or(4);
            let budget = budget.or(doc.options.oracle_budget).unwrap_or(200_000);
            let mut report = build_report(&coh, &table, max).map_err(|e| e.to_string())?;
            let block = build_oracle_block(&coh, max, budget).map_err(|e| e.to_string())?;
            let agree = block.all_agree;
            report.oracle = Some(block);
            let json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            emit(&output, json, render_text(&report))?;
            Ok(if agree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_DISAGREEMENT)
            })
        }
        Cmd::Bracket {
            path,
            label1,
            label2,
        } => {
            let (_, alg) = match load(&path) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("{e}");
                    return Ok(ExitCode::from(EXIT_INVALID));
                }
            };
            let coh = Cohomology::new(&alg).map_err(|e| e.to_string())?;
            let a = match parse_label(&coh, &label1) {
                Some(v) => v,
                None => {
                    eprintln!("unknown label: {label1}");
                    return Ok(ExitCode::from(EXIT_INVALID));
                }
            };
            let b = match parse_label(&coh, &label2) {
                Some(v) => v,
                None => {
                    eprintln!("unknown label: {label2}");
                    return Ok(ExitCode::from(EXIT_INVALID));
                }
            };
            let class = compute_bracket(&coh, a, b).map_err(|e| e.to_string())?;
            println!("{}", coh.format_class(&class));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn unit_class(coh: &Cohomology, degree: usize, idx: usize) -> CohomologyClass {
    let mut c = CohomologyClass::zero(degree, coh.hh_dimension(degree));
    c.coords[idx] = num_traits::One::one();
    c
}

fn compute_bracket(
    coh: &Cohomology,
    (da, ia): (usize, usize),
    (db, ib): (usize, usize),
) -> Result<CohomologyClass, String> {
    match (da, db) {
        (1, 1) => bracket_deg1_basis(coh, ia, ib).map_err(|e| e.to_string()),
        (1, n) if n >= 2 => {
            bracket_deg1_degn(coh, &unit_class(coh, 1, ia), &unit_class(coh, n, ib))
                .map_err(|e| e.to_string())
        }
        (m, 1) if m >= 2 => {
            // Degree 1 against a higher degree is antisymmetric.
            let mut out =
                bracket_deg1_degn(coh, &unit_class(coh, 1, ib), &unit_class(coh, m, ia))
                    .map_err(|e| e.to_string())?;
            for c in out.coords.iter_mut() {
                *c = -c.clone();
            }
            Ok(out)
        }
        (m, n) if m >= 2 && n >= 2 => {
            bracket_high(coh, &unit_class(coh, m, ia), &unit_class(coh, n, ib))
                .map_err(|e| e.to_string())
        }
        _ => Err("brackets with the degree-0 class are not defined".to_string()),
    }
}

/// Parses a printed label back to its (degree, index) in the computed bases.
fn parse_label(coh: &Cohomology, raw: &str) -> Option<(usize, usize)> {
    let s = raw.trim().replace('\u{2016}', "||");
    let label = if let Some((gen, value)) = s.split_once("||") {
        let value = value.strip_prefix('a')?.parse::<usize>().ok()?;
        let value = value.checked_sub(1)?;
        if let Some(rest) = gen.strip_prefix("rho") {
            let i = rest.parse::<usize>().ok()?;
            Label::Deg2 {
                gen: Gen2::Linear(i.checked_sub(1)?),
                value,
            }
        } else if let Some(rest) = gen.strip_prefix("sigma") {
            let (b, s0, e) = parse_triple(rest)?;
            let w = coh
                .algebra()
                .all_windows()
                .find(|w| w.branch + 1 == b && w.start == s0 && w.end() == e)
                .copied()?;
            Label::Deg2 {
                gen: Gen2::Monomial(w),
                value,
            }
        } else if let Some(rest) = gen.strip_prefix("amb") {
            let (b, s0, e) = parse_triple(rest)?;
            // The degree is determined by the span; search the computed bases.
            return (3..=coh.vanishes_above()).find_map(|deg| {
                coh.hh_basis(deg)
                    .iter()
                    .position(|cls| {
                        matches!(cls.label, Label::HiDeg { amb, value: v }
                        if amb.branch + 1 == b && amb.start == s0 && amb.end == e && v == value)
                    })
                    .map(|idx| (deg, idx))
            });
        } else {
            return None;
        }
    } else {
        let (family, rest) = s.split_at(1);
        match family {
            "y" => Label::Y {
                branch: rest.parse::<usize>().ok()?.checked_sub(1)?,
            },
            "x" => Label::X {
                j: rest.parse::<usize>().ok()?.checked_sub(1)?,
            },
            "t" => Label::T {
                component: rest.parse::<usize>().ok()?.checked_sub(1)?,
            },
            "w" | "z" => {
                let (p, q) = parse_pair(rest)?;
                if family == "w" {
                    Label::W { p, q }
                } else {
                    Label::Z { u: p, s: q }
                }
            }
            _ => return None,
        }
    };
    let degree = match label {
        Label::Deg2 { .. } => 2,
        Label::HiDeg { amb, .. } => amb.degree + 1,
        Label::Unit => 0,
        _ => 1,
    };
    coh.label_index(degree, &label).map(|idx| (degree, idx))
}

/// Two 1-based indices, either single digits run together or separated by an
/// underscore.
fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let (a, b) = if let Some((a, b)) = s.split_once('_') {
        (a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)
    } else if s.len() == 2 {
        let mut chars = s.chars();
        (
            chars.next()?.to_digit(10)? as usize,
            chars.next()?.to_digit(10)? as usize,
        )
    } else {
        return None;
    };
    Some((a.checked_sub(1)?, b.checked_sub(1)?))
}

/// `(b,s,e)` with a 1-based branch.
fn parse_triple(s: &str) -> Option<(usize, usize, usize)> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let mut parts = inner.split(',').map(str::trim);
    let b = parts.next()?.parse().ok()?;
    let s0 = parts.next()?.parse().ok()?;
    let e = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some((b, s0, e))
}
