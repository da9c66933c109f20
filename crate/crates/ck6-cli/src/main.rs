//! Command-line driver for the ck6 engine: dimension reports, singular
//! vectors, homology tables, spectral pages, and the verification suites.
//!
//! Reports are canonical JSON (sorted keys) so reruns with identical flags
//! are byte-identical; wall-time goes to stderr only.  Exit codes: 0 all
//! pass, 1 verification mismatch, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ck6::homology::{self, position, Quadrant};
use ck6::spectral::{
    converges_to_total_homology, e_infinity, spectral_pages, stable_page_index, zigzag_pages,
    Filtration,
};
use ck6::suite::{self, Check};
use ck6::tables;
use ck6::verma::find_singular_vectors;
use ck6::weights::weyl_dim;
use ck6::ga;

#[derive(Parser)]
#[command(name = "ck6", version, about = "Exact computer algebra for E(1,6) Verma complexes")]
struct Cli {
    /// Print wall time to stderr (stdout stays byte-deterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuadrantArg {
    #[value(name = "A")]
    A,
    #[value(name = "C")]
    C,
    #[value(name = "GA")]
    Ga,
    #[value(name = "GAcirc")]
    GaCirc,
    #[value(name = "GAab")]
    GaBlock,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Brackets,
    Compositions,
    Primitives,
    Spectral,
    Torsion,
    All,
}

fn parse_family(s: &str) -> Result<char, String> {
    match s {
        "A" | "B" | "C" => Ok(s.chars().next().unwrap()),
        _ => Err(format!("family must be A, B or C, got {s}")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, highest weight and Weyl cross-check of one family module.
    Dim {
        #[arg(long, value_parser = parse_family)]
        family: char,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Singular vectors of one family module at a fixed positive degree.
    Singular {
        #[arg(long, value_parser = parse_family)]
        family: char,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Degree of the singular vectors; the trivial degree 0 is excluded.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=6))]
        degree: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homology tables of the quadrant complexes and the finite complexes.
    Homology {
        #[arg(long, value_enum)]
        quadrant: QuadrantArg,
        #[arg(long)]
        n1: Option<u32>,
        #[arg(long)]
        n2: Option<u32>,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectral-sequence pages of one finite-complex block.
    Spectral {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verification sweeps; any failed check exits nonzero.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A finished report: document body, rendered table rows for CSV, and
/// whether every verified value matched.
struct Report {
    command: &'static str,
    parameters: Value,
    results: Value,
    /// CSV rows including the header; `None` when the output is not tabular.
    csv: Option<Vec<String>>,
    pass: bool,
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn emit(report: &Report, format: Format, out: Option<&PathBuf>) -> Result<ExitCode, ExitCode> {
    let body = match format {
        Format::Json => {
            let doc = json!({
                "command": report.command,
                "parameters": report.parameters,
                "results": report.results,
                "toolchain": { "ck6": env!("CARGO_PKG_VERSION") },
            });
            serde_json::to_string_pretty(&doc).expect("serializable report") + "\n"
        }
        Format::Csv => match &report.csv {
            Some(rows) => rows.join("\n") + "\n",
            None => return Err(usage_error("CSV output is available for table reports only")),
        },
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return Err(ExitCode::from(2));
            }
        }
        None => print!("{body}"),
    }
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_dim(family: char, m: u32, n: u32) -> Report {
    let module = homology::module(family, m, n);
    let [n1, n2, n3] = module.labels;
    let expected = match family {
        'A' => weyl_dim(m.into(), n.into(), 0),
        'B' => weyl_dim(m.into(), 0, n.into()),
        _ => weyl_dim(0, m.into(), n.into()),
    };
    let pass = module.dim() as u64 == expected;
    Report {
        command: "dim",
        parameters: json!({ "family": family.to_string(), "m": m, "n": n }),
        results: json!({
            "dim": module.dim(),
            "highest_weight": { "n1": n1, "n2": n2, "n3": n3 },
            "t_scalar": module.t_scalar.to_string(),
            "weyl_dim": expected,
            "weyl_check": if pass { "pass" } else { "fail" },
        }),
        csv: Some(vec![
            "family,m,n,dim,weyl_dim,weyl_check".to_string(),
            format!("{family},{m},{n},{},{expected},{}", module.dim(), if pass { "pass" } else { "fail" }),
        ]),
        pass,
    }
}

fn cmd_singular(family: char, m: u32, n: u32, degree: u32) -> Report {
    let module = homology::module(family, m, n);
    let solutions = find_singular_vectors(&module, degree);
    let vectors: Vec<String> = solutions.iter().map(|v| v.to_string()).collect();
    Report {
        command: "singular",
        parameters: json!({ "family": family.to_string(), "m": m, "n": n, "degree": degree }),
        results: json!({ "count": solutions.len(), "vectors": vectors }),
        csv: None,
        pass: true,
    }
}

/// Expected profile entry for one quadrant position, where tabulated.
fn expected_profile(q: char, m: u32, n: u32) -> Option<&'static Vec<usize>> {
    tables::VERMA_HOMOLOGY.get(&(q, m, n))
}

fn quadrant_report(q: char, n1: u32, n2: u32, max_degree: u32) -> Report {
    let quadrant = if q == 'A' { Quadrant::A } else { Quadrant::C };
    let profile = position(quadrant, n1, n2).homology_profile(max_degree);
    let expected = expected_profile(q, n1, n2);
    let pass = match expected {
        Some(exp) => profile
            .iter()
            .enumerate()
            .all(|(d, &got)| exp.get(d).map_or(true, |&want| want == got)),
        None => true,
    };
    let rows: Vec<Value> = profile
        .iter()
        .enumerate()
        .map(|(d, &got)| {
            json!({
                "degree": d,
                "dim": got,
                "expected": expected.and_then(|e| e.get(d).copied()),
            })
        })
        .collect();
    let mut csv = vec!["degree,dim,expected".to_string()];
    csv.extend(profile.iter().enumerate().map(|(d, &got)| {
        let want = expected
            .and_then(|e| e.get(d))
            .map_or(String::new(), |w| w.to_string());
        format!("{d},{got},{want}")
    }));
    Report {
        command: "homology",
        parameters: json!({ "quadrant": q.to_string(), "n1": n1, "n2": n2, "max_degree": max_degree }),
        results: json!({ "table": rows, "match": pass }),
        csv: Some(csv),
        pass,
    }
}

fn ga_report(quadrant: QuadrantArg, n1: u32, n2: u32) -> Report {
    let (name, got, expected) = match quadrant {
        QuadrantArg::Ga => (
            "GA",
            ga::ga_homology(n1, n2),
            Some(ga::expected_ga_homology(n1, n2)),
        ),
        _ => (
            "GAcirc",
            ga::gacirc_homology(n1, n2),
            tables::GACIRC.get(&(n1, n2)).copied(),
        ),
    };
    let pass = expected.map_or(true, |want| want == got);
    Report {
        command: "homology",
        parameters: json!({ "quadrant": name, "n1": n1, "n2": n2 }),
        results: json!({ "dim": got, "expected": expected, "match": pass }),
        csv: Some(vec![
            "n1,n2,dim,expected".to_string(),
            format!("{n1},{n2},{got},{}", expected.map_or(String::new(), |w| w.to_string())),
        ]),
        pass,
    }
}

fn ga_block_report(a: i64, b: i64) -> Report {
    let expected = tables::GA_TABLE.get(&(a, b));
    let mut rows: Vec<Value> = Vec::new();
    let mut csv = vec!["n1,n2,dim,expected".to_string()];
    let mut pass = true;
    for (n1, n2) in ga::block_nodes(a, b) {
        let got = ga::ga_block_homology(a, b, n1, n2);
        let want = expected.and_then(|e| e.get(&(n1, n2)).copied());
        if want.is_some_and(|w| w != got) {
            pass = false;
        }
        rows.push(json!({ "n1": n1, "n2": n2, "dim": got, "expected": want }));
        csv.push(format!(
            "{n1},{n2},{got},{}",
            want.map_or(String::new(), |w| w.to_string())
        ));
    }
    Report {
        command: "homology",
        parameters: json!({ "quadrant": "GAab", "a": a, "b": b }),
        results: json!({ "table": rows, "match": pass }),
        csv: Some(csv),
        pass,
    }
}

fn cmd_spectral(a: i64, b: i64) -> Report {
    let k = ga::block_bicomplex(a, b);
    let pages = spectral_pages(&k, Filtration::First, 3);
    let einf = e_infinity(&k);
    let zz = zigzag_pages(&k);
    let converges = converges_to_total_homology(&k);
    let mut zigzag_match = true;
    let mut rows: Vec<Value> = Vec::new();
    let mut csv = vec!["p,q,e1,e2,e3,e_infinity".to_string()];
    for (&(p, q), _) in k.cells() {
        let (e1, e2, e3) = (pages[1][&(p, q)], pages[2][&(p, q)], pages[3][&(p, q)]);
        if zz.e1[&(p, q)] != e1 || zz.e2[&(p, q)].dim() != e2 || zz.e3[&(p, q)] != e3 {
            zigzag_match = false;
        }
        rows.push(json!({
            "p": p, "q": q, "e1": e1, "e2": e2, "e3": e3, "e_infinity": einf[&(p, q)],
        }));
        csv.push(format!("{p},{q},{e1},{e2},{e3},{}", einf[&(p, q)]));
    }
    let pass = converges && zigzag_match;
    Report {
        command: "spectral",
        parameters: json!({ "a": a, "b": b }),
        results: json!({
            "cells": rows,
            "converges": converges,
            "zigzag_match": zigzag_match,
            "stable_page": stable_page_index(&k),
        }),
        csv: Some(csv),
        pass,
    }
}

fn cmd_verify(suite: SuiteArg) -> Report {
    let (name, checks): (&str, Vec<Check>) = match suite {
        SuiteArg::Brackets => {
            let mut c = suite::bracket_laws();
            c.extend(suite::structure_constants());
            ("brackets", c)
        }
        SuiteArg::Compositions => ("compositions", suite::composition_laws()),
        SuiteArg::Primitives => ("primitives", suite::primitive_sweep()),
        SuiteArg::Spectral => ("spectral", suite::spectral_sweep()),
        SuiteArg::Torsion => ("torsion", suite::torsion_sweep()),
        SuiteArg::All => {
            let mut c = suite::bracket_laws();
            c.extend(suite::structure_constants());
            c.extend(suite::dimension_oracle());
            c.extend(suite::singular_vectors());
            c.extend(suite::classification_sweep());
            c.extend(suite::composition_laws());
            c.extend(suite::ga_table_sweep());
            c.extend(suite::gacirc_sweep());
            c.extend(suite::spectral_sweep());
            c.extend(suite::quadrant_sweep());
            c.extend(suite::torsion_sweep());
            c.extend(suite::primitive_sweep());
            ("all", c)
        }
    };
    let pass = suite::all_pass(&checks);
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "pass": c.pass,
                "detail": if c.pass { Value::Null } else { Value::String(c.detail.clone()) },
            })
        })
        .collect();
    Report {
        command: "verify",
        parameters: json!({ "suite": name }),
        results: json!({
            "checks": rows,
            "passed": checks.iter().filter(|c| c.pass).count(),
            "failed": checks.iter().filter(|c| !c.pass).count(),
        }),
        csv: None,
        pass,
    }
}

fn main() -> ExitCode {
    ck6::init_threads();
    let cli = Cli::parse();
    let start = Instant::now();
    let (report, format, out) = match cli.command {
        Command::Dim { family, m, n, format, out } => (cmd_dim(family, m, n), format, out),
        Command::Singular { family, m, n, degree, format, out } => {
            (cmd_singular(family, m, n, degree), format, out)
        }
        Command::Homology { quadrant, n1, n2, a, b, max_degree, format, out } => {
            if max_degree < 2 {
                return usage_error("--max-degree must be at least 2");
            }
            let report = match quadrant {
                QuadrantArg::A | QuadrantArg::C => match (n1, n2) {
                    (Some(n1), Some(n2)) => quadrant_report(
                        if quadrant == QuadrantArg::A { 'A' } else { 'C' },
                        n1,
                        n2,
                        max_degree,
                    ),
                    _ => return usage_error("quadrants A and C require --n1 and --n2"),
                },
                QuadrantArg::Ga | QuadrantArg::GaCirc => match (n1, n2) {
                    (Some(n1), Some(n2)) => ga_report(quadrant, n1, n2),
                    _ => return usage_error("GA and GAcirc require --n1 and --n2"),
                },
                QuadrantArg::GaBlock => match (a, b) {
                    (Some(a), Some(b)) => ga_block_report(a, b),
                    _ => return usage_error("GAab requires --a and --b"),
                },
            };
            (report, format, out)
        }
        Command::Spectral { a, b, format, out } => (cmd_spectral(a, b), format, out),
        Command::Verify { suite, format, out } => (cmd_verify(suite), format, out),
    };
    let code = match emit(&report, format, out.as_ref()) {
        Ok(code) => code,
        Err(code) => return code,
    };
    if cli.timing {
        eprintln!("timing: {} ms", start.elapsed().as_millis());
    }
    code
}
