//! Command-line front end: argument definitions and command handlers.
//!
//! Handlers write to a caller-supplied sink and return the process exit code:
//! 0 success, 1 domain rejection, 2 usage or I/O error, 3 verification mismatch.

pub mod verify;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use paley_core::census::{count_k4_brute, count_triangles_brute, k3_formula, k4_formula};
use paley_core::characters::{jacobi_k, jacobi_sum};
use paley_core::export::{write_graph, ExportFormat};
use paley_core::properties::{
    decomposition_report, degree_profile, is_complete, is_connected, is_cycle,
    self_complementary_edge_test,
};
use paley_core::residue::{factorize, inadmissibility_reason, sqrt_of_minus_one};
use paley_core::{CharacterFamily, Graph, PrimePowerModulus};

use crate::verify::{run_sweep, SweepParams};

pub const EXIT_OK: u8 = 0;
pub const EXIT_REJECTED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

/// Largest p^α `jacobi` will tabulate.
const JACOBI_TABLE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "paley",
    version,
    about = "Paley-type graphs on Z_n and their clique counts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Brute,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    EdgeList,
    Dot,
    Json,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::EdgeList => ExportFormat::EdgeList,
            Format::Dot => ExportFormat::Dot,
            Format::Json => ExportFormat::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether G_n is defined and print a square root of -1.
    Check {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Structural properties of G_n.
    Props { n: u64 },
    /// Count triangles or 4-cliques in G_n.
    Count {
        n: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
        order: u8,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// The Jacobi sum J(psi, chi) modulo p^alpha.
    Jacobi {
        p: u64,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        alpha: u32,
    },
    /// Run the verification sweep.
    Verify {
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_prime: Option<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1", value_parser = clap::value_parser!(u32).range(1..))]
        alphas: Vec<u32>,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Write G_n as an edge list, DOT or JSON.
    Export {
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::EdgeList)]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn format_factorization(n: u64) -> String {
    let factors = factorize(n);
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" · ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Prints the rejection for inadmissible n and returns false.
fn require_admissible(n: u64, out: &mut dyn Write) -> io::Result<bool> {
    if n < 3 {
        writeln!(out, "excluded (n must be ≥ 3)")?;
        return Ok(false);
    }
    if let Some(reason) = inadmissibility_reason(n) {
        writeln!(out, "inadmissible ({reason})")?;
        return Ok(false);
    }
    Ok(true)
}

fn cmd_check(n: u64, out: &mut dyn Write) -> io::Result<u8> {
    if !require_admissible(n, out)? {
        writeln!(out, "factorization: {}", format_factorization(n))?;
        return Ok(EXIT_REJECTED);
    }
    let x = sqrt_of_minus_one(n).expect("admissible n has a root of -1");
    writeln!(out, "admissible, x={x}")?;
    writeln!(out, "factorization: {}", format_factorization(n))?;
    Ok(EXIT_OK)
}

fn cmd_props(n: u64, out: &mut dyn Write) -> io::Result<u8> {
    if !require_admissible(n, out)? {
        return Ok(EXIT_REJECTED);
    }
    let g = Graph::paley(n).expect("admissible");
    let (lo, hi) = degree_profile(&g);
    writeln!(out, "n: {n}")?;
    if lo == hi {
        writeln!(out, "degree: {lo}")?;
    } else {
        writeln!(out, "degree: {lo}..{hi}")?;
    }
    writeln!(out, "edges: {}", g.edge_count())?;
    writeln!(out, "connected: {}", yes_no(is_connected(&g)))?;
    writeln!(out, "complete: {}", yes_no(is_complete(&g)))?;
    writeln!(out, "cycle: {}", yes_no(is_cycle(&g)))?;
    let sc = self_complementary_edge_test(n).expect("admissible");
    writeln!(out, "self-complementary edge count: {}", yes_no(sc))?;
    if let Ok(m) = PrimePowerModulus::from_n(n) {
        let r = decomposition_report(m.p(), m.alpha()).expect("valid prime power");
        writeln!(
            out,
            "decomposition: {} blocks of G({}), {} block edges, {} star edges, checks {}",
            r.block_count,
            r.p,
            r.intra_block_edges,
            r.inter_block_edges,
            if r.passes() { "pass" } else { "FAIL" }
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_count(n: u64, order: u8, method: Method, out: &mut dyn Write) -> io::Result<u8> {
    if !require_admissible(n, out)? {
        return Ok(EXIT_REJECTED);
    }
    let prime_power = PrimePowerModulus::from_n(n).ok();
    let formula = match (method, prime_power) {
        (Method::Brute, _) => None,
        (Method::Formula, None) => {
            writeln!(
                out,
                "no closed formula for n = {n} (needs an odd prime power)"
            )?;
            return Ok(EXIT_REJECTED);
        }
        (Method::Both, None) => {
            writeln!(out, "formula: none (no closed formula)")?;
            None
        }
        (_, Some(m)) => {
            let v = if order == 3 {
                k3_formula(m.p(), m.alpha())
            } else {
                k4_formula(m.p(), m.alpha())
            };
            match v {
                Ok(v) => {
                    writeln!(out, "formula: {v}")?;
                    Some(v)
                }
                Err(e) => {
                    writeln!(out, "formula error: {e}")?;
                    return Ok(EXIT_MISMATCH);
                }
            }
        }
    };
    if method == Method::Formula {
        return Ok(EXIT_OK);
    }
    let g = Graph::paley(n).expect("admissible");
    let brute = if order == 3 {
        count_triangles_brute(&g)
    } else {
        count_k4_brute(&g)
    };
    writeln!(out, "brute: {brute}")?;
    match formula {
        Some(f) if f != brute => {
            writeln!(out, "MISMATCH")?;
            Ok(EXIT_MISMATCH)
        }
        _ => Ok(EXIT_OK),
    }
}

fn cmd_jacobi(p: u64, alpha: u32, out: &mut dyn Write) -> io::Result<u8> {
    if p.checked_pow(alpha).is_none_or(|n| n > JACOBI_TABLE_LIMIT) {
        writeln!(out, "p^alpha exceeds {JACOBI_TABLE_LIMIT}")?;
        return Ok(EXIT_REJECTED);
    }
    let fam = match PrimePowerModulus::new(p, alpha).and_then(|m| CharacterFamily::new(&m)) {
        Ok(f) => f,
        Err(e) => {
            writeln!(out, "{e}")?;
            return Ok(EXIT_REJECTED);
        }
    };
    let j = jacobi_sum(&fam.quartic, &fam.quadratic).expect("same modulus");
    writeln!(out, "J(psi,chi) = {j}")?;
    writeln!(out, "norm = {}", j.norm())?;
    writeln!(out, "K = {}", jacobi_k(j))?;
    Ok(EXIT_OK)
}

fn cmd_verify(params: SweepParams, json: bool, out: &mut dyn Write) -> io::Result<u8> {
    let report = run_sweep(&params);
    if json {
        serde_json::to_writer(&mut *out, &report)?;
        writeln!(out)?;
    } else {
        out.write_all(report.render_text().as_bytes())?;
    }
    Ok(if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn cmd_export(
    n: u64,
    format: Format,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> io::Result<u8> {
    if !require_admissible(n, out)? {
        return Ok(EXIT_REJECTED);
    }
    let g = Graph::paley(n).expect("admissible");
    match path {
        None => {
            write_graph(&g, format.into(), out)?;
        }
        Some(path) => {
            let mut buf = Vec::new();
            write_graph(&g, format.into(), &mut buf)?;
            if let Err(e) = File::create(&path).and_then(|mut f| f.write_all(&buf)) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return Ok(EXIT_USAGE);
            }
            writeln!(out, "wrote {} bytes to {}", buf.len(), path.display())?;
        }
    }
    Ok(EXIT_OK)
}

/// Runs one parsed command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Check { n } => cmd_check(n, out),
        Command::Props { n } => cmd_props(n, out),
        Command::Count { n, order, method } => cmd_count(n, order, method, out),
        Command::Jacobi { p, alpha } => cmd_jacobi(p, alpha, out),
        Command::Verify {
            max_n,
            max_prime,
            alphas,
            json,
        } => cmd_verify(
            SweepParams {
                max_n,
                max_prime,
                alphas,
            },
            json,
            out,
        ),
        Command::Export {
            n,
            format,
            out: path,
        } => cmd_export(n, format, path, out),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("paley").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let code = run(cli, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn check_outputs() {
        let (code, out) = run_args(&["check", "10"]);
        assert_eq!(code, 0);
        assert!(out.contains("admissible, x=3"), "{out}");
        assert!(out.contains("factorization: 2 · 5"));

        let (code, out) = run_args(&["check", "21"]);
        assert_eq!(code, 1);
        assert!(out.contains("inadmissible (prime 3 ≡ 3 mod 4)"), "{out}");

        let (code, out) = run_args(&["check", "1"]);
        assert_eq!(code, 1);
        assert!(out.contains("excluded (n must be ≥ 3)"));
    }

    #[test]
    fn check_rejects_zero() {
        assert!(Cli::try_parse_from(["paley", "check", "0"]).is_err());
        assert!(Cli::try_parse_from(["paley", "check", "ten"]).is_err());
        assert!(Cli::try_parse_from(["paley", "verify", "--max-n", "0"]).is_err());
        assert!(Cli::try_parse_from(["paley", "verify", "--alphas", "1,0"]).is_err());
    }

    #[test]
    fn props_outputs() {
        let (code, out) = run_args(&["props", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains("degree: 2\nedges: 5\nconnected: yes"), "{out}");
        assert!(out.contains("cycle: yes"));

        let (_, out) = run_args(&["props", "65"]);
        assert!(out.contains("degree: 12\nedges: 390"), "{out}");
        assert!(out.contains("cycle: no"));
        assert!(out.contains("self-complementary edge count: no"));
        assert!(!out.contains("decomposition"));

        let (_, out) = run_args(&["props", "25"]);
        assert!(out.contains("degree: 10\nedges: 125"), "{out}");
        assert!(out.contains(
            "decomposition: 5 blocks of G(5), 25 block edges, 100 star edges, checks pass"
        ));

        assert_eq!(run_args(&["props", "21"]).0, 1);
    }

    #[test]
    fn count_outputs() {
        let (code, out) = run_args(&["count", "13", "--order", "3", "--method", "both"]);
        assert_eq!((code, out.as_str()), (0, "formula: 26\nbrute: 26\n"));

        let (code, out) = run_args(&["count", "29", "--order", "4", "--method", "both"]);
        assert_eq!((code, out.as_str()), (0, "formula: 203\nbrute: 203\n"));

        let (code, out) = run_args(&["count", "65", "--order", "3", "--method", "formula"]);
        assert_eq!(code, 1);
        assert!(out.contains("no closed formula"));

        let (code, out) = run_args(&["count", "65", "--order", "3", "--method", "both"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("formula: none (no closed formula)\nbrute: "));

        assert!(Cli::try_parse_from(["paley", "count", "13", "--order", "5"]).is_err());
    }

    #[test]
    fn jacobi_outputs() {
        let (code, out) = run_args(&["jacobi", "13", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("norm = 13\nK = 10"), "{out}");

        let (code, out) = run_args(&["jacobi", "5", "2"]);
        assert_eq!(code, 0);
        assert!(
            out.contains("J(psi,chi) = 5+10i\nnorm = 125\nK = -150"),
            "{out}"
        );

        assert_eq!(run_args(&["jacobi", "7", "1"]).0, 1);
    }

    #[test]
    fn export_to_stdout() {
        let (code, out) = run_args(&["export", "5", "--format", "edge-list"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5);
        let (_, out) = run_args(&["export", "13", "--format", "dot"]);
        assert_eq!(out.matches(" -- ").count(), 39);
    }

    #[test]
    fn verify_json_schema() {
        let (code, out) = run_args(&["verify", "--max-n", "12", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let checks = v["checks"].as_array().unwrap();
        assert!(checks
            .iter()
            .any(|c| c["name"] == "admissible(10)" && c["pass"] == true));
        for key in ["name", "params", "pass", "expected", "actual"] {
            assert!(checks[0].get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["summary"]["fail"], 0);
    }
}
