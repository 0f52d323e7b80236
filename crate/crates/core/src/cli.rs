//! Command-line front end: formula emission, verification suites and the
//! regression table.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::chern_calc::{
    drop_c1, reduce_hom, reduced_chern_formula, reduced_chern_roots,
    sym_power_det_inverse_chern_bounded, twist, ChernVector, DEFAULT_MAX_RANK,
};
use crate::error::{Error, Result};
use crate::exact_poly::{binomial, format_rational, int, render, MPoly, Rational, Style, VarTable};
use crate::oracle::{
    check_identity, standard_rings, CheckReport, IdentityKit, IdentityTag, Instance, Status,
};
use crate::symfun::monomial_coefficients;
use crate::universal::{
    s_in_roots, solve_psi_bounded, y_roots_bounded, TriangularRow, UniversalPolys,
};

/// Directory used for report and table files when `--out` is absent.
pub const OUT_DIR_ENV: &str = "CHERNKIT_OUT_DIR";

/// Suites above this rank need `--allow-large-rank`.
pub const DEFAULT_SUITE_RANK: usize = 4;

const MIN_RANK: usize = 2;

#[derive(Debug, Parser)]
#[command(
    name = "chernkit",
    version,
    about = "Exact reduced Chern class calculator"
)]
pub struct Cli {
    /// Accept ranks outside the default range.
    #[arg(long, global = true)]
    pub allow_large_rank: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the closed form of a reduced Chern class.
    Formula {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        index: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print ψ, φ, the leading coefficients and the number of roots.
    Universal {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a verification suite and write a JSON-lines report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SUITE_RANK)]
        max_rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random toy-ring instances per identity and rank.
        #[arg(long, default_value_t = 20)]
        instances: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Write the regression table for ranks 2..=max-rank.
    Table {
        #[arg(long, default_value_t = DEFAULT_SUITE_RANK)]
        max_rank: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    FormulaAgreement,
    Twist,
    C1Zero,
    PhiRoundtrip,
    Positivity,
    Triangularity,
    ToyRings,
    All,
}

impl Suite {
    const ALL: [Suite; 7] = [
        Suite::FormulaAgreement,
        Suite::Twist,
        Suite::C1Zero,
        Suite::PhiRoundtrip,
        Suite::Positivity,
        Suite::Triangularity,
        Suite::ToyRings,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::FormulaAgreement => "formula-agreement",
            Suite::Twist => "twist",
            Suite::C1Zero => "c1-zero",
            Suite::PhiRoundtrip => "phi-roundtrip",
            Suite::Positivity => "positivity",
            Suite::Triangularity => "triangularity",
            Suite::ToyRings => "toy-rings",
            Suite::All => "all",
        }
    }

    /// Suites that expand the `N`-root products.
    fn is_heavy(self) -> bool {
        matches!(
            self,
            Suite::PhiRoundtrip
                | Suite::Positivity
                | Suite::Triangularity
                | Suite::ToyRings
                | Suite::All
        )
    }
}

/// Deliberate corruption for negative-control runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Raise one coefficient of `φ_2`.
    Phi,
    /// Raise one coefficient of the closed form of `c̄_2`.
    Formula,
}

/// Parses the process arguments, runs, and maps the outcome to an exit code:
/// 0 pass, 1 identity failure, 2 usage error, 3 I/O error.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        Error::Inconsistent(_) => 1,
        e if e.is_usage() => 2,
        _ => 1,
    }
}

/// Returns `Ok(false)` when a verification check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let bound = |heavy: bool| match (cli.allow_large_rank, heavy) {
        (true, _) => usize::MAX,
        (false, true) => DEFAULT_SUITE_RANK,
        (false, false) => DEFAULT_MAX_RANK,
    };
    match &cli.command {
        Command::Formula {
            rank,
            index,
            format,
        } => {
            check_range(*rank, bound(false))?;
            let p = reduced_chern_formula(*rank, *index)?;
            print_stdout(&emit_poly(&p, *format)?)?;
            Ok(true)
        }
        Command::Universal { rank, format } => {
            check_range(*rank, bound(false))?;
            let u = UniversalPolys::compute_bounded(*rank, *rank)?;
            print_stdout(&emit_universal(&u, *format)?)?;
            Ok(true)
        }
        Command::Verify {
            suite,
            max_rank,
            seed,
            instances,
            out,
            inject_fault,
        } => {
            check_range(*max_rank, bound(suite.is_heavy()))?;
            if *instances == 0 {
                return Err(Error::Parse("--instances must be positive".into()));
            }
            let reports = verify(*suite, *max_rank, *seed, *instances, *inject_fault)?;
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let mut body = String::new();
            for r in &reports {
                body.push_str(&serde_json::to_string(r)?);
                body.push('\n');
            }
            match resolve_out(
                out.as_deref(),
                &format!("verify-{}-r{max_rank}-s{seed}.jsonl", suite.name()),
            )? {
                Some(path) => write_file(&path, &body)?,
                None => print_stdout(&body)?,
            }
            eprintln!(
                "{}: {} checks, {} failed",
                suite.name(),
                reports.len(),
                failed
            );
            Ok(failed == 0)
        }
        Command::Table { max_rank, out } => {
            check_range(*max_rank, bound(false))?;
            let text = table_json(*max_rank)?;
            match resolve_out(out.as_deref(), &format!("table_max_rank_{max_rank}.json"))? {
                Some(path) => write_file(&path, &text)?,
                None => print_stdout(&text)?,
            }
            Ok(true)
        }
    }
}

fn check_range(n: usize, max: usize) -> Result<()> {
    if n < MIN_RANK || n > max {
        return Err(Error::RankOutOfRange {
            rank: n,
            min: MIN_RANK,
            max,
        });
    }
    Ok(())
}

fn resolve_out(out: Option<&Path>, default_name: &str) -> Result<Option<PathBuf>> {
    if let Some(p) = out {
        return Ok(Some(p.to_path_buf()));
    }
    Ok(std::env::var_os(OUT_DIR_ENV).map(|dir| PathBuf::from(dir).join(default_name)))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn print_stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn emit_poly(p: &MPoly, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => render(p, Style::Text) + "\n",
        Format::Latex => render(p, Style::Latex) + "\n",
        Format::Json => serde_json::to_string(p)? + "\n",
    })
}

pub fn emit_universal(u: &UniversalPolys, format: Format) -> Result<String> {
    let style = match format {
        Format::Json => return Ok(serde_json::to_string(u)? + "\n"),
        Format::Text => Style::Text,
        Format::Latex => Style::Latex,
    };
    let (psi, phi) = match style {
        Style::Text => ("psi_", "phi_"),
        Style::Latex => ("\\psi_", "\\phi_"),
    };
    let mut s = format!("N = {}\n", u.num_roots);
    for (k, lead) in u.lead.iter().enumerate() {
        s += &format!("lead_{} = {}\n", k + 1, format_rational(lead));
    }
    for (k, p) in u.psi.iter().enumerate() {
        s += &format!("{psi}{} = {}\n", k + 1, render(p, style));
    }
    for (k, p) in u.phi.iter().enumerate() {
        s += &format!("{phi}{} = {}\n", k + 2, render(p, style));
    }
    Ok(s)
}

#[derive(Serialize)]
struct TableEntry {
    n: usize,
    #[serde(rename = "N")]
    num_roots: usize,
    reduced: Vec<MPoly>,
    sym_power_chern: Vec<MPoly>,
    #[serde(with = "crate::exact_poly::serde_rational_vec")]
    lead: Vec<Rational>,
    rows: Vec<TriangularRow>,
    psi: Vec<MPoly>,
    phi: Vec<MPoly>,
}

#[derive(Serialize)]
struct Table {
    max_rank: usize,
    ranks: Vec<TableEntry>,
}

/// The regression table as pretty-printed canonical JSON.
pub fn table_json(max_rank: usize) -> Result<String> {
    let ranks = (MIN_RANK..=max_rank)
        .map(|n| {
            let sol = solve_psi_bounded(n, max_rank)?;
            let u = UniversalPolys::from_solution(&sol);
            Ok(TableEntry {
                n,
                num_roots: u.num_roots,
                reduced: (1..=n)
                    .map(|r| reduced_chern_formula(n, r))
                    .collect::<Result<_>>()?,
                sym_power_chern: sym_power_det_inverse_chern_bounded(n, n, max_rank)?,
                lead: u.lead,
                rows: sol.rows,
                psi: u.psi,
                phi: u.phi,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(serde_json::to_string_pretty(&Table { max_rank, ranks })? + "\n")
}

/// Runs a suite over ranks `2..=max_rank`; reports come back sorted.
pub fn verify(
    suite: Suite,
    max_rank: usize,
    seed: u64,
    instances: u64,
    fault: Option<Fault>,
) -> Result<Vec<CheckReport>> {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::ALL.to_vec()
    } else {
        vec![suite]
    };
    let ranks: Vec<usize> = (MIN_RANK..=max_rank).collect();
    let mut reports = Vec::new();
    for s in suites {
        let batch: Vec<Vec<CheckReport>> = ranks
            .par_iter()
            .map(|&n| run_suite(s, n, max_rank, seed, instances, fault))
            .collect::<Result<_>>()?;
        reports.extend(batch.into_iter().flatten());
    }
    reports.sort_by(|a, b| {
        (&a.identity, a.rank, &a.ring, a.seed).cmp(&(&b.identity, b.rank, &b.ring, b.seed))
    });
    Ok(reports)
}

const UNIVERSAL_RING: &str = "universal";

fn report(identity: String, rank: usize, seed: u64, witness: Option<MPoly>) -> CheckReport {
    CheckReport {
        identity,
        ring: UNIVERSAL_RING.to_string(),
        rank,
        seed,
        status: if witness.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        witness,
    }
}

/// First nonzero graded component of `lhs − rhs`.
fn difference(lhs: &MPoly, rhs: &MPoly) -> Option<MPoly> {
    (lhs - rhs)
        .graded_components()
        .into_iter()
        .next()
        .map(|(_, p)| p)
}

fn reduced_for(n: usize, r: usize, fault: Option<Fault>) -> Result<MPoly> {
    let p = reduced_chern_formula(n, r)?;
    Ok(if fault == Some(Fault::Formula) && r == 2 {
        bump_first(&p)
    } else {
        p
    })
}

fn bump_first(p: &MPoly) -> MPoly {
    let target = p.graded_terms()[0].0.clone();
    p.map_coeffs(|e, c| if *e == target { c + int(1) } else { c.clone() })
}

fn run_suite(
    suite: Suite,
    n: usize,
    max_rank: usize,
    seed: u64,
    instances: u64,
    fault: Option<Fault>,
) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    match suite {
        Suite::FormulaAgreement => {
            for r in 1..=n {
                let w = difference(&reduced_for(n, r, fault)?, &reduced_chern_roots(n, r)?);
                out.push(report(format!("formula-agreement/c{r}"), n, seed, w));
            }
        }
        Suite::Twist => {
            let free = ChernVector::free(n);
            let moved = twist(&free, "t")?;
            let target = moved.vars().clone();
            for r in 1..=n {
                let formula = reduced_for(n, r, fault)?;
                let lhs = formula.substitute(moved.classes(), &target)?;
                let w = difference(&lhs, &formula.embed(&target)?);
                out.push(report(format!("twist-invariance/c{r}"), n, seed, w));
            }
        }
        Suite::C1Zero => {
            let free = ChernVector::free(n);
            for r in 1..=n {
                let expected = if r == 1 {
                    MPoly::zero(free.vars())
                } else {
                    free.class(r)
                };
                let w = difference(&drop_c1(&reduced_for(n, r, fault)?), &expected);
                out.push(report(format!("c1-zero/c{r}"), n, seed, w));
            }
            // reduce_hom fixes c_1 ↦ 0 and is idempotent
            for r in 1..=n {
                let formula = reduced_for(n, r, fault)?;
                let w = difference(&reduce_hom(&free.class(r))?, &formula)
                    .or(difference(&reduce_hom(&formula)?, &formula));
                out.push(report(format!("reduce-hom/c{r}"), n, seed, w));
            }
        }
        Suite::PhiRoundtrip => {
            let kit = kit_for(n, max_rank, fault)?;
            let c = VarTable::chern(n);
            let pushforward = &kit.sym_power[1..];
            let one = MPoly::one(&c);
            for (k, phi) in kit.phi.iter().enumerate() {
                let lhs = phi.eval(pushforward, &one);
                let w = difference(&lhs, &kit.reduced[k + 1]);
                out.push(report(format!("phi-roundtrip/c{}", k + 2), n, seed, w));
            }
            let w = difference(&kit.sym_power[0], &MPoly::zero(&c));
            out.push(report("c1F-zero".into(), n, seed, w));
        }
        Suite::Positivity => {
            for (k, s) in s_in_roots(n, n, max_rank)?.iter().enumerate() {
                // witness: the terms of s carrying negative coefficients
                let w = (!monomial_coefficients(s)?.is_nonnegative())
                    .then(|| s.filter_terms(|e| s.coeff(e).is_negative()));
                out.push(report(format!("positivity/s{}", k + 1), n, seed, w));
            }
        }
        Suite::Triangularity => {
            let expected = binomial(2 * n as u64 - 1, n as u64);
            let count = y_roots_bounded(n, max_rank)?.len();
            let count_ok = BigInt::from(count) == expected;
            out.push(report(
                "root-count".into(),
                n,
                seed,
                (!count_ok).then(|| MPoly::constant(&VarTable::empty(), int(count as i64))),
            ));
            match solve_psi_bounded(n, max_rank) {
                Ok(sol) => {
                    let lead_ok = sol.rows[0].lead == Rational::from(expected);
                    let w = (!lead_ok)
                        .then(|| MPoly::constant(&VarTable::empty(), sol.rows[0].lead.clone()));
                    out.push(report("lead-1".into(), n, seed, w));
                    out.push(report("triangular-solve".into(), n, seed, None));
                }
                Err(Error::Inconsistent(msg)) => {
                    eprintln!("rank {n}: {msg}");
                    out.push(report(
                        "triangular-solve".into(),
                        n,
                        seed,
                        Some(MPoly::one(&VarTable::empty())),
                    ));
                }
                Err(e) => return Err(e),
            }
        }
        Suite::ToyRings => {
            let kit = kit_for(n, max_rank, fault)?;
            let rings = standard_rings();
            for tag in IdentityTag::ALL {
                for k in 0..instances {
                    let ring = &rings[(k as usize) % rings.len()];
                    let inst = Instance::random(ring, n, seed.wrapping_add(k))?;
                    out.push(check_identity(tag, &kit, &inst)?);
                }
            }
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
    Ok(out)
}

fn kit_for(n: usize, max_rank: usize, fault: Option<Fault>) -> Result<IdentityKit> {
    let kit = IdentityKit::build_bounded(n, max_rank)?;
    Ok(match fault {
        Some(Fault::Phi) => kit.with_phi_bumped(2, 0),
        Some(Fault::Formula) => kit.with_reduced_bumped(2, 0),
        None => kit,
    })
}
