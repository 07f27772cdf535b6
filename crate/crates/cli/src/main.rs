//! `autfn`: torsion audits, triviality verdicts and Smith-type checks.
//!
//! Reports go to standard output, diagnostics to standard error. Exit status
//! is 0 when every check holds, 1 when a check fails and 2 on usage or input
//! errors.

use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use autfn_core::audit::{audit_torsion, AUDIT_CAP};
use autfn_core::aut::cap_from_env;
use autfn_core::complex::action::GROUP_CAP;
use autfn_core::complex::smith::{
    borel_check, effective_rank_bound_check, fixed_split_chi, fixed_vertices, free_quotient_chi,
    strata_chi,
};
use autfn_core::complex::{io, ComplexError, EquivariantComplex};
use autfn_core::manifold::{ChiDescriptor, ManifoldExpr};
use autfn_core::obstruction::{rank_bound, verdict_table, ActionMode, OddRankRules};
use autfn_core::report::{self, Format, Table};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "autfn",
    version,
    about = "Torsion in SAut(F_n) and obstructions to its actions on manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the finite torsion subgroups and check their orders and relations.
    GroupAudit {
        #[command(flatten)]
        ranks: Ranks,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether every action of SAut(F_n) on a manifold is forced to be trivial.
    Obstruct {
        #[arg(long)]
        manifold: String,
        #[command(flatten)]
        ranks: Ranks,
        /// Whether the odd-n refinements are consulted.
        #[arg(long, visible_alias = "remark29", value_enum, default_value_t = OddRules::Strict)]
        odd_rank_rules: OddRules,
        #[command(flatten)]
        out: Output,
    },
    /// Upper bound on the p-rank of the homeomorphism group of a manifold.
    RankBound {
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Mode::General)]
        mode: Mode,
        #[command(flatten)]
        out: Output,
    },
    /// Compactly supported Euler characteristics of the stabilizer strata.
    Strata {
        #[command(flatten)]
        input: ComplexInput,
        #[command(flatten)]
        out: Output,
    },
    /// Borel's dimension formula at fixed basepoints of an elementary abelian action.
    Borel {
        #[command(flatten)]
        input: ComplexInput,
        /// Fixed vertex to use; all fixed vertices when omitted.
        #[arg(long)]
        basepoint: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Euler characteristic of the orbit space of a free action and the fixed-point split.
    Quotient {
        #[command(flatten)]
        input: ComplexInput,
        #[command(flatten)]
        out: Output,
    },
    /// Rank inequalities for an effective elementary abelian action.
    RankCheck {
        #[command(flatten)]
        input: ComplexInput,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Ranks {
    #[arg(long)]
    n: Option<u64>,
    /// Inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<RangeInclusive<u64>>,
}

impl Ranks {
    fn range(&self) -> RangeInclusive<u64> {
        match (&self.n, &self.n_range) {
            (Some(n), _) => *n..=*n,
            (None, Some(r)) => r.clone(),
            (None, None) => unreachable!("clap requires one of --n, --n-range"),
        }
    }
}

#[derive(Debug, Args)]
struct ComplexInput {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    action: PathBuf,
    #[arg(long)]
    orientation: Option<PathBuf>,
    /// Expected prime; rejected if the group order is not a power of it.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, default_value = "tsv")]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OddRules {
    Strict,
    Off,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    General,
    OrientationPreserving,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound {a:?}"))?;
    let b: u64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound {b:?}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// Bad arguments or input files.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Rendered output plus whether every check in it holds.
struct Run {
    text: String,
    holds: bool,
}

impl Run {
    fn new() -> Self {
        Run {
            text: String::new(),
            holds: true,
        }
    }

    fn add(&mut self, table: Table, format: Format, holds: bool) {
        self.text.push_str(&table.render(format));
        self.holds &= holds;
    }
}

fn descriptor(expr: &str) -> Result<ChiDescriptor, Failure> {
    Ok(ManifoldExpr::parse(expr)?.evaluate()?)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load(input: &ComplexInput) -> Result<EquivariantComplex, Failure> {
    let mut k = io::parse_complex(&read(&input.complex)?)?;
    if let Some(o) = &input.orientation {
        k = k.with_orientation(&io::parse_orientation(&read(o)?)?)?;
    }
    let gens = io::parse_action(&read(&input.action)?)?;
    let e = EquivariantComplex::with_cap(k, gens, cap_from_env().unwrap_or(GROUP_CAP))?;
    if let Some(p) = input.p {
        match e.p_group_order() {
            Some((q, _)) if q == p => {}
            _ => {
                return Err(Failure(format!(
                    "group of order {} is not a {p}-group",
                    e.order()
                )))
            }
        }
    }
    Ok(e)
}

fn run(command: Command) -> Result<Run, Failure> {
    let mut out = Run::new();
    match command {
        Command::GroupAudit { ranks, out: o } => {
            let cap = cap_from_env().unwrap_or(AUDIT_CAP);
            let mut table: Option<Table> = None;
            let mut holds = true;
            for n in ranks.range() {
                let r = audit_torsion(n as usize, cap)?;
                holds &= r.all_pass();
                let t = report::audit_table(&r);
                match &mut table {
                    Some(all) => all.rows.extend(t.rows),
                    None => table = Some(t),
                }
            }
            out.add(table.expect("nonempty range"), o.format, holds);
        }
        Command::Obstruct {
            manifold,
            ranks,
            odd_rank_rules,
            out: o,
        } => {
            let d = descriptor(&manifold)?;
            let rules = match odd_rank_rules {
                OddRules::Strict => OddRankRules::Strict,
                OddRules::Off => OddRankRules::Off,
            };
            let v = verdict_table(&d, ranks.range(), rules)?;
            out.add(report::verdicts_table(&v), o.format, true);
        }
        Command::RankBound {
            manifold,
            p,
            mode,
            out: o,
        } => {
            let mode = match mode {
                Mode::General => ActionMode::General,
                Mode::OrientationPreserving => ActionMode::OrientationPreserving,
            };
            let b = rank_bound(&descriptor(&manifold)?, p, mode)?;
            out.add(report::rank_bound_table(&[b]), o.format, true);
        }
        Command::Strata { input, out: o } => {
            let r = strata_chi(&load(&input)?)?;
            out.add(report::strata_table(&r), o.format, r.holds);
        }
        Command::Borel {
            input,
            basepoint,
            out: o,
        } => {
            let e = load(&input)?;
            let points = match basepoint {
                Some(v) => vec![v],
                None => fixed_vertices(&e),
            };
            if points.is_empty() {
                return Err(Failure("the group fixes no vertex".into()));
            }
            let reports = points
                .into_iter()
                .map(|v| borel_check(&e, v))
                .collect::<Result<Vec<_>, _>>()?;
            let holds = reports.iter().all(|r| r.holds);
            out.add(report::borel_table(&reports), o.format, holds);
        }
        Command::Quotient { input, out: o } => {
            let e = load(&input)?;
            let mut any = false;
            match free_quotient_chi(&e) {
                Ok(r) => {
                    out.add(report::quotient_table(&r), o.format, r.holds);
                    any = true;
                }
                Err(ComplexError::NotFree) => {}
                Err(err) => return Err(err.into()),
            }
            match fixed_split_chi(&e) {
                Ok(r) => {
                    out.add(report::fixed_split_table(&r), o.format, r.holds);
                    any = true;
                }
                Err(ComplexError::NotCyclicPrime { .. }) => {}
                Err(err) => return Err(err.into()),
            }
            if !any {
                return Err(Failure("action is neither free nor of prime order".into()));
            }
        }
        Command::RankCheck { input, out: o } => {
            let r = effective_rank_bound_check(&load(&input)?)?;
            out.add(report::rank_check_table(&r), o.format, r.holds);
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(r) => {
            print!("{}", r.text);
            if r.holds {
                ExitCode::SUCCESS
            } else {
                eprintln!("autfn: a check failed");
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("autfn: {msg}");
            ExitCode::from(2)
        }
    }
}
