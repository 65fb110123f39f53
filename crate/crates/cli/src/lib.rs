//! Command-line front end for `pellcf-core`.
//!
//! [`run`] parses arguments, dispatches to the solvers and returns the exit
//! code together with the text written to stdout and stderr. The binary is
//! a thin wrapper around it.
//!
//! Exit codes: 0 success or solvable, 1 no solutions, 2 domain error,
//! 64 usage error.

pub mod record;

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use pellcf_core::oracle::{oracle_ab, oracle_legendre, oracle_pell_general, oracle_thue};
use pellcf_core::{
    enumerate_family, expand_sqrt, solve_ab, solve_pell, solve_pell_general, AbVerdict, BigInt,
    BigUint, Error, Hit, NoSolutionReason, SearchReport, Solution, SurdExpansion,
};

pub use record::{OutputRecord, Payload, SCHEMA_VERSION};
use record::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTIONS: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "pellcf", version, about = "Continued fractions of sqrt(d) and the equations they solve")]
struct Cli {
    /// Emit a versioned JSON record instead of text tables
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expansion of sqrt(d): period, complete quotients, convergents
    Cf {
        #[arg(value_parser = parse_natural)]
        d: BigUint,
        /// Number of convergents to print (default: one period)
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Solutions of x^2 - d y^2 = 1
    Pell {
        #[arg(value_parser = parse_natural)]
        d: BigUint,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Solutions of x^2 - d y^2 = m for 1 <= |m| < sqrt(d)
    #[command(allow_negative_numbers = true)]
    Pellgen {
        #[arg(value_parser = parse_natural)]
        d: BigUint,
        /// May be written as `-3`, `m=-3`, or after `--`
        #[arg(value_parser = parse_m)]
        m: BigInt,
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Include (sqrt(m), 0) when m is a square
        #[arg(long)]
        trivial: bool,
        /// Include solutions with gcd(x, y) > 1
        #[arg(long)]
        imprimitive: bool,
    },
    /// Solutions of a x^2 - b y^2 = 1 (or = -1 with --neg)
    Ab {
        #[arg(value_parser = parse_natural)]
        a: BigUint,
        #[arg(value_parser = parse_natural)]
        b: BigUint,
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Solve a x^2 - b y^2 = -1 instead
        #[arg(long)]
        neg: bool,
    },
    /// Bounded brute-force searches
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// x^2 - d y^2 = m with 0 <= y <= bound
    #[command(allow_negative_numbers = true)]
    Pellgen {
        d: u64,
        #[arg(value_parser = parse_m_i64)]
        m: i64,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    /// a x^2 - b y^2 = 1 with 1 <= x <= bound
    Ab {
        a: u64,
        b: u64,
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
    /// a x^n - b y^n = 1 with |x| <= bound
    #[command(allow_negative_numbers = true)]
    Thue {
        a: i64,
        b: i64,
        n: u32,
        #[arg(long, default_value_t = 1_000)]
        bound: u64,
    },
    /// Fractions p/q with |sqrt(d) - p/q| < 1/(2q^2) and q <= bound
    Legendre {
        d: u64,
        #[arg(long, default_value_t = 200)]
        bound: u64,
    },
}

fn parse_natural(s: &str) -> Result<BigUint, String> {
    BigUint::from_str(s).map_err(|_| format!("`{s}` is not a natural number"))
}

fn parse_m(s: &str) -> Result<BigInt, String> {
    let t = s.strip_prefix("m=").unwrap_or(s);
    BigInt::from_str(t).map_err(|_| format!("`{s}` is not an integer"))
}

fn parse_m_i64(s: &str) -> Result<i64, String> {
    let t = s.strip_prefix("m=").unwrap_or(s);
    t.parse().map_err(|_| format!("`{s}` is not a 64-bit integer"))
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome { code, stdout, stderr };
        }
    };
    let (record, code) = dispatch(&cli.command);
    let mut stderr = String::new();
    if let Payload::Error(err) = &record.result {
        writeln!(stderr, "error: {}", err.message).unwrap();
    }
    let stdout = if cli.json {
        record.to_json()
    } else {
        render_text(&record)
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

fn dispatch(command: &Command) -> (OutputRecord, i32) {
    match command {
        Command::Cf { d, terms } => {
            let inputs = [("d", d.to_string()), ("terms", opt(terms))];
            finish("cf", &inputs, cmd_cf(d, *terms).map(|p| (p, EXIT_OK)))
        }
        Command::Pell { d, count } => {
            let inputs = [("d", d.to_string()), ("count", count.to_string())];
            finish("pell", &inputs, cmd_pell(d, *count).map(|p| (p, EXIT_OK)))
        }
        Command::Pellgen {
            d,
            m,
            count,
            trivial,
            imprimitive,
        } => {
            let inputs = [
                ("d", d.to_string()),
                ("m", m.to_string()),
                ("count", count.to_string()),
                ("trivial", trivial.to_string()),
                ("imprimitive", imprimitive.to_string()),
            ];
            finish("pellgen", &inputs, cmd_pellgen(d, m, *count, *trivial, *imprimitive))
        }
        Command::Ab { a, b, count, neg } => {
            let inputs = [
                ("a", a.to_string()),
                ("b", b.to_string()),
                ("count", count.to_string()),
                ("neg", neg.to_string()),
            ];
            finish("ab", &inputs, cmd_ab(a, b, *count, *neg))
        }
        Command::Oracle(o) => {
            let (name, inputs, report) = match o {
                OracleCommand::Pellgen { d, m, bound } => (
                    "oracle pellgen",
                    vec![("d", d.to_string()), ("m", m.to_string()), ("bound", bound.to_string())],
                    oracle_pell_general(*d, *m, *bound),
                ),
                OracleCommand::Ab { a, b, bound } => (
                    "oracle ab",
                    vec![("a", a.to_string()), ("b", b.to_string()), ("bound", bound.to_string())],
                    oracle_ab(*a, *b, *bound),
                ),
                OracleCommand::Thue { a, b, n, bound } => (
                    "oracle thue",
                    vec![
                        ("a", a.to_string()),
                        ("b", b.to_string()),
                        ("n", n.to_string()),
                        ("bound", bound.to_string()),
                    ],
                    oracle_thue(*a, *b, *n, *bound),
                ),
                OracleCommand::Legendre { d, bound } => (
                    "oracle legendre",
                    vec![("d", d.to_string()), ("bound", bound.to_string())],
                    oracle_legendre(*d, *bound),
                ),
            };
            let kind = o.kind();
            finish(name, &inputs, report.map(|r| (report_payload(&r, kind), EXIT_OK)))
        }
    }
}

#[derive(Clone, Copy)]
enum OracleKind {
    Pell,
    Ab,
    Thue,
    Legendre,
}

impl OracleCommand {
    fn kind(&self) -> OracleKind {
        match self {
            OracleCommand::Pellgen { .. } => OracleKind::Pell,
            OracleCommand::Ab { .. } => OracleKind::Ab,
            OracleCommand::Thue { .. } => OracleKind::Thue,
            OracleCommand::Legendre { .. } => OracleKind::Legendre,
        }
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "default".to_string(), T::to_string)
}

fn finish(
    command: &str,
    inputs: &[(&str, String)],
    result: pellcf_core::Result<(Payload, i32)>,
) -> (OutputRecord, i32) {
    match result {
        Ok((payload, code)) => (OutputRecord::new(command, inputs, payload), code),
        Err(e) => {
            let payload = Payload::Error(ErrorOut {
                error: error_name(&e).to_string(),
                message: e.to_string(),
            });
            (OutputRecord::new(command, inputs, payload), EXIT_DOMAIN)
        }
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::PerfectSquare { .. } => "PerfectSquare",
        Error::InternalPeriodOverflow { .. } => "InternalPeriodOverflow",
        Error::NormalizationRequired { .. } => "NormalizationRequired",
        Error::ZeroDenominator => "ZeroDenominator",
        Error::NotReduced => "NotReduced",
        Error::MagnitudeOutOfRange { .. } => "MagnitudeOutOfRange",
        Error::NotCoprime { .. } => "NotCoprime",
        Error::NotSolvable => "NotSolvable",
        Error::InternalDivisibility { .. } => "InternalDivisibility",
        Error::NotASolution { .. } => "NotASolution",
        Error::InvalidArgument(_) => "InvalidArgument",
        Error::SearchOverflow => "SearchOverflow",
    }
}

fn pair(s: &Solution) -> Pair {
    Pair {
        x: s.x().to_string(),
        y: s.y().to_string(),
    }
}

fn hit_pair(h: &Hit) -> Pair {
    Pair {
        x: h.x.to_string(),
        y: h.y.to_string(),
    }
}

fn cmd_cf(d: &BigUint, terms: Option<usize>) -> pellcf_core::Result<Payload> {
    let e = expand_sqrt(d.clone())?;
    let t = e.period_len();
    let terms = terms.unwrap_or(t as usize);
    let quotients = (1..=t)
        .map(|n| {
            let (u, v) = e.uv_at(n);
            QuotientRow {
                n,
                a: e.partial_quotient(n).to_string(),
                u: u.to_string(),
                v: v.to_string(),
            }
        })
        .collect();
    let convergents = e
        .convergents()
        .take(terms)
        .map(|c| ConvergentRow {
            n: c.index as u64,
            norm: c.pell_value(d).to_string(),
            p: c.p.to_string(),
            q: c.q.to_string(),
        })
        .collect();
    Ok(Payload::Expansion(ExpansionOut {
        d: d.to_string(),
        a0: e.a0().to_string(),
        period_length: t,
        period: e.period().iter().map(ToString::to_string).collect(),
        quotients,
        convergents,
    }))
}

fn fundamental_index(e: &SurdExpansion) -> u64 {
    let t = e.period_len();
    if t.is_multiple_of(2) {
        t - 1
    } else {
        2 * t - 1
    }
}

fn cmd_pell(d: &BigUint, count: usize) -> pellcf_core::Result<Payload> {
    let (fund, family) = solve_pell(d.clone())?;
    let solutions = enumerate_family(&family, count, false, false);
    Ok(Payload::Pell(PellOut {
        d: d.to_string(),
        period_length: family.expansion().period_len(),
        fundamental_index: fundamental_index(family.expansion()),
        fundamental: pair(&fund),
        solutions: solutions.iter().map(pair).collect(),
    }))
}

fn cmd_pellgen(
    d: &BigUint,
    m: &BigInt,
    count: usize,
    trivial: bool,
    imprimitive: bool,
) -> pellcf_core::Result<(Payload, i32)> {
    let f = solve_pell_general(d.clone(), m.clone())?;
    let solvable = f.solutions(true, true).next().is_some();
    let solutions = enumerate_family(&f, count, trivial, imprimitive);
    let (e_m, e_neg_m) = f.residue_sets();
    let payload = Payload::PellGeneral(PellGeneralOut {
        d: d.to_string(),
        m: m.to_string(),
        period_length: f.expansion().period_len(),
        e_m: e_m.to_vec(),
        e_neg_m: e_neg_m.to_vec(),
        branches: f
            .branches()
            .iter()
            .map(|b| BranchOut {
                start: b.start,
                stride: b.stride,
            })
            .collect(),
        trivial: f.trivial().map(pair),
        obstruction: f.obstruction().map(ToString::to_string),
        solvable,
        solutions: solutions.iter().map(pair).collect(),
    });
    let code = if solvable { EXIT_OK } else { EXIT_NO_SOLUTIONS };
    Ok((payload, code))
}

fn cmd_ab(a: &BigUint, b: &BigUint, count: usize, neg: bool) -> pellcf_core::Result<(Payload, i32)> {
    // a x² − b y² = −1 is b y² − a x² = 1 with the roles swapped
    let (sa, sb) = if neg { (b, a) } else { (a, b) };
    let verdict = solve_ab(sa.clone(), sb.clone())?;
    let mut solutions = Vec::with_capacity(count);
    for s in verdict.solutions().take(count) {
        let (x, y) = s?.into_parts();
        let (x, y) = if neg { (y, x) } else { (x, y) };
        solutions.push(Pair {
            x: x.to_string(),
            y: y.to_string(),
        });
    }

    let expansion = match &verdict {
        AbVerdict::Solvable(s) => Some((*s.expansion).clone()),
        AbVerdict::NoSolution(NoSolutionReason::PerfectSquareAB) => None,
        AbVerdict::NoSolution(_) => Some(expand_sqrt(sa * sb)?),
        AbVerdict::PellCase(_) => None,
    };
    let midpoint = expansion.as_ref().and_then(|e| {
        let t = e.period_len();
        (t % 2 == 0).then(|| {
            let (u, v) = e.uv_at(t / 2);
            MidpointOut {
                n: t / 2,
                u: u.to_string(),
                v: v.to_string(),
            }
        })
    });
    let (verdict_name, reason, branch) = match &verdict {
        AbVerdict::Solvable(s) => (
            "Solvable",
            None,
            Some(BranchOut {
                start: s.branch.start,
                stride: s.branch.stride,
            }),
        ),
        AbVerdict::NoSolution(r) => ("NoSolution", Some(r.code().to_string()), None),
        AbVerdict::PellCase(_) => ("PellCase", None, None),
    };
    let solvable = verdict.is_solvable();
    let payload = Payload::Ab(AbOut {
        a: a.to_string(),
        b: b.to_string(),
        equation: format!("{a}x^2 - {b}y^2 = {}", if neg { "-1" } else { "1" }),
        verdict: verdict_name.to_string(),
        reason,
        period_length: expansion.as_ref().map(SurdExpansion::period_len),
        midpoint,
        branch,
        solutions,
    });
    Ok((payload, if solvable { EXIT_OK } else { EXIT_NO_SOLUTIONS }))
}

fn report_payload(r: &SearchReport, kind: OracleKind) -> Payload {
    let pairs = |hs: &[Hit]| hs.iter().map(hit_pair).collect::<Vec<_>>();
    let (coprime, off_axis, anomalies, note) = match kind {
        OracleKind::Pell => (
            Some(pairs(&r.coprime_nontrivial())),
            None,
            None,
            "exhaustive over 0 <= y <= bound, x >= 0",
        ),
        OracleKind::Ab => (None, None, None, "exhaustive over 1 <= x <= bound, y >= 0"),
        OracleKind::Thue => (
            None,
            Some(pairs(&r.off_axis())),
            None,
            "exhaustive over |x| <= bound; bounded search, not a proof",
        ),
        OracleKind::Legendre => (
            None,
            None,
            Some(pairs(&r.anomalies)),
            "hits are (p, q); anomalies are hits that are not convergents of sqrt(d)",
        ),
    };
    Payload::Report(ReportOut {
        equation: r.equation.to_string(),
        bound: r.bound,
        iterations: r.iterations,
        hits: pairs(&r.hits),
        coprime_nontrivial: coprime,
        off_axis,
        anomalies,
        note: note.to_string(),
    })
}

/// Right-aligned table with a header row.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}", w = *w))
            .collect();
        out.push_str("  ");
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut headers.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

fn pair_rows(pairs: &[Pair]) -> Vec<Vec<String>> {
    pairs
        .iter()
        .enumerate()
        .map(|(i, p)| vec![(i + 1).to_string(), p.x.clone(), p.y.clone()])
        .collect()
}

fn list(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn pairs_inline(v: &[Pair]) -> String {
    let items: Vec<String> = v.iter().map(|p| format!("({}, {})", p.x, p.y)).collect();
    format!("[{}]", items.join(", "))
}

/// Human-readable rendering of a record.
pub fn render_text(record: &OutputRecord) -> String {
    let mut o = String::new();
    match &record.result {
        Payload::Expansion(e) => {
            writeln!(o, "sqrt({}) = [{}; ({})]", e.d, e.a0, e.period.join(", ")).unwrap();
            writeln!(o, "a0 = {}, T = {}", e.a0, e.period_length).unwrap();
            writeln!(o, "complete quotients (u_n + sqrt({}))/v_n:", e.d).unwrap();
            let rows: Vec<Vec<String>> = e
                .quotients
                .iter()
                .map(|q| vec![q.n.to_string(), q.a.clone(), q.u.clone(), q.v.clone()])
                .collect();
            o.push_str(&table(&["n", "a_n", "u_n", "v_n"], &rows));
            writeln!(o, "convergents p_n/q_n:").unwrap();
            let rows: Vec<Vec<String>> = e
                .convergents
                .iter()
                .map(|c| vec![c.n.to_string(), c.p.clone(), c.q.clone(), c.norm.clone()])
                .collect();
            o.push_str(&table(&["n", "p_n", "q_n", "p_n^2 - d q_n^2"], &rows));
        }
        Payload::Pell(p) => {
            writeln!(o, "x^2 - {}y^2 = 1", p.d).unwrap();
            writeln!(
                o,
                "T = {}, fundamental solution (p_{}, q_{}) = ({}, {})",
                p.period_length, p.fundamental_index, p.fundamental_index, p.fundamental.x, p.fundamental.y
            )
            .unwrap();
            o.push_str(&table(&["k", "x", "y"], &pair_rows(&p.solutions)));
        }
        Payload::PellGeneral(p) => {
            writeln!(o, "x^2 - {}y^2 = {}", p.d, p.m).unwrap();
            writeln!(o, "T = {}", p.period_length).unwrap();
            writeln!(o, "E_m = {}, E_-m = {}", list(&p.e_m), list(&p.e_neg_m)).unwrap();
            if let Some(w) = &p.obstruction {
                writeln!(o, "no solutions: {} is not a square modulo {w}", p.m).unwrap();
            }
            if !p.branches.is_empty() {
                let rows: Vec<Vec<String>> = p
                    .branches
                    .iter()
                    .map(|b| vec![b.start.to_string(), b.stride.to_string()])
                    .collect();
                writeln!(o, "branches (convergent index start - 1 + k*stride):").unwrap();
                o.push_str(&table(&["start", "stride"], &rows));
            }
            if let Some(t) = &p.trivial {
                writeln!(o, "trivial solution ({}, {})", t.x, t.y).unwrap();
            }
            if !p.solvable {
                writeln!(o, "no solutions").unwrap();
            } else if p.solutions.is_empty() {
                writeln!(o, "no solutions in the selected classes (try --trivial, --imprimitive)").unwrap();
            } else {
                o.push_str(&table(&["k", "x", "y"], &pair_rows(&p.solutions)));
            }
        }
        Payload::Ab(a) => {
            writeln!(o, "{}", a.equation).unwrap();
            match &a.reason {
                Some(r) => writeln!(o, "verdict: {} ({r})", a.verdict).unwrap(),
                None => writeln!(o, "verdict: {}", a.verdict).unwrap(),
            }
            if let Some(t) = a.period_length {
                writeln!(o, "T = {t}").unwrap();
            }
            if let Some(m) = &a.midpoint {
                writeln!(o, "midpoint N = {}: u_N = {}, v_N = {}", m.n, m.u, m.v).unwrap();
            }
            if let Some(b) = &a.branch {
                writeln!(o, "convergent indices {} - 1 + k*{}", b.start, b.stride).unwrap();
            }
            if !a.solutions.is_empty() {
                o.push_str(&table(&["k", "x", "y"], &pair_rows(&a.solutions)));
            }
        }
        Payload::Report(r) => {
            writeln!(o, "{}  (bound {}, {} candidates)", r.equation, r.bound, r.iterations).unwrap();
            writeln!(o, "{}", r.note).unwrap();
            writeln!(o, "hits: {}", pairs_inline(&r.hits)).unwrap();
            if let Some(v) = &r.coprime_nontrivial {
                writeln!(o, "coprime, y != 0: {}", pairs_inline(v)).unwrap();
            }
            if let Some(v) = &r.off_axis {
                writeln!(o, "xy != 0: {}", pairs_inline(v)).unwrap();
            }
            if let Some(v) = &r.anomalies {
                writeln!(o, "anomalies: {}", pairs_inline(v)).unwrap();
            }
        }
        Payload::Error(_) => {}
    }
    o
}
