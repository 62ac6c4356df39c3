use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand, ValueEnum};

use heisp::charsums::CharConvention;
use heisp::classes::{class_record, class_representatives, render_text};
use heisp::ffield::{prime_power, FieldCtx};
use heisp::heisgroup::{Group, DEFAULT_ENUMERATION_CAP};
use heisp::output::{self, Meta};
use heisp::verify::{self, Suite, VerificationReport, VerifyOptions};
use heisp::{build_table, Error};

#[derive(Parser, Debug)]
#[command(name = "heisp", version, about = "Character table of H_1(q) x| Sp(2,q) for odd q")]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, env = "HEISP_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the character table.
    Gen {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List the conjugacy classes with sizes and centralizer orders.
    Classes {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Gauss sums, sqrt(delta q) and the cubic sums.
    Sums {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// Suites to run (repeat or comma-separate); all but burnside by default.
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<SuiteArg>,
        #[command(flatten)]
        opts: OracleArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Rebuild the table numerically from class multiplication coefficients
    /// and match it against the closed forms.
    Oracle {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        opts: OracleArgs,
        /// Allow q = 5 (minutes of work).
        #[arg(long)]
        long: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
struct FieldArgs {
    /// Field order, an odd prime power.
    #[arg(long, value_parser = parse_q, conflicts_with_all = ["p", "f", "modulus"])]
    q: Option<u64>,
    /// Characteristic, an odd prime.
    #[arg(long, requires = "f", value_parser = parse_p)]
    p: Option<u64>,
    /// Extension degree.
    #[arg(long, requires = "p")]
    f: Option<u32>,
    /// Monic irreducible modulus, low-to-high coefficients, e.g. `1,0,1` for x^2+1.
    #[arg(long, value_delimiter = ',', requires = "f")]
    modulus: Option<Vec<u32>>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Entrywise tolerance for the numerical oracle.
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    /// Ceiling on |G| for brute-force enumeration.
    #[arg(long, env = "HEISP_ENUM_CAP", default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    /// Seed for the random class-matrix combination.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Orthogonality,
    Classes,
    Induced,
    Weil,
    Gauss,
    Kappa,
    Burnside,
    All,
}

fn parse_q(s: &str) -> Result<u64, String> {
    let q: u64 = s.parse().map_err(|e| format!("{e}"))?;
    match prime_power(q) {
        _ if q.is_multiple_of(2) => Err(format!("q = {q} is even; q must be an odd prime power")),
        Some(_) => Ok(q),
        None => Err(format!("q = {q} is not a prime power")),
    }
}

fn parse_p(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|e| format!("{e}"))?;
    match prime_power(p) {
        Some((_, 1)) if p % 2 == 1 => Ok(p),
        _ => Err(format!("p = {p} is not an odd prime")),
    }
}

impl FieldArgs {
    fn field(&self) -> Result<Arc<FieldCtx>, Error> {
        let ctx = match (self.q, self.p, self.f) {
            (Some(q), _, _) => FieldCtx::from_order(q)?,
            (None, Some(p), Some(f)) => FieldCtx::new(p, f, self.modulus.as_deref())?,
            _ => unreachable!("clap enforces q or (p, f)"),
        };
        Ok(Arc::new(ctx))
    }
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn write_report(report: &VerificationReport, format: ReportFormat, output: &Option<PathBuf>) -> Result<(), CliError> {
    let mut w = sink(output)?;
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut w, report)?;
            writeln!(w)?;
        }
        ReportFormat::Text => write!(w, "{}", report.render_text())?,
    }
    w.flush()?;
    eprintln!("{}: {:.3} s", report.suite, report.elapsed.as_secs_f64());
    Ok(())
}

fn suites(args: &[SuiteArg]) -> Vec<Suite> {
    if args.is_empty() || args.contains(&SuiteArg::All) {
        let mut all = Suite::DEFAULT.to_vec();
        if args.contains(&SuiteArg::All) {
            all.push(Suite::Burnside);
        }
        return all;
    }
    let mut out: Vec<Suite> = args
        .iter()
        .map(|a| match a {
            SuiteArg::Orthogonality => Suite::Orthogonality,
            SuiteArg::Classes => Suite::Classes,
            SuiteArg::Induced => Suite::Induced,
            SuiteArg::Weil => Suite::Weil,
            SuiteArg::Gauss => Suite::Gauss,
            SuiteArg::Kappa => Suite::Kappa,
            SuiteArg::Burnside => Suite::Burnside,
            SuiteArg::All => unreachable!(),
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Gen { field, format, output } => {
            let table = build_table(field.field()?).map_err(Error::from)?;
            let w = sink(&output)?;
            match format {
                Format::Json => output::write_json(&table, w)?,
                Format::Csv => output::write_csv(&table, w)?,
                Format::Latex => output::write_latex(&table, w)?,
                Format::Text => output::write_text(&table, w)?,
            }
            Ok(true)
        }
        Command::Classes { field, format, output } => {
            let field = field.field()?;
            let conv = CharConvention::new(field.clone()).map_err(Error::from)?;
            let group = Group::new(field);
            let classes = class_representatives(&group);
            let mut w = sink(&output)?;
            match format {
                ReportFormat::Json => {
                    let records: Vec<_> = classes.iter().map(|c| class_record(&group, c)).collect();
                    let doc = serde_json::json!({ "meta": Meta::new(&conv), "classes": records });
                    serde_json::to_writer_pretty(&mut w, &doc)?;
                    writeln!(w)?;
                }
                ReportFormat::Text => write!(w, "{}", render_text(&group, &classes))?,
            }
            w.flush()?;
            Ok(true)
        }
        Command::Sums { field, format, output } => {
            let conv = CharConvention::new(field.field()?).map_err(Error::from)?;
            let rec = output::sums_record(&conv);
            let mut w = sink(&output)?;
            match format {
                ReportFormat::Json => {
                    serde_json::to_writer_pretty(&mut w, &rec)?;
                    writeln!(w)?;
                }
                ReportFormat::Text => write!(w, "{}", output::render_sums_text(&rec))?,
            }
            w.flush()?;
            Ok(true)
        }
        Command::Verify { field, suite, opts, format, output } => {
            let start = Instant::now();
            let table = build_table(field.field()?).map_err(Error::from)?;
            let options = VerifyOptions { cap: opts.cap, tolerance: opts.tolerance, seed: opts.seed };
            let mut report = VerificationReport::new(
                suites(&suite).iter().map(|s| s.name()).collect::<Vec<_>>().join(","),
                table.q(),
            );
            for s in suites(&suite) {
                report.merge(verify::run_suite(&table, s, &options).map_err(Error::from)?);
            }
            report.elapsed = start.elapsed();
            write_report(&report, format, &output)?;
            Ok(report.passed)
        }
        Command::Oracle { field, opts, long, format, output } => {
            let field = field.field()?;
            let q = field.q();
            if q != 3 && !(q == 5 && long) {
                let msg = if q == 5 {
                    "q = 5 needs --long".to_string()
                } else {
                    format!("the oracle supports q = 3 (and q = 5 with --long), not q = {q}")
                };
                Cli::command().error(ErrorKind::ArgumentConflict, msg).exit();
            }
            let table = build_table(field).map_err(Error::from)?;
            let res = verify::burnside_oracle(&table, opts.tolerance, opts.seed, opts.cap).map_err(Error::from)?;
            write_report(&res.report, format, &output)?;
            Ok(res.report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Only fails if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
