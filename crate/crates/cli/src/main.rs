//! `ddp`: counting, enumeration, bijections and verification for dispersed
//! Dyck paths from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification report fails, 2 on usage,
//! parse or domain errors.

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ddp_core::bijection::Bijection;
use ddp_core::closed::{self, BigCount};
use ddp_core::enumerate::{count_ddp_dp, count_dyck_dp};
use ddp_core::verify::{self, Exact, Formula, Formulas, OffByOne};
use ddp_core::{
    parse_path, CheckId, CountRow, Enumerator, Error, Family, Harness, PathWord, SlotRef,
    DEFAULT_CAP,
};

#[derive(Parser, Debug)]
#[command(name = "ddp", version, about = "Exact combinatorics for dispersed Dyck paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one exact count for paths of length N.
    Count {
        stat: Stat,
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Ascent length, required for k-ascents.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// List every path of one family and length, in U < D < R order.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Ddp)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Print the most specific class of a path word.
    Classify { path: String },
    /// Print step counts and ascent runs of a path word as JSON.
    Stats { path: String },
    /// Apply one of the bijections and print the record as JSON.
    Bijection {
        name: BijectionName,
        path: String,
        /// Position of the 1-ascent's up step (ascent-remove).
        #[arg(long)]
        pos: Option<usize>,
        /// Insertion slot: start, down:<i> or right:<i> (ascent-insert).
        #[arg(long)]
        slot: Option<String>,
    },
    /// Run verification checks and print a JSON report.
    Verify {
        /// Check ids, or `all`.
        #[arg(default_value = "all")]
        ids: Vec<String>,
        /// Largest enumerated length for oracle-backed checks.
        #[arg(long)]
        max_n: Option<usize>,
        /// Enumerate up to the cap instead of the default range.
        #[arg(long)]
        deep: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        pretty: bool,
        /// Add one to every value of the named closed form (harness self-test).
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Export an integer sequence indexed by path length.
    ///
    /// one-ascents is OEIS A191386 and convolution is A045621 (as reference
    /// points; OEIS offsets may differ).
    Sequence {
        which: SequenceName,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
        /// Index printed for the first term; values are not shifted.
        #[arg(long, default_value_t = 0)]
        offset: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Dump per-length totals `n,dD,dyck,U,D,R,A` for lengths 0..=MAX_N.
    Table {
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Number of paths of length N with each count of 1-ascents.
    Distribution {
        n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Compare the exact 1-ascent total with its asymptotic estimate.
    Asymptotic {
        #[arg(required = true, value_parser = clap::value_parser!(u64).range(2..))]
        m: Vec<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Stat {
    Paths,
    Dyck,
    Up,
    Down,
    Right,
    OneAscents,
    KAscents,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Dp,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Ddp,
    Dyck,
    Plain,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Ddp => Family::Ddp,
            FamilyArg::Dyck => Family::Dyck,
            FamilyArg::Plain => Family::Plain,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
    Bfile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BijectionName {
    Reflection,
    ReflectionInv,
    Updown,
    UpdownInv,
    AscentRemove,
    AscentInsert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SequenceName {
    OneAscents,
    RightSteps,
    DdpCount,
    Convolution,
}

/// Anything that ends the process with a non-zero code.
enum Failure {
    Usage(String),
    Verification,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn unsupported_format(cmd: &str, format: OutputFormat) -> Failure {
    usage(format!("{cmd} does not support --format {format:?}").to_lowercase())
}

fn word(text: &str) -> Result<PathWord, Failure> {
    Ok(parse_path(text)?)
}

fn count(out: &mut impl Write, stat: Stat, n: usize, method: Method, k: Option<usize>, cap: usize) -> CmdResult {
    if stat == Stat::KAscents && k.is_none() {
        return Err(usage("k-ascents requires --k"));
    }
    if stat != Stat::KAscents && k.is_some() {
        return Err(usage("--k only applies to k-ascents"));
    }
    let nn = n as u64;
    let value: BigCount = match method {
        Method::Closed => match stat {
            Stat::Paths => closed::central_binomial(nn),
            Stat::Dyck => closed::dyck_count(nn),
            Stat::Up | Stat::Down => closed::u_closed(nn),
            Stat::Right => closed::r_closed(nn),
            Stat::OneAscents => closed::a_closed(nn),
            Stat::KAscents => match k {
                Some(1) => closed::a_closed(nn),
                Some(0) => return Err(usage("--k must be at least 1")),
                _ => {
                    return Err(usage(
                        "no closed form (open problem): k-ascent totals for k > 1 are only available with --method brute",
                    ))
                }
            },
        },
        Method::Dp => match stat {
            Stat::Paths => count_ddp_dp(n),
            Stat::Dyck => count_dyck_dp(n),
            _ => return Err(usage("--method dp is only available for paths and dyck")),
        },
        Method::Brute => {
            let e = Enumerator::with_cap(cap);
            match stat {
                Stat::KAscents => e.k_ascent_total(n, k.unwrap_or(1))?,
                _ => {
                    let row = e.totals(n)?;
                    match stat {
                        Stat::Paths => row.paths,
                        Stat::Dyck => row.dyck,
                        Stat::Up => row.ups,
                        Stat::Down => row.downs,
                        Stat::Right => row.rights,
                        Stat::OneAscents => row.one_ascents,
                        Stat::KAscents => unreachable!(),
                    }
                }
            }
        }
    };
    writeln!(out, "{value}")?;
    Ok(())
}

fn enumerate(out: &mut impl Write, n: usize, family: FamilyArg, format: OutputFormat, cap: usize) -> CmdResult {
    let paths = Enumerator::with_cap(cap).iter(family.into(), n)?;
    match format {
        OutputFormat::Text => {
            for p in paths {
                writeln!(out, "{p}")?;
            }
        }
        OutputFormat::Json => {
            let words: Vec<String> = paths.map(|p| p.to_string()).collect();
            writeln!(out, "{}", serde_json::to_string(&words).expect("strings serialize"))?;
        }
        f => return Err(unsupported_format("enumerate", f)),
    }
    Ok(())
}

fn bijection(out: &mut impl Write, name: BijectionName, path: &str, pos: Option<usize>, slot: Option<String>) -> CmdResult {
    let input = word(path)?;
    let map = match name {
        BijectionName::Reflection => Bijection::Reflection,
        BijectionName::ReflectionInv => Bijection::ReflectionInverse,
        BijectionName::Updown => Bijection::UpDown,
        BijectionName::UpdownInv => Bijection::UpDownInverse,
        BijectionName::AscentRemove => Bijection::AscentRemove {
            pos: pos.ok_or_else(|| usage("ascent-remove requires --pos"))?,
        },
        BijectionName::AscentInsert => Bijection::AscentInsert {
            slot: slot.ok_or_else(|| usage("ascent-insert requires --slot"))?.parse::<SlotRef>()?,
        },
    };
    writeln!(out, "{}", map.apply(&input)?.to_json())?;
    Ok(())
}

fn verify(
    out: &mut impl Write,
    ids: &[String],
    max_n: Option<usize>,
    deep: bool,
    cap: usize,
    pretty: bool,
    inject_fault: Option<String>,
) -> CmdResult {
    let ids: Vec<CheckId> = if ids.iter().any(|s| s == "all") {
        CheckId::ALL.to_vec()
    } else {
        ids.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    let max_n = max_n.unwrap_or(if deep { cap } else { verify::DEFAULT_MAX_N });
    let faulty;
    let forms: &dyn Formulas = match inject_fault {
        Some(name) => {
            faulty = OffByOne(name.parse::<Formula>()?);
            &faulty
        }
        None => &Exact,
    };
    let harness = Harness::new(forms, Enumerator::with_cap(cap));
    let report = harness.verify_ids(&ids, max_n)?;
    let text = if pretty { report.to_json_pretty() } else { report.to_json() };
    writeln!(out, "{text}")?;
    if report.overall {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn sequence_values(which: SequenceName, terms: u64) -> Vec<BigCount> {
    match which {
        SequenceName::OneAscents => (0..terms).map(closed::a_closed).collect(),
        SequenceName::RightSteps => (0..terms).map(closed::r_closed).collect(),
        SequenceName::DdpCount => closed::central_binomials(terms as usize),
        SequenceName::Convolution => (0..terms).map(closed::r_convolution).collect(),
    }
}

fn sequence(out: &mut impl Write, which: SequenceName, terms: u64, offset: u64, format: OutputFormat) -> CmdResult {
    let values = sequence_values(which, terms);
    let indexed = values.iter().enumerate().map(|(i, v)| (offset + i as u64, v));
    match format {
        OutputFormat::Text => {
            let line: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        OutputFormat::Bfile => {
            for (i, v) in indexed {
                writeln!(out, "{i} {v}")?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "index,value")?;
            for (i, v) in indexed {
                writeln!(out, "{i},{v}")?;
            }
        }
        OutputFormat::Json => {
            let items: Vec<String> = indexed.map(|(i, v)| format!(r#"{{"index":{i},"value":{v}}}"#)).collect();
            writeln!(out, "[{}]", items.join(","))?;
        }
    }
    Ok(())
}

fn closed_row(n: usize) -> CountRow {
    let nn = n as u64;
    let u = closed::u_closed(nn);
    CountRow {
        n,
        paths: closed::central_binomial(nn),
        dyck: closed::dyck_count(nn),
        ups: u.clone(),
        downs: u,
        rights: closed::r_closed(nn),
        one_ascents: closed::a_closed(nn),
    }
}

fn table(out: &mut impl Write, max_n: usize, method: Method, format: OutputFormat, cap: usize) -> CmdResult {
    let rows = match method {
        Method::Closed => (0..=max_n).map(closed_row).collect(),
        Method::Brute => Enumerator::with_cap(cap).totals_table(max_n)?,
        Method::Dp => return Err(usage("table supports --method closed or brute")),
    };
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{}", CountRow::CSV_HEADER)?;
            for r in &rows {
                writeln!(out, "{}", r.to_csv())?;
            }
        }
        OutputFormat::Json => {
            for r in &rows {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        f => return Err(unsupported_format("table", f)),
    }
    Ok(())
}

fn distribution(out: &mut impl Write, n: usize, format: OutputFormat, cap: usize) -> CmdResult {
    let dist = Enumerator::with_cap(cap).one_ascent_distribution(n)?;
    match format {
        OutputFormat::Text | OutputFormat::Bfile => {
            for (t, c) in &dist.row {
                writeln!(out, "{t} {c}")?;
            }
        }
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&dist).expect("table serializes"))?,
        f => return Err(unsupported_format("distribution", f)),
    }
    Ok(())
}

fn asymptotic(out: &mut impl Write, ms: &[u64]) -> CmdResult {
    writeln!(out, "m log2_exact log2_estimate ratio")?;
    for &m in ms {
        let exact = closed::log2_big(&closed::a_closed(m));
        let estimate = closed::a_asymptotic(m).log2;
        let ratio = (exact - estimate).exp2();
        writeln!(out, "{m} {exact:.6} {estimate:.6} {ratio:.9}")?;
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> CmdResult {
    match cli.command {
        Command::Count { stat, n, method, k, cap } => count(out, stat, n, method, k, cap),
        Command::Enumerate { n, family, format, cap } => enumerate(out, n, family, format, cap),
        Command::Classify { path } => {
            writeln!(out, "{}", word(&path)?.classify())?;
            Ok(())
        }
        Command::Stats { path } => {
            writeln!(out, "{}", word(&path)?.stats().to_json())?;
            Ok(())
        }
        Command::Bijection { name, path, pos, slot } => bijection(out, name, &path, pos, slot),
        Command::Verify { ids, max_n, deep, cap, pretty, inject_fault } => {
            verify(out, &ids, max_n, deep, cap, pretty, inject_fault)
        }
        Command::Sequence { which, terms, offset, format } => sequence(out, which, terms, offset, format),
        Command::Table { max_n, method, format, cap } => table(out, max_n, method, format, cap),
        Command::Distribution { n, format, cap } => distribution(out, n, format, cap),
        Command::Asymptotic { m } => asymptotic(out, &m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::Io)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
