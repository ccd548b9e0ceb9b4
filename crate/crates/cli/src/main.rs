#![allow(clippy::result_large_err)]

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use reebkit::field::parse_rational;
use reebkit::filtration::Filtration;
use reebkit::zigzag::IntervalCover;
use reebkit::{corpus, io as formats, Error, Field, Level, SimplicialComplex};

mod report;

#[derive(Debug, Parser)]
#[command(
    name = "reebkit",
    version,
    about = "Exact levelset zigzags, truncated Reeb complexes and telescope persistence"
)]
struct Cli {
    /// Coefficient field: `rational` or a prime such as `2` or `7`.
    #[arg(long, global = true, default_value = "rational", value_parser = parse_field)]
    field: Field,

    /// Write the JSON report to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// JSON input file, or `-` for standard input.
    path: Option<PathBuf>,

    /// Use a bundled space (pinched-cylinder, circle, sphere, torus, point)
    /// or filtration (constant, point-edge, point-two-points-edge, circle-disk).
    #[arg(long, conflicts_with = "path")]
    builtin: Option<String>,

    /// Highest homological degree; defaults to the dimension of the input.
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Betti numbers, optionally with fiber homology at given levels.
    Homology {
        #[command(flatten)]
        input: Input,
        /// Comma-separated levels, e.g. `0,1/2,1`.
        #[arg(long, value_parser = parse_levels, allow_hyphen_values = true)]
        levels: Option<Levels>,
    },
    /// Truncated Reeb complexes, recovered homology and diamond checks.
    Reeb {
        #[command(flatten)]
        input: Input,
    },
    /// Levelset zigzag modules and their barcodes.
    Zigzag {
        #[command(flatten)]
        input: Input,
        /// Open intervals `lo:hi,lo:hi,...`; by default one interval per gap
        /// between critical values.
        #[arg(long, value_parser = parse_intervals, allow_hyphen_values = true)]
        intervals: Option<IntervalCover>,
    },
    /// Persistence of a filtration, directly and through its telescope.
    Telescope {
        #[command(flatten)]
        input: Input,
    },
    /// First page and two-column collapse for an interval cover.
    Spectral {
        #[command(flatten)]
        input: Input,
        /// Open intervals `lo:hi,lo:hi,...`.
        #[arg(long, value_parser = parse_intervals, allow_hyphen_values = true)]
        intervals: Option<IntervalCover>,
    },
    /// Run verifications; exits with status 1 if any fails.
    Verify {
        check: Check,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Diamond,
    Ladder,
    All,
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "rational" | "q" | "Q" => Ok(Field::Rational),
        p => {
            let p: u64 = p
                .parse()
                .map_err(|_| format!("expected `rational` or a prime, found {p:?}"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

#[derive(Debug, Clone)]
struct Levels(Vec<Level>);

fn parse_levels(s: &str) -> Result<Levels, String> {
    let mut levels = s
        .split(',')
        .map(|t| parse_rational(t).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    levels.sort();
    levels.dedup();
    Ok(Levels(levels))
}

fn parse_intervals(s: &str) -> Result<IntervalCover, String> {
    let intervals = s
        .split(',')
        .map(|iv| {
            let (a, b) = iv
                .split_once(':')
                .ok_or_else(|| format!("interval {iv:?} is not of the form lo:hi"))?;
            Ok((
                parse_rational(a).map_err(|e| e.to_string())?,
                parse_rational(b).map_err(|e| e.to_string())?,
            ))
        })
        .collect::<Result<Vec<_>, String>>()?;
    IntervalCover::new(intervals).map_err(|e| e.to_string())
}

enum Loaded {
    Complex(SimplicialComplex),
    Filtration(Filtration),
}

fn load(input: &Input) -> reebkit::Result<Loaded> {
    if let Some(name) = &input.builtin {
        if let Some(k) = corpus::by_name(name) {
            return Ok(Loaded::Complex(k));
        }
        return corpus::named_filtrations()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| Loaded::Filtration(f))
            .ok_or_else(|| Error::Parse(format!("no bundled input named {name:?}")));
    }
    let text = match input.path.as_deref() {
        None => return Err(Error::Parse("give an input file or --builtin".into())),
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("standard input: {e}")))?;
            s
        }
        Some(p) => {
            fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?
        }
    };
    if formats::looks_like_filtration(&text) {
        formats::parse_filtration(&text).map(Loaded::Filtration)
    } else {
        formats::parse_complex(&text).map(Loaded::Complex)
    }
}

fn complex(input: &Input) -> reebkit::Result<SimplicialComplex> {
    match load(input)? {
        Loaded::Complex(k) => Ok(k),
        Loaded::Filtration(_) => Err(Error::Parse(
            "expected a complex, found a filtration".into(),
        )),
    }
}

fn filtration(input: &Input) -> reebkit::Result<Filtration> {
    match load(input)? {
        Loaded::Filtration(f) => Ok(f),
        Loaded::Complex(_) => Err(Error::Parse(
            "expected a filtration, found a complex".into(),
        )),
    }
}

fn degree_for(input: &Input, k: &SimplicialComplex) -> usize {
    input.max_degree.unwrap_or_else(|| k.dim().unwrap_or(0))
}

fn run(cli: &Cli) -> reebkit::Result<report::Outcome> {
    let field = cli.field;
    match &cli.command {
        Command::Homology { input, levels } => {
            let k = complex(input)?;
            report::homology(
                &k,
                degree_for(input, &k),
                field,
                levels.as_ref().map_or(&[][..], |l| &l.0),
            )
        }
        Command::Reeb { input } => {
            let k = complex(input)?;
            report::reeb(&k, degree_for(input, &k), field)
        }
        Command::Zigzag { input, intervals } => {
            let k = complex(input)?;
            report::zigzag(&k, degree_for(input, &k), field, intervals.as_ref())
        }
        Command::Telescope { input } => {
            let f = filtration(input)?;
            let q = input
                .max_degree
                .unwrap_or_else(|| f.last().and_then(|x| x.dim()).unwrap_or(0));
            report::telescope(&f, q, field)
        }
        Command::Spectral { input, intervals } => {
            let k = complex(input)?;
            report::spectral(&k, degree_for(input, &k), field, intervals.as_ref())
        }
        Command::Verify { check, input } => match (check, load(input)?) {
            (Check::Ladder, Loaded::Complex(_)) => {
                Err(Error::Parse("the ladder check needs a filtration".into()))
            }
            (Check::Diamond, Loaded::Filtration(_)) => {
                Err(Error::Parse("the diamond check needs a complex".into()))
            }
            (_, Loaded::Filtration(f)) => {
                let q = input
                    .max_degree
                    .unwrap_or_else(|| f.last().and_then(|x| x.dim()).unwrap_or(0));
                report::verify_ladder(&f, q, field)
            }
            (check, Loaded::Complex(k)) => {
                report::verify_complex(&k, degree_for(input, &k), field, *check == Check::All)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut text = outcome.json;
    text.push('\n');
    let written = match &cli.output {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(1)
    }
}
