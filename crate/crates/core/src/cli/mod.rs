//! Command-line front end.
//!
//! Every command builds a [`Report`]: the resolved parameters, a JSON body, a
//! table for CSV and lines for plain text. Exact integers and rationals are
//! always rendered as strings.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::oracle::{DEFAULT_CEILING, MAX_CEILING};
use crate::{Error, Result};

/// Smallest accepted `--precision`.
pub const MIN_PRECISION: usize = 15;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "rna-topology", version, about = "Topological RNA structures: counts, series, limit laws and sampling")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct Config {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Decimal digits for non-exact output (at least 15).
    #[arg(long, global = true, default_value_t = 20)]
    pub precision: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest length enumerated by brute force (at most 24).
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING)]
    pub ceiling: usize,
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.precision < MIN_PRECISION {
            return Err(Error::InvalidParams(format!(
                "--precision must be at least {MIN_PRECISION}, got {}",
                self.precision
            )));
        }
        if self.ceiling > MAX_CEILING {
            return Err(Error::InvalidParams(format!(
                "--ceiling must be at most {MAX_CEILING}, got {}",
                self.ceiling
            )));
        }
        Ok(())
    }
}

/// `--genus --lambda --r`.
#[derive(Clone, Copy, Debug, Args)]
pub struct Family {
    #[arg(long, short, default_value_t = 1)]
    pub genus: u32,
    #[arg(long, short, default_value_t = 1)]
    pub lambda: u32,
    #[arg(long, short, default_value_t = 1)]
    pub r: u32,
}

/// Structures given inline or one per line in a file.
#[derive(Clone, Debug, Args)]
pub struct StructureInput {
    /// Structures in extended dot-bracket notation.
    pub structures: Vec<String>,
    /// File with one structure per line; blank lines and `#` comments are skipped.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// Genus-0 structures.
    D0,
    /// Genus-g structures.
    Dg,
    /// Genus-g chord diagrams.
    Cg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DgRoute {
    /// Shape inflation with the genus-0 series.
    Inflation,
    /// Composition with the chord-diagram series.
    Chord,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CgRouteArg {
    Recursion,
    Inflation,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleMethod {
    Grammar,
    Enumerative,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of structures of length N, optionally by arc count.
    Count {
        n: usize,
        #[command(flatten)]
        family: Family,
        /// Split the count by number of arcs.
        #[arg(long)]
        arcs: bool,
        /// Also count by brute-force enumeration and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Coefficients of a generating function, with y-derivatives when marked.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        #[command(flatten)]
        family: Family,
        /// Number of coefficients.
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Loop kind (stack, stem, hairpin, bulge, interior, multi) or pseudoknot class (H, K, L, M).
        #[arg(long)]
        mark: Option<String>,
        #[arg(long, value_enum, default_value_t = DgRoute::Inflation)]
        route: DgRoute,
        #[arg(long, value_enum, default_value_t = CgRouteArg::Recursion)]
        cg_route: CgRouteArg,
    },
    /// Shape polynomial, optionally marked by a pseudoknot class or multi-loops.
    Shapes {
        #[arg(long, short, default_value_t = 1)]
        genus: u32,
        /// H, K, L, M or multi.
        #[arg(long)]
        mark: Option<String>,
        /// List the shapes with this many arcs.
        #[arg(long)]
        list: Option<usize>,
    },
    /// Irreducible shadow polynomial.
    Irreducibles {
        #[arg(long, short, default_value_t = 1)]
        genus: u32,
        /// Also count irreducible shadows by enumeration up to this many arcs.
        #[arg(long)]
        enumerate: Option<usize>,
    },
    /// Genus and boundary count.
    Genus(StructureInput),
    /// Pseudoknot classes of the irreducible blocks.
    Classify(StructureInput),
    /// Block forest.
    Decompose(StructureInput),
    /// Central limit parameters of the arc count.
    Clt {
        #[arg(long, short, default_value_t = 1)]
        lambda: u32,
        #[arg(long, short, default_value_t = 1)]
        r: u32,
        /// Emit the whole grid 1 <= lambda, r <= MAX instead.
        #[arg(long)]
        grid: Option<u32>,
        /// Decimals in the grid CSV.
        #[arg(long, default_value_t = 4)]
        digits: usize,
    },
    /// Expected number of blocks of a pseudoknot class.
    Expect {
        /// H, K, L or M.
        #[arg(long = "type")]
        class: String,
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Largest n for the exact series ratio.
        #[arg(long, default_value_t = 1000)]
        series_cap: usize,
    },
    /// Uniform random structures.
    Sample {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        family: Family,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = SampleMethod::Grammar)]
        method: SampleMethod,
        /// Include empirical statistics.
        #[arg(long)]
        stats: bool,
    },
    /// Brute-force feature census, or count tables with --table.
    Census {
        n: usize,
        #[command(flatten)]
        family: Family,
        /// Tabulate d_g(n, arcs) for every length up to N and every genus.
        #[arg(long)]
        table: bool,
    },
}

/// Output of one command.
#[derive(Debug, Default)]
pub struct Report {
    pub command: &'static str,
    pub params: Map<String, Value>,
    /// Merged with `command` and `params` for JSON output.
    pub body: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub plain: Vec<String>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            ..Default::default()
        }
    }

    fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.into(), v.into());
        self
    }

    fn field(&mut self, key: &str, v: impl Into<Value>) {
        self.body.insert(key.into(), v.into());
    }

    fn table(&mut self, columns: &[&str], rows: Vec<Vec<String>>) {
        self.columns = columns.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
    }

    fn line(&mut self, s: impl Into<String>) {
        self.plain.push(s.into());
    }

    fn param_text(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }

    /// Renders in `format`.
    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("command".into(), self.command.into());
                obj.insert("params".into(), Value::Object(self.params.clone()));
                obj.extend(self.body.clone());
                serde_json::to_string_pretty(&Value::Object(obj))? + "\n"
            }
            Format::Csv => {
                // parameters become leading constant columns
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(self.params.keys().chain(self.columns.iter()))?;
                let vals: Vec<String> = self.params.values().map(Self::param_text).collect();
                for row in &self.rows {
                    w.write_record(vals.iter().chain(row.iter()))?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
                String::from_utf8(bytes).map_err(|e| Error::InvalidParams(e.to_string()))?
            }
            Format::Plain => {
                let echo: Vec<String> = self
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={}", Self::param_text(v)))
                    .collect();
                let mut s = format!("# {} {}\n", self.command, echo.join(" "));
                for l in &self.plain {
                    s.push_str(l);
                    s.push('\n');
                }
                s
            }
        })
    }
}

/// Parses `args` (including the program name) and writes the rendered report.
pub fn run<I, T>(args: I, out: &mut impl Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::InvalidParams(e.to_string()))?;
    execute(&cli, out)
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli, out: &mut impl Write) -> Result<()> {
    cli.config.validate()?;
    let work = || commands::dispatch(&cli.command, &cli.config);
    let report = if cli.config.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.config.threads)
            .build()
            .map_err(|e| Error::InvalidParams(e.to_string()))?
            .install(work)?
    } else {
        work()?
    };
    out.write_all(report.render(cli.config.format)?.as_bytes())?;
    Ok(())
}

/// Entry point for the binary: help and version go to stdout, errors to
/// stderr with a nonzero exit code.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
