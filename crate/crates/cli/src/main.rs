//! `altsum`: partial sums, remainder bounds and Euler acceleration for
//! alternating series, with exact rational output.

mod render;

use std::process::ExitCode;

use altsum::bounds::{
    first_n_guaranteed, first_n_true_in, remainder_interval, true_remainder_in, Method,
};
use altsum::euler::{euler_enclosure, euler_partial_sum, first_n_euler, hybrid_sum};
use altsum::numerics::ConstantTable;
use altsum::terms::{catalog, partial_sum};
use altsum::{Backend, DifferenceTable, Error, ExactRational, SeriesSpec, TermSource};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "altsum",
    version,
    about = "Alternating series: sums, remainder bounds, acceleration"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,

    /// Fractional digits in decimal renderings.
    #[arg(long, default_value_t = 12, global = true,
          value_parser = clap::value_parser!(u32).range(1..=1000))]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

fn parse_series(s: &str) -> Result<SeriesSpec, String> {
    SeriesSpec::from_designator(s).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<ExactRational, String> {
    s.parse::<ExactRational>().map_err(|e| e.to_string())
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse::<Backend>().map_err(|e| e.to_string())
}

#[derive(Debug, clap::Args)]
struct SeriesArg {
    /// pi4 | ln2 | lin:c,d | pow:s | file:PATH
    #[arg(long, value_parser = parse_series)]
    series: SeriesSpec,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the built-in series.
    Catalog,
    /// Partial sum S_n.
    Sum {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "exact", value_parser = parse_backend)]
        backend: Backend,
    },
    /// Forward-difference table.
    Table {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long, default_value_t = 1)]
        start: u64,
        #[arg(long, default_value_t = 8)]
        width: u64,
        /// Highest order; defaults to width - 1.
        #[arg(long)]
        max_order: Option<u32>,
    },
    /// Remainder interval for R_n.
    Bounds {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long)]
        n: u64,
        /// leibniz | jb | jb:K
        #[arg(long, default_value = "jb")]
        method: String,
        /// Order for `--method jb`.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Smallest n whose remainder is below eps.
    Solve {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long, value_parser = parse_rational)]
        eps: ExactRational,
        /// leibniz | jb:K | true
        #[arg(long, default_value = "jb:0")]
        method: String,
    },
    /// Euler-transformed partial sum E_n.
    Euler {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long)]
        n: u32,
        /// Also print the enclosure [E_n, E_n + bound].
        #[arg(long)]
        enclosure: bool,
        #[arg(long, default_value = "exact", value_parser = parse_backend)]
        backend: Backend,
    },
    /// Direct head S_m followed by E_j on the shifted tail.
    Hybrid {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long)]
        head: u64,
        #[arg(long)]
        tail: u32,
        #[arg(long, default_value = "exact", value_parser = parse_backend)]
        backend: Backend,
    },
    /// Smallest Euler order whose error bound is below eps.
    AccelSolve {
        #[command(flatten)]
        series: SeriesArg,
        #[arg(long, value_parser = parse_rational)]
        eps: ExactRational,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::Sum { .. } => "sum",
            Command::Table { .. } => "table",
            Command::Bounds { .. } => "bounds",
            Command::Solve { .. } => "solve",
            Command::Euler { .. } => "euler",
            Command::Hybrid { .. } => "hybrid",
            Command::AccelSolve { .. } => "accel-solve",
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

enum Rendered {
    Object(Value),
    Table(Box<DifferenceTable>),
}

fn constants() -> Result<std::borrow::Cow<'static, ConstantTable>, Error> {
    match std::env::var_os("ALTSUM_CONSTANTS") {
        Some(path) => Ok(std::borrow::Cow::Owned(ConstantTable::load(path)?)),
        None => Ok(std::borrow::Cow::Borrowed(ConstantTable::builtin())),
    }
}

fn bounds_method(method: &str, k: Option<u32>) -> Result<Method, Failure> {
    match (method.parse::<Method>(), k) {
        (Err(e), _) => Err(Failure::Usage(e.to_string())),
        (Ok(Method::Leibniz), Some(_)) => {
            Err(Failure::Usage("--k does not apply to leibniz".into()))
        }
        (Ok(Method::Johnsonbaugh(_)), Some(k)) if method.contains(':') => Err(Failure::Usage(
            format!("--k {k} conflicts with --method {method}"),
        )),
        (Ok(Method::Johnsonbaugh(_)), Some(k)) => Ok(Method::Johnsonbaugh(k)),
        (Ok(m), None) => Ok(m),
    }
}

fn run(command: &Command, digits: usize) -> Result<Rendered, Failure> {
    let d = digits;
    let value = match command {
        Command::Catalog => {
            let series: Vec<Value> = catalog().iter().map(render::series).collect();
            render::with_schema(json!({ "series": series }))
        }
        Command::Sum { series, n, backend } => {
            let src = TermSource::new(series.series.clone(), *backend);
            let s = partial_sum(&src, *n)?;
            render::with_schema(json!({
                "series": src.spec.id(),
                "n": n,
                "backend": backend.name(),
                "value": render::scalar(&s, d),
            }))
        }
        Command::Table {
            series,
            start,
            width,
            max_order,
        } => {
            let src = TermSource::exact(series.series.clone());
            let max_order =
                max_order.unwrap_or(width.saturating_sub(1).min(u32::MAX as u64) as u32);
            return Ok(Rendered::Table(Box::new(DifferenceTable::build(
                &src, *start, *width, max_order,
            )?)));
        }
        Command::Bounds {
            series,
            n,
            method,
            k,
        } => {
            let method = bounds_method(method, *k)?;
            let src = TermSource::exact(series.series.clone());
            render::interval(&remainder_interval(&src, *n, method)?, d)
        }
        Command::Solve {
            series,
            eps,
            method,
        } => {
            let src = TermSource::exact(series.series.clone());
            let mut out = if method == "true" {
                let table = constants()?;
                let n = first_n_true_in(&table, &src, eps)?;
                let certificate = nested(render::true_remainder(
                    &true_remainder_in(&table, &src, n)?,
                    d,
                ));
                json!({ "n": n, "certificate": certificate })
            } else {
                let method: Method = method
                    .parse()
                    .map_err(|e: Error| Failure::Usage(e.to_string()))?;
                let n = first_n_guaranteed(&src, eps, method)?;
                let certificate =
                    nested(render::interval(&remainder_interval(&src, n, method)?, d));
                json!({ "n": n, "certificate": certificate })
            };
            out["series"] = src.spec.id().into();
            out["method"] = method.as_str().into();
            out["eps"] = render::number(eps, d);
            render::with_schema(out)
        }
        Command::Euler {
            series,
            n,
            enclosure,
            backend,
        } => {
            let src = TermSource::new(series.series.clone(), *backend);
            let mut out = render::acceleration(&euler_partial_sum(&src, *n)?, d);
            out["series"] = src.spec.id().into();
            if *enclosure {
                let (lo, hi) = euler_enclosure(&TermSource::exact(src.spec.clone()), *n)?;
                out["enclosure"] = json!({
                    "lower": render::number(&lo, d),
                    "upper": render::number(&hi, d),
                });
            }
            out
        }
        Command::Hybrid {
            series,
            head,
            tail,
            backend,
        } => {
            let src = TermSource::new(series.series.clone(), *backend);
            let mut out = render::acceleration(&hybrid_sum(&src, *head, *tail)?, d);
            out["series"] = src.spec.id().into();
            out
        }
        Command::AccelSolve { series, eps } => {
            let src = TermSource::exact(series.series.clone());
            let n = first_n_euler(&src, eps)?;
            let result = nested(render::acceleration(&euler_partial_sum(&src, n)?, d));
            render::with_schema(json!({
                "series": src.spec.id(),
                "eps": render::number(eps, d),
                "n": n,
                "result": result,
            }))
        }
    };
    Ok(Rendered::Object(value))
}

/// Nested objects carry no schema tag of their own.
fn nested(mut value: Value) -> Value {
    if let Value::Object(map) = &mut value {
        map.remove("schema");
    }
    value
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are successful exits; everything else is usage
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let digits = cli.digits as usize;
    let subcommand = cli.command.name();
    match run(&cli.command, digits) {
        Ok(Rendered::Object(value)) => {
            let text = match cli.output {
                Output::Json => render::to_json(&value) + "\n",
                Output::Text => render::to_text(&value),
                Output::Csv => render::to_csv(&value),
            };
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Rendered::Table(table)) => {
            let text = match cli.output {
                Output::Json => render::to_json(&render::table(&table, digits)) + "\n",
                Output::Text => render::table_text(&table, digits),
                Output::Csv => render::table_csv(&table, digits),
            };
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, json, message) = match &failure {
                Failure::Usage(m) => (2, render::usage_error(m, subcommand), m.clone()),
                Failure::Domain(e) => (1, render::error(e, subcommand), e.to_string()),
            };
            if cli.output == Output::Json {
                println!("{}", render::to_json(&json));
            } else {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}
