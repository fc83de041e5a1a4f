//! Command-line surface over the `permvol` library.
//!
//! Exit status: 0 on success, 1 when a computation fails (or a verification
//! check does not pass), 2 on a usage error. Nothing is written to the
//! primary output on an error path.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use permvol::oracle::{self, Budget};
use permvol::{
    dyck, face_volume, gamma, gamma_path, north_step_labels, parse_rational, volume, DyckPath,
    Error, Format, GammaKind, Method, Rational, SimpleSubset, WeightVector,
};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "permvol", version, about = "Exact volume polynomials of type-A permutohedra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Dyck,
    Recursive,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dyck => Method::DyckSum,
            MethodArg::Recursive => Method::Recursion,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Plain,
    Latex,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Plain => Format::Plain,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the volume polynomial V_n.
    Volume {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Dyck)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print a north-step polynomial, or the product along a path.
    Gamma {
        /// Dyck path as an N/E string; overrides --d/--i/--u.
        #[arg(long)]
        path: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, default_value_t = 0)]
        u: usize,
        /// Divide each factor by sqrt(c_{d,i,i}).
        #[arg(long)]
        primed: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// List all Dyck paths of size n.
    Paths {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Print the (d,i,u) labels of the north steps of a path.
    Labels {
        #[arg(long)]
        path: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Print face volumes V_J; every subset J when --J is omitted.
    Faces {
        #[arg(long)]
        n: usize,
        /// Comma-separated simple reflection indices; empty for J = {}.
        #[arg(long = "J")]
        j: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Cross-check the formula against the recursion and geometric oracles.
    Verify {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = oracle::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Evaluate V_n at a weight.
    Eval {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Recursive)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
        #[arg(long)]
        threads: Option<usize>,
    },
}

/// Why a command failed.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or flag values; exit status 2.
    Usage(String),
    /// A library error; exit status 1.
    Compute(Error),
    /// Ran fine but verification did not pass; the report is still printed.
    ChecksFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn usage(flag: &str, message: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("invalid value for --{flag}: {message}"))
}

/// Comma-separated rationals, each `p/q` or an integer.
pub fn parse_weight(text: &str) -> Result<Vec<Rational>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| parse_rational(s).map_err(|e| usage("x", e))).collect()
}

fn parse_indices(text: &str) -> Result<Vec<usize>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| usage("J", format!("{s:?}: {e}"))))
        .collect()
}

fn parse_path(text: &str) -> Result<DyckPath, Failure> {
    if let Some(bad) = text.trim().chars().find(|c| !matches!(c, 'N' | 'E' | 'n' | 'e')) {
        return Err(usage("path", format!("unexpected symbol {bad:?}; use N and E")));
    }
    Ok(text.parse::<DyckPath>()?)
}

fn weight_vector(n: Option<usize>, x: &str) -> Result<WeightVector, Failure> {
    let coords = parse_weight(x)?;
    if let Some(n) = n {
        if n != coords.len() {
            return Err(usage("x", format!("{} values given but --n is {n}", coords.len())));
        }
    }
    Ok(WeightVector::new(coords))
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    job: impl FnOnce() -> Result<T, Failure> + Send,
) -> Result<T, Failure> {
    match threads {
        None => job(),
        Some(0) => Err(usage("threads", "must be at least 1")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| usage("threads", e))?
            .install(job),
    }
}

fn labels_text(path: &DyckPath, format: FormatArg) -> String {
    let labels = north_step_labels(path);
    match format {
        FormatArg::Plain => {
            let items: Vec<String> = labels.iter().map(ToString::to_string).collect();
            format!("[{}]", items.join(","))
        }
        FormatArg::Latex => labels
            .iter()
            .map(|l| format!("\\Gamma_{{{},{}}}[{}]", l.d, l.i, l.u))
            .collect::<Vec<_>>()
            .join("\\,"),
        FormatArg::Json => serde_json::to_string(&labels).expect("labels serialise"),
    }
}

/// Runs one command and returns its primary output.
pub fn execute(command: &Command) -> Result<String, Failure> {
    let text = match command {
        Command::Volume { n, method, format, threads } => {
            let v = with_threads(*threads, || Ok(volume(*n, (*method).into())?))?;
            v.value.render((*format).into())
        }
        Command::Gamma { path, d, i, u, primed, format } => {
            let kind = if *primed { GammaKind::Primed } else { GammaKind::Rational };
            let poly = match (path, d, i) {
                (Some(p), _, _) => gamma_path(&parse_path(p)?, kind),
                (None, Some(d), Some(i)) => gamma(*d, *i, *u, kind)?,
                _ => return Err(Failure::Usage("gamma needs --path, or both --d and --i".into())),
            };
            poly.render((*format).into())
        }
        Command::Paths { n, format } => {
            let paths = dyck::enumerate(*n)?;
            match format {
                FormatArg::Json => serde_json::to_string(&paths.collect::<Vec<_>>())
                    .expect("paths serialise"),
                _ => paths.map(|p| p.to_string()).collect::<Vec<_>>().join("\n"),
            }
        }
        Command::Labels { path, format } => labels_text(&parse_path(path)?, *format),
        Command::Faces { n, j, format } => match j {
            Some(j) => {
                let subset = SimpleSubset::new(*n, parse_indices(j)?)?;
                face_volume(&subset).render((*format).into())
            }
            None => {
                if *n > 12 {
                    return Err(usage("n", "listing every face needs n <= 12; pass --J"));
                }
                let faces = SimpleSubset::all(*n).map(|s| (face_volume(&s), s));
                match format {
                    FormatArg::Json => {
                        let items: Vec<_> = faces
                            .map(|(v, s)| json!({"J": s.members().collect::<Vec<_>>(), "volume": v.to_json_value()}))
                            .collect();
                        serde_json::to_string(&items).expect("faces serialise")
                    }
                    f => faces
                        .map(|(v, s)| format!("{s}: {}", v.render((*f).into())))
                        .collect::<Vec<_>>()
                        .join("\n"),
                }
            }
        },
        Command::Verify { n, x, samples, seed, threads } => {
            let x = weight_vector(*n, x)?;
            let budget = Budget { samples: *samples, seed: *seed };
            let report = with_threads(*threads, || Ok(oracle::verify(&x, &budget)?))?;
            let text = serde_json::to_string_pretty(&report).expect("report serialises");
            if !report.passed {
                return Err(Failure::ChecksFailed(text));
            }
            text
        }
        Command::Eval { n, x, method, format, threads } => {
            let x = weight_vector(*n, x)?;
            x.ensure_dominant()?;
            let v = with_threads(*threads, || Ok(volume(x.rank(), (*method).into())?))?;
            let exact = v.value.evaluate(x.coords())?;
            match format {
                FormatArg::Plain => format!("{exact} ≈ {}", exact.to_f64()),
                FormatArg::Latex => {
                    let q = &exact.rational;
                    let mut s = if q.is_integer() {
                        q.numer().to_string()
                    } else {
                        format!("\\tfrac{{{}}}{{{}}}", q.numer(), q.denom())
                    };
                    if exact.radicand != 1 {
                        s.push_str(&format!("\\sqrt{{{}}}", exact.radicand));
                    }
                    s
                }
                FormatArg::Json => json!({
                    "n": x.rank(),
                    "exact": exact.to_string(),
                    "rational": exact.rational.to_string(),
                    "radicand": exact.radicand,
                    "value": exact.to_f64(),
                })
                .to_string(),
            }
        }
    };
    Ok(text)
}

/// Parses `args` (including the program name), runs the command and writes
/// to `out`/`err`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
        Err(Failure::ChecksFailed(report)) => {
            let _ = writeln!(out, "{report}");
            let _ = writeln!(err, "error: verification failed");
            1
        }
    }
}
