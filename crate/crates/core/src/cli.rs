//! The `secbc` command line.
//!
//! Exit codes: 0 success, 1 domain violation (invalid law, degenerate
//! scheme), 2 input or parse error, 3 capacity or budget error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::channel::{induced_joint, ChannelSpec, CodingScheme};
use crate::codec::{self, CodebookConfig, SWEEP_HEADER};
use crate::error::{Error, Result};
use crate::region::{corner_points, polygon_labeled, RateRegion, RegionKind, SecureTerms};
use crate::search::{search_frontier, SearchConfig};
use crate::specfile::{parse_document, parse_scheme};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

/// Containment tolerance for the `compare` verdicts.
const CONTAIN_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "secbc", version, about = "Secrecy rate regions and double-binning code simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a channel (and scheme) document; prints every violation.
    Validate(Inputs),
    /// Polygon of one region for a fixed scheme.
    Region {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "secure")]
        region: RegionKind,
    },
    /// Corner points A1..F1 of the secure region for a fixed scheme.
    Corners(Inputs),
    /// Convex hull of a region over sampled schemes.
    Frontier {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "marton")]
        region: RegionKind,
        #[arg(long, default_value_t = 5000)]
        budget: usize,
    },
    /// Monte Carlo run of the double-binning code at one block length.
    Simulate {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long = "N", default_value_t = 16)]
        n: usize,
    },
    /// One simulation per block length; writes a CSV trend table.
    Sweep {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long = "N", value_delimiter = ',', default_value = "8,16")]
        n: Vec<usize>,
    },
    /// Secure, side-information and Marton polygons for one scheme.
    Compare(Inputs),
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Channel document (JSON), optionally with an embedded scheme.
    #[arg(long)]
    pub spec: PathBuf,
    /// Scheme file; overrides a scheme embedded in the spec file.
    #[arg(long)]
    pub scheme: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CodecArgs {
    #[arg(long, default_value_t = 2000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    /// Slack in bits used when assigning rates.
    #[arg(long, default_value_t = 0.1)]
    pub margin: f64,
    /// Independent codebooks per simulation.
    #[arg(long, default_value_t = 1)]
    pub codebooks: usize,
    /// Channel outputs per leakage estimate; 0 skips leakage.
    #[arg(long, default_value_t = 200)]
    pub leakage_samples: usize,
    /// Largest leakage enumeration before leakage is reported as null.
    #[arg(long, default_value_t = 1 << 16)]
    pub enumeration_budget: usize,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            report_error(&e);
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::InvalidArgument(_) => EXIT_INPUT,
        Error::Capacity(_) => EXIT_CAPACITY,
        _ => EXIT_DOMAIN,
    }
}

fn report_error(e: &Error) {
    match e {
        Error::InvalidSpec(violations) => {
            eprintln!("error: {} violation(s)", violations.len());
            for v in violations {
                eprintln!("  {v}");
            }
        }
        _ => eprintln!("error: {e}"),
    }
}

fn execute(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Validate(inputs) => validate(inputs),
        Command::Region { inputs, region } => {
            let (spec, scheme) = load(inputs)?;
            let j = induced_joint(&spec, &scheme)?;
            let poly = polygon_labeled(&region.evaluate(&j)?, *region);
            let mut out = preamble("region", inputs, &[("region", region.name().to_string())]);
            out.push_str("label,R1,R2\n");
            push_vertices(&mut out, None, &poly);
            emit(inputs.out.as_deref(), &out)
        }
        Command::Corners(inputs) => {
            let (spec, scheme) = load(inputs)?;
            let c = corner_points(&induced_joint(&spec, &scheme)?)?;
            let mut out = preamble("corners", inputs, &[]);
            out.push_str("label,R1,R2\nO,0,0\n");
            for (label, p) in c.labeled() {
                let _ = writeln!(out, "{label},{},{}", p.r1, p.r2);
            }
            emit(inputs.out.as_deref(), &out)
        }
        Command::Frontier { inputs, region, budget } => {
            let spec = load_spec(inputs)?;
            let mut cfg = SearchConfig::new(*budget, inputs.seed);
            if let Some(s) = load_scheme_opt(inputs, &spec)? {
                cfg.initial.push(s);
            }
            let f = search_frontier(&spec, *region, &cfg)?;
            let mut out = preamble(
                "frontier",
                inputs,
                &[
                    ("region", region.name().to_string()),
                    ("budget", budget.to_string()),
                    ("evaluated", f.evaluated.to_string()),
                    ("max_u", cfg.max_u.to_string()),
                ],
            );
            out.push_str("label,R1,R2\n");
            push_vertices(&mut out, None, &f.region);
            emit(inputs.out.as_deref(), &out)
        }
        Command::Simulate { inputs, codec: args, n } => {
            let (spec, scheme) = load(inputs)?;
            let j = induced_joint(&spec, &scheme)?;
            check_margin(args.margin)?;
            let rates = codec::assign_rates(&j, args.margin)?;
            let cfg = codebook_config(args, *n, rates, inputs.seed);
            let report = codec::simulate(&spec, &scheme, &cfg)?;
            let doc = ReportDocument {
                report: &report,
                inputs: ReportInputs {
                    spec: inputs.spec.display().to_string(),
                    scheme: scheme_label(inputs),
                    margin: args.margin,
                },
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
            text.push('\n');
            emit(inputs.out.as_deref(), &text)
        }
        Command::Sweep { inputs, codec: args, n } => {
            let (spec, scheme) = load(inputs)?;
            check_margin(args.margin)?;
            if n.is_empty() {
                return Err(Error::InvalidArgument("--N needs at least one block length".into()));
            }
            let base = codebook_config(args, n[0], Default::default(), inputs.seed);
            let rows = codec::sweep(&spec, &scheme, n, args.margin, &base)?;
            let list = n.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            let mut out = preamble("sweep", inputs, &codec_fields(args, &list));
            out.push_str(SWEEP_HEADER);
            out.push('\n');
            for row in rows {
                out.push_str(&row.to_csv());
                out.push('\n');
            }
            emit(inputs.out.as_deref(), &out)
        }
        Command::Compare(inputs) => compare(inputs),
    }
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    #[serde(flatten)]
    report: &'a codec::SimulationReport,
    inputs: ReportInputs,
}

#[derive(Serialize)]
struct ReportInputs {
    spec: String,
    scheme: String,
    margin: f64,
}

fn validate(inputs: &Inputs) -> Result<i32> {
    let doc = parse_document(&read(&inputs.spec)?)?;
    let mut violations = doc.spec.validate();
    let scheme = match &inputs.scheme {
        Some(path) => Some(parse_scheme(&read(path)?, &doc.spec.alphabets)?),
        None => doc.scheme,
    };
    if let Some(s) = &scheme {
        violations.extend(s.validate_against(&doc.spec));
    }
    let mut out = preamble("validate", inputs, &[]);
    let _ = writeln!(out, "violations={}", violations.len());
    for v in &violations {
        let _ = writeln!(out, "{v}");
    }
    if violations.is_empty() {
        let _ = writeln!(out, "ok");
    }
    match &inputs.out {
        Some(path) => write_atomic(path, &out)?,
        None => print!("{out}"),
    }
    for v in &violations {
        eprintln!("violation: {v}");
    }
    Ok(if violations.is_empty() { EXIT_OK } else { EXIT_DOMAIN })
}

fn compare(inputs: &Inputs) -> Result<i32> {
    let (spec, scheme) = load(inputs)?;
    let j = induced_joint(&spec, &scheme)?;
    let kinds = [RegionKind::Secure, RegionKind::Steinberg, RegionKind::Marton];
    let polys = kinds
        .iter()
        .map(|k| Ok(polygon_labeled(&k.evaluate(&j)?, *k)))
        .collect::<Result<Vec<_>>>()?;

    let mut fields = Vec::new();
    if scheme.alphabets.u == 1 {
        let t = SecureTerms::compute(&j)?;
        fields.push(("secure_in_steinberg", polys[1].contains_region(&polys[0], CONTAIN_TOL).to_string()));
        fields.push(("steinberg_in_marton", polys[2].contains_region(&polys[1], CONTAIN_TOL).to_string()));
        fields.push(("secrecy_penalty_dominates_1", (t.v1_y2_given_v2 > t.w_v1).to_string()));
        fields.push(("secrecy_penalty_dominates_2", (t.v2_y1_given_v1 > t.w_v2).to_string()));
    } else {
        fields.push(("containment", "not checked (|U| > 1)".to_string()));
    }
    let mut out = preamble("compare", inputs, &fields);
    out.push_str("region,label,R1,R2\n");
    for (k, p) in kinds.iter().zip(&polys) {
        push_vertices(&mut out, Some(k.name()), p);
    }
    emit(inputs.out.as_deref(), &out)
}

fn check_margin(margin: f64) -> Result<()> {
    if margin > 0.0 && margin.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("--margin must be > 0, got {margin}")))
    }
}

fn codebook_config(args: &CodecArgs, n: usize, rates: codec::RateAllocation, seed: u64) -> CodebookConfig {
    CodebookConfig {
        epsilon: args.epsilon,
        seed,
        trials: args.trials,
        codebooks: args.codebooks,
        leakage_samples: args.leakage_samples,
        enumeration_budget: args.enumeration_budget,
        ..CodebookConfig::new(n, rates)
    }
}

fn codec_fields(args: &CodecArgs, n_list: &str) -> Vec<(&'static str, String)> {
    vec![
        ("N", n_list.to_string()),
        ("trials", args.trials.to_string()),
        ("epsilon", args.epsilon.to_string()),
        ("margin", args.margin.to_string()),
        ("codebooks", args.codebooks.to_string()),
        ("leakage_samples", args.leakage_samples.to_string()),
        ("enumeration_budget", args.enumeration_budget.to_string()),
    ]
}

fn scheme_label(inputs: &Inputs) -> String {
    inputs
        .scheme
        .as_ref()
        .map_or_else(|| "embedded".to_string(), |p| p.display().to_string())
}

/// `# key=value` lines recording the command, inputs and seed.
fn preamble(command: &str, inputs: &Inputs, extra: &[(&str, String)]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# command={command}");
    let _ = writeln!(s, "# spec={}", inputs.spec.display());
    let _ = writeln!(s, "# scheme={}", scheme_label(inputs));
    let _ = writeln!(s, "# seed={}", inputs.seed);
    for (k, v) in extra {
        let _ = writeln!(s, "# {k}={v}");
    }
    s
}

fn push_vertices(out: &mut String, region: Option<&str>, poly: &RateRegion) {
    for (label, p) in poly.labels.iter().zip(&poly.vertices) {
        if let Some(r) = region {
            let _ = write!(out, "{r},");
        }
        let _ = writeln!(out, "{label},{},{}", p.r1, p.r2);
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_spec(inputs: &Inputs) -> Result<ChannelSpec> {
    Ok(parse_document(&read(&inputs.spec)?)?.spec)
}

fn load_scheme_opt(inputs: &Inputs, spec: &ChannelSpec) -> Result<Option<CodingScheme>> {
    match &inputs.scheme {
        Some(path) => Ok(Some(parse_scheme(&read(path)?, &spec.alphabets)?)),
        None => Ok(parse_document(&read(&inputs.spec)?)?.scheme),
    }
}

fn load(inputs: &Inputs) -> Result<(ChannelSpec, CodingScheme)> {
    let doc = parse_document(&read(&inputs.spec)?)?;
    let scheme = match &inputs.scheme {
        Some(path) => parse_scheme(&read(path)?, &doc.spec.alphabets)?,
        None => doc.scheme.ok_or_else(|| {
            Error::InvalidArgument("no scheme: pass --scheme or embed a `scheme` block in the spec file".into())
        })?,
    };
    Ok((doc.spec, scheme))
}

fn emit(path: Option<&Path>, text: &str) -> Result<i32> {
    match path {
        Some(p) => write_atomic(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(EXIT_OK)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
