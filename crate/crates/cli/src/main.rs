use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ramify::galois::TowerSpec;
use ramify::pm_oracle::CatalogOptions;
use ramify::report::{
    build_report, builtin_examples, ground_name, knots_tsv, not_galois_report, Report,
    ReportOptions, REPORT_SCHEMA,
};
use ramify::Error;

#[derive(Parser)]
#[command(
    name = "ramify",
    version,
    about = "Ramification invariants of Galois extensions of local fields, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: breaks, conductor, scan verdicts and lattice tables
    Report(RunArgs),
    /// Scan verdicts only: table over the grid, lower bound, window check
    PmScan(RunArgs),
    /// Subextension lattice tables only
    Lattice(RunArgs),
    /// List the built-in examples with their expected invariants
    Catalog {
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Extension specification file (JSON)
    spec: PathBuf,
    /// Working precision in uniformizer digits; overrides RAMIFY_PRECISION
    /// and the spec's own setting
    #[arg(long)]
    precision: Option<i64>,
    /// Denominator bound for the scan grid
    #[arg(long = "m-grid", default_value_t = 4, value_name = "D")]
    m_grid: i64,
    /// Catalog knobs as comma-separated key:value pairs, e.g.
    /// "tame:4,perturb:true"
    #[arg(long, value_name = "KNOBS")]
    catalog: Option<String>,
    /// Additionally print breaks in the classical shifted numbering
    #[arg(long = "serre-convention")]
    serre: bool,
    /// Print the Herbrand knots as TSV instead of a JSON report
    #[arg(long)]
    tsv: bool,
    /// Write output to a file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// Reduced report for `pm-scan`.
#[derive(Serialize)]
struct PmView<'a> {
    schema: &'a str,
    extension: &'a ramify::report::ExtensionSummary,
    u_max: &'a ramify::exactmath::rat::BreakBound,
    pm: &'a ramify::report::PmSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u64>,
}

/// Reduced report for `lattice`.
#[derive(Serialize)]
struct LatticeView<'a> {
    schema: &'a str,
    extension: &'a ramify::report::ExtensionSummary,
    u_max: &'a ramify::exactmath::rat::BreakBound,
    lattice: &'a ramify::report::LatticeSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u64>,
}

#[derive(Serialize)]
struct CatalogRow {
    name: &'static str,
    ground: String,
    degree: usize,
    expected_u: String,
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::BadInput(_) | Error::NotEisenstein(_) => ExitCode::from(2),
        Error::NotGalois { .. } => ExitCode::from(3),
        Error::IdentityFailure(_) => ExitCode::from(4),
        _ => ExitCode::from(1),
    }
}

fn parse_catalog_knobs(text: &str) -> Result<CatalogOptions, String> {
    let mut opts = CatalogOptions::default();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once(':')
            .ok_or_else(|| format!("catalog knob {part:?} is not key:value"))?;
        match key {
            "tame" => {
                opts.e_max = value
                    .parse()
                    .map_err(|_| format!("tame bound {value:?} is not an integer"))?
            }
            "perturb" => {
                opts.perturb = value
                    .parse()
                    .map_err(|_| format!("perturb flag {value:?} is not a boolean"))?
            }
            "max" => {
                opts.max_entries = value
                    .parse()
                    .map_err(|_| format!("entry cap {value:?} is not an integer"))?
            }
            other => return Err(format!("unknown catalog knob {other:?}")),
        }
    }
    Ok(opts)
}

fn env_precision() -> Option<i64> {
    std::env::var("RAMIFY_PRECISION").ok()?.trim().parse().ok()
}

fn load_spec(path: &PathBuf) -> Result<TowerSpec, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))?;
    TowerSpec::from_json(&text)
}

/// Writes to stdout, treating a closed pipe as an ordinary end of output.
fn print_stdout(body: &str) -> Result<(), Error> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(body.as_bytes()).and_then(|_| out.write_all(b"\n")) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(Error::BadInput(format!("cannot write to stdout: {e}"))),
    }
}

fn emit(args: &RunArgs, body: String) -> Result<(), Error> {
    match &args.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::BadInput(format!("cannot write {}: {e}", path.display()))),
        None => print_stdout(&body),
    }
}

fn assemble(args: &RunArgs, pm: bool, lattice: bool) -> Result<(Report, u64), Error> {
    let spec = load_spec(&args.spec)?;
    spec.validate()?;
    let precision = args
        .precision
        .or_else(env_precision)
        .unwrap_or_else(|| spec.precision());
    let catalog = match &args.catalog {
        Some(text) => parse_catalog_knobs(text).map_err(Error::BadInput)?,
        None => CatalogOptions::default(),
    };
    let mut builtin_subextensions = Vec::new();
    // A spec matching a built-in example inherits its named subextensions,
    // so lattice members come out labeled.
    for ex in builtin_examples() {
        if ex.spec.base == spec.base && ex.spec.steps == spec.steps {
            builtin_subextensions = ex.subextensions;
            break;
        }
    }
    let opts = ReportOptions {
        precision,
        grid_denominator: args.m_grid,
        catalog,
        serre: args.serre,
        pm,
        lattice,
        subextensions: builtin_subextensions,
    };

    let start = Instant::now();
    let report = match build_report(&spec, &opts) {
        Ok(r) => r,
        Err(Error::NotGalois { found, degree }) => {
            let summary = not_galois_report(&spec, &opts, found, degree)?;
            print_stdout(&serde_json::to_string_pretty(&summary).expect("summary json"))?;
            return Err(Error::NotGalois { found, degree });
        }
        Err(e) => return Err(e),
    };
    Ok((report, start.elapsed().as_millis() as u64))
}

fn cmd_report(args: &RunArgs) -> Result<(), Error> {
    let (mut report, ms) = assemble(args, true, true)?;
    if args.tsv {
        return emit(args, knots_tsv(&report));
    }
    report.timing_ms = Some(ms);
    emit(args, serde_json::to_string_pretty(&report).expect("report json"))
}

fn cmd_pm_scan(args: &RunArgs) -> Result<(), Error> {
    let (report, ms) = assemble(args, true, false)?;
    let view = PmView {
        schema: REPORT_SCHEMA,
        extension: &report.extension,
        u_max: &report.breaks.u_max,
        pm: report.pm.as_ref().expect("scan section"),
        timing_ms: Some(ms),
    };
    emit(args, serde_json::to_string_pretty(&view).expect("scan json"))
}

fn cmd_lattice(args: &RunArgs) -> Result<(), Error> {
    let (report, ms) = assemble(args, false, true)?;
    let view = LatticeView {
        schema: REPORT_SCHEMA,
        extension: &report.extension,
        u_max: &report.breaks.u_max,
        lattice: report.lattice.as_ref().expect("lattice section"),
        timing_ms: Some(ms),
    };
    emit(args, serde_json::to_string_pretty(&view).expect("lattice json"))
}

fn cmd_catalog(json: bool) -> Result<(), Error> {
    let rows: Vec<CatalogRow> = builtin_examples()
        .iter()
        .map(|ex| {
            let degree = ex
                .spec
                .steps
                .iter()
                .map(|s| match s {
                    ramify::galois::StepSpec::Unramified { degree, .. } => *degree,
                    ramify::galois::StepSpec::Eisenstein { coeffs } => coeffs.len() - 1,
                })
                .product();
            CatalogRow {
                name: ex.name,
                ground: ground_name(ex.spec.ground().expect("builtin ground")),
                degree,
                expected_u: ex.expected_u.to_string(),
            }
        })
        .collect();
    if json {
        return print_stdout(&serde_json::to_string_pretty(&rows).expect("catalog json"));
    }
    let mut table = format!(
        "{:<10} {:<10} {:>6}  {}\n",
        "name", "ground", "degree", "expected u"
    );
    for row in rows {
        table.push_str(&format!(
            "{:<10} {:<10} {:>6}  {}\n",
            row.name, row.ground, row.degree, row.expected_u
        ));
    }
    print_stdout(table.trim_end())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Report(args) => cmd_report(args),
        Command::PmScan(args) => cmd_pm_scan(args),
        Command::Lattice(args) => cmd_lattice(args),
        Command::Catalog { json } => cmd_catalog(*json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
