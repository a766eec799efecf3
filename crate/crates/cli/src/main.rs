mod document;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qcdesign::search::{
    optimize_with_limit, orthogonal_array_ceiling, reproduce_table, Criterion, Fraction, TableId, DEFAULT_MAX_N,
};
use qcdesign::theory::{projectivity_bound, theory_spectrum};
use qcdesign::{
    build_design, oracle, Branch, DesignMatrix, Family, GeneratorSpec, LambdaProfile, Resolution, WordSpectrum,
};
use serde_json::json;

use document::{decimal, design_to_csv, DesignDocument, EmbeddedMetrics, Exact, ExactResolution, LoadedDesign};
use report::{render, ReportFormat, ReportRow};

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;

/// Two-level designs from quaternary codes.
#[derive(Parser, Debug)]
#[command(name = "qcdesign", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a design matrix and write it as JSON or CSV.
    Build(BuildArgs),
    /// Resolution, WLP, spectrum and projectivity of one design.
    Metrics(MetricsArgs),
    /// Word spectrum of one design.
    Spectrum(SpectrumArgs),
    /// Exhaustive search for the optimal design of one size.
    Search(SearchArgs),
    /// Re-derive the published optimum tables and check every row.
    Tables(TablesArgs),
    /// Compare theory with the brute-force oracle over whole design spaces.
    Verify(VerifyArgs),
    /// Projectivity bounds for a design size or a single design.
    Bound(BoundArgs),
}

#[derive(Args, Debug, Clone)]
struct Construction {
    #[arg(long)]
    family: Option<Family>,
    /// Generator length; inferred from --u/--v or --lambda when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated Z4 digits.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    u: Option<Vec<u8>>,
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    v: Option<Vec<u8>>,
    /// Ten-digit lambda profile, realized by canonical generators.
    #[arg(long, conflicts_with_all = ["u", "v"])]
    lambda: Option<LambdaProfile>,
    /// Two digits u0 v0, e.g. `12`; odd-run families only.
    #[arg(long)]
    u0v0: Option<Branch>,
}

impl Construction {
    fn given(&self) -> bool {
        self.family.is_some() || self.u.is_some() || self.v.is_some() || self.lambda.is_some()
    }

    fn spec(&self) -> Result<GeneratorSpec> {
        let Some(family) = self.family else {
            bail!("--family is required");
        };
        let spec = match (&self.lambda, &self.u, &self.v) {
            (Some(lambda), _, _) => GeneratorSpec::from_lambda(family, lambda, self.u0v0)?,
            (None, Some(u), Some(v)) => GeneratorSpec::new(family, u.clone(), v.clone(), self.u0v0)?,
            _ => bail!("give --u and --v, or --lambda"),
        };
        if let Some(n) = self.n {
            if n != spec.n() {
                bail!("--n {n} does not match generators of length {}", spec.n());
            }
        }
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DesignFormat {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    construction: Construction,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: DesignFormat,
    /// Embed closed-form metrics and measured projectivity in the JSON document.
    #[arg(long)]
    with_metrics: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Theory,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Source {
    /// JSON design document or ±1 CSV matrix.
    #[arg(long, conflicts_with_all = ["family", "u", "v", "lambda", "u0v0"])]
    design: Option<PathBuf>,
    #[command(flatten)]
    construction: Construction,
}

impl Source {
    fn load(&self) -> Result<LoadedDesign> {
        match &self.design {
            Some(path) => document::load(path),
            None if self.construction.given() => {
                let spec = self.construction.spec()?;
                Ok(LoadedDesign {
                    design: build_design(&spec),
                    spec: Some(spec),
                    metrics: None,
                })
            }
            None => bail!("give --design PATH or construction flags"),
        }
    }
}

#[derive(Args, Debug)]
struct MetricsArgs {
    #[command(flatten)]
    source: Source,
    /// Defaults to `both` when generator data is available, else `oracle`.
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "oracle")]
    method: Method,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    family: Family,
    #[arg(long, default_value = "aberration")]
    criterion: Criterion,
    #[arg(long, value_enum, default_value = "md")]
    report: ReportFormat,
    /// Largest n accepted; larger spaces take long to search.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// Table numbers, any of 3, 4, 5, 6; all four when omitted.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(3..=6))]
    which: Vec<u8>,
    #[arg(long, value_enum, default_value = "md")]
    report: ReportFormat,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    /// Comma-separated families; all four when omitted.
    #[arg(long, value_delimiter = ',')]
    families: Vec<Family>,
    /// Random designs per family and per n above --n-max.
    #[arg(long, default_value_t = 0)]
    sample: usize,
    /// Largest n for random sampling.
    #[arg(long, default_value_t = 5)]
    sample_n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    construction: Construction,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// `QCDESIGN_THREADS` sizes the worker pool; results never depend on it.
fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("QCDESIGN_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .with_context(|| format!("QCDESIGN_THREADS=`{value}` is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Build(args) => cmd_build(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Search(args) => cmd_search(args),
        Command::Tables(args) => cmd_tables(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bound(args) => cmd_bound(args),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn embedded_metrics(spec: &GeneratorSpec, design: &DesignMatrix) -> Result<EmbeddedMetrics> {
    let spectrum = theory_spectrum(spec.family(), &spec.lambda(), spec.branch())?;
    let (resolution, wlp) = spectrum.metrics(spec.factors())?;
    Ok(EmbeddedMetrics {
        resolution: ExactResolution(resolution),
        resolution_decimal: decimal(resolution),
        wlp: wlp.into_iter().map(Exact).collect(),
        projectivity: Some(oracle::projectivity(design)),
    })
}

fn cmd_build(args: BuildArgs) -> Result<u8> {
    let spec = args.construction.spec()?;
    let design = build_design(&spec);
    let text = match args.format {
        DesignFormat::Json => {
            let mut doc = DesignDocument::new(&spec, &design);
            if args.with_metrics {
                doc.metrics = Some(embedded_metrics(&spec, &design)?);
            }
            doc.to_json()? + "\n"
        }
        DesignFormat::Csv => design_to_csv(&design)?,
    };
    emit(&text, args.out.as_ref())?;
    if args.out.is_some() {
        eprintln!(
            "wrote {} design: {} runs x {} factors, lambda {}",
            spec.family().design_label(spec.n()),
            design.runs(),
            design.factors(),
            spec.lambda()
        );
    }
    Ok(0)
}

/// One method's view of a design.
struct Measured {
    spectrum: WordSpectrum,
    resolution: Resolution,
    wlp: Vec<qcdesign::Rational>,
    projectivity: Option<usize>,
}

fn measure(loaded: &LoadedDesign, method: Method) -> Result<Measured> {
    let spectrum = match method {
        Method::Theory => {
            let Some(spec) = &loaded.spec else {
                bail!("theory needs generator data; give a JSON document or construction flags");
            };
            theory_spectrum(spec.family(), &spec.lambda(), spec.branch())?
        }
        _ => oracle::spectrum_bruteforce(&loaded.design)?,
    };
    let (resolution, wlp) = spectrum.metrics(loaded.design.factors())?;
    let projectivity = (method == Method::Oracle).then(|| oracle::projectivity(&loaded.design));
    Ok(Measured {
        spectrum,
        resolution,
        wlp,
        projectivity,
    })
}

fn spectrum_json(s: &WordSpectrum) -> serde_json::Value {
    s.groups()
        .iter()
        .map(|g| json!({"length": g.length, "aliasing": g.aliasing.to_string(), "count": g.count}))
        .collect()
}

fn measured_json(m: &Measured) -> serde_json::Value {
    let mut v = json!({
        "resolution": m.resolution.to_string(),
        "resolution_decimal": decimal(m.resolution),
        "wlp": m.wlp.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "spectrum": spectrum_json(&m.spectrum),
    });
    if let Some(p) = m.projectivity {
        v["projectivity"] = json!(p);
    }
    v
}

fn measured_text(name: &str, m: &Measured) -> String {
    let wlp: Vec<String> = m.wlp.iter().map(ToString::to_string).collect();
    let resolution = match decimal(m.resolution) {
        Some(d) => format!("{} ({d})", m.resolution),
        None => m.resolution.to_string(),
    };
    let mut out = format!(
        "{name}:\n  R = {resolution}\n  A = ({})\n  spectrum = {}\n",
        wlp.join(", "),
        m.spectrum
    );
    if let Some(p) = m.projectivity {
        out.push_str(&format!("  projectivity = {p}\n"));
    }
    out
}

fn header(loaded: &LoadedDesign) -> (String, serde_json::Value) {
    let d = &loaded.design;
    match &loaded.spec {
        Some(spec) => (
            format!(
                "{} {} lambda {}{} ({} runs, {} factors)",
                spec.family().design_label(spec.n()),
                spec.family(),
                spec.lambda(),
                spec.branch().map_or_else(String::new, |b| format!(" u0v0 {b}")),
                d.runs(),
                d.factors()
            ),
            json!({
                "family": spec.family().name(),
                "n": spec.n(),
                "lambda": spec.lambda().to_string(),
                "u0v0": spec.branch().map(|b| b.to_string()),
                "runs": d.runs(),
                "factors": d.factors(),
            }),
        ),
        None => (
            format!("external design ({} runs, {} factors)", d.runs(), d.factors()),
            json!({"runs": d.runs(), "factors": d.factors()}),
        ),
    }
}

fn cmd_metrics(args: MetricsArgs) -> Result<u8> {
    let loaded = args.source.load()?;
    let method = args.method.unwrap_or(if loaded.spec.is_some() {
        Method::Both
    } else {
        Method::Oracle
    });
    let mut views = Vec::new();
    if matches!(method, Method::Theory | Method::Both) {
        views.push(("theory", measure(&loaded, Method::Theory)?));
    }
    if matches!(method, Method::Oracle | Method::Both) {
        views.push(("oracle", measure(&loaded, Method::Oracle)?));
    }
    let agree = match views.as_slice() {
        [(_, t), (_, o)] => Some(t.spectrum == o.spectrum),
        _ => None,
    };
    let stored = loaded.metrics.as_ref().map(|e| {
        views.iter().all(|(_, m)| {
            e.resolution.0 == m.resolution
                && e.wlp.iter().map(|x| x.0).eq(m.wlp.iter().copied())
                && (e.projectivity.is_none() || m.projectivity.is_none() || e.projectivity == m.projectivity)
        })
    });
    let (title, design) = header(&loaded);
    match args.format {
        OutputFormat::Text => {
            let mut out = format!("design: {title}\n");
            for (name, m) in &views {
                out.push_str(&measured_text(name, m));
            }
            if let Some(agree) = agree {
                out.push_str(if agree {
                    "theory and oracle agree\n"
                } else {
                    "MISMATCH between theory and oracle\n"
                });
            }
            if let Some(stored) = stored {
                out.push_str(if stored {
                    "embedded metrics agree\n"
                } else {
                    "MISMATCH with embedded metrics\n"
                });
            }
            print!("{out}");
        }
        OutputFormat::Json => {
            let mut v = json!({"design": design});
            for (name, m) in &views {
                v[*name] = measured_json(m);
            }
            if let Some(agree) = agree {
                v["agree"] = json!(agree);
            }
            if let Some(stored) = stored {
                v["embedded_metrics_agree"] = json!(stored);
            }
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
    }
    Ok(if agree == Some(false) || stored == Some(false) {
        EXIT_MISMATCH
    } else {
        0
    })
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<u8> {
    if args.method == Method::Both {
        bail!("spectrum takes --method theory or oracle; use `metrics --method both` to compare");
    }
    let loaded = args.source.load()?;
    let m = measure(&loaded, args.method)?;
    match args.format {
        OutputFormat::Text => {
            println!("length,aliasing,count");
            for g in m.spectrum.groups() {
                println!("{},{},{}", g.length, g.aliasing, g.count);
            }
        }
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&spectrum_json(&m.spectrum))?),
    }
    Ok(0)
}

fn cmd_search(args: SearchArgs) -> Result<u8> {
    let result = optimize_with_limit(args.n, args.family, args.criterion, args.max_n)?;
    print!("{}", render(&[ReportRow::from_search(&result)], args.report)?);
    Ok(0)
}

fn cmd_tables(args: TablesArgs) -> Result<u8> {
    let tables: Vec<TableId> = if args.which.is_empty() {
        TableId::ALL.to_vec()
    } else {
        args.which
            .iter()
            .map(|&k| TableId::from_number(k).expect("range checked by the parser"))
            .collect()
    };
    let mut rows = Vec::new();
    let mut failed = false;
    for table in tables {
        let report = reproduce_table(table)?;
        let passed = report.rows.iter().filter(|r| r.passed()).count();
        eprintln!("table {}: {passed}/{} rows PASS", table.number(), report.rows.len());
        failed |= !report.passed();
        rows.extend(report::table_rows(&report));
    }
    print!("{}", render(&rows, args.report)?);
    Ok(if failed { EXIT_MISMATCH } else { 0 })
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let families = if args.families.is_empty() {
        Family::ALL.to_vec()
    } else {
        args.families
    };
    let mut tallies = Vec::new();
    for n in 1..=args.n_max {
        for &family in &families {
            let t = verify::exhaustive(n, family)?;
            println!("n={n} {family}: {} designs, {} failures", t.designs, t.failures);
            tallies.push(t);
        }
    }
    if args.sample > 0 {
        let mut rng = verify::seeded(args.seed);
        for n in args.n_max + 1..=args.sample_n_max {
            for &family in &families {
                let t = verify::sampled(n, family, args.sample, &mut rng)?;
                println!(
                    "n={n} {family}: {} sampled designs (seed {}), {} failures",
                    t.designs, args.seed, t.failures
                );
                tallies.push(t);
            }
        }
    }
    let total = verify::combine(tallies);
    println!("total: {} designs, {} failures", total.designs, total.failures);
    match total.first {
        Some(c) => {
            println!("first counterexample: {} [{}] {}", c.spec, c.check, c.detail);
            Ok(EXIT_MISMATCH)
        }
        None => Ok(0),
    }
}

fn cmd_bound(args: BoundArgs) -> Result<u8> {
    let c = &args.construction;
    let Some(family) = c.family else {
        bail!("--family is required");
    };
    let design_given = c.u.is_some() || c.v.is_some() || c.lambda.is_some();
    let spec = design_given.then(|| c.spec()).transpose()?;
    let Some(n) = c.n.or(spec.as_ref().map(GeneratorSpec::n)) else {
        bail!("give --n or a design");
    };
    let q = family.factors(n);
    println!("{} {family} (n = {n})", family.design_label(n));
    match projectivity_bound(n, family) {
        Ok(b) => println!("closed-form projectivity bound: {b}"),
        Err(e) => println!("closed-form projectivity bound: none ({e})"),
    }
    println!(
        "orthogonal-array ceiling: {}",
        orthogonal_array_ceiling(q, Fraction::of(family))
    );
    if let Some(spec) = spec {
        let spectrum = theory_spectrum(family, &spec.lambda(), spec.branch())?;
        let (resolution, _) = spectrum.metrics(q)?;
        let lower = match resolution {
            Resolution::Finite(r) => (r.ceil().to_integer() as usize).saturating_sub(1),
            Resolution::Unbounded => q,
        };
        let upper = spectrum.complete_words().map(|g| g.length - 1).min().unwrap_or(q);
        println!(
            "lambda {}: R = {resolution}, projectivity in [{lower}, {upper}]",
            spec.lambda()
        );
    }
    Ok(0)
}
