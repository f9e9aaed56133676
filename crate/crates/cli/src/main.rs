//! `bergman-spectra`: command-line front end for the analysis core.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bergman_spectra::acceptance;
use bergman_spectra::constructions::{
    build_counterexample, isolated_points, verify_construction, ConstructionParams,
};
use bergman_spectra::matrix::{
    build_section, radial_shift_section, residual, section_eigenvalues, series_eigenvector,
};
use bergman_spectra::polynomial::parse_complex;
use bergman_spectra::raster::{rasterize, render, Bbox, Format};
use bergman_spectra::spectral::{
    analyze, classify_point, hyponormal_screen, invertible, range_inclusion_check, weyl_report,
    HarmonicSymbol, REPORT_SCHEMA,
};
use bergman_spectra::{Complex64, Config, Error, Poly, Tolerances};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

fn defaults() -> Config<f64> {
    Config::default()
}

fn tol() -> Tolerances<f64> {
    Tolerances::default()
}

#[derive(Parser)]
#[command(
    name = "bergman-spectra",
    version,
    about = "Spectra of Bergman-space Toeplitz operators T_{z̄+p}"
)]
struct Cli {
    #[command(flatten)]
    knobs: Knobs,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Analysis knobs. Every flag can also be set through its environment
/// variable; flags win.
#[derive(Args)]
struct Knobs {
    #[arg(long, global = true, env = "BERGMAN_ROOT_RESIDUAL_TOL", default_value_t = tol().root_residual_tol, help_heading = "Config")]
    root_residual_tol: f64,
    #[arg(long, global = true, env = "BERGMAN_CLUSTER_TOL", default_value_t = tol().cluster_tol, help_heading = "Config")]
    cluster_tol: f64,
    #[arg(long, global = true, env = "BERGMAN_BOUNDARY_BAND", default_value_t = tol().boundary_band, help_heading = "Config")]
    boundary_band: f64,
    #[arg(long, global = true, env = "BERGMAN_EIGEN_CONDITION_TOL", default_value_t = tol().eigen_condition_tol, help_heading = "Config")]
    eigen_condition_tol: f64,
    #[arg(long, global = true, env = "BERGMAN_INDETERMINACY_BAND", default_value_t = tol().indeterminacy_band, help_heading = "Config")]
    indeterminacy_band: f64,
    #[arg(long, global = true, env = "BERGMAN_DEDUP_TOL", default_value_t = tol().dedup_tol, help_heading = "Config")]
    dedup_tol: f64,
    #[arg(long, global = true, env = "BERGMAN_SERIES_MARGIN", default_value_t = tol().series_margin, help_heading = "Config")]
    series_margin: f64,
    #[arg(long, global = true, env = "BERGMAN_SCREEN_MARGIN", default_value_t = tol().screen_margin, help_heading = "Config")]
    screen_margin: f64,
    #[arg(long, global = true, env = "BERGMAN_RANGE_TOL", default_value_t = tol().range_tol, help_heading = "Config")]
    range_tol: f64,
    #[arg(long, global = true, env = "BERGMAN_TAIL_MARGIN", default_value_t = tol().tail_margin, help_heading = "Config")]
    tail_margin: f64,
    /// Largest n scanned for isolated eigenvalues (inclusive).
    #[arg(long, global = true, env = "BERGMAN_N_MAX", default_value_t = defaults().n_max, help_heading = "Config")]
    n_max: usize,
    #[arg(long, global = true, env = "BERGMAN_N_CAP", default_value_t = defaults().n_cap, help_heading = "Config")]
    n_cap: usize,
    #[arg(long, global = true, env = "BERGMAN_ARG_SAMPLES", default_value_t = defaults().arg_samples, help_heading = "Config")]
    arg_samples: usize,
    #[arg(long, global = true, env = "BERGMAN_MAX_ARG_SAMPLES", default_value_t = defaults().max_arg_samples, help_heading = "Config")]
    max_arg_samples: usize,
    #[arg(long, global = true, env = "BERGMAN_ROOT_MAX_ITER", default_value_t = defaults().root_max_iter, help_heading = "Config")]
    root_max_iter: usize,
    /// Series length M.
    #[arg(long = "series", global = true, env = "BERGMAN_SERIES", default_value_t = defaults().series_len, help_heading = "Config")]
    series_len: usize,
    /// Finite-section size N.
    #[arg(long = "size", global = true, env = "BERGMAN_SIZE", default_value_t = defaults().section_size, help_heading = "Config")]
    section_size: usize,
    #[arg(long, global = true, env = "BERGMAN_ESSENTIAL_SAMPLES", default_value_t = defaults().essential_samples, help_heading = "Config")]
    essential_samples: usize,
    #[arg(long, global = true, env = "BERGMAN_ATLAS_GRID", default_value_t = defaults().atlas_grid, help_heading = "Config")]
    atlas_grid: usize,
    #[arg(long, global = true, env = "BERGMAN_SEED", default_value_t = defaults().seed, help_heading = "Config")]
    seed: u64,
    /// Worker threads for the parallel paths (0: one per core).
    #[arg(
        long,
        global = true,
        env = "BERGMAN_THREADS",
        default_value_t = 0,
        help_heading = "Config"
    )]
    threads: usize,
}

impl Knobs {
    fn config(&self) -> Config<f64> {
        Config {
            tol: Tolerances {
                root_residual_tol: self.root_residual_tol,
                cluster_tol: self.cluster_tol,
                boundary_band: self.boundary_band,
                eigen_condition_tol: self.eigen_condition_tol,
                indeterminacy_band: self.indeterminacy_band,
                dedup_tol: self.dedup_tol,
                series_margin: self.series_margin,
                screen_margin: self.screen_margin,
                range_tol: self.range_tol,
                tail_margin: self.tail_margin,
            },
            n_max: self.n_max,
            n_cap: self.n_cap,
            arg_samples: self.arg_samples,
            max_arg_samples: self.max_arg_samples,
            root_max_iter: self.root_max_iter,
            series_len: self.series_len,
            section_size: self.section_size,
            essential_samples: self.essential_samples,
            atlas_grid: self.atlas_grid,
            seed: self.seed,
        }
    }
}

/// Where the symbol comes from.
#[derive(Args)]
struct Input {
    /// Ascending coefficients of p, e.g. "0,-1,1" or "1,0.5-2i".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "stdin")]
    poly: Option<String>,
    /// Read a polynomial, construction JSON or report JSON from stdin.
    #[arg(long)]
    stdin: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full spectral report.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = AnalyzeFormat::Json)]
        format: AnalyzeFormat,
    },
    /// Classify a single point λ.
    Classify {
        #[command(flatten)]
        input: Input,
        /// `re,im` or a complex literal such as `0.5-1i`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Invertibility verdict with witness.
    Invertible {
        #[command(flatten)]
        input: Input,
    },
    /// Weyl's theorem verdict.
    Weyl {
        #[command(flatten)]
        input: Input,
    },
    /// Counterexample symbol for given k >= 3, n >= 1.
    Construct {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Emit the verification certificate instead of the parameters.
        #[arg(long)]
        certificate: bool,
    },
    /// Λ, N_detect and the isolation gap for a construction.
    Isolated {
        /// Construction JSON on stdin.
        #[arg(long, conflicts_with_all = ["k", "n"])]
        stdin: bool,
        #[arg(long, requires = "n")]
        k: Option<usize>,
        #[arg(long, requires = "k")]
        n: Option<usize>,
    },
    /// Classification raster as PGM, SVG or JSON.
    Raster {
        #[command(flatten)]
        input: Input,
        /// `re_min,re_max,im_min,im_max`; defaults to the padded curve box.
        #[arg(long, allow_hyphen_values = true)]
        bbox: Option<String>,
        /// `W` or `WxH`.
        #[arg(long, default_value = "256")]
        res: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// pgm, svg or json; inferred from --out when absent.
        #[arg(long)]
        format: Option<String>,
    },
    /// Finite section eigenvalues and series eigenvector residual.
    Matrix {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        lambda: String,
        /// Use the radial backward shift with this radius instead of a symbol.
        #[arg(long)]
        radial: Option<f64>,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Necessary-condition hyponormality screen.
    Hyponormal {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Also check spectrum inside the closure of the range (degree <= 2)
        /// on a polar mesh of this size.
        #[arg(long)]
        range_grid: Option<usize>,
    },
    /// Run the certification suite.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyzeFormat {
    Json,
    EssentialCsv,
    LambdaCsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

enum Failure {
    Usage(String),
    Validation(String),
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }

    fn category(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Validation(_) => "validation",
            Failure::Numeric(_) => "numeric",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Validation(m) | Failure::Numeric(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            e if e.is_numeric() => Failure::Numeric(e.to_string()),
            e => Failure::Validation(e.to_string()),
        }
    }
}

type Outcome<T = Vec<u8>> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn diagnostic(f: &Failure) -> String {
    json!({
        "schema": REPORT_SCHEMA,
        "kind": "error",
        "category": f.category(),
        "exit_code": f.code(),
        "message": f.message(),
    })
    .to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let f = usage(e.render().to_string().trim_end());
            eprintln!("{}", diagnostic(&f));
            return ExitCode::from(f.code());
        }
    };
    match run(cli) {
        Ok(bytes) => {
            let mut out = io::stdout().lock();
            if out.write_all(&bytes).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", diagnostic(&f));
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let cfg = cli.knobs.config();
    cfg.validate().map_err(usage)?;
    let pool = rayon_pool(cli.knobs.threads)?;
    pool.install(|| dispatch(cli.cmd, &cfg))
}

fn rayon_pool(threads: usize) -> Outcome<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| usage(e.to_string()))
}

fn dispatch(cmd: Cmd, cfg: &Config<f64>) -> Outcome {
    match cmd {
        Cmd::Analyze { input, format } => {
            let s = input.symbol()?;
            let report = analyze(&s, cfg)?;
            Ok(match format {
                AnalyzeFormat::Json => to_json(&report)?,
                AnalyzeFormat::EssentialCsv => report.essential_csv().into_bytes(),
                AnalyzeFormat::LambdaCsv => report.lambda_csv().into_bytes(),
            })
        }
        Cmd::Classify { input, lambda } => {
            let s = input.symbol()?;
            let lambda = parse_point(&lambda)?;
            let class = classify_point(&s, lambda, cfg);
            let mut fields = envelope("classification", &s);
            fields.insert("lambda".into(), json!([lambda.re, lambda.im]));
            fields.insert("label".into(), json!(class.label()));
            merge(&mut fields, &class)?;
            emit(fields)
        }
        Cmd::Invertible { input } => {
            let s = input.symbol()?;
            let inv = invertible(&s, cfg)?;
            let mut fields = envelope("invertibility", &s);
            fields.insert("verdict".into(), json!(inv.verdict));
            fields.insert("detail".into(), json!(inv.witness.describe()));
            fields.insert("witness".into(), value(&inv.witness)?);
            emit(fields)
        }
        Cmd::Weyl { input } => {
            let s = input.symbol()?;
            let w = weyl_report(&s, cfg)?;
            let mut fields = envelope("weyl_report", &s);
            merge(&mut fields, &w)?;
            emit(fields)
        }
        Cmd::Construct { k, n, certificate } => {
            let params = build_counterexample::<f64>(k, n)?;
            if certificate {
                let cert = verify_construction(&params, cfg)?;
                let mut fields = Map::new();
                fields.insert("schema".into(), json!(REPORT_SCHEMA));
                fields.insert("kind".into(), json!("construction_certificate"));
                merge(&mut fields, &cert)?;
                emit(fields)
            } else {
                to_json(&params)
            }
        }
        Cmd::Isolated { stdin, k, n } => {
            let params = match (stdin, k, n) {
                (true, _, _) => match parse_input(&read_stdin()?)? {
                    Parsed::Construction(p) => *p,
                    _ => return Err(usage("isolated needs construction JSON on stdin")),
                },
                (false, Some(k), Some(n)) => build_counterexample(k, n)?,
                _ => return Err(usage("isolated needs --stdin or --k and --n")),
            };
            let iso = isolated_points(&params, cfg)?;
            let mut fields = envelope("isolated_points", &params.symbol());
            fields.insert("k".into(), json!(params.k));
            fields.insert("n".into(), json!(params.n));
            merge(&mut fields, &iso)?;
            emit(fields)
        }
        Cmd::Raster {
            input,
            bbox,
            res,
            out,
            format,
        } => {
            let s = input.symbol()?;
            let format = raster_format(format.as_deref(), out.as_ref())?;
            let (w, h) = parse_res(&res)?;
            let bbox = bbox.as_deref().map(parse_bbox).transpose()?;
            let grid = rasterize(&s, bbox, w, h, cfg)?;
            let bytes = render(&grid, format);
            match out {
                Some(path) => {
                    fs::write(&path, &bytes)
                        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                    let mut fields = envelope("raster_summary", &s);
                    fields.insert("out".into(), json!(path.display().to_string()));
                    fields.insert("width".into(), json!(w));
                    fields.insert("height".into(), json!(h));
                    let counts: Map<String, Value> = grid
                        .counts()
                        .into_iter()
                        .map(|(c, n)| (c.letter().to_string(), json!(n)))
                        .collect();
                    fields.insert("counts".into(), Value::Object(counts));
                    emit(fields)
                }
                None => Ok(bytes),
            }
        }
        Cmd::Matrix {
            input,
            lambda,
            radial,
            format,
        } => matrix(input, &lambda, radial, format, cfg),
        Cmd::Hyponormal {
            input,
            samples,
            range_grid,
        } => {
            let s = input.symbol()?;
            let screen = hyponormal_screen(&s, samples, cfg)?;
            let mut fields = envelope("hyponormal_screen", &s);
            merge(&mut fields, &screen)?;
            if let Some(grid) = range_grid {
                let report = analyze(&s, cfg)?;
                let inc = range_inclusion_check(&s, &report, grid, cfg)?;
                fields.insert("range_inclusion".into(), value(&inc)?);
            }
            emit(fields)
        }
        Cmd::Selftest { json } => {
            let results = acceptance::run_all();
            let failed = results.iter().filter(|r| !r.passed).count();
            let text = if json {
                let v = json!({
                    "schema": REPORT_SCHEMA,
                    "kind": "selftest",
                    "seed": acceptance::SEED,
                    "passed": failed == 0,
                    "criteria": results,
                });
                format!("{v}\n")
            } else {
                let mut s: String = results.iter().map(|r| format!("{r}\n")).collect();
                s.push_str(&format!(
                    "selftest: {} passed, {failed} failed\n",
                    results.len() - failed
                ));
                s
            };
            if failed > 0 {
                let mut out = io::stdout().lock();
                let _ = out.write_all(text.as_bytes());
                return Err(Failure::Validation(format!("{failed} criteria failed")));
            }
            Ok(text.into_bytes())
        }
    }
}

fn matrix(
    input: Input,
    lambda: &str,
    radial: Option<f64>,
    format: TableFormat,
    cfg: &Config<f64>,
) -> Outcome {
    let n = cfg.section_size;
    let m = cfg.series_len;
    let (source, eigenvalues, series) = match radial {
        Some(r) => {
            if input.poly.is_some() || input.stdin {
                return Err(usage("--radial replaces the symbol input"));
            }
            let section = radial_shift_section(r, n)?;
            (
                json!({"radial_shift": r}),
                section_eigenvalues(&section)?,
                None,
            )
        }
        None => {
            let s = input.symbol()?;
            let lambda = parse_point(lambda)?;
            let section = build_section(&s, n)?;
            let eig = section_eigenvalues(&section)?;
            let v = series_eigenvector(&s, lambda, m, cfg)?;
            let res = residual(&section, &v)?;
            (json!({"symbol": s.p}), eig, Some((v, res)))
        }
    };
    match format {
        TableFormat::Json => {
            let mut fields = Map::new();
            fields.insert("schema".into(), json!(REPORT_SCHEMA));
            fields.insert("kind".into(), json!("matrix"));
            fields.insert("source".into(), source);
            fields.insert("size".into(), json!(n));
            fields.insert("series_len".into(), json!(m));
            let eig: Vec<[f64; 2]> = eigenvalues.iter().map(|z| [z.re, z.im]).collect();
            fields.insert("eigenvalues".into(), json!(eig));
            if let Some((v, res)) = series {
                fields.insert("lambda".into(), json!([v.lambda.re, v.lambda.im]));
                fields.insert("residual".into(), json!(res));
                fields.insert("verdict".into(), value(&v.verdict)?);
                fields.insert("method".into(), value(&v.method)?);
                fields.insert("growth_ratio".into(), json!(v.growth_ratio));
                fields.insert("log_scale".into(), json!(v.log_scale));
                fields.insert("retried".into(), json!(v.retried));
                let c: Vec<[f64; 2]> = v.coeffs.iter().map(|z| [z.re, z.im]).collect();
                fields.insert("coefficients".into(), json!(c));
            }
            emit(fields)
        }
        TableFormat::Csv => {
            let mut out = String::from("quantity,index,re,im\n");
            for (j, z) in eigenvalues.iter().enumerate() {
                out.push_str(&format!("eigenvalue,{j},{:e},{:e}\n", z.re, z.im));
            }
            if let Some((v, res)) = series {
                for (j, z) in v.coeffs.iter().enumerate() {
                    out.push_str(&format!("coefficient,{j},{:e},{:e}\n", z.re, z.im));
                }
                out.push_str(&format!("residual,0,{res:e},0\n"));
            }
            Ok(out.into_bytes())
        }
    }
}

enum Parsed {
    Poly(Poly),
    Construction(Box<ConstructionParams<f64>>),
}

impl Parsed {
    fn symbol(self) -> HarmonicSymbol<f64> {
        match self {
            Parsed::Poly(p) => HarmonicSymbol::new(p),
            Parsed::Construction(c) => c.symbol(),
        }
    }
}

impl Input {
    fn symbol(&self) -> Outcome<HarmonicSymbol<f64>> {
        match (&self.poly, self.stdin) {
            (Some(text), false) => Ok(HarmonicSymbol::new(text.parse()?)),
            (None, true) => Ok(parse_input(&read_stdin()?)?.symbol()),
            _ => Err(usage("give the symbol with --poly or --stdin")),
        }
    }
}

fn read_stdin() -> Outcome<String> {
    let mut buf = String::new();
    io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
    Ok(buf)
}

/// Polynomial text, construction JSON, or any JSON carrying the symbol.
fn parse_input(raw: &str) -> Outcome<Parsed> {
    let raw = raw.trim();
    if !raw.starts_with('{') {
        return Ok(Parsed::Poly(raw.parse()?));
    }
    let v: Value =
        serde_json::from_str(raw).map_err(|e| usage(format!("bad JSON on stdin: {e}")))?;
    let bad = |e: serde_json::Error| usage(format!("malformed input JSON: {e}"));
    if v.get("kind").and_then(Value::as_str) == Some("construction") {
        let params: ConstructionParams<f64> = serde_json::from_value(v).map_err(bad)?;
        return Ok(Parsed::Construction(Box::new(params)));
    }
    let p = v
        .get("symbol")
        .and_then(|s| if s.is_object() { s.get("p") } else { Some(s) })
        .or_else(|| v.get("p"))
        .ok_or_else(|| usage("input JSON has no symbol"))?;
    Ok(Parsed::Poly(
        serde_json::from_value(p.clone()).map_err(bad)?,
    ))
}

fn parse_point(raw: &str) -> Outcome<Complex64> {
    let parts: Vec<&str> = raw.split(',').collect();
    let z = match parts.as_slice() {
        [one] => parse_complex(one)?,
        [re, im] => Complex64::new(parse_real(re)?, parse_real(im)?),
        _ => return Err(usage(format!("bad point {raw:?}; expected re,im"))),
    };
    Ok(z)
}

fn parse_real(raw: &str) -> Outcome<f64> {
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| usage(format!("bad number {raw:?}")))
}

fn parse_bbox(raw: &str) -> Outcome<Bbox<f64>> {
    let v = raw
        .split(',')
        .map(parse_real)
        .collect::<Outcome<Vec<_>>>()?;
    match v.as_slice() {
        &[a, b, c, d] => Ok(Bbox::new(a, b, c, d)?),
        _ => Err(usage("--bbox takes re_min,re_max,im_min,im_max")),
    }
}

fn parse_res(raw: &str) -> Outcome<(usize, usize)> {
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("bad resolution {raw:?}")))
    };
    match raw.split_once(['x', 'X']) {
        Some((w, h)) => Ok((num(w)?, num(h)?)),
        None => num(raw).map(|w| (w, w)),
    }
}

fn raster_format(flag: Option<&str>, out: Option<&PathBuf>) -> Outcome<Format> {
    if let Some(f) = flag {
        return f.parse().map_err(usage);
    }
    match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some(ext) => ext.parse().map_err(usage),
        None => Ok(Format::Pgm),
    }
}

fn envelope(kind: &str, s: &HarmonicSymbol<f64>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(REPORT_SCHEMA));
    m.insert("kind".into(), json!(kind));
    m.insert("symbol".into(), json!({ "p": s.p }));
    m
}

fn value<T: serde::Serialize>(x: &T) -> Outcome<Value> {
    serde_json::to_value(x).map_err(|e| Failure::Validation(format!("serialization failed: {e}")))
}

fn merge<T: serde::Serialize>(into: &mut Map<String, Value>, x: &T) -> Outcome<()> {
    match value(x)? {
        Value::Object(m) => {
            into.extend(m);
            Ok(())
        }
        other => {
            into.insert("value".into(), other);
            Ok(())
        }
    }
}

fn emit(fields: Map<String, Value>) -> Outcome {
    let mut bytes = serde_json::to_vec(&Value::Object(fields))
        .map_err(|e| Failure::Validation(format!("serialization failed: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn to_json<T: serde::Serialize>(x: &T) -> Outcome {
    let mut bytes = serde_json::to_vec(x)
        .map_err(|e| Failure::Validation(format!("serialization failed: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}
