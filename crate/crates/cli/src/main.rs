//! pivsusy: generate Painlevé IV solution curves from SUSY transformations of
//! the harmonic oscillator, map the (a, b) parameter space, and run the
//! verification battery. Curves serialize to CSV or JSON with
//! shortest-round-trip numbers, so identical runs are byte-identical.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use painleve_susy::{
    classify_hierarchy, piv_params, regularity_check, run_battery, solve_curve, standard_battery,
    BatteryEntry, Complex64, Family, HierarchyTag, Regularity, SeedSpec, PIV_RESIDUAL_TOL,
};

const EXIT_VERIFICATION_FAILURE: u8 = 1;
const EXIT_SINGULAR_STRICT: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "pivsusy",
    version,
    about = "Painlevé IV solutions from SUSY QM",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one solution g(x) over a grid and export the curve
    Solve(SolveArgs),
    /// Emit the (a, b) parameter-space families and hierarchy markers
    Paramspace(ParamspaceArgs),
    /// Run the verification battery and report pass/fail per suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// Factorization energy ε₁
    #[arg(long, allow_hyphen_values = true)]
    epsilon1: f64,
    /// Real-case seed parameter ν (mutually exclusive with --lambda-re/--lambda-im)
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Re Λ of the complex mixing constant
    #[arg(long, allow_hyphen_values = true)]
    lambda_re: Option<f64>,
    /// Im Λ of the complex mixing constant
    #[arg(long, allow_hyphen_values = true)]
    lambda_im: Option<f64>,
    /// Transformation order k
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Solution family (1, 2 or 3)
    #[arg(long, default_value_t = 1)]
    family: u8,
}

impl SpecArgs {
    fn to_spec(&self) -> Result<SeedSpec, String> {
        let lambda_given = self.lambda_re.is_some() || self.lambda_im.is_some();
        let lambda = match (self.nu, lambda_given) {
            (Some(_), true) => {
                return Err("give exactly one of --nu or --lambda-re/--lambda-im".into())
            }
            (None, false) => return Err("a seed needs --nu or --lambda-re/--lambda-im".into()),
            (Some(nu), false) => {
                painleve_susy::lambda_from_nu(self.epsilon1, nu).map_err(|e| e.to_string())?
            }
            (None, true) => {
                Complex64::new(self.lambda_re.unwrap_or(0.0), self.lambda_im.unwrap_or(0.0))
            }
        };
        let family = Family::from_index(self.family).map_err(|e| e.to_string())?;
        SeedSpec::new(self.epsilon1, lambda, self.k, family).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Sampling interval LO:HI
    #[arg(long, default_value = "-5:5", allow_hyphen_values = true)]
    range: String,
    /// Number of grid samples
    #[arg(long, default_value_t = 201)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse specs that fail the regularity scan (exit code 2)
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct ParamspaceArgs {
    /// ε₁ interval LO:HI
    #[arg(long, default_value = "-6:6", allow_hyphen_values = true)]
    range: String,
    /// ε₁ grid resolution per family curve
    #[arg(long, default_value_t = 97)]
    samples: usize,
    /// Largest transformation order to emit
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify a single spec instead of the standard battery
    #[arg(long, allow_hyphen_values = true)]
    epsilon1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_im: Option<f64>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    family: u8,
    /// Sampling interval LO:HI
    #[arg(long, default_value = "-5:5", allow_hyphen_values = true)]
    range: String,
    #[arg(long, default_value_t = 201)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_range(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("range must be LO:HI, got `{text}`"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range endpoint `{lo}`"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range endpoint `{hi}`"))?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(format!("range needs LO < HI, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn failure(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_VERIFICATION_FAILURE)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through the error path with success status
            if e.use_stderr() {
                let _ = e.print();
                return ExitCode::from(EXIT_USAGE);
            }
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Paramspace(args) => cmd_paramspace(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

// ---------------------------------------------------------------------------
// solve

#[derive(Serialize, Deserialize)]
struct CurveHeader {
    epsilon1: f64,
    lambda_re: f64,
    lambda_im: f64,
    k: usize,
    family: u8,
    a: f64,
    b: f64,
    hierarchy: String,
}

#[derive(Serialize, Deserialize)]
struct CurveRow {
    x: f64,
    re_g: Option<f64>,
    im_g: Option<f64>,
    re_residual: Option<f64>,
    im_residual: Option<f64>,
    regular: bool,
}

#[derive(Serialize, Deserialize)]
struct CurveFile {
    header: CurveHeader,
    samples: Vec<CurveRow>,
}

fn cmd_solve(args: SolveArgs) -> ExitCode {
    let spec = match args.spec.to_spec() {
        Ok(s) => s,
        Err(msg) => return usage_error(&msg),
    };
    let (lo, hi) = match parse_range(&args.range) {
        Ok(r) => r,
        Err(msg) => return usage_error(&msg),
    };
    if args.samples < 2 {
        return usage_error("--samples must be at least 2");
    }

    if args.strict {
        match regularity_check(&spec, (lo, hi), args.samples.max(201)) {
            Ok(Regularity::Regular) => {}
            Ok(Regularity::SingularAt(zeros)) => {
                eprintln!(
                    "singular spec in strict mode; bracketed zeros: {}",
                    if zeros.is_empty() {
                        "outside the scanned window".to_string()
                    } else {
                        zeros
                            .iter()
                            .map(|z| format!("{z:.10}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    }
                );
                return ExitCode::from(EXIT_SINGULAR_STRICT);
            }
            Err(e) => return failure(&e.to_string()),
        }
    }

    let solution = match solve_curve(&spec, lo, hi, args.samples, PIV_RESIDUAL_TOL) {
        Ok(s) => s,
        Err(e) => return failure(&e.to_string()),
    };

    let header = CurveHeader {
        epsilon1: spec.epsilon1,
        lambda_re: spec.lambda.re,
        lambda_im: spec.lambda.im,
        k: spec.k,
        family: spec.family.index(),
        a: solution.params.a,
        b: solution.params.b,
        hierarchy: solution.tag.name().to_string(),
    };
    let rows: Vec<CurveRow> = solution
        .samples
        .iter()
        .map(|s| CurveRow {
            x: s.x,
            re_g: s.g.map(|g| g.re),
            im_g: s.g.map(|g| g.im),
            re_residual: s.residual.map(|r| r.re),
            im_residual: s.residual.map(|r| r.im),
            regular: s.regular,
        })
        .collect();

    let bytes = match args.format {
        Format::Csv => curve_to_csv(&rows).into_bytes(),
        Format::Json => {
            let file = CurveFile {
                header,
                samples: rows,
            };
            let mut b = serde_json::to_vec(&file).expect("curve serializes");
            b.push(b'\n');
            b
        }
    };
    write_output(args.out.as_deref(), &bytes)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v}")).unwrap_or_default()
}

fn curve_to_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from("x,re_g,im_g,re_residual,im_residual,regular\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.x,
            fmt_opt(r.re_g),
            fmt_opt(r.im_g),
            fmt_opt(r.re_residual),
            fmt_opt(r.im_residual),
            u8::from(r.regular)
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// paramspace

#[derive(Serialize, Deserialize)]
struct ParamRecord {
    family: u8,
    k: usize,
    epsilon1: f64,
    a: f64,
    b: f64,
    hierarchy: String,
    regime: String,
}

fn cmd_paramspace(args: ParamspaceArgs) -> ExitCode {
    let (lo, hi) = match parse_range(&args.range) {
        Ok(r) => r,
        Err(msg) => return usage_error(&msg),
    };
    if args.samples < 2 {
        return usage_error("--samples must be at least 2");
    }
    if args.k_max < 1 {
        return usage_error("--k-max must be at least 1");
    }

    let real_lambda = Complex64::new(0.0, 0.0);
    let complex_lambda = Complex64::new(0.0, 1.0);
    let mut records = Vec::new();

    for (regime, lambda, families) in [
        ("real", real_lambda, &[Family::First][..]),
        ("complex", complex_lambda, &Family::all()[..]),
    ] {
        for &family in families {
            for k in 1..=args.k_max {
                // the one-parameter curve traced by this family and order
                for i in 0..args.samples {
                    let eps = lo + (hi - lo) * i as f64 / (args.samples - 1) as f64;
                    if regime == "real" && eps >= 0.5 {
                        continue;
                    }
                    records.push(make_record(family, k, eps, lambda, regime));
                }
                // hierarchy markers: half-integer and non-positive-integer energies
                let mut marker = (2.0 * lo).ceil() / 2.0;
                while marker <= hi {
                    let is_special = (2.0 * marker).round() == 2.0 * marker;
                    if is_special && !(regime == "real" && marker >= 0.5) {
                        let rec = make_record(family, k, marker, lambda, regime);
                        if rec.hierarchy != HierarchyTag::ConfluentHypergeometric.name() {
                            records.push(rec);
                        }
                    }
                    marker += 0.5;
                }
            }
        }
    }

    let bytes = match args.format {
        Format::Json => {
            let mut b = serde_json::to_vec(&records).expect("records serialize");
            b.push(b'\n');
            b
        }
        Format::Csv => {
            let mut out = String::from("family,k,epsilon1,a,b,hierarchy,regime\n");
            for r in &records {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.family, r.k, r.epsilon1, r.a, r.b, r.hierarchy, r.regime
                ));
            }
            out.into_bytes()
        }
    };
    write_output(args.out.as_deref(), &bytes)
}

fn make_record(family: Family, k: usize, eps: f64, lambda: Complex64, regime: &str) -> ParamRecord {
    let p = piv_params(family, eps, k);
    ParamRecord {
        family: family.index(),
        k,
        epsilon1: eps,
        a: p.a,
        b: p.b,
        hierarchy: classify_hierarchy(eps, lambda).name().to_string(),
        regime: regime.to_string(),
    }
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize, Deserialize)]
struct SuiteRecord {
    name: String,
    pass: bool,
    max_relative_residual: f64,
    regular_samples: usize,
    irregular_samples: usize,
}

#[derive(Serialize, Deserialize)]
struct VerifyReport {
    suites: Vec<SuiteRecord>,
    all_pass: bool,
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let (lo, hi) = match parse_range(&args.range) {
        Ok(r) => r,
        Err(msg) => return usage_error(&msg),
    };
    if args.samples < 2 {
        return usage_error("--samples must be at least 2");
    }

    let battery: Vec<BatteryEntry> = if let Some(epsilon1) = args.epsilon1 {
        let spec_args = SpecArgs {
            epsilon1,
            nu: args.nu,
            lambda_re: args.lambda_re,
            lambda_im: args.lambda_im,
            k: args.k,
            family: args.family,
        };
        match spec_args.to_spec() {
            Ok(spec) => vec![BatteryEntry::new("cli_spec", spec)],
            Err(msg) => return usage_error(&msg),
        }
    } else {
        standard_battery()
    };

    let report = match run_battery(&battery, lo, hi, args.samples, PIV_RESIDUAL_TOL) {
        Ok(r) => r,
        Err(e) => return failure(&e.to_string()),
    };

    let record = VerifyReport {
        suites: report
            .suites
            .iter()
            .map(|s| SuiteRecord {
                name: s.name.clone(),
                pass: s.pass,
                max_relative_residual: s.max_relative_residual,
                regular_samples: s.regular_samples,
                irregular_samples: s.irregular_samples,
            })
            .collect(),
        all_pass: report.all_pass(),
    };
    let mut bytes = serde_json::to_vec(&record).expect("report serializes");
    bytes.push(b'\n');
    let code = write_output(args.out.as_deref(), &bytes);
    if code != ExitCode::SUCCESS {
        return code;
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION_FAILURE)
    }
}

fn write_output(path: Option<&std::path::Path>, bytes: &[u8]) -> ExitCode {
    let result = match path {
        Some(path) => fs::write(path, bytes),
        None => std::io::stdout().write_all(bytes),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => failure(&format!("writing output: {e}")),
    }
}
