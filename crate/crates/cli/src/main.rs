//! `xcorr`: spectra and verification reports from the command line.
//!
//! Every JSON report has two top-level blocks: `body`, which is a pure
//! function of the inputs, and `meta`, which holds run details such as the
//! worker count and wall time. Keys are sorted.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use xcorr::battery::{self, BatteryOptions};
use xcorr::binary::{binary_params, l2_structure, theorem9_verify};
use xcorr::characters::gauss_sum;
use xcorr::field::{build_field, format_poly, parse_poly, FieldContext};
use xcorr::spectrum::{
    b3_count, moments_of, spectrum, verify_moments, CheckStatus, DecimationCase, Method,
    SpectrumDistribution, SpectrumOptions, DEFAULT_MEMORY_CAP,
};
use xcorr::ternary::{ternary_params, verify_theorem4, Variant};
use xcorr::Error;

#[derive(Parser)]
#[command(name = "xcorr", version, about = "Exact cross-correlation spectra over GF(p^n)")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "XCORR_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20_240_601)]
    seed: u64,
    /// Cap on the spectrum buffer in bytes.
    #[arg(long, global = true, default_value_t = DEFAULT_MEMORY_CAP)]
    memory_cap: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Field parameters.
    Field {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
    /// Full spectrum of S_d(z) over GF(p^n).
    Spectrum(SpectrumArgs),
    /// Verify one of the closed forms or identities.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Quadratic Gauss sum over GF(p^s).
    Gauss {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        s: u32,
    },
    /// Count (x, y) with x + y + 1 = 0 and x^d + y^d + 1 = 0.
    B3(FieldArgs),
    /// Run the whole verification battery.
    Suite {
        /// Include GF(3^15) and GF(2^16).
        #[arg(long)]
        big: bool,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    Info {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Primitive polynomial as coefficients, constant term first, e.g. "1,2,0,1";
        /// defaults to the Conway polynomial.
        #[arg(long)]
        poly: Option<String>,
    },
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u64,
    /// Primitive polynomial as coefficients, constant term first.
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Naive,
    Fast,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Naive => Method::Naive,
            MethodArg::Fast => Method::Fast,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value = "fast")]
    method: MethodArg,
    /// Leave out z = 0 (the cross-correlation view).
    #[arg(long)]
    exclude_zero: bool,
    #[arg(long, value_enum, default_value = "json")]
    out: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    #[value(name = "r")]
    R,
    #[value(name = "2r")]
    TwoR,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// d = 3^r + 2 or 3^{2r} + 2 over GF(3^{3r}).
    Ternary {
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "fast")]
        method: MethodArg,
    },
    /// d = (2^{2lm} - 1)/(2^m + 1) + 2^s over GF(2^{2lm}).
    Binary {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        s: u32,
        /// Include the full distribution.
        #[arg(long)]
        full_spectrum: bool,
    },
    /// Power moment identities for one (p, n, d).
    Moments(FieldArgs),
}

/// A finished command: report body, whether every assertion held, and
/// optional CSV rows replacing the JSON output.
struct Report {
    body: Value,
    ok: bool,
    csv: Option<Vec<(String, u64)>>,
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Error> {
    serde_json::to_value(v).map_err(|e| Error::Internal(format!("serialization: {e}")))
}

fn field_of(p: u32, n: u32, poly: &Option<String>) -> Result<FieldContext, Error> {
    match poly {
        Some(s) => build_field(p, n, Some(&parse_poly(s)?)),
        None => build_field(p, n, None),
    }
}

fn field_json(ctx: &FieldContext) -> Value {
    json!({
        "p": ctx.p(),
        "n": ctx.n(),
        "order": ctx.order(),
        "poly": format_poly(ctx.poly()),
        "poly_coeffs": ctx.poly(),
    })
}

fn value_cell(v: &xcorr::cyclo::CycInt) -> String {
    match v.as_rational() {
        Some(r) => r.to_string(),
        None => v.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
    }
}

fn csv_rows(d: &SpectrumDistribution) -> Vec<(String, u64)> {
    d.iter().map(|(v, c)| (value_cell(v), c)).collect()
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let opts = |method: Method| SpectrumOptions {
        method,
        workers: cli.workers,
        memory_cap: cli.memory_cap,
    };
    match &cli.cmd {
        Cmd::Field { cmd: FieldCmd::Info { p, n, poly } } => {
            let ctx = field_of(*p, *n, poly)?;
            let mut body = field_json(&ctx);
            body["generator"] = json!(ctx.generator().index());
            body["has_tables"] = json!(ctx.has_tables());
            body["dual_basis"] = json!(ctx.dual_basis().iter().map(|e| e.index()).collect::<Vec<_>>());
            Ok(Report { body, ok: true, csv: None })
        }
        Cmd::Spectrum(a) => {
            let ctx = field_of(a.field.p, a.field.n, &a.field.poly)?;
            let case = DecimationCase::new(&ctx, a.field.d)?;
            let dist = spectrum(&case, &opts(a.method.into()), !a.exclude_zero)?;
            let (moments, ok) = if a.exclude_zero {
                (Value::Null, true)
            } else {
                let m = moments_of(&case, &dist)?;
                let ok = m.passed();
                (to_value(&m)?, ok)
            };
            let mut dv = to_value(&dist)?;
            let body = json!({
                "p": ctx.p(),
                "n": ctx.n(),
                "d": case.d(),
                "gcd": case.gcd(),
                "degenerate": case.degenerate(),
                "includes_zero": dist.includes_zero(),
                "total": dist.total(),
                "distinct": dist.distinct(),
                "method": to_value(&Method::from(a.method))?,
                "field": field_json(&ctx),
                "distribution": dv["distribution"].take(),
                "moments": moments,
            });
            let csv = (a.out == Format::Csv).then(|| csv_rows(&dist));
            Ok(Report { body, ok, csv })
        }
        Cmd::Verify { cmd: VerifyCmd::Ternary { r, variant, method } } => {
            let variant = match variant {
                VariantArg::R => Variant::R,
                VariantArg::TwoR => Variant::TwoR,
            };
            let params = ternary_params(*r, variant)?;
            let ctx = params.field()?;
            let rep = verify_theorem4(&params, &ctx, &opts((*method).into()))?;
            let mut body = to_value(&rep)?;
            body["field"] = field_json(&ctx);
            body["method"] = to_value(&Method::from(*method))?;
            Ok(Report { body, ok: rep.passed(), csv: None })
        }
        Cmd::Verify { cmd: VerifyCmd::Binary { l, m, s, full_spectrum } } => {
            let params = binary_params(*l, *m, *s)?;
            if !params.valid {
                return Err(Error::InvalidParams(format!(
                    "gcd(2^{{s-1}}-l, 2^m+1) = {}",
                    params.validity_gcd
                )));
            }
            let ctx = build_field(2, params.n, None)?;
            let rep = theorem9_verify(&params, &ctx, &opts(Method::Fast), *full_spectrum)?;
            let mut body = to_value(&rep)?;
            body["field"] = field_json(&ctx);
            let mut ok = rep.passed;
            body["l2_structure"] = if *l == 2 {
                let l2 = l2_structure(&params, &ctx)?;
                ok &= l2.passed;
                to_value(&l2)?
            } else {
                Value::Null
            };
            Ok(Report { body, ok, csv: None })
        }
        Cmd::Verify { cmd: VerifyCmd::Moments(a) } => {
            let ctx = field_of(a.p, a.n, &a.poly)?;
            let case = DecimationCase::new(&ctx, a.d)?;
            let rep = verify_moments(&case, &opts(Method::Fast))?;
            let mut body = to_value(&rep)?;
            body["field"] = field_json(&ctx);
            body["d"] = json!(a.d);
            body["gcd"] = json!(case.gcd());
            let ok = rep.checks.iter().all(|c| c.status != CheckStatus::Fail);
            Ok(Report { body, ok, csv: None })
        }
        Cmd::Gauss { p, s } => {
            let rep = gauss_sum(*p, *s)?;
            Ok(Report { body: to_value(&rep)?, ok: rep.matches, csv: None })
        }
        Cmd::B3(a) => {
            let ctx = field_of(a.p, a.n, &a.poly)?;
            let case = DecimationCase::new(&ctx, a.d)?;
            let body = json!({
                "b3": b3_count(&case),
                "d": a.d,
                "field": field_json(&ctx),
            });
            Ok(Report { body, ok: true, csv: None })
        }
        Cmd::Suite { big } => {
            let b = BatteryOptions { big: *big, workers: cli.workers, seed: cli.seed, ..Default::default() };
            let (results, _) = battery::run_all(&b);
            for r in &results {
                eprintln!("{}", r.line());
            }
            let ok = results.iter().all(|r| r.passed());
            let body = json!({ "criteria": to_value(&results)?, "passed": ok, "big": big });
            Ok(Report { body, ok, csv: None })
        }
    }
}

fn render(report: &Report, meta: Value) -> Result<Vec<u8>, String> {
    if let Some(rows) = &report.csv {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
        w.write_record(["value", "count"]).map_err(|e| e.to_string())?;
        for (v, c) in rows {
            w.write_record([v.as_str(), &c.to_string()]).map_err(|e| e.to_string())?;
        }
        return w.into_inner().map_err(|e| e.to_string());
    }
    let doc = json!({ "body": report.body, "meta": meta });
    let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| e.to_string())?;
    out.push(b'\n');
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_assertion() { 1 } else { 2 });
        }
    };
    let meta = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "workers": cli.workers,
        "seed": cli.seed,
        "memory_cap": cli.memory_cap,
        "elapsed_ms": start.elapsed().as_millis() as u64,
    });
    let bytes = match render(&report, meta.clone()) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if report.csv.is_some() {
        eprintln!("{meta}");
    }
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("assertion failed; see report");
        ExitCode::from(1)
    }
}
