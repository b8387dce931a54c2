//! Command-line interface: point evaluation, grid verification, formal
//! certificates, and the identity listing.
//!
//! Exit codes: 0 success; 2 invalid parameters or configuration; 3
//! non-convergence; 4 verification failure (any FAIL record, or an unequal
//! certificate).

use clap::{Parser, Subcommand, ValueEnum};
use humbert::error::Error;
use humbert::kernels::{Scalar, SeriesControl};
use humbert::oracle::{compare_formal, parse_rational, IdentityId, IdentityParams};
use humbert::verify::{
    check_applicability, evaluate, report_csv, report_json, run_grid, summarize, ComplexOut,
    FunctionId, GridSpec, MethodId,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "humbert",
    version,
    about = "Evaluate and cross-verify the Humbert functions Phi2, Phi3, Psi2"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalFormat {
    Json,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one function by one method at one point
    Eval {
        /// Function to evaluate: phi2, phi3, or psi2
        #[arg(long)]
        function: String,
        /// Comma-separated parameter values, e.g. a=1,b=2.5,c=3
        #[arg(long)]
        params: String,
        /// Argument x as re or re,im
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Argument y as re or re,im
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// direct, series2f1, phi3shift, diag2f2, equalargs3f3, or gaussterms
        #[arg(long)]
        method: String,
        /// Relative tolerance of the stopping rule
        #[arg(long = "rel-tol", default_value_t = 1e-14)]
        rel_tol: f64,
        /// Cap on summation units (terms or anti-diagonals)
        #[arg(long = "max-terms", default_value_t = 5000)]
        max_terms: usize,
        #[arg(long, value_enum, default_value_t = EvalFormat::Plain)]
        format: EvalFormat,
    },
    /// Run a verification grid from a JSON spec file
    Verify {
        /// Spec file: {function, representations, params, points, gate, ctrl}
        #[arg(long)]
        spec: PathBuf,
        /// Report output path
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Expand both sides of an identity over the rationals and compare
    Oracle {
        /// eq13, eq14, eq15, eq16, eq33, eq34, or bc3f3
        #[arg(long)]
        identity: String,
        /// Comma-separated rational parameters, e.g. b=1,c=5/2
        #[arg(long)]
        params: String,
        /// Truncation degree in both x and t (at most 12)
        #[arg(long)]
        deg: usize,
    },
    /// List the supported identities and the adopted corrections
    Identities,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Eval {
            function,
            params,
            x,
            y,
            method,
            rel_tol,
            max_terms,
            format,
        } => cmd_eval(
            &function, &params, &x, &y, &method, rel_tol, max_terms, format,
        ),
        Cmd::Verify { spec, out, format } => cmd_verify(&spec, &out, format),
        Cmd::Oracle {
            identity,
            params,
            deg,
        } => cmd_oracle(&identity, &params, deg),
        Cmd::Identities => cmd_identities(),
    };
    match code {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotConverged { .. } | Error::NonFinite(_) => 3,
        _ => 2,
    }
}

fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    let bad = || Error::Config(format!("'{s}' is not a scalar (expected re or re,im)"));
    let mut parts = s.splitn(2, ',');
    let re: f64 = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        None => 0.0,
        Some(p) => p.trim().parse().map_err(|_| bad())?,
    };
    Ok(Scalar::new(re, im))
}

fn parse_param_list(s: &str) -> Result<Vec<(String, String)>, Error> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|pair| {
            let mut kv = pair.splitn(2, '=');
            let k = kv.next().unwrap_or("").trim();
            let v = kv
                .next()
                .ok_or_else(|| Error::Config(format!("'{pair}' is not of the form name=value")))?
                .trim();
            Ok((k.to_string(), v.to_string()))
        })
        .collect()
}

#[derive(Serialize)]
struct EvalReport {
    function: &'static str,
    params: BTreeMap<String, f64>,
    x: ComplexOut,
    y: ComplexOut,
    method: &'static str,
    value: ComplexOut,
    terms: usize,
    est_error: f64,
    converged: bool,
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    function: &str,
    params: &str,
    x: &str,
    y: &str,
    method: &str,
    rel_tol: f64,
    max_terms: usize,
    format: EvalFormat,
) -> Result<ExitCode, Error> {
    let function = FunctionId::parse(function)
        .ok_or_else(|| Error::Config(format!("unknown function '{function}'")))?;
    let method = MethodId::parse(method)
        .ok_or_else(|| Error::Config(format!("unknown method '{method}'")))?;
    if !MethodId::applicable_to(function).contains(&method) {
        return Err(Error::Config(format!(
            "method {method} is not defined for {function}"
        )));
    }
    let mut values: BTreeMap<String, Scalar> = BTreeMap::new();
    for (k, v) in parse_param_list(params)? {
        if !function.param_names().contains(&k.as_str()) {
            return Err(Error::Config(format!(
                "parameter '{k}' is not used by {function}"
            )));
        }
        values.insert(k, parse_scalar(&v)?);
    }
    for name in function.param_names() {
        if !values.contains_key(*name) {
            return Err(Error::Config(format!(
                "{function} requires parameter '{name}'"
            )));
        }
    }
    let x = parse_scalar(x)?;
    let y = parse_scalar(y)?;
    check_applicability(function, method, &values, x, y).map_err(|reason| {
        Error::Config(format!("method {method} does not apply here: {reason}"))
    })?;
    let ctrl = SeriesControl {
        rel_tol,
        max_terms,
        ..SeriesControl::default()
    };
    let outcome = evaluate(function, method, &values, x, y, &ctrl)?;

    match format {
        EvalFormat::Json => {
            let report = EvalReport {
                function: function.as_str(),
                params: values.iter().map(|(k, v)| (k.clone(), v.re)).collect(),
                x: x.into(),
                y: y.into(),
                method: method.as_str(),
                value: outcome.value.into(),
                terms: outcome.terms,
                est_error: outcome.est_error,
                converged: outcome.converged,
            };
            println!("{}", serde_json::to_string(&report).expect("serializable"));
        }
        EvalFormat::Plain => {
            let v = outcome.value;
            let sign = if v.im.is_sign_negative() { '-' } else { '+' };
            println!("function  = {function}");
            println!("method    = {method}");
            println!("value     = {:.15e} {sign} {:.15e}i", v.re, v.im.abs());
            println!("terms     = {}", outcome.terms);
            println!("est_error = {:.3e}", outcome.est_error);
            println!("converged = {}", outcome.converged);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(spec_path: &PathBuf, out: &PathBuf, format: ReportFormat) -> Result<ExitCode, Error> {
    let text = fs::read_to_string(spec_path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", spec_path.display())))?;
    let spec: GridSpec = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("malformed spec {}: {e}", spec_path.display())))?;
    let records = run_grid(&spec, spec.gate)?;
    let summary = summarize(&records);
    let report = match format {
        ReportFormat::Json => report_json(&records, &summary),
        ReportFormat::Csv => report_csv(&records),
    };
    fs::write(out, report)
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", out.display())))?;
    println!(
        "total={} pass={} fail={} skipped={} max_rel_err={:e}",
        summary.total, summary.pass, summary.fail, summary.skipped, summary.max_rel_err
    );
    if summary.fail > 0 {
        Ok(ExitCode::from(4))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_oracle(identity: &str, params: &str, deg: usize) -> Result<ExitCode, Error> {
    let id = IdentityId::parse(identity)
        .ok_or_else(|| Error::Config(format!("unknown identity '{identity}'")))?;
    let mut p = IdentityParams::default();
    for (k, v) in parse_param_list(params)? {
        let r = parse_rational(&v)?;
        match k.as_str() {
            "a" => p.a = Some(r),
            "b" => p.b = Some(r),
            "c" => p.c = Some(r),
            other => return Err(Error::Config(format!("unknown parameter '{other}'"))),
        }
    }
    let cert = compare_formal(id, &p, deg, deg)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&cert.to_json()).expect("serializable")
    );
    if cert.equal {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(4))
    }
}

fn cmd_identities() -> Result<ExitCode, Error> {
    for id in IdentityId::LISTED {
        println!("{:<6}  {}", id.as_str(), id.formula());
        if let Some(note) = id.correction() {
            println!("        note: {note}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
