//! Command-line driver: parse a polynomial over a finite field, then
//! linearize it, list its linearization family, test it on `n x n`
//! matrices, descend it to prime-field coefficients, or estimate the scan
//! cost.
//!
//! Exit codes: 0 = property holds / output produced; 1 = property refuted
//! (a witness is emitted); 2 = usage or parse error; 3 = a search budget
//! was exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use centralpoly::descent::{descend, ComponentReport, DescentError};
use centralpoly::fixtures::builtin;
use centralpoly::freealg::NcPolynomial;
use centralpoly::gf::FieldSpec;
use centralpoly::linearize::{
    enumerate_specs, filter_p_power, partial_linearize, LinearizationSpec,
};
use centralpoly::parse::parse_poly;
use centralpoly::verify::{
    classify_central, cost_estimate, is_identity_bruteforce, is_identity_sampled,
    scan_linearizations, ScanSummary, Status, VerifyError, VerifyOptions, Witness,
    DEFAULT_BUDGET, DEFAULT_SAMPLE_TRIALS,
};

#[derive(Parser)]
#[command(
    name = "centralpoly",
    version,
    about = "Linearize, test, and descend noncommutative polynomials over matrix algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one partial linearization, selected by --spec.
    Linearize {
        #[command(flatten)]
        input: InputArgs,
        /// Slot sizes per variable, e.g. "x1:2,1" or "x1:1,1|x2:2".
        #[arg(long)]
        spec: String,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// List the whole linearization family of a polynomial.
    Expand {
        #[command(flatten)]
        input: InputArgs,
        /// Keep only linearizations whose slot degrees are powers of the
        /// characteristic.
        #[arg(long)]
        p_power_filter: bool,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Test whether a polynomial is an identity of, or central for, the
    /// n x n matrices over its coefficient field.
    Verify {
        /// Property to test.
        #[arg(value_enum)]
        property: Property,
        #[command(flatten)]
        input: InputArgs,
        /// Matrix size.
        #[arg(long)]
        n: usize,
        /// Identity-testing method: the matrix-unit scan of the
        /// linearization family, exhaustive enumeration of matrix tuples,
        /// or random sampling. Central classification always scans.
        #[arg(long, value_enum, default_value_t = Method::Scan)]
        method: Method,
        /// Restrict scans to linearizations whose slot degrees are powers
        /// of the characteristic.
        #[arg(long)]
        p_power_filter: bool,
        /// Ceiling on planned evaluations per search phase.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Number of random tuples for --method sampled.
        #[arg(long, default_value_t = DEFAULT_SAMPLE_TRIALS)]
        trials: u64,
        /// Seed for --method sampled.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Split an extension-field central polynomial into prime-field
    /// components and return a central one with its certificate.
    Descend {
        #[command(flatten)]
        input: InputArgs,
        /// Matrix size.
        #[arg(long)]
        n: usize,
        /// Skip the centrality pre-check of the input.
        #[arg(long)]
        assume_central: bool,
        /// Ceiling on planned evaluations per search phase.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Seed for sampled witness searches.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Report the size of the matrix-unit scan without running it.
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        /// Matrix size.
        #[arg(long)]
        n: usize,
        /// Restrict the count to characteristic-power linearizations.
        #[arg(long)]
        p_power_filter: bool,
        /// Budget the tuple count is compared against.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Identity,
    Central,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Scan,
    Exhaustive,
    Sampled,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Scan => "scan",
            Method::Exhaustive => "exhaustive",
            Method::Sampled => "sampled",
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Inline polynomial text, or @name for a stock polynomial
    /// (@s2..@s8, @hall, @L).
    #[arg(
        long,
        required_unless_present = "poly_file",
        conflicts_with = "poly_file"
    )]
    poly: Option<String>,
    /// Read the polynomial from this file instead.
    #[arg(long)]
    poly_file: Option<PathBuf>,
    /// Coefficient field: "p", "p^m", or "p^m:modulus"
    /// (e.g. 2, 3^2, or 2^2:t^2+t+1).
    #[arg(long)]
    field: String,
}

impl InputArgs {
    fn load(&self) -> Result<(FieldSpec, NcPolynomial), CliError> {
        let field = FieldSpec::parse(&self.field).map_err(input_err)?;
        let text = match (&self.poly, &self.poly_file) {
            (Some(p), None) => p.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?,
            _ => unreachable!("clap enforces exactly one polynomial source"),
        };
        let text = text.trim();
        let poly = match text.strip_prefix('@') {
            Some(name) => builtin(name, &field).map_err(input_err)?,
            None => parse_poly(text, &field).map_err(input_err)?,
        };
        Ok((field, poly))
    }
}

/// Failures that abort the run (as opposed to refutations, which are
/// ordinary reports with exit code 1).
enum CliError {
    /// Bad input or arguments: exit 2.
    Input(String),
    /// A search budget was exceeded or a search came back empty: exit 3.
    Budget(String),
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::CapExceeded { .. } | VerifyError::NoWitnessFound { .. } => {
                CliError::Budget(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

/// A finished run: exit code, text lines, and the JSON pieces.
struct Report {
    exit: u8,
    lines: Vec<String>,
    invocation: Value,
    result: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let json_wanted = match &cli.command {
        Command::Linearize { json, .. }
        | Command::Expand { json, .. }
        | Command::Verify { json, .. }
        | Command::Descend { json, .. }
        | Command::Estimate { json, .. } => *json,
    };
    match run(&cli.command) {
        Ok(report) => {
            if json_wanted {
                let doc = json!({
                    "schema": 1,
                    "invocation": report.invocation,
                    "result": report.result,
                    "wall_ms": started.elapsed().as_millis() as u64,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
            } else {
                for line in &report.lines {
                    println!("{line}");
                }
            }
            ExitCode::from(report.exit)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Linearize { input, spec, .. } => run_linearize(input, spec),
        Command::Expand {
            input,
            p_power_filter,
            ..
        } => run_expand(input, *p_power_filter),
        Command::Verify {
            property,
            input,
            n,
            method,
            p_power_filter,
            budget,
            trials,
            seed,
            ..
        } => {
            let opts = VerifyOptions {
                p_power_filter: *p_power_filter,
                budget: *budget,
                sample_trials: *trials,
                seed: *seed,
                ..VerifyOptions::default()
            };
            match property {
                Property::Identity => run_verify_identity(input, *n, *method, &opts),
                Property::Central => run_verify_central(input, *n, *method, &opts),
            }
        }
        Command::Descend {
            input,
            n,
            assume_central,
            budget,
            seed,
            ..
        } => {
            let opts = VerifyOptions {
                budget: *budget,
                seed: *seed,
                ..VerifyOptions::default()
            };
            run_descend(input, *n, *assume_central, &opts)
        }
        Command::Estimate {
            input,
            n,
            p_power_filter,
            budget,
            ..
        } => run_estimate(input, *n, *p_power_filter, *budget),
    }
}

fn run_linearize(input: &InputArgs, spec_text: &str) -> Result<Report, CliError> {
    let (field, f) = input.load()?;
    let spec = LinearizationSpec::from_str(spec_text).map_err(input_err)?;
    let lin = partial_linearize(&f, &spec).map_err(input_err)?;
    Ok(Report {
        exit: 0,
        lines: vec![lin.to_string()],
        invocation: json!({
            "verb": "linearize",
            "poly": f.to_string(),
            "field": field.to_string(),
            "spec": spec.to_string(),
        }),
        result: json!({ "spec": spec.to_string(), "poly": lin.to_string() }),
    })
}

fn run_expand(input: &InputArgs, p_power_filter: bool) -> Result<Report, CliError> {
    let (field, f) = input.load()?;
    let md = f.multidegree().map_err(input_err)?;
    if md.is_empty() {
        return Err(CliError::Input(
            "polynomial is constant; there is nothing to expand".to_string(),
        ));
    }
    let mut specs = enumerate_specs(&md).map_err(input_err)?;
    if p_power_filter {
        specs = filter_p_power(specs, field.characteristic());
    }
    let mut lines = Vec::with_capacity(specs.len());
    let mut items = Vec::with_capacity(specs.len());
    for spec in &specs {
        let lin = partial_linearize(&f, spec).map_err(input_err)?;
        lines.push(format!("{spec} => {lin}"));
        items.push(json!({ "spec": spec.to_string(), "poly": lin.to_string() }));
    }
    Ok(Report {
        exit: 0,
        lines,
        invocation: json!({
            "verb": "expand",
            "poly": f.to_string(),
            "field": field.to_string(),
            "p_power_filter": p_power_filter,
        }),
        result: json!({ "linearizations": items }),
    })
}

fn scan_summary_json(s: &ScanSummary) -> Value {
    json!({ "specs": s.specs, "tuples": s.tuples, "vanished": s.vanished })
}

fn witness_json(w: &Witness) -> Value {
    serde_json::to_value(w.to_record()).expect("witness record serializes")
}

fn witness_lines(heading: &str, w: &Witness) -> Vec<String> {
    let mut lines = vec![format!("{heading}:")];
    if let Some(spec) = &w.spec {
        lines.push(format!("  spec: {spec}"));
    }
    for (v, m) in w.assignment.bindings() {
        lines.push(format!("  {v} = {m}"));
    }
    lines.push(format!("  value = {}", w.value));
    lines
}

fn run_verify_identity(
    input: &InputArgs,
    n: usize,
    method: Method,
    opts: &VerifyOptions,
) -> Result<Report, CliError> {
    let (field, f) = input.load()?;
    let invocation = json!({
        "verb": "verify",
        "property": "identity",
        "poly": f.to_string(),
        "field": field.to_string(),
        "n": n,
        "method": method.name(),
        "p_power_filter": opts.p_power_filter,
        "budget": opts.budget,
        "trials": opts.sample_trials,
        "seed": opts.seed,
    });

    let (holds, witness, detail_lines, mut result) = match method {
        Method::Scan => {
            let out = scan_linearizations(&f, n, opts)?;
            let lines = vec![
                format!("linearizations scanned: {}", out.specs_scanned),
                format!("unit tuples: {}", out.tuples_total),
                format!("evaluations: {}", out.evaluations),
            ];
            let result = json!({
                "holds": out.holds,
                "specs_scanned": out.specs_scanned,
                "tuples_total": out.tuples_total,
                "evaluations": out.evaluations,
            });
            (out.holds, out.witness, lines, result)
        }
        Method::Exhaustive => {
            let out = is_identity_bruteforce(&f, n, opts)?;
            let lines = vec![
                format!("matrix tuples: {}", out.tuples_total),
                format!("evaluations: {}", out.evaluations),
            ];
            let result = json!({
                "holds": out.holds,
                "tuples_total": out.tuples_total,
                "evaluations": out.evaluations,
            });
            (out.holds, out.witness, lines, result)
        }
        Method::Sampled => {
            let out = is_identity_sampled(&f, n, opts)?;
            let lines = vec![format!("samples: {}", out.evaluations)];
            let result = json!({
                "holds": out.holds,
                "evaluations": out.evaluations,
            });
            (out.holds, out.witness, lines, result)
        }
    };

    let mut lines = Vec::new();
    let exit = if holds {
        lines.push(match method {
            Method::Scan | Method::Exhaustive => "identity: holds".to_string(),
            Method::Sampled => "identity: no counterexample found".to_string(),
        });
        0
    } else {
        lines.push("identity: refuted".to_string());
        1
    };
    lines.extend(detail_lines);
    if let Some(w) = &witness {
        lines.extend(witness_lines("witness", w));
    }
    result["method"] = json!(method.name());
    result["witness"] = witness.as_ref().map(witness_json).unwrap_or(Value::Null);
    Ok(Report {
        exit,
        lines,
        invocation,
        result,
    })
}

fn run_verify_central(
    input: &InputArgs,
    n: usize,
    method: Method,
    opts: &VerifyOptions,
) -> Result<Report, CliError> {
    if method != Method::Scan {
        return Err(CliError::Input(
            "--method applies to identity checks; central classification always scans"
                .to_string(),
        ));
    }
    let (field, f) = input.load()?;
    let verdict = classify_central(&f, n, opts)?;
    let witness = verdict.certificates.first();

    let mut lines = vec![format!("central: {:?}", verdict.status)];
    match verdict.status {
        Status::Central => {
            let cs = verdict.commutator_scan.as_ref().expect("central verdicts scan the commutator");
            lines.push(format!(
                "commutator scan: {} linearizations, {} unit tuples, vanished",
                cs.specs, cs.tuples
            ));
            if let Some(w) = witness {
                lines.extend(witness_lines("nonzero witness", w));
            }
        }
        Status::Identity => {
            lines.push(format!(
                "the polynomial vanishes on all of M_{n} ({} linearizations, {} unit tuples); an identity is not central",
                verdict.self_scan.specs, verdict.self_scan.tuples
            ));
        }
        Status::Neither => {
            if let Some(w) = witness {
                lines.extend(witness_lines("non-scalar witness", w));
            }
        }
    }
    lines.push(format!("evaluations: {}", verdict.evaluations));

    let exit = if verdict.status == Status::Central { 0 } else { 1 };
    Ok(Report {
        exit,
        lines,
        invocation: json!({
            "verb": "verify",
            "property": "central",
            "poly": f.to_string(),
            "field": field.to_string(),
            "n": n,
            "method": method.name(),
            "p_power_filter": opts.p_power_filter,
            "budget": opts.budget,
            "seed": opts.seed,
        }),
        result: json!({
            "status": verdict.status,
            "self_scan": scan_summary_json(&verdict.self_scan),
            "commutator_scan": verdict.commutator_scan.as_ref().map(scan_summary_json),
            "witness": witness.map(witness_json),
            "evaluations": verdict.evaluations,
        }),
    })
}

fn component_lines(reports: &[ComponentReport]) -> Vec<String> {
    let mut lines = vec!["components:".to_string()];
    for r in reports {
        lines.push(format!("  t^{}: {:?}", r.power, r.status));
    }
    lines
}

fn components_json(reports: &[ComponentReport]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| json!({ "power": r.power, "status": format!("{:?}", r.status) }))
            .collect(),
    )
}

fn run_descend(
    input: &InputArgs,
    n: usize,
    assume_central: bool,
    opts: &VerifyOptions,
) -> Result<Report, CliError> {
    let (field, f) = input.load()?;
    let invocation = json!({
        "verb": "descend",
        "poly": f.to_string(),
        "field": field.to_string(),
        "n": n,
        "assume_central": assume_central,
        "budget": opts.budget,
        "seed": opts.seed,
    });
    match descend(&f, n, opts, !assume_central) {
        Ok(out) => {
            let cert = &out.certificate;
            let mut lines = vec![
                format!("central component: {}", out.chosen),
                format!("basis power: {}", cert.chosen_power),
            ];
            lines.extend(component_lines(&cert.components));
            lines.push(format!(
                "commutator scan: {} linearizations, {} unit tuples, vanished",
                cert.commutator_scan.specs, cert.commutator_scan.tuples
            ));
            lines.extend(witness_lines("nonzero witness (prime field)", &cert.nonzero_witness));
            if let Some(iw) = &cert.input_witness {
                lines.extend(witness_lines("input witness (extension field)", iw));
            }
            lines.push(format!("evaluations: {}", cert.evaluations));
            Ok(Report {
                exit: 0,
                lines,
                invocation,
                result: json!({
                    "chosen": out.chosen.to_string(),
                    "chosen_power": cert.chosen_power,
                    "components": components_json(&cert.components),
                    "commutator_scan": scan_summary_json(&cert.commutator_scan),
                    "nonzero_witness": witness_json(&cert.nonzero_witness),
                    "input_witness": cert.input_witness.as_ref().map(witness_json),
                    "evaluations": cert.evaluations,
                }),
            })
        }
        Err(DescentError::InputNotCentral { status, witness }) => {
            let mut lines = vec![format!(
                "input is not central: classified as {status:?}"
            )];
            if let Some(w) = &witness {
                lines.extend(witness_lines("witness", w));
            }
            Ok(Report {
                exit: 1,
                lines,
                invocation,
                result: json!({
                    "error": "input_not_central",
                    "status": status,
                    "witness": witness.as_deref().map(witness_json),
                }),
            })
        }
        Err(DescentError::NoCentralComponent { reports }) => {
            let mut lines = vec!["no prime-field component is central".to_string()];
            lines.extend(component_lines(&reports));
            Ok(Report {
                exit: 1,
                lines,
                invocation,
                result: json!({
                    "error": "no_central_component",
                    "components": components_json(&reports),
                }),
            })
        }
        Err(DescentError::Verify(e)) => Err(e.into()),
        Err(DescentError::Alg(e)) => Err(CliError::Input(e.to_string())),
    }
}

fn run_estimate(
    input: &InputArgs,
    n: usize,
    p_power_filter: bool,
    budget: u64,
) -> Result<Report, CliError> {
    let (field, f) = input.load()?;
    let (specs, tuples) = cost_estimate(&f, n, p_power_filter)?;
    let within = tuples <= u128::from(budget);
    Ok(Report {
        exit: 0,
        lines: vec![
            format!("linearizations: {specs}"),
            format!("unit tuples: {tuples}"),
            format!("budget: {budget}"),
            format!("within budget: {}", if within { "yes" } else { "no" }),
        ],
        invocation: json!({
            "verb": "estimate",
            "poly": f.to_string(),
            "field": field.to_string(),
            "n": n,
            "p_power_filter": p_power_filter,
            "budget": budget,
        }),
        result: json!({
            "specs": specs,
            "tuples": tuples,
            "budget": budget,
            "within_budget": within,
        }),
    })
}
