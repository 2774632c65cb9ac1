//! Command-line front end. Exit status: 0 on success, 2 on bad input,
//! 1 when two independent methods disagree (an internal convention breach).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use hypercx::cohomology::{cohomology_group, CohomologyKind};
use hypercx::families::{
    build_family, classify, default_grid, random_points, sl_check, sweep, sweep_points, FamilyId, FamilySpec, Grid,
};
use hypercx::instance::Instance;
use hypercx::io::{analysis_report, cohomology_report, hkt_report, parse_instance, sl_report, sweep_report, validate_report, Format, Report};
use hypercx::linalg::{parse_rational, Rational};
use hypercx::metric::{build_metric, hkt_check, hyperkahler_check};
use hypercx::{Error, Result};

#[derive(Parser)]
#[command(name = "hypercx", version, about = "Exact invariant-form calculus for hypercomplex Lie algebras")]
struct Cli {
    /// Output format: json, table or tex.
    #[arg(long, global = true, default_value = "table")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Source {
    /// Instance document (JSON).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Built-in family: gt, nilpotent8, almost-abelian.
    #[arg(long)]
    family: Option<String>,
    /// Family parameter NAME=RATIONAL; repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
}

#[derive(Args, Clone, Default)]
struct CohomologyArgs {
    /// Degree p of H^{p,0}; all degrees when omitted.
    #[arg(long, global = true)]
    p: Option<usize>,
    /// dolbeault, delJ, bott-chern or aeppli; all four when omitted.
    #[arg(long, global = true)]
    kind: Option<String>,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Action {
    Validate,
    Analyze,
    Cohomology,
    Hkt,
    Sl,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check an instance (Jacobi, quaternionic relations, metric).
    Validate(Source),
    /// Full classification report.
    Analyze(Source),
    /// Cohomology dimensions and representatives.
    Cohomology {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        args: CohomologyArgs,
    },
    /// HKT test by both methods.
    Hkt(Source),
    /// SL(n,H) test by both methods.
    Sl(Source),
    /// Run an action on a built-in family member.
    Family {
        /// gt, nilpotent8 or almost-abelian.
        id: String,
        #[arg(long = "param")]
        params: Vec<String>,
        #[command(flatten)]
        args: CohomologyArgs,
        #[command(subcommand)]
        action: Option<Action>,
    },
    /// Classify a grid of family members and check the family's equivalences.
    Sweep {
        #[arg(long)]
        family: String,
        /// Axis NAME=V1,V2,...; repeatable. Without axes (and without
        /// --random) the family's default grid is used.
        #[arg(long = "grid")]
        grid: Vec<String>,
        /// Number of random parameter points instead of a grid.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_param(s: &str) -> Result<(String, Rational)> {
    let (name, value) =
        s.split_once('=').ok_or_else(|| Error::BadParameters(format!("expected NAME=RATIONAL, got {s:?}")))?;
    let r = parse_rational(value).ok_or_else(|| {
        if value.contains(['.', 'e', 'E']) {
            Error::NonRationalLiteral { path: format!("--param {name}"), literal: value.into() }
        } else {
            Error::BadParameters(format!("{value:?} is not a rational p/q"))
        }
    })?;
    Ok((name.trim().to_string(), r))
}

fn family_spec(id: &str, params: &[String]) -> Result<FamilySpec> {
    let id: FamilyId = id.parse()?;
    let parsed = params.iter().map(|p| parse_param(p)).collect::<Result<Vec<_>>>()?;
    let parsed: Vec<(&str, Rational)> = parsed.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    Ok(FamilySpec::new(id, &parsed))
}

fn load(src: &Source) -> Result<Instance> {
    match (&src.input, &src.family) {
        (Some(_), Some(_)) => Err(Error::BadParameters("give either --input or --family, not both".into())),
        (Some(path), None) => {
            if !src.params.is_empty() {
                return Err(Error::BadParameters("--param only applies to --family".into()));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::BadParameters(format!("cannot read {}: {e}", path.display())))?;
            parse_instance(&text)?.build()
        }
        (None, Some(id)) => build_family(&family_spec(id, &src.params)?),
        (None, None) => Err(Error::BadParameters("an instance is required: --input FILE or --family ID".into())),
    }
}

fn run_action(action: Action, inst: &Instance, args: &CohomologyArgs) -> Result<Report> {
    match action {
        Action::Validate => {
            build_metric(&inst.complex, &inst.gram)?;
            Ok(validate_report(inst))
        }
        Action::Analyze => analysis_report(inst, &classify(inst)?),
        Action::Cohomology => {
            let kinds = match &args.kind {
                Some(k) => vec![k.parse::<CohomologyKind>()?],
                None => CohomologyKind::ALL.to_vec(),
            };
            let degrees: Vec<usize> = match args.p {
                Some(p) => vec![p],
                None => (0..=inst.complex.half()).collect(),
            };
            let mut groups = Vec::new();
            for k in kinds {
                for &p in &degrees {
                    groups.push(cohomology_group(&inst.complex, k, p)?);
                }
            }
            Ok(cohomology_report(inst, &groups))
        }
        Action::Hkt => {
            let m = build_metric(&inst.complex, &inst.gram)?;
            let h = hkt_check(&inst.complex, &m)?;
            Ok(hkt_report(inst, &h, hyperkahler_check(&inst.complex, &m)))
        }
        Action::Sl => Ok(sl_report(inst, &sl_check(inst)?)),
    }
}

fn parse_axis(s: &str) -> Result<(String, Vec<Rational>)> {
    let (name, vals) = s.split_once('=').ok_or_else(|| Error::BadParameters(format!("expected NAME=V1,V2,..., got {s:?}")))?;
    let vals = vals.split(',').map(|v| parse_param(&format!("{name}={v}")).map(|(_, r)| r)).collect::<Result<Vec<_>>>()?;
    Ok((name.trim().to_string(), vals))
}

fn run(cli: &Cli) -> Result<String> {
    let format: Format = cli.format.parse()?;
    let report = match &cli.command {
        Command::Validate(s) => run_action(Action::Validate, &load(s)?, &CohomologyArgs::default())?,
        Command::Analyze(s) => run_action(Action::Analyze, &load(s)?, &CohomologyArgs::default())?,
        Command::Cohomology { source, args } => run_action(Action::Cohomology, &load(source)?, args)?,
        Command::Hkt(s) => run_action(Action::Hkt, &load(s)?, &CohomologyArgs::default())?,
        Command::Sl(s) => run_action(Action::Sl, &load(s)?, &CohomologyArgs::default())?,
        Command::Family { id, params, args, action } => {
            let inst = build_family(&family_spec(id, params)?)?;
            run_action(action.unwrap_or(Action::Analyze), &inst, args)?
        }
        Command::Sweep { family, grid, random, seed } => {
            let id: FamilyId = family.parse()?;
            let result = match (random, grid.is_empty()) {
                (Some(_), false) => return Err(Error::BadParameters("give either --grid or --random, not both".into())),
                (Some(n), true) => sweep_points(id, random_points(id, *n, &mut ChaCha8Rng::seed_from_u64(*seed))?)?,
                (None, true) => sweep(&default_grid(id))?,
                (None, false) => {
                    let axes = grid.iter().map(|g| parse_axis(g)).collect::<Result<Vec<_>>>()?;
                    for (name, _) in &axes {
                        if !id.parameters().contains(&name.as_str()) {
                            return Err(Error::BadParameters(format!("family {id} has no parameter {name:?}")));
                        }
                    }
                    sweep(&Grid::new(id, axes))?
                }
            };
            sweep_report(&result)
        }
    };
    Ok(report.emit(format))
}

fn diagnostic(e: &Error) -> serde_json::Value {
    let mut d = json!({ "error": e.code(), "message": e.to_string() });
    match e {
        Error::JacobiViolation(i, j, k) => d["triple"] = json!([i + 1, j + 1, k + 1]),
        Error::Schema { path, .. } | Error::NonRationalLiteral { path, .. } => d["path"] = json!(path),
        Error::Parse { line, column, .. } => {
            d["line"] = json!(line);
            d["column"] = json!(column);
        }
        _ => {}
    }
    d
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("{}", json!({ "error": "IO_ERROR", "message": format!("cannot write {}: {e}", path.display()) }));
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            ExitCode::from(if e.is_internal() { 1 } else { 2 })
        }
    }
}
