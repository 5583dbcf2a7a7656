//! Command-line front end: closed-form bounds, witness certificates,
//! certificate verification, exhaustive search, and prediction-vs-search
//! tables. Exit code 0 means the printed claim is fully verified.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use starpath::{
    build_witness, classify, predicted_value, ramsey_exact, search_witness, verify_certificate,
    Budget, CertificateData, CertificateParseError, SearchResult, StarPathInstance, SweepLimits,
    ValueOrBounds, WitnessError,
};

#[derive(Parser)]
#[command(
    name = "starpath",
    about = "Ramsey numbers of stars versus a path: bounds, witnesses, search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct InstanceArgs {
    /// Star orders n_1,...,n_c (comma separated, each >= 2)
    #[arg(long, value_delimiter = ',', required = true)]
    stars: Vec<usize>,
    /// Path order m (>= 2)
    #[arg(long)]
    m: usize,
}

impl InstanceArgs {
    fn instance(&self) -> Result<StarPathInstance> {
        StarPathInstance::new(self.stars.clone(), self.m).context("invalid instance")
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form value or bounds with the clauses that fired
    Bound {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a lower-bound certificate and write it as JSON
    Witness {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify a certificate file, recomputing every check
    Verify {
        /// Certificate JSON path
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the Ramsey number by exhaustive search
    Search {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Largest order to scan
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        /// Node budget per order
        #[arg(long, default_value_t = Budget::default().max_nodes)]
        budget_nodes: u64,
        /// Disable symmetry breaking (reference enumeration)
        #[arg(long)]
        naive: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check predictions against search over a grid of instances
    Table {
        /// Largest number of star colors
        #[arg(long, default_value_t = 2)]
        max_c: usize,
        /// Largest star order
        #[arg(long, default_value_t = 4)]
        max_star: usize,
        /// Largest path order
        #[arg(long, default_value_t = 5)]
        max_m: usize,
        /// Skip instances whose value exceeds this order
        #[arg(long, default_value_t = 8)]
        value_cap: usize,
        #[arg(long, default_value_t = Budget::default().max_nodes)]
        budget_nodes: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn profile_json(inst: &StarPathInstance) -> serde_json::Value {
    let p = classify(inst);
    json!({
        "sigma": p.sigma,
        "k": p.k,
        "s": p.s,
        "t": p.t,
        "m_plus_sigma_even": p.m_plus_sigma_even,
        "all_stars_odd": p.all_stars_odd,
    })
}

fn value_json(v: &ValueOrBounds) -> serde_json::Value {
    match v {
        ValueOrBounds::Exact(r) => json!({"exact": r}),
        ValueOrBounds::Bounds { lower, upper } => json!({"lower": lower, "upper": upper}),
    }
}

fn cmd_bound(instance: &InstanceArgs, format: Format) -> Result<()> {
    let inst = instance.instance()?;
    let pred = predicted_value(&inst);
    let clauses: Vec<String> = pred.clauses.iter().map(|c| c.id().to_string()).collect();
    match format {
        Format::Json => {
            let doc = json!({
                "instance": {"stars": inst.stars(), "m": inst.m()},
                "value": value_json(&pred.result),
                "clauses": clauses,
                "profile": profile_json(&inst),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Text => {
            let p = &pred.profile;
            println!("instance: {inst}");
            println!(
                "profile: sigma={} k={} s={} parity={} all_stars_odd={}",
                p.sigma,
                p.k.map_or("-".into(), |k| k.to_string()),
                p.s.map_or("-".into(), |s| s.to_string()),
                if p.m_plus_sigma_even { "even" } else { "odd" },
                p.all_stars_odd
            );
            println!("value: {} ({})", pred.result, clauses.join(", "));
        }
    }
    Ok(())
}

fn cmd_witness(instance: &InstanceArgs, out: Option<&PathBuf>, format: Format) -> Result<()> {
    let inst = instance.instance()?;
    let cert = match build_witness(&inst) {
        Ok(cert) => cert,
        Err(WitnessError::NotApplicable(reason)) => {
            bail!("no witness construction for {inst}: {reason}");
        }
        Err(e) => return Err(e).context("witness construction failed"),
    };
    let data = cert.to_data();
    let report = verify_certificate(&data);
    if !report.passed {
        bail!("constructed certificate failed verification (bug)");
    }
    let text = data.to_json();
    match out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({"instance": {"stars": inst.stars(), "m": inst.m()},
                           "n": cert.n(), "clause": cert.clause().id(),
                           "verified": true, "out": path.display().to_string()})
                ),
                Format::Text => {
                    println!("instance: {inst}");
                    println!("claim: R>{} via {}", cert.n(), cert.clause());
                    println!("verified: true");
                    println!("wrote: {}", path.display());
                }
            }
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_verify(path: &PathBuf, format: Format) -> Result<()> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let data = match CertificateData::from_json(&text) {
        Ok(data) => data,
        Err(e @ CertificateParseError::Json(_)) => return Err(e).context("parse error"),
        Err(e @ CertificateParseError::Instance(_)) => return Err(e).context("parse error"),
    };
    let report = verify_certificate(&data);
    match format {
        Format::Json => {
            let doc = json!({
                "claim": data.claim,
                "clause": data.clause,
                "passed": report.passed,
                "cover_ok": report.cover_ok,
                "stars": report.star_checks.iter().map(|s| json!({
                    "color": s.color, "cap": s.cap,
                    "max_degree": s.max_degree, "ok": s.ok})).collect::<Vec<_>>(),
                "path": report.path_check.as_ref().map(|p| json!({
                    "m": p.m, "longest_path": p.longest_path, "ok": p.ok})),
                "failures": report.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Text => {
            println!("claim: {} via {}", data.claim, data.clause);
            println!("cover: {}", if report.cover_ok { "ok" } else { "FAIL" });
            for s in &report.star_checks {
                println!(
                    "star color {}: max_degree={} cap={} {}",
                    s.color,
                    s.max_degree,
                    s.cap,
                    if s.ok { "ok" } else { "FAIL" }
                );
            }
            if let Some(p) = &report.path_check {
                println!(
                    "path color: longest_path={} m={} {}",
                    p.longest_path,
                    p.m,
                    if p.ok { "ok" } else { "FAIL" }
                );
            }
            for f in &report.failures {
                println!("failure: {f}");
            }
            println!("verdict: {}", if report.passed { "PASS" } else { "FAIL" });
        }
    }
    if report.passed {
        Ok(())
    } else {
        bail!("certificate failed verification")
    }
}

fn cmd_search(
    instance: &InstanceArgs,
    max_n: usize,
    budget_nodes: u64,
    naive: bool,
    format: Format,
) -> Result<()> {
    let inst = instance.instance()?;
    let budget = Budget {
        max_nodes: budget_nodes,
    };
    let outcome = ramsey_exact(&inst, max_n, budget, !naive);
    let pred = predicted_value(&inst);
    let agrees = match (&outcome.value, &pred.result) {
        (ValueOrBounds::Exact(a), ValueOrBounds::Exact(b)) => Some(a == b),
        (ValueOrBounds::Exact(a), ValueOrBounds::Bounds { lower, upper }) => {
            Some(lower <= a && upper.map_or(true, |u| *a <= u))
        }
        _ => None,
    };
    let nodes: u64 = outcome.per_n.iter().map(|o| o.stats.nodes).sum();
    let timed_out = outcome
        .per_n
        .iter()
        .any(|o| matches!(o.result, SearchResult::Timeout));
    match format {
        Format::Json => {
            let witness = search_witness(&outcome).map(|c| c.to_data().to_json());
            let doc = json!({
                "instance": {"stars": inst.stars(), "m": inst.m()},
                "value": value_json(&outcome.value),
                "predicted": value_json(&pred.result),
                "agrees": agrees,
                "timeout": timed_out,
                "stats": {"nodes": nodes, "orders_scanned": outcome.per_n.len()},
                "witness": witness.and_then(|w| serde_json::from_str::<serde_json::Value>(&w).ok()),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Text => {
            println!("instance: {inst}");
            println!("searched: {}", outcome.value);
            println!(
                "predicted: {} ({})",
                pred.result,
                pred.clauses
                    .iter()
                    .map(|c| c.id())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            match agrees {
                Some(true) => println!("agreement: yes"),
                Some(false) => println!("agreement: NO"),
                None => println!("agreement: undecided (timeout, bounds only)"),
            }
            println!("nodes: {nodes}");
            if timed_out {
                println!("note: node budget exhausted; exact value not decided");
            }
        }
    }
    match agrees {
        Some(true) => Ok(()),
        Some(false) => bail!("search disagrees with the closed form"),
        None => bail!("search exhausted its budget before deciding"),
    }
}

fn cmd_table(
    max_c: usize,
    max_star: usize,
    max_m: usize,
    value_cap: usize,
    budget_nodes: u64,
    format: Format,
) -> Result<()> {
    let limits = SweepLimits {
        max_colors: max_c,
        max_star,
        max_m,
        value_cap,
        budget: Budget {
            max_nodes: budget_nodes,
        },
    };
    let report = starpath::oracle_sweep(limits);
    match format {
        Format::Json => {
            let rows: Vec<_> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "instance": {"stars": r.instance.stars(), "m": r.instance.m()},
                        "predicted": value_json(&r.predicted),
                        "searched": value_json(&r.searched),
                        "agree": r.agree,
                    })
                })
                .collect();
            let doc = json!({
                "rows": rows,
                "disagreements": report.disagreements,
                "undecided": report.undecided,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Text => {
            for r in &report.rows {
                println!(
                    "{} | predicted {} | searched {} | {}",
                    r.instance,
                    r.predicted,
                    r.searched,
                    if r.agree { "agree" } else { "DISAGREE" }
                );
            }
            println!(
                "rows: {} disagreements: {} undecided: {}",
                report.rows.len(),
                report.disagreements,
                report.undecided
            );
        }
    }
    if report.disagreements == 0 {
        Ok(())
    } else {
        bail!("{} disagreement(s) found", report.disagreements)
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Bound { instance, format } => cmd_bound(&instance, format),
        Command::Witness {
            instance,
            out,
            format,
        } => cmd_witness(&instance, out.as_ref(), format),
        Command::Verify { path, format } => cmd_verify(&path, format),
        Command::Search {
            instance,
            max_n,
            budget_nodes,
            naive,
            format,
        } => cmd_search(&instance, max_n, budget_nodes, naive, format),
        Command::Table {
            max_c,
            max_star,
            max_m,
            value_cap,
            budget_nodes,
            format,
        } => cmd_table(max_c, max_star, max_m, value_cap, budget_nodes, format),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
