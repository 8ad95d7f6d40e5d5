use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use permwit::census::checks::{self, CheckParams, CheckReport};
use permwit::census::{census_with, dedupe, CensusOptions};
use permwit::io::parse_group_file_n;
use permwit::numthy::is_prime;
use permwit::refute::refute;
use permwit::witness::{classify_degree, construct_witness, smallest_valid_prime, verify_groups, verify_witness};
use permwit::wreath::{embed, embedding_report};
use permwit::Error;
use serde::Serialize;

/// Transitive permutation groups with isomorphic quotients by a transitive
/// and an intransitive normal subgroup.
#[derive(Parser)]
#[command(name = "permwit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify a witness of degree n.
    Witness {
        n: usize,
        /// Prime dividing n and phi(n); defaults to the smallest.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Verify a file holding G, N1, N2 separated by `---`.
    Verify { file: PathBuf },
    /// Transitive groups of prime degree q, with lemma checks.
    Census {
        q: u64,
        /// Allow q = 11, 13 (sampled, not exhaustive).
        #[arg(long)]
        deep: bool,
        #[arg(long, default_value = "agl")]
        strategy: String,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Prime p for the lemma-pq check; defaults to every valid p < q.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Embed G (with N1, N2) of degree pq into the wreath product.
    Embed {
        file: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Search degree pq for witnesses, where none should exist.
    Refute {
        p: u64,
        q: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for bad input, 1 when the mathematics fails.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::GroupFile { .. }
        | Error::InvalidArgument(_)
        | Error::DegreeMismatch(..)
        | Error::Budget { .. } => 2,
        Error::NotSubgroup(_) | Error::NotNormal(_) | Error::Hypothesis(_) | Error::Undecided(_) => 1,
    }
}

fn emit<T: Serialize>(value: &T) {
    use std::io::Write;
    let json = serde_json::to_string_pretty(value).expect("reports serialize");
    // a closed pipe (e.g. `| head`) is not an error for a batch tool
    let _ = writeln!(std::io::stdout(), "{json}");
}

fn outcome(passed: bool) -> Outcome {
    if passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn read(file: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(file)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", file.display())))
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Witness { n, prime } => cmd_witness(n, prime),
        Command::Verify { file } => {
            let gs = parse_group_file_n(&read(&file)?, 3)?;
            let report = verify_groups(&gs[0], &gs[1], &gs[2], None)?;
            for c in &report.clauses {
                eprintln!("({}) {}: {} [{}]", c.id, c.description, if c.passed { "pass" } else { "FAIL" }, c.detail);
            }
            emit(&report);
            Ok(outcome(report.passed()))
        }
        Command::Census {
            q,
            deep,
            strategy,
            checks,
            p,
        } => cmd_census(q, deep, &strategy, &checks, p),
        Command::Embed { file, samples, seed } => {
            let gs = parse_group_file_n(&read(&file)?, 3)?;
            let e = embed(&gs[0], &gs[1], &gs[2])?;
            let report = embedding_report(&e, samples, seed)?;
            eprintln!(
                "embedding into S_{} wreath S_{}: conditions {}, homomorphism {}, injective {}",
                report.embedding.q,
                report.embedding.p,
                report.embedding.conditions.all_hold(),
                report.homomorphism_ok,
                report.embedding.injective
            );
            emit(&report);
            Ok(outcome(report.passed))
        }
        Command::Refute { p, q, samples, seed } => {
            let report = refute(p, q, samples, seed)?;
            eprintln!(
                "degree {}: {} of {} samples analysed ({} distinct groups, {} over budget), {} counterexamples, {:.1?}",
                report.degree,
                report.counts.tested,
                report.samples,
                report.counts.distinct_groups,
                report.counts.skipped_over_budget,
                report.counterexamples_found,
                report.elapsed
            );
            for v in &report.census_verdicts {
                eprintln!("  {}: {}", v.check, if v.passed { "pass" } else { "FAIL" });
            }
            eprintln!("  status: {}", report.status);
            emit(&report);
            Ok(outcome(report.passed()))
        }
    }
}

#[derive(Serialize)]
struct NoWitness {
    n: usize,
    #[serde(flatten)]
    degree_status: permwit::witness::DegreeStatus,
    error: String,
}

fn cmd_witness(n: usize, prime: Option<u64>) -> Result<Outcome, Error> {
    let Some(p) = prime.or_else(|| smallest_valid_prime(n)) else {
        let status = classify_degree(n);
        eprintln!("no prime divides both {n} and phi({n}); status: {status:?}");
        emit(&NoWitness {
            n,
            degree_status: status,
            error: "no prime divides both n and phi(n)".into(),
        });
        return Ok(Outcome::Fail);
    };
    let w = construct_witness(n, p)?;
    let report = verify_witness(&w)?;
    eprintln!(
        "degree {n}, p = {p}, i = {}: |G| = {}, |N1| = |N2| = {}, {}",
        w.i,
        report.order_g,
        report.order_n1,
        if report.passed() { "all clauses pass" } else { "FAILED" }
    );
    emit(&w.to_json(&report));
    Ok(outcome(report.passed()))
}

#[derive(Serialize)]
struct CensusJson {
    q: u64,
    strategy: &'static str,
    exhaustive: bool,
    entries: Vec<permwit::census::EntryJson>,
    checks: Vec<CheckReport>,
    passed: bool,
}

fn cmd_census(q: u64, deep: bool, strategy: &str, names: &str, p: Option<u64>) -> Result<Outcome, Error> {
    if dedupe::by_name(strategy, 2).is_err() {
        return Err(Error::InvalidArgument(format!(
            "unknown strategy {strategy:?}; known: {}",
            dedupe::strategy_names().join(", ")
        )));
    }
    let selected: Vec<&str> = if names == "all" {
        checks::check_names()
    } else {
        names.split(',').map(str::trim).collect()
    };
    let selected = selected
        .into_iter()
        .map(checks::by_name)
        .collect::<Result<Vec<_>, _>>()?;
    let opts = CensusOptions {
        strategy,
        deep,
        ..CensusOptions::default()
    };
    let c = census_with(q, opts)?;
    let explicit = names != "all";
    let mut reports = Vec::new();
    for check in selected {
        match check.name() {
            "lemma-pq" => {
                let ps: Vec<u64> = match p {
                    Some(p) => vec![p],
                    None => (2..q).filter(|&p| is_prime(p) && (q - 1) % p != 0).collect(),
                };
                for p in ps {
                    reports.push(check.run(&c, &CheckParams { p: Some(p) })?);
                }
            }
            // the centralizer sweep runs over S_q
            "contain" if q > permwit::census::MAX_STANDARD_Q && !explicit => {}
            _ => reports.push(check.run(&c, &CheckParams { p })?),
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    eprintln!(
        "q = {q}: {} classes{}, orders {:?}",
        c.entries.len(),
        if c.exhaustive { "" } else { " (sampled, may be incomplete)" },
        c.orders()
    );
    for r in &reports {
        eprintln!(
            "  {}{}: {} ({} applicable, {} violations)",
            r.check,
            r.p.map_or(String::new(), |p| format!(" (p = {p})")),
            if r.passed { "pass" } else { "FAIL" },
            r.applicable(),
            r.violations()
        );
    }
    emit(&CensusJson {
        q,
        strategy: c.strategy,
        exhaustive: c.exhaustive,
        entries: c.entries.iter().map(|e| e.to_json()).collect(),
        checks: reports,
        passed,
    });
    Ok(outcome(passed))
}
