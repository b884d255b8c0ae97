use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cycloforge::audit::{run_audit, AuditOptions};
use cycloforge::bounds::bound_report;
use cycloforge::constructions::{corollary1_construct, corollary2_construct, theorem1_construct, CounterexampleReport};
use cycloforge::galois::{conductor_of_sum, stabilizer_of_sum, stabilizer_of_sum_at};
use cycloforge::length::{length_interval, DEFAULT_NODE_BUDGET};
use cycloforge::vanishing::{enumerate_mvs_with, mvs_check, EnumOptions, DEFAULT_ENUMERATION_CAP};
use cycloforge::{Error, SumOfRoots};

/// Sums are written as comma-separated roots `e/n` (meaning ζ_n^e), with optional
/// `k*` multiplicity and `-` sign prefixes, e.g. "1/8, 7/8, 1/7, 2/7, 4/7".
#[derive(Parser)]
#[command(name = "cycloforge", version, about = "Conductors, Galois stabilizers and minimal vanishing sums of roots of unity")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conductor, index and degree of a sum.
    Conductor { sum: SumOfRoots },
    /// Stabilizer of a sum in (Z/N)^x.
    Stabilizer {
        sum: SumOfRoots,
        /// Modulus to work at; must be a multiple of the sum's base modulus.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Index [Q_c : Q(alpha)] at the conductor.
    Index { sum: SumOfRoots },
    /// Enumerate minimal vanishing sums of a given weight up to rotation.
    MvsEnum {
        #[arg(long)]
        weight: usize,
        /// Write the atlas as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        node_budget: Option<u64>,
        /// Allow weights above the default cap.
        #[arg(long)]
        force: bool,
    },
    /// Whether a sum is vanishing and minimal, with its canonical form.
    MvsCheck { sum: SumOfRoots },
    /// Bracket the length of a sum by searching representations up to a weight.
    Length {
        sum: SumOfRoots,
        #[arg(long)]
        max_weight: usize,
        #[arg(long)]
        order_bound: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Build a member of a large-index family.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// theorem1: "p:d,q:e" prime/order pairs; corollary1, corollary2: the length k.
        #[arg(long)]
        params: String,
        /// Run the length oracle on the result.
        #[arg(long)]
        certify: bool,
    },
    /// Reproduce every published check and print a pass/fail table.
    VerifyPaper {
        /// Skip the weight-8 enumeration.
        #[arg(long)]
        fast: bool,
    },
    /// Upper bound and observed lower bound on the largest index at length k.
    Bound {
        #[arg(long)]
        k: u64,
        /// Print every k from 1 to K.
        #[arg(long)]
        table: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Theorem1,
    Corollary1,
    Corollary2,
}

enum Failure {
    Verification,
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        println!("{}", text());
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

fn parse_pairs(params: &str) -> Result<(Vec<u64>, Vec<u64>), Error> {
    let mut primes = Vec::new();
    let mut orders = Vec::new();
    for part in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (p, d) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected prime:order, got {part:?}")))?;
        let num = |s: &str| s.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
        primes.push(num(p)?);
        orders.push(num(d)?);
    }
    Ok((primes, orders))
}

fn parse_k(params: &str) -> Result<usize, Error> {
    let s = params.trim().trim_start_matches("k=");
    s.parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

fn report_text(r: &CounterexampleReport) -> String {
    let mut out = format!(
        "alpha {}\nweight {}\nprimes {}\norders {}\nconductor {}\nindex {}{}\nproduct subgroup order {}",
        r.alpha,
        r.weight,
        join(&r.primes),
        join(&r.orders),
        r.conductor,
        r.index,
        if r.index_exact { "" } else { " (lower bound)" },
        r.product_subgroup_order,
    );
    if let Some(l) = r.certified_length {
        out.push_str(&format!("\ncertified length {l}"));
    }
    out.push_str(&format!(
        "\nviolates {} ({})",
        r.violates,
        serde_json::to_value(r.basis).expect("serializable").as_str().unwrap_or_default()
    ));
    out
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Conductor { sum } => {
            let r = conductor_of_sum(&sum);
            let elems = r.stabilizer_at_conductor.elements().to_vec();
            emit(
                json,
                &json!({"conductor": r.conductor, "index": r.index, "degree": r.degree, "stabilizer_elements": elems}),
                || format!("conductor {}\nindex {}\ndegree {}\nstabilizer {}", r.conductor, r.index, r.degree, join(&elems)),
            );
        }
        Command::Stabilizer { sum, modulus } => {
            let h = match modulus {
                Some(m) => stabilizer_of_sum_at(&sum, m)?,
                None => stabilizer_of_sum(&sum),
            };
            emit(
                json,
                &json!({"modulus": h.modulus(), "order": h.order(), "elements": h.elements()}),
                || format!("modulus {}\norder {}\nelements {}", h.modulus(), h.order(), join(h.elements())),
            );
        }
        Command::Index { sum } => {
            let r = conductor_of_sum(&sum);
            emit(json, &json!({"index": r.index, "conductor": r.conductor}), || format!("index {}", r.index));
        }
        Command::MvsEnum { weight, out, node_budget, force } => {
            let opts = EnumOptions {
                max_weight: if force { weight.max(DEFAULT_ENUMERATION_CAP) } else { DEFAULT_ENUMERATION_CAP },
                node_budget,
            };
            let atlas = enumerate_mvs_with(weight, &opts)?;
            let record = atlas.record();
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&record).expect("serializable");
                std::fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            emit(json, &record, || {
                let mut s = format!("{} classes{}", atlas.entries.len(), if atlas.complete { "" } else { " (incomplete)" });
                for e in &atlas.entries {
                    s.push_str(&format!("\n{}", e.to_sum()));
                }
                s
            });
            if !atlas.complete {
                return Err(Failure::Lib(Error::Budget("node budget exhausted; atlas incomplete".into())));
            }
        }
        Command::MvsCheck { sum } => {
            let c = mvs_check(&sum)?;
            emit(json, &c, || {
                let mut s = format!("vanishing {}\nminimal {}", c.vanishing, c.minimal);
                if let Some(k) = &c.canonical {
                    s.push_str(&format!("\ncanonical {}", k.to_sum()));
                }
                s
            });
        }
        Command::Length { sum, max_weight, order_bound, node_budget } => {
            let i = length_interval(&sum, max_weight, order_bound, node_budget)?;
            emit(
                json,
                &json!({"lower": i.lower, "upper": i.upper, "certified": i.certified, "order_bound": i.order_bound, "witness": i.witness}),
                || {
                    format!(
                        "lower {}\nupper {}\ncertified {}\norder bound {}\nwitness {}",
                        i.lower, i.upper, i.certified, i.order_bound, i.witness
                    )
                },
            );
        }
        Command::Construct { family, params, certify } => {
            let mut r = match family {
                Family::Theorem1 => {
                    let (p, d) = parse_pairs(&params)?;
                    theorem1_construct(&p, &d)?
                }
                Family::Corollary1 => corollary1_construct(parse_k(&params)?)?,
                Family::Corollary2 => corollary2_construct(parse_k(&params)?)?,
            };
            if certify {
                r.certify_length(DEFAULT_NODE_BUDGET)?;
            }
            emit(json, &r, || report_text(&r));
        }
        Command::VerifyPaper { fast } => {
            let lines = run_audit(AuditOptions { fast, seed: cli.seed });
            let width = lines.iter().map(|l| l.check.len()).max().unwrap_or(0);
            emit(json, &lines, || {
                lines
                    .iter()
                    .map(|l| format!("{:<width$}  {}  {}", l.check, if l.pass { "PASS" } else { "FAIL" }, l.detail))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            if lines.iter().any(|l| !l.pass) {
                return Err(Failure::Verification);
            }
        }
        Command::Bound { k, table } => {
            let ks: Vec<u64> = if table { (1..=k).collect() } else { vec![k] };
            let reports = ks.into_iter().map(bound_report).collect::<Result<Vec<_>, _>>()?;
            let consistent = reports.iter().all(|r| r.consistent);
            let text = || {
                reports
                    .iter()
                    .map(|r| {
                        format!(
                            "k {}  log_upper {:.6}  lower_observed {}  consistent {}",
                            r.k, r.log_upper, r.lower_observed, r.consistent
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            if table {
                emit(json, &reports, text);
            } else {
                emit(json, &reports[0], text);
            }
            if !consistent {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(Error::Budget(msg))) => {
            eprintln!("error: budget exceeded: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
