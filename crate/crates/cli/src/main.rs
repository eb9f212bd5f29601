use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use cbcolor::analysis::truncate;
use cbcolor::antichains::{
    chromatic_number, et_equivalent, kneser_graph, make_x_nu, x_nu_forced_compare, ChromaticOutcome,
    EventuallyPeriodicSeq,
};
use cbcolor::basis::{basis_below, canon_p, enumerate_fp, BasisElement, BasisMode};
use cbcolor::coloring::{constrained_truncation_colorable, decide_continuous_coloring, n0, verify_witness, Kappa};
use cbcolor::order::{compare_canonical, confirm_by_truncation, hom_exists, Certificate, HomOutcome, RefutationReason};
use cbcolor::presentation::{self, make_n_sigma, make_odd_cycle, make_sigma_p, make_x1, PTuple, SystemPresentation};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cbcolor", version, about = "Continuous colorings of rank two countable dynamical systems")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the presentation of a named system.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Decide whether a continuous κ-coloring exists.
    Color {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(short = 'k')]
        kappa: Kappa,
        /// Recheck the answer: witnesses on windows of radius 4, 8 and 16,
        /// 2-coloring refusals against the truncation oracle.
        #[arg(long)]
        verify: bool,
    },
    /// The basis element below a system without a continuous 2-coloring.
    Basis {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Canonical parameters of Σ_p.
    Canon {
        #[arg(long)]
        p: PTuple,
    },
    /// Compare two basis elements.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Window radius for the truncation confirmation.
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// The finite window graph of radius N.
    Truncate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(short = 'N')]
        n: usize,
        #[arg(long)]
        dot: bool,
    },
    Kneser {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        chi: bool,
        /// Search for a homomorphism into K(N2, K2).
        #[arg(long, num_args = 2, value_names = ["N2", "K2"])]
        hom: Option<Vec<usize>>,
    },
    /// A finite piece of the closed graph X_ν.
    Xnu {
        #[arg(long)]
        kappa: usize,
        /// Comma separated prefix of ν.
        #[arg(long, default_value = "")]
        pre: String,
        /// Comma separated repeated block of ν.
        #[arg(long)]
        period: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Tail equivalence of two eventually periodic sequences (`pre;period`).
    Et {
        #[arg(long)]
        nu1: EventuallyPeriodicSeq,
        #[arg(long)]
        nu2: EventuallyPeriodicSeq,
    },
}

#[derive(Subcommand)]
enum Construct {
    OddCycle { q: usize },
    X1,
    NSigma { n: usize },
    /// Parameters as `l;λ0,…,λl;m;ε1,…,εl`.
    SigmaP { p: PTuple },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Homeo,
    Subshift,
}

enum Output {
    Json(Value),
    Text(String),
}

struct Failure {
    code: u8,
    message: String,
    doc: Option<Value>,
}

impl Failure {
    fn input(message: impl std::fmt::Display) -> Failure {
        Failure { code: 2, message: message.to_string(), doc: None }
    }

    fn budget(what: &str) -> Failure {
        Failure { code: 3, message: format!("{what}: search budget exhausted"), doc: Some(json!({"outcome": "Unknown"})) }
    }
}

fn read_source(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(Failure::input)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn read_presentation(path: &PathBuf) -> Result<SystemPresentation, Failure> {
    presentation::parse(&read_source(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// A basis element document, or a presentation whose basis element is taken.
fn read_element(path: &PathBuf) -> Result<BasisElement, Failure> {
    let text = read_source(path)?;
    if let Ok(e) = serde_json::from_str::<BasisElement>(&text) {
        return Ok(e);
    }
    let s = presentation::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    basis_below(&s, BasisMode::Homeo).map_err(Failure::input)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Construct { what } => {
            let s = match what {
                Construct::OddCycle { q } => make_odd_cycle(q),
                Construct::X1 => make_x1(),
                Construct::NSigma { n } => make_n_sigma(n),
                Construct::SigmaP { p } => make_sigma_p(&p),
            };
            Ok(Output::Text(presentation::serialize(&s) + "\n"))
        }
        Command::Color { input, kappa, verify } => {
            let s = read_presentation(&input)?;
            let decision = decide_continuous_coloring(&s, kappa).map_err(Failure::input)?;
            let mut doc = to_value(&decision);
            if verify {
                let verified = match decision.witness() {
                    Some(w) => [4, 8, 16].iter().all(|&n| verify_witness(&s, w, n)),
                    None if kappa == Kappa::Two => !constrained_truncation_colorable(&s, n0(&s)),
                    None => true,
                };
                doc["verified"] = json!(verified);
            }
            Ok(Output::Json(doc))
        }
        Command::Basis { input, mode } => {
            let s = read_presentation(&input)?;
            let mode = match mode {
                ModeArg::Homeo => BasisMode::Homeo,
                ModeArg::Subshift => BasisMode::Subshift,
            };
            let e = basis_below(&s, mode).map_err(Failure::input)?;
            Ok(Output::Json(to_value(&e)))
        }
        Command::Canon { p } => {
            let class = enumerate_fp(&p);
            Ok(Output::Json(json!({
                "input": p.to_string(),
                "canonical": canon_p(&p).to_string(),
                "class": class.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            })))
        }
        Command::Compare { a, b, depth } => {
            let (ea, eb) = (read_element(&a)?, read_element(&b)?);
            let verdict = compare_canonical(&ea, &eb);
            let confirm = |x: &BasisElement, y: &BasisElement, cert: &Certificate| match cert {
                Certificate::Refutation { reason, .. } if *reason != RefutationReason::ColoringSeparation => {
                    to_value(&confirm_by_truncation(x, y, depth))
                }
                _ => Value::Null,
            };
            let mut doc = to_value(&verdict);
            doc["a"] = to_value(&ea);
            doc["b"] = to_value(&eb);
            doc["truncation"] = json!({
                "depth": depth,
                "forward": confirm(&ea, &eb, &verdict.forward),
                "backward": confirm(&eb, &ea, &verdict.backward),
            });
            Ok(Output::Json(doc))
        }
        Command::Truncate { input, n, dot } => {
            let g = truncate(&read_presentation(&input)?, n);
            Ok(if dot { Output::Text(g.to_dot()) } else { Output::Json(to_value(&g)) })
        }
        Command::Kneser { n, k, chi, hom } => {
            if k == 0 || k > n {
                return Err(Failure::input(format!("need 1 ≤ k ≤ n, got n = {n}, k = {k}")));
            }
            let g = kneser_graph(n, k);
            let mut doc = json!({"n": n, "k": k, "vertices": g.vertex_count(), "edges": g.edge_count()});
            if chi {
                match chromatic_number(&g, g.vertex_count()) {
                    ChromaticOutcome::Chi(c) => doc["chi"] = json!(c),
                    ChromaticOutcome::NotFound => doc["chi"] = Value::Null,
                    ChromaticOutcome::Unknown => return Err(Failure::budget("chromatic number")),
                }
            }
            if let Some(t) = hom {
                let (n2, k2) = (t[0], t[1]);
                if k2 == 0 || k2 > n2 {
                    return Err(Failure::input(format!("need 1 ≤ K2 ≤ N2, got {n2}, {k2}")));
                }
                let outcome = hom_exists(&g, &kneser_graph(n2, k2));
                if outcome == HomOutcome::Unknown {
                    return Err(Failure::budget("homomorphism search"));
                }
                doc["hom"] = json!({"target": [n2, k2], "exists": outcome.map().is_some()});
            }
            Ok(Output::Json(doc))
        }
        Command::Xnu { kappa, pre, period, depth, dot } => {
            let nu: EventuallyPeriodicSeq = format!("{pre};{period}").parse().map_err(Failure::input)?;
            let sample = make_x_nu(kappa, &nu, depth).map_err(Failure::input)?;
            Ok(if dot { Output::Text(sample.to_dot()) } else { Output::Json(to_value(&sample)) })
        }
        Command::Et { nu1, nu2 } => {
            let bound = 4 * (nu1.period.iter().sum::<u64>() + nu2.period.iter().sum::<u64>()) as usize;
            let forward = x_nu_forced_compare(2, &nu1, &nu2, bound).map_err(Failure::input)?;
            let backward = x_nu_forced_compare(2, &nu2, &nu1, bound).map_err(Failure::input)?;
            Ok(Output::Json(json!({
                "nu1": nu1.to_string(),
                "nu2": nu2.to_string(),
                "equivalent": et_equivalent(&nu1, &nu2),
                "forced": {"bound": bound, "forward": forward, "backward": backward},
            })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("cbcolor: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Output::Json(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("documents serialize"));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("cbcolor: {}", f.message);
            if let Some(doc) = f.doc {
                println!("{}", serde_json::to_string_pretty(&doc).expect("documents serialize"));
            }
            ExitCode::from(f.code)
        }
    }
}
