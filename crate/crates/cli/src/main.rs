//! Command-line front end: enumeration, classification, crystal-graph
//! export, dimension tables, exact char-0 dimensions, certified lower
//! bounds, and the lemma verification harness.
//!
//! Exit codes: 0 on success or a passing verification, 1 on a failing
//! verification, 2 on usage errors.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use spinbranch::branching::{self, Engine};
use spinbranch::charzero;
use spinbranch::crystal;
use spinbranch::labels;
use spinbranch::partition::{enumerate_rpp, Char, Partition};
use spinbranch::verify::{self, VerifyReport};

#[derive(Parser)]
#[command(name = "spinbranch", version, about = "Restricted p-strict partition combinatorics and spin dimension bounds", disable_help_subcommand = true)]
struct Cli {
    /// Worker threads for enumeration-backed commands (0 = rayon default).
    /// Output is independent of the thread count.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all restricted p-strict partitions of n, one per line.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// Classify one partition: eps vector, JS status, labels, block content,
    /// certified d_1/d_2 and dimension lower bound. JSON on one line.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: String,
    },
    /// Build the crystal graph up to nmax; print level sizes, optionally
    /// write a DOT rendering.
    Crystal {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        nmax: u64,
        #[arg(long)]
        dot: Option<std::path::PathBuf>,
    },
    /// Dimension-formula table: one JSON object per n, numerics as decimal
    /// strings.
    Dims {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Exact characteristic-zero spin dimensions of a strict partition.
    Schur {
        #[arg(long)]
        lambda: String,
    },
    /// Certified dimension lower bound for one partition.
    Dimlb {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: String,
    },
    /// Run one registered lemma check over a (p, n) grid.
    Verify {
        id: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        json: bool,
        /// Drop the lowest-removable-node rule from the engine (testing
        /// hook; makes several checks fail).
        #[arg(long, hide = true)]
        mutate_drop_lowest_rule: bool,
    },
    /// Exhaustive characteristic-zero classification scan; JSON report.
    CheckMain {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Print the registered lemma ids in stable order.
    ListLemmas,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_char(p: u64) -> Result<Char, String> {
    Char::new(p).map_err(|e| e.to_string())
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

fn report_exit(rep: &VerifyReport) -> ExitCode {
    if rep.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Default SIGPIPE disposition so piping into `head` terminates quietly
/// instead of panicking on a closed stdout.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            return usage_error(&format!("cannot configure {} threads: {e}", cli.threads));
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => usage_error(&msg),
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Enumerate { p, n } => {
            let c = parse_char(p)?;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for la in enumerate_rpp(c, n) {
                writeln!(out, "{la}").map_err(|e| e.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { p, lambda } => {
            let c = parse_char(p)?;
            let la = parse_partition(&lambda)?;
            if !la.is_restricted(c) {
                return Err(format!("({la}) is not a restricted {p}-strict partition"));
            }
            println!("{}", classify_json(c, &la));
            Ok(ExitCode::SUCCESS)
        }
        Command::Crystal { p, nmax, dot } => {
            let c = parse_char(p)?;
            let g = crystal::crystal_graph(c, nmax);
            for (m, size) in g.level_sizes().iter().enumerate() {
                println!("level {m}: {size}");
            }
            println!("edges: {}", g.edge_count());
            if let Some(path) = dot {
                std::fs::write(&path, g.to_dot())
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dims { p, from, to } => {
            let c = parse_char(p)?;
            if from < 5 {
                return Err("dims requires --from >= 5".into());
            }
            for n in from..=to {
                let rec = labels::dims(c, n);
                println!(
                    "{}",
                    json!({
                        "n": rec.n.to_string(),
                        "kappa_n": rec.kappa_n.to_string(),
                        "a_n": rec.a_n.to_string(),
                        "b_n": rec.b_n.to_string(),
                        "f_n": rec.f_n.to_string(),
                        "fstar_n": rec.fstar_n.to_string(),
                        "basic_type": rec.basic_type.to_string(),
                        "second_basic_type": rec.second_basic_type.to_string(),
                    })
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Schur { lambda } => {
            let la = parse_partition(&lambda)?;
            let schur = charzero::schur_dim(&la).map_err(|e| e.to_string())?;
            let superd = charzero::super_dim(&la).map_err(|e| e.to_string())?;
            println!(
                "{}",
                json!({
                    "partition": la.to_string(),
                    "schur_dim": schur.to_string(),
                    "super_dim": superd.to_string(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Dimlb { p, lambda } => {
            let c = parse_char(p)?;
            let la = parse_partition(&lambda)?;
            if !la.is_restricted(c) {
                return Err(format!("({la}) is not a restricted {p}-strict partition"));
            }
            let engine = Engine::new(c);
            println!(
                "{}",
                json!({
                    "p": p,
                    "partition": la.to_string(),
                    "dim_lower_bound": engine.dim_lower_bound(&la).to_string(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            id,
            p,
            from,
            to,
            json: as_json,
            mutate_drop_lowest_rule,
        } => {
            let c = parse_char(p)?;
            let rules = branching::Rules {
                lowest_node_rule: !mutate_drop_lowest_rule,
            };
            let rep = verify::verify_with_rules(&id, c, from, to, rules)
                .map_err(|e| e.to_string())?;
            if as_json {
                println!("{}", serde_json::to_string(&rep).map_err(|e| e.to_string())?);
            } else {
                println!(
                    "{}: {} ({}; {} checks, {} counterexamples)",
                    rep.lemma_id,
                    if rep.pass { "pass" } else { "FAIL" },
                    rep.grid,
                    rep.checked,
                    rep.counterexamples.len()
                );
                for ce in &rep.counterexamples {
                    println!("  p={} ({}) {}", ce.p, ce.partition, ce.detail);
                }
            }
            Ok(report_exit(&rep))
        }
        Command::CheckMain { from, to } => {
            if from < 12 {
                return Err("check-main requires --from >= 12".into());
            }
            let rep = charzero::main_theorem_check_char0(from, to);
            println!("{}", serde_json::to_string(&rep).map_err(|e| e.to_string())?);
            Ok(report_exit(&rep))
        }
        Command::ListLemmas => {
            for id in verify::list_lemmas() {
                println!("{id}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn classify_json(c: Char, la: &Partition) -> serde_json::Value {
    let n = la.n();
    let eps: Vec<u64> = crystal::active_residues(c, la)
        .into_iter()
        .map(|i| crystal::epsilon(c, la, i))
        .collect();
    let js = branching::js_class(c, la);
    let four_case = match branching::four_cases(c, la) {
        Ok(tag) => Some(tag.to_string()),
        Err(_) => None,
    };
    let mut label_matches = Vec::new();
    if *la == labels::alpha_label(c, n) {
        label_matches.push("alpha");
    }
    if labels::beta_label(c, n).as_ref() == Some(la) {
        label_matches.push("beta");
    }
    if labels::gamma_label(c, n).as_ref() == Some(la) {
        label_matches.push("gamma");
    }
    if labels::delta_labels(c, n).is_some_and(|d| d.contains(la)) {
        label_matches.push("delta");
    }
    let block: serde_json::Map<String, serde_json::Value> = la
        .block_content(c)
        .iter()
        .map(|(i, k)| (i.to_string(), serde_json::Value::from(k)))
        .collect();
    let engine = Engine::new(c);
    let d1 = if n >= 1 {
        Some(engine.d_lower(la, 1).to_string())
    } else {
        None
    };
    let d2 = if n >= 2 {
        Some(engine.d_lower(la, 2).to_string())
    } else {
        None
    };
    json!({
        "p": c.p(),
        "partition": la.to_string(),
        "n": n,
        "eps": eps,
        "js": js.to_string(),
        "four_case": four_case,
        "labels": label_matches,
        "block_content": block,
        "d1": d1,
        "d2": d2,
        "dim_lower_bound": engine.dim_lower_bound(la).to_string(),
    })
}
