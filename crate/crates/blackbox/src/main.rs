use std::io::{BufRead, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context};
use blackbox::harness::{self, run_benchmark, BenchmarkConfig, ChatConfig, Driver};
use blackbox::service::{self, ServiceConfig, Store};
use blackbox_core::protocol::Transcript;
use blackbox_core::registry::lookup;
use blackbox_core::{list_environments, Difficulty, EnvFilter, Family, Session, Stage, TurnBudget};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "blackbox", version, about = "Rule-hidden interactive environments: play, benchmark and serve")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Filter {
    /// Family: cii, cri, psi, eri, ipi or gsi.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// easy or hard.
    #[arg(long, value_parser = parse_difficulty)]
    difficulty: Option<Difficulty>,
}

impl Filter {
    fn get(&self) -> EnvFilter {
        EnvFilter { family: self.family, difficulty: self.difficulty }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Environment ids with family, difficulty and test-set size.
    List(Filter),
    /// The catalog as JSON; `--ciphers` prints cipher configurations.
    Catalog {
        #[command(flatten)]
        filter: Filter,
        #[arg(long)]
        ciphers: bool,
    },
    /// Scripted solvers available to `run --driver scripted:NAME`.
    Solvers,
    /// Plays a session on the terminal, one input per line.
    Play {
        env_id: String,
        #[arg(long, default_value = "10@1")]
        budget: TurnBudget,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        deferred: bool,
        /// Writes the transcript here when the session ends.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Runs a driver over environments and seeds.
    Run(RunArgs),
    /// Replays a transcript and checks it reproduces its report.
    Replay {
        #[arg(long)]
        transcript: PathBuf,
    },
    /// Starts the HTTP session service.
    Serve {
        #[arg(long, env = "BLACKBOX_BIND", default_value = "127.0.0.1:8080")]
        bind: SocketAddr,
        /// JSON snapshot file; sessions are restored from it on start.
        #[arg(long, env = "BLACKBOX_PERSIST")]
        persist: Option<PathBuf>,
        #[arg(long, env = "BLACKBOX_TTL_HOURS", default_value_t = 24)]
        ttl_hours: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    /// `scripted:NAME`, `process:COMMAND ARGS...` or `chat:BASE_URL`.
    #[arg(long)]
    driver: String,
    /// Model name for chat drivers.
    #[arg(long, default_value = "default")]
    model: String,
    /// Environment variable holding the chat endpoint key.
    #[arg(long)]
    key_env: Option<String>,
    #[command(flatten)]
    filter: Filter,
    /// Explicit environment ids; overrides the filter.
    #[arg(long = "env")]
    envs: Vec<String>,
    #[arg(long, default_value = "10@1")]
    budget: TurnBudget,
    #[arg(long)]
    deferred: bool,
    /// Malformed exploration queries corrected within a turn.
    #[arg(long, default_value_t = 1)]
    corrections: u32,
    /// `A..B` (B excluded), `A..=B`, or a comma list.
    #[arg(long, default_value = "0", value_parser = parse_seeds)]
    seeds: Seeds,
    #[arg(long, default_value_t = 4)]
    parallel: usize,
    /// Seconds to wait for each agent reply.
    #[arg(long, default_value_t = 300)]
    timeout: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Directory for per-session transcripts.
    #[arg(long)]
    transcripts: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("unknown family `{s}`"))
}

fn parse_difficulty(s: &str) -> Result<Difficulty, String> {
    Difficulty::parse(s).ok_or_else(|| format!("unknown difficulty `{s}`"))
}

#[derive(Debug, Clone)]
struct Seeds(Vec<u64>);

fn parse_seeds(s: &str) -> Result<Seeds, String> {
    let num = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("`{x}` is not a seed"));
    let seeds: Vec<u64> = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?..=num(b)?).collect()
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?..num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if seeds.is_empty() {
        return Err(format!("`{s}` contains no seeds"));
    }
    Ok(Seeds(seeds))
}

fn parse_driver(args: &RunArgs) -> anyhow::Result<Driver> {
    let (kind, rest) = args.driver.split_once(':').context("driver must look like KIND:VALUE")?;
    Ok(match kind {
        "scripted" => {
            if harness::solvers::solver_info(rest).is_none() {
                bail!("unknown solver `{rest}`; see `blackbox solvers`");
            }
            Driver::Scripted { solver: rest.to_string() }
        }
        "process" => Driver::ExternalProcess { command: rest.split_whitespace().map(String::from).collect() },
        "chat" => Driver::ChatEndpoint(ChatConfig {
            base_url: rest.to_string(),
            model: args.model.clone(),
            key_env: args.key_env.clone(),
        }),
        _ => bail!("unknown driver kind `{kind}`"),
    })
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::List(filter) => {
            for s in list_environments(filter.get()) {
                println!("{:<28} {} {:<4} {:>3}  {}", s.id, s.family, s.difficulty, s.default_test_count, s.description);
            }
        }
        Command::Catalog { filter, ciphers } => {
            if ciphers {
                println!("{}", blackbox_core::eri::catalog_json());
            } else {
                println!("{}", serde_json::to_string_pretty(&list_environments(filter.get()))?);
            }
        }
        Command::Solvers => {
            for s in harness::solvers::SOLVERS {
                let fams: Vec<&str> = s.families.iter().map(|f| f.as_str()).collect();
                println!("{:<24} {:<24} {}", s.name, fams.join(","), s.summary);
            }
        }
        Command::Play { env_id, mut budget, seed, deferred, transcript } => {
            if deferred {
                budget = budget.deferred();
            }
            play(&env_id, budget, seed, transcript)?;
        }
        Command::Run(args) => run(args)?,
        Command::Replay { transcript } => {
            let t = Transcript::from_json(&std::fs::read_to_string(&transcript)?)?;
            let session = harness::replay(&t)?;
            let report = session.score().ok();
            println!("{}", serde_json::to_string_pretty(&report)?);
            if report != t.report {
                bail!("replay does not reproduce the stored report");
            }
            eprintln!("replay reproduces the stored report");
        }
        Command::Serve { bind, persist, ttl_hours } => {
            tracing_subscriber::fmt()
                .with_env_filter(
                    tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
                )
                .init();
            let config = ServiceConfig { ttl: Duration::from_secs(ttl_hours * 3600), persist, ..Default::default() };
            let store = Arc::new(Store::open(config)?);
            tokio::runtime::Runtime::new()?.block_on(service::serve(bind, store))?;
        }
    }
    Ok(())
}

fn play(env_id: &str, budget: TurnBudget, seed: u64, transcript: Option<PathBuf>) -> anyhow::Result<()> {
    let mut session = Session::new(env_id, budget, seed)?;
    let stdin = std::io::stdin();
    let mut lines = stdin.lock().lines();
    let mut out = std::io::stdout();
    while session.stage() != Stage::Done {
        write!(out, "{}\n> ", session.prompt())?;
        out.flush()?;
        let Some(line) = lines.next() else { break };
        session.submit(&line?)?;
    }
    if let Ok(report) = session.score() {
        println!("{}\n\n{}", session.prompt(), serde_json::to_string_pretty(&report)?);
    }
    if let Some(path) = transcript {
        std::fs::write(path, session.transcript().to_json())?;
    }
    Ok(())
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let driver = parse_driver(&args)?;
    let envs = if args.envs.is_empty() {
        list_environments(args.filter.get())
    } else {
        args.envs
            .iter()
            .map(|id| lookup(id).with_context(|| format!("unknown environment `{id}`")))
            .collect::<anyhow::Result<_>>()?
    };
    if envs.is_empty() {
        bail!("no environment matches the filter");
    }
    let mut budget = args.budget.with_corrections(args.corrections);
    if args.deferred {
        budget = budget.deferred();
    }
    let run = run_benchmark(&BenchmarkConfig {
        driver,
        envs,
        budget,
        seeds: args.seeds.0,
        parallel: args.parallel,
        timeout: Duration::from_secs(args.timeout),
        transcripts: args.transcripts,
    })?;
    for a in &run.aggregates {
        let d = a.difficulty.map_or("All", |d| d.as_str());
        let acc = a.accuracy.map_or("-".to_string(), |x| format!("{x:.3}"));
        println!("{} {:<4} accuracy {acc}  ({} envs, {} sessions, {} errors)", a.family, d, a.environments, a.sessions, a.errors);
    }
    if let Some(path) = &args.out {
        run.write_json(path)?;
    }
    if let Some(path) = &args.csv {
        run.write_csv(std::fs::File::create(path)?)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!(parse_seeds("0..4").unwrap().0, vec![0, 1, 2, 3]);
        assert_eq!(parse_seeds("2..=3").unwrap().0, vec![2, 3]);
        assert_eq!(parse_seeds("5,1").unwrap().0, vec![5, 1]);
        assert!(parse_seeds("3..3").is_err());
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
