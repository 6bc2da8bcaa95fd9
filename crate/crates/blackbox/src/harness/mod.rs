//! Drives agents through sessions and aggregates their reports.

pub mod agent;
pub mod chat;
pub mod process;
pub mod report;
pub mod solvers;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Duration;

use blackbox_core::protocol::Transcript;
use blackbox_core::{EnvSpec, ScoreReport, Session, Stage, TurnBudget};
use serde::{Deserialize, Serialize};

pub use agent::{Agent, AgentError, AgentTurn};
pub use chat::ChatConfig;
pub use report::{Aggregate, BenchmarkRun, SessionResult};

/// Submissions after which a session is aborted; GSI fallbacks and the
/// correction allowance guarantee progress well before this.
pub const MAX_SUBMISSIONS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Driver {
    Scripted { solver: String },
    ExternalProcess { command: Vec<String> },
    ChatEndpoint(ChatConfig),
}

impl Driver {
    pub fn label(&self) -> String {
        match self {
            Driver::Scripted { solver } => format!("scripted:{solver}"),
            Driver::ExternalProcess { command } => format!("process:{}", command.join(" ")),
            Driver::ChatEndpoint(c) => format!("chat:{}:{}", c.base_url, c.model),
        }
    }

    pub fn agent(&self, spec: &'static EnvSpec, seed: u64, timeout: Duration) -> Result<Box<dyn Agent>, AgentError> {
        Ok(match self {
            Driver::Scripted { solver } => solvers::scripted(solver, spec, seed)?,
            Driver::ExternalProcess { command } => Box::new(process::ProcessAgent::spawn(command, timeout)?),
            Driver::ChatEndpoint(c) => Box::new(chat::ChatAgent::new(c.clone(), timeout)?),
        })
    }
}

#[derive(Debug)]
pub struct SessionOutcome {
    pub transcript: Transcript,
    pub report: Option<ScoreReport>,
    pub error: Option<String>,
}

/// Runs one session to completion or abort.
pub fn run_session(
    driver: &Driver,
    spec: &'static EnvSpec,
    budget: TurnBudget,
    seed: u64,
    timeout: Duration,
) -> Result<SessionOutcome, blackbox_core::Error> {
    let mut session = Session::new(spec.id, budget, seed)?;
    let error = match driver.agent(spec, seed, timeout) {
        Ok(mut agent) => drive(agent.as_mut(), spec, &mut session).err(),
        Err(e) => Some(e.to_string()),
    };
    Ok(SessionOutcome { transcript: session.transcript(), report: session.score().ok(), error })
}

fn drive(agent: &mut dyn Agent, spec: &'static EnvSpec, session: &mut Session) -> Result<(), String> {
    for _ in 0..MAX_SUBMISSIONS {
        if session.stage() == Stage::Done {
            return Ok(());
        }
        let reply = {
            let turn = AgentTurn {
                spec,
                stage: session.stage(),
                sample: session.sample_index(),
                prompt: session.prompt(),
                session,
            };
            agent.respond(&turn).map_err(|e| e.to_string())?
        };
        session.submit(&reply).map_err(|e| e.to_string())?;
    }
    Err(format!("no result after {MAX_SUBMISSIONS} submissions"))
}

#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    pub driver: Driver,
    pub envs: Vec<&'static EnvSpec>,
    pub budget: TurnBudget,
    pub seeds: Vec<u64>,
    /// Sessions in flight at once; at least 1.
    pub parallel: usize,
    /// Per-reply limit for process and endpoint agents.
    pub timeout: Duration,
    /// Directory that receives one transcript file per session.
    pub transcripts: Option<PathBuf>,
}

pub fn transcript_path(dir: &Path, env_id: &str, seed: u64) -> PathBuf {
    dir.join(format!("{}-{seed}.json", env_id.replace('/', "_")))
}

/// One session per (env, seed). Results are ordered by env id and seed
/// regardless of completion order.
pub fn run_benchmark(config: &BenchmarkConfig) -> std::io::Result<BenchmarkRun> {
    if let Some(dir) = &config.transcripts {
        fs::create_dir_all(dir)?;
    }
    let jobs: Vec<(&'static EnvSpec, u64)> =
        config.envs.iter().flat_map(|s| config.seeds.iter().map(move |seed| (*s, *seed))).collect();
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::with_capacity(jobs.len()));
    let io_error = Mutex::new(None);
    thread::scope(|scope| {
        for _ in 0..config.parallel.clamp(1, jobs.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(spec, seed)) = jobs.get(i) else { break };
                let result = match run_session(&config.driver, spec, config.budget, seed, config.timeout) {
                    Ok(out) => {
                        if let Some(dir) = &config.transcripts {
                            if let Err(e) = fs::write(transcript_path(dir, spec.id, seed), out.transcript.to_json()) {
                                io_error.lock().unwrap().get_or_insert(e);
                            }
                        }
                        SessionResult::new(spec, seed, out.report, out.error)
                    }
                    Err(e) => SessionResult::new(spec, seed, None, Some(e.to_string())),
                };
                results.lock().unwrap().push(result);
            });
        }
    });
    if let Some(e) = io_error.into_inner().unwrap() {
        return Err(e);
    }
    Ok(BenchmarkRun::new(config.driver.label(), config.budget, config.seeds.clone(), results.into_inner().unwrap()))
}

/// Replays a transcript's inputs against a fresh instance.
pub fn replay(transcript: &Transcript) -> Result<Session, blackbox_core::Error> {
    Session::replay(&transcript.env_id, transcript.budget, transcript.seed, transcript.inputs())
}
