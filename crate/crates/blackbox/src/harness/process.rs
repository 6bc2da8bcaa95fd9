//! External agents over stdin/stdout. Each prompt is written as its lines
//! followed by [`SENTINEL`] on a line of its own; the agent answers with one
//! line.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::Duration;

use super::agent::{Agent, AgentError, AgentTurn};

pub const SENTINEL: &str = "<<<END>>>";

pub struct ProcessAgent {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<std::io::Result<String>>,
    timeout: Duration,
}

impl ProcessAgent {
    pub fn spawn(command: &[String], timeout: Duration) -> Result<Self, AgentError> {
        let (program, args) = command.split_first().ok_or_else(|| AgentError::Process("empty command".into()))?;
        let mut child = Command::new(program)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| AgentError::Process(format!("cannot start `{program}`: {e}")))?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, lines) = mpsc::channel();
        // a reader thread lets replies be awaited with a timeout
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        Ok(ProcessAgent { child, stdin, lines, timeout })
    }
}

impl Agent for ProcessAgent {
    fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
        let io = |e: std::io::Error| AgentError::Process(e.to_string());
        writeln!(self.stdin, "{}\n{SENTINEL}", turn.prompt).map_err(io)?;
        self.stdin.flush().map_err(io)?;
        match self.lines.recv_timeout(self.timeout) {
            Ok(Ok(line)) => Ok(line.trim_end_matches('\r').to_string()),
            Ok(Err(e)) => Err(io(e)),
            Err(RecvTimeoutError::Timeout) => Err(AgentError::Timeout(self.timeout.as_secs())),
            Err(RecvTimeoutError::Disconnected) => Err(AgentError::Process("agent closed its output".into())),
        }
    }
}

impl Drop for ProcessAgent {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}
