use blackbox_core::{EnvSpec, Session, Stage};

#[derive(Debug, thiserror::Error)]
pub enum AgentError {
    #[error("agent process: {0}")]
    Process(String),
    #[error("chat endpoint: {0}")]
    Endpoint(String),
    #[error("agent timed out after {0} s")]
    Timeout(u64),
    #[error("{0}")]
    Unsupported(String),
}

/// What an agent sees before each reply.
pub struct AgentTurn<'a> {
    pub spec: &'static EnvSpec,
    pub stage: Stage,
    /// Index of the sample being explored or answered.
    pub sample: usize,
    /// Text addressed to the agent: the preamble first, then each feedback.
    pub prompt: &'a str,
    /// Scripted solvers that are allowed to know the rule may read it here.
    /// Drivers that talk to outside agents only forward `prompt`.
    pub session: &'a Session,
}

/// Produces exactly one reply per prompt.
pub trait Agent: Send {
    fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError>;
}
