//! Agents behind a chat-completion HTTP endpoint. The request carries the
//! whole conversation as a `messages` array; the reply text is read from
//! the common response shapes.

use std::time::Duration;

use serde_json::{json, Value};

use super::agent::{Agent, AgentError, AgentTurn};

pub const RETRIES: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ChatConfig {
    /// Either the full completion URL or a base that `/chat/completions`
    /// is appended to.
    pub base_url: String,
    pub model: String,
    /// Name of the environment variable holding the API key, if any.
    pub key_env: Option<String>,
}

impl ChatConfig {
    pub fn url(&self) -> String {
        let base = self.base_url.trim_end_matches('/');
        if base.ends_with("/chat/completions") {
            base.to_string()
        } else {
            format!("{base}/chat/completions")
        }
    }
}

pub struct ChatAgent {
    config: ChatConfig,
    key: Option<String>,
    http: ureq::Agent,
    messages: Vec<Value>,
}

impl ChatAgent {
    pub fn new(config: ChatConfig, timeout: Duration) -> Result<Self, AgentError> {
        let key = match &config.key_env {
            Some(var) => Some(
                std::env::var(var).map_err(|_| AgentError::Endpoint(format!("environment variable {var} is not set")))?,
            ),
            None => None,
        };
        let http = ureq::Agent::config_builder().timeout_global(Some(timeout)).build().into();
        Ok(ChatAgent { config, key, http, messages: Vec::new() })
    }

    fn complete(&self) -> Result<String, AgentError> {
        let body = json!({ "model": self.config.model, "messages": self.messages });
        let mut last = String::new();
        for _ in 0..RETRIES {
            let mut req = self.http.post(self.config.url());
            if let Some(k) = &self.key {
                req = req.header("Authorization", &format!("Bearer {k}"));
            }
            match req.send_json(&body) {
                Ok(mut resp) => {
                    let v: Value = resp.body_mut().read_json().map_err(|e| AgentError::Endpoint(e.to_string()))?;
                    return reply_text(&v)
                        .ok_or_else(|| AgentError::Endpoint(format!("no reply text in response: {v}")));
                }
                Err(e) => last = e.to_string(),
            }
        }
        Err(AgentError::Endpoint(last))
    }
}

/// Reads `choices[0].message.content`, `message.content` or `content`.
pub fn reply_text(v: &Value) -> Option<String> {
    let candidates = [
        v.pointer("/choices/0/message/content"),
        v.pointer("/message/content"),
        v.pointer("/content"),
        v.pointer("/choices/0/text"),
    ];
    candidates.into_iter().flatten().find_map(|c| c.as_str()).map(|s| s.trim().to_string())
}

impl Agent for ChatAgent {
    fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
        self.messages.push(json!({ "role": "user", "content": turn.prompt }));
        let text = self.complete()?;
        self.messages.push(json!({ "role": "assistant", "content": text }));
        Ok(text)
    }
}
