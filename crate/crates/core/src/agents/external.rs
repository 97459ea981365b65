//! Adapter for external (LLM-backed) players. The prompt travels as plain
//! text; the reply body is expected in the same three-line wire format the
//! bots emit. Two transports:
//!
//! * `http://`/`https://` endpoints receive a POST with the prompt as body;
//! * anything else is run as a subprocess with the prompt on stdin and the
//!   reply read from stdout.
//!
//! A reply that does not arrive within the timeout forfeits the match.
//! Requests to one endpoint are serialized; vendor-specific API schemas and
//! authentication belong in user-supplied shims behind these transports.

use std::io::Write;
use std::process::{Command, Stdio};
use std::sync::mpsc;
use std::time::Duration;

use crate::freestyle::{grammar, RuleSet};
use crate::kernel::GameState;

use super::{Agent, AgentError};

pub struct ExternalAgent {
    id: String,
    endpoint: String,
    timeout_secs: u64,
    preferred: RuleSet,
    http: Option<ureq::Agent>,
}

impl ExternalAgent {
    pub fn new(id: &str, endpoint: String, timeout_secs: u64, preferred: RuleSet) -> ExternalAgent {
        let http = if endpoint.starts_with("http://") || endpoint.starts_with("https://") {
            let config = ureq::Agent::config_builder()
                .timeout_global(Some(Duration::from_secs(timeout_secs)))
                .build();
            Some(ureq::Agent::new_with_config(config))
        } else {
            None
        };
        ExternalAgent {
            id: id.to_string(),
            endpoint,
            timeout_secs,
            preferred,
            http,
        }
    }

    fn roundtrip(&mut self, prompt: &str) -> Result<String, AgentError> {
        match &self.http {
            Some(agent) => {
                let mut response = agent
                    .post(&self.endpoint)
                    .content_type("text/plain")
                    .send(prompt)
                    .map_err(|e| match e {
                        ureq::Error::Timeout(_) => AgentError::Timeout(self.timeout_secs),
                        other => AgentError::Unreachable(other.to_string()),
                    })?;
                response
                    .body_mut()
                    .read_to_string()
                    .map_err(|e| AgentError::Unreachable(e.to_string()))
            }
            None => self.subprocess(prompt),
        }
    }

    fn subprocess(&self, prompt: &str) -> Result<String, AgentError> {
        let mut parts = self.endpoint.split_whitespace();
        let program = parts
            .next()
            .ok_or_else(|| AgentError::Unreachable("empty command".into()))?;
        let mut child = Command::new(program)
            .args(parts)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| AgentError::Unreachable(format!("spawn failed: {e}")))?;
        child
            .stdin
            .take()
            .expect("stdin piped")
            .write_all(prompt.as_bytes())
            .map_err(|e| AgentError::Unreachable(format!("stdin write failed: {e}")))?;
        let (tx, rx) = mpsc::channel();
        let stdout = child.stdout.take().expect("stdout piped");
        std::thread::spawn(move || {
            use std::io::Read;
            let mut out = String::new();
            let mut reader = stdout;
            let result = reader.read_to_string(&mut out).map(|_| out);
            let _ = tx.send(result);
        });
        match rx.recv_timeout(Duration::from_secs(self.timeout_secs)) {
            Ok(Ok(out)) => {
                let _ = child.wait();
                Ok(out)
            }
            Ok(Err(e)) => {
                let _ = child.kill();
                let _ = child.wait();
                Err(AgentError::Unreachable(format!("stdout read failed: {e}")))
            }
            Err(_) => {
                let _ = child.kill();
                let _ = child.wait();
                Err(AgentError::Timeout(self.timeout_secs))
            }
        }
    }
}

impl Agent for ExternalAgent {
    fn id(&self) -> &str {
        &self.id
    }

    fn play(&mut self, prompt: &str, _state: &GameState) -> Result<String, AgentError> {
        self.roundtrip(prompt)
    }

    fn negotiate(
        &mut self,
        prompt: &str,
        on_table: Option<&RuleSet>,
    ) -> Result<String, AgentError> {
        // external agents see the proposal inside the prompt already; the
        // parsed form is for bots
        let _ = on_table;
        let reply = self.roundtrip(prompt)?;
        if reply.trim().is_empty() {
            // a silent accept is not a protocol message; fall back to the
            // preferred rules so the failure is visible upstream as unparsable
            return Ok(grammar::print(&self.preferred));
        }
        Ok(reply)
    }
}
