//! HTTP chat-completion transport and transport selection.

use std::time::Duration;
use vsd_core::{ChatRequest, ChatTransport, DiversifyConfig, StubTransport, TransportError};

/// POSTs chat requests to an OpenAI-style completions endpoint and returns
/// the first choice's message content.
pub struct HttpTransport {
    agent: ureq::Agent,
    url: String,
    bearer: Option<String>,
}

impl HttpTransport {
    /// The API key is read from the environment variable named in the config;
    /// when the variable is unset the request is sent without authorization,
    /// which keyless local endpoints accept.
    pub fn from_config(cfg: &DiversifyConfig) -> Self {
        let agent = ureq::AgentBuilder::new()
            .timeout(Duration::from_secs(cfg.timeout_secs))
            .build();
        HttpTransport {
            agent,
            url: cfg.endpoint_url.clone(),
            bearer: std::env::var(&cfg.api_key_env_var).ok(),
        }
    }
}

impl ChatTransport for HttpTransport {
    fn complete(&self, request: &ChatRequest) -> Result<String, TransportError> {
        let mut req = self.agent.post(&self.url).set("Content-Type", "application/json");
        if let Some(key) = &self.bearer {
            req = req.set("Authorization", &format!("Bearer {key}"));
        }
        let body = serde_json::to_value(request)
            .map_err(|e| TransportError::BadResponse(format!("request serialization: {e}")))?;
        let response = match req.send_json(body) {
            Ok(r) => r,
            Err(ureq::Error::Status(status, resp)) => {
                let detail = resp.into_string().unwrap_or_default();
                return Err(TransportError::Status {
                    status,
                    detail: detail.chars().take(200).collect(),
                });
            }
            Err(ureq::Error::Transport(t)) => return Err(TransportError::Network(t.to_string())),
        };
        let json: serde_json::Value = response
            .into_json()
            .map_err(|e| TransportError::BadResponse(e.to_string()))?;
        json["choices"][0]["message"]["content"]
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| {
                TransportError::BadResponse("no choices[0].message.content in response".into())
            })
    }
}

/// Picks the transport for an endpoint: `stub:` selects the offline rewriter.
pub fn transport_for(cfg: &DiversifyConfig) -> Box<dyn ChatTransport> {
    if cfg.endpoint_url.starts_with("stub:") {
        Box::new(StubTransport)
    } else {
        Box::new(HttpTransport::from_config(cfg))
    }
}
