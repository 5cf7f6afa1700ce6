use std::time::Duration;

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::{
    BackendError, GenerateRequest, GenerateResponse, PositionScorer, ScoreRequest, ScoreResponse,
    StatementGenerator,
};

/// Client for a backend serving `POST /score` and `POST /generate`.
///
/// A transport failure or 5xx reply is retried once; after that the call
/// fails with [`BackendError::Unavailable`]. 4xx replies and malformed
/// bodies are protocol errors and are not retried.
#[derive(Debug, Clone)]
pub struct HttpBackend {
    base_url: String,
    agent: ureq::Agent,
}

impl HttpBackend {
    pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

    pub fn new(base_url: impl Into<String>) -> Self {
        Self::with_timeout(base_url, Self::DEFAULT_TIMEOUT)
    }

    pub fn with_timeout(base_url: impl Into<String>, timeout: Duration) -> Self {
        let base_url = base_url.into().trim_end_matches('/').to_string();
        let agent = ureq::AgentBuilder::new().timeout(timeout).build();
        HttpBackend { base_url, agent }
    }

    pub fn base_url(&self) -> &str {
        &self.base_url
    }

    fn post<Req: Serialize, Resp: DeserializeOwned>(
        &self,
        route: &str,
        body: &Req,
    ) -> Result<Resp, BackendError> {
        let url = format!("{}{route}", self.base_url);
        let payload = serde_json::to_string(body)
            .map_err(|e| BackendError::Protocol(format!("encoding request: {e}")))?;
        let mut last_err = String::new();
        for _attempt in 0..2 {
            let result = self
                .agent
                .post(&url)
                .set("Content-Type", "application/json; charset=utf-8")
                .send_string(&payload);
            match result {
                Ok(resp) => {
                    let text = resp.into_string().map_err(|e| {
                        BackendError::Unavailable(format!("{url}: reading body: {e}"))
                    })?;
                    return serde_json::from_str(&text)
                        .map_err(|e| BackendError::Protocol(format!("{url}: {e}")));
                }
                Err(ureq::Error::Status(code, resp)) if code < 500 => {
                    let detail = resp.into_string().unwrap_or_default();
                    return Err(BackendError::Protocol(format!(
                        "{url}: HTTP {code}: {detail}"
                    )));
                }
                Err(ureq::Error::Status(code, _)) => last_err = format!("{url}: HTTP {code}"),
                Err(e) => last_err = format!("{url}: {e}"),
            }
        }
        Err(BackendError::Unavailable(last_err))
    }
}

impl PositionScorer for HttpBackend {
    fn score(&self, req: &ScoreRequest) -> Result<ScoreResponse, BackendError> {
        req.validate()?;
        let resp: ScoreResponse = self.post("/score", req)?;
        resp.validate_for(req)?;
        Ok(resp)
    }
}

impl StatementGenerator for HttpBackend {
    fn generate(&self, req: &GenerateRequest) -> Result<GenerateResponse, BackendError> {
        req.validate()?;
        let resp: GenerateResponse = self.post("/generate", req)?;
        resp.validate_for(req)?;
        Ok(resp)
    }
}
