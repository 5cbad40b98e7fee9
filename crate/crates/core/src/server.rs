//! HTTP front end: `GET /healthz` and `POST /api/solve`.
//!
//! Each request is solved on the blocking pool under its own [`Budget`]; when
//! the wall-clock timeout fires the budget is cancelled so the worker stops at
//! its next check, and the client gets a 504.

use std::net::SocketAddr;
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::api::{payload_json, solve, SolveRequest};
use crate::budget::Budget;
use crate::error::Error;
use crate::{DEFAULT_MAX_ARGS, HARD_MAX_ARGS};

#[derive(Debug, Clone, Copy)]
pub struct ServerConfig {
    pub max_args: usize,
    pub timeout: Duration,
}

impl Default for ServerConfig {
    fn default() -> Self {
        Self {
            max_args: DEFAULT_MAX_ARGS,
            timeout: Duration::from_secs(30),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    payload: &'a RawValue,
    timing_ms: u128,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    status: &'a str,
    error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    stage: Option<&'a str>,
    timing_ms: u128,
}

pub fn router(config: ServerConfig) -> Router {
    let config = ServerConfig {
        max_args: config.max_args.min(HARD_MAX_ARGS),
        ..config
    };
    Router::new()
        .route("/healthz", get(|| async { "ok" }))
        .route("/api/solve", post(solve_handler))
        .with_state(config)
}

/// HTTP status for a solve error.
pub fn status_for(error: &Error) -> StatusCode {
    match error {
        Error::TooManyArguments { .. } => StatusCode::PAYLOAD_TOO_LARGE,
        Error::BudgetExceeded { .. } => StatusCode::GATEWAY_TIMEOUT,
        _ => StatusCode::BAD_REQUEST,
    }
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn error_response(status: StatusCode, error: String, stage: Option<&str>, started: Instant) -> Response {
    let label = match status {
        StatusCode::GATEWAY_TIMEOUT => "partial",
        _ => "error",
    };
    let body = ErrorBody {
        status: label,
        error,
        stage,
        timing_ms: started.elapsed().as_millis(),
    };
    json_response(status, serde_json::to_string(&body).expect("plain fields"))
}

async fn solve_handler(State(config): State<ServerConfig>, body: Bytes) -> Response {
    let started = Instant::now();
    let request: SolveRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => {
            return error_response(
                StatusCode::BAD_REQUEST,
                format!("malformed request: {e}"),
                None,
                started,
            )
        }
    };
    let budget = Budget::until(started + config.timeout);
    let worker_budget = budget.clone();
    let job = tokio::task::spawn_blocking(move || solve(&request, config.max_args, &worker_budget));
    match tokio::time::timeout(config.timeout, job).await {
        Ok(Ok(Ok(payload))) => {
            let payload = payload_json(&payload);
            let raw = RawValue::from_string(payload).expect("payload is valid JSON");
            let envelope = Envelope {
                payload: &raw,
                timing_ms: started.elapsed().as_millis(),
            };
            json_response(
                StatusCode::OK,
                serde_json::to_string(&envelope).expect("raw JSON"),
            )
        }
        Ok(Ok(Err(e))) => {
            let stage = match &e {
                Error::BudgetExceeded { stage } => Some(*stage),
                _ => None,
            };
            error_response(status_for(&e), e.to_string(), stage, started)
        }
        Ok(Err(join)) => error_response(
            StatusCode::INTERNAL_SERVER_ERROR,
            format!("solver failed: {join}"),
            None,
            started,
        ),
        Err(_) => {
            budget.cancel();
            error_response(
                StatusCode::GATEWAY_TIMEOUT,
                format!("timed out after {} ms", config.timeout.as_millis()),
                None,
                started,
            )
        }
    }
}

/// Serves until ctrl-c.
pub async fn serve(addr: SocketAddr, config: ServerConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
