//! HTTP facade for interactive editors.
//!
//! | route                 | method | body                         |
//! |-----------------------|--------|------------------------------|
//! | `/api/subdivide`      | POST   | [`SubdivideRequest`] → report |
//! | `/api/health`         | GET    | `{status, version}`          |
//! | `/api/demo`           | GET    | the demo input document      |
//! | `/`, `/index.html`    | GET    | editor page                  |

use std::net::SocketAddr;
use std::path::PathBuf;

use axum::body::Bytes;
use axum::http::{header, HeaderValue, Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::services::ServeDir;

use crate::error::{RunError, SubdivisionError, ValidationError};
use crate::fit::FitOptions;
use crate::io::{run, InputDocument, InputDocumentJson, DEMO_INPUT, VERSION};
use crate::quadrature::QuadratureConfig;
use crate::subdivision::{FourPointOuter, SchemeKind, SchemeSpec};

/// Largest accepted `levels`.
pub const MAX_REQUEST_LEVELS: usize = 10;
/// Largest accepted input size.
pub const MAX_REQUEST_COUPLES: usize = 512;

const INDEX_HTML: &str = include_str!("../static/index.html");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdivideRequest {
    pub input: InputDocumentJson,
    pub scheme: SchemeKind,
    #[serde(default = "default_levels")]
    pub levels: usize,
    #[serde(default)]
    pub newton_steps: usize,
    #[serde(default = "default_true")]
    pub want_curvature: bool,
    #[serde(default)]
    pub quad: QuadratureConfig,
    #[serde(default)]
    pub outer: FourPointOuter,
}

fn default_levels() -> usize {
    5
}

fn default_true() -> bool {
    true
}

/// Error body: `{"code": ..., "message": ..., "index": ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl ToString) -> Self {
        ApiError {
            status: status.as_u16(),
            code: code.to_string(),
            message: message.to_string(),
            index: None,
        }
    }

    fn at(mut self, index: Option<usize>) -> Self {
        self.index = index;
        self
    }
}

impl From<ValidationError> for ApiError {
    fn from(e: ValidationError) -> Self {
        // coincident points make a secant degenerate: a fit failure, not a
        // malformed document
        let status = match e {
            ValidationError::DuplicatePoints { .. } => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError::new(status, e.code(), &e).at(e.index())
    }
}

impl From<RunError> for ApiError {
    fn from(e: RunError) -> Self {
        match &e {
            RunError::Subdivision(SubdivisionError::Config(_)) => {
                ApiError::new(StatusCode::BAD_REQUEST, "invalid_scheme", &e)
            }
            RunError::Subdivision(SubdivisionError::ResourceLimit { .. }) => {
                ApiError::new(StatusCode::PAYLOAD_TOO_LARGE, "too_large", &e)
            }
            RunError::Subdivision(s) => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "fit_failed", &e).at(s.index())
            }
            RunError::Analysis(_) => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "curvature_failed", &e)
            }
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::BAD_REQUEST);
        (status, Json(self)).into_response()
    }
}

/// Validate and execute a request. Returns the serialized report.
pub fn handle_subdivide(body: &[u8]) -> Result<Vec<u8>, ApiError> {
    let req: SubdivideRequest = serde_json::from_slice(body)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "parse_error", e))?;
    if req.levels > MAX_REQUEST_LEVELS {
        return Err(ApiError::new(
            StatusCode::BAD_REQUEST,
            "levels_out_of_range",
            format!(
                "levels must lie in 0..={MAX_REQUEST_LEVELS}, got {}",
                req.levels
            ),
        ));
    }
    if req.input.couples.len() > MAX_REQUEST_COUPLES {
        return Err(ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            "too_many_couples",
            format!(
                "at most {MAX_REQUEST_COUPLES} couples are accepted, got {}",
                req.input.couples.len()
            ),
        ));
    }
    let fit = FitOptions::new(req.newton_steps, req.quad)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "invalid_scheme", e))?;
    let scheme = SchemeSpec {
        kind: req.scheme,
        fit,
        outer: req.outer,
    };
    scheme
        .validate()
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "invalid_scheme", e))?;
    let doc = InputDocument::try_from(req.input)?;
    let report = run(&doc.sequence, &scheme, req.levels, req.want_curvature)?;
    Ok(serde_json::to_vec(&report).expect("report serializes"))
}

async fn subdivide_route(body: Bytes) -> Response {
    let result = tokio::task::spawn_blocking(move || handle_subdivide(&body)).await;
    match result {
        Ok(Ok(json)) => ([(header::CONTENT_TYPE, "application/json")], json).into_response(),
        Ok(Err(e)) => e.into_response(),
        Err(e) => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e).into_response(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

async fn health() -> Json<Health> {
    Json(Health {
        status: "ok".to_string(),
        version: VERSION.to_string(),
    })
}

async fn demo() -> impl IntoResponse {
    ([(header::CONTENT_TYPE, "application/json")], DEMO_INPUT)
}

async fn index() -> impl IntoResponse {
    (
        [(header::CONTENT_TYPE, "text/html; charset=utf-8")],
        INDEX_HTML,
    )
}

async fn not_found(uri: Uri) -> ApiError {
    ApiError::new(
        StatusCode::NOT_FOUND,
        "not_found",
        format!("no route for {}", uri.path()),
    )
}

fn is_local_origin(origin: &HeaderValue) -> bool {
    let Ok(origin) = origin.to_str() else {
        return false;
    };
    let Some(rest) = origin
        .strip_prefix("http://")
        .or_else(|| origin.strip_prefix("https://"))
    else {
        return false;
    };
    let host = match rest.rsplit_once(':') {
        Some((host, port)) if port.chars().all(|c| c.is_ascii_digit()) => host,
        _ => rest,
    };
    matches!(host, "localhost" | "127.0.0.1" | "[::1]")
}

#[derive(Clone, Debug, Default)]
pub struct ServiceConfig {
    /// Serve the editor bundle from this directory instead of the built-in
    /// page.
    pub static_dir: Option<PathBuf>,
}

/// Build the application router.
pub fn router(config: ServiceConfig) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(AllowOrigin::predicate(|origin, _| is_local_origin(origin)))
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    let api = Router::new()
        .route("/api/subdivide", post(subdivide_route))
        .route("/api/health", get(health))
        .route("/api/demo", get(demo));
    let app = match config.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api
            .route("/", get(index))
            .route("/index.html", get(index))
            .fallback(not_found),
    };
    app.layer(cors)
}

/// Serve until interrupted.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
