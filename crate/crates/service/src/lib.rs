//! JSON-over-HTTP endpoint for evaluating control points and serving tiling
//! geometry.
//!
//! * `GET /health`: build info, modulus, cache hash, protocol version.
//! * `POST /eval`: `{"point": [x, y], "wantTrace": bool}` to a pentagon frame.
//! * `GET /tiling?radius=r`: faces, edges and vertices of the tiling.
//! * `GET /path?preset=name&frames=n`: server-sent events, one frame per event.
//!
//! All handlers read an immutable field shared behind an `Arc`.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::sse::{Event, Sse};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use futures::stream::{self, Stream};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use tower_http::cors::CorsLayer;

use pentamap_core::conformal::HarmonicField;
use pentamap_core::hyperbolic::DiskPoint;
use pentamap_core::linkage::{evaluate, Frame, PathPreset, RecipeTrace};
use pentamap_core::render::{tiling_json, TilingJson};
use pentamap_core::tiling::{generate_tiling, TilingBound};

pub const PROTOCOL_VERSION: u32 = 1;

/// Largest tiling radius served.
pub const MAX_TILING_RADIUS: f64 = 0.999;

/// Largest frame count of a streamed path.
pub const MAX_PATH_FRAMES: usize = 2000;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("malformed request: {0}")]
    BadRequest(String),
    #[error("{0}")]
    Invalid(String),
    #[error("evaluation failed: {0}")]
    Internal(String),
    #[error("cannot bind {addr}: {source}")]
    Bind { addr: SocketAddr, source: std::io::Error },
    #[error("server error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Serialize)]
struct ErrorBody {
    error: String,
    #[serde(rename = "protocolVersion")]
    protocol_version: u32,
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match self {
            ServiceError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ServiceError::Invalid(_) => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(ErrorBody { error: self.to_string(), protocol_version: PROTOCOL_VERSION })).into_response()
    }
}

#[derive(Clone)]
pub struct AppState {
    field: Arc<HarmonicField>,
}

impl AppState {
    pub fn new(field: HarmonicField) -> AppState {
        AppState { field: Arc::new(field) }
    }

    pub fn field(&self) -> &HarmonicField {
        &self.field
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct EvalRequest {
    pub point: [f64; 2],
    #[serde(default)]
    pub want_trace: bool,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct TraceInfo {
    pub psi: [f64; 5],
    pub juzu: [[f64; 2]; 5],
    pub mobius_param: [f64; 2],
    pub springborn_iterations: usize,
    pub springborn_residual: f64,
    pub fold_reflections: [u32; 5],
}

impl From<&RecipeTrace> for TraceInfo {
    fn from(t: &RecipeTrace) -> TraceInfo {
        TraceInfo {
            psi: t.psi,
            juzu: t.juzu.points().map(|p| [p.u().re, p.u().im]),
            mobius_param: [t.mobius_param.re, t.mobius_param.im],
            springborn_iterations: t.springborn_iterations,
            springborn_residual: t.springborn_residual,
            fold_reflections: t.fold_reflections,
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct EvalResponse {
    pub protocol_version: u32,
    #[serde(flatten)]
    pub frame: Frame,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceInfo>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Health {
    pub status: String,
    pub protocol_version: u32,
    pub version: String,
    pub modulus: f64,
    pub mesh_size: f64,
    pub resolution: usize,
    pub cache_hash: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TilingResponse {
    pub protocol_version: u32,
    pub radius: f64,
    #[serde(flatten)]
    pub tiling: TilingJson,
}

#[derive(Debug, Deserialize)]
struct TilingQuery {
    radius: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct PathQuery {
    preset: String,
    frames: Option<usize>,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/eval", post(eval))
        .route("/tiling", get(tiling))
        .route("/path", get(path))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

/// Binds `addr` and serves until the process ends.
pub async fn serve(addr: SocketAddr, state: AppState) -> Result<(), ServiceError> {
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|source| ServiceError::Bind { addr, source })?;
    axum::serve(listener, router(state)).await?;
    Ok(())
}

async fn health(State(state): State<AppState>) -> Json<Health> {
    let s = state.field.summary();
    Json(Health {
        status: "ok".into(),
        protocol_version: PROTOCOL_VERSION,
        version: env!("CARGO_PKG_VERSION").into(),
        modulus: s.modulus,
        mesh_size: s.mesh_size,
        resolution: s.resolution,
        cache_hash: s.geometry_hash,
    })
}

/// Evaluates one request. Malformed JSON is a 400; a well-formed point outside
/// the disk is a 422.
pub fn handle_eval(field: &HarmonicField, body: &[u8]) -> Result<EvalResponse, ServiceError> {
    let req: EvalRequest = serde_json::from_slice(body).map_err(|e| ServiceError::BadRequest(e.to_string()))?;
    let [x, y] = req.point;
    let p = DiskPoint::from_xy(x, y)
        .map_err(|_| ServiceError::Invalid(format!("point [{x}, {y}] is not inside the open unit disk")))?;
    let t = evaluate(p, field).map_err(|e| ServiceError::Internal(e.to_string()))?;
    Ok(EvalResponse {
        protocol_version: PROTOCOL_VERSION,
        frame: Frame::from(&t),
        trace: req.want_trace.then(|| TraceInfo::from(&t)),
    })
}

async fn eval(State(state): State<AppState>, body: Bytes) -> Result<Json<EvalResponse>, ServiceError> {
    handle_eval(&state.field, &body).map(Json)
}

async fn tiling(Query(q): Query<TilingQuery>) -> Result<Json<TilingResponse>, ServiceError> {
    let radius = q.radius.unwrap_or(0.95);
    if !(radius > 0.0 && radius <= MAX_TILING_RADIUS) {
        return Err(ServiceError::Invalid(format!("radius must lie in (0, {MAX_TILING_RADIUS}], got {radius}")));
    }
    let tiling = tokio::task::spawn_blocking(move || generate_tiling(TilingBound::Radius(radius)).map(|t| tiling_json(&t)))
        .await
        .map_err(|e| ServiceError::Internal(e.to_string()))?
        .map_err(|e| ServiceError::Internal(e.to_string()))?;
    Ok(Json(TilingResponse { protocol_version: PROTOCOL_VERSION, radius, tiling }))
}

async fn path(
    State(state): State<AppState>,
    Query(q): Query<PathQuery>,
) -> Result<Sse<impl Stream<Item = Result<Event, std::convert::Infallible>>>, ServiceError> {
    let preset: PathPreset = q.preset.parse().map_err(|e: pentamap_core::linkage::paths::PathError| ServiceError::Invalid(e.to_string()))?;
    let frames = q.frames.unwrap_or(60);
    if !(1..=MAX_PATH_FRAMES).contains(&frames) {
        return Err(ServiceError::Invalid(format!("frames must lie in 1..={MAX_PATH_FRAMES}, got {frames}")));
    }
    let field = state.field.clone();
    let events = tokio::task::spawn_blocking(move || {
        preset
            .sample(frames)
            .into_iter()
            .map(|p| evaluate(p, &field).map(|t| Frame::from(&t)))
            .collect::<Result<Vec<_>, _>>()
    })
    .await
    .map_err(|e| ServiceError::Internal(e.to_string()))?
    .map_err(|e| ServiceError::Internal(e.to_string()))?;
    let stream = stream::iter(
        events
            .into_iter()
            .enumerate()
            .map(|(i, f)| Event::default().event("frame").id(i.to_string()).json_data(f).expect("frames serialize"))
            .chain(std::iter::once(Event::default().event("end").data(frames.to_string())))
            .map(Ok),
    );
    Ok(Sse::new(stream))
}
