//! HTTP routes.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::routing::get;
use axum::{Json, Router};
use serde::Deserialize;

use surfgame_core::parse_position;

use crate::error::ServiceError;
use crate::session::{MoveChoice, Session};
use crate::store::SessionStore;
use crate::views::{Analysis, MoveView};

type Shared = Arc<SessionStore>;

#[derive(Deserialize)]
struct CreateRequest {
    position: String,
    #[serde(default)]
    engine_first: bool,
}

#[derive(Deserialize)]
struct AnalysisQuery {
    position: String,
}

fn bad_body(e: JsonRejection) -> ServiceError {
    ServiceError::BadRequest(e.body_text())
}

async fn create_session(
    State(store): State<Shared>,
    body: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<Session>), ServiceError> {
    let Json(req) = body.map_err(bad_body)?;
    let session = store.create(&req.position, req.engine_first)?;
    Ok((StatusCode::CREATED, Json(session)))
}

async fn get_session(
    State(store): State<Shared>,
    Path(id): Path<String>,
) -> Result<Json<Session>, ServiceError> {
    store.get(&id).map(Json)
}

async fn list_moves(
    State(store): State<Shared>,
    Path(id): Path<String>,
) -> Result<Json<Vec<MoveView>>, ServiceError> {
    store.legal_moves(&id).map(Json)
}

async fn play_move(
    State(store): State<Shared>,
    Path(id): Path<String>,
    body: Result<Json<MoveChoice>, JsonRejection>,
) -> Result<Json<Session>, ServiceError> {
    // an unknown id is reported before a malformed body
    store.get(&id)?;
    let Json(choice) = body.map_err(bad_body)?;
    store.play(&id, &choice).map(Json)
}

async fn analysis(
    query: Result<Query<AnalysisQuery>, QueryRejection>,
) -> Result<Json<Analysis>, ServiceError> {
    let Query(q) = query.map_err(|e| ServiceError::BadRequest(e.body_text()))?;
    let position = parse_position(&q.position)
        .map_err(|e| ServiceError::BadRequest(format!("invalid position: {e}")))?;
    Ok(Json(Analysis::of(position)))
}

pub fn router(store: Shared) -> Router {
    Router::new()
        .route("/sessions", axum::routing::post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", get(list_moves).post(play_move))
        .route("/analysis", get(analysis))
        .with_state(store)
}

/// Serves the API on `addr` until the process is stopped.
pub async fn serve(addr: SocketAddr, store: Shared) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(%addr, "listening");
    axum::serve(listener, router(store)).await
}
