//! HTTP/JSON service for playing the surface decomposition game against a
//! perfect-play engine.
//!
//! | method | path | body | response |
//! |--------|------|------|----------|
//! | POST | `/sessions` | `{"position": s, "engine_first": b}` | 201 session |
//! | GET | `/sessions/{id}` | | session |
//! | GET | `/sessions/{id}/moves` | | legal moves |
//! | POST | `/sessions/{id}/moves` | `{"index": i}` or `{"after": s}` | session |
//! | GET | `/analysis?position=s` | | value, winning move, component values |
//!
//! Errors are `{"error": message}` with status 400, 404, 409 or 422.

pub mod api;
pub mod error;
pub mod session;
pub mod store;
pub mod views;

pub use api::{router, serve};
pub use error::ServiceError;
pub use session::{HistoryEntry, MoveChoice, Mover, Session, Status};
pub use store::SessionStore;
pub use views::{Analysis, ComponentValue, MoveView};
