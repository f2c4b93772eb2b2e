//! Perfect play for the surface decomposition game.
//!
//! Two players alternately decompose one surface of a collection of
//! compact surfaces; the last player able to move wins. Surfaces are handled
//! as classification data (orientability and genus), and positions are
//! multisets of surfaces.

pub mod analysis;
pub mod moves;
pub mod notation;
pub mod sg;
pub mod surface;

use thiserror::Error;

/// Genus of a compact surface.
pub type Genus = u64;

/// A Grundy value (nim-value).
pub type GameValue = u64;

pub use analysis::{
    engine_move, grundy_position, grundy_position_oracle, grundy_surface_closed, winning_move,
    Analyzer, GrundyReport, LengthBounds, Table1Row, TableEntry,
};
pub use moves::{position_moves, surface_moves, Move, MoveCase, PositionMove};
pub use notation::{format_position, parse_position, ParseError};
pub use sg::{mex, nim_sum, GrundySolver, ImpartialGame};
pub use surface::{Orientability, Position, Surface};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("reachable state count exceeded the cap of {cap}")]
    StateCapExceeded { cap: usize },
    #[error("game graph contains a cycle")]
    CyclicGame,
    #[error("genus {genus} exceeds the cap of {cap}")]
    GenusCapExceeded { genus: Genus, cap: Genus },
}
