//! JSON shapes that are not plain core types.

use serde::{Deserialize, Serialize};

use surfgame_core::{
    grundy_position, grundy_surface_closed, winning_move, Genus, MoveCase, Position, PositionMove,
    Surface,
};

/// A legal move as offered to clients, with the value of its result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveView {
    pub index: usize,
    pub component: Surface,
    pub case_labels: Vec<MoveCase>,
    pub split: Option<(Genus, Genus)>,
    pub results: Vec<Surface>,
    pub results_label: String,
    pub after: Position,
    pub after_value: u64,
}

impl MoveView {
    pub fn new(index: usize, m: PositionMove) -> Self {
        MoveView {
            index,
            component: m.component,
            case_labels: m.mv.case_labels().to_vec(),
            split: m.mv.split(),
            results: m.mv.results().to_vec(),
            results_label: m.mv.results_label(),
            after_value: grundy_position(&m.after),
            after: m.after,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentValue {
    pub surface: Surface,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub position: Position,
    pub grundy: u64,
    pub winning_move: Option<MoveView>,
    pub component_values: Vec<ComponentValue>,
}

impl Analysis {
    pub fn of(position: Position) -> Self {
        let winning = winning_move(&position).map(|m| {
            let index = surfgame_core::position_moves(&position)
                .iter()
                .position(|c| c.after == m.after)
                .expect("winning move is legal");
            MoveView::new(index, m)
        });
        Analysis {
            grundy: grundy_position(&position),
            component_values: position
                .components()
                .iter()
                .map(|&surface| ComponentValue {
                    surface,
                    value: grundy_surface_closed(surface),
                })
                .collect(),
            winning_move: winning,
            position,
        }
    }
}
