//! Game sessions between a human and the engine.

use serde::{Deserialize, Serialize};

use surfgame_core::{
    engine_move, grundy_position, parse_position, position_moves, Position, PositionMove,
};

use crate::error::ServiceError;
use crate::views::MoveView;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mover {
    Human,
    Engine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    InProgress,
    HumanWon,
    EngineWon,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub mover: Mover,
    #[serde(rename = "move")]
    pub mv: PositionMove,
}

/// How a client names its move: an index into [`Session::legal_moves`] or
/// the resulting position in notation.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum MoveChoice {
    Index { index: usize },
    After { after: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    pub id: String,
    pub initial: Position,
    pub engine_first: bool,
    pub position: Position,
    pub history: Vec<HistoryEntry>,
    pub to_move: Mover,
    pub status: Status,
    /// Grundy value of `position`.
    pub value: u64,
}

impl Session {
    /// Starts a game. With `engine_first` the engine makes its opening move
    /// before this returns.
    pub fn create(id: String, initial: &str, engine_first: bool) -> Result<Session, ServiceError> {
        let initial = parse_position(initial)
            .map_err(|e| ServiceError::BadRequest(format!("invalid position: {e}")))?;
        if initial.is_empty() {
            return Err(ServiceError::BadRequest(
                "starting position has no moves".into(),
            ));
        }
        let mut session = Session {
            id,
            value: grundy_position(&initial),
            position: initial.clone(),
            initial,
            engine_first,
            history: Vec::new(),
            to_move: if engine_first {
                Mover::Engine
            } else {
                Mover::Human
            },
            status: Status::InProgress,
        };
        if engine_first {
            session.engine_reply();
        }
        Ok(session)
    }

    pub fn legal_moves(&self) -> Vec<MoveView> {
        if self.status != Status::InProgress {
            return Vec::new();
        }
        position_moves(&self.position)
            .into_iter()
            .enumerate()
            .map(|(i, m)| MoveView::new(i, m))
            .collect()
    }

    /// Applies the human's move and the engine's reply. On error the
    /// session is left untouched.
    pub fn play(&mut self, choice: &MoveChoice) -> Result<(), ServiceError> {
        if self.status != Status::InProgress {
            return Err(ServiceError::Conflict("game is over".into()));
        }
        if self.to_move != Mover::Human {
            return Err(ServiceError::Conflict("it is not the human's turn".into()));
        }
        let mut moves = position_moves(&self.position);
        let chosen = match choice {
            MoveChoice::Index { index } => {
                if *index >= moves.len() {
                    return Err(ServiceError::Unprocessable(format!(
                        "move index {index} out of range (0..{})",
                        moves.len()
                    )));
                }
                moves.swap_remove(*index)
            }
            MoveChoice::After { after } => {
                let target = parse_position(after)
                    .map_err(|e| ServiceError::Unprocessable(format!("invalid position: {e}")))?;
                let i = moves
                    .iter()
                    .position(|m| m.after == target)
                    .ok_or_else(|| {
                        ServiceError::Unprocessable(format!(
                            "{target} is not reachable in one move"
                        ))
                    })?;
                moves.swap_remove(i)
            }
        };
        self.apply(Mover::Human, chosen);
        if self.status == Status::InProgress {
            self.engine_reply();
        }
        Ok(())
    }

    fn engine_reply(&mut self) {
        if let Some(mv) = engine_move(&self.position) {
            self.apply(Mover::Engine, mv);
        }
    }

    fn apply(&mut self, mover: Mover, mv: PositionMove) {
        self.position = mv.after.clone();
        self.history.push(HistoryEntry { mover, mv });
        self.value = grundy_position(&self.position);
        self.to_move = self.mover_at(self.history.len());
        if self.position.is_empty() {
            self.status = match mover {
                Mover::Human => Status::HumanWon,
                Mover::Engine => Status::EngineWon,
            };
        }
    }

    /// Who makes the move with the given zero-based index.
    fn mover_at(&self, ply: usize) -> Mover {
        if ply.is_multiple_of(2) == self.engine_first {
            Mover::Engine
        } else {
            Mover::Human
        }
    }

    /// Replays the history from the initial position and checks that every
    /// recorded field agrees with it.
    pub fn is_consistent(&self) -> bool {
        let mut p = self.initial.clone();
        for (ply, entry) in self.history.iter().enumerate() {
            if entry.mover != self.mover_at(ply) {
                return false;
            }
            if !position_moves(&p).contains(&entry.mv) {
                return false;
            }
            p = entry.mv.after.clone();
        }
        let status = match self.history.last() {
            Some(last) if p.is_empty() => match last.mover {
                Mover::Human => Status::HumanWon,
                Mover::Engine => Status::EngineWon,
            },
            _ => Status::InProgress,
        };
        p == self.position
            && status == self.status
            && self.to_move == self.mover_at(self.history.len())
            && self.value == grundy_position(&p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session(text: &str, engine_first: bool) -> Session {
        Session::create("t".into(), text, engine_first).unwrap()
    }

    #[test]
    fn create_human_first() {
        let s = session("n3", false);
        assert_eq!(s.position.to_string(), "n3");
        assert_eq!(s.to_move, Mover::Human);
        assert_eq!(s.status, Status::InProgress);
        assert!(s.is_consistent());
    }

    #[test]
    fn engine_wins_on_o1() {
        let s = session("o1", true);
        assert_eq!(s.status, Status::EngineWon);
        assert!(s.position.is_empty());
        assert!(s.legal_moves().is_empty());
        assert!(s.is_consistent());
    }

    #[test]
    fn engine_first_from_losing_position() {
        let s = session("n5", true);
        assert_eq!(s.history.len(), 1);
        assert_eq!(s.to_move, Mover::Human);
        assert!(s.value > 0);
    }

    #[test]
    fn bad_starts() {
        assert!(matches!(
            Session::create("t".into(), "x3", false),
            Err(ServiceError::BadRequest(_))
        ));
        assert!(matches!(
            Session::create("t".into(), "empty", false),
            Err(ServiceError::BadRequest(_))
        ));
    }

    #[test]
    fn legal_move_counts() {
        assert_eq!(session("n2", false).legal_moves().len(), 3);
        assert_eq!(session("o2", false).legal_moves().len(), 2);
    }

    #[test]
    fn human_last_move_wins() {
        let mut s = session("o1", false);
        s.play(&MoveChoice::Index { index: 0 }).unwrap();
        assert_eq!(s.status, Status::HumanWon);
        assert_eq!(s.history.len(), 1);
        assert!(s.is_consistent());
        let err = s.play(&MoveChoice::Index { index: 0 }).unwrap_err();
        assert!(matches!(err, ServiceError::Conflict(_)));
    }

    #[test]
    fn engine_reply_is_zero_valued() {
        for i in 0..6 {
            let mut s = session("n4", false);
            s.play(&MoveChoice::Index { index: i }).unwrap();
            assert_eq!(s.history.len(), 2);
            assert!(s.is_consistent());
            // (n2, n2) is the human's own winning move; no reply reaches 0
            if grundy_position(&s.history[0].mv.after) > 0 {
                assert_eq!(s.value, 0);
            } else {
                assert_eq!(s.history[0].mv.after.to_string(), "2*n2");
                assert!(s.value > 0);
            }
        }
    }

    #[test]
    fn illegal_moves_leave_state_unchanged() {
        let mut s = session("n4", false);
        let before = s.clone();
        for choice in [
            MoveChoice::Index { index: 6 },
            MoveChoice::After { after: "n1".into() },
            MoveChoice::After { after: "q".into() },
        ] {
            let err = s.play(&choice).unwrap_err();
            assert!(matches!(err, ServiceError::Unprocessable(_)));
            assert_eq!(s, before);
        }
    }

    #[test]
    fn move_by_resulting_position() {
        let mut s = session("n4", false);
        s.play(&MoveChoice::After {
            after: "n1 + n3".into(),
        })
        .unwrap();
        assert_eq!(s.history[0].mv.after.to_string(), "n1+n3");
        assert_eq!(s.history[1].mover, Mover::Engine);
    }

    #[test]
    fn tampered_history_is_inconsistent() {
        let mut s = session("n4", false);
        s.play(&MoveChoice::Index { index: 0 }).unwrap();
        let mut bad = s.clone();
        bad.history[0].mover = Mover::Engine;
        assert!(!bad.is_consistent());
        let mut bad = s.clone();
        bad.position = Position::empty();
        assert!(!bad.is_consistent());
    }
}
