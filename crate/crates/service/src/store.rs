//! In-memory session registry with optional JSON-lines snapshots.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Arc, Mutex, RwLock};

use uuid::Uuid;

use crate::error::ServiceError;
use crate::session::{MoveChoice, Session};
use crate::views::MoveView;

/// Sessions keyed by id. Each session has its own lock, so operations on one
/// session are serialized while different sessions proceed independently.
#[derive(Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    snapshot: Option<Mutex<File>>,
}

impl SessionStore {
    pub fn in_memory() -> Self {
        SessionStore::default()
    }

    /// Store that appends every session change to `path` as one JSON line.
    /// Existing records are loaded first; the last record for an id wins,
    /// and records whose history does not replay are skipped.
    pub fn with_snapshots(path: &Path) -> io::Result<Self> {
        let mut sessions = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<Session>(&line) {
                    Ok(s) if s.is_consistent() => {
                        sessions.insert(s.id.clone(), Arc::new(Mutex::new(s)));
                    }
                    Ok(s) => tracing::warn!(id = %s.id, "skipping inconsistent snapshot record"),
                    Err(e) => tracing::warn!(error = %e, "skipping unreadable snapshot record"),
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(SessionStore {
            sessions: RwLock::new(sessions),
            snapshot: Some(Mutex::new(file)),
        })
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn persist(&self, session: &Session) -> Result<(), ServiceError> {
        let Some(file) = &self.snapshot else {
            return Ok(());
        };
        let mut line =
            serde_json::to_string(session).map_err(|e| ServiceError::Internal(e.to_string()))?;
        line.push('\n');
        let mut file = file.lock().unwrap();
        file.write_all(line.as_bytes())
            .and_then(|_| file.flush())
            .map_err(|e| ServiceError::Internal(format!("snapshot write failed: {e}")))
    }

    fn handle(&self, id: &str) -> Result<Arc<Mutex<Session>>, ServiceError> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::NotFound(id.to_string()))
    }

    pub fn create(&self, position: &str, engine_first: bool) -> Result<Session, ServiceError> {
        let id = Uuid::new_v4().simple().to_string();
        let session = Session::create(id.clone(), position, engine_first)?;
        self.persist(&session)?;
        self.sessions
            .write()
            .unwrap()
            .insert(id, Arc::new(Mutex::new(session.clone())));
        Ok(session)
    }

    pub fn get(&self, id: &str) -> Result<Session, ServiceError> {
        Ok(self.handle(id)?.lock().unwrap().clone())
    }

    pub fn legal_moves(&self, id: &str) -> Result<Vec<MoveView>, ServiceError> {
        Ok(self.handle(id)?.lock().unwrap().legal_moves())
    }

    /// Plays the human's move and the engine's reply. The stored session is
    /// only replaced once the whole exchange (and its snapshot) succeeded.
    pub fn play(&self, id: &str, choice: &MoveChoice) -> Result<Session, ServiceError> {
        let handle = self.handle(id)?;
        let mut current = handle.lock().unwrap();
        let mut next = current.clone();
        next.play(choice)?;
        self.persist(&next)?;
        *current = next.clone();
        Ok(next)
    }
}
