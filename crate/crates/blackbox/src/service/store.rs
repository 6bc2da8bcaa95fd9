//! In-memory session store with optional JSON snapshot persistence.
//!
//! Snapshots keep each session's inputs; loading replays them, which
//! reproduces the session exactly because sessions are deterministic.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use blackbox_core::{Session, TurnBudget};
use serde::{Deserialize, Serialize};

/// Seconds since the Unix epoch.
#[derive(Clone)]
pub struct Clock(Arc<dyn Fn() -> u64 + Send + Sync>);

impl Clock {
    pub fn system() -> Self {
        Clock(Arc::new(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())))
    }

    pub fn new(f: impl Fn() -> u64 + Send + Sync + 'static) -> Self {
        Clock(Arc::new(f))
    }

    pub fn now(&self) -> u64 {
        (self.0)()
    }
}

#[derive(Clone)]
pub struct ServiceConfig {
    pub ttl: Duration,
    pub persist: Option<PathBuf>,
    pub clock: Clock,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig { ttl: Duration::from_secs(24 * 3600), persist: None, clock: Clock::system() }
    }
}

pub struct Entry {
    pub session: Session,
    pub token: String,
    pub created_at: u64,
    pub expires_at: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct Persisted {
    id: String,
    owner_token: String,
    created_at: u64,
    expires_at: u64,
    env_id: String,
    seed: u64,
    budget: TurnBudget,
    inputs: Vec<String>,
}

pub type Handle = Arc<Mutex<Entry>>;

pub struct Store {
    sessions: RwLock<HashMap<String, Handle>>,
    config: ServiceConfig,
    write_lock: Mutex<()>,
}

impl Store {
    pub fn new(config: ServiceConfig) -> Self {
        Store { sessions: RwLock::new(HashMap::new()), config, write_lock: Mutex::new(()) }
    }

    /// Opens the store, restoring unexpired sessions from the snapshot.
    pub fn open(config: ServiceConfig) -> anyhow::Result<Self> {
        let store = Store::new(config);
        let Some(path) = &store.config.persist else { return Ok(store) };
        if !path.exists() {
            return Ok(store);
        }
        let saved: Vec<Persisted> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let now = store.now();
        let mut map = store.sessions.write().unwrap();
        for p in saved.into_iter().filter(|p| p.expires_at > now) {
            let session = Session::replay(&p.env_id, p.budget, p.seed, p.inputs.iter().map(String::as_str))?;
            let entry = Entry { session, token: p.owner_token, created_at: p.created_at, expires_at: p.expires_at };
            map.insert(p.id, Arc::new(Mutex::new(entry)));
        }
        drop(map);
        Ok(store)
    }

    pub fn now(&self) -> u64 {
        self.config.clock.now()
    }

    /// Adds a session; returns its id and owner token. Sessions expired for
    /// longer than the lifetime are dropped at the same time.
    pub fn insert(&self, session: Session) -> (String, String, u64) {
        let now = self.now();
        let ttl = self.config.ttl.as_secs();
        let id = uuid::Uuid::new_v4().simple().to_string();
        let token = uuid::Uuid::new_v4().simple().to_string();
        let expires_at = now.saturating_add(ttl);
        let entry = Entry { session, token: token.clone(), created_at: now, expires_at };
        let mut map = self.sessions.write().unwrap();
        map.retain(|_, e| e.lock().map_or(true, |e| e.expires_at.saturating_add(ttl) > now));
        map.insert(id.clone(), Arc::new(Mutex::new(entry)));
        (id, token, expires_at)
    }

    pub fn get(&self, id: &str) -> Option<Handle> {
        self.sessions.read().unwrap().get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes the snapshot if persistence is configured. Must be called
    /// without holding any session lock.
    pub fn persist(&self) -> std::io::Result<()> {
        let Some(path) = &self.config.persist else { return Ok(()) };
        let _guard = self.write_lock.lock().unwrap();
        let handles: Vec<(String, Handle)> =
            self.sessions.read().unwrap().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let mut saved: Vec<Persisted> = handles
            .into_iter()
            .map(|(id, h)| {
                let e = h.lock().unwrap();
                let t = e.session.transcript();
                Persisted {
                    id,
                    owner_token: e.token.clone(),
                    created_at: e.created_at,
                    expires_at: e.expires_at,
                    inputs: t.inputs().map(String::from).collect(),
                    env_id: t.env_id,
                    seed: t.seed,
                    budget: t.budget,
                }
            })
            .collect();
        saved.sort_by(|a, b| a.id.cmp(&b.id));
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec_pretty(&saved)?)?;
        std::fs::rename(tmp, path)
    }
}
