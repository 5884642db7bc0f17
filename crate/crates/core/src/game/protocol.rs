//! Line-delimited JSON requests against a set of game sessions.
//!
//! ```text
//! {"op":"new","complex":{"facets":[[1,2,3]]},"dim":1,"chain":[-1,1,-1]}
//! {"op":"move","session":"s1","face":[1,3],"kind":"lend"}
//! {"op":"hint"|"undo"|"state"|"close","session":"s1"}
//! ```
//!
//! Every response is a single JSON object; failures are `{"error": ...}`. A
//! request `id` is echoed back.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::bigjson;
use crate::chain_space::ChainSpace;
use crate::complex::complex_from_json;
use crate::error::{Error, Result};

use super::{hint_for, GameSession, MoveKind};

#[derive(Default)]
pub struct Engine {
    sessions: Mutex<BTreeMap<String, Arc<Mutex<GameSession>>>>,
    spaces: Mutex<HashMap<(String, i32), Arc<ChainSpace>>>,
    next_id: AtomicU64,
}

fn field<'a>(req: &'a Value, name: &str) -> Result<&'a Value> {
    req.get(name)
        .ok_or_else(|| Error::Protocol(format!("missing field {name:?}")))
}

fn str_field<'a>(req: &'a Value, name: &str) -> Result<&'a str> {
    field(req, name)?
        .as_str()
        .ok_or_else(|| Error::Protocol(format!("field {name:?} must be a string")))
}

fn face_field(req: &Value) -> Result<Vec<u32>> {
    field(req, "face")?
        .as_array()
        .ok_or_else(|| Error::Protocol("field \"face\" must be an array".into()))?
        .iter()
        .map(|v| {
            v.as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| Error::Protocol(format!("bad vertex {v}")))
        })
        .collect()
}

fn lock<T>(m: &Mutex<T>) -> std::sync::MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn session_count(&self) -> usize {
        lock(&self.sessions).len()
    }

    /// Parses one request line and renders the response line.
    pub fn handle_line(&self, line: &str) -> String {
        let resp = match serde_json::from_str::<Value>(line) {
            Ok(req) => self.handle(&req),
            Err(e) => json!({ "error": format!("malformed request: {e}") }),
        };
        resp.to_string()
    }

    pub fn handle(&self, req: &Value) -> Value {
        let mut resp = match self.dispatch(req) {
            Ok(v) => v,
            Err(e) => json!({ "error": e.to_string() }),
        };
        if let Some(id) = req.get("id") {
            resp["id"] = id.clone();
        }
        resp
    }

    fn session(&self, req: &Value) -> Result<Arc<Mutex<GameSession>>> {
        let id = str_field(req, "session")?;
        lock(&self.sessions)
            .get(id)
            .cloned()
            .ok_or_else(|| Error::Protocol(format!("unknown session {id:?}")))
    }

    fn dispatch(&self, req: &Value) -> Result<Value> {
        match str_field(req, "op")? {
            "new" => self.open(req),
            "move" => {
                let s = self.session(req)?;
                let face = face_field(req)?;
                let kind: MoveKind = str_field(req, "kind")?.parse()?;
                let mut g = lock(&s);
                g.apply_move(&face, kind)?;
                Ok(json!({ "status": g.status().to_json() }))
            }
            "undo" => {
                let s = self.session(req)?;
                let mut g = lock(&s);
                if !g.undo() {
                    return Err(Error::Protocol("nothing to undo".into()));
                }
                Ok(json!({ "status": g.status().to_json() }))
            }
            "state" => {
                let s = self.session(req)?;
                let g = lock(&s);
                Ok(json!({ "status": g.status().to_json(), "history": g.history_json() }))
            }
            "hint" => {
                // snapshot, then solve without holding the session lock
                let s = self.session(req)?;
                let (space, current, len) = {
                    let g = lock(&s);
                    (Arc::clone(g.space()), g.current().clone(), g.history().len())
                };
                Ok(hint_for(&space, &current, len)?.to_json())
            }
            "close" => {
                let id = str_field(req, "session")?;
                let s = lock(&self.sessions)
                    .remove(id)
                    .ok_or_else(|| Error::Protocol(format!("unknown session {id:?}")))?;
                let g = lock(&s);
                Ok(json!({ "status": g.status().to_json() }))
            }
            other => Err(Error::Protocol(format!("unknown op {other:?}"))),
        }
    }

    fn open(&self, req: &Value) -> Result<Value> {
        let doc = complex_from_json(field(req, "complex")?)?;
        let dim = match req.get("dim") {
            Some(d) => d
                .as_i64()
                .ok_or_else(|| Error::Protocol("field \"dim\" must be an integer".into()))?
                as i32,
            None => doc
                .chain
                .as_ref()
                .map(|c| c.dim)
                .ok_or_else(|| Error::Protocol("missing field \"dim\"".into()))?,
        };
        let key = (doc.complex.to_json().to_string(), dim);
        let space = {
            let mut spaces = lock(&self.spaces);
            match spaces.get(&key) {
                Some(s) => Arc::clone(s),
                None => {
                    let s = Arc::new(ChainSpace::new(Arc::new(doc.complex.clone()), dim)?);
                    spaces.insert(key, Arc::clone(&s));
                    s
                }
            }
        };
        let chain = match req.get("chain") {
            Some(c) => space.chain(bigjson::int_vec_from_json(c)?)?,
            None => doc
                .chain
                .clone()
                .ok_or_else(|| Error::Protocol("missing field \"chain\"".into()))?,
        };
        let session = GameSession::new(Arc::clone(&space), chain)?;
        let status = session.status().to_json();
        let id = format!("s{}", self.next_id.fetch_add(1, Ordering::Relaxed) + 1);
        lock(&self.sessions).insert(id.clone(), Arc::new(Mutex::new(session)));
        Ok(json!({ "session": id, "status": status, "faces": space.faces() }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_over_the_wire() {
        let e = Engine::new();
        let r = e.handle(&json!({"op":"new","complex":{"facets":[[1,2,3],[2,3,4]]},"dim":1,"chain":[-1,2,-3,2,-1],"id":7}));
        assert_eq!(r["session"], "s1");
        assert_eq!(r["id"], 7);
        assert_eq!(r["status"]["won"], false);
        let h = e.handle(&json!({"op":"hint","session":"s1"}));
        assert_eq!(h["script"], json!([{"face":[1,3],"kind":"lend"},{"face":[2,3],"kind":"borrow"}]));
        assert_eq!(h["history_len"], 0);
        e.handle(&json!({"op":"move","session":"s1","face":[1,3],"kind":"lend"}));
        let r = e.handle(&json!({"op":"move","session":"s1","face":[2,3],"kind":"borrow"}));
        assert_eq!(r["status"]["won"], true);
        assert_eq!(r["status"]["current"], json!([1, 0, 0, 1, 0]));
        let r = e.handle(&json!({"op":"undo","session":"s1"}));
        assert_eq!(r["status"]["move_count"], 1);
        e.handle(&json!({"op":"close","session":"s1"}));
        assert!(e.handle(&json!({"op":"state","session":"s1"}))["error"].is_string());
    }

    #[test]
    fn bad_requests() {
        let e = Engine::new();
        assert!(e.handle_line("{").contains("malformed"));
        assert!(e.handle(&json!({"op":"fly"}))["error"].is_string());
        let r = e.handle(&json!({"op":"new","complex":{"facets":[[1,2,3]]},"dim":1,"chain":[1,2]}));
        assert!(r["error"].is_string());
        e.handle(&json!({"op":"new","complex":{"facets":[[1,2,3]]},"dim":1,"chain":[1,2,3]}));
        let r = e.handle(&json!({"op":"move","session":"s1","face":[1,2,3],"kind":"lend"}));
        assert!(r["error"].is_string());
        assert!(e.handle(&json!({"op":"undo","session":"s1"}))["error"].is_string());
    }
}
