//! The playable dollar game: sessions of lend and borrow moves.

pub mod protocol;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::bigjson;
use crate::chain::IntChain;
use crate::chain_space::ChainSpace;
use crate::complex::FaceRef;
use crate::cone::DegreeVector;
use crate::error::{Error, Result};
use crate::winnability::is_winnable;

pub use protocol::Engine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// `sigma - L f`
    Lend,
    /// `sigma + L f`
    Borrow,
}

impl MoveKind {
    pub fn inverse(self) -> MoveKind {
        match self {
            MoveKind::Lend => MoveKind::Borrow,
            MoveKind::Borrow => MoveKind::Lend,
        }
    }

    fn sign(self) -> i32 {
        match self {
            MoveKind::Lend => -1,
            MoveKind::Borrow => 1,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Lend => "lend",
            MoveKind::Borrow => "borrow",
        })
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lend" => Ok(MoveKind::Lend),
            "borrow" => Ok(MoveKind::Borrow),
            _ => Err(Error::Protocol(format!("unknown move kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub face: FaceRef,
    pub kind: MoveKind,
}

impl Move {
    pub fn to_json(&self) -> Value {
        json!({ "face": self.face.vertices, "kind": self.kind.to_string() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Status {
    pub won: bool,
    pub current: IntChain,
    pub degree: DegreeVector,
    pub net_firing_vector: Vec<BigInt>,
    pub move_count: usize,
}

impl Status {
    pub fn to_json(&self) -> Value {
        json!({
            "won": self.won,
            "current": bigjson::int_vec_to_json(&self.current.coeffs),
            "degree": self.degree.to_json(),
            "net_firing_vector": bigjson::int_vec_to_json(&self.net_firing_vector),
            "move_count": self.move_count,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hint {
    pub winnable: bool,
    pub script: Option<Vec<Move>>,
    /// Length of the history the hint was computed for.
    pub history_len: usize,
}

impl Hint {
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "winnable": self.winnable, "history_len": self.history_len });
        if let Some(s) = &self.script {
            v["script"] = Value::Array(s.iter().map(Move::to_json).collect());
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct GameSession {
    space: Arc<ChainSpace>,
    initial: IntChain,
    current: IntChain,
    net: Vec<BigInt>,
    history: Vec<Move>,
    initial_degree: DegreeVector,
}

impl GameSession {
    pub fn new(space: Arc<ChainSpace>, initial: IntChain) -> Result<Self> {
        space.check_chain(&initial)?;
        let initial_degree = space.hilbert_basis()?.degree(&initial, false);
        Ok(GameSession {
            net: vec![BigInt::zero(); space.len()],
            current: initial.clone(),
            initial,
            history: Vec::new(),
            initial_degree,
            space,
        })
    }

    pub fn space(&self) -> &Arc<ChainSpace> {
        &self.space
    }

    pub fn initial(&self) -> &IntChain {
        &self.initial
    }

    pub fn current(&self) -> &IntChain {
        &self.current
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    fn resolve(&self, face: &[u32]) -> Result<FaceRef> {
        let r = self.space.complex().lookup(face)?;
        if r.dim != self.space.dim() {
            return Err(Error::UnknownFace(face.to_vec()));
        }
        Ok(r)
    }

    fn shift(&mut self, index: usize, sign: i32) {
        let lap = self.space.laplacian();
        for (r, c) in self.current.coeffs.iter_mut().enumerate() {
            let x = &lap[(r, index)];
            if sign > 0 {
                *c += x;
            } else {
                *c -= x;
            }
        }
        self.net[index] += sign;
    }

    pub fn apply_move(&mut self, face: &[u32], kind: MoveKind) -> Result<&Move> {
        let face = self.resolve(face)?;
        self.shift(face.index, kind.sign());
        self.history.push(Move { face, kind });
        Ok(self.history.last().expect("just pushed"))
    }

    /// Reverts the last move; false when there is none.
    pub fn undo(&mut self) -> bool {
        let Some(m) = self.history.pop() else {
            return false;
        };
        self.shift(m.face.index, m.kind.inverse().sign());
        true
    }

    pub fn status(&self) -> Status {
        let degree = self
            .space
            .hilbert_basis()
            .expect("computed when the session started")
            .degree(&self.current, false);
        assert_eq!(degree, self.initial_degree, "degree changed during play");
        Status {
            won: self.current.is_effective(),
            current: self.current.clone(),
            degree,
            net_firing_vector: self.net.clone(),
            move_count: self.history.len(),
        }
    }

    pub fn hint(&self) -> Result<Hint> {
        hint_for(&self.space, &self.current, self.history.len())
    }

    /// Rebuilds a session by replaying moves from the initial chain.
    pub fn replay(space: Arc<ChainSpace>, initial: IntChain, moves: &[(Vec<u32>, MoveKind)]) -> Result<Self> {
        let mut s = GameSession::new(space, initial)?;
        for (f, k) in moves {
            s.apply_move(f, *k)?;
        }
        Ok(s)
    }

    pub fn history_json(&self) -> Value {
        Value::Array(self.history.iter().map(Move::to_json).collect())
    }
}

/// Turns a firing vector into single moves: `|v_f|` borrows at `f` when
/// `v_f > 0`, lends when negative, faces in lex order.
pub fn script_from_firing(space: &ChainSpace, v: &[BigInt]) -> Vec<Move> {
    let mut out = Vec::new();
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let kind = if x.is_positive() { MoveKind::Borrow } else { MoveKind::Lend };
        let mut k = x.abs();
        while k.is_positive() {
            out.push(Move {
                face: space.face(j),
                kind,
            });
            k -= 1;
        }
    }
    out
}

pub fn hint_for(space: &ChainSpace, current: &IntChain, history_len: usize) -> Result<Hint> {
    let verdict = is_winnable(space, current)?;
    let script = verdict
        .firing_vector
        .as_ref()
        .map(|v| script_from_firing(space, v));
    Ok(Hint {
        winnable: verdict.winnable,
        script,
        history_len,
    })
}
