//! JSON game documents and CSV emitters.
//!
//! Rationals are always strings (`"p/q"` or an integer) in documents. Only
//! derived diagnostic CSV columns carry floats, and those end in `_float`.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Tdpg, Tipg};
use crate::moves::{Coordinate, Move2D};
use crate::profile::ProfileTable;
use crate::rational::{parse_rational, to_f64, Rational, RationalParseError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot access {path}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("parse error in field {field}: {msg}")]
    Parse { field: String, msg: String },
    #[error("negative denominator in field {field}")]
    NegativeDenominator { field: String },
    #[error("duplicate entry ({x}, {y}) in field {field}")]
    DuplicateEntry { field: String, x: String, y: String },
    #[error("expected a {expected} document, found {found}")]
    KindMismatch { expected: &'static str, found: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    x: String,
    y: String,
    v: String,
}

/// Flat on purpose: an internally tagged enum would buffer the input and
/// lose line numbers in error messages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<RawEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    first: Option<Vec<RawEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    second: Option<Vec<RawEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    moves: Option<Vec<Vec<RawEntry>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Game {
    Move(Move2D),
    Tipg(Tipg),
    Tdpg(Tdpg),
}

impl Game {
    pub fn kind(&self) -> &'static str {
        match self {
            Game::Move(_) => "move2d",
            Game::Tipg(_) => "tipg",
            Game::Tdpg(_) => "tdpg",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameDocument {
    pub tau: Option<Rational>,
    pub game: Game,
}

impl GameDocument {
    pub fn new(game: Game) -> Self {
        GameDocument { tau: None, game }
    }

    pub fn with_tau(mut self, tau: Rational) -> Self {
        self.tau = Some(tau);
        self
    }
}

fn rational_field(s: &str, field: &str) -> Result<Rational, IoError> {
    parse_rational(s).map_err(|e| match e {
        RationalParseError::NegativeDenominator(_) => IoError::NegativeDenominator { field: field.to_string() },
        other => IoError::Parse { field: field.to_string(), msg: other.to_string() },
    })
}

fn coordinate_field(s: &str, field: &str) -> Result<Coordinate, IoError> {
    Coordinate::new(rational_field(s, field)?)
        .map_err(|e| IoError::Parse { field: field.to_string(), msg: e.to_string() })
}

fn entries_to_move(entries: &[RawEntry], field: &str) -> Result<Move2D, IoError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(entries.len());
    for (k, e) in entries.iter().enumerate() {
        let at = |f: &str| format!("{field}[{k}].{f}");
        let x = coordinate_field(&e.x, &at("x"))?;
        let y = coordinate_field(&e.y, &at("y"))?;
        let v = rational_field(&e.v, &at("v"))?;
        if !seen.insert((x.clone(), y.clone())) {
            return Err(IoError::DuplicateEntry { field: format!("{field}[{k}]"), x: x.to_string(), y: y.to_string() });
        }
        out.push(((x, y), v));
    }
    Ok(Move2D::from_entries(out))
}

fn move_to_entries(m: &Move2D) -> Vec<RawEntry> {
    m.iter()
        .map(|((x, y), v)| RawEntry { x: x.to_string(), y: y.to_string(), v: v.to_string() })
        .collect()
}

/// Parses a document from JSON text.
pub fn parse_game(text: &str) -> Result<GameDocument, IoError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let tau = raw.tau.as_deref().map(|t| rational_field(t, "tau")).transpose()?;
    let check = |allowed: &[&str]| -> Result<(), IoError> {
        let present = [
            ("entries", raw.entries.is_some()),
            ("first", raw.first.is_some()),
            ("second", raw.second.is_some()),
            ("moves", raw.moves.is_some()),
        ];
        for (name, is_set) in present {
            if is_set != allowed.contains(&name) {
                let msg = if is_set { "not allowed for this kind" } else { "missing" };
                return Err(IoError::Parse { field: name.to_string(), msg: msg.to_string() });
            }
        }
        Ok(())
    };
    let game = match raw.kind.as_str() {
        "move2d" => {
            check(&["entries"])?;
            Game::Move(entries_to_move(raw.entries.as_deref().unwrap_or_default(), "entries")?)
        }
        "tipg" => {
            check(&["first", "second"])?;
            Game::Tipg(Tipg::new(
                entries_to_move(raw.first.as_deref().unwrap_or_default(), "first")?,
                entries_to_move(raw.second.as_deref().unwrap_or_default(), "second")?,
            ))
        }
        "tdpg" => {
            check(&["moves"])?;
            let moves = raw
                .moves
                .iter()
                .flatten()
                .enumerate()
                .map(|(i, m)| entries_to_move(m, &format!("moves[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Game::Tdpg(Tdpg::new(moves))
        }
        other => {
            return Err(IoError::Parse { field: String::from("kind"), msg: format!("unknown kind '{other}'") });
        }
    };
    Ok(GameDocument { tau, game })
}

/// Canonical JSON: entries in increasing `(x, y)`, zeros omitted, two-space indent.
pub fn render_game(doc: &GameDocument) -> String {
    let tau = doc.tau.as_ref().map(|t| t.to_string());
    let mut raw = RawDocument {
        kind: doc.game.kind().to_string(),
        tau,
        entries: None,
        first: None,
        second: None,
        moves: None,
    };
    match &doc.game {
        Game::Move(m) => raw.entries = Some(move_to_entries(m)),
        Game::Tipg(r) => {
            raw.first = Some(move_to_entries(&r.first));
            raw.second = Some(move_to_entries(&r.second));
        }
        Game::Tdpg(t) => raw.moves = Some(t.moves.iter().map(move_to_entries).collect()),
    }
    let mut s = serde_json::to_string_pretty(&raw).expect("documents always serialise");
    s.push('\n');
    s
}

pub fn read_game(path: impl AsRef<Path>) -> Result<GameDocument, IoError> {
    let p = path.as_ref();
    let text = fs::read_to_string(p).map_err(|source| IoError::Io { path: p.display().to_string(), source })?;
    parse_game(&text)
}

pub fn write_game(doc: &GameDocument, path: impl AsRef<Path>) -> Result<(), IoError> {
    let p = path.as_ref();
    fs::write(p, render_game(doc)).map_err(|source| IoError::Io { path: p.display().to_string(), source })
}

/// `alpha,beta,value,value_float` with `inf` for the point at infinity.
pub fn write_profile_csv<W: Write>(table: &ProfileTable, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["alpha", "beta", "value", "value_float"])?;
    for (a, b, v) in &table.rows {
        w.write_record([a.to_string(), b.to_string(), v.to_string(), format!("{}", to_f64(v))])?;
    }
    w.flush()?;
    Ok(())
}

/// `angle_float,log10_abs_float` for circle samples given in `log₂`.
pub fn write_circle_csv<W: Write>(samples: &[(f64, f64)], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["angle_float", "log10_abs_float"])?;
    for (t, l) in samples {
        w.write_record([format!("{t}"), format!("{}", l * std::f64::consts::LOG10_2)])?;
    }
    w.flush()?;
    Ok(())
}

/// Seed for randomised checks: `POINTGAME_SEED` when set and numeric, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("POINTGAME_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}
