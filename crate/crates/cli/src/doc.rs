//! JSON persistence for games.
//!
//! Schema: `{"players": int, "choices": [[str]], "win": [[str]],
//! "meta": {"label": str?, "expr": str?}?}`. Choice names must be
//! globally unique; the i-th entry of each winning profile must come
//! from player i's list. Saving canonicalises the order of `win` (by
//! per-player declaration indices) while preserving choice declaration
//! order, so save-then-load is the identity and load-then-save is
//! byte-stable.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wlc_core::Game;

use crate::error::CliError;

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
}

impl Meta {
    pub fn is_empty(&self) -> bool {
        self.label.is_none() && self.expr.is_none()
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub players: usize,
    pub choices: Vec<Vec<String>>,
    pub win: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl GameDocument {
    pub fn from_game(game: &Game, meta: Option<Meta>) -> GameDocument {
        let choices: Vec<Vec<String>> = (0..game.players())
            .map(|p| {
                game.choices(p)
                    .iter()
                    .map(|&c| game.name(c).to_string())
                    .collect()
            })
            .collect();
        // BTreeSet iteration is already sorted by declaration indices
        let win: Vec<Vec<String>> = game
            .win()
            .iter()
            .map(|w| {
                w.entries()
                    .iter()
                    .map(|&c| game.name(c).to_string())
                    .collect()
            })
            .collect();
        GameDocument {
            players: game.players(),
            choices,
            win,
            meta: meta.filter(|m| !m.is_empty()),
        }
    }

    pub fn to_game(&self) -> Result<Game, CliError> {
        if self.players != self.choices.len() {
            return Err(CliError::Schema {
                pointer: "/players".into(),
                message: format!(
                    "declared {} players but {} choice lists",
                    self.players,
                    self.choices.len()
                ),
            });
        }
        for (i, profile) in self.win.iter().enumerate() {
            if profile.len() != self.players {
                return Err(CliError::Schema {
                    pointer: format!("/win/{i}"),
                    message: format!("expected {} entries, got {}", self.players, profile.len()),
                });
            }
        }
        Game::build(&self.choices, &self.win).map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serialises");
        text.push('\n');
        text
    }
}

pub fn parse_document(text: &str) -> Result<GameDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Schema {
        pointer: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

pub fn load_game(path: &Path) -> Result<(Game, GameDocument), CliError> {
    let text = fs::read_to_string(path)?;
    let doc = parse_document(&text)?;
    let game = doc.to_game()?;
    Ok((game, doc))
}

pub fn save_game(game: &Game, meta: Option<Meta>, path: &Path) -> Result<(), CliError> {
    fs::write(path, GameDocument::from_game(game, meta).to_json())?;
    Ok(())
}
