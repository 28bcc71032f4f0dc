//! Modelling and exact analysis of pure win-lose coordination games.
//!
//! The crate represents games as relational structures (per-player
//! choice sets plus a winning relation), provides the algebra of named
//! game families with a small expression language, computes renaming
//! symmetries, evaluates a family of rationality principles by their
//! maximal permissible choice sets, and classifies games by which
//! principles solve them, including the structural-indeterminacy test
//! and a canonical structural protocol.
//!
//! All analyses are exact and intended for desk-scale games. Search
//! procedures take an explicit [`Limits`] budget and fail with a size
//! error instead of hanging on pathologically symmetric inputs.
//!
//! Corpus-level routines (enumeration, classification sweeps) run in
//! parallel with `rayon` when the default `parallel` feature is
//! enabled, and sequentially otherwise.

pub mod algebra;
pub mod canon;
pub mod classify;
pub mod game;
pub mod games;
pub mod limits;
pub mod principles;
pub mod symmetry;
pub mod verify;

pub use game::{
    ChoiceId, ChoiceStatus, CompareOutcome, Game, GameError, PlayerId, Profile, ProfileSet,
};
pub use limits::{Limits, SizeError};
