//! Game-level classification: solvability verdicts for every named
//! principle, structural indeterminacy, the canonical structural
//! protocol, and a brute-force solvability oracle for cross-checking.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::canon::{canonical_form, canonical_game};
use crate::game::{product_tuples, ChoiceId, Game, GameError, PlayerId};
use crate::limits::{Limits, SizeError};
use crate::principles::{
    cir_reduce, permissible_all, Named, Principle, PrincipleError, ReductionTrace, SymmetryContext,
    SymmetryKind,
};
use crate::symmetry::{full_renamings_with, structural_classes_with, SymmetryError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    SizeLimit(#[from] SizeError),
    #[error("game is structurally indeterminate; no structural protocol can solve it")]
    Indeterminate,
    #[error("game has an empty winning relation")]
    Unwinnable,
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("renaming failure: {0}")]
    Renaming(String),
}

impl From<PrincipleError> for ClassifyError {
    fn from(e: PrincipleError) -> Self {
        match e {
            PrincipleError::SizeLimit(s) => ClassifyError::SizeLimit(s),
            PrincipleError::Game(g) => ClassifyError::Game(g),
            PrincipleError::Renaming(r) => ClassifyError::Renaming(r),
            PrincipleError::Parse { expected, .. } => ClassifyError::Renaming(expected),
        }
    }
}

impl From<SymmetryError> for ClassifyError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::SizeLimit(s) => ClassifyError::SizeLimit(s),
            SymmetryError::MalformedRenaming { reason } => ClassifyError::Renaming(reason),
            SymmetryError::Game(g) => ClassifyError::Game(g),
        }
    }
}

/// True when the game is winnable and every winning profile exhibits a
/// bad (full) symmetry. Unwinnable games are reported separately, not
/// as indeterminate.
pub fn is_structurally_indeterminate(g: &Game, limits: &Limits) -> Result<bool, ClassifyError> {
    if g.win().is_empty() {
        return Ok(false);
    }
    let ctx = SymmetryContext::new(g, SymmetryKind::Full, limits)?;
    Ok(g.win().iter().all(|w| ctx.exhibits(g, w)))
}

/// The canonical structural protocol, evaluated for all players at
/// once: anchor the game to its canonical form, pick the
/// lexicographically smallest winning tuple there that does not
/// exhibit a bad symmetry, and pull its coordinates back through every
/// full renaming onto this game. The result is symmetry-closed and its
/// product lies inside the winning relation.
pub fn canonical_assignment(
    g: &Game,
    limits: &Limits,
) -> Result<Vec<BTreeSet<ChoiceId>>, ClassifyError> {
    if g.win().is_empty() {
        return Err(ClassifyError::Unwinnable);
    }
    let form = canonical_form(g, limits)?;
    let anchor = canonical_game(&form);
    let ctx = SymmetryContext::new(&anchor, SymmetryKind::Full, limits)?;
    let witness = anchor
        .win()
        .iter()
        .find(|w| !ctx.exhibits(&anchor, w))
        .cloned()
        .ok_or(ClassifyError::Indeterminate)?;

    let renamings = full_renamings_with(&anchor, g, limits)?;
    debug_assert!(!renamings.is_empty());
    let mut sets: Vec<BTreeSet<ChoiceId>> = vec![BTreeSet::new(); g.players()];
    for r in &renamings {
        for (j, &c) in witness.entries().iter().enumerate() {
            sets[r.image_player(j)].insert(r.image_id(c));
        }
    }
    debug_assert!(sets.iter().all(|s| !s.is_empty()));
    Ok(sets)
}

/// The canonical structural protocol for one player.
pub fn canonical_protocol(
    g: &Game,
    player: PlayerId,
    limits: &Limits,
) -> Result<BTreeSet<ChoiceId>, ClassifyError> {
    if player >= g.players() {
        return Err(ClassifyError::Game(GameError::NoSuchPlayer { player }));
    }
    Ok(canonical_assignment(g, limits)?.swap_remove(player))
}

/// Brute-force oracle: does any symmetry-closed per-player assignment
/// have its product inside the winning relation? Closure under all
/// full self-renamings means the union of the assignment is a union of
/// structural classes, so the search walks unions of classes smallest
/// first and stops at the first solving assignment.
pub fn brute_force_structural_solvable(g: &Game, limits: &Limits) -> Result<bool, ClassifyError> {
    let classes = structural_classes_with(g, limits)?;
    let cells = classes.cells();
    limits.check(
        1u128 << cells.len().min(127),
        "orbit-closed assignment enumeration",
    )?;
    let mut subsets: Vec<u64> = (1..(1u64 << cells.len())).collect();
    subsets.sort_by_key(|mask| {
        (0..cells.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| cells[i].len())
            .sum::<usize>()
    });
    for mask in subsets {
        let mut axes: Vec<Vec<ChoiceId>> = vec![Vec::new(); g.players()];
        for (i, cell) in cells.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for &c in cell {
                    axes[g.owner(c)].push(c);
                }
            }
        }
        if axes.iter().any(|a| a.is_empty()) {
            continue;
        }
        for axis in &mut axes {
            axis.sort_unstable();
        }
        if product_tuples(&axes).all(|t| g.is_winning(&t)) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ReportFlag {
    Unwinnable,
    /// Some intersection under this named principle emptied and fell
    /// back to the full choice set.
    IncompatiblePrinciples(&'static str),
}

/// Verdict of one named principle on one game.
#[derive(Clone, Debug)]
pub struct PrincipleVerdict {
    pub principle: Named,
    pub solves: bool,
    /// Permissible sets in the original game's ids.
    pub permissible: Vec<BTreeSet<ChoiceId>>,
    /// Reduction trace for the cir-based principles.
    pub trace: Option<ReductionTrace>,
    pub incompatible: bool,
}

/// Full classification of one game across all named principles.
#[derive(Clone, Debug)]
pub struct SolvabilityReport {
    pub verdicts: Vec<PrincipleVerdict>,
    pub structurally_indeterminate: bool,
    pub unwinnable: bool,
    /// Choice sets of the canonical structural protocol, when the game
    /// is winnable and not indeterminate.
    pub canonical_choice_sets: Option<Vec<BTreeSet<ChoiceId>>>,
    pub flags: Vec<ReportFlag>,
}

impl SolvabilityReport {
    pub fn verdict(&self, n: Named) -> &PrincipleVerdict {
        self.verdicts
            .iter()
            .find(|v| v.principle == n)
            .expect("all named principles present")
    }

    pub fn solves(&self, n: Named) -> bool {
        self.verdict(n).solves
    }

    pub fn solved_by(&self) -> Vec<Named> {
        self.verdicts
            .iter()
            .filter(|v| v.solves)
            .map(|v| v.principle)
            .collect()
    }
}

fn product_in_win(g: &Game, sets: &[BTreeSet<ChoiceId>]) -> bool {
    let axes: Vec<Vec<ChoiceId>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    if axes.iter().any(|a| a.is_empty()) {
        return false;
    }
    product_tuples(&axes).all(|t| g.is_winning(&t))
}

fn verdict_for(g: &Game, n: Named, limits: &Limits) -> Result<PrincipleVerdict, ClassifyError> {
    if n.is_iterated() {
        let inner = match n.principle() {
            Principle::Cir(inner) => *inner,
            other => other,
        };
        let trace = cir_reduce(&inner, g, limits)?;
        let permissible = trace.final_sets_in(g)?;
        let solves = product_in_win(g, &permissible);
        let incompatible = trace.incompatible();
        Ok(PrincipleVerdict {
            principle: n,
            solves,
            permissible,
            trace: Some(trace),
            incompatible,
        })
    } else {
        let result = permissible_all(&n.principle(), g, limits)?;
        let solves = product_in_win(g, &result.sets);
        Ok(PrincipleVerdict {
            principle: n,
            solves,
            permissible: result.sets,
            trace: None,
            incompatible: result.incompatible,
        })
    }
}

/// Classifies a game: a verdict for every named principle, the
/// structural-indeterminacy and unwinnable flags, and the canonical
/// protocol's choice sets where defined.
pub fn classify_with(g: &Game, limits: &Limits) -> Result<SolvabilityReport, ClassifyError> {
    let mut verdicts = Vec::with_capacity(Named::ALL.len());
    for n in Named::ALL {
        verdicts.push(verdict_for(g, n, limits)?);
    }
    let unwinnable = g.win().is_empty();
    let structurally_indeterminate = is_structurally_indeterminate(g, limits)?;
    let canonical_choice_sets = if unwinnable || structurally_indeterminate {
        None
    } else {
        Some(canonical_assignment(g, limits)?)
    };
    let mut flags = Vec::new();
    if unwinnable {
        flags.push(ReportFlag::Unwinnable);
    }
    for v in &verdicts {
        if v.incompatible {
            flags.push(ReportFlag::IncompatiblePrinciples(v.principle.label()));
        }
    }
    Ok(SolvabilityReport {
        verdicts,
        structurally_indeterminate,
        unwinnable,
        canonical_choice_sets,
        flags,
    })
}

pub fn classify(g: &Game) -> Result<SolvabilityReport, ClassifyError> {
    classify_with(g, &Limits::default())
}
