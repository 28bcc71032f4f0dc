//! Rationality principles over win-lose coordination games.
//!
//! Each principle is represented by its maximal permissible choice set
//! per (game, player): the union of everything some compliant protocol
//! may select. Every nonempty subset of that set is realised by some
//! compliant protocol, so a principle solves a game exactly when the
//! product of its permissible sets lands inside the winning relation.
//!
//! Base principles:
//!
//! - `FIR` never play a strictly dominated choice (surely losing while
//!   a surely winning choice exists),
//! - `NL` never play a surely losing choice, if possible,
//! - `SW` always play a surely winning choice, if possible,
//! - `IOC` play an optimal choice, if possible,
//! - `IRC` never play a weakly dominated choice,
//! - `ECS`/`EPS`/`ES` never play a choice all of whose profiles escape
//!   the winning relation under choice/player/full symmetry closure,
//!   if possible,
//! - `PR` play a choice with maximal winning-extension size.
//!
//! Combinators: `Intersect` (with fallback to the full choice set when
//! the intersection empties, flagged as incompatible) and `Cir`
//! (collective iterated reasoning: repeatedly restrict the game to the
//! permissible sets until a fixed point). The familiar named aliases
//! are `BIR = NL & SW`, `BCR = cir(BIR)`, `BIR+ = IOC & NL`,
//! `COC = cir(IOC)` and `CRC = cir(IRC)`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::game::{product_tuples, ChoiceId, ChoiceStatus, Game, GameError, PlayerId, Profile};
use crate::limits::{Limits, SizeError};
use crate::symmetry::{all_choice_equivalences_with, structural_classes_with, SymmetryError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PrincipleError {
    #[error(transparent)]
    SizeLimit(#[from] SizeError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("renaming failure during symmetry analysis: {0}")]
    Renaming(String),
    #[error("principle parse error at byte {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },
}

impl From<SymmetryError> for PrincipleError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::SizeLimit(s) => PrincipleError::SizeLimit(s),
            SymmetryError::MalformedRenaming { reason } => PrincipleError::Renaming(reason),
            SymmetryError::Game(g) => PrincipleError::Game(g),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymmetryKind {
    /// Closure of each coordinate within its own player's automorphism
    /// orbit.
    Choice,
    /// Each player's coordinate plus the structural classes of the
    /// *other* coordinates intersected with her choices.
    Player,
    /// Structural classes of all coordinates intersected with each
    /// player's choices.
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasePrinciple {
    Fir,
    Nl,
    Sw,
    Ioc,
    Irc,
    Ecs,
    Eps,
    Es,
    Pr,
}

impl BasePrinciple {
    pub fn label(self) -> &'static str {
        match self {
            BasePrinciple::Fir => "FIR",
            BasePrinciple::Nl => "NL",
            BasePrinciple::Sw => "SW",
            BasePrinciple::Ioc => "IOC",
            BasePrinciple::Irc => "IRC",
            BasePrinciple::Ecs => "ECS",
            BasePrinciple::Eps => "EPS",
            BasePrinciple::Es => "ES",
            BasePrinciple::Pr => "PR",
        }
    }
}

/// Expression tree of a principle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Principle {
    Base(BasePrinciple),
    Intersect(Box<Principle>, Box<Principle>),
    Cir(Box<Principle>),
}

impl Principle {
    pub fn base(b: BasePrinciple) -> Principle {
        Principle::Base(b)
    }

    pub fn intersect(p: Principle, q: Principle) -> Principle {
        Principle::Intersect(Box::new(p), Box::new(q))
    }

    pub fn cir(p: Principle) -> Principle {
        Principle::Cir(Box::new(p))
    }

    /// Collapses directly nested `cir` applications; iterating an
    /// already-iterated principle changes nothing.
    pub fn normalized(&self) -> Principle {
        match self {
            Principle::Base(b) => Principle::Base(*b),
            Principle::Intersect(p, q) => Principle::intersect(p.normalized(), q.normalized()),
            Principle::Cir(p) => match p.normalized() {
                Principle::Cir(inner) => Principle::Cir(inner),
                other => Principle::cir(other),
            },
        }
    }
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Principle::Base(b) => write!(f, "{}", b.label()),
            Principle::Intersect(p, q) => {
                write!(f, "{p} & ")?;
                if matches!(**q, Principle::Intersect(..)) {
                    write!(f, "({q})")
                } else {
                    write!(f, "{q}")
                }
            }
            Principle::Cir(p) => write!(f, "cir({p})"),
        }
    }
}

/// The principles named throughout the analysis, in report order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Named {
    Fir,
    Nl,
    Sw,
    Bir,
    Bcr,
    Ioc,
    BirPlus,
    Coc,
    Irc,
    Crc,
    Ecs,
    Eps,
    Es,
    Pr,
}

impl Named {
    pub const ALL: [Named; 14] = [
        Named::Fir,
        Named::Nl,
        Named::Sw,
        Named::Bir,
        Named::Bcr,
        Named::Ioc,
        Named::BirPlus,
        Named::Coc,
        Named::Irc,
        Named::Crc,
        Named::Ecs,
        Named::Eps,
        Named::Es,
        Named::Pr,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Named::Fir => "FIR",
            Named::Nl => "NL",
            Named::Sw => "SW",
            Named::Bir => "BIR",
            Named::Bcr => "BCR",
            Named::Ioc => "IOC",
            Named::BirPlus => "BIR+",
            Named::Coc => "COC",
            Named::Irc => "IRC",
            Named::Crc => "CRC",
            Named::Ecs => "ECS",
            Named::Eps => "EPS",
            Named::Es => "ES",
            Named::Pr => "PR",
        }
    }

    pub fn principle(self) -> Principle {
        use BasePrinciple::*;
        match self {
            Named::Fir => Principle::base(Fir),
            Named::Nl => Principle::base(Nl),
            Named::Sw => Principle::base(Sw),
            Named::Bir => Principle::intersect(Principle::base(Nl), Principle::base(Sw)),
            Named::Bcr => Principle::cir(Named::Bir.principle()),
            Named::Ioc => Principle::base(Ioc),
            Named::BirPlus => Principle::intersect(Principle::base(Ioc), Principle::base(Nl)),
            Named::Coc => Principle::cir(Principle::base(Ioc)),
            Named::Irc => Principle::base(Irc),
            Named::Crc => Principle::cir(Principle::base(Irc)),
            Named::Ecs => Principle::base(Ecs),
            Named::Eps => Principle::base(Eps),
            Named::Es => Principle::base(Es),
            Named::Pr => Principle::base(Pr),
        }
    }

    /// Whether evaluating this principle involves a cir fixed point.
    pub fn is_iterated(self) -> bool {
        matches!(self, Named::Bcr | Named::Coc | Named::Crc)
    }
}

/// Per-player permissible sets plus whether some intersection emptied
/// and fell back to the full choice set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermissibleSets {
    pub sets: Vec<BTreeSet<ChoiceId>>,
    pub incompatible: bool,
}

/// One stage of a cir reduction: the game at that stage and the
/// permissible sets computed in it. The next stage's game is the
/// restriction by these sets; in the final stage the sets equal the
/// full choice sets.
#[derive(Clone, Debug)]
pub struct Stage {
    pub game: Game,
    pub permissible: Vec<BTreeSet<ChoiceId>>,
}

/// Trace of a collective-iterated-reasoning reduction.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    stages: Vec<Stage>,
    incompatible: bool,
}

impl ReductionTrace {
    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// Number of restrictions performed before reaching the fixed
    /// point.
    pub fn shrinking_steps(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn fixed_point(&self) -> &Game {
        &self.stages.last().expect("nonempty trace").game
    }

    pub fn incompatible(&self) -> bool {
        self.incompatible
    }

    /// Final per-player sets resolved to ids of the original game.
    pub fn final_sets_in(&self, origin: &Game) -> Result<Vec<BTreeSet<ChoiceId>>, GameError> {
        let last = self.stages.last().expect("nonempty trace");
        (0..last.game.players())
            .map(|p| {
                last.permissible[p]
                    .iter()
                    .map(|&c| origin.choice_id(last.game.name(c)))
                    .collect()
            })
            .collect()
    }
}

/// Maximal permissible choice sets of a principle on a game, for all
/// players at once.
pub fn permissible_all(
    p: &Principle,
    g: &Game,
    limits: &Limits,
) -> Result<PermissibleSets, PrincipleError> {
    match p {
        Principle::Base(b) => Ok(PermissibleSets {
            sets: base_permissible(*b, g, limits)?,
            incompatible: false,
        }),
        Principle::Intersect(p, q) => {
            let left = permissible_all(p, g, limits)?;
            let right = permissible_all(q, g, limits)?;
            let mut incompatible = left.incompatible || right.incompatible;
            let sets = (0..g.players())
                .map(|i| {
                    let meet: BTreeSet<ChoiceId> =
                        left.sets[i].intersection(&right.sets[i]).copied().collect();
                    if meet.is_empty() {
                        incompatible = true;
                        g.choices(i).iter().copied().collect()
                    } else {
                        meet
                    }
                })
                .collect();
            Ok(PermissibleSets { sets, incompatible })
        }
        Principle::Cir(inner) => {
            let trace = cir_reduce(inner, g, limits)?;
            let sets = trace.final_sets_in(g)?;
            Ok(PermissibleSets {
                sets,
                incompatible: trace.incompatible,
            })
        }
    }
}

/// Maximal permissible choice set for one player.
pub fn permissible(
    p: &Principle,
    g: &Game,
    player: PlayerId,
    limits: &Limits,
) -> Result<BTreeSet<ChoiceId>, PrincipleError> {
    if player >= g.players() {
        return Err(PrincipleError::Game(GameError::NoSuchPlayer { player }));
    }
    Ok(permissible_all(p, g, limits)?.sets.swap_remove(player))
}

fn full_set(g: &Game, player: PlayerId) -> BTreeSet<ChoiceId> {
    g.choices(player).iter().copied().collect()
}

/// "If possible" filter: the choices passing `keep`, or the whole
/// choice set when none does.
fn filtered_or_all<F: Fn(ChoiceId) -> bool>(
    g: &Game,
    player: PlayerId,
    keep: F,
) -> BTreeSet<ChoiceId> {
    let kept: BTreeSet<ChoiceId> = g
        .choices(player)
        .iter()
        .copied()
        .filter(|&c| keep(c))
        .collect();
    if kept.is_empty() {
        full_set(g, player)
    } else {
        kept
    }
}

fn base_permissible(
    b: BasePrinciple,
    g: &Game,
    limits: &Limits,
) -> Result<Vec<BTreeSet<ChoiceId>>, PrincipleError> {
    let sets = match b {
        BasePrinciple::Fir => (0..g.players())
            .map(|i| {
                let has_winning = g
                    .choices(i)
                    .iter()
                    .any(|&c| g.choice_status(c) == ChoiceStatus::SurelyWinning);
                g.choices(i)
                    .iter()
                    .copied()
                    .filter(|&c| !(has_winning && g.choice_status(c) == ChoiceStatus::SurelyLosing))
                    .collect()
            })
            .collect(),
        BasePrinciple::Nl => (0..g.players())
            .map(|i| filtered_or_all(g, i, |c| g.choice_status(c) != ChoiceStatus::SurelyLosing))
            .collect(),
        BasePrinciple::Sw => (0..g.players())
            .map(|i| filtered_or_all(g, i, |c| g.choice_status(c) == ChoiceStatus::SurelyWinning))
            .collect(),
        BasePrinciple::Ioc => (0..g.players())
            .map(|i| {
                let optimal = g.optimal_choices(i).expect("valid player");
                if optimal.is_empty() {
                    full_set(g, i)
                } else {
                    optimal
                }
            })
            .collect(),
        BasePrinciple::Irc => (0..g.players())
            .map(|i| {
                let exts: Vec<crate::game::ProfileSet> = g
                    .choices(i)
                    .iter()
                    .map(|&c| g.winning_extension(c))
                    .collect();
                g.choices(i)
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| {
                        !exts.iter().enumerate().any(|(k2, other)| {
                            k2 != *k && exts[*k].is_subset(other) && !other.is_subset(&exts[*k])
                        })
                    })
                    .map(|(_, &c)| c)
                    .collect()
            })
            .collect(),
        BasePrinciple::Ecs | BasePrinciple::Eps | BasePrinciple::Es => {
            let kind = match b {
                BasePrinciple::Ecs => SymmetryKind::Choice,
                BasePrinciple::Eps => SymmetryKind::Player,
                _ => SymmetryKind::Full,
            };
            let ctx = SymmetryContext::new(g, kind, limits)?;
            (0..g.players())
                .map(|i| filtered_or_all(g, i, |c| !ctx.generates(g, c)))
                .collect()
        }
        BasePrinciple::Pr => (0..g.players())
            .map(|i| {
                let best = g
                    .choices(i)
                    .iter()
                    .map(|&c| g.extension_size(c))
                    .max()
                    .unwrap_or(0);
                g.choices(i)
                    .iter()
                    .copied()
                    .filter(|&c| g.extension_size(c) == best)
                    .collect()
            })
            .collect(),
    };
    Ok(sets)
}

/// Cached partitions for one game and symmetry kind.
pub(crate) struct SymmetryContext {
    kind: SymmetryKind,
    per_player: Vec<crate::symmetry::Partition>,
    structural: Option<crate::symmetry::Partition>,
}

impl SymmetryContext {
    pub(crate) fn new(
        g: &Game,
        kind: SymmetryKind,
        limits: &Limits,
    ) -> Result<SymmetryContext, PrincipleError> {
        let per_player = if kind == SymmetryKind::Choice {
            all_choice_equivalences_with(g, limits)?
        } else {
            Vec::new()
        };
        let structural = if kind == SymmetryKind::Choice {
            None
        } else {
            Some(structural_classes_with(g, limits)?)
        };
        Ok(SymmetryContext {
            kind,
            per_player,
            structural,
        })
    }

    /// The per-player closure sets of a profile for this kind.
    fn closure(&self, g: &Game, profile: &Profile) -> Vec<Vec<ChoiceId>> {
        match self.kind {
            SymmetryKind::Choice => profile
                .entries()
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    self.per_player[i]
                        .cell_of(c)
                        .expect("choice in own partition")
                        .to_vec()
                })
                .collect(),
            SymmetryKind::Player => {
                let classes = self.structural.as_ref().expect("structural partition");
                (0..g.players())
                    .map(|i| {
                        let own = profile.get(i);
                        let mut set: BTreeSet<ChoiceId> = BTreeSet::from([own]);
                        for (j, &cj) in profile.entries().iter().enumerate() {
                            if j == i {
                                continue;
                            }
                            for &d in classes.cell_of(cj).expect("choice in partition") {
                                if g.owner(d) == i {
                                    set.insert(d);
                                }
                            }
                        }
                        set.into_iter().collect()
                    })
                    .collect()
            }
            SymmetryKind::Full => {
                let classes = self.structural.as_ref().expect("structural partition");
                (0..g.players())
                    .map(|i| {
                        let mut set: BTreeSet<ChoiceId> = BTreeSet::new();
                        for &cj in profile.entries() {
                            for &d in classes.cell_of(cj).expect("choice in partition") {
                                if g.owner(d) == i {
                                    set.insert(d);
                                }
                            }
                        }
                        set.into_iter().collect()
                    })
                    .collect()
            }
        }
    }

    pub(crate) fn exhibits(&self, g: &Game, profile: &Profile) -> bool {
        let closure = self.closure(g, profile);
        product_tuples(&closure).any(|t| !g.is_winning(&t))
    }

    /// Whether every profile containing `c` exhibits the bad symmetry.
    pub(crate) fn generates(&self, g: &Game, c: ChoiceId) -> bool {
        let player = g.owner(c);
        let axes: Vec<Vec<ChoiceId>> = (0..g.players())
            .map(|i| {
                if i == player {
                    vec![c]
                } else {
                    g.choices(i).to_vec()
                }
            })
            .collect();
        product_tuples(&axes).all(|p| self.exhibits(g, &p))
    }
}

/// Whether a profile's symmetry closure escapes the winning relation.
pub fn exhibits_bad_symmetry(
    g: &Game,
    profile: &Profile,
    kind: SymmetryKind,
    limits: &Limits,
) -> Result<bool, PrincipleError> {
    let ctx = SymmetryContext::new(g, kind, limits)?;
    Ok(ctx.exhibits(g, profile))
}

/// Whether every profile containing the choice exhibits the bad
/// symmetry of the given kind.
pub fn generates_bad_symmetry(
    g: &Game,
    c: ChoiceId,
    kind: SymmetryKind,
    limits: &Limits,
) -> Result<bool, PrincipleError> {
    let ctx = SymmetryContext::new(g, kind, limits)?;
    Ok(ctx.generates(g, c))
}

/// Collective iterated reasoning: restrict the game to the principle's
/// permissible sets until nothing shrinks. The trace records every
/// stage; a `Cir` at the top of `p` is collapsed first since iterating
/// an iterated principle is a no-op.
pub fn cir_reduce(
    p: &Principle,
    g: &Game,
    limits: &Limits,
) -> Result<ReductionTrace, PrincipleError> {
    let inner = match p.normalized() {
        Principle::Cir(q) => *q,
        other => other,
    };
    let mut stages = Vec::new();
    let mut incompatible = false;
    let mut current = g.clone();
    loop {
        let result = permissible_all(&inner, &current, limits)?;
        incompatible = incompatible || result.incompatible;
        let fixed = result.sets == current.full_choice_sets();
        stages.push(Stage {
            game: current.clone(),
            permissible: result.sets.clone(),
        });
        if fixed {
            return Ok(ReductionTrace {
                stages,
                incompatible,
            });
        }
        current = current
            .restrict(&result.sets)
            .map_err(PrincipleError::Game)?;
    }
}

/// Whether the principle solves the game: the product of its
/// permissible sets is a nonempty subset of the winning relation.
pub fn solves(p: &Principle, g: &Game, limits: &Limits) -> Result<bool, PrincipleError> {
    let sets = permissible_all(p, g, limits)?.sets;
    let axes: Vec<Vec<ChoiceId>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
    if axes.iter().any(|a| a.is_empty()) {
        return Ok(false);
    }
    Ok(product_tuples(&axes).all(|t| g.is_winning(&t)))
}

/// Parses the CLI principle syntax:
/// `FIR|NL|SW|BIR|IOC|BIR+|IRC|ECS|EPS|ES|PR|BCR|COC|CRC|cir(P)|P&Q`,
/// case-insensitive, with parentheses for grouping.
pub fn parse_principle(text: &str) -> Result<Principle, PrincipleError> {
    let mut parser = PrincipleParser {
        chars: text.char_indices().collect(),
        pos: 0,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(PrincipleError::Parse {
            pos: parser.chars[parser.pos].0,
            expected: "end of input or '&'".into(),
        });
    }
    Ok(p)
}

struct PrincipleParser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl PrincipleParser {
    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .map(|(_, c)| c.is_whitespace())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
    }

    fn here(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(i, _)| *i)
            .unwrap_or_else(|| self.chars.last().map(|(i, _)| i + 1).unwrap_or(0))
    }

    fn expr(&mut self) -> Result<Principle, PrincipleError> {
        let mut left = self.atom()?;
        loop {
            self.skip_ws();
            if self.chars.get(self.pos).map(|(_, c)| *c) == Some('&') {
                self.pos += 1;
                let right = self.atom()?;
                left = Principle::intersect(left, right);
            } else {
                return Ok(left);
            }
        }
    }

    fn atom(&mut self) -> Result<Principle, PrincipleError> {
        self.skip_ws();
        let pos = self.here();
        if self.chars.get(self.pos).map(|(_, c)| *c) == Some('(') {
            self.pos += 1;
            let inner = self.expr()?;
            self.skip_ws();
            if self.chars.get(self.pos).map(|(_, c)| *c) != Some(')') {
                return Err(PrincipleError::Parse {
                    pos: self.here(),
                    expected: "')'".into(),
                });
            }
            self.pos += 1;
            return Ok(inner);
        }
        let mut word = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_alphanumeric() || c == '+' {
                word.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if word.is_empty() {
            return Err(PrincipleError::Parse {
                pos,
                expected: "a principle name or 'cir('".into(),
            });
        }
        let upper = word.to_ascii_uppercase();
        if upper == "CIR" {
            self.skip_ws();
            if self.chars.get(self.pos).map(|(_, c)| *c) != Some('(') {
                return Err(PrincipleError::Parse {
                    pos: self.here(),
                    expected: "'(' after 'cir'".into(),
                });
            }
            self.pos += 1;
            let inner = self.expr()?;
            self.skip_ws();
            if self.chars.get(self.pos).map(|(_, c)| *c) != Some(')') {
                return Err(PrincipleError::Parse {
                    pos: self.here(),
                    expected: "')' closing 'cir('".into(),
                });
            }
            self.pos += 1;
            return Ok(Principle::cir(inner));
        }
        let named = match upper.as_str() {
            "FIR" => Named::Fir.principle(),
            "NL" => Named::Nl.principle(),
            "SW" => Named::Sw.principle(),
            "BIR" => Named::Bir.principle(),
            "BCR" => Named::Bcr.principle(),
            "IOC" => Named::Ioc.principle(),
            "BIR+" => Named::BirPlus.principle(),
            "COC" => Named::Coc.principle(),
            "IRC" => Named::Irc.principle(),
            "CRC" => Named::Crc.principle(),
            "ECS" => Named::Ecs.principle(),
            "EPS" => Named::Eps.principle(),
            "ES" => Named::Es.principle(),
            "PR" => Named::Pr.principle(),
            _ => {
                return Err(PrincipleError::Parse {
                    pos,
                    expected: format!("a principle name, found {word:?}"),
                })
            }
        };
        Ok(named)
    }
}
