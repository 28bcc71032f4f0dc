//! Win-lose coordination games as relational structures.
//!
//! A game is a set of per-player choice sets together with a winning
//! relation over choice profiles. All payoffs are implicit: a profile
//! either wins (for everyone) or loses (for everyone). Values are
//! immutable after construction; restriction and complement return
//! fresh games so that reduction traces can keep every intermediate
//! stage alive.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Zero-based player index.
pub type PlayerId = usize;

/// Handle for a single choice within one game. Ids are assigned
/// player-major in declaration order and are only meaningful for the
/// game that issued them.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ChoiceId(pub u32);

impl ChoiceId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One choice per player, in player order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Profile {
    entries: Vec<ChoiceId>,
}

impl Profile {
    pub fn new(entries: Vec<ChoiceId>) -> Self {
        Profile { entries }
    }

    pub fn entries(&self) -> &[ChoiceId] {
        &self.entries
    }

    pub fn get(&self, player: PlayerId) -> ChoiceId {
        self.entries[player]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, c: ChoiceId) -> bool {
        self.entries.contains(&c)
    }
}

impl FromIterator<ChoiceId> for Profile {
    fn from_iter<T: IntoIterator<Item = ChoiceId>>(iter: T) -> Self {
        Profile::new(iter.into_iter().collect())
    }
}

/// A set of equal-arity tuples of choices. Used for winning extensions,
/// where the arity is one less than the player count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProfileSet {
    arity: usize,
    tuples: BTreeSet<Vec<ChoiceId>>,
}

impl ProfileSet {
    pub fn new(arity: usize) -> Self {
        ProfileSet {
            arity,
            tuples: BTreeSet::new(),
        }
    }

    pub fn insert(&mut self, tuple: Vec<ChoiceId>) {
        debug_assert_eq!(tuple.len(), self.arity);
        self.tuples.insert(tuple);
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[ChoiceId]) -> bool {
        self.tuples.contains(tuple)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<ChoiceId>> {
        self.tuples.iter()
    }

    pub fn is_subset(&self, other: &ProfileSet) -> bool {
        self.tuples.is_subset(&other.tuples)
    }
}

/// Status of a single choice: its winning extension is full, empty, or
/// strictly in between.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChoiceStatus {
    SurelyWinning,
    SurelyLosing,
    Contingent,
}

/// Outcome of comparing two choices of the same player by their
/// winning extensions (weak dominance).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompareOutcome {
    /// First strictly dominates second (strict superset of extensions).
    Better,
    Worse,
    Equivalent,
    Incomparable,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("player {player} has an empty choice set")]
    EmptyChoiceSet { player: PlayerId },
    #[error("duplicate choice name {name:?}")]
    DuplicateChoiceName { name: String },
    #[error("invalid profile: {reason}")]
    InvalidProfile { reason: String },
    #[error("unknown choice {name:?}")]
    UnknownChoice { name: String },
    #[error("choices {a:?} and {b:?} belong to different players")]
    SamePlayerViolation { a: String, b: String },
    #[error("restriction leaves player {player} without choices")]
    EmptyRestriction { player: PlayerId },
    #[error("player index {player} out of range")]
    NoSuchPlayer { player: PlayerId },
}

/// An n-player win-lose coordination game.
///
/// Choice names are globally unique across players, so a name alone
/// identifies both the choice and its owner. Equality disregards the
/// declaration order of choices within a player but not the player
/// order.
#[derive(Clone, Debug)]
pub struct Game {
    names: Vec<String>,
    owner: Vec<PlayerId>,
    choices: Vec<Vec<ChoiceId>>,
    win: BTreeSet<Profile>,
}

impl PartialEq for Game {
    fn eq(&self, other: &Self) -> bool {
        if self.players() != other.players() {
            return false;
        }
        for p in 0..self.players() {
            let a: BTreeSet<&str> = self.choices[p].iter().map(|&c| self.name(c)).collect();
            let b: BTreeSet<&str> = other.choices[p].iter().map(|&c| other.name(c)).collect();
            if a != b {
                return false;
            }
        }
        let a: BTreeSet<Vec<&str>> = self.win.iter().map(|w| self.profile_names(w)).collect();
        let b: BTreeSet<Vec<&str>> = other.win.iter().map(|w| other.profile_names(w)).collect();
        a == b
    }
}

impl Eq for Game {}

impl Game {
    /// Builds a validated game from per-player choice names and a list
    /// of winning profiles (as name tuples). Winning profiles are
    /// deduplicated.
    pub fn build<S: AsRef<str>>(
        choice_sets: &[Vec<S>],
        winning_profiles: &[Vec<S>],
    ) -> Result<Game, GameError> {
        if choice_sets.is_empty() {
            return Err(GameError::EmptyChoiceSet { player: 0 });
        }
        let mut names = Vec::new();
        let mut owner = Vec::new();
        let mut choices = Vec::new();
        for (p, set) in choice_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(GameError::EmptyChoiceSet { player: p });
            }
            let mut ids = Vec::with_capacity(set.len());
            for name in set {
                let name = name.as_ref();
                if name.is_empty() {
                    return Err(GameError::InvalidProfile {
                        reason: "empty choice name".into(),
                    });
                }
                if names.iter().any(|n| n == name) {
                    return Err(GameError::DuplicateChoiceName { name: name.into() });
                }
                ids.push(ChoiceId(names.len() as u32));
                names.push(name.to_string());
                owner.push(p);
            }
            choices.push(ids);
        }
        let mut game = Game {
            names,
            owner,
            choices,
            win: BTreeSet::new(),
        };
        let mut win = BTreeSet::new();
        for tuple in winning_profiles {
            win.insert(game.profile_from_names(tuple)?);
        }
        game.win = win;
        Ok(game)
    }

    /// Resolves a tuple of choice names into a validated profile: the
    /// arity must match the player count and the i-th entry must belong
    /// to player i.
    pub fn profile_from_names<S: AsRef<str>>(&self, tuple: &[S]) -> Result<Profile, GameError> {
        if tuple.len() != self.players() {
            return Err(GameError::InvalidProfile {
                reason: format!("expected {} entries, got {}", self.players(), tuple.len()),
            });
        }
        let mut entries = Vec::with_capacity(tuple.len());
        for (p, name) in tuple.iter().enumerate() {
            let id = self.choice_id(name.as_ref())?;
            if self.owner(id) != p {
                return Err(GameError::InvalidProfile {
                    reason: format!(
                        "choice {:?} belongs to player {}, not player {}",
                        name.as_ref(),
                        self.owner(id) + 1,
                        p + 1
                    ),
                });
            }
            entries.push(id);
        }
        Ok(Profile::new(entries))
    }

    pub fn players(&self) -> usize {
        self.choices.len()
    }

    pub fn choices(&self, player: PlayerId) -> &[ChoiceId] {
        &self.choices[player]
    }

    pub fn choice_count(&self) -> usize {
        self.names.len()
    }

    pub fn all_choices(&self) -> impl Iterator<Item = ChoiceId> + '_ {
        (0..self.names.len() as u32).map(ChoiceId)
    }

    pub fn name(&self, c: ChoiceId) -> &str {
        &self.names[c.index()]
    }

    pub fn owner(&self, c: ChoiceId) -> PlayerId {
        self.owner[c.index()]
    }

    pub fn choice_id(&self, name: &str) -> Result<ChoiceId, GameError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| ChoiceId(i as u32))
            .ok_or_else(|| GameError::UnknownChoice { name: name.into() })
    }

    pub fn win(&self) -> &BTreeSet<Profile> {
        &self.win
    }

    pub fn is_winning(&self, profile: &Profile) -> bool {
        self.win.contains(profile)
    }

    pub fn profile_names(&self, profile: &Profile) -> Vec<&str> {
        profile.entries().iter().map(|&c| self.name(c)).collect()
    }

    /// Number of profiles over the other players' choice sets, i.e.
    /// the size of a full winning extension for the given player.
    pub fn others_product_size(&self, player: PlayerId) -> usize {
        self.choices
            .iter()
            .enumerate()
            .filter(|(p, _)| *p != player)
            .map(|(_, cs)| cs.len())
            .product()
    }

    /// Iterates over every choice profile of the game in lexicographic
    /// order of per-player declaration indices.
    pub fn all_profiles(&self) -> ProductIter<'_> {
        ProductIter::new(&self.choices)
    }

    /// The set of tuples over the other players that extend `c` to a
    /// winning profile.
    pub fn winning_extension(&self, c: ChoiceId) -> ProfileSet {
        let player = self.owner(c);
        let mut set = ProfileSet::new(self.players() - 1);
        for w in &self.win {
            if w.get(player) == c {
                let tuple = w
                    .entries()
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != player)
                    .map(|(_, &x)| x)
                    .collect();
                set.insert(tuple);
            }
        }
        set
    }

    /// Size of the winning extension without materialising it. Distinct
    /// winning profiles through `c` yield distinct extension tuples.
    pub fn extension_size(&self, c: ChoiceId) -> usize {
        let player = self.owner(c);
        self.win.iter().filter(|w| w.get(player) == c).count()
    }

    pub fn choice_status(&self, c: ChoiceId) -> ChoiceStatus {
        let size = self.extension_size(c);
        if size == 0 {
            ChoiceStatus::SurelyLosing
        } else if size == self.others_product_size(self.owner(c)) {
            ChoiceStatus::SurelyWinning
        } else {
            ChoiceStatus::Contingent
        }
    }

    /// Compares two choices of the same player by inclusion of their
    /// winning extensions.
    pub fn compare_choices(&self, c: ChoiceId, c2: ChoiceId) -> Result<CompareOutcome, GameError> {
        if self.owner(c) != self.owner(c2) {
            return Err(GameError::SamePlayerViolation {
                a: self.name(c).into(),
                b: self.name(c2).into(),
            });
        }
        let a = self.winning_extension(c);
        let b = self.winning_extension(c2);
        Ok(match (b.is_subset(&a), a.is_subset(&b)) {
            (true, true) => CompareOutcome::Equivalent,
            (true, false) => CompareOutcome::Better,
            (false, true) => CompareOutcome::Worse,
            (false, false) => CompareOutcome::Incomparable,
        })
    }

    /// The player's weakly dominant choices: those whose extension
    /// contains every other extension. May be empty.
    pub fn optimal_choices(&self, player: PlayerId) -> Result<BTreeSet<ChoiceId>, GameError> {
        if player >= self.players() {
            return Err(GameError::NoSuchPlayer { player });
        }
        let exts: Vec<ProfileSet> = self.choices[player]
            .iter()
            .map(|&c| self.winning_extension(c))
            .collect();
        let mut optimal = BTreeSet::new();
        for (i, &c) in self.choices[player].iter().enumerate() {
            if exts.iter().all(|e| e.is_subset(&exts[i])) {
                optimal.insert(c);
            }
        }
        Ok(optimal)
    }

    /// Restricts the game to the given per-player subsets. Choice names
    /// are preserved; the winning relation is intersected with the kept
    /// product.
    pub fn restrict(&self, kept: &[BTreeSet<ChoiceId>]) -> Result<Game, GameError> {
        if kept.len() != self.players() {
            return Err(GameError::InvalidProfile {
                reason: format!(
                    "restriction needs {} choice sets, got {}",
                    self.players(),
                    kept.len()
                ),
            });
        }
        for (p, set) in kept.iter().enumerate() {
            if set.is_empty() {
                return Err(GameError::EmptyRestriction { player: p });
            }
            for &c in set {
                if c.index() >= self.names.len() || self.owner(c) != p {
                    return Err(GameError::UnknownChoice {
                        name: format!("id {} for player {}", c.0, p + 1),
                    });
                }
            }
        }
        let choice_sets: Vec<Vec<&str>> = kept
            .iter()
            .enumerate()
            .map(|(p, set)| {
                self.choices[p]
                    .iter()
                    .filter(|c| set.contains(c))
                    .map(|&c| self.name(c))
                    .collect()
            })
            .collect();
        let winning: Vec<Vec<&str>> = self
            .win
            .iter()
            .filter(|w| {
                w.entries()
                    .iter()
                    .enumerate()
                    .all(|(p, c)| kept[p].contains(c))
            })
            .map(|w| self.profile_names(w))
            .collect();
        Game::build(&choice_sets, &winning)
    }

    /// Same game with the winning relation complemented within the full
    /// product of choice sets.
    pub fn complement(&self) -> Game {
        let mut win = BTreeSet::new();
        for profile in self.all_profiles() {
            if !self.win.contains(&profile) {
                win.insert(profile);
            }
        }
        Game {
            names: self.names.clone(),
            owner: self.owner.clone(),
            choices: self.choices.clone(),
            win,
        }
    }

    /// Per-player choice sets as id sets, e.g. as the identity
    /// restriction argument.
    pub fn full_choice_sets(&self) -> Vec<BTreeSet<ChoiceId>> {
        self.choices
            .iter()
            .map(|cs| cs.iter().copied().collect())
            .collect()
    }

    pub fn names_of(&self, set: &BTreeSet<ChoiceId>) -> BTreeSet<String> {
        set.iter().map(|&c| self.name(c).to_string()).collect()
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 0..self.players() {
            let names: Vec<&str> = self.choices[p].iter().map(|&c| self.name(c)).collect();
            writeln!(f, "player {}: {{{}}}", p + 1, names.join(", "))?;
        }
        let mut rows: Vec<String> = self
            .win
            .iter()
            .map(|w| format!("({})", self.profile_names(w).join(", ")))
            .collect();
        rows.sort();
        write!(f, "win: {{{}}}", rows.join(", "))
    }
}

/// Odometer over per-player choice lists, yielding profiles in
/// lexicographic order of declaration indices.
pub struct ProductIter<'a> {
    axes: &'a [Vec<ChoiceId>],
    cursor: Vec<usize>,
    done: bool,
}

impl<'a> ProductIter<'a> {
    fn new(axes: &'a [Vec<ChoiceId>]) -> Self {
        let done = axes.iter().any(|a| a.is_empty());
        ProductIter {
            axes,
            cursor: vec![0; axes.len()],
            done,
        }
    }
}

impl<'a> Iterator for ProductIter<'a> {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        if self.done {
            return None;
        }
        let profile = self
            .cursor
            .iter()
            .enumerate()
            .map(|(p, &i)| self.axes[p][i])
            .collect();
        for p in (0..self.axes.len()).rev() {
            self.cursor[p] += 1;
            if self.cursor[p] < self.axes[p].len() {
                return Some(profile);
            }
            self.cursor[p] = 0;
        }
        self.done = true;
        Some(profile)
    }
}

/// Iterates tuples from the given per-player sets (as slices) in
/// lexicographic order. Shared by the product-subset solvability test
/// and symmetry closures.
pub fn product_tuples(axes: &[Vec<ChoiceId>]) -> ProductIter<'_> {
    ProductIter::new(axes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game(choices: &[&[&str]], win: &[&[&str]]) -> Game {
        let cs: Vec<Vec<&str>> = choices.iter().map(|s| s.to_vec()).collect();
        let ws: Vec<Vec<&str>> = win.iter().map(|s| s.to_vec()).collect();
        Game::build(&cs, &ws).unwrap()
    }

    /// 3-player game where coordination succeeds along a/b "fronts":
    /// the winning profiles are exactly the monotone words over {a,b}.
    fn overlap3() -> Game {
        game(
            &[&["a1", "b1"], &["a2", "b2"], &["a3", "b3"]],
            &[
                &["a1", "a2", "a3"],
                &["a1", "a2", "b3"],
                &["a1", "b2", "b3"],
                &["b1", "b2", "b3"],
            ],
        )
    }

    fn path2() -> Game {
        game(
            &[&["a1", "b1"], &["a2", "b2"]],
            &[&["a1", "a2"], &["b1", "a2"], &["b1", "b2"]],
        )
    }

    #[test]
    fn build_validates() {
        let g = overlap3();
        assert_eq!(g.players(), 3);
        assert_eq!(g.win().len(), 4);

        let one = game(&[&["x"], &["y"]], &[&["x", "y"]]);
        assert_eq!(one.win().len(), 1);

        let err = Game::build(&[vec!["x", "x"], vec!["y"]], &[] as &[Vec<&str>]);
        assert_eq!(
            err.unwrap_err(),
            GameError::DuplicateChoiceName { name: "x".into() }
        );
        let err = Game::build(&[vec!["x"], vec![]], &[] as &[Vec<&str>]);
        assert_eq!(err.unwrap_err(), GameError::EmptyChoiceSet { player: 1 });
        let err = Game::build(&[vec!["x"], vec!["y"]], &[vec!["x"]]);
        assert!(matches!(err.unwrap_err(), GameError::InvalidProfile { .. }));
        let err = Game::build(&[vec!["x"], vec!["y"]], &[vec!["y", "x"]]);
        assert!(matches!(err.unwrap_err(), GameError::InvalidProfile { .. }));
    }

    #[test]
    fn duplicate_winning_profiles_collapse() {
        let g = Game::build(&[vec!["x"], vec!["y"]], &[vec!["x", "y"], vec!["x", "y"]]).unwrap();
        assert_eq!(g.win().len(), 1);
    }

    #[test]
    fn winning_extensions() {
        let g = overlap3();
        let a1 = g.choice_id("a1").unwrap();
        let ext = g.winning_extension(a1);
        assert_eq!(ext.len(), 3);
        let a2 = g.choice_id("a2").unwrap();
        let a3 = g.choice_id("a3").unwrap();
        let b2 = g.choice_id("b2").unwrap();
        let b3 = g.choice_id("b3").unwrap();
        assert!(ext.contains(&[a2, a3]));
        assert!(ext.contains(&[a2, b3]));
        assert!(ext.contains(&[b2, b3]));

        let ext_b2 = g.winning_extension(b2);
        assert_eq!(ext_b2.len(), 2);
        let a1 = g.choice_id("a1").unwrap();
        let b1 = g.choice_id("b1").unwrap();
        assert!(ext_b2.contains(&[a1, b3]));
        assert!(ext_b2.contains(&[b1, b3]));

        let empty = game(&[&["x"], &["y"]], &[]);
        assert!(empty
            .winning_extension(empty.choice_id("x").unwrap())
            .is_empty());
    }

    #[test]
    fn extension_sizes_sum_to_win_size_per_player() {
        for g in [overlap3(), path2()] {
            for p in 0..g.players() {
                let total: usize = g.choices(p).iter().map(|&c| g.extension_size(c)).sum();
                assert_eq!(total, g.win().len());
            }
        }
    }

    #[test]
    fn choice_statuses() {
        let g = path2();
        let b1 = g.choice_id("b1").unwrap();
        let a2 = g.choice_id("a2").unwrap();
        let a1 = g.choice_id("a1").unwrap();
        assert_eq!(g.choice_status(b1), ChoiceStatus::SurelyWinning);
        assert_eq!(g.choice_status(a2), ChoiceStatus::SurelyWinning);
        assert_eq!(g.choice_status(a1), ChoiceStatus::Contingent);

        // path2 plus an isolated choice per player
        let g = game(
            &[&["a1", "b1", "c1"], &["a2", "b2", "c2"]],
            &[&["a1", "a2"], &["b1", "a2"], &["b1", "b2"]],
        );
        let c1 = g.choice_id("c1").unwrap();
        assert_eq!(g.choice_status(c1), ChoiceStatus::SurelyLosing);

        let universal = game(
            &[&["a1", "b1"], &["a2", "b2"]],
            &[&["a1", "a2"], &["a1", "b2"], &["b1", "a2"], &["b1", "b2"]],
        );
        for c in universal.all_choices() {
            assert_eq!(universal.choice_status(c), ChoiceStatus::SurelyWinning);
        }
    }

    #[test]
    fn compare_and_optimal() {
        // 2-player path over 3+3 choices
        let z3 = game(
            &[&["a1", "b1", "c1"], &["a2", "b2", "c2"]],
            &[
                &["a1", "a2"],
                &["b1", "a2"],
                &["b1", "b2"],
                &["c1", "b2"],
                &["c1", "c2"],
            ],
        );
        let a1 = z3.choice_id("a1").unwrap();
        let b1 = z3.choice_id("b1").unwrap();
        assert_eq!(z3.compare_choices(b1, a1).unwrap(), CompareOutcome::Better);
        assert_eq!(z3.compare_choices(a1, b1).unwrap(), CompareOutcome::Worse);
        assert!(z3.optimal_choices(0).unwrap().is_empty());

        let g = overlap3();
        let a2 = g.choice_id("a2").unwrap();
        let b2 = g.choice_id("b2").unwrap();
        assert_eq!(
            g.compare_choices(a2, b2).unwrap(),
            CompareOutcome::Incomparable
        );
        let a1 = g.choice_id("a1").unwrap();
        assert_eq!(g.optimal_choices(0).unwrap(), BTreeSet::from([a1]));
        let b3 = g.choice_id("b3").unwrap();
        assert_eq!(g.optimal_choices(2).unwrap(), BTreeSet::from([b3]));
        assert!(g.optimal_choices(1).unwrap().is_empty());

        let a3 = g.choice_id("a3").unwrap();
        assert!(matches!(
            g.compare_choices(a1, a3),
            Err(GameError::SamePlayerViolation { .. })
        ));

        let universal = game(&[&["a1", "b1"], &["a2"]], &[&["a1", "a2"], &["b1", "a2"]]);
        let a1 = universal.choice_id("a1").unwrap();
        let b1 = universal.choice_id("b1").unwrap();
        assert_eq!(
            universal.compare_choices(a1, b1).unwrap(),
            CompareOutcome::Equivalent
        );
        // a single choice dominates vacuously
        let a2 = universal.choice_id("a2").unwrap();
        assert_eq!(universal.optimal_choices(1).unwrap(), BTreeSet::from([a2]));
    }

    #[test]
    fn surely_winning_choices_are_optimal() {
        let g = path2();
        for p in 0..g.players() {
            let winning: BTreeSet<ChoiceId> = g
                .choices(p)
                .iter()
                .copied()
                .filter(|&c| g.choice_status(c) == ChoiceStatus::SurelyWinning)
                .collect();
            if !winning.is_empty() {
                assert_eq!(g.optimal_choices(p).unwrap(), winning);
            }
        }
    }

    #[test]
    fn restriction() {
        let g = overlap3();
        let kept = vec![
            BTreeSet::from([g.choice_id("a1").unwrap()]),
            BTreeSet::from([g.choice_id("a2").unwrap(), g.choice_id("b2").unwrap()]),
            BTreeSet::from([g.choice_id("b3").unwrap()]),
        ];
        let r = g.restrict(&kept).unwrap();
        assert_eq!(r.win().len(), 2);
        assert!(r.profile_from_names(&["a1", "a2", "b3"]).is_ok());

        let identity = g.restrict(&g.full_choice_sets()).unwrap();
        assert_eq!(identity, g);

        let err = g.restrict(&[BTreeSet::new(), kept[1].clone(), kept[2].clone()]);
        assert_eq!(err.unwrap_err(), GameError::EmptyRestriction { player: 0 });
    }

    #[test]
    fn restriction_composes() {
        let g = overlap3();
        let larger = vec![
            BTreeSet::from([g.choice_id("a1").unwrap(), g.choice_id("b1").unwrap()]),
            BTreeSet::from([g.choice_id("a2").unwrap(), g.choice_id("b2").unwrap()]),
            BTreeSet::from([g.choice_id("b3").unwrap()]),
        ];
        let mid = g.restrict(&larger).unwrap();
        let smaller_names = [vec!["a1"], vec!["b2"], vec!["b3"]];
        let to_sets = |game: &Game| -> Vec<BTreeSet<ChoiceId>> {
            smaller_names
                .iter()
                .map(|names| names.iter().map(|n| game.choice_id(n).unwrap()).collect())
                .collect()
        };
        let double = mid.restrict(&to_sets(&mid)).unwrap();
        let single = g.restrict(&to_sets(&g)).unwrap();
        assert_eq!(double, single);
    }

    #[test]
    fn complement_involution_and_status_swap() {
        let g = overlap3();
        assert_eq!(g.complement().complement(), g);

        let c = g.complement();
        for id in g.all_choices() {
            let cid = c.choice_id(g.name(id)).unwrap();
            match g.choice_status(id) {
                ChoiceStatus::SurelyWinning => {
                    assert_eq!(c.choice_status(cid), ChoiceStatus::SurelyLosing)
                }
                ChoiceStatus::SurelyLosing => {
                    assert_eq!(c.choice_status(cid), ChoiceStatus::SurelyWinning)
                }
                ChoiceStatus::Contingent => {
                    assert_eq!(c.choice_status(cid), ChoiceStatus::Contingent)
                }
            }
        }

        let universal = game(
            &[&["a1", "b1"], &["a2", "b2"]],
            &[&["a1", "a2"], &["a1", "b2"], &["b1", "a2"], &["b1", "b2"]],
        );
        assert!(universal.complement().win().is_empty());

        let single = game(&[&["x"], &["y"], &["z"]], &[&["x", "y", "z"]]);
        assert!(single.complement().win().is_empty());
    }

    #[test]
    fn better_is_a_strict_partial_order() {
        let games = [
            overlap3(),
            path2(),
            game(
                &[&["a1", "b1", "c1"], &["a2", "b2", "c2"]],
                &[
                    &["a1", "a2"],
                    &["b1", "a2"],
                    &["b1", "b2"],
                    &["c1", "b2"],
                    &["c1", "c2"],
                ],
            ),
        ];
        for g in &games {
            for p in 0..g.players() {
                let cs = g.choices(p);
                for &x in cs {
                    for &y in cs {
                        if x == y {
                            continue;
                        }
                        let xy = g.compare_choices(x, y).unwrap();
                        // antisymmetry
                        let yx = g.compare_choices(y, x).unwrap();
                        if xy == CompareOutcome::Better {
                            assert_eq!(yx, CompareOutcome::Worse);
                        }
                        for &z in cs {
                            if z == x || z == y {
                                continue;
                            }
                            let yz = g.compare_choices(y, z).unwrap();
                            if xy == CompareOutcome::Better && yz == CompareOutcome::Better {
                                assert_eq!(
                                    g.compare_choices(x, z).unwrap(),
                                    CompareOutcome::Better
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn one_player_games_work() {
        let g = game(&[&["a", "b"]], &[&["a"]]);
        let a = g.choice_id("a").unwrap();
        let b = g.choice_id("b").unwrap();
        assert_eq!(g.others_product_size(0), 1);
        assert_eq!(g.choice_status(a), ChoiceStatus::SurelyWinning);
        assert_eq!(g.choice_status(b), ChoiceStatus::SurelyLosing);
        assert_eq!(g.winning_extension(a).arity(), 0);
        assert_eq!(g.winning_extension(a).len(), 1);
    }
}
