//! Renamings between games: role-preserving automorphisms, player
//! renamings, full renamings, and the equivalence partitions they
//! induce on choices.
//!
//! A full renaming between games G and H is a player permutation
//! together with a choice bijection that carries G's winning relation
//! onto H's. Automorphisms are the full self-renamings with the
//! identity player permutation. The search backtracks over per-player
//! choice bijections, pruned by an iterated co-occurrence colouring;
//! the unpruned candidate count is checked against a [`Limits`] budget
//! first.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::game::{ChoiceId, Game, GameError, PlayerId};
use crate::limits::{factorial, Limits, SizeError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error(transparent)]
    SizeLimit(#[from] SizeError),
    #[error("malformed renaming: {reason}")]
    MalformedRenaming { reason: String },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// A full renaming from a source game to a target game: a permutation
/// of player roles plus a bijective renaming of choices.
///
/// `player_map[i]` is the target role of source player i. A source
/// choice owned by player i maps to a target choice owned by
/// `player_map[i]`. Target ids are only meaningful against the game
/// the renaming was searched against (or the game `apply_renaming`
/// builds).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FullRenaming {
    player_map: Vec<PlayerId>,
    target_ids: Vec<ChoiceId>,
    target_names: Vec<String>,
}

impl FullRenaming {
    /// Builds a renaming from a player permutation and per-source-choice
    /// target names. Target ids follow the layout `apply_renaming`
    /// produces: target role j takes the images of the source player
    /// with `player_map[i] = j`, in source declaration order.
    pub fn from_parts(
        g: &Game,
        player_map: Vec<PlayerId>,
        target_names: Vec<String>,
    ) -> Result<FullRenaming, SymmetryError> {
        let n = g.players();
        if player_map.len() != n || !is_permutation(&player_map) {
            return Err(SymmetryError::MalformedRenaming {
                reason: "player map is not a permutation".into(),
            });
        }
        if target_names.len() != g.choice_count() {
            return Err(SymmetryError::MalformedRenaming {
                reason: "one target name per choice required".into(),
            });
        }
        let unique: BTreeSet<&String> = target_names.iter().collect();
        if unique.len() != target_names.len() || target_names.iter().any(|s| s.is_empty()) {
            return Err(SymmetryError::MalformedRenaming {
                reason: "target names must be unique and nonempty".into(),
            });
        }
        let inverse = invert_permutation(&player_map);
        let mut target_ids = vec![ChoiceId(0); g.choice_count()];
        let mut next = 0u32;
        for &source_player in &inverse {
            for &c in g.choices(source_player) {
                target_ids[c.index()] = ChoiceId(next);
                next += 1;
            }
        }
        Ok(FullRenaming {
            player_map,
            target_ids,
            target_names,
        })
    }

    pub fn identity(g: &Game) -> FullRenaming {
        FullRenaming {
            player_map: (0..g.players()).collect(),
            target_ids: g.all_choices().collect(),
            target_names: g.all_choices().map(|c| g.name(c).to_string()).collect(),
        }
    }

    pub fn player_map(&self) -> &[PlayerId] {
        &self.player_map
    }

    pub fn image_player(&self, i: PlayerId) -> PlayerId {
        self.player_map[i]
    }

    pub fn is_role_preserving(&self) -> bool {
        self.player_map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Image of a source choice as an id in the target game.
    pub fn image_id(&self, c: ChoiceId) -> ChoiceId {
        self.target_ids[c.index()]
    }

    pub fn image_name(&self, c: ChoiceId) -> &str {
        &self.target_names[c.index()]
    }

    pub fn map_set(&self, set: &BTreeSet<ChoiceId>) -> BTreeSet<ChoiceId> {
        set.iter().map(|&c| self.image_id(c)).collect()
    }

    pub fn map_set_names(&self, set: &BTreeSet<ChoiceId>) -> BTreeSet<String> {
        set.iter()
            .map(|&c| self.image_name(c).to_string())
            .collect()
    }

    /// Composition `second ∘ self` for self-renamings of one game.
    pub fn compose(&self, second: &FullRenaming) -> FullRenaming {
        let player_map = self
            .player_map
            .iter()
            .map(|&j| second.player_map[j])
            .collect();
        let target_ids: Vec<ChoiceId> = self
            .target_ids
            .iter()
            .map(|&c| second.target_ids[c.index()])
            .collect();
        let target_names = target_ids
            .iter()
            .map(|&c| {
                let back = second
                    .target_ids
                    .iter()
                    .position(|&t| t == c)
                    .expect("bijection");
                second.target_names[back].clone()
            })
            .collect();
        FullRenaming {
            player_map,
            target_ids,
            target_names,
        }
    }

    /// Inverse of a self-renaming of `g`.
    pub fn invert(&self, g: &Game) -> FullRenaming {
        let player_map = invert_permutation(&self.player_map);
        let mut target_ids = vec![ChoiceId(0); self.target_ids.len()];
        for (src, &dst) in self.target_ids.iter().enumerate() {
            target_ids[dst.index()] = ChoiceId(src as u32);
        }
        let target_names = target_ids.iter().map(|&c| g.name(c).to_string()).collect();
        FullRenaming {
            player_map,
            target_ids,
            target_names,
        }
    }
}

fn is_permutation(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    for &j in map {
        if j >= map.len() || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

fn invert_permutation(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &j) in map.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Applies a renaming, producing the renamed game. Target role j takes
/// the images of the source player mapped to j, in source declaration
/// order; the winning relation is carried along. Applying any full
/// self-renaming reproduces a game equal to the input.
pub fn apply_renaming(g: &Game, r: &FullRenaming) -> Result<Game, SymmetryError> {
    if r.player_map.len() != g.players() || !is_permutation(&r.player_map) {
        return Err(SymmetryError::MalformedRenaming {
            reason: "player map does not match the game".into(),
        });
    }
    if r.target_ids.len() != g.choice_count() {
        return Err(SymmetryError::MalformedRenaming {
            reason: "choice map does not match the game".into(),
        });
    }
    let inverse = invert_permutation(&r.player_map);
    let choice_sets: Vec<Vec<String>> = (0..g.players())
        .map(|j| {
            g.choices(inverse[j])
                .iter()
                .map(|&c| r.image_name(c).to_string())
                .collect()
        })
        .collect();
    let winning: Vec<Vec<String>> = g
        .win()
        .iter()
        .map(|w| {
            let mut image = vec![String::new(); g.players()];
            for (p, &c) in w.entries().iter().enumerate() {
                image[r.player_map[p]] = r.image_name(c).to_string();
            }
            image
        })
        .collect();
    Game::build(&choice_sets, &winning).map_err(|e| SymmetryError::MalformedRenaming {
        reason: e.to_string(),
    })
}

/// Checks that (player_map, ids) carries g's structure onto h exactly.
pub fn is_renaming_between(g: &Game, h: &Game, player_map: &[PlayerId], ids: &[ChoiceId]) -> bool {
    if g.players() != h.players()
        || !is_permutation(player_map)
        || ids.len() != g.choice_count()
        || h.choice_count() != g.choice_count()
        || g.win().len() != h.win().len()
    {
        return false;
    }
    let mut used = vec![false; h.choice_count()];
    for c in g.all_choices() {
        let img = ids[c.index()];
        if img.index() >= used.len() || used[img.index()] {
            return false;
        }
        used[img.index()] = true;
        if h.owner(img) != player_map[g.owner(c)] {
            return false;
        }
    }
    for w in g.win() {
        let mut image = vec![ChoiceId(0); g.players()];
        for (p, &c) in w.entries().iter().enumerate() {
            image[player_map[p]] = ids[c.index()];
        }
        if !h.is_winning(&crate::game::Profile::new(image)) {
            return false;
        }
    }
    true
}

/// Partition of a universe of choices into disjoint cells, ordered by
/// smallest member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    universe: Vec<ChoiceId>,
    cells: Vec<Vec<ChoiceId>>,
    cell_of: Vec<Option<usize>>,
}

impl Partition {
    fn from_union_find(universe: Vec<ChoiceId>, uf: &mut UnionFind, id_space: usize) -> Partition {
        let mut roots: Vec<(usize, Vec<ChoiceId>)> = Vec::new();
        for &c in &universe {
            let root = uf.find(c.index());
            match roots.iter_mut().find(|(r, _)| *r == root) {
                Some((_, cell)) => cell.push(c),
                None => roots.push((root, vec![c])),
            }
        }
        let mut cells: Vec<Vec<ChoiceId>> = roots
            .into_iter()
            .map(|(_, mut cell)| {
                cell.sort();
                cell
            })
            .collect();
        cells.sort_by_key(|cell| cell[0]);
        let mut cell_of = vec![None; id_space];
        for (i, cell) in cells.iter().enumerate() {
            for &c in cell {
                cell_of[c.index()] = Some(i);
            }
        }
        Partition {
            universe,
            cells,
            cell_of,
        }
    }

    pub fn universe(&self) -> &[ChoiceId] {
        &self.universe
    }

    pub fn cells(&self) -> &[Vec<ChoiceId>] {
        &self.cells
    }

    /// Cell of a choice; `None` when the choice is outside the universe.
    pub fn cell_of(&self, c: ChoiceId) -> Option<&[ChoiceId]> {
        self.cell_of
            .get(c.index())
            .copied()
            .flatten()
            .map(|i| self.cells[i].as_slice())
    }

    pub fn same_cell(&self, a: ChoiceId, b: ChoiceId) -> bool {
        match (self.cell_of.get(a.index()), self.cell_of.get(b.index())) {
            (Some(Some(x)), Some(Some(y))) => x == y,
            _ => false,
        }
    }

    pub fn cells_by_name(&self, g: &Game) -> Vec<Vec<String>> {
        self.cells
            .iter()
            .map(|cell| cell.iter().map(|&c| g.name(c).to_string()).collect())
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] == i {
            i
        } else {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
            root
        }
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[rj] = ri;
        }
    }
}

/// Iterated co-occurrence colouring, computed jointly over two games so
/// the colours are comparable. Invariant under full renamings: the
/// initial colour is the winning-extension size and each round refines
/// by the multiset of co-occurring colours across winning profiles.
fn joint_colors(g: &Game, h: &Game) -> (Vec<u32>, Vec<u32>) {
    let mut colors_g: Vec<u32> = g
        .all_choices()
        .map(|c| g.extension_size(c) as u32)
        .collect();
    let mut colors_h: Vec<u32> = h
        .all_choices()
        .map(|c| h.extension_size(c) as u32)
        .collect();
    loop {
        let before = distinct(&colors_g, &colors_h);
        let sig_g = cooccurrence_signatures(g, &colors_g);
        let sig_h = cooccurrence_signatures(h, &colors_h);
        let mut key_map: std::collections::BTreeMap<(u32, Vec<u32>), u32> =
            std::collections::BTreeMap::new();
        colors_g = recolor(&colors_g, sig_g, &mut key_map);
        colors_h = recolor(&colors_h, sig_h, &mut key_map);
        if distinct(&colors_g, &colors_h) == before {
            return (colors_g, colors_h);
        }
    }
}

fn recolor(
    old: &[u32],
    sigs: Vec<Vec<u32>>,
    key_map: &mut std::collections::BTreeMap<(u32, Vec<u32>), u32>,
) -> Vec<u32> {
    sigs.into_iter()
        .enumerate()
        .map(|(i, sig)| {
            let next = key_map.len() as u32;
            *key_map.entry((old[i], sig)).or_insert(next)
        })
        .collect()
}

fn distinct(a: &[u32], b: &[u32]) -> usize {
    let set: BTreeSet<u32> = a.iter().chain(b.iter()).copied().collect();
    set.len()
}

/// Per choice: the sorted per-profile co-occurring colour vectors,
/// flattened with separators into one comparable key.
fn cooccurrence_signatures(g: &Game, colors: &[u32]) -> Vec<Vec<u32>> {
    let mut sigs: Vec<Vec<Vec<u32>>> = vec![Vec::new(); g.choice_count()];
    for w in g.win() {
        for (p, &c) in w.entries().iter().enumerate() {
            let mut others: Vec<u32> = w
                .entries()
                .iter()
                .enumerate()
                .filter(|(q, _)| *q != p)
                .map(|(_, &d)| colors[d.index()])
                .collect();
            others.sort_unstable();
            sigs[c.index()].push(others);
        }
    }
    sigs.into_iter()
        .map(|mut per_profile| {
            per_profile.sort();
            per_profile
                .into_iter()
                .flat_map(|mut v| {
                    v.push(u32::MAX); // separator between profiles
                    v
                })
                .collect()
        })
        .collect()
}

/// All choice bijections realising a fixed player permutation from g to
/// h, as target-id vectors indexed by source id. Deterministic order.
fn search_choice_maps(
    g: &Game,
    h: &Game,
    player_map: &[PlayerId],
    colors_g: &[u32],
    colors_h: &[u32],
    limits: &Limits,
) -> Result<Vec<Vec<ChoiceId>>, SizeError> {
    if g.win().len() != h.win().len() {
        return Ok(Vec::new());
    }
    for (i, &target) in player_map.iter().enumerate() {
        if g.choices(i).len() != h.choices(target).len() {
            return Ok(Vec::new());
        }
        let mut cg: Vec<u32> = g.choices(i).iter().map(|c| colors_g[c.index()]).collect();
        let mut ch: Vec<u32> = h
            .choices(target)
            .iter()
            .map(|c| colors_h[c.index()])
            .collect();
        cg.sort_unstable();
        ch.sort_unstable();
        if cg != ch {
            return Ok(Vec::new());
        }
    }

    let mut estimate: u128 = 1;
    for i in 0..g.players() {
        let mut class_sizes: std::collections::BTreeMap<u32, usize> =
            std::collections::BTreeMap::new();
        for &c in g.choices(i) {
            *class_sizes.entry(colors_g[c.index()]).or_insert(0) += 1;
        }
        for (_, size) in class_sizes {
            estimate = estimate.saturating_mul(factorial(size));
        }
    }
    limits.check(estimate, "choice bijection search")?;

    // source choices in id order; per winning profile a countdown to
    // full assignment
    let order: Vec<ChoiceId> = g.all_choices().collect();
    let win_profiles: Vec<&crate::game::Profile> = g.win().iter().collect();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); g.choice_count()];
    for (wi, w) in win_profiles.iter().enumerate() {
        for &c in w.entries() {
            containing[c.index()].push(wi);
        }
    }

    struct Dfs<'a> {
        g: &'a Game,
        h: &'a Game,
        player_map: &'a [PlayerId],
        colors_g: &'a [u32],
        colors_h: &'a [u32],
        order: &'a [ChoiceId],
        win_profiles: &'a [&'a crate::game::Profile],
        containing: &'a [Vec<usize>],
        map: Vec<Option<ChoiceId>>,
        used: Vec<bool>,
        remaining: Vec<usize>,
        results: Vec<Vec<ChoiceId>>,
        nodes: u128,
        budget: u128,
    }

    impl Dfs<'_> {
        fn run(&mut self, depth: usize) -> Result<(), SizeError> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(SizeError {
                    estimate: self.nodes,
                    budget: self.budget,
                    context: "choice bijection search nodes",
                });
            }
            if depth == self.order.len() {
                self.results
                    .push(self.map.iter().map(|c| c.unwrap()).collect());
                return Ok(());
            }
            let c = self.order[depth];
            let source_player = self.g.owner(c);
            let targets: Vec<ChoiceId> = self
                .h
                .choices(self.player_map[source_player])
                .iter()
                .copied()
                .filter(|d| {
                    !self.used[d.index()] && self.colors_h[d.index()] == self.colors_g[c.index()]
                })
                .collect();
            for d in targets {
                self.map[c.index()] = Some(d);
                self.used[d.index()] = true;
                let mut completed = Vec::new();
                let mut consistent = true;
                for &wi in &self.containing[c.index()] {
                    self.remaining[wi] -= 1;
                    completed.push(wi);
                    if self.remaining[wi] == 0 && consistent {
                        let w = self.win_profiles[wi];
                        let mut image = vec![ChoiceId(0); self.g.players()];
                        for (p, &src) in w.entries().iter().enumerate() {
                            image[self.player_map[p]] = self.map[src.index()].unwrap();
                        }
                        if !self.h.is_winning(&crate::game::Profile::new(image)) {
                            consistent = false;
                        }
                    }
                }
                if consistent {
                    self.run(depth + 1)?;
                }
                for wi in completed {
                    self.remaining[wi] += 1;
                }
                self.used[d.index()] = false;
                self.map[c.index()] = None;
            }
            Ok(())
        }
    }

    let mut dfs = Dfs {
        g,
        h,
        player_map,
        colors_g,
        colors_h,
        order: &order,
        win_profiles: &win_profiles,
        containing: &containing,
        map: vec![None; g.choice_count()],
        used: vec![false; h.choice_count()],
        remaining: win_profiles.iter().map(|w| w.len()).collect(),
        results: Vec::new(),
        nodes: 0,
        budget: limits.search_budget,
    };
    dfs.run(0)?;
    Ok(dfs.results)
}

fn renaming_from_ids(
    h: &Game,
    player_map: Vec<PlayerId>,
    target_ids: Vec<ChoiceId>,
) -> FullRenaming {
    let target_names = target_ids.iter().map(|&c| h.name(c).to_string()).collect();
    FullRenaming {
        player_map,
        target_ids,
        target_names,
    }
}

/// All full renamings from g to h, sorted by player permutation and
/// then by choice map. Empty when the games are not structurally
/// equivalent; unequal player counts yield an empty result rather than
/// an error.
pub fn full_renamings_with(
    g: &Game,
    h: &Game,
    limits: &Limits,
) -> Result<Vec<FullRenaming>, SymmetryError> {
    if g.players() != h.players() {
        return Ok(Vec::new());
    }
    let (colors_g, colors_h) = joint_colors(g, h);
    let mut out = Vec::new();
    for player_map in (0..g.players()).permutations(g.players()) {
        if (0..g.players()).any(|i| g.choices(i).len() != h.choices(player_map[i]).len()) {
            continue;
        }
        for ids in search_choice_maps(g, h, &player_map, &colors_g, &colors_h, limits)? {
            out.push(renaming_from_ids(h, player_map.clone(), ids));
        }
    }
    Ok(out)
}

pub fn full_renamings(g: &Game, h: &Game) -> Result<Vec<FullRenaming>, SymmetryError> {
    full_renamings_with(g, h, &Limits::default())
}

/// The automorphisms of a game: full self-renamings with the identity
/// player permutation. Always contains the identity.
pub fn automorphisms_with(g: &Game, limits: &Limits) -> Result<Vec<FullRenaming>, SymmetryError> {
    let (colors_g, colors_h) = joint_colors(g, g);
    let player_map: Vec<PlayerId> = (0..g.players()).collect();
    let maps = search_choice_maps(g, g, &player_map, &colors_g, &colors_h, limits)?;
    Ok(maps
        .into_iter()
        .map(|ids| renaming_from_ids(g, player_map.clone(), ids))
        .collect())
}

pub fn automorphisms(g: &Game) -> Result<Vec<FullRenaming>, SymmetryError> {
    automorphisms_with(g, &Limits::default())
}

/// Partition of one player's choices into automorphism orbits.
pub fn choice_equivalence_with(
    g: &Game,
    player: PlayerId,
    limits: &Limits,
) -> Result<Partition, SymmetryError> {
    if player >= g.players() {
        return Err(SymmetryError::Game(GameError::NoSuchPlayer { player }));
    }
    let autos = automorphisms_with(g, limits)?;
    let mut uf = UnionFind::new(g.choice_count());
    for r in &autos {
        for c in g.all_choices() {
            uf.union(c.index(), r.image_id(c).index());
        }
    }
    Ok(Partition::from_union_find(
        g.choices(player).to_vec(),
        &mut uf,
        g.choice_count(),
    ))
}

pub fn choice_equivalence(g: &Game, player: PlayerId) -> Result<Partition, SymmetryError> {
    choice_equivalence_with(g, player, &Limits::default())
}

/// Partition of all choices into orbits under full self-renamings
/// (structural equivalence).
pub fn structural_classes_with(g: &Game, limits: &Limits) -> Result<Partition, SymmetryError> {
    let renamings = full_renamings_with(g, g, limits)?;
    let mut uf = UnionFind::new(g.choice_count());
    for r in &renamings {
        for c in g.all_choices() {
            uf.union(c.index(), r.image_id(c).index());
        }
    }
    Ok(Partition::from_union_find(
        g.all_choices().collect(),
        &mut uf,
        g.choice_count(),
    ))
}

pub fn structural_classes(g: &Game) -> Result<Partition, SymmetryError> {
    structural_classes_with(g, &Limits::default())
}

/// Per-player automorphism-orbit partitions in one pass.
pub fn all_choice_equivalences_with(
    g: &Game,
    limits: &Limits,
) -> Result<Vec<Partition>, SymmetryError> {
    let autos = automorphisms_with(g, limits)?;
    let mut uf = UnionFind::new(g.choice_count());
    for r in &autos {
        for c in g.all_choices() {
            uf.union(c.index(), r.image_id(c).index());
        }
    }
    Ok((0..g.players())
        .map(|p| Partition::from_union_find(g.choices(p).to_vec(), &mut uf, g.choice_count()))
        .collect())
}
