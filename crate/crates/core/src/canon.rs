//! Canonical encodings of games and corpus generation.
//!
//! A presentation of a game is a player ordering together with one
//! ordering per choice set. Its encoding is the sorted count sequence
//! followed by the winning relation as a bitstring over the product
//! space in lexicographic index order. The canonical form is the
//! minimal encoding over all presentations; two games share a
//! canonical form exactly when some full renaming connects them, which
//! makes the form usable as a deduplication key and as the anchor for
//! the canonical structural protocol.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::game::Game;
use crate::limits::{factorial, Limits, SizeError};

/// Minimal encoding of a game: ascending per-player choice counts plus
/// the winning bitstring (bit 0 is the most significant).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm {
    pub counts: Vec<usize>,
    pub bits: Vec<u64>,
}

fn pack_bit(bits: &mut [u64], pos: usize) {
    bits[pos / 64] |= 1u64 << (63 - (pos % 64));
}

fn bit_set(bits: &[u64], pos: usize) -> bool {
    bits[pos / 64] & (1u64 << (63 - (pos % 64))) != 0
}

/// Computes the canonical form by enumerating presentations. The
/// presentation count (orderings of equal-count players times the
/// product of per-player factorials) is checked against the budget.
pub fn canonical_form(g: &Game, limits: &Limits) -> Result<CanonicalForm, SizeError> {
    let n = g.players();
    let shape: Vec<usize> = (0..n).map(|p| g.choices(p).len()).collect();
    let mut counts = shape.clone();
    counts.sort_unstable();

    let player_orders: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .filter(|order| (0..n).all(|i| shape[order[i]] == counts[i]))
        .collect();
    let mut estimate: u128 = player_orders.len() as u128;
    for &k in &shape {
        estimate = estimate.saturating_mul(factorial(k));
    }
    limits.check(estimate, "canonical form presentations")?;

    // per original player: every mapping local-index -> new-index
    let perms: Vec<Vec<Vec<usize>>> = shape
        .iter()
        .map(|&k| (0..k).permutations(k).collect())
        .collect();

    // local index of each choice within its owner's declaration order
    let mut local = vec![0usize; g.choice_count()];
    for p in 0..n {
        for (li, &c) in g.choices(p).iter().enumerate() {
            local[c.index()] = li;
        }
    }
    let win_local: Vec<Vec<usize>> = g
        .win()
        .iter()
        .map(|w| w.entries().iter().map(|&c| local[c.index()]).collect())
        .collect();

    let total_cells: usize = counts.iter().product();
    let words = total_cells.div_ceil(64).max(1);
    let mut strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * counts[i + 1];
    }

    let mut best: Option<Vec<u64>> = None;
    for order in &player_orders {
        let mut cursor = vec![0usize; n];
        loop {
            let mut bits = vec![0u64; words];
            for w in &win_local {
                let mut pos = 0usize;
                for (axis, &orig_player) in order.iter().enumerate() {
                    let new_index = perms[orig_player][cursor[orig_player]][w[orig_player]];
                    pos += new_index * strides[axis];
                }
                pack_bit(&mut bits, pos);
            }
            if best.as_ref().map(|b| bits < *b).unwrap_or(true) {
                best = Some(bits);
            }
            let mut p = n;
            let mut rolled = true;
            while p > 0 {
                p -= 1;
                cursor[p] += 1;
                if cursor[p] < perms[p].len() {
                    rolled = false;
                    break;
                }
                cursor[p] = 0;
            }
            if rolled {
                break;
            }
        }
    }

    Ok(CanonicalForm {
        counts,
        bits: best.expect("at least one presentation"),
    })
}

/// Builds the representative game of a canonical form, with choices
/// named `p<i>_c<j>`.
pub fn canonical_game(form: &CanonicalForm) -> Game {
    let n = form.counts.len();
    let choice_sets: Vec<Vec<String>> = form
        .counts
        .iter()
        .enumerate()
        .map(|(p, &k)| (0..k).map(|j| format!("p{}_c{}", p + 1, j)).collect())
        .collect();
    let total_cells: usize = form.counts.iter().product();
    let mut winning = Vec::new();
    for pos in 0..total_cells {
        if !bit_set(&form.bits, pos) {
            continue;
        }
        let mut rest = pos;
        let mut profile = vec![String::new(); n];
        for i in (0..n).rev() {
            profile[i] = choice_sets[i][rest % form.counts[i]].clone();
            rest /= form.counts[i];
        }
        winning.push(profile);
    }
    Game::build(&choice_sets, &winning).expect("canonical forms are valid games")
}

fn game_from_mask(shape: &[usize], mask: u64) -> Game {
    let n = shape.len();
    let choice_sets: Vec<Vec<String>> = shape
        .iter()
        .enumerate()
        .map(|(p, &k)| (0..k).map(|j| format!("p{}_c{}", p + 1, j)).collect())
        .collect();
    let total_cells: usize = shape.iter().product();
    let mut winning = Vec::new();
    for pos in 0..total_cells {
        if mask & (1u64 << pos) == 0 {
            continue;
        }
        let mut rest = pos;
        let mut profile = vec![String::new(); n];
        for i in (0..n).rev() {
            profile[i] = choice_sets[i][rest % shape[i]].clone();
            rest /= shape[i];
        }
        winning.push(profile);
    }
    Game::build(&choice_sets, &winning).expect("mask games are valid")
}

/// One representative per full-renaming isomorphism class over all
/// winning relations on the given shape, as canonical games in
/// first-occurrence order of the mask enumeration.
pub fn enumerate_shape(shape: &[usize], limits: &Limits) -> Result<Vec<Game>, SizeError> {
    assert!(!shape.is_empty() && shape.iter().all(|&k| k >= 1));
    let cells: usize = shape.iter().product();
    limits.check(
        (1u128 << cells.min(127)).saturating_mul(4),
        "shape enumeration",
    )?;
    assert!(cells <= 63, "shape too large for exhaustive enumeration");

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << cells) {
        let g = game_from_mask(shape, mask);
        let form = canonical_form(&g, limits)?;
        if seen.insert(form.clone()) {
            out.push(canonical_game(&form));
        }
    }
    Ok(out)
}

/// All shapes with the given player count and per-player sizes between
/// 1 and `max_choices`, up to player reordering.
pub fn sorted_shapes(players: usize, max_choices: usize) -> Vec<Vec<usize>> {
    fn rec(
        players: usize,
        min: usize,
        max: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if prefix.len() == players {
            out.push(prefix.clone());
            return;
        }
        for k in min..=max {
            prefix.push(k);
            rec(players, k, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(players, 1, max_choices, &mut Vec::new(), &mut out);
    out
}

/// Exhaustive corpus: one representative per isomorphism class over
/// every shape with at most `max_choices` choices per player.
pub fn enumerate_corpus(
    players: usize,
    max_choices: usize,
    limits: &Limits,
) -> Result<Vec<Game>, SizeError> {
    let mut out = Vec::new();
    for shape in sorted_shapes(players, max_choices) {
        out.extend(enumerate_shape(&shape, limits)?);
    }
    Ok(out)
}

/// Samples games with the given player count and per-player sizes up to
/// `max_choices`, deduplicated by canonical form, until `target`
/// distinct isomorphism classes are collected (or the attempt budget
/// runs out). Deterministic for a fixed seed.
pub fn sample_corpus(
    players: usize,
    max_choices: usize,
    target: usize,
    seed: u64,
    limits: &Limits,
) -> Result<Vec<Game>, SizeError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let densities = [0.2, 0.35, 0.5, 0.65, 0.8];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts: usize = 0;
    let max_attempts = target.saturating_mul(1000).max(10_000);
    while out.len() < target && attempts < max_attempts {
        attempts += 1;
        let shape: Vec<usize> = (0..players)
            .map(|_| rng.random_range(1..=max_choices))
            .collect();
        let cells: usize = shape.iter().product();
        let density = densities[attempts % densities.len()];
        let mut mask = 0u64;
        for pos in 0..cells {
            if rng.random_bool(density) {
                mask |= 1u64 << pos;
            }
        }
        let g = game_from_mask(&shape, mask);
        let form = canonical_form(&g, limits)?;
        if seen.insert(form.clone()) {
            out.push(canonical_game(&form));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{game_from_expression, make_product};
    use crate::symmetry::full_renamings;

    #[test]
    fn canonical_form_is_renaming_invariant() {
        let g = make_product(&[2, 3], true).unwrap();
        let h = make_product(&[3, 2], true).unwrap();
        let limits = Limits::default();
        assert_eq!(
            canonical_form(&g, &limits).unwrap(),
            canonical_form(&h, &limits).unwrap()
        );

        let z3a = game_from_expression("Z3").unwrap();
        let z3b = Game::build(
            &[vec!["x", "y", "z"], vec!["u", "v", "w"]],
            &[
                vec!["x", "u"],
                vec!["y", "u"],
                vec!["y", "v"],
                vec!["z", "v"],
                vec!["z", "w"],
            ],
        )
        .unwrap();
        assert_eq!(
            canonical_form(&z3a, &limits).unwrap(),
            canonical_form(&z3b, &limits).unwrap()
        );

        let square = make_product(&[2, 2], true).unwrap();
        let z2 = game_from_expression("Z2").unwrap();
        assert_ne!(
            canonical_form(&square, &limits).unwrap(),
            canonical_form(&z2, &limits).unwrap()
        );
    }

    #[test]
    fn canonical_game_round_trips() {
        let limits = Limits::default();
        for text in ["Z3", "2x2", "1x2 + 2x1", "1x1x2", "2(1x1)"] {
            let g = game_from_expression(text).unwrap();
            let form = canonical_form(&g, &limits).unwrap();
            let k = canonical_game(&form);
            assert_eq!(canonical_form(&k, &limits).unwrap(), form, "{text}");
            assert!(!full_renamings(&k, &g).unwrap().is_empty(), "{text}");
        }
    }

    #[test]
    fn enumeration_counts() {
        let limits = Limits::default();
        assert_eq!(enumerate_shape(&[1, 1], &limits).unwrap().len(), 2);
        assert_eq!(enumerate_shape(&[2, 1], &limits).unwrap().len(), 3);
    }

    #[test]
    fn enumeration_matches_orbit_counting() {
        // Burnside-style oracle on the 2x2 shape: orbits of subsets of
        // the 4 winning cells under row swaps, column swaps and
        // transposition.
        let limits = Limits::default();
        let found = enumerate_shape(&[2, 2], &limits).unwrap().len();

        let cells: Vec<(usize, usize)> = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
        let mut group: Vec<Vec<usize>> = Vec::new();
        for row_swap in [false, true] {
            for col_swap in [false, true] {
                for transpose in [false, true] {
                    let perm = cells
                        .iter()
                        .map(|&(mut r, mut c)| {
                            if row_swap {
                                r = 1 - r;
                            }
                            if col_swap {
                                c = 1 - c;
                            }
                            let (r, c) = if transpose { (c, r) } else { (r, c) };
                            cells.iter().position(|&x| x == (r, c)).unwrap()
                        })
                        .collect();
                    group.push(perm);
                }
            }
        }
        let mut orbits = std::collections::BTreeSet::new();
        for mask in 0u8..16 {
            let orbit_min = group
                .iter()
                .map(|perm| {
                    let mut image = 0u8;
                    for (b, &target) in perm.iter().enumerate() {
                        if mask & (1 << b) != 0 {
                            image |= 1 << target;
                        }
                    }
                    image
                })
                .min()
                .unwrap();
            orbits.insert(orbit_min);
        }
        assert_eq!(found, orbits.len());
    }

    #[test]
    fn corpus_members_are_pairwise_non_isomorphic() {
        let limits = Limits::default();
        let corpus = enumerate_corpus(2, 2, &limits).unwrap();
        for (i, g) in corpus.iter().enumerate() {
            for h in corpus.iter().skip(i + 1) {
                assert!(full_renamings(g, h).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_deduplicated() {
        let limits = Limits::default();
        let a = sample_corpus(3, 2, 30, 7, &limits).unwrap();
        let b = sample_corpus(3, 2, 30, 7, &limits).unwrap();
        assert_eq!(a.len(), 30);
        assert_eq!(a, b);
        let forms: BTreeSet<CanonicalForm> = a
            .iter()
            .map(|g| canonical_form(g, &limits).unwrap())
            .collect();
        assert_eq!(forms.len(), a.len());
    }
}
