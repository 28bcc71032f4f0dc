//! Named example games: the separating witnesses used by the
//! verification suite and the tests.

use crate::game::Game;

fn game(choices: &[&[&str]], win: &[&[&str]]) -> Game {
    let cs: Vec<Vec<&str>> = choices.iter().map(|s| s.to_vec()).collect();
    let ws: Vec<Vec<&str>> = win.iter().map(|s| s.to_vec()).collect();
    Game::build(&cs, &ws).expect("example games are valid")
}

/// n-player game with choices a_i/b_i where a profile wins exactly
/// when it reads as a block of a's followed by a block of b's. Player
/// 1's a and player n's b are weakly dominant; the middle players have
/// no optimal choices and get pinned one pair per collective round.
///
/// `monotone(3)` separates individually optimal play from collective
/// basic rationality; `monotone(4)` separates collective optimal play
/// from undominated play.
pub fn monotone(n: usize) -> Game {
    let choices: Vec<Vec<String>> = (1..=n)
        .map(|i| vec![format!("a{i}"), format!("b{i}")])
        .collect();
    let mut win = Vec::new();
    for split in 0..=n {
        let profile: Vec<String> = (1..=n)
            .map(|i| {
                if i <= split {
                    format!("a{i}")
                } else {
                    format!("b{i}")
                }
            })
            .collect();
        win.push(profile);
    }
    Game::build(&choices, &win).expect("monotone games are valid")
}

/// The 3-player overlapping-coordination game `monotone(3)`: two ways
/// to win that share the middle player.
pub fn overlap3() -> Game {
    monotone(3)
}

/// Two fans sharing a hub choice for player 2, plus an isolated losing
/// choice for player 1 (a1-{a2,b2}, c1-{b2,c2}, b1 loses everywhere).
/// Solvable collectively but not by optimal choices alone.
pub fn fans_with_isolated() -> Game {
    game(
        &[&["a1", "b1", "c1"], &["a2", "b2", "c2"]],
        &[&["a1", "a2"], &["a1", "b2"], &["c1", "b2"], &["c1", "c2"]],
    )
}

/// 4x4 banded game with trimmed corners: wins where |i - j| <= 1
/// except the (a,a) and (d,d) diagonal ends. No losing and no optimal
/// choices, but the two hub choices per player weakly dominate the
/// pendants, so undominated play wins where optimal-choice reasoning
/// does not.
pub fn trimmed_band() -> Game {
    game(
        &[&["a1", "b1", "c1", "d1"], &["a2", "b2", "c2", "d2"]],
        &[
            &["a1", "b2"],
            &["b1", "a2"],
            &["b1", "b2"],
            &["b1", "c2"],
            &["c1", "b2"],
            &["c1", "c2"],
            &["c1", "d2"],
            &["d1", "c2"],
        ],
    )
}

/// 2x3 game with one surely winning hub for player 1 plus a spur edge.
/// Solvable by dominance but by none of the symmetry principles.
pub fn hub_with_spur() -> Game {
    game(
        &[&["a1", "b1"], &["a2", "b2", "c2"]],
        &[&["a1", "a2"], &["b1", "a2"], &["b1", "b2"], &["b1", "c2"]],
    )
}

/// 2x3 game whose winning relation is the 4-edge path a2-a1-b2-b1-c2.
/// Choice-symmetric but not player-symmetric: the flip that swaps the
/// path ends is an automorphism, while no player swap exists.
pub fn path_2x3() -> Game {
    game(
        &[&["a1", "b1"], &["a2", "b2", "c2"]],
        &[&["a1", "a2"], &["a1", "b2"], &["b1", "b2"], &["b1", "c2"]],
    )
}
