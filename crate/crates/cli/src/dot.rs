//! Graphviz export of game graphs.
//!
//! Players are rendered as ranked columns of choice nodes. For two
//! players each winning profile is one edge of the bipartite graph;
//! for three or more players each winning profile becomes an auxiliary
//! point node connected to its member choices. Output ordering is
//! deterministic: players ascending, choices in declaration order,
//! winning profiles in canonical order.

use std::fmt::Write as _;

use wlc_core::Game;

pub fn export_dot(game: &Game) -> String {
    let mut out = String::new();
    writeln!(out, "graph wlc {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for p in 0..game.players() {
        writeln!(out, "  subgraph cluster_player{} {{", p + 1).unwrap();
        writeln!(out, "    label=\"player {}\";", p + 1).unwrap();
        writeln!(out, "    rank=same;").unwrap();
        for &c in game.choices(p) {
            writeln!(out, "    \"{}\";", game.name(c)).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    if game.players() == 2 {
        for w in game.win() {
            writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                game.name(w.get(0)),
                game.name(w.get(1))
            )
            .unwrap();
        }
    } else {
        for (k, w) in game.win().iter().enumerate() {
            writeln!(out, "  w{k} [shape=point];").unwrap();
            for &c in w.entries() {
                writeln!(out, "  \"{}\" -- w{k};", game.name(c)).unwrap();
            }
        }
    }
    writeln!(out, "}}").unwrap();
    out
}
