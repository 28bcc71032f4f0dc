//! Acceptance suite: the combinatorial identities, witness
//! separations, independence table, iteration depths, structural
//! claims and invariance properties the library must reproduce
//! exactly. One pass/fail line is printed per criterion (run with
//! `--nocapture` to see them all).

use std::collections::BTreeSet;

use wlc_core::algebra::game_from_expression;
use wlc_core::canon::enumerate_corpus;
use wlc_core::classify::{
    brute_force_structural_solvable, canonical_assignment, is_structurally_indeterminate,
};
use wlc_core::game::product_tuples;
use wlc_core::principles::{cir_reduce, permissible_all, solves, Named, Principle};
use wlc_core::verify::{
    bcr_characterisation, classify_corpus, fir_characterisation, map_games, nl_characterisation,
    random_game, random_renaming, sampled_three_player_corpus, seeded_rng, sw_characterisation,
};
use wlc_core::{ChoiceId, Game, Limits};

fn limits() -> Limits {
    Limits::default()
}

fn solves_named(n: Named, g: &Game) -> bool {
    solves(&n.principle(), g, &limits()).unwrap()
}

fn expr(text: &str) -> Game {
    game_from_expression(text).unwrap()
}

fn report_line(criterion: usize, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn product_wins(g: &Game, sets: &[BTreeSet<ChoiceId>]) -> bool {
    let axes: Vec<Vec<ChoiceId>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    !axes.iter().any(|a| a.is_empty()) && product_tuples(&axes).all(|t| g.is_winning(&t))
}

#[test]
fn criterion_1_lattice_identities() {
    let corpus = enumerate_corpus(2, 3, &limits()).unwrap();
    let mut violations = 0;
    for g in &corpus {
        let fir = solves_named(Named::Fir, g);
        let nl = solves_named(Named::Nl, g);
        let sw = solves_named(Named::Sw, g);
        let bir = solves_named(Named::Bir, g);
        if fir != (nl && sw) || bir != (nl || sw) {
            violations += 1;
        }
    }
    report_line(
        1,
        violations == 0,
        &format!(
            "s(FIR)=s(NL)∩s(SW) and s(BIR)=s(NL)∪s(SW) on {} isomorphism classes, {} counterexamples",
            corpus.len(),
            violations
        ),
    );
}

#[test]
fn criterion_2_cir_degeneracies() {
    let corpus = enumerate_corpus(2, 3, &limits()).unwrap();
    let mut violations = 0;
    for g in &corpus {
        let nl = solves_named(Named::Nl, g);
        let sw = solves_named(Named::Sw, g);
        let cir_nl = solves(&Principle::cir(Named::Nl.principle()), g, &limits()).unwrap();
        let cir_sw = solves(&Principle::cir(Named::Sw.principle()), g, &limits()).unwrap();
        if nl != cir_nl || sw != cir_sw {
            violations += 1;
        }
    }
    report_line(
        2,
        violations == 0,
        &format!(
            "s(NL)=s(cir(NL)) and s(SW)=s(cir(SW)) on {} classes, {} counterexamples",
            corpus.len(),
            violations
        ),
    );
}

#[test]
fn criterion_3_witness_separations() {
    let mut failures: Vec<String> = Vec::new();
    let mut check = |name: &str, game: &Game, inside: &[Named], outside: &[Named]| {
        for &n in inside {
            if !solves_named(n, game) {
                failures.push(format!("{name} should be {}-solvable", n.label()));
            }
        }
        for &n in outside {
            if solves_named(n, game) {
                failures.push(format!("{name} should not be {}-solvable", n.label()));
            }
        }
    };

    check("Z2", &expr("Z2"), &[Named::Sw], &[Named::Nl]);
    check(
        "1x1+bar(1x1)",
        &expr("1x1 + bar(1x1)"),
        &[Named::Nl],
        &[Named::Sw],
    );
    check(
        "Z2+bar(1x1)",
        &expr("Z2 + bar(1x1)"),
        &[Named::Bcr],
        &[Named::Bir],
    );
    check(
        "overlap3",
        &wlc_core::games::overlap3(),
        &[Named::Ioc],
        &[Named::Bcr],
    );
    check(
        "fans-with-isolated",
        &wlc_core::games::fans_with_isolated(),
        &[Named::Bcr],
        &[Named::Ioc],
    );
    check(
        "trimmed-band",
        &wlc_core::games::trimmed_band(),
        &[Named::Irc],
        &[Named::BirPlus, Named::Coc],
    );
    check(
        "monotone-4",
        &wlc_core::games::monotone(4),
        &[Named::Coc],
        &[Named::Irc],
    );
    check("Z3", &expr("Z3"), &[Named::Crc], &[Named::Irc]);

    report_line(
        3,
        failures.is_empty(),
        &format!("8 witness games, failures: {failures:?}"),
    );
}

#[test]
fn criterion_4_independence_table() {
    type RowPredicate = Box<dyn Fn(bool, bool, bool, bool) -> bool>;
    let mut failures: Vec<String> = Vec::new();
    let rows: [(&str, Game, RowPredicate); 6] = [
        (
            "ECS \\ (EPS ∪ CRC)",
            expr("1x1 + 2(1x2)"),
            Box::new(|ecs, eps, crc, _es| ecs && !eps && !crc),
        ),
        (
            "EPS \\ (ECS ∪ CRC)",
            expr("1x1 + 1x2 + 2x1"),
            Box::new(|ecs, eps, crc, _es| eps && !ecs && !crc),
        ),
        (
            "CRC \\ ES",
            wlc_core::games::hub_with_spur(),
            Box::new(|ecs, eps, crc, es| crc && !es && !ecs && !eps),
        ),
        (
            "(ECS ∪ EPS) \\ CRC",
            expr("1x1 + 2(2x2)"),
            Box::new(|ecs, eps, crc, _es| (ecs || eps) && !crc),
        ),
        (
            "(ECS ∪ CRC) \\ EPS",
            wlc_core::games::path_2x3(),
            Box::new(|ecs, _eps, crc, _es| ecs || crc),
        ),
        (
            "(EPS ∪ CRC) \\ ECS",
            expr("Z3"),
            Box::new(|ecs, eps, crc, _es| (eps || crc) && !ecs),
        ),
    ];
    for (label, game, predicate) in &rows {
        let ecs = solves_named(Named::Ecs, game);
        let eps = solves_named(Named::Eps, game);
        let crc = solves_named(Named::Crc, game);
        let es = solves_named(Named::Es, game);
        if !predicate(ecs, eps, crc, es) {
            failures.push(format!("{label}: ECS={ecs} EPS={eps} CRC={crc} ES={es}"));
        }
    }
    // the fifth row's game must specifically avoid EPS
    if solves_named(Named::Eps, &wlc_core::games::path_2x3()) {
        failures.push("(ECS ∪ CRC) \\ EPS: EPS unexpectedly solves".into());
    }
    report_line(
        4,
        failures.is_empty(),
        &format!("6 table rows, failures: {failures:?}"),
    );
}

#[test]
fn criterion_5_two_player_collapse_and_three_player_separation() {
    let corpus = enumerate_corpus(2, 3, &limits()).unwrap();
    let mut collapse_violations = 0;
    for g in &corpus {
        let bcr = solves_named(Named::Bcr, g);
        if bcr != solves_named(Named::BirPlus, g) || bcr != solves_named(Named::Coc, g) {
            collapse_violations += 1;
        }
    }

    let mut sampled = sampled_three_player_corpus(500, 20_240_817, &limits()).unwrap();
    sampled.push(wlc_core::games::overlap3());
    let class_count = sampled.len();
    let verdicts: Vec<(bool, bool, bool)> = map_games(&sampled, |g| {
        (
            solves_named(Named::Bcr, g),
            solves_named(Named::BirPlus, g),
            solves_named(Named::Coc, g),
        )
    });
    let inclusion_violations = verdicts
        .iter()
        .filter(|(bcr, birp, coc)| (*bcr && !*birp) || (*birp && !*coc))
        .count();
    let overlap = wlc_core::games::overlap3();
    let witnessed = solves_named(Named::BirPlus, &overlap) && !solves_named(Named::Bcr, &overlap);
    let strict = verdicts
        .iter()
        .filter(|(bcr, birp, _)| *birp && !*bcr)
        .count();

    report_line(
        5,
        collapse_violations == 0 && inclusion_violations == 0 && witnessed && class_count >= 500,
        &format!(
            "2-player collapse on {} classes ({} violations); 3-player corpus of {} classes: \
             {} inclusion violations, {} strict BCR⊊BIR+ separations, witness game separates: {}",
            corpus.len(),
            collapse_violations,
            class_count,
            inclusion_violations,
            strict,
            witnessed
        ),
    );
}

#[test]
fn criterion_6_iteration_depth() {
    let mut failures: Vec<String> = Vec::new();
    for n in 2..=7 {
        let g = wlc_core::algebra::make_path(n).unwrap();
        let trace = cir_reduce(&Named::Irc.principle(), &g, &limits()).unwrap();
        if trace.shrinking_steps() != n - 1 {
            failures.push(format!("Z{n}: {} steps", trace.shrinking_steps()));
        }
    }
    report_line(
        6,
        failures.is_empty(),
        &format!("cir(IRC) on Z2..Z7 needs n-1 shrinking iterations, failures: {failures:?}"),
    );
}

#[test]
fn criterion_7_structural_claims() {
    let mut corpus = enumerate_corpus(2, 3, &limits()).unwrap();
    corpus.extend(sampled_three_player_corpus(500, 7_031_123, &limits()).unwrap());
    let total = corpus.len();
    let outcomes: Vec<Result<bool, String>> = map_games(&corpus, |g| {
        if g.win().is_empty() {
            return Ok(true);
        }
        let indeterminate =
            is_structurally_indeterminate(g, &limits()).map_err(|e| e.to_string())?;
        let solvable = brute_force_structural_solvable(g, &limits()).map_err(|e| e.to_string())?;
        if indeterminate == solvable {
            return Ok(false);
        }
        if indeterminate {
            return Ok(true);
        }
        let sets = canonical_assignment(g, &limits()).map_err(|e| e.to_string())?;
        Ok(sets.iter().all(|s| !s.is_empty()) && product_wins(g, &sets))
    });
    let mismatches = outcomes.iter().filter(|r| !matches!(r, Ok(true))).count();
    report_line(
        7,
        mismatches == 0,
        &format!(
            "indeterminacy ⇔ no symmetry-closed solution, canonical protocol wins: \
             {total} games, {mismatches} mismatches"
        ),
    );
}

#[test]
fn criterion_8_probabilistic_reasoning_phenomena() {
    let mut failures: Vec<String> = Vec::new();
    if solves_named(Named::Pr, &expr("1x2 + 2x1")) {
        failures.push("PR should not solve 1x2+2x1".into());
    }
    if !solves_named(Named::Pr, &expr("1x1 + 2x2")) {
        failures.push("PR should solve 1x1+2x2".into());
    }
    let g = expr("2(2x2) + 1x1");
    if !solves_named(Named::Es, &g) {
        failures.push("ES should solve 2(2x2)+1x1".into());
    }
    if solves_named(Named::Pr, &g) {
        failures.push("PR should not solve 2(2x2)+1x1".into());
    }
    report_line(8, failures.is_empty(), &format!("failures: {failures:?}"));
}

#[test]
fn criterion_9_renaming_invariance() {
    let mut rng = seeded_rng(90_210);
    let mut pairs: Vec<(Game, wlc_core::symmetry::FullRenaming, Game)> = Vec::new();
    for k in 0..1000 {
        let g = if k % 5 < 3 {
            random_game(&mut rng, 2, 4)
        } else {
            random_game(&mut rng, 3, 3)
        };
        let (r, h) = random_renaming(&g, &mut rng).unwrap();
        pairs.push((g, r, h));
    }

    let check_pair =
        |(g, r, h): &(Game, wlc_core::symmetry::FullRenaming, Game)| -> Result<bool, String> {
            for n in Named::ALL {
                let on_g = permissible_all(&n.principle(), g, &limits())
                    .map_err(|e| e.to_string())?
                    .sets;
                let on_h = permissible_all(&n.principle(), h, &limits())
                    .map_err(|e| e.to_string())?
                    .sets;
                for i in 0..g.players() {
                    if r.map_set(&on_g[i]) != on_h[r.image_player(i)] {
                        return Ok(false);
                    }
                }
            }
            if !g.win().is_empty()
                && !is_structurally_indeterminate(g, &limits()).map_err(|e| e.to_string())?
            {
                let on_g = canonical_assignment(g, &limits()).map_err(|e| e.to_string())?;
                let on_h = canonical_assignment(h, &limits()).map_err(|e| e.to_string())?;
                for i in 0..g.players() {
                    if r.map_set(&on_g[i]) != on_h[r.image_player(i)] {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        };

    #[cfg(feature = "parallel")]
    let outcomes: Vec<Result<bool, String>> = {
        use rayon::prelude::*;
        pairs.par_iter().map(check_pair).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Result<bool, String>> = pairs.iter().map(check_pair).collect();

    let violations = outcomes.iter().filter(|r| !matches!(r, Ok(true))).count();
    report_line(
        9,
        violations == 0,
        &format!(
            "permissible sets and canonical protocol commute with renamings on {} seeded pairs, \
             {} violations",
            pairs.len(),
            violations
        ),
    );
}

#[test]
fn criterion_10_characterisation_theorems() {
    let corpus = enumerate_corpus(2, 3, &limits()).unwrap();
    let reports = classify_corpus(&corpus, &limits()).unwrap();
    let mut violations = 0;
    for (g, report) in corpus.iter().zip(&reports) {
        if sw_characterisation(g) != report.solves(Named::Sw)
            || nl_characterisation(g) != report.solves(Named::Nl)
            || fir_characterisation(g) != report.solves(Named::Fir)
            || bcr_characterisation(g) != report.solves(Named::Bcr)
        {
            violations += 1;
        }
    }
    report_line(
        10,
        violations == 0,
        &format!(
            "closed forms for SW, NL, FIR, BCR agree with direct solvability on {} classes, \
             {} violations",
            corpus.len(),
            violations
        ),
    );
}
