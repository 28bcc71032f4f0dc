//! Constructors for named game families and the game-expression
//! language.
//!
//! The surface syntax mirrors the usual algebraic notation for these
//! games in ASCII:
//!
//! ```text
//! expr    := term { "+" term }
//! term    := [ INT ] atom
//! atom    := product | "bar(" product ")" | "Z" INT | "O" INT | "(" expr ")"
//! product := INT { ("x" | "×") INT } | INT "^" INT
//! ```
//!
//! `2x3` is the universal 2-player game with 2 and 3 choices, `bar(...)`
//! the empty-relation variant, `Zk` the 2-player single-path game, `Ok`
//! the 2k-cycle, `+` disjoint union, a leading integer an m-fold
//! repetition, and `k^n` the n-player product `k x ... x k`. Whitespace
//! is insignificant. Zero counts are allowed inside summands (`1x2 +
//! 1x0`) as long as every player ends up with at least one choice
//! overall.

use std::fmt;

use thiserror::Error;

use crate::game::{Game, GameError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("parse error at byte {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },
    #[error("bad size: {what}")]
    BadSize { what: String },
    #[error("every count is zero")]
    AllZero,
    #[error("player {player} has a zero choice count")]
    ZeroChoices { player: usize },
    #[error("summands have {left} and {right} players")]
    PlayerCountMismatch { left: usize, right: usize },
    #[error("player {player} has no choices in the whole expression")]
    NoChoicesOverall { player: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Expression tree for the game algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GameExpr {
    /// Universal winning relation on the given per-player counts.
    Product(Vec<usize>),
    /// Empty winning relation on the given per-player counts.
    EmptyProduct(Vec<usize>),
    /// 2-player game whose winning relation is a single path through
    /// all 2k choices.
    Path(usize),
    /// 2-player game whose winning relation is a 2k-cycle.
    Cycle(usize),
    Sum(Box<GameExpr>, Box<GameExpr>),
    Scale(usize, Box<GameExpr>),
    /// `k^n`: the n-player universal product with k choices each.
    Power(usize, usize),
}

impl GameExpr {
    pub fn players(&self) -> usize {
        match self {
            GameExpr::Product(counts) | GameExpr::EmptyProduct(counts) => counts.len(),
            GameExpr::Path(_) | GameExpr::Cycle(_) => 2,
            GameExpr::Sum(left, _) => left.players(),
            GameExpr::Scale(_, sub) => sub.players(),
            GameExpr::Power(_, n) => *n,
        }
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        match self {
            GameExpr::Product(counts) | GameExpr::EmptyProduct(counts) => {
                if counts.is_empty() {
                    return Err(AlgebraError::BadSize {
                        what: "product needs at least one player".into(),
                    });
                }
                Ok(())
            }
            GameExpr::Path(k) => {
                if *k < 1 {
                    return Err(AlgebraError::BadSize {
                        what: "Z requires size >= 1".into(),
                    });
                }
                Ok(())
            }
            GameExpr::Cycle(k) => {
                if *k < 2 {
                    return Err(AlgebraError::BadSize {
                        what: "O requires size >= 2".into(),
                    });
                }
                Ok(())
            }
            GameExpr::Sum(left, right) => {
                left.validate()?;
                right.validate()?;
                if left.players() != right.players() {
                    return Err(AlgebraError::PlayerCountMismatch {
                        left: left.players(),
                        right: right.players(),
                    });
                }
                Ok(())
            }
            GameExpr::Scale(m, sub) => {
                if *m < 1 {
                    return Err(AlgebraError::BadSize {
                        what: "multiplier must be >= 1".into(),
                    });
                }
                sub.validate()
            }
            GameExpr::Power(_, n) => {
                if *n < 1 {
                    return Err(AlgebraError::BadSize {
                        what: "exponent must be >= 1".into(),
                    });
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for GameExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameExpr::Product(counts) => {
                let parts: Vec<String> = counts.iter().map(|k| k.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
            GameExpr::EmptyProduct(counts) => {
                let parts: Vec<String> = counts.iter().map(|k| k.to_string()).collect();
                write!(f, "bar({})", parts.join("x"))
            }
            GameExpr::Path(k) => write!(f, "Z{k}"),
            GameExpr::Cycle(k) => write!(f, "O{k}"),
            GameExpr::Sum(left, right) => {
                write!(f, "{left} + ")?;
                if matches!(**right, GameExpr::Sum(..)) {
                    write!(f, "({right})")
                } else {
                    write!(f, "{right}")
                }
            }
            GameExpr::Scale(m, sub) => write!(f, "{m}({sub})"),
            GameExpr::Power(base, n) => write!(f, "{base}^{n}"),
        }
    }
}

/// A flattened summand: per-player counts plus a winning-relation
/// pattern over local indices.
struct Component {
    counts: Vec<usize>,
    kind: ComponentKind,
}

enum ComponentKind {
    Universal,
    Empty,
    Path(usize),
    Cycle(usize),
}

impl Component {
    /// Winning profiles as per-player local indices.
    fn wins(&self) -> Vec<Vec<usize>> {
        match self.kind {
            ComponentKind::Empty => Vec::new(),
            ComponentKind::Universal => {
                if self.counts.contains(&0) {
                    return Vec::new();
                }
                let mut out = Vec::new();
                let mut cursor = vec![0usize; self.counts.len()];
                loop {
                    out.push(cursor.clone());
                    let mut p = self.counts.len();
                    loop {
                        if p == 0 {
                            return out;
                        }
                        p -= 1;
                        cursor[p] += 1;
                        if cursor[p] < self.counts[p] {
                            break;
                        }
                        cursor[p] = 0;
                    }
                }
            }
            ComponentKind::Path(k) => {
                let mut out = Vec::new();
                for i in 0..k {
                    out.push(vec![i, i]);
                }
                for i in 0..k.saturating_sub(1) {
                    out.push(vec![i + 1, i]);
                }
                out
            }
            ComponentKind::Cycle(k) => {
                let mut out = Vec::new();
                for i in 0..k {
                    out.push(vec![i, i]);
                    out.push(vec![(i + 1) % k, i]);
                }
                out
            }
        }
    }
}

fn flatten(expr: &GameExpr, out: &mut Vec<Component>) {
    match expr {
        GameExpr::Product(counts) => out.push(Component {
            counts: counts.clone(),
            kind: ComponentKind::Universal,
        }),
        GameExpr::EmptyProduct(counts) => out.push(Component {
            counts: counts.clone(),
            kind: ComponentKind::Empty,
        }),
        GameExpr::Path(k) => out.push(Component {
            counts: vec![*k, *k],
            kind: ComponentKind::Path(*k),
        }),
        GameExpr::Cycle(k) => out.push(Component {
            counts: vec![*k, *k],
            kind: ComponentKind::Cycle(*k),
        }),
        GameExpr::Sum(left, right) => {
            flatten(left, out);
            flatten(right, out);
        }
        GameExpr::Scale(m, sub) => {
            for _ in 0..*m {
                flatten(sub, out);
            }
        }
        GameExpr::Power(base, n) => out.push(Component {
            counts: vec![*base; *n],
            kind: ComponentKind::Universal,
        }),
    }
}

/// Builds the game denoted by an expression. Choice names are
/// deterministic: player i's j-th choice is `p<i>_c<j>`, numbered
/// across summands from left to right.
pub fn evaluate(expr: &GameExpr) -> Result<Game, AlgebraError> {
    expr.validate()?;
    let players = expr.players();
    let mut components = Vec::new();
    flatten(expr, &mut components);

    let mut totals = vec![0usize; players];
    for c in &components {
        debug_assert_eq!(c.counts.len(), players);
        for (p, k) in c.counts.iter().enumerate() {
            totals[p] += k;
        }
    }
    for (p, &t) in totals.iter().enumerate() {
        if t == 0 {
            return Err(AlgebraError::NoChoicesOverall { player: p });
        }
    }

    let choice_sets: Vec<Vec<String>> = totals
        .iter()
        .enumerate()
        .map(|(p, &t)| (0..t).map(|j| format!("p{}_c{}", p + 1, j)).collect())
        .collect();

    let mut winning: Vec<Vec<String>> = Vec::new();
    let mut offsets = vec![0usize; players];
    for c in &components {
        for local in c.wins() {
            let profile = local
                .iter()
                .enumerate()
                .map(|(p, &j)| choice_sets[p][offsets[p] + j].clone())
                .collect();
            winning.push(profile);
        }
        for (p, k) in c.counts.iter().enumerate() {
            offsets[p] += k;
        }
    }

    Ok(Game::build(&choice_sets, &winning)?)
}

/// The n-player game with the given per-player choice counts; the
/// winning relation is the full product or empty depending on
/// `universal`. Every count must be positive when the result stands
/// alone as a game; zero counts are only meaningful inside expression
/// summands.
pub fn make_product(counts: &[usize], universal: bool) -> Result<Game, AlgebraError> {
    if counts.is_empty() {
        return Err(AlgebraError::BadSize {
            what: "product needs at least one player".into(),
        });
    }
    if counts.iter().all(|&k| k == 0) {
        return Err(AlgebraError::AllZero);
    }
    if let Some(p) = counts.iter().position(|&k| k == 0) {
        return Err(AlgebraError::ZeroChoices { player: p });
    }
    let expr = if universal {
        GameExpr::Product(counts.to_vec())
    } else {
        GameExpr::EmptyProduct(counts.to_vec())
    };
    evaluate(&expr)
}

/// 2-player game whose winning relation forms a single path through
/// all 2k choices.
pub fn make_path(k: usize) -> Result<Game, AlgebraError> {
    evaluate(&GameExpr::Path(k))
}

/// 2-player game whose winning relation forms a 2k-cycle through all
/// choices.
pub fn make_cycle(k: usize) -> Result<Game, AlgebraError> {
    evaluate(&GameExpr::Cycle(k))
}

/// Disjoint union: concatenated per-player choice sets (the right
/// game's choices renamed apart where names collide) and the union of
/// the two winning relations.
pub fn disjoint_union(g: &Game, h: &Game) -> Result<Game, AlgebraError> {
    if g.players() != h.players() {
        return Err(AlgebraError::PlayerCountMismatch {
            left: g.players(),
            right: h.players(),
        });
    }
    let mut taken: Vec<String> = Vec::new();
    for p in 0..g.players() {
        for &c in g.choices(p) {
            taken.push(g.name(c).to_string());
        }
    }
    let mut renamed: Vec<String> = vec![String::new(); h.choice_count()];
    for c in h.all_choices() {
        let base = h.name(c);
        let mut candidate = base.to_string();
        let mut k = 2;
        while taken.contains(&candidate) {
            candidate = format!("{base}_{k}");
            k += 1;
        }
        taken.push(candidate.clone());
        renamed[c.index()] = candidate;
    }

    let choice_sets: Vec<Vec<String>> = (0..g.players())
        .map(|p| {
            g.choices(p)
                .iter()
                .map(|&c| g.name(c).to_string())
                .chain(h.choices(p).iter().map(|&c| renamed[c.index()].clone()))
                .collect()
        })
        .collect();
    let mut winning: Vec<Vec<String>> = g
        .win()
        .iter()
        .map(|w| w.entries().iter().map(|&c| g.name(c).to_string()).collect())
        .collect();
    winning.extend(h.win().iter().map(|w| {
        w.entries()
            .iter()
            .map(|&c| renamed[c.index()].clone())
            .collect::<Vec<String>>()
    }));
    Ok(Game::build(&choice_sets, &winning)?)
}

/// m-fold disjoint union of copies of `g`.
pub fn replicate(m: usize, g: &Game) -> Result<Game, AlgebraError> {
    if m < 1 {
        return Err(AlgebraError::BadSize {
            what: "multiplier must be >= 1".into(),
        });
    }
    let mut out = g.clone();
    for _ in 1..m {
        out = disjoint_union(&out, g)?;
    }
    Ok(out)
}

/// Parses the expression grammar at the top of this module.
pub fn parse_expression(text: &str) -> Result<GameExpr, AlgebraError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(AlgebraError::Parse {
            pos: parser.tokens[parser.pos].1,
            expected: "end of input or '+'".into(),
        });
    }
    expr.validate()?;
    Ok(expr)
}

/// Parses and evaluates in one step.
pub fn game_from_expression(text: &str) -> Result<Game, AlgebraError> {
    evaluate(&parse_expression(text)?)
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Int(usize),
    Plus,
    Times,
    Caret,
    LParen,
    RParen,
    Bar,
    PathSym,
    CycleSym,
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, AlgebraError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            '+' => {
                out.push((Token::Plus, start));
                i += 1;
            }
            '^' => {
                out.push((Token::Caret, start));
                i += 1;
            }
            '(' => {
                out.push((Token::LParen, start));
                i += 1;
            }
            ')' => {
                out.push((Token::RParen, start));
                i += 1;
            }
            '×' => {
                out.push((Token::Times, start));
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let mut value: usize = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(bytes[i] as usize - '0' as usize))
                        .ok_or(AlgebraError::Parse {
                            pos: start,
                            expected: "a smaller integer".into(),
                        })?;
                    i += 1;
                }
                out.push((Token::Int(value), start));
            }
            _ if c.is_alphabetic() => {
                let mut word = String::new();
                while i < bytes.len() && bytes[i].is_alphabetic() {
                    word.push(bytes[i]);
                    i += 1;
                }
                let token = match word.to_ascii_lowercase().as_str() {
                    "x" => Token::Times,
                    "bar" => Token::Bar,
                    "z" => Token::PathSym,
                    "o" => Token::CycleSym,
                    _ => {
                        return Err(AlgebraError::Parse {
                            pos: start,
                            expected: format!("'bar', 'Z', 'O' or 'x', found {word:?}"),
                        })
                    }
                };
                out.push((token, start));
            }
            _ => {
                return Err(AlgebraError::Parse {
                    pos: start,
                    expected: format!("a token, found {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or_else(|| self.tokens.last().map(|(_, p)| p + 1).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect_int(&mut self, what: &str) -> Result<usize, AlgebraError> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Int(v)) => Ok(v),
            _ => Err(AlgebraError::Parse {
                pos,
                expected: format!("an integer ({what})"),
            }),
        }
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<(), AlgebraError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == token => Ok(()),
            _ => Err(AlgebraError::Parse {
                pos,
                expected: what.into(),
            }),
        }
    }

    fn expr(&mut self) -> Result<GameExpr, AlgebraError> {
        let mut left = self.term()?;
        while self.peek() == Some(&Token::Plus) {
            self.bump();
            let right = self.term()?;
            left = GameExpr::Sum(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<GameExpr, AlgebraError> {
        if let Some(Token::Int(first)) = self.peek().cloned() {
            self.bump();
            match self.peek() {
                Some(Token::Times) | Some(Token::Caret) => self.product_tail(first),
                // a scaled atom: "2(1x2)", "2Z2", "3 bar(1x1)", "2 3"
                Some(Token::Int(_))
                | Some(Token::Bar)
                | Some(Token::PathSym)
                | Some(Token::CycleSym)
                | Some(Token::LParen) => {
                    let sub = self.atom()?;
                    Ok(GameExpr::Scale(first, Box::new(sub)))
                }
                _ => Ok(GameExpr::Product(vec![first])),
            }
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<GameExpr, AlgebraError> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Int(first)) => self.product_tail(first),
            Some(Token::Bar) => {
                self.expect(Token::LParen, "'(' after 'bar'")?;
                let first = self.expect_int("product size")?;
                let product = self.product_tail(first)?;
                self.expect(Token::RParen, "')' closing 'bar('")?;
                match product {
                    GameExpr::Product(counts) => Ok(GameExpr::EmptyProduct(counts)),
                    GameExpr::Power(base, n) => Ok(GameExpr::EmptyProduct(vec![base; n])),
                    _ => unreachable!("product_tail yields products"),
                }
            }
            Some(Token::PathSym) => Ok(GameExpr::Path(self.expect_int("path size")?)),
            Some(Token::CycleSym) => Ok(GameExpr::Cycle(self.expect_int("cycle size")?)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(AlgebraError::Parse {
                pos,
                expected: "an integer, 'bar(', 'Z', 'O' or '('".into(),
            }),
        }
    }

    fn product_tail(&mut self, first: usize) -> Result<GameExpr, AlgebraError> {
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let n = self.expect_int("exponent")?;
            return Ok(GameExpr::Power(first, n));
        }
        let mut counts = vec![first];
        while self.peek() == Some(&Token::Times) {
            self.bump();
            counts.push(self.expect_int("product size")?);
        }
        Ok(GameExpr::Product(counts))
    }
}
