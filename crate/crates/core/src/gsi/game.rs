//! Matches against scripted opponents, and the optimal-score oracle.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use super::rules::{self, Lsd, ANTI_HANDS, HANDS, MAX_BULLETS};
use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameKind {
    Rps7Random,
    Rps7Cycle,
    LsdDefender,
    CardsAscending,
    LsdBalance,
    LsdAttacker,
    AntiRpsRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Hand(usize),
    Lsd(Lsd),
    Card(u32),
}

const DEFENDER: [Lsd; 5] = [Lsd::Load, Lsd::Load, Lsd::Defend(2), Lsd::Load, Lsd::Defend(1)];
const BALANCE: [Lsd; 4] = [Lsd::Load, Lsd::Load, Lsd::Shoot(1), Lsd::Defend(1)];
const ATTACKER: [Lsd; 5] = [Lsd::Load, Lsd::Load, Lsd::Shoot(2), Lsd::Load, Lsd::Shoot(1)];
// rock, paper, air
const RPS7_RANDOM: [usize; 3] = [0, 1, 5];
const INVALID_LIMIT: u32 = 3;

impl GameKind {
    fn cycle(self) -> &'static [Lsd] {
        match self {
            GameKind::LsdDefender => &DEFENDER,
            GameKind::LsdBalance => &BALANCE,
            GameKind::LsdAttacker => &ATTACKER,
            _ => &[],
        }
    }

    pub fn is_lsd(self) -> bool {
        !self.cycle().is_empty()
    }

    pub fn is_stochastic(self) -> bool {
        matches!(self, GameKind::Rps7Random | GameKind::AntiRpsRandom)
    }

    fn hands(self) -> &'static [&'static str] {
        if self == GameKind::AntiRpsRandom { &ANTI_HANDS } else { &HANDS }
    }

    /// The opponent's move at 0-based turn `t` of an `n`-turn game.
    pub fn opponent(self, t: usize, n: usize, rng: &mut impl Rng) -> Move {
        match self {
            GameKind::Rps7Random => Move::Hand(RPS7_RANDOM[rng.random_range(0..3)]),
            GameKind::AntiRpsRandom => Move::Hand(if rng.random_bool(0.5) { 0 } else { 2 }),
            GameKind::Rps7Cycle => Move::Hand(t % 7),
            GameKind::CardsAscending => Move::Card(if t == 0 { n as u32 } else { t as u32 }),
            _ => Move::Lsd(self.cycle()[t % self.cycle().len()]),
        }
    }

    /// Public rules. The opponent's strategy stays hidden.
    pub fn description(self) -> String {
        match self {
            GameKind::Rps7Random | GameKind::Rps7Cycle => String::from(
                "two players show one of rock, paper, scissors, fire, water, air and sponge at the same time in every turn. \
                 Rock beats scissors, sponge and fire. Paper beats rock, water and air. Scissors beat paper, sponge and air. \
                 Fire beats scissors, paper and sponge. Water beats rock, fire and scissors. Air beats fire, rock and water. \
                 Sponge beats water, paper and air. The winner of a turn gets 1 point and the loser gets -1 point; equal hands give 0 points. \
                 Answer each turn with one hand, such as `rock`. Maximize your total score",
            ),
            GameKind::AntiRpsRandom => String::from(
                "two players show rock, paper or scissors at the same time in every turn, with reversed winning rules: \
                 scissors beat rock, paper beats scissors and rock beats paper. The winner of a turn gets 1 point and the loser -1 point; \
                 equal hands give 0 points. Answer each turn with one hand, such as `rock`. Maximize your total score",
            ),
            GameKind::CardsAscending => String::from(
                "both players hold cards numbered from 1 to N, where N is the number of turns. In every turn each player plays one card from hand, \
                 written as `card x`, and the higher card wins 1 point while the lower card gets -1 point; equal cards give 0 points. \
                 A played card leaves the hand. Maximize your total score",
            ),
            _ => String::from(
                "in every turn each player chooses `load` to gain one bullet, `scout` to learn how many bullets the opponent holds, \
                 `shoot x` to attack with x bullets, or `defend y` to block with y bullets. Both players start with 0 bullets and hold at most 8, \
                 and x and y must be between 1 and the bullets currently held. Shooting beats an opponent who loads or scouts. \
                 Against `defend y`, `shoot x` loses when y is at least x and wins otherwise. When both shoot, the player who held more bullets wins, \
                 and equal holdings tie. Every other pairing gives 0 points. A win is worth 1 point and a loss -1 point. \
                 You see the opponent's action type but not its amount, and a scout's result arrives in the next turn. Maximize your total score",
            ),
        }
    }

    pub fn strategy(self) -> String {
        match self {
            GameKind::Rps7Random => String::from("uniform over rock, paper, air"),
            GameKind::AntiRpsRandom => String::from("uniform over rock, scissors"),
            GameKind::Rps7Cycle => String::from("cycle through the seven hands from rock"),
            GameKind::CardsAscending => String::from("highest card first, then ascending from card 1"),
            _ => {
                let steps: Vec<String> = self.cycle().iter().map(|a| a.to_string()).collect();
                format!("cycle {}", steps.join(", "))
            }
        }
    }

    fn example(self) -> String {
        match self {
            GameKind::CardsAscending => String::from("What is your action? (e.g., `card 1`)"),
            k if k.is_lsd() => String::from("What is your action? (e.g., `load`, `scout`, `shoot 1`, `defend 2`)"),
            k => {
                let opts: Vec<String> = k.hands().iter().map(|h| format!("`{h}`")).collect();
                format!("What is your action? (e.g., {})", opts.join(", "))
            }
        }
    }

    fn unrecognized(self, raw: &str) -> String {
        let choices = match self {
            GameKind::CardsAscending => String::from("`card x`"),
            k if k.is_lsd() => String::from("`load`, `scout`, `shoot x`, or `defend y`"),
            k => {
                let opts: Vec<String> = k.hands().iter().map(|h| format!("`{h}`")).collect();
                opts.join(", ")
            }
        };
        format!("Invalid action type. Your action '{raw}' is not recognized. Please choose from {choices}.")
    }
}

/// Parses a move; `Err` carries the correction text.
fn parse(kind: GameKind, raw: &str, bullets: u8, hand: &[bool]) -> Result<Move, String> {
    let text = raw.trim().trim_matches('`').trim().to_ascii_lowercase();
    let mut words = text.split_whitespace();
    let head = words.next().unwrap_or("");
    let arg = words.next();
    let extra = words.next().is_some();
    let bad = || kind.unrecognized(raw);
    if extra {
        return Err(bad());
    }
    match kind {
        GameKind::CardsAscending => {
            let n: u32 = match (head, arg) {
                ("card", Some(x)) => x.parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            };
            if n >= 1 && (n as usize) <= hand.len() && hand[n as usize - 1] {
                Ok(Move::Card(n))
            } else {
                Err(format!("Invalid action. Card {n} is not available in your hand."))
            }
        }
        k if k.is_lsd() => {
            let amount = |verb: &str| -> Result<u8, String> {
                let n: u32 = arg.ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if n == 0 || n > bullets as u32 {
                    Err(format!("Invalid action. You have {bullets} bullets, so you cannot {verb} {n}."))
                } else {
                    Ok(n as u8)
                }
            };
            match (head, arg.is_some()) {
                ("load", false) => Ok(Move::Lsd(Lsd::Load)),
                ("scout", false) => Ok(Move::Lsd(Lsd::Scout)),
                ("shoot", true) => Ok(Move::Lsd(Lsd::Shoot(amount("shoot")?))),
                ("defend", true) => Ok(Move::Lsd(Lsd::Defend(amount("defend")?))),
                _ => Err(bad()),
            }
        }
        k => match (k.hands().iter().position(|h| *h == head), arg) {
            (Some(i), None) => Ok(Move::Hand(i)),
            _ => Err(bad()),
        },
    }
}

fn points(kind: GameKind, a: Move, b: Move, a_bullets: u8, b_bullets: u8) -> i32 {
    match (a, b) {
        (Move::Hand(x), Move::Hand(y)) if kind == GameKind::AntiRpsRandom => rules::anti_rps(x, y),
        (Move::Hand(x), Move::Hand(y)) => rules::rps7(x, y),
        (Move::Lsd(x), Move::Lsd(y)) => rules::lsd(x, y, a_bullets, b_bullets),
        (Move::Card(x), Move::Card(y)) => rules::cards(x, y),
        _ => 0,
    }
}

fn name(kind: GameKind, m: Move, public: bool) -> String {
    match m {
        Move::Hand(i) => String::from(kind.hands()[i]),
        Move::Lsd(a) if public => String::from(a.public()),
        Move::Lsd(a) => a.to_string(),
        Move::Card(n) => format!("card {n}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TurnRecord {
    pub mine: Move,
    pub theirs: Move,
    pub points: i32,
}

pub enum Step {
    /// Move rejected; the text asks again.
    Invalid(String),
    /// Move played; the text prompts the next turn.
    Next(String),
    /// Last turn played; the text summarizes the game.
    Finished(String),
}

/// One n-turn game.
#[derive(Debug, Clone)]
pub struct Match {
    kind: GameKind,
    rounds: usize,
    rng: Stream,
    turns: Vec<TurnRecord>,
    bullets: u8,
    opp_bullets: u8,
    hand: Vec<bool>,
    scouted: Option<u8>,
    invalid_streak: u32,
}

impl Match {
    pub fn new(kind: GameKind, rounds: usize, rng: Stream) -> Self {
        Match {
            kind,
            rounds,
            rng,
            turns: Vec::new(),
            bullets: 0,
            opp_bullets: 0,
            hand: vec![true; rounds],
            scouted: None,
            invalid_streak: 0,
        }
    }

    pub fn total(&self) -> i32 {
        self.turns.iter().map(|t| t.points).sum()
    }

    pub fn turns(&self) -> &[TurnRecord] {
        &self.turns
    }

    pub fn is_over(&self) -> bool {
        self.turns.len() >= self.rounds
    }

    fn last_turn(&self) -> String {
        match self.turns.last() {
            None => String::from("This is the first turn."),
            Some(t) => format!(
                "In the last turn, you chose '{}' and the opponent chose '{}'. You gained {} point(s).",
                name(self.kind, t.mine, false),
                name(self.kind, t.theirs, true),
                t.points
            ),
        }
    }

    /// Text asking for the current turn's move.
    pub fn prompt(&self) -> String {
        let mut out = format!("Turn {}/{}\n\n{}", self.turns.len() + 1, self.rounds, self.last_turn());
        if self.kind.is_lsd() {
            out.push_str(&format!("\n\nYou have {} bullets.", self.bullets));
            if let Some(n) = self.scouted {
                out.push_str(&format!("\n\nYour scout last turn revealed that the opponent had {n} bullets before their action."));
            }
        }
        if self.kind == GameKind::CardsAscending {
            let cards: Vec<String> =
                self.hand.iter().enumerate().filter(|(_, h)| **h).map(|(i, _)| (i + 1).to_string()).collect();
            out.push_str(&format!("\n\nYour cards: {}.", cards.join(", ")));
        }
        out.push_str("\n\n");
        out.push_str(&self.kind.example());
        out
    }

    fn fallback(&self) -> Move {
        match self.kind {
            GameKind::CardsAscending => Move::Card(self.hand.iter().position(|h| *h).unwrap_or(0) as u32 + 1),
            k if k.is_lsd() => Move::Lsd(Lsd::Load),
            _ => Move::Hand(0),
        }
    }

    /// Plays one move. Three invalid moves in a row play a fallback move.
    pub fn play(&mut self, raw: &str) -> Step {
        let (mine, note) = match parse(self.kind, raw, self.bullets, &self.hand) {
            Ok(m) => (m, None),
            Err(fix) => {
                self.invalid_streak += 1;
                if self.invalid_streak < INVALID_LIMIT {
                    return Step::Invalid(fix);
                }
                let m = self.fallback();
                let note = format!("{fix} After {INVALID_LIMIT} invalid actions in a row, '{}' is played for you.", name(self.kind, m, false));
                (m, Some(note))
            }
        };
        self.invalid_streak = 0;
        let t = self.turns.len();
        let theirs = self.kind.opponent(t, self.rounds, &mut self.rng);
        let pts = points(self.kind, mine, theirs, self.bullets, self.opp_bullets);
        self.scouted = (mine == Move::Lsd(Lsd::Scout)).then_some(self.opp_bullets);
        if let (Move::Lsd(a), Move::Lsd(b)) = (mine, theirs) {
            self.bullets = a.after(self.bullets);
            self.opp_bullets = b.after(self.opp_bullets);
        }
        if let Move::Card(n) = mine {
            self.hand[n as usize - 1] = false;
        }
        self.turns.push(TurnRecord { mine, theirs, points: pts });
        let mut out = note.map(|n| n + "\n\n").unwrap_or_default();
        if self.is_over() {
            out.push_str(&format!("Game over. {} Your total score is {}.", self.last_turn(), self.total()));
            Step::Finished(out)
        } else {
            out.push_str(&self.prompt());
            Step::Next(out)
        }
    }
}

/// Best achievable score: exact for scripted opponents, expected for random
/// ones.
pub fn optimal_score(kind: GameKind, rounds: usize) -> f64 {
    match kind {
        GameKind::Rps7Random => rounds as f64 * 2.0 / 3.0,
        GameKind::AntiRpsRandom => rounds as f64 * 0.5,
        GameKind::Rps7Cycle => rounds as f64,
        _ => optimal_moves(kind, rounds).1 as f64,
    }
}

/// An optimal move list with its score. Random opponents get the best
/// stationary move repeated.
pub fn optimal_moves(kind: GameKind, rounds: usize) -> (Vec<String>, i32) {
    // scripted opponents never draw
    let mut rng = <Stream as rand::SeedableRng>::seed_from_u64(0);
    let opp: Vec<Move> = (0..rounds).map(|t| kind.opponent(t, rounds, &mut rng)).collect();
    match kind {
        GameKind::Rps7Random => (vec![String::from("paper"); rounds], 0),
        GameKind::AntiRpsRandom => (vec![String::from("scissors"); rounds], 0),
        GameKind::Rps7Cycle => {
            let moves: Vec<String> = opp
                .iter()
                .map(|m| {
                    let Move::Hand(h) = *m else { unreachable!() };
                    String::from(HANDS[(0..7).find(|a| rules::rps7(*a, h) == 1).unwrap()])
                })
                .collect();
            (moves, rounds as i32)
        }
        GameKind::CardsAscending => cards_dp(&opp),
        _ => lsd_dp(&opp),
    }
}

fn cards_dp(opp: &[Move]) -> (Vec<String>, i32) {
    let n = opp.len();
    let full = 1usize << n;
    let mut best = vec![i32::MIN; full];
    let mut choice = vec![0usize; full];
    best[full - 1] = 0;
    for mask in (0..full - 1).rev() {
        let t = mask.count_ones() as usize;
        let Move::Card(o) = opp[t] else { unreachable!() };
        for c in 0..n {
            if mask & (1 << c) == 0 {
                let v = rules::cards(c as u32 + 1, o) + best[mask | (1 << c)];
                if v > best[mask] {
                    best[mask] = v;
                    choice[mask] = c;
                }
            }
        }
    }
    let mut moves = Vec::with_capacity(n);
    let mut mask = 0;
    while mask != full - 1 {
        let c = choice[mask];
        moves.push(format!("card {}", c + 1));
        mask |= 1 << c;
    }
    (moves, best[0])
}

fn lsd_dp(opp: &[Move]) -> (Vec<String>, i32) {
    let n = opp.len();
    let acts = |b: u8| {
        let mut v = vec![Lsd::Load, Lsd::Scout];
        for x in 1..=b {
            v.push(Lsd::Shoot(x));
            v.push(Lsd::Defend(x));
        }
        v
    };
    // opponent bullets before each turn
    let mut ob = vec![0u8; n + 1];
    for t in 0..n {
        let Move::Lsd(a) = opp[t] else { unreachable!() };
        ob[t + 1] = a.after(ob[t]);
    }
    let width = MAX_BULLETS as usize + 1;
    let mut value = vec![vec![0i32; width]; n + 1];
    let mut pick = vec![vec![Lsd::Load; width]; n];
    for t in (0..n).rev() {
        let Move::Lsd(o) = opp[t] else { unreachable!() };
        for b in 0..width {
            let mut top = i32::MIN;
            for a in acts(b as u8) {
                let v = rules::lsd(a, o, b as u8, ob[t]) + value[t + 1][a.after(b as u8) as usize];
                if v > top {
                    top = v;
                    pick[t][b] = a;
                }
            }
            value[t][b] = top;
        }
    }
    let mut moves = Vec::with_capacity(n);
    let mut b = 0u8;
    for row in &pick {
        let a = row[b as usize];
        moves.push(a.to_string());
        b = a.after(b);
    }
    (moves, value[0][0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn play_all(kind: GameKind, rounds: usize, moves: &[String]) -> Match {
        let mut m = Match::new(kind, rounds, Stream::seed_from_u64(3));
        for mv in moves {
            if let Step::Invalid(t) = m.play(mv) {
                panic!("{mv}: {t}");
            }
        }
        assert!(m.is_over());
        m
    }

    #[test]
    fn cards_ascending_ten() {
        let (moves, best) = optimal_moves(GameKind::CardsAscending, 10);
        assert_eq!(best, 8);
        assert_eq!(play_all(GameKind::CardsAscending, 10, &moves).total(), 8);
    }

    #[test]
    fn opponent_scripts() {
        let mut r = Stream::seed_from_u64(0);
        let k = GameKind::CardsAscending;
        assert_eq!(k.opponent(0, 10, &mut r), Move::Card(10));
        assert_eq!(k.opponent(1, 10, &mut r), Move::Card(1));
        let bal: Vec<Move> = (0..4).map(|t| GameKind::LsdBalance.opponent(t, 8, &mut r)).collect();
        assert_eq!(
            bal,
            [Move::Lsd(Lsd::Load), Move::Lsd(Lsd::Load), Move::Lsd(Lsd::Shoot(1)), Move::Lsd(Lsd::Defend(1))]
        );
        assert_eq!(GameKind::Rps7Cycle.opponent(0, 8, &mut r), Move::Hand(0));
    }

    #[test]
    fn feedback_texts() {
        let mut m = Match::new(GameKind::LsdDefender, 8, Stream::seed_from_u64(0));
        assert_eq!(
            m.prompt(),
            "Turn 1/8\n\nThis is the first turn.\n\nYou have 0 bullets.\n\nWhat is your action? (e.g., `load`, `scout`, `shoot 1`, `defend 2`)"
        );
        let Step::Invalid(t) = m.play("hello") else { panic!() };
        assert_eq!(t, "Invalid action type. Your action 'hello' is not recognized. Please choose from `load`, `scout`, `shoot x`, or `defend y`.");
        let Step::Next(t) = m.play("scout") else { panic!() };
        assert!(t.starts_with("Turn 2/8\n\nIn the last turn, you chose 'scout' and the opponent chose 'load'. You gained 0 point(s)."));
        assert!(t.contains("Your scout last turn revealed that the opponent had 0 bullets before their action."));
        m.play("load");
        // opponent defends 2 on turn 3; the amount stays hidden
        let Step::Next(t) = m.play("shoot 1") else { panic!() };
        assert!(t.contains("you chose 'shoot 1' and the opponent chose 'defend'. You gained -1 point(s)."));
        let Step::Invalid(t) = m.play("shoot 1") else { panic!() };
        assert_eq!(t, "Invalid action. You have 0 bullets, so you cannot shoot 1.");
    }

    #[test]
    fn three_strikes_fallback() {
        let mut m = Match::new(GameKind::Rps7Cycle, 8, Stream::seed_from_u64(0));
        assert!(matches!(m.play("x"), Step::Invalid(_)));
        assert!(matches!(m.play("y"), Step::Invalid(_)));
        let Step::Next(t) = m.play("z") else { panic!() };
        assert!(t.contains("'rock' is played for you"));
        assert_eq!(m.turns()[0].mine, Move::Hand(0));
    }

    #[test]
    fn game_over_text() {
        let moves = vec![String::from("paper"); 8];
        let mut m = Match::new(GameKind::Rps7Cycle, 8, Stream::seed_from_u64(0));
        let mut last = String::new();
        for mv in &moves {
            if let Step::Finished(t) = m.play(mv) {
                last = t;
            }
        }
        assert!(last.starts_with("Game over. In the last turn, you chose 'paper' and the opponent chose 'rock'."));
        assert!(last.ends_with(&format!("Your total score is {}.", m.total())));
    }
}
