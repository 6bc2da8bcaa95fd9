//! Puzzle state machines: query parsing, feedback, answer rendering.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use rand::Rng;

use super::wordle;
use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PuzzleKind {
    Bandit,
    Battleship,
    Wordle { len: usize },
    HeavyCoin,
    NumberGuessing,
}

pub const COINS: u32 = 100;
pub const GRID: u8 = 9;
pub const CLOSE: i64 = 15;

#[derive(Debug, Clone, PartialEq)]
pub enum Hidden {
    /// Winning probability of arms A, B, C.
    Bandit([f64; 3]),
    /// The ship fills a whole row or column.
    Ship { row: bool, index: u8 },
    Word(String),
    Coin(u32),
    Number(i64),
}

impl Hidden {
    pub fn answer(&self) -> String {
        match self {
            Hidden::Bandit(p) => {
                let best = (0..3).fold(0, |b, i| if p[i] > p[b] { i } else { b });
                format!("Bandit {}", (b'A' + best as u8) as char)
            }
            Hidden::Ship { row: true, index } => format!("Row {index}"),
            Hidden::Ship { row: false, index } => format!("Column {index}"),
            Hidden::Word(w) => w.clone(),
            Hidden::Coin(c) => format!("Heavy Coin {c}"),
            Hidden::Number(n) => format!("Number {n}"),
        }
    }
}

/// One sample's puzzle: hidden answer, query counter and random stream.
#[derive(Debug, Clone)]
pub struct Puzzle {
    pub hidden: Hidden,
    queries: u32,
    rng: Stream,
    lies: Vec<u32>,
}

impl Puzzle {
    pub fn new(hidden: Hidden, rng: Stream) -> Self {
        Puzzle { hidden, queries: 0, rng, lies: Vec::new() }
    }

    pub fn queries(&self) -> u32 {
        self.queries
    }

    /// Query index (0-based) of the lie in block `block` of ten queries.
    pub fn lie_in_block(&mut self, block: usize) -> u32 {
        while self.lies.len() <= block {
            let base = self.lies.len() as u32 * 10;
            let at = base + self.rng.random_range(0..10);
            self.lies.push(at);
        }
        self.lies[block]
    }

    /// Feedback for a well-formed query, or a correction message.
    pub fn step(&mut self, query: &str) -> Result<String, String> {
        let out = match &self.hidden {
            Hidden::Bandit(p) => {
                let arm = parse_bandit(query).ok_or_else(|| String::from(BANDIT_FIX))?;
                let p = p[arm];
                let win = self.rng.random_bool(p);
                format!("Reward: {}", u8::from(win))
            }
            Hidden::Ship { row, index } => {
                let (x, y) = parse_cell(query).ok_or_else(|| String::from(CELL_FIX))?;
                let hit = if *row { x == *index } else { y == *index };
                String::from(if hit { "Hit" } else { "Miss" })
            }
            Hidden::Word(w) => {
                let guess = query.trim().to_ascii_uppercase();
                if guess.len() != w.len() || !guess.bytes().all(|b| b.is_ascii_uppercase()) {
                    return Err(format!("Invalid guess. Submit a word of exactly {} English letters.", w.len()));
                }
                wordle::feedback(w, &guess)
            }
            Hidden::Coin(heavy) => {
                let (left, right) = parse_weighing(query).ok_or_else(|| String::from(WEIGH_FIX))?;
                let heavy = *heavy;
                let lie = self.lie_in_block(self.queries as usize / 10) == self.queries;
                let weigh = |side: &[u32]| side.iter().map(|c| if *c == heavy { 11u32 } else { 10 }).sum::<u32>();
                let balanced = weigh(&left) == weigh(&right);
                String::from(if balanced != lie { "Balance" } else { "Imbalance" })
            }
            Hidden::Number(secret) => {
                let g = parse_number(query).ok_or_else(|| String::from(NUMBER_FIX))?;
                String::from(number_feedback(*secret, g))
            }
        };
        self.queries += 1;
        Ok(out)
    }
}

const BANDIT_FIX: &str = "Invalid query. Choose 'Bandit A', 'Bandit B' or 'Bandit C'.";
const CELL_FIX: &str = "Invalid query. Guess a cell in the form (x, y) with x and y integers from 1 to 9.";
const WEIGH_FIX: &str = "Invalid query. Use the form 'Left: Coin 1, Coin 2; Right: Coin 3, Coin 4' with coins from 1 to 100, \
                         both sides non-empty and no coin on both sides.";
const NUMBER_FIX: &str = "Invalid query. Guess in the form 'Number X' where X is an integer.";

pub fn number_feedback(secret: i64, guess: i64) -> &'static str {
    if (guess - secret).abs() <= CLOSE { "Close" } else { "Far" }
}

pub fn parse_bandit(q: &str) -> Option<usize> {
    let rest = q.trim().strip_prefix("Bandit")?.trim();
    match rest {
        "A" => Some(0),
        "B" => Some(1),
        "C" => Some(2),
        _ => None,
    }
}

pub fn parse_cell(q: &str) -> Option<(u8, u8)> {
    let inner = q.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (x, y) = inner.split_once(',')?;
    let (x, y): (u8, u8) = (x.trim().parse().ok()?, y.trim().parse().ok()?);
    ((1..=GRID).contains(&x) && (1..=GRID).contains(&y)).then_some((x, y))
}

fn parse_coins(side: &str) -> Option<Vec<u32>> {
    let coins: Option<Vec<u32>> = side
        .split(',')
        .map(|c| c.trim().strip_prefix("Coin")?.trim().parse::<u32>().ok().filter(|n| (1..=COINS).contains(n)))
        .collect();
    coins.filter(|c| !c.is_empty())
}

pub fn parse_weighing(q: &str) -> Option<(Vec<u32>, Vec<u32>)> {
    let (l, r) = q.trim().split_once(';')?;
    let left = parse_coins(l.trim().strip_prefix("Left:")?)?;
    let right = parse_coins(r.trim().strip_prefix("Right:")?)?;
    let mut all: Vec<u32> = left.iter().chain(&right).copied().collect();
    all.sort_unstable();
    let n = all.len();
    all.dedup();
    (all.len() == n).then_some((left, right))
}

pub fn parse_number(q: &str) -> Option<i64> {
    q.trim().strip_prefix("Number")?.trim().parse().ok()
}

impl PuzzleKind {
    pub fn description(self) -> String {
        match self {
            PuzzleKind::Bandit => String::from(
                "Three slot machines, 'Bandit A', 'Bandit B' and 'Bandit C', each pay out with their own fixed but unknown probability. \
                 Each query names one machine, for example 'Bandit A', and pulls it once; the reply is 'Reward: 1' on a win and 'Reward: 0' otherwise. \
                 Answer with the name of the machine that has the highest winning probability, for example 'Bandit B'",
            ),
            PuzzleKind::Battleship => String::from(
                "A single ship of length 5 lies on a 9x9 grid and fills one whole row or one whole column. \
                 Each query is a cell '(x, y)' with x the row and y the column, both from 1 to 9, and the reply is 'Hit' or 'Miss'. \
                 Answer with the ship's line as 'Row X' or 'Column Y'",
            ),
            PuzzleKind::Wordle { len } => format!(
                "A hidden {len}-letter uppercase word must be found. Each query is a {len}-letter guess, and the reply has one mark per position: \
                 'A' for the right letter in the right place, 'M' for a letter that occurs in the word at another place, 'X' for a letter that is not in the word \
                 (repeated letters are marked only as many times as they occur). Answer with the {len}-letter uppercase word itself"
            ),
            PuzzleKind::HeavyCoin => String::from(
                "Among 100 coins named 'Coin 1' to 'Coin 100', exactly one is heavier than the rest. \
                 Each query weighs two groups in the form 'Left: Coin 1, Coin 2, Coin 3; Right: Coin 4, Coin 5, Coin 6', and the scale replies 'Balance' or 'Imbalance' \
                 without saying which side is heavier. In every block of 10 weighings the scale lies exactly once, at a random weighing, by giving the opposite reply. \
                 Answer in the form 'Heavy Coin X'",
            ),
            PuzzleKind::NumberGuessing => String::from(
                "A secret integer was chosen from 0 to 100. Each query is a guess such as 'Number 10'. \
                 The reply is 'Close' when the guess is within 15 of the secret and 'Far' otherwise. Answer in the form 'Number X'",
            ),
        }
    }

    pub fn domain_size(self) -> usize {
        match self {
            PuzzleKind::Bandit => usize::MAX,
            PuzzleKind::Battleship => 2 * GRID as usize,
            PuzzleKind::Wordle { len } => wordle::word_list(len).len(),
            PuzzleKind::HeavyCoin => COINS as usize,
            PuzzleKind::NumberGuessing => 101,
        }
    }

    /// Hidden answer number `i` of a draw without replacement, or a fresh
    /// bandit.
    pub fn hidden(self, i: usize, r: &mut impl Rng) -> Hidden {
        match self {
            PuzzleKind::Bandit => {
                loop {
                    let p: [f64; 3] = core::array::from_fn(|_| r.random_range(2..=8u32) as f64 / 10.0);
                    let mut s = p;
                    s.sort_by(|a, b| b.total_cmp(a));
                    if s[0] - s[1] >= 0.2 - 1e-9 {
                        return Hidden::Bandit(p);
                    }
                }
            }
            PuzzleKind::Battleship => Hidden::Ship { row: i < GRID as usize, index: (i % GRID as usize) as u8 + 1 },
            PuzzleKind::Wordle { len } => Hidden::Word(wordle::word_list(len)[i].to_string()),
            PuzzleKind::HeavyCoin => Hidden::Coin(i as u32 + 1),
            PuzzleKind::NumberGuessing => Hidden::Number(i as i64),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn puzzle(h: Hidden) -> Puzzle {
        Puzzle::new(h, Stream::seed_from_u64(1))
    }

    #[test]
    fn battleship_membership() {
        let mut p = puzzle(Hidden::Ship { row: true, index: 4 });
        assert_eq!(p.step("(4, 9)").unwrap(), "Hit");
        assert_eq!(p.step("(5, 9)").unwrap(), "Miss");
        assert!(p.step("(0, 9)").is_err());
        assert!(p.step("4, 9").is_err());
        let hits = (1..=9).flat_map(|x| (1..=9).map(move |y| (x, y))).filter(|(x, y)| {
            puzzle(Hidden::Ship { row: false, index: 7 }).step(&format!("({x}, {y})")).unwrap() == "Hit"
        });
        assert_eq!(hits.count(), 9);
    }

    #[test]
    fn number_guess_threshold() {
        assert_eq!(number_feedback(42, 50), "Close");
        assert_eq!(number_feedback(42, 80), "Far");
        assert_eq!(number_feedback(42, 27), "Close");
        assert_eq!(number_feedback(42, 26), "Far");
        assert_eq!(puzzle(Hidden::Number(42)).step("Number 57").unwrap(), "Close");
        assert!(puzzle(Hidden::Number(42)).step("57").is_err());
    }

    #[test]
    fn weighing_syntax() {
        assert_eq!(
            parse_weighing("Left: Coin 1, Coin 2, Coin 3; Right: Coin 4, Coin 5, Coin 6"),
            Some((alloc::vec![1, 2, 3], alloc::vec![4, 5, 6]))
        );
        assert_eq!(parse_weighing("Left: Coin 1; Right: Coin 1"), None);
        assert_eq!(parse_weighing("Left: Coin 101; Right: Coin 1"), None);
        assert_eq!(parse_weighing("Left: ; Right: Coin 1"), None);
    }

    #[test]
    fn scale_lies_on_schedule() {
        let mut p = puzzle(Hidden::Coin(17));
        let lie = p.lie_in_block(0);
        for q in 0..10 {
            let truth = if q % 2 == 0 { "Imbalance" } else { "Balance" };
            let query = if q % 2 == 0 { "Left: Coin 17; Right: Coin 3" } else { "Left: Coin 1; Right: Coin 2" };
            let got = p.step(query).unwrap();
            assert_eq!(got == truth, q != lie, "query {q}");
        }
    }

    #[test]
    fn bandit_fixture() {
        let mut p = puzzle(Hidden::Bandit([1.0, 0.0, 0.5]));
        assert_eq!(p.step("Bandit A").unwrap(), "Reward: 1");
        assert_eq!(p.step("Bandit B").unwrap(), "Reward: 0");
        assert!(p.step("Bandit D").is_err());
        assert_eq!(p.hidden.answer(), "Bandit A");
    }
}
