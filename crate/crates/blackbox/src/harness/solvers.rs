//! Scripted agents. Oracles rebuild the hidden rule from the catalog id and
//! answer from the prompt text; probers learn the rule through exploration
//! only; the random guesser is a floor.

use std::collections::{HashMap, VecDeque};

use blackbox_core::cii::{self, ParamKind, Program};
use blackbox_core::cri::{self, render_bits};
use blackbox_core::eri;
use blackbox_core::gsi::{self, optimal_moves};
use blackbox_core::ipi::{self, wordle, PuzzleKind};
use blackbox_core::psi::{self, coordinate_map, parse_time, Scene};
use blackbox_core::protocol::text;
use blackbox_core::value::Value;
use blackbox_core::{EnvSpec, Family, Stage};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::agent::{Agent, AgentError, AgentTurn};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SolverInfo {
    pub name: &'static str,
    pub families: &'static [Family],
    pub summary: &'static str,
}

const ALL: &[Family] = &[Family::Cii, Family::Cri, Family::Psi, Family::Eri, Family::Ipi, Family::Gsi];

pub const SOLVERS: &[SolverInfo] = &[
    SolverInfo { name: "answer-key", families: ALL, summary: "reads the session's answer key; an upper bound" },
    SolverInfo { name: "random-guesser", families: ALL, summary: "seeded random queries and answers; a floor" },
    SolverInfo { name: "cipher-oracle", families: &[Family::Eri], summary: "applies the catalog cipher to the asked plaintext" },
    SolverInfo { name: "circuit-oracle", families: &[Family::Cri], summary: "simulates the catalog circuit on the asked input" },
    SolverInfo { name: "physics-oracle", families: &[Family::Psi], summary: "simulates the catalog scene at the asked time" },
    SolverInfo { name: "trace-oracle", families: &[Family::Cii], summary: "runs the catalog program on the asked input" },
    SolverInfo { name: "game-dp", families: &[Family::Gsi], summary: "plays the dynamic-programming optimum for the opponent" },
    SolverInfo {
        name: "cards-ascending-optimal",
        families: &[Family::Gsi],
        summary: "game-dp restricted to the ascending-cards opponent",
    },
    SolverInfo {
        name: "letter-map-prober",
        families: &[Family::Eri],
        summary: "learns a monoalphabetic map from one query of the whole alphabet",
    },
    SolverInfo {
        name: "truth-table-prober",
        families: &[Family::Cri],
        summary: "queries every input pattern; needs 2^n exploration turns",
    },
    SolverInfo {
        name: "time-table-prober",
        families: &[Family::Psi],
        summary: "queries the grid times 0.1 to 10.0; needs 100 exploration turns",
    },
    SolverInfo {
        name: "battleship-prober",
        families: &[Family::Ipi],
        summary: "diagonal sweep then one disambiguating shot; needs 10 turns per puzzle",
    },
];

pub fn solver_info(name: &str) -> Option<&'static SolverInfo> {
    SOLVERS.iter().find(|s| s.name == name)
}

/// Builds the named solver for one session.
pub fn scripted(name: &str, spec: &'static EnvSpec, seed: u64) -> Result<Box<dyn Agent>, AgentError> {
    let info = solver_info(name).ok_or_else(|| AgentError::Unsupported(format!("unknown solver `{name}`")))?;
    if !info.families.contains(&spec.family) {
        return Err(AgentError::Unsupported(format!("solver `{name}` does not handle {}", spec.id)));
    }
    let missing = || AgentError::Unsupported(format!("solver `{name}` has no rule for {}", spec.id));
    Ok(match name {
        "answer-key" => Box::new(AnswerKey::default()),
        "random-guesser" => Box::new(RandomGuesser {
            rng: ChaCha8Rng::seed_from_u64(seed ^ 0x5eed),
            words: word_lists(),
        }),
        "cipher-oracle" => Box::new(CipherOracle(eri::cipher_for(spec.id).ok_or_else(missing)?)),
        "circuit-oracle" => Box::new(CircuitOracle(cri::circuit_for(spec.id).ok_or_else(missing)?)),
        "physics-oracle" => Box::new(PhysicsOracle(Scene::new(psi::scene_for(spec.id).ok_or_else(missing)?))),
        "trace-oracle" => Box::new(TraceOracle(cii::program_for(spec.id).ok_or_else(missing)?)),
        "game-dp" => Box::new(GameDp(gsi::kind_for(spec.id).ok_or_else(missing)?)),
        "cards-ascending-optimal" => match gsi::kind_for(spec.id) {
            Some(k @ gsi::GameKind::CardsAscending) => Box::new(GameDp(k)),
            _ => return Err(missing()),
        },
        "letter-map-prober" => Box::new(LetterMap::default()),
        "truth-table-prober" => {
            let n = cri::circuit_for(spec.id).ok_or_else(missing)?.inputs();
            Box::new(TruthTable { n, next: 0, table: HashMap::new() })
        }
        "time-table-prober" => Box::new(TimeTable { next: 0, table: HashMap::new() }),
        "battleship-prober" => match ipi::kind_for(spec.id) {
            Some(PuzzleKind::Battleship) => Box::new(Battleship::default()),
            _ => return Err(missing()),
        },
        _ => unreachable!("listed solver"),
    })
}

/// A valid exploration query that reveals nothing in particular.
fn probe(spec: &EnvSpec) -> String {
    match spec.family {
        Family::Psi => "0".into(),
        Family::Eri => "a".into(),
        Family::Cri => {
            let n = cri::circuit_for(spec.id).map_or(1, |c| c.inputs());
            format!("({})", vec!["0"; n].join(", "))
        }
        Family::Cii => match cii::program_for(spec.id).and_then(|p| p.params().first().copied()) {
            Some(p) if p.kind == ParamKind::IntList => format!("{} = [1, 2]", p.name),
            Some(p) => format!("{} = 1", p.name),
            None => "?".into(),
        },
        Family::Ipi | Family::Gsi => "?".into(),
    }
}

/// Text between the last `start` and the following `end`.
fn last_between<'a>(text: &'a str, start: &str, end: &str) -> Option<&'a str> {
    let from = text.rfind(start)? + start.len();
    let len = text[from..].find(end)?;
    Some(&text[from..from + len])
}

/// Current game turn and game length from the last "Turn i/n" line.
fn game_turn(prompt: &str) -> Option<(usize, usize)> {
    let line = prompt.lines().rev().find(|l| l.starts_with("Turn "))?;
    let (i, n) = line.strip_prefix("Turn ")?.split_once('/')?;
    Some((i.trim().parse().ok()?, n.trim().parse().ok()?))
}

/// The environment reply inside an instant-mode turn feedback.
fn turn_reply(prompt: &str) -> Option<&str> {
    let start = prompt.find("Remaining> ")? + "Remaining> ".len();
    Some(&prompt[start..])
}

#[derive(Default)]
struct AnswerKey {
    queue: VecDeque<String>,
    sample: Option<(usize, Stage)>,
}

impl Agent for AnswerKey {
    fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
        let env = turn.session.env();
        let layout = turn.session.layout();
        if self.sample != Some((turn.sample, turn.stage)) {
            self.sample = Some((turn.sample, turn.stage));
            self.queue.clear();
        }
        if turn.stage == Stage::Exploration && layout == blackbox_core::env::Layout::Shared {
            return Ok(probe(turn.spec));
        }
        if self.queue.is_empty() {
            self.queue.extend(env.expected(turn.sample));
        }
        Ok(self.queue.pop_front().unwrap_or_default())
    }
}

fn word_lists() -> [Vec<&'static str>; 2] {
    [wordle::word_list(8).to_vec(), wordle::word_list(11).to_vec()]
}

struct RandomGuesser {
    rng: ChaCha8Rng,
    words: [Vec<&'static str>; 2],
}

impl RandomGuesser {
    fn puzzle_guess(&mut self, kind: PuzzleKind) -> String {
        let r = &mut self.rng;
        match kind {
            PuzzleKind::Bandit => format!("Bandit {}", ["A", "B", "C"][r.random_range(0..3)]),
            PuzzleKind::Battleship => {
                format!("{} {}", ["Row", "Column"][r.random_range(0..2)], r.random_range(1..=9))
            }
            PuzzleKind::Wordle { len } => {
                let list = if len == 8 { &self.words[0] } else { &self.words[1] };
                list.choose(r).map_or_else(|| "A".repeat(len), |w| w.to_string())
            }
            PuzzleKind::HeavyCoin => format!("Heavy Coin {}", r.random_range(1..=100)),
            PuzzleKind::NumberGuessing => format!("Number {}", r.random_range(0..=100)),
        }
    }

    fn game_move(&mut self, prompt: &str) -> String {
        if let Some(cards) = last_between(prompt, "Your cards: ", ".") {
            let cards: Vec<&str> = cards.split(", ").collect();
            return format!("card {}", cards.choose(&mut self.rng).unwrap_or(&"1"));
        }
        let options: Vec<&str> = last_between(prompt, "(e.g., ", ")")
            .map(|s| s.split('`').skip(1).step_by(2).collect())
            .unwrap_or_default();
        options.choose(&mut self.rng).map_or_else(|| "rock".into(), |s| s.to_string())
    }
}

impl Agent for RandomGuesser {
    fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
        let spec = turn.spec;
        let exploring = turn.stage == Stage::Exploration;
        Ok(match spec.family {
            Family::Gsi => self.game_move(turn.prompt),
            Family::Ipi => match ipi::kind_for(spec.id) {
                Some(PuzzleKind::HeavyCoin) if exploring => {
                    let (a, b) = (self.rng.random_range(1..=50), self.rng.random_range(51..=100));
                    format!("Left: Coin {a}; Right: Coin {b}")
                }
                Some(PuzzleKind::Battleship) if exploring => {
                    format!("({}, {})", self.rng.random_range(1..=9), self.rng.random_range(1..=9))
                }
                Some(kind) => self.puzzle_guess(kind),
                None => "?".into(),
            },
            Family::Psi if exploring => format!("{:.1}", self.rng.random_range(0..100) as f64 / 10.0),
            Family::Psi => format!(
                "{{'object1': ({:.2}, 0.0, {:.2})}}",
                self.rng.random_range(-5.0..5.0),
                self.rng.random_range(-5.0..5.0)
            ),
            Family::Eri => {
                let len = self.rng.random_range(1..8);
                (0..len).map(|_| char::from(b'a' + self.rng.random_range(0..26u8))).collect()
            }
            Family::Cri => {
                let n = if exploring {
                    cri::circuit_for(spec.id).map_or(1, |c| c.inputs())
                } else {
                    cri::circuit_for(spec.id).map_or(1, |c| c.len())
                };
                let bits: Vec<bool> = (0..n).map(|_| self.rng.random_bool(0.5)).collect();
                format!("[{}]", render_bits(&bits, ", "))
            }
            Family::Cii if exploring => probe(spec),
            Family::Cii => self.rng.random_range(-10..=10).to_string(),
        })
    }
}

/// Answers only in evaluation; explores with a harmless probe.
trait Oracle {
    fn solve(&mut self, prompt: &str) -> Option<String>;
}

fn oracle_respond(o: &mut impl Oracle, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
    if turn.stage == Stage::Exploration {
        return Ok(probe(turn.spec));
    }
    o.solve(turn.prompt)
        .ok_or_else(|| AgentError::Unsupported(format!("cannot read the question from: {}", turn.prompt)))
}

macro_rules! oracle_agent {
    ($t:ty) => {
        impl Agent for $t {
            fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
                oracle_respond(self, turn)
            }
        }
    };
}

struct CipherOracle(eri::Cipher);

impl Oracle for CipherOracle {
    fn solve(&mut self, prompt: &str) -> Option<String> {
        let plain = last_between(prompt, "transformed string of \"", "\"?")?;
        Some(self.0.encrypt(plain))
    }
}
oracle_agent!(CipherOracle);

struct CircuitOracle(cri::Circuit);

impl Oracle for CircuitOracle {
    fn solve(&mut self, prompt: &str) -> Option<String> {
        let bits = cri::parse_bits(last_between(prompt, "Given the input [", "]")?)?;
        (bits.len() == self.0.inputs()).then(|| format!("[{}]", render_bits(&self.0.simulate(&bits), ", ")))
    }
}
oracle_agent!(CircuitOracle);

struct PhysicsOracle(Scene);

impl Oracle for PhysicsOracle {
    fn solve(&mut self, prompt: &str) -> Option<String> {
        let k = parse_time(last_between(prompt, "of each object at time ", "?")?)?;
        Some(coordinate_map(&self.0.positions(k)).to_string())
    }
}
oracle_agent!(PhysicsOracle);

struct TraceOracle(Program);

impl Oracle for TraceOracle {
    fn solve(&mut self, prompt: &str) -> Option<String> {
        let inputs = last_between(prompt, "input variables of the blackbox are ", ", what's the value for ")?;
        let rest = &prompt[prompt.rfind(", what's the value for ")? + ", what's the value for ".len()..];
        let (var, cp) = rest.split_once(" at checkpoint (")?;
        let (idx, iter) = cp.split_once(')')?.0.split_once(',')?;
        let (idx, iter): (usize, usize) = (idx.trim().parse().ok()?, iter.trim().parse().ok()?);
        let Value::Dict(entries) = Value::parse(inputs).ok()? else { return None };
        let args: Option<Vec<Value>> = self
            .0
            .params()
            .iter()
            .map(|p| entries.iter().find(|(k, _)| k == p.name).map(|(_, v)| v.clone()))
            .collect();
        let trace = self.0.run(&args?);
        let snap = cii::visits(&trace, idx).nth(iter.checked_sub(1)?)?;
        snap.iter().find(|(k, _)| *k == var).map(|(_, v)| v.to_string())
    }
}
oracle_agent!(TraceOracle);

struct GameDp(gsi::GameKind);

impl Agent for GameDp {
    fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
        let (i, n) = game_turn(turn.prompt)
            .ok_or_else(|| AgentError::Unsupported(format!("no turn line in: {}", turn.prompt)))?;
        optimal_moves(self.0, n)
            .0
            .get(i.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| AgentError::Unsupported(format!("turn {i} is outside a {n}-turn game")))
    }
}

const ALPHABET_QUERY: &str = "abcdefghijklmnopqrstuvwxyz ABCDEFGHIJKLMNOPQRSTUVWXYZ";

#[derive(Default)]
struct LetterMap {
    map: HashMap<char, char>,
    asked: bool,
}

impl LetterMap {
    fn learn(&mut self, prompt: &str) {
        let reply = last_between(prompt, "[Feedback 1] ", "\n")
            .or_else(|| prompt.split_once("[Feedback 1] ").map(|(_, r)| r))
            .or_else(|| turn_reply(prompt).filter(|r| !r.starts_with(text::ACK)));
        if let Some(r) = reply {
            for (p, c) in ALPHABET_QUERY.chars().zip(r.chars()) {
                self.map.insert(p, c);
            }
        }
    }
}

impl Agent for LetterMap {
    fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
        if self.asked && self.map.is_empty() {
            self.learn(turn.prompt);
        }
        if turn.stage == Stage::Exploration {
            let first = !self.asked;
            self.asked = true;
            return Ok(if first { ALPHABET_QUERY.into() } else { "a".into() });
        }
        let plain = last_between(turn.prompt, "transformed string of \"", "\"?")
            .ok_or_else(|| AgentError::Unsupported("no plaintext in the question".into()))?;
        Ok(plain.chars().map(|c| self.map.get(&c).copied().unwrap_or(c)).collect())
    }
}

struct TruthTable {
    n: usize,
    next: u32,
    table: HashMap<String, String>,
}

impl Agent for TruthTable {
    fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
        if let Some(rest) = turn.prompt.split_once("Gate outputs for your input [").map(|(_, r)| r) {
            if let Some((input, out)) = rest.split_once("]: ") {
                let out: Vec<&str> = out.split_whitespace().take_while(|t| *t == "0" || *t == "1").collect();
                let out = out.join(", ");
                self.table.insert(input.to_string(), format!("[{out}]"));
            }
        }
        if turn.stage == Stage::Exploration {
            let v = self.next % (1 << self.n);
            self.next += 1;
            let bits: Vec<bool> = (0..self.n).map(|i| (v >> (self.n - 1 - i)) & 1 == 1).collect();
            return Ok(format!("({})", render_bits(&bits, ", ")));
        }
        let input = last_between(turn.prompt, "Given the input [", "]").unwrap_or("");
        Ok(self.table.get(input).cloned().unwrap_or_else(|| "[0]".into()))
    }
}

struct TimeTable {
    next: usize,
    table: HashMap<usize, String>,
}

impl Agent for TimeTable {
    fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
        if self.next > 0 {
            if let Some(r) = turn_reply(turn.prompt) {
                let obs = r.split(" ********").next().unwrap_or(r).trim();
                self.table.insert(self.next, obs.to_string());
            }
        }
        if turn.stage == Stage::Exploration {
            self.next += 1;
            return Ok(psi::render_time(self.next));
        }
        let t = last_between(turn.prompt, "of each object at time ", "?").and_then(parse_time);
        Ok(t.and_then(|k| self.table.get(&k).cloned()).unwrap_or_else(|| "{}".into()))
    }
}

#[derive(Default)]
struct Battleship {
    sample: usize,
    shots: Vec<(u8, u8)>,
    hits: Vec<bool>,
}

impl Battleship {
    fn answer(&self) -> String {
        let Some(k) = self.shots.iter().zip(&self.hits).take(9).find(|(_, h)| **h).map(|(s, _)| s.0) else {
            return "Row 1".into();
        };
        match self.hits.get(9) {
            Some(true) => format!("Row {k}"),
            _ => format!("Column {k}"),
        }
    }
}

impl Agent for Battleship {
    fn respond(&mut self, turn: &AgentTurn<'_>) -> Result<String, AgentError> {
        if turn.sample != self.sample {
            *self = Battleship { sample: turn.sample, ..Default::default() };
        }
        if self.hits.len() < self.shots.len() {
            let r = turn_reply(turn.prompt).unwrap_or("");
            self.hits.push(r.starts_with("Hit"));
        }
        if turn.stage != Stage::Exploration {
            return Ok(self.answer());
        }
        let shot = match self.shots.len() {
            i @ 0..=8 => (i as u8 + 1, i as u8 + 1),
            _ => {
                let k = self.shots.iter().zip(&self.hits).find(|(_, h)| **h).map_or(1, |(s, _)| s.0);
                (k, k % 9 + 1)
            }
        };
        self.shots.push(shot);
        Ok(format!("({}, {})", shot.0, shot.1))
    }
}
