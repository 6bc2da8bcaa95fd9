//! Rule tables and single-turn resolution.

use core::fmt;

pub const HANDS: [&str; 7] = ["rock", "paper", "scissors", "fire", "water", "air", "sponge"];
pub const ANTI_HANDS: [&str; 3] = ["rock", "paper", "scissors"];
pub const MAX_BULLETS: u8 = 8;

const ROCK: usize = 0;
const PAPER: usize = 1;
const SCISSORS: usize = 2;
const FIRE: usize = 3;
const WATER: usize = 4;
const AIR: usize = 5;
const SPONGE: usize = 6;

/// What each hand defeats. Fire takes scissors and scissors take air.
const DEFEATS: [[usize; 3]; 7] = [
    [SCISSORS, SPONGE, FIRE],
    [ROCK, WATER, AIR],
    [PAPER, SPONGE, AIR],
    [SCISSORS, PAPER, SPONGE],
    [ROCK, FIRE, SCISSORS],
    [FIRE, ROCK, WATER],
    [WATER, PAPER, AIR],
];

/// Points for the first hand in seven-hand play.
pub fn rps7(a: usize, b: usize) -> i32 {
    if DEFEATS[a].contains(&b) {
        1
    } else if DEFEATS[b].contains(&a) {
        -1
    } else {
        0
    }
}

/// Points for the first hand under reversed rock-paper-scissors:
/// scissors beat rock, paper beats scissors, rock beats paper.
pub fn anti_rps(a: usize, b: usize) -> i32 {
    match (a + 3 - b) % 3 {
        0 => 0,
        2 => 1,
        _ => -1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lsd {
    Load,
    Scout,
    Shoot(u8),
    Defend(u8),
}

impl Lsd {
    /// The action as the other player sees it: amounts hidden.
    pub fn public(self) -> &'static str {
        match self {
            Lsd::Load => "load",
            Lsd::Scout => "scout",
            Lsd::Shoot(_) => "shoot",
            Lsd::Defend(_) => "defend",
        }
    }

    pub fn cost(self) -> u8 {
        match self {
            Lsd::Shoot(n) | Lsd::Defend(n) => n,
            _ => 0,
        }
    }

    pub fn after(self, bullets: u8) -> u8 {
        match self {
            Lsd::Load => (bullets + 1).min(MAX_BULLETS),
            Lsd::Scout => bullets,
            Lsd::Shoot(n) | Lsd::Defend(n) => bullets - n,
        }
    }
}

impl fmt::Display for Lsd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lsd::Load => f.write_str("load"),
            Lsd::Scout => f.write_str("scout"),
            Lsd::Shoot(n) => write!(f, "shoot {n}"),
            Lsd::Defend(n) => write!(f, "defend {n}"),
        }
    }
}

/// Points for player a; `a_bullets`/`b_bullets` are pre-action counts.
pub fn lsd(a: Lsd, b: Lsd, a_bullets: u8, b_bullets: u8) -> i32 {
    use Lsd::*;
    match (a, b) {
        (Shoot(_), Shoot(_)) => (a_bullets as i32 - b_bullets as i32).signum(),
        (Shoot(x), Defend(y)) => {
            if y >= x { -1 } else { 1 }
        }
        (Defend(y), Shoot(x)) => {
            if y >= x { 1 } else { -1 }
        }
        (Shoot(_), Load | Scout) => 1,
        (Load | Scout, Shoot(_)) => -1,
        _ => 0,
    }
}

pub fn cards(a: u32, b: u32) -> i32 {
    (a as i32 - b as i32).signum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_hand_wins_and_loses_three() {
        for a in 0..7 {
            assert_eq!((0..7).filter(|b| rps7(a, *b) == 1).count(), 3);
            assert_eq!((0..7).filter(|b| rps7(a, *b) == -1).count(), 3);
            for b in 0..7 {
                assert_eq!(rps7(a, b), -rps7(b, a));
            }
        }
        assert_eq!(rps7(PAPER, ROCK), 1);
        assert_eq!(rps7(ROCK, ROCK), 0);
        assert_eq!(rps7(FIRE, SCISSORS), 1);
        assert_eq!(rps7(SCISSORS, AIR), 1);
    }

    #[test]
    fn reversed_triangle() {
        assert_eq!(anti_rps(SCISSORS, ROCK), 1);
        assert_eq!(anti_rps(PAPER, SCISSORS), 1);
        assert_eq!(anti_rps(ROCK, PAPER), 1);
        assert_eq!(anti_rps(ROCK, SCISSORS), -1);
        assert_eq!(anti_rps(PAPER, PAPER), 0);
    }

    #[test]
    fn lsd_examples() {
        assert_eq!(lsd(Lsd::Shoot(1), Lsd::Load, 1, 0), 1);
        assert_eq!(lsd(Lsd::Load, Lsd::Shoot(1), 0, 1), -1);
        assert_eq!(lsd(Lsd::Shoot(2), Lsd::Defend(2), 2, 2), -1);
        assert_eq!(lsd(Lsd::Shoot(3), Lsd::Defend(2), 3, 2), 1);
        assert_eq!(lsd(Lsd::Load, Lsd::Load, 0, 0), 0);
        assert_eq!(lsd(Lsd::Shoot(1), Lsd::Shoot(1), 3, 1), 1);
        assert_eq!(lsd(Lsd::Shoot(1), Lsd::Shoot(2), 2, 2), 0);
        assert_eq!(lsd(Lsd::Defend(1), Lsd::Scout, 1, 0), 0);
    }

    #[test]
    fn zero_sum() {
        let acts = [Lsd::Load, Lsd::Scout, Lsd::Shoot(1), Lsd::Shoot(2), Lsd::Defend(1), Lsd::Defend(2)];
        for a in acts {
            for b in acts {
                for (x, y) in [(2, 2), (3, 2), (2, 5)] {
                    assert_eq!(lsd(a, b, x, y), -lsd(b, a, y, x));
                }
            }
        }
    }

    #[test]
    fn bullets_capped() {
        assert_eq!(Lsd::Load.after(8), 8);
        assert_eq!(Lsd::Shoot(3).after(5), 2);
    }
}
