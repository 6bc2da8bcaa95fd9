//! Cipher environments. A query is a plaintext of letters and blank spaces;
//! the feedback is its ciphertext.

pub mod cipher;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::env::{BlackBox, Difficulty, EnvSpec, Family, Judgement, Reply};
use crate::rng;
pub use cipher::{is_plaintext, Cipher};

const WORDS: &[&str] = &[
    "apple", "river", "stone", "garden", "window", "silver", "orange", "market", "planet", "forest", "winter",
    "summer", "candle", "bridge", "rocket", "yellow", "purple", "island", "castle", "dragon", "monkey", "pencil",
    "travel", "quiet", "zebra", "jungle", "violin", "coffee", "butter", "mirror", "shadow", "harbor", "meadow",
    "thunder", "lantern", "kitten", "puzzle", "wizard", "anchor", "breeze", "cactus", "dinner", "engine", "falcon",
    "ginger", "hollow", "jacket", "kettle", "lemon", "magnet", "nectar", "oyster", "pepper", "quartz", "saddle",
    "tunnel", "velvet", "walnut", "yogurt", "zipper", "sky", "fox", "owl", "map", "cup", "ink", "jam", "key",
];

/// A seeded test plaintext: one to three words in varied case.
pub fn sample_plaintext(r: &mut impl Rng) -> String {
    let n = r.random_range(1..=3);
    let words: Vec<String> = (0..n)
        .map(|_| {
            let w = *WORDS.choose(r).unwrap();
            match r.random_range(0..3) {
                0 => String::from(w),
                1 => w.to_ascii_uppercase(),
                _ => {
                    let mut s = String::from(&w[..1]).to_ascii_uppercase();
                    s.push_str(&w[1..]);
                    s
                }
            }
        })
        .collect();
    words.join(" ")
}

pub struct EriEnv {
    spec: &'static EnvSpec,
    cipher: Cipher,
    tests: Vec<String>,
}

impl EriEnv {
    pub fn new(spec: &'static EnvSpec, cipher: Cipher, seed: u64) -> Self {
        let mut r = rng::stream(spec.id, seed, "tests", 0);
        let mut tests: Vec<String> = Vec::new();
        while tests.len() < spec.default_test_count {
            let p = sample_plaintext(&mut r);
            if !tests.contains(&p) {
                tests.push(p);
            }
        }
        EriEnv { spec, cipher, tests }
    }

    pub fn cipher(&self) -> Cipher {
        self.cipher
    }

    pub fn plaintext(&self, sample: usize) -> &str {
        &self.tests[sample]
    }
}

impl BlackBox for EriEnv {
    fn spec(&self) -> &'static EnvSpec {
        self.spec
    }

    fn briefing(&self) -> String {
        String::from("The rule accepts strings made of English letters and blank spaces.")
    }

    fn sample_count(&self) -> usize {
        self.tests.len()
    }

    fn explore(&mut self, _sample: usize, query: &str) -> Reply {
        let q = query.trim();
        if q.is_empty() || !is_plaintext(q) {
            return Reply::invalid(String::from(
                "Invalid string. Only use uppercase or lowercase English letters (A-Z, a-z) and blank spaces.",
            ));
        }
        Reply::done(self.cipher.encrypt(q))
    }

    fn question(&mut self, sample: usize) -> String {
        format!("What is the transformed string of \"{}\"?", self.tests[sample])
    }

    fn answer(&mut self, sample: usize, answer: &str) -> Judgement {
        let truth = self.cipher.encrypt(&self.tests[sample]);
        Judgement::binary(answer.trim() == truth)
    }

    fn expected(&self, sample: usize) -> Vec<String> {
        vec![self.cipher.encrypt(&self.tests[sample])]
    }

    fn secrets(&self) -> Vec<String> {
        vec![serde_json::to_string(&self.cipher).unwrap_or_default()]
    }
}

const fn spec(id: &'static str, difficulty: Difficulty, description: &'static str) -> EnvSpec {
    EnvSpec { id, family: Family::Eri, difficulty, description, default_test_count: 8 }
}

const SUBSTITUTION: &str = "phqgiumeaylnofdxjkrcvstzwb";

pub(crate) const SPECS: &[(EnvSpec, Cipher)] = &[
    (spec("eri/caesar-8", Difficulty::Easy, "A letter-wise substitution."), Cipher::Caesar { shift: 8 }),
    (spec("eri/bacon", Difficulty::Easy, "A binary letter code."), Cipher::BaconXY),
    (spec("eri/zigzag-3", Difficulty::Easy, "A transposition of letters."), Cipher::Zigzag { rails: 3 }),
    (spec("eri/fibonacci", Difficulty::Easy, "A shift that changes along the text."), Cipher::Fibonacci),
    (spec("eri/index-shift", Difficulty::Easy, "A shift that changes along the text."), Cipher::IndexShift),
    (spec("eri/curve-6", Difficulty::Easy, "A transposition of letters into groups."), Cipher::CurveTable { columns: 6 }),
    (
        spec("eri/substitution", Difficulty::Easy, "A letter-wise substitution."),
        Cipher::Substitution { alphabet: SUBSTITUTION },
    ),
    (
        spec("eri/sequential-feedback", Difficulty::Hard, "A shift that depends on earlier output."),
        Cipher::SequentialFeedback { seed: 'b' },
    ),
    (spec("eri/dynamic-curve", Difficulty::Hard, "A transposition of letters into groups."), Cipher::DynamicCurve),
    (spec("eri/vigenere", Difficulty::Hard, "A keyed shift."), Cipher::Vigenere { keyword: "MEMORY" }),
    (spec("eri/hill", Difficulty::Hard, "A block cipher over letter pairs."), Cipher::Hill { key: [[3, 5], [1, 2]] }),
    (
        spec("eri/positional-keyword", Difficulty::Hard, "A keyed shift."),
        Cipher::PositionalKeyword { keyword: "Jackal" },
    ),
    (spec("eri/playfair", Difficulty::Hard, "A digraph substitution on a letter grid."), Cipher::Playfair { keyword: "SECURITY" }),
];

/// The cipher behind a catalog id.
pub fn cipher_for(id: &str) -> Option<Cipher> {
    SPECS.iter().find(|(s, _)| s.id == id).map(|(_, c)| *c)
}

/// The catalog as JSON: id to cipher configuration.
pub fn catalog_json() -> String {
    let entries: Vec<serde_json::Value> = SPECS
        .iter()
        .map(|(s, c)| {
            let mut v = serde_json::to_value(c).unwrap_or_default();
            if let Some(obj) = v.as_object_mut() {
                obj.insert(String::from("id"), serde_json::Value::from(s.id));
            }
            v
        })
        .collect();
    serde_json::to_string_pretty(&entries).unwrap_or_default()
}

pub(crate) fn build(id: &str, seed: u64) -> Option<Box<dyn BlackBox>> {
    SPECS
        .iter()
        .find(|(s, _)| s.id == id)
        .map(|(s, c)| Box::new(EriEnv::new(s, *c, seed)) as Box<dyn BlackBox>)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::Outcome;

    #[test]
    fn samples_are_distinct_plaintexts() {
        for (s, c) in SPECS {
            let mut e = EriEnv::new(s, *c, 4);
            assert_eq!(e.sample_count(), 8);
            for i in 0..8 {
                assert!(is_plaintext(e.plaintext(i)));
                let exp = e.expected(i).remove(0);
                assert_eq!(e.answer(i, &format!(" {exp}\n")), Judgement::binary(true));
            }
        }
    }

    #[test]
    fn rejects_other_characters() {
        let mut e = EriEnv::new(&SPECS[0].0, SPECS[0].1, 0);
        assert_eq!(e.explore(0, "abc1").outcome, Outcome::Invalid);
        assert_eq!(e.explore(0, "").outcome, Outcome::Invalid);
        assert_eq!(e.explore(0, "Yes").text, "Gma");
    }

    #[test]
    fn catalog_serializes() {
        let j = catalog_json();
        assert!(j.contains("\"id\": \"eri/hill\""));
        assert!(j.contains("\"kind\": \"Playfair\""));
    }
}
