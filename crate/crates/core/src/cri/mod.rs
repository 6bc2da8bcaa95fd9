//! Boolean circuit environments. A query is one input vector; the feedback
//! is the output of every gate.

pub mod catalog;
pub mod circuit;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand::seq::index;

use crate::env::{BlackBox, Difficulty, EnvSpec, Family, Judgement, Reply};
use crate::rng;
pub use catalog::build_named;
pub use circuit::{Circuit, Gate, GateKind, Source};

/// Parses bits written as `(0, 1, 1)`, `[0,1,1]`, `0 1 1` or `011`.
pub fn parse_bits(text: &str) -> Option<Vec<bool>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
        .unwrap_or(t);
    let mut bits = Vec::new();
    for c in inner.chars() {
        match c {
            '0' => bits.push(false),
            '1' => bits.push(true),
            ',' => {}
            c if c.is_whitespace() => {}
            _ => return None,
        }
    }
    Some(bits)
}

pub fn render_bits(bits: &[bool], sep: &str) -> String {
    let parts: Vec<&str> = bits.iter().map(|b| if *b { "1" } else { "0" }).collect();
    parts.join(sep)
}

pub struct CriEnv {
    spec: &'static EnvSpec,
    name: &'static str,
    circuit: Circuit,
    tests: Vec<Vec<bool>>,
}

impl CriEnv {
    pub fn new(spec: &'static EnvSpec, name: &'static str, seed: u64) -> Self {
        let circuit = build_named(name).expect("catalog name");
        let n = circuit.inputs();
        let space = 1usize << n;
        let mut r = rng::stream(spec.id, seed, "tests", 0);
        let tests = index::sample(&mut r, space, spec.default_test_count.min(space))
            .into_iter()
            .map(|v| (0..n).map(|bit| (v >> (n - 1 - bit)) & 1 == 1).collect())
            .collect();
        CriEnv { spec, name, circuit, tests }
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }
}

impl BlackBox for CriEnv {
    fn spec(&self) -> &'static EnvSpec {
        self.spec
    }

    fn briefing(&self) -> String {
        format!(
            "Welcome to the Boolean Circuit Game!\nYou are interacting with a blackbox circuit with {} input wires and {} logic gates.",
            self.circuit.inputs(),
            self.circuit.len()
        )
    }

    fn sample_count(&self) -> usize {
        self.tests.len()
    }

    fn explore(&mut self, _sample: usize, query: &str) -> Reply {
        let n = self.circuit.inputs();
        match parse_bits(query) {
            Some(bits) if bits.len() == n => {
                let out = self.circuit.simulate(&bits);
                Reply::done(format!(
                    "Gate outputs for your input [{}]: {}",
                    render_bits(&bits, ", "),
                    render_bits(&out, " ")
                ))
            }
            _ => Reply::invalid(format!(
                "Invalid input. Submit exactly {n} bits (0 or 1) in the format (x_1, x_2, ..., x_{n})."
            )),
        }
    }

    fn question(&mut self, sample: usize) -> String {
        format!(
            "Given the input [{}], answer the output of every gate in the format [y_1, y_2, ..., y_{}] without any other text.",
            render_bits(&self.tests[sample], ", "),
            self.circuit.len()
        )
    }

    fn answer(&mut self, sample: usize, answer: &str) -> Judgement {
        let truth = self.circuit.simulate(&self.tests[sample]);
        Judgement::binary(parse_bits(answer).is_some_and(|b| b == truth))
    }

    fn expected(&self, sample: usize) -> Vec<String> {
        vec![format!("[{}]", render_bits(&self.circuit.simulate(&self.tests[sample]), ", "))]
    }

    fn secrets(&self) -> Vec<String> {
        vec![self.circuit.to_json(), String::from(self.name)]
    }
}

const fn spec(id: &'static str, difficulty: Difficulty, description: &'static str) -> EnvSpec {
    EnvSpec { id, family: Family::Cri, difficulty, description, default_test_count: 10 }
}

pub(crate) const SPECS: &[(EnvSpec, &str)] = &[
    (spec("cri/swap", Difficulty::Easy, "A 9-input circuit of 9 gates."), "swap-9"),
    (spec("cri/random-small", Difficulty::Easy, "A 4-input circuit of 8 gates."), "random-small-4"),
    (spec("cri/consequence", Difficulty::Easy, "An 8-input circuit of 13 gates."), "consequence-8"),
    (spec("cri/xor-sequence", Difficulty::Easy, "An 8-input circuit of 35 gates."), "xor-sequence-8"),
    (spec("cri/palindrome", Difficulty::Easy, "An 8-input circuit of 39 gates."), "palindrome-8"),
    (spec("cri/and-tree", Difficulty::Hard, "An 8-input circuit of 7 gates."), "and-tree-8"),
    (spec("cri/add", Difficulty::Hard, "A 10-input circuit of 54 gates."), "add-10"),
    (spec("cri/compare", Difficulty::Hard, "A 10-input circuit of 46 gates."), "compare-10"),
];

/// The circuit behind a catalog id.
pub fn circuit_for(id: &str) -> Option<Circuit> {
    SPECS.iter().find(|(s, _)| s.id == id).and_then(|(_, name)| build_named(name).ok())
}

pub(crate) fn build(id: &str, seed: u64) -> Option<Box<dyn BlackBox>> {
    SPECS
        .iter()
        .find(|(s, _)| s.id == id)
        .map(|(s, name)| Box::new(CriEnv::new(s, name, seed)) as Box<dyn BlackBox>)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptions_match_circuit_sizes() {
        for (s, name) in SPECS {
            let c = build_named(name).unwrap();
            let expect = format!("{}-input circuit of {} gates.", c.inputs(), c.len());
            assert!(s.description.ends_with(&expect), "{}: {}", s.id, s.description);
        }
    }

    #[test]
    fn catalog_is_seed_free() {
        let a = CriEnv::new(&SPECS[3].0, SPECS[3].1, 1);
        let b = CriEnv::new(&SPECS[3].0, SPECS[3].1, 99);
        assert_eq!(a.circuit(), b.circuit());
    }

    #[test]
    fn feedback_format() {
        let mut e = CriEnv::new(&SPECS[5].0, SPECS[5].1, 0);
        let r = e.explore(0, "(1, 1, 1, 1, 0, 0, 0, 0)");
        assert_eq!(r.text, "Gate outputs for your input [1, 1, 1, 1, 0, 0, 0, 0]: 1 1 0 0 0 1 0");
        assert_eq!(e.explore(0, "(1, 1)").outcome, crate::env::Outcome::Invalid);
        assert_eq!(e.explore(0, "1 1 2 1 0 0 0 0").outcome, crate::env::Outcome::Invalid);
    }

    #[test]
    fn tests_are_distinct_and_self_consistent() {
        for (s, name) in SPECS {
            let mut e = CriEnv::new(s, name, 5);
            assert_eq!(e.sample_count(), 10);
            let mut seen = e.tests.clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), 10);
            for i in 0..10 {
                let exp = e.expected(i).remove(0);
                assert_eq!(e.answer(i, &exp), Judgement::binary(true));
            }
        }
    }
}
