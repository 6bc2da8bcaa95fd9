//! Acyclic AND/OR/NOT circuits over `n` input wires.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    And,
    Or,
    Not,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Not => 1,
            _ => 2,
        }
    }
}

/// A gate input: an input wire or an earlier gate, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Wire(usize),
    Gate(usize),
}

// data files encode sources as [kind, index] with kind 0 = wire, 1 = gate
impl Serialize for Source {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Source::Wire(i) => (0u8, i).serialize(s),
            Source::Gate(i) => (1u8, i).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Source {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (kind, idx) = <(u8, usize)>::deserialize(d)?;
        match kind {
            0 => Ok(Source::Wire(idx)),
            1 => Ok(Source::Gate(idx)),
            _ => Err(serde::de::Error::custom("source kind must be 0 (wire) or 1 (gate)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub inputs: Vec<Source>,
}

impl Gate {
    pub fn and(a: Source, b: Source) -> Self {
        Gate { kind: GateKind::And, inputs: alloc::vec![a, b] }
    }

    pub fn or(a: Source, b: Source) -> Self {
        Gate { kind: GateKind::Or, inputs: alloc::vec![a, b] }
    }

    pub fn not(a: Source) -> Self {
        Gate { kind: GateKind::Not, inputs: alloc::vec![a] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

#[derive(Deserialize)]
struct RawCircuit {
    n: usize,
    gates: Vec<Gate>,
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawCircuit::deserialize(d)?;
        Circuit::new(raw.n, raw.gates).map_err(serde::de::Error::custom)
    }
}

impl Circuit {
    /// Validates arity, wire range and acyclicity (gate `i` may only read
    /// gates `< i`).
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidCircuit("a circuit needs at least one input wire".into()));
        }
        for (i, g) in gates.iter().enumerate() {
            let pos = i + 1;
            if g.inputs.len() != g.kind.arity() {
                return Err(Error::InvalidCircuit(format!(
                    "gate {pos} ({:?}) takes {} input(s), got {}",
                    g.kind,
                    g.kind.arity(),
                    g.inputs.len()
                )));
            }
            for src in &g.inputs {
                match *src {
                    Source::Wire(w) if w == 0 || w > n => {
                        return Err(Error::InvalidCircuit(format!("gate {pos} reads wire {w}, outside 1..={n}")));
                    }
                    Source::Gate(j) if j == 0 || j >= pos => {
                        return Err(Error::InvalidCircuit(format!(
                            "gate {pos} reads gate {j}; only gates 1..{pos} may be read"
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(Circuit { n, gates })
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::InvalidCircuit(format!("{e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }

    pub fn inputs(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Output of every gate in index order. `input.len()` must equal `n`.
    pub fn simulate(&self, input: &[bool]) -> Vec<bool> {
        assert_eq!(input.len(), self.n, "input width");
        let mut out: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let read = |s: &Source| match *s {
                Source::Wire(w) => input[w - 1],
                Source::Gate(j) => out[j - 1],
            };
            let v = match g.kind {
                GateKind::And => read(&g.inputs[0]) && read(&g.inputs[1]),
                GateKind::Or => read(&g.inputs[0]) || read(&g.inputs[1]),
                GateKind::Not => !read(&g.inputs[0]),
            };
            out.push(v);
        }
        out
    }
}

/// Little helpers for building circuits gate by gate.
pub(crate) struct Builder {
    n: usize,
    gates: Vec<Gate>,
}

impl Builder {
    pub fn new(n: usize) -> Self {
        Builder { n, gates: Vec::new() }
    }

    pub fn push(&mut self, g: Gate) -> Source {
        self.gates.push(g);
        Source::Gate(self.gates.len())
    }

    pub fn and(&mut self, a: Source, b: Source) -> Source {
        self.push(Gate::and(a, b))
    }

    pub fn or(&mut self, a: Source, b: Source) -> Source {
        self.push(Gate::or(a, b))
    }

    pub fn not(&mut self, a: Source) -> Source {
        self.push(Gate::not(a))
    }

    /// `(a AND NOT b) OR (NOT a AND b)`, five gates.
    pub fn xor(&mut self, a: Source, b: Source) -> Source {
        let nb = self.not(b);
        let left = self.and(a, nb);
        let na = self.not(a);
        let right = self.and(na, b);
        self.or(left, right)
    }

    pub fn finish(self) -> Circuit {
        Circuit::new(self.n, self.gates).expect("catalog circuits are well formed")
    }
}

pub fn wire(i: usize) -> Source {
    Source::Wire(i)
}
