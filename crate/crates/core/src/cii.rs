//! Checkpoint-instrumented reference programs.
//!
//! The agent assigns the program inputs (`arr = [3, 1, 2]`) and then asks
//! for the local variables at the `iter`-th visit of checkpoint `idx`
//! (`(2, 1)`). Each query re-runs the instrumented program on the current
//! inputs, so answers depend only on the inputs.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use crate::env::{BlackBox, Difficulty, EnvSpec, Family, Judgement, Reply};
use crate::rng;
use crate::value::Value;

const TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    IntList,
    Int,
}

impl ParamKind {
    fn py_name(self) -> &'static str {
        match self {
            ParamKind::IntList => "list",
            ParamKind::Int => "int",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Param {
    pub name: &'static str,
    pub kind: ParamKind,
    /// Inclusive bound on the value (ints) or on the length (lists).
    pub range: (i64, i64),
}

/// The catalog programs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Program {
    Quicksort,
    Fib,
    Factorial,
    Exgcd,
    BubbleSort,
    RandomAlgebra,
    ComplexAlgebra,
}

pub type Snapshot = Vec<(&'static str, Value)>;

/// Checkpoint visits in execution order: (checkpoint index, snapshot).
pub type Trace = Vec<(usize, Snapshot)>;

const LIST_VALUES: (i64, i64) = (-1_000_000, 1_000_000);

impl Program {
    pub fn params(self) -> &'static [Param] {
        const ARR: Param = Param { name: "arr", kind: ParamKind::IntList, range: (0, 50) };
        const A_LIST: Param = Param { name: "a", kind: ParamKind::IntList, range: (0, 30) };
        const N_FIB: Param = Param { name: "n", kind: ParamKind::Int, range: (0, 20) };
        const N_FACT: Param = Param { name: "n", kind: ParamKind::Int, range: (0, 20) };
        const BIG: (i64, i64) = (-1_000_000_000, 1_000_000_000);
        const SMALL: (i64, i64) = (-10_000, 10_000);
        match self {
            Program::Quicksort => &[ARR],
            Program::Fib => &[N_FIB],
            Program::Factorial => &[N_FACT],
            Program::Exgcd => &[
                Param { name: "a", kind: ParamKind::Int, range: BIG },
                Param { name: "b", kind: ParamKind::Int, range: BIG },
            ],
            Program::BubbleSort => &[A_LIST],
            Program::RandomAlgebra => &[
                Param { name: "a", kind: ParamKind::Int, range: SMALL },
                Param { name: "b", kind: ParamKind::Int, range: SMALL },
                Param { name: "c", kind: ParamKind::Int, range: SMALL },
            ],
            Program::ComplexAlgebra => &[
                Param { name: "a", kind: ParamKind::Int, range: SMALL },
                Param { name: "b", kind: ParamKind::Int, range: SMALL },
                Param { name: "c", kind: ParamKind::Int, range: SMALL },
                Param { name: "d", kind: ParamKind::Int, range: SMALL },
            ],
        }
    }

    pub fn checkpoint_count(self) -> usize {
        match self {
            Program::Quicksort | Program::RandomAlgebra => 3,
            Program::Fib | Program::Factorial | Program::Exgcd | Program::BubbleSort => 2,
            Program::ComplexAlgebra => 5,
        }
    }

    /// The agent-facing interface line.
    pub fn describe(self) -> String {
        let params: Vec<String> = self
            .params()
            .iter()
            .map(|p| format!("{{'name': '{}', 'type': <class '{}'>}}", p.name, p.kind.py_name()))
            .collect();
        format!(
            "The black-box takes [{}] as input variables, and has {} checkpoints.",
            params.join(", "),
            self.checkpoint_count()
        )
    }

    /// Runs the instrumented program. Inputs must already match `params`.
    pub fn run(self, inputs: &[Value]) -> Trace {
        let mut t = Trace::new();
        match self {
            Program::Quicksort => {
                quicksort(&list(&inputs[0]), &mut t);
            }
            Program::Fib => {
                fib(int(&inputs[0]), &mut t);
            }
            Program::Factorial => {
                factorial(int(&inputs[0]), &mut t);
            }
            Program::Exgcd => {
                exgcd(int(&inputs[0]), int(&inputs[1]), &mut t);
            }
            Program::BubbleSort => bubble_sort(list(&inputs[0]), &mut t),
            Program::RandomAlgebra => random_algebra(int(&inputs[0]), int(&inputs[1]), int(&inputs[2]), &mut t),
            Program::ComplexAlgebra => complex_algebra(
                int(&inputs[0]),
                int(&inputs[1]),
                int(&inputs[2]),
                int(&inputs[3]),
                &mut t,
            ),
        }
        t
    }

    fn sample_inputs(self, rng: &mut rng::Stream) -> Vec<Value> {
        let mut ints = |lo: i64, hi: i64| Value::Int(rng.random_range(lo..=hi));
        match self {
            Program::Quicksort => vec![random_list(rng, 4, 8)],
            Program::BubbleSort => vec![random_list(rng, 4, 7)],
            Program::Fib => vec![ints(3, 12)],
            Program::Factorial => vec![ints(3, 12)],
            Program::Exgcd => vec![ints(2, 300), ints(2, 300)],
            Program::RandomAlgebra => (0..3).map(|_| ints(-20, 20)).collect(),
            Program::ComplexAlgebra => (0..4).map(|_| ints(-12, 12)).collect(),
        }
    }
}

fn random_list(rng: &mut rng::Stream, min_len: usize, max_len: usize) -> Value {
    let len = rng.random_range(min_len..=max_len);
    Value::List((0..len).map(|_| Value::Int(rng.random_range(0..100))).collect())
}

fn list(v: &Value) -> Vec<i64> {
    match v {
        Value::List(items) => items.iter().filter_map(Value::as_int).collect(),
        _ => Vec::new(),
    }
}

fn int(v: &Value) -> i64 {
    v.as_int().unwrap_or(0)
}

fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) { q - 1 } else { q }
}

fn floor_mod(a: i64, b: i64) -> i64 {
    a - b * floor_div(a, b)
}

fn quicksort(arr: &[i64], t: &mut Trace) -> Vec<i64> {
    if arr.len() <= 1 {
        return arr.to_vec();
    }
    let p = arr[arr.len() - 1];
    t.push((1, vec![("arr", Value::int_list(arr)), ("p", Value::Int(p))]));
    let mut l = Vec::new();
    let mut r = Vec::new();
    for &x in &arr[..arr.len() - 1] {
        if x <= p {
            l.push(x);
        } else {
            r.push(x);
        }
    }
    let i = arr.len() as i64 - 2;
    let base = |t: &mut Trace, idx: usize, extra: Option<&[i64]>| {
        let mut s = vec![
            ("arr", Value::int_list(arr)),
            ("p", Value::Int(p)),
            ("l", Value::int_list(&l)),
            ("r", Value::int_list(&r)),
            ("i", Value::Int(i)),
        ];
        if let Some(e) = extra {
            s.push(("s", Value::int_list(e)));
        }
        t.push((idx, s));
    };
    base(t, 2, None);
    let mut s = quicksort(&l, t);
    s.push(p);
    s.extend(quicksort(&r, t));
    base(t, 3, Some(&s));
    s
}

fn fib(n: i64, t: &mut Trace) -> i64 {
    t.push((1, vec![("n", Value::Int(n))]));
    if n <= 1 {
        return n;
    }
    let a = fib(n - 1, t);
    let b = fib(n - 2, t);
    let c = a + b;
    t.push((2, vec![("n", Value::Int(n)), ("a", Value::Int(a)), ("b", Value::Int(b)), ("c", Value::Int(c))]));
    c
}

fn factorial(n: i64, t: &mut Trace) -> i64 {
    t.push((1, vec![("n", Value::Int(n))]));
    if n <= 1 {
        return 1;
    }
    let a = factorial(n - 1, t);
    let b = n * a;
    t.push((2, vec![("n", Value::Int(n)), ("a", Value::Int(a)), ("b", Value::Int(b))]));
    b
}

fn exgcd(a: i64, b: i64, t: &mut Trace) -> (i64, i64, i64) {
    t.push((1, vec![("a", Value::Int(a)), ("b", Value::Int(b))]));
    if b == 0 {
        return (a, 1, 0);
    }
    let (d, x1, y1) = exgcd(b, floor_mod(a, b), t);
    let x = y1;
    let y = x1 - floor_div(a, b) * y1;
    t.push((
        2,
        vec![
            ("a", Value::Int(a)),
            ("b", Value::Int(b)),
            ("d", Value::Int(d)),
            ("x", Value::Int(x)),
            ("y", Value::Int(y)),
        ],
    ));
    (d, x, y)
}

fn bubble_sort(mut a: Vec<i64>, t: &mut Trace) {
    let n = a.len();
    for i in 0..n.saturating_sub(1) {
        let mut f = false;
        for j in 0..n - 1 - i {
            if a[j] > a[j + 1] {
                a.swap(j, j + 1);
                f = true;
                t.push((1, vec![("a", Value::int_list(&a)), ("i", Value::Int(i as i64)), ("j", Value::Int(j as i64))]));
            }
        }
        t.push((2, vec![("a", Value::int_list(&a)), ("i", Value::Int(i as i64)), ("f", Value::Bool(f))]));
        if !f {
            break;
        }
    }
}

/// `x / 2` as Python would print an exact half: an int when even.
fn half(x: i64) -> Value {
    if x % 2 == 0 { Value::Int(x / 2) } else { Value::Float(x as f64 / 2.0) }
}

fn random_algebra(a: i64, b: i64, c: i64, t: &mut Trace) {
    let abc = || vec![("a", Value::Int(a)), ("b", Value::Int(b)), ("c", Value::Int(c))];
    let d = a + b + c;
    let mut s = abc();
    s.push(("d", Value::Int(d)));
    t.push((1, s.clone()));
    let e = a * b - c;
    s.push(("e", Value::Int(e)));
    t.push((2, s.clone()));
    s.push(("f", half(e + d - 10)));
    t.push((3, s));
}

fn complex_algebra(a: i64, b: i64, c: i64, d: i64, t: &mut Trace) {
    let base = || vec![("a", Value::Int(a)), ("b", Value::Int(b)), ("c", Value::Int(c)), ("d", Value::Int(d))];
    let with = |extra: &[(&'static str, i64)]| {
        let mut s = base();
        s.extend(extra.iter().map(|(k, v)| (*k, Value::Int(*v))));
        s
    };
    let mut e = a * b + c * d;
    t.push((1, with(&[("e", e)])));
    e = if e > 50 { e - 10 } else { e + 10 };
    t.push((2, with(&[("e", e)])));
    let mut f = e * e - a - b - c - d;
    t.push((3, with(&[("e", e), ("f", f)])));
    f = if f % 2 != 0 { (f - 1) / 2 } else { f / 2 };
    t.push((4, with(&[("e", e), ("f", f)])));
    let g = f - a;
    t.push((5, with(&[("e", e), ("f", f), ("g", g)])));
}

/// Renders a snapshot as the list of `name=…, value=…, type=…` strings.
pub fn render_snapshot(s: &[(&'static str, Value)]) -> String {
    let items: Vec<String> = s
        .iter()
        .map(|(name, v)| format!("'name={name}, value={v}, type={}'", v.type_name()))
        .collect();
    format!("[{}]", items.join(", "))
}

/// Visits of checkpoint `idx` in `trace`.
pub fn visits(trace: &Trace, idx: usize) -> impl Iterator<Item = &Snapshot> {
    trace.iter().filter(move |(c, _)| *c == idx).map(|(_, s)| s)
}

fn render_inputs(params: &[Param], inputs: &[Value]) -> String {
    let entries: Vec<(String, Value)> =
        params.iter().zip(inputs).map(|(p, v)| (p.name.to_string(), v.clone())).collect();
    Value::Dict(entries).to_string()
}

#[derive(Debug, Clone, PartialEq)]
struct Question {
    inputs: Vec<Value>,
    idx: usize,
    iter: usize,
    var: &'static str,
    expected: Value,
}

pub struct CiiEnv {
    spec: &'static EnvSpec,
    program: Program,
    inputs: Option<Vec<Value>>,
    questions: Vec<Question>,
}

enum Query<'a> {
    Assign(Vec<(&'a str, &'a str)>),
    Checkpoint(i64, i64),
}

fn parse_query(q: &str) -> Option<Query<'_>> {
    let t = q.trim().trim_end_matches(';').trim();
    if t.starts_with('(') && t.ends_with(')') && !t.contains('=') {
        let inner = &t[1..t.len() - 1];
        let (a, b) = inner.split_once(',')?;
        return Some(Query::Checkpoint(a.trim().parse().ok()?, b.trim().parse().ok()?));
    }
    if !t.contains('=') {
        return None;
    }
    let mut out = Vec::new();
    for part in t.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, raw) = part.split_once('=')?;
        out.push((name.trim(), raw.trim()));
    }
    Some(Query::Assign(out))
}

impl CiiEnv {
    pub fn new(spec: &'static EnvSpec, program: Program, seed: u64) -> Self {
        let mut questions = Vec::new();
        let mut r = rng::stream(spec.id, seed, "questions", 0);
        let params = program.params();
        let input_sets = spec.default_test_count / 6;
        let extra = spec.default_test_count - input_sets * 6;
        for set in 0..input_sets {
            let per_set = 6 + usize::from(set < extra);
            let inputs = program.sample_inputs(&mut r);
            let trace = program.run(&inputs);
            let mut candidates: Vec<Question> = Vec::new();
            let mut counts = vec![0usize; program.checkpoint_count() + 1];
            for (idx, snap) in &trace {
                counts[*idx] += 1;
                for (var, v) in snap {
                    let trivial = params.iter().zip(&inputs).any(|(p, iv)| p.name == *var && iv == v);
                    if !trivial {
                        candidates.push(Question {
                            inputs: inputs.clone(),
                            idx: *idx,
                            iter: counts[*idx],
                            var,
                            expected: v.clone(),
                        });
                    }
                }
            }
            for _ in 0..per_set {
                if candidates.is_empty() {
                    break;
                }
                let k = r.random_range(0..candidates.len());
                questions.push(candidates.swap_remove(k));
            }
        }
        CiiEnv { spec, program, inputs: None, questions }
    }

    pub fn program(&self) -> Program {
        self.program
    }

    fn assign(&mut self, items: &[(&str, &str)]) -> Reply {
        let params = self.program.params();
        let mut next = self.inputs.clone().unwrap_or_else(|| {
            params
                .iter()
                .map(|p| match p.kind {
                    ParamKind::IntList => Value::List(Vec::new()),
                    ParamKind::Int => Value::Int(0),
                })
                .collect()
        });
        for (name, raw) in items {
            let Some(pos) = params.iter().position(|p| p.name == *name) else {
                return Reply::invalid("Error: The variable name is not in the function parameters");
            };
            let p = params[pos];
            let value = match convert(raw, p) {
                Ok(v) => v,
                Err(why) => return Reply::invalid(format!("Error: Failed to convert {raw} to {}: {why}", p.kind.py_name())),
            };
            next[pos] = value;
        }
        let shown = render_inputs(params, &next);
        self.inputs = Some(next);
        Reply::done(format!("Set {shown}."))
    }

    fn checkpoint(&self, idx: i64, iter: i64) -> Reply {
        let Some(inputs) = &self.inputs else {
            return Reply::done("Error: Assign values to the input variables before querying a checkpoint.");
        };
        let n = self.program.checkpoint_count() as i64;
        if idx < 1 || iter < 1 {
            return Reply::invalid("Error: The minimal number for idx and iter is 1.");
        }
        if idx > n {
            return Reply::done(format!("Error: Checkpoint {idx} does not exist. There are {n} checkpoints."));
        }
        let trace = self.program.run(inputs);
        let all: Vec<&Snapshot> = visits(&trace, idx as usize).collect();
        match all.get(iter as usize - 1) {
            Some(s) => Reply::done(render_snapshot(s)),
            None => Reply::done(format!(
                "Query iteration {iter} exceeds maximum possible visits {} for checkpoint {idx}",
                all.len()
            )),
        }
    }
}

fn convert(raw: &str, p: Param) -> Result<Value, &'static str> {
    let v = Value::parse(raw).map_err(|_| "invalid syntax")?;
    match (p.kind, &v) {
        (ParamKind::Int, Value::Int(x)) => {
            if *x < p.range.0 || *x > p.range.1 {
                Err("value outside the supported range")
            } else {
                Ok(v)
            }
        }
        (ParamKind::IntList, Value::List(items)) => {
            if items.len() as i64 > p.range.1 {
                return Err("list is longer than supported");
            }
            if items.iter().all(|x| x.as_int().is_some_and(|i| i >= LIST_VALUES.0 && i <= LIST_VALUES.1)) {
                Ok(v)
            } else {
                Err("list elements must be integers")
            }
        }
        _ => Err("type mismatch"),
    }
}

impl BlackBox for CiiEnv {
    fn spec(&self) -> &'static EnvSpec {
        self.spec
    }

    fn briefing(&self) -> String {
        self.program.describe()
    }

    fn sample_count(&self) -> usize {
        self.questions.len()
    }

    fn explore(&mut self, _sample: usize, query: &str) -> Reply {
        match parse_query(query) {
            Some(Query::Assign(items)) => self.assign(&items),
            Some(Query::Checkpoint(idx, iter)) => self.checkpoint(idx, iter),
            None => Reply::invalid(
                "Error: Invalid query. Assign inputs with `name = value; ...` or ask for a checkpoint with `(idx, iter)`.",
            ),
        }
    }

    fn question(&mut self, sample: usize) -> String {
        let q = &self.questions[sample];
        format!(
            "When the input variables of the blackbox are {}, what's the value for {} at checkpoint ({}, {})?",
            render_inputs(self.program.params(), &q.inputs),
            q.var,
            q.idx,
            q.iter
        )
    }

    fn answer(&mut self, sample: usize, answer: &str) -> Judgement {
        let expected = &self.questions[sample].expected;
        let ok = Value::parse(answer.trim()).is_ok_and(|v| v.approx_eq(expected, TOLERANCE));
        Judgement::binary(ok)
    }

    fn expected(&self, sample: usize) -> Vec<String> {
        vec![self.questions[sample].expected.to_string()]
    }

    fn secrets(&self) -> Vec<String> {
        vec![format!("{:?}", self.program)]
    }
}

pub(crate) const SPECS: &[(EnvSpec, Program)] = &[
    (
        EnvSpec {
            id: "cii/quicksort",
            family: Family::Cii,
            difficulty: Difficulty::Easy,
            description: "A recursive routine over one integer list with three checkpoints.",
            default_test_count: 32,
        },
        Program::Quicksort,
    ),
    (
        EnvSpec {
            id: "cii/fib-recursion",
            family: Family::Cii,
            difficulty: Difficulty::Easy,
            description: "A recursive routine over one integer with two checkpoints.",
            default_test_count: 30,
        },
        Program::Fib,
    ),
    (
        EnvSpec {
            id: "cii/factorial-recursion",
            family: Family::Cii,
            difficulty: Difficulty::Easy,
            description: "A recursive routine over one integer with two checkpoints.",
            default_test_count: 30,
        },
        Program::Factorial,
    ),
    (
        EnvSpec {
            id: "cii/exgcd",
            family: Family::Cii,
            difficulty: Difficulty::Easy,
            description: "A recursive routine over two integers with two checkpoints.",
            default_test_count: 33,
        },
        Program::Exgcd,
    ),
    (
        EnvSpec {
            id: "cii/bubble-sort",
            family: Family::Cii,
            difficulty: Difficulty::Easy,
            description: "A nested-loop routine over one integer list with two checkpoints.",
            default_test_count: 35,
        },
        Program::BubbleSort,
    ),
    (
        EnvSpec {
            id: "cii/random-algebra",
            family: Family::Cii,
            difficulty: Difficulty::Easy,
            description: "Straight-line arithmetic over three integers with three checkpoints.",
            default_test_count: 30,
        },
        Program::RandomAlgebra,
    ),
    (
        EnvSpec {
            id: "cii/complex-algebra",
            family: Family::Cii,
            difficulty: Difficulty::Hard,
            description: "Branching arithmetic over four integers with five checkpoints.",
            default_test_count: 35,
        },
        Program::ComplexAlgebra,
    ),
];

/// The program behind a catalog id.
pub fn program_for(id: &str) -> Option<Program> {
    SPECS.iter().find(|(s, _)| s.id == id).map(|(_, k)| *k)
}

pub(crate) fn build(id: &str, seed: u64) -> Option<Box<dyn BlackBox>> {
    SPECS
        .iter()
        .find(|(s, _)| s.id == id)
        .map(|(s, p)| Box::new(CiiEnv::new(s, *p, seed)) as Box<dyn BlackBox>)
}
