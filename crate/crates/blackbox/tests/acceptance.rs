//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always print.

use std::time::{Duration, Instant};

use blackbox::harness::{run_benchmark, BenchmarkConfig, Driver};
use blackbox_core::cri::{circuit_for, Circuit, Gate, GateKind, Source};
use blackbox_core::eri::Cipher;
use blackbox_core::gsi::rules::{self, Lsd};
use blackbox_core::gsi::{optimal_moves, optimal_score, GameKind, Match, Move, Step};
use blackbox_core::ipi::puzzle::{Hidden, Puzzle};
use blackbox_core::ipi::wordle;
use blackbox_core::protocol::{accuracy, score_ratio, Verdict};
use blackbox_core::psi::scene::{GRID, SUBSTEPS};
use blackbox_core::psi::{rk4_step, Scene};
use blackbox_core::registry::{instantiate, lookup};
use blackbox_core::{list_environments, rng, EnvFilter, Family, Session, Stage, TurnBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn ciphers() -> Check {
    let cases: [(Cipher, &str, &str); 7] = [
        (Cipher::Caesar { shift: 8 }, "Y", "G"),
        (Cipher::Zigzag { rails: 3 }, "HELLO WORLD", "HOLELWRDLO"),
        (Cipher::Fibonacci, "HELLO", "IFNOT"),
        (Cipher::Hill { key: [[3, 5], [1, 2]] }, "Hi", "jx"),
        (Cipher::CurveTable { columns: 6 }, "Hello World", "W o dl ll re Ho"),
        (Cipher::DynamicCurve, "Hello World", "rl lo dWe Hol"),
        (Cipher::SequentialFeedback { seed: 'b' }, "At", "bU"),
    ];
    for (c, plain, expect) in cases {
        let got = c.encrypt(plain);
        ensure!(got == expect, "{c:?}: {plain:?} gave {got:?}, expected {expect:?}");
    }
    Ok(())
}

fn eval(c: &Circuit, x: &[bool], j: usize) -> bool {
    let read = |s: &Source| match *s {
        Source::Wire(w) => x[w - 1],
        Source::Gate(g) => eval(c, x, g),
    };
    let g = &c.gates()[j - 1];
    match g.kind {
        GateKind::And => read(&g.inputs[0]) & read(&g.inputs[1]),
        GateKind::Or => read(&g.inputs[0]) | read(&g.inputs[1]),
        GateKind::Not => !read(&g.inputs[0]),
    }
}

fn bits(v: u32, n: usize) -> Vec<bool> {
    (0..n).map(|i| (v >> (n - 1 - i)) & 1 == 1).collect()
}

fn value(b: &[bool]) -> u32 {
    b.iter().fold(0, |a, &x| a * 2 + u32::from(x))
}

fn circuits() -> Check {
    let w = Source::Wire;
    let example = Circuit::new(
        5,
        vec![
            Gate::and(w(1), w(2)),
            Gate::and(w(3), Source::Gate(1)),
            Gate::or(w(4), Source::Gate(2)),
            Gate::not(Source::Gate(3)),
            Gate::not(w(5)),
        ],
    )
    .map_err(|e| e.to_string())?;
    let got = example.simulate(&[true, true, false, true, false]);
    ensure!(got == [true, false, true, false, true], "5-gate example gave {got:?}");

    for spec in list_environments(EnvFilter::family(Family::Cri)) {
        let c = circuit_for(spec.id).ok_or("missing circuit")?;
        for v in 0..1u32 << c.inputs() {
            let x = bits(v, c.inputs());
            let y = c.simulate(&x);
            let expect: Vec<bool> = (1..=c.len()).map(|j| eval(&c, &x, j)).collect();
            ensure!(y == expect, "{} differs from the recursive evaluator on {v:b}", spec.id);
            let last = *y.last().unwrap();
            let ok = match spec.id {
                "cri/xor-sequence" => (1..8).all(|k| y[5 * k - 1] == (x[..=k].iter().filter(|b| **b).count() % 2 == 1)),
                "cri/palindrome" => last == ((0..4).all(|i| x[i] == x[7 - i]) && (0..4).all(|i| x[i] == x[i + 4])),
                "cri/and-tree" => last == x.iter().all(|b| *b),
                "cri/add" => {
                    let sum: u32 = (0..9).map(|i| u32::from(y[6 * i + 4]) << i).sum::<u32>() + (u32::from(y[53]) << 9);
                    sum == value(&x[1..]) + u32::from(x[0])
                }
                "cri/compare" => {
                    let (a, b) = (value(&x[..5]), value(&x[5..]));
                    (y[y.len() - 2], last) == (a > b, a < b)
                }
                _ => true,
            };
            ensure!(ok, "{} fails its semantic oracle on {v:b}", spec.id);
        }
    }
    Ok(())
}

fn physics() -> Check {
    let mut s = Session::new("psi/conical-pendulum", TurnBudget::new(6, 1), 0).map_err(|e| e.to_string())?;
    let a = s.submit("0").map_err(|e| e.to_string())?;
    let b = s.submit("1").map_err(|e| e.to_string())?;
    ensure!(a.ends_with("{'object1': (2.5, 0.0, -4.33)}"), "t=0 gave {a}");
    ensure!(b.ends_with("{'object1': (1.19, 2.2, -4.33)}"), "t=1 gave {b}");

    // k = 100, m = 1, released at -0.2: x(t) = -0.2 cos(10 t)
    let h = GRID / SUBSTEPS as f64;
    let mut y = [-0.2, 0.0];
    for step in 1..=100 {
        for _ in 0..SUBSTEPS {
            y = rk4_step(|_, s: &[f64; 2]| [s[1], -100.0 * s[0]], 0.0, &y, h);
        }
        let t = step as f64 * GRID;
        let exact = -0.2 * (10.0 * t).cos();
        ensure!((y[0] - exact).abs() < 1e-3, "SHM at t={t}: {} vs {exact}", y[0]);
    }
    for kind in [blackbox_core::psi::SceneKind::Pendulum, blackbox_core::psi::SceneKind::DoublePendulum] {
        let mut sc = Scene::new(kind);
        let e0 = sc.energy(0).ok_or("no energy")?;
        for step in (0..=1000).step_by(10) {
            let e = sc.energy(step).ok_or("no energy")?;
            ensure!(((e - e0) / e0).abs() < 0.005, "{kind:?} energy drift at step {step}: {e} vs {e0}");
        }
    }
    Ok(())
}

fn cii() -> Check {
    let mut env = instantiate("cii/quicksort", 0).map_err(|e| e.to_string())?;
    let cases = [
        ("arr = [10, 20, 30]", "Set {'arr': [10, 20, 30]}."),
        ("(1, 1)", "['name=arr, value=[10, 20, 30], type=list', 'name=p, value=30, type=int']"),
        (
            "(2, 1)",
            "['name=arr, value=[10, 20, 30], type=list', 'name=p, value=30, type=int', \
             'name=l, value=[10, 20], type=list', 'name=r, value=[], type=list', 'name=i, value=1, type=int']",
        ),
        ("(2, 3)", "Query iteration 3 exceeds maximum possible visits 2 for checkpoint 2"),
        (
            "(3, 1)",
            "['name=arr, value=[10, 20], type=list', 'name=p, value=20, type=int', 'name=l, value=[10], type=list', \
             'name=r, value=[], type=list', 'name=i, value=0, type=int', 'name=s, value=[10, 20], type=list']",
        ),
    ];
    for (q, expect) in cases {
        let got = env.explore(0, q).text;
        ensure!(got == expect, "{q}: {got}");
    }
    env.explore(0, "arr = [5, 2, 8, 2, 5, 1]");
    let sorted = env.explore(0, "(3, 3)").text;
    ensure!(sorted.contains("'name=s, value=[1, 2, 2, 5, 5, 8], type=list'"), "(3, 3): {sorted}");
    let first = env.explore(0, "(1, 3)").text;
    ensure!(first.starts_with("['name=arr, value=[5, 2, 2], type=list', 'name=p, value=2"), "(1, 3): {first}");
    Ok(())
}

fn ipi() -> Check {
    let w = wordle::feedback("ARCANELY", "AIRPLANE");
    ensure!(w == "AXMXMMMM", "wordle gave {w}");
    for run in 0..1000u64 {
        let mut p = Puzzle::new(Hidden::Coin(17), rng::stream("ipi/heavy-coin", run, "feedback", 0));
        for block in 0..3 {
            let mut lies = 0;
            for _ in 0..10 {
                // the truth for coin 17 against coin 3 is Imbalance
                if p.step("Left: Coin 17; Right: Coin 3")? == "Balance" {
                    lies += 1;
                }
            }
            ensure!(lies == 1, "run {run} block {block}: {lies} lies");
        }
    }
    Ok(())
}

fn lsd_brute(opp: &[Move], t: usize, mine: u8, theirs: u8) -> i32 {
    let Some(Move::Lsd(o)) = opp.get(t).copied() else { return 0 };
    let mut acts = vec![Lsd::Load, Lsd::Scout];
    for x in 1..=mine {
        acts.extend([Lsd::Shoot(x), Lsd::Defend(x)]);
    }
    acts.into_iter()
        .map(|a| rules::lsd(a, o, mine, theirs) + lsd_brute(opp, t + 1, a.after(mine), o.after(theirs)))
        .max()
        .unwrap_or(0)
}

fn cards_brute(opp: &[Move], used: u32, t: usize) -> i32 {
    let n = opp.len();
    let Some(Move::Card(o)) = opp.get(t).copied() else { return 0 };
    (1..=n as u32)
        .filter(|c| used & (1 << c) == 0)
        .map(|c| rules::cards(c, o) + cards_brute(opp, used | (1 << c), t + 1))
        .max()
        .unwrap_or(0)
}

fn gsi() -> Check {
    let deterministic =
        [GameKind::Rps7Cycle, GameKind::LsdDefender, GameKind::CardsAscending, GameKind::LsdBalance, GameKind::LsdAttacker];
    for kind in deterministic {
        for n in 8..=15 {
            let mut m = Match::new(kind, n, ChaCha8Rng::seed_from_u64(n as u64));
            for mv in optimal_moves(kind, n).0 {
                ensure!(!matches!(m.play(&mv), Step::Invalid(_)), "{kind:?}: `{mv}` rejected");
            }
            let ratio = score_ratio(m.total() as f64, optimal_score(kind, n));
            ensure!(m.is_over() && ratio == 1.0, "{kind:?} n={n}: ratio {ratio}");
        }
        let mut r = ChaCha8Rng::seed_from_u64(0);
        let opp: Vec<Move> = (0..8).map(|t| kind.opponent(t, 8, &mut r)).collect();
        let brute = match kind {
            GameKind::CardsAscending => Some(cards_brute(&opp, 0, 0)),
            k if k.is_lsd() => Some(lsd_brute(&opp, 0, 0, 0)),
            _ => None,
        };
        if let Some(b) = brute {
            ensure!(b as f64 == optimal_score(kind, 8), "{kind:?}: search {b} vs DP {}", optimal_score(kind, 8));
        }
    }
    for (kind, hand, mean) in [(GameKind::Rps7Random, "paper", 2.0 / 3.0), (GameKind::AntiRpsRandom, "scissors", 0.5)] {
        let n = 100_000;
        let mut m = Match::new(kind, n, ChaCha8Rng::seed_from_u64(1));
        let mut sq = 0.0;
        for _ in 0..n {
            m.play(hand);
            let p = m.turns().last().map_or(0, |t| t.points) as f64;
            sq += p * p;
        }
        let avg = m.total() as f64 / n as f64;
        let sigma = ((sq / n as f64 - avg * avg) / n as f64).sqrt();
        ensure!((avg - mean).abs() < 3.0 * sigma, "{kind:?}: mean {avg}, expected {mean} within 3σ = {}", 3.0 * sigma);
        ensure!((optimal_score(kind, 12) - 12.0 * mean).abs() < 1e-9, "{kind:?}: optimum");
    }
    ensure!(score_ratio(-3.0, 6.0) == 0.0, "negative total does not clip");
    ensure!(score_ratio(6.0, 6.0) == 1.0, "ratio identity");
    Ok(())
}

const POOL: &[&str] =
    &["0", "1.5", "(1, 0, 1, 1)", "Hello World", "load", "rock", "card 1", "Bandit A", "Number 50", "arr = [3, 1]", "(1, 1)", "???"];

fn fuzz(env: &str, budget: TurnBudget, seed: u64, input_seed: u64) -> Result<Session, String> {
    let mut r = ChaCha8Rng::seed_from_u64(input_seed);
    let mut s = Session::new(env, budget, seed).map_err(|e| e.to_string())?;
    let mut key: Vec<String> = Vec::new();
    for _ in 0..3000 {
        if s.stage() == Stage::Done {
            break;
        }
        let input = if s.stage() == Stage::Evaluation && r.random_bool(0.5) {
            if key.is_empty() {
                key = s.env().expected(s.sample_index());
                key.reverse();
            }
            key.pop().unwrap_or_default()
        } else {
            POOL[r.random_range(0..POOL.len())].to_string()
        };
        s.submit(&input).map_err(|e| e.to_string())?;
    }
    Ok(s)
}

fn protocol() -> Check {
    let envs = list_environments(EnvFilter::default());
    let mut r = ChaCha8Rng::seed_from_u64(99);
    for k in 0..100 {
        let env = envs[r.random_range(0..envs.len())].id;
        let budget = TurnBudget::new(r.random_range(1..=4), r.random_range(1..=2));
        let seed = r.random_range(0..1000);
        let (a, b) = (fuzz(env, budget, seed, k)?, fuzz(env, budget, seed, k)?);
        ensure!(a.transcript().to_json() == b.transcript().to_json(), "{env}: transcripts differ");
        ensure!(a.score().ok() == b.score().ok(), "{env}: reports differ");
    }
    for spec in envs.iter().filter(|s| s.family != Family::Gsi) {
        let queries: Vec<&str> = (0..4).map(|_| POOL[r.random_range(0..POOL.len())]).collect();
        let mut instant = Session::new(spec.id, TurnBudget::new(4, 1), 1).map_err(|e| e.to_string())?;
        let mut deferred = Session::new(spec.id, TurnBudget::new(4, 1).deferred(), 1).map_err(|e| e.to_string())?;
        let mut release = String::new();
        for q in &queries {
            instant.submit(q).map_err(|e| e.to_string())?;
            release = deferred.submit(q).map_err(|e| e.to_string())?;
        }
        for (n, (q, obs)) in queries.iter().zip(instant.episode_observations()).enumerate() {
            let entry = format!("[Query {}] {q}\n[Feedback {}] {obs}", n + 1, n + 1);
            ensure!(release.contains(&entry), "{}: deferred release lacks {entry:?}", spec.id);
        }
    }
    let v = |c: &[bool]| -> Vec<Verdict> {
        c.iter()
            .enumerate()
            .map(|(i, x)| Verdict { sample_index: i, correct: *x, attempts_used: 1, credit: f64::from(u8::from(*x)) })
            .collect()
    };
    ensure!(accuracy(&v(&[true, true, false, true])) == 0.75, "[1,1,0,1] is not 0.75");
    for _ in 0..1000 {
        let bits: Vec<bool> = (0..r.random_range(1..30)).map(|_| r.random_bool(0.5)).collect();
        let a = accuracy(&v(&bits));
        let expect = bits.iter().filter(|b| **b).count() as f64 / bits.len() as f64;
        ensure!((a - expect).abs() < 1e-12 && (0.0..=1.0).contains(&a), "accuracy {a} for {bits:?}");
        let mut up = bits.clone();
        let i = r.random_range(0..up.len());
        up[i] = true;
        ensure!(accuracy(&v(&up)) >= a, "flipping a verdict lowered accuracy");
    }
    Ok(())
}

fn scripted_runs() -> Check {
    let solvers = [
        ("circuit-oracle", "cri/xor-sequence"),
        ("cipher-oracle", "eri/caesar-8"),
        ("physics-oracle", "psi/free-fall"),
        ("trace-oracle", "cii/quicksort"),
        ("battleship-prober", "ipi/battleship"),
        ("cards-ascending-optimal", "gsi/cards-ascending-10"),
    ];
    for (solver, env) in solvers {
        let budget = if env.starts_with("gsi/") { "1@1" } else { "10@1" };
        let run = run_benchmark(&BenchmarkConfig {
            driver: Driver::Scripted { solver: solver.into() },
            envs: vec![lookup(env).ok_or("unknown env")?],
            budget: budget.parse().map_err(|e: blackbox_core::Error| e.to_string())?,
            seeds: vec![0, 1],
            parallel: 2,
            timeout: Duration::from_secs(30),
            transcripts: None,
        })
        .map_err(|e| e.to_string())?;
        ensure!(run.results.iter().all(|r| r.accuracy == Some(1.0)), "{solver} on {env}: {:?}", run.results);
        let round = blackbox::BenchmarkRun::from_json(&run.to_json()).map_err(|e| e.to_string())?;
        ensure!(round == run, "{solver}: JSON report does not round-trip");
        let mut csv = Vec::new();
        run.write_csv(&mut csv).map_err(|e| e.to_string())?;
        ensure!(csv.starts_with(b"env_id,family,difficulty,seed,accuracy"), "{solver}: CSV header");
    }
    let run = run_benchmark(&BenchmarkConfig {
        driver: Driver::Scripted { solver: "random-guesser".into() },
        envs: vec![lookup("ipi/number-guessing").ok_or("unknown env")?],
        budget: TurnBudget::new(10, 1),
        seeds: (0..100).collect(),
        parallel: 8,
        timeout: Duration::from_secs(30),
        transcripts: None,
    })
    .map_err(|e| e.to_string())?;
    let acc = run.aggregates.first().and_then(|a| a.accuracy).unwrap_or(1.0);
    ensure!(acc < 0.5 && run.aggregates[0].errors == 0, "random guesser accuracy {acc}");
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("cipher golden vectors", ciphers),
        ("circuit interface vector, exhaustive and semantic oracles", circuits),
        ("physics: conical log values, RK4 harmonic error, energy drift", physics),
        ("CII quicksort trace snapshots", cii),
        ("IPI wordle feedback and one lie per ten weighings", ipi),
        ("GSI optimal play, stochastic expectations, negative clip", gsi),
        ("protocol determinism, deferred equivalence, accuracy properties", protocol),
        ("scripted agents end to end through the harness with well-formed reports", scripted_runs),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS  {name}  ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({ms} ms): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
