//! Mechanical-system environments. A query is a time t in seconds with at
//! most one decimal digit; the feedback is every object's coordinates at
//! that time, rounded to two decimals.

pub mod ode;
pub mod scene;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use rand::seq::index;

use crate::env::{BlackBox, Difficulty, EnvSpec, Family, Judgement, Reply};
use crate::rng;
use crate::value::{round2, Value};
pub use ode::rk4_step;
pub use scene::{Scene, SceneKind};

/// Parses a time as grid steps of 0.1 s.
pub fn parse_time(text: &str) -> Option<usize> {
    let t = text.trim();
    let t = t.strip_prefix("t").map(|r| r.trim_start().strip_prefix('=').unwrap_or(r)).unwrap_or(t).trim();
    let (whole, frac) = match t.split_once('.') {
        Some((w, f)) => (w, f),
        None => (t, ""),
    };
    if whole.is_empty() || !whole.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 1 {
        return None;
    }
    if !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let whole: usize = whole.parse().ok()?;
    let tenth = frac.bytes().next().map_or(0, |b| (b - b'0') as usize);
    let k = whole.checked_mul(10)?.checked_add(tenth)?;
    (k <= scene::MAX_STEPS).then_some(k)
}

pub fn render_time(k: usize) -> String {
    format!("{}.{}", k / 10, k % 10)
}

/// Coordinate map as a dict of `objectN` to rounded triples.
pub fn coordinate_map(positions: &[[f64; 3]]) -> Value {
    Value::Dict(
        positions
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let coords = p.iter().map(|c| Value::Float(round2(*c))).collect();
                (format!("object{}", i + 1), Value::Tuple(coords))
            })
            .collect(),
    )
}

pub struct PsiEnv {
    spec: &'static EnvSpec,
    scene: Scene,
    tests: Vec<usize>,
}

impl PsiEnv {
    pub fn new(spec: &'static EnvSpec, kind: SceneKind, seed: u64) -> Self {
        let mut r = rng::stream(spec.id, seed, "tests", 0);
        let tests = index::sample(&mut r, 100, spec.default_test_count).into_iter().map(|i| i + 1).collect();
        PsiEnv { spec, scene: Scene::new(kind), tests }
    }

    pub fn position_at(&mut self, k: usize) -> Value {
        coordinate_map(&self.scene.positions(k))
    }

    pub fn scene_mut(&mut self) -> &mut Scene {
        &mut self.scene
    }
}

impl BlackBox for PsiEnv {
    fn spec(&self) -> &'static EnvSpec {
        self.spec
    }

    fn briefing(&self) -> String {
        let n = self.scene.kind().objects();
        format!(
            "The system contains {n} object(s). Query a time t in seconds (a non-negative number with at most one decimal digit, up to {}) to observe the coordinates of every object.",
            render_time(scene::MAX_STEPS)
        )
    }

    fn sample_count(&self) -> usize {
        self.tests.len()
    }

    fn explore(&mut self, _sample: usize, query: &str) -> Reply {
        match parse_time(query) {
            Some(k) => Reply::done(self.position_at(k).to_string()),
            None => Reply::invalid(format!(
                "Invalid time. Output a non-negative number with at most one decimal digit, no larger than {}, e.g. 1.5",
                render_time(scene::MAX_STEPS)
            )),
        }
    }

    fn question(&mut self, sample: usize) -> String {
        format!("What is the coordinate of each object at time {}?", render_time(self.tests[sample]))
    }

    fn answer(&mut self, sample: usize, answer: &str) -> Judgement {
        let truth = self.position_at(self.tests[sample]);
        Judgement::binary(Value::parse(answer.trim()).is_ok_and(|v| truth.approx_eq(&v, 0.01)))
    }

    fn expected(&self, sample: usize) -> Vec<String> {
        let mut scene = self.scene.clone();
        vec![coordinate_map(&scene.positions(self.tests[sample])).to_string()]
    }

    fn secrets(&self) -> Vec<String> {
        let params: Vec<String> =
            self.scene.kind().parameters().iter().map(|(k, v)| format!("{k}={v}")).collect();
        vec![format!("{:?}", self.scene.kind()), params.join(", ")]
    }
}

const fn spec(id: &'static str, difficulty: Difficulty, description: &'static str) -> EnvSpec {
    EnvSpec { id, family: Family::Psi, difficulty, description, default_test_count: 6 }
}

pub(crate) const SPECS: &[(EnvSpec, SceneKind)] = &[
    (spec("psi/harmonic-horizontal", Difficulty::Easy, "A block on a horizontal spring."), SceneKind::HarmonicHorizontal),
    (spec("psi/harmonic-vertical", Difficulty::Easy, "A block hanging from a vertical spring."), SceneKind::HarmonicVertical),
    (spec("psi/oblique-projectile", Difficulty::Easy, "A ball thrown at an angle."), SceneKind::ObliqueProjectile),
    (spec("psi/pendulum", Difficulty::Easy, "A simple pendulum released from rest."), SceneKind::Pendulum),
    (spec("psi/conical-pendulum", Difficulty::Easy, "A ball on a string moving in a horizontal circle."), SceneKind::ConicalPendulum),
    (spec("psi/free-fall-elastic", Difficulty::Easy, "A ball dropped onto hard ground."), SceneKind::FreeFallElastic),
    (spec("psi/free-fall", Difficulty::Easy, "A ball dropped with nothing below it."), SceneKind::FreeFall),
    (spec("psi/horizontal-projectile", Difficulty::Easy, "A ball thrown horizontally."), SceneKind::HorizontalProjectile),
    (spec("psi/inelastic-bounce", Difficulty::Easy, "A ball dropped onto soft ground."), SceneKind::InelasticBounce),
    (spec("psi/harmonic-friction", Difficulty::Hard, "A block on a spring sliding over a rough floor."), SceneKind::HarmonicFriction),
    (spec("psi/double-pendulum", Difficulty::Hard, "Two pendulums hung one below the other."), SceneKind::DoublePendulum),
    (spec("psi/air-resistance", Difficulty::Hard, "A ball thrown upward through air."), SceneKind::AirResistance),
];

/// The scene behind a catalog id.
pub fn scene_for(id: &str) -> Option<SceneKind> {
    SPECS.iter().find(|(s, _)| s.id == id).map(|(_, k)| *k)
}

pub(crate) fn build(id: &str, seed: u64) -> Option<Box<dyn BlackBox>> {
    SPECS
        .iter()
        .find(|(s, _)| s.id == id)
        .map(|(s, k)| Box::new(PsiEnv::new(s, *k, seed)) as Box<dyn BlackBox>)
}
