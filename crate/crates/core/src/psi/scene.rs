//! Mechanical scenes: time to object coordinates.
//!
//! All scenes use g = 10 m/s². The vertical axis is z; planar motion lies
//! in the x-z plane unless it is horizontal, in which case it runs along x.
//! Integrated scenes are advanced on a 0.1 s grid, each grid interval split
//! into [`SUBSTEPS`] RK4 steps, and grid states are memoized.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use libm::{cos, fabs, sin, sqrt, tan};

use super::ode::rk4_step;

pub const G: f64 = 10.0;
pub const GRID: f64 = 0.1;
pub const SUBSTEPS: usize = 10;
/// Latest queryable time, in grid steps.
pub const MAX_STEPS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SceneKind {
    HarmonicHorizontal,
    HarmonicVertical,
    ObliqueProjectile,
    Pendulum,
    ConicalPendulum,
    FreeFallElastic,
    FreeFall,
    HorizontalProjectile,
    InelasticBounce,
    HarmonicFriction,
    DoublePendulum,
    AirResistance,
}

// physical parameters
const SPRING_K: f64 = 100.0;
const SPRING_MASS: f64 = 1.0;
const SPRING_AMPLITUDE: f64 = 0.2;
const PENDULUM_LENGTH: f64 = 2.0;
const PENDULUM_ANGLE: f64 = PI / 3.0;
const CONICAL_LENGTH: f64 = 5.0;
const CONICAL_ANGLE: f64 = PI / 6.0;
const ELASTIC_HEIGHT: f64 = 10.0;
const INELASTIC_HEIGHT: f64 = 20.0;
const RESTITUTION: f64 = 0.6;
const FRICTION_START: f64 = -1.0;
const FRICTION_MU: f64 = 0.1;
const DOUBLE_ANGLE: f64 = PI / 4.0;
const DROP_MASS: f64 = 2.0;
const DROP_SPEED: f64 = 15.0;
const DRAG: f64 = 0.1;

impl SceneKind {
    pub fn objects(self) -> usize {
        match self {
            SceneKind::DoublePendulum => 2,
            _ => 1,
        }
    }

    pub fn is_integrated(self) -> bool {
        matches!(
            self,
            SceneKind::Pendulum | SceneKind::HarmonicFriction | SceneKind::DoublePendulum | SceneKind::AirResistance
        )
    }

    /// Parameter table, SI units.
    pub fn parameters(self) -> &'static [(&'static str, f64)] {
        match self {
            SceneKind::HarmonicHorizontal | SceneKind::HarmonicVertical => {
                &[("mass", SPRING_MASS), ("spring_constant", SPRING_K), ("initial_displacement", -SPRING_AMPLITUDE)]
            }
            SceneKind::ObliqueProjectile => &[("mass", 2.0), ("vx0", 10.0), ("vz0", 10.0)],
            SceneKind::Pendulum => &[("length", PENDULUM_LENGTH), ("initial_angle_deg", 60.0)],
            SceneKind::ConicalPendulum => &[("mass", 2.0), ("length", CONICAL_LENGTH), ("angle_deg", 30.0)],
            SceneKind::FreeFallElastic => &[("mass", 5.0), ("height", ELASTIC_HEIGHT)],
            SceneKind::FreeFall => &[],
            SceneKind::HorizontalProjectile => &[("mass", 2.0), ("vx0", 10.0)],
            SceneKind::InelasticBounce => &[("mass", 5.0), ("height", INELASTIC_HEIGHT), ("restitution", RESTITUTION)],
            SceneKind::HarmonicFriction => &[
                ("mass", SPRING_MASS),
                ("spring_constant", SPRING_K),
                ("initial_displacement", FRICTION_START),
                ("friction_coefficient", FRICTION_MU),
            ],
            SceneKind::DoublePendulum => {
                &[("mass1", 1.0), ("mass2", 1.0), ("length1", 1.0), ("length2", 1.0), ("angle1_deg", 45.0), ("angle2_deg", 45.0)]
            }
            SceneKind::AirResistance => &[("mass", DROP_MASS), ("vz0", DROP_SPEED), ("drag", DRAG)],
        }
    }
}

pub type State = [f64; 4];

/// A scene with its integration memo.
#[derive(Debug, Clone)]
pub struct Scene {
    kind: SceneKind,
    memo: Vec<State>,
    stuck: bool,
}

impl Scene {
    pub fn new(kind: SceneKind) -> Self {
        let start = match kind {
            SceneKind::Pendulum => [PENDULUM_ANGLE, 0.0, 0.0, 0.0],
            SceneKind::HarmonicFriction => [FRICTION_START, 0.0, 0.0, 0.0],
            SceneKind::DoublePendulum => [DOUBLE_ANGLE, DOUBLE_ANGLE, 0.0, 0.0],
            SceneKind::AirResistance => [0.0, DROP_SPEED, 0.0, 0.0],
            _ => [0.0; 4],
        };
        Scene { kind, memo: vec![start], stuck: false }
    }

    pub fn kind(&self) -> SceneKind {
        self.kind
    }

    /// Integrated state after `k` grid steps.
    pub fn state(&mut self, k: usize) -> State {
        while self.memo.len() <= k {
            let last = self.memo[self.memo.len() - 1];
            let next = self.advance(last);
            self.memo.push(next);
        }
        self.memo[k]
    }

    fn advance(&mut self, mut y: State) -> State {
        let h = GRID / SUBSTEPS as f64;
        for _ in 0..SUBSTEPS {
            y = match self.kind {
                SceneKind::Pendulum => {
                    let s = rk4_step(|_, s: &[f64; 2]| [s[1], -G / PENDULUM_LENGTH * sin(s[0])], 0.0, &[y[0], y[1]], h);
                    [s[0], s[1], 0.0, 0.0]
                }
                SceneKind::DoublePendulum => rk4_step(|_, s: &State| double_pendulum(s), 0.0, &y, h),
                SceneKind::AirResistance => {
                    let s = rk4_step(
                        |_, s: &[f64; 2]| [s[1], -G - DRAG / DROP_MASS * s[1] * fabs(s[1])],
                        0.0,
                        &[y[0], y[1]],
                        h,
                    );
                    [s[0], s[1], 0.0, 0.0]
                }
                SceneKind::HarmonicFriction => self.friction_step(y, h),
                _ => y,
            };
        }
        y
    }

    // Coulomb friction: the friction direction is frozen for a substep and
    // re-evaluated from the velocity sign; the block sticks for good once
    // it turns around where the spring cannot beat static friction.
    fn friction_step(&mut self, y: State, h: f64) -> State {
        if self.stuck {
            return y;
        }
        let limit = FRICTION_MU * SPRING_MASS * G;
        let spring = -SPRING_K * y[0];
        let dir = if y[1] != 0.0 {
            y[1].signum()
        } else if fabs(spring) <= limit {
            self.stuck = true;
            return y;
        } else {
            spring.signum()
        };
        let s = rk4_step(
            |_, s: &[f64; 2]| [s[1], (-SPRING_K * s[0] - limit * dir) / SPRING_MASS],
            0.0,
            &[y[0], y[1]],
            h,
        );
        if s[1] * dir < 0.0 && fabs(SPRING_K * s[0]) <= limit {
            self.stuck = true;
            return [s[0], 0.0, 0.0, 0.0];
        }
        [s[0], s[1], 0.0, 0.0]
    }

    /// Unrounded coordinates at `k` grid steps (t = k / 10 s).
    pub fn positions(&mut self, k: usize) -> Vec<[f64; 3]> {
        let t = k as f64 * GRID;
        match self.kind {
            SceneKind::HarmonicHorizontal => vec![[-SPRING_AMPLITUDE * cos(omega_spring() * t), 0.0, 0.0]],
            SceneKind::HarmonicVertical => vec![[0.0, 0.0, SPRING_AMPLITUDE * (cos(omega_spring() * t) - 1.0)]],
            SceneKind::ObliqueProjectile => vec![[10.0 * t, 0.0, 10.0 * t - G / 2.0 * t * t]],
            SceneKind::ConicalPendulum => {
                let r = CONICAL_LENGTH * sin(CONICAL_ANGLE);
                let w = sqrt(G * tan(CONICAL_ANGLE) / CONICAL_LENGTH);
                vec![[r * cos(w * t), r * sin(w * t), -CONICAL_LENGTH * cos(CONICAL_ANGLE)]]
            }
            SceneKind::FreeFallElastic => vec![[0.0, 0.0, elastic_height(t)]],
            SceneKind::FreeFall => vec![[0.0, 0.0, -G / 2.0 * t * t]],
            SceneKind::HorizontalProjectile => vec![[10.0 * t, 0.0, -G / 2.0 * t * t]],
            SceneKind::InelasticBounce => vec![[0.0, 0.0, inelastic_height(t)]],
            SceneKind::Pendulum => {
                let th = self.state(k)[0];
                vec![[PENDULUM_LENGTH * sin(th), 0.0, -PENDULUM_LENGTH * cos(th)]]
            }
            SceneKind::HarmonicFriction => vec![[self.state(k)[0], 0.0, 0.0]],
            SceneKind::DoublePendulum => {
                let s = self.state(k);
                let (x1, z1) = (sin(s[0]), -cos(s[0]));
                vec![[x1, 0.0, z1], [x1 + sin(s[1]), 0.0, z1 - cos(s[1])]]
            }
            SceneKind::AirResistance => vec![[0.0, 0.0, self.state(k)[0]]],
        }
    }

    /// Mechanical energy per unit mass for the frictionless integrated
    /// scenes; `None` elsewhere.
    pub fn energy(&mut self, k: usize) -> Option<f64> {
        match self.kind {
            SceneKind::Pendulum => {
                let s = self.state(k);
                let l = PENDULUM_LENGTH;
                Some(0.5 * l * l * s[1] * s[1] + G * l * (1.0 - cos(s[0])))
            }
            SceneKind::DoublePendulum => {
                // unit masses and rods
                let s = self.state(k);
                let (t1, t2, w1, w2) = (s[0], s[1], s[2], s[3]);
                let kinetic = 0.5 * w1 * w1 + 0.5 * (w1 * w1 + w2 * w2 + 2.0 * w1 * w2 * cos(t1 - t2));
                let potential = -G * (2.0 * cos(t1) + cos(t2));
                Some(kinetic + potential)
            }
            _ => None,
        }
    }
}

fn omega_spring() -> f64 {
    sqrt(SPRING_K / SPRING_MASS)
}

/// Bounce height for a perfectly elastic ground: period 2·sqrt(2h/g).
pub fn elastic_height(t: f64) -> f64 {
    let fall = sqrt(2.0 * ELASTIC_HEIGHT / G);
    let s = t % (2.0 * fall);
    let u = if s <= fall { s } else { 2.0 * fall - s };
    ELASTIC_HEIGHT - G / 2.0 * u * u
}

/// Bounce height with restitution 0.6; the bounces accumulate to rest at
/// t = 8 s.
pub fn inelastic_height(t: f64) -> f64 {
    let fall = sqrt(2.0 * INELASTIC_HEIGHT / G);
    if t <= fall {
        return INELASTIC_HEIGHT - G / 2.0 * t * t;
    }
    let mut rest = t - fall;
    let mut v = RESTITUTION * G * fall;
    while v > 1e-9 {
        let flight = 2.0 * v / G;
        if rest < flight {
            return v * rest - G / 2.0 * rest * rest;
        }
        rest -= flight;
        v *= RESTITUTION;
    }
    0.0
}

// unit masses and rods: state (θ1, θ2, ω1, ω2)
fn double_pendulum(s: &State) -> State {
    let (t1, t2, w1, w2) = (s[0], s[1], s[2], s[3]);
    let d = t1 - t2;
    let den = 3.0 - cos(2.0 * d);
    let a1 = (-3.0 * G * sin(t1) - G * sin(t1 - 2.0 * t2) - 2.0 * sin(d) * (w2 * w2 + w1 * w1 * cos(d))) / den;
    let a2 = (2.0 * sin(d) * (2.0 * w1 * w1 + 2.0 * G * cos(t1) + w2 * w2 * cos(d))) / den;
    [w1, w2, a1, a2]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_conditions() {
        let mut p = Scene::new(SceneKind::DoublePendulum);
        let s = 0.5f64.sqrt();
        let pos = p.positions(0);
        assert!((pos[0][0] - s).abs() < 1e-12 && (pos[0][2] + s).abs() < 1e-12);
        assert!((pos[1][0] - 2.0 * s).abs() < 1e-12 && (pos[1][2] + 2.0 * s).abs() < 1e-12);
        assert_eq!(Scene::new(SceneKind::HorizontalProjectile).positions(0), vec![[0.0, 0.0, 0.0]]);
        assert_eq!(Scene::new(SceneKind::HarmonicHorizontal).positions(0)[0][0], -0.2);
    }

    #[test]
    fn inelastic_bounce_comes_to_rest() {
        assert_eq!(inelastic_height(0.0), 20.0);
        assert!(inelastic_height(2.0).abs() < 1e-9);
        // first rebound leaves at 12 m/s and peaks after 1.2 s at 7.2 m
        assert!((inelastic_height(3.2) - 7.2).abs() < 1e-9);
        assert_eq!(inelastic_height(8.5), 0.0);
    }

    #[test]
    fn friction_oscillator_stops() {
        let mut s = Scene::new(SceneKind::HarmonicFriction);
        let x = s.positions(1000)[0][0];
        assert!(x.abs() <= 0.01 + 1e-9, "final x = {x}");
        let later = s.state(1000);
        assert_eq!(later[1], 0.0);
        // each half swing loses 2·μmg/k = 0.02 m of amplitude
        let first_turn = (1..60).map(|k| s.positions(k)[0][0]).fold(f64::MIN, f64::max);
        assert!((first_turn - 0.98).abs() < 0.01, "first turn at {first_turn}");
    }

    #[test]
    fn drag_slows_the_climb() {
        let mut s = Scene::new(SceneKind::AirResistance);
        let apex_free = DROP_SPEED * DROP_SPEED / (2.0 * G);
        let apex = (0..40).map(|k| s.positions(k)[0][2]).fold(f64::MIN, f64::max);
        assert!(apex < apex_free && apex > 0.5 * apex_free);
        // terminal speed sqrt(m g / c) = sqrt(200)
        let v = s.state(1000)[1];
        assert!((v + sqrt(200.0)).abs() < 1e-6);
    }
}
