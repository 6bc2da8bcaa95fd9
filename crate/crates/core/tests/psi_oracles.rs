use blackbox_core::psi::scene::{elastic_height, GRID, SUBSTEPS};
use blackbox_core::psi::{rk4_step, Scene, SceneKind};

#[test]
fn rk4_tracks_simple_harmonic_motion() {
    // k = 100, m = 1, released at -0.2: x(t) = -0.2 cos(10 t)
    let h = GRID / SUBSTEPS as f64;
    let mut y = [-0.2, 0.0];
    let mut worst: f64 = 0.0;
    for k in 1..=100 {
        for _ in 0..SUBSTEPS {
            y = rk4_step(|_, s: &[f64; 2]| [s[1], -100.0 * s[0]], 0.0, &y, h);
        }
        let t = k as f64 * GRID;
        worst = worst.max((y[0] + 0.2 * (10.0 * t).cos()).abs());
    }
    assert!(worst < 1e-3, "max |dx| = {worst}");
}

#[test]
fn frictionless_energy_is_conserved() {
    for kind in [SceneKind::Pendulum, SceneKind::DoublePendulum] {
        let mut s = Scene::new(kind);
        let e0 = s.energy(0).unwrap();
        for k in (0..=1000).step_by(7) {
            let e = s.energy(k).unwrap();
            assert!(((e - e0) / e0).abs() < 0.005, "{kind:?} at step {k}: {e} vs {e0}");
        }
    }
}

#[test]
fn elastic_bounce_is_periodic_and_bounded() {
    let period = 2.0 * (2.0f64 * 10.0 / 10.0).sqrt();
    for i in 0..500 {
        let t = i as f64 * 0.037;
        let h = elastic_height(t);
        assert!((-1e-9..=10.0 + 1e-9).contains(&h));
        assert!((h - elastic_height(t + period)).abs() < 1e-6);
    }
}

#[test]
fn conical_radius_is_constant() {
    let mut s = Scene::new(SceneKind::ConicalPendulum);
    let r = 5.0 * (std::f64::consts::PI / 6.0).sin();
    for k in 0..=1000 {
        let p = s.positions(k)[0];
        assert!((p[0].hypot(p[1]) - r).abs() < 1e-9);
    }
}

#[test]
fn analytic_scenes_are_pure() {
    let mut a = Scene::new(SceneKind::InelasticBounce);
    let first = a.positions(37);
    a.positions(90);
    assert_eq!(a.positions(37), first);
}

#[test]
fn memo_matches_fresh_integration() {
    let mut a = Scene::new(SceneKind::DoublePendulum);
    let late = a.positions(300);
    let early = a.positions(120);
    let mut b = Scene::new(SceneKind::DoublePendulum);
    assert_eq!(b.positions(120), early);
    assert_eq!(b.positions(300), late);
}
