//! Fixed-step classical Runge-Kutta.

/// One RK4 step of `dy/dt = f(t, y)`.
pub fn rk4_step<const N: usize>(f: impl Fn(f64, &[f64; N]) -> [f64; N], t: f64, y: &[f64; N], dt: f64) -> [f64; N] {
    let shifted = |base: &[f64; N], k: &[f64; N], h: f64| {
        let mut out = *base;
        for i in 0..N {
            out[i] += k[i] * h;
        }
        out
    };
    let k1 = f(t, y);
    let k2 = f(t + dt / 2.0, &shifted(y, &k1, dt / 2.0));
    let k3 = f(t + dt / 2.0, &shifted(y, &k2, dt / 2.0));
    let k4 = f(t + dt, &shifted(y, &k3, dt));
    let mut out = *y;
    for i in 0..N {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_rate_is_exact() {
        let y = rk4_step(|_, _| [2.0, -0.5], 0.0, &[1.0, 1.0], 0.1);
        assert_eq!(y, [1.0 + 2.0 * 0.1, 1.0 - 0.5 * 0.1]);
    }

    #[test]
    fn exponential_growth_is_fourth_order() {
        // y' = y, one step of h: error is about h^5 / 120
        let y = rk4_step(|_, y: &[f64; 1]| [y[0]], 0.0, &[1.0], 0.1);
        assert!((y[0] - libm::exp(0.1)).abs() < 1e-7);
    }
}
