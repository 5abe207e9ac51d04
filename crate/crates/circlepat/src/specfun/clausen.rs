//! Clausen's integral `Cl(x) = -∫₀ˣ log|2 sin(t/2)| dt`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::cheb::{clenshaw_f64, ChebSeries};
use crate::scalar::Scalar;

/// Number of Chebyshev coefficients used for the smooth part of the integrand.
pub const CLAUSEN_ORDER: usize = 32;
/// Coefficients below this magnitude are dropped after fitting.
pub const CLAUSEN_TRUNCATION: f64 = 1e-16;

/// `h(x) = -log(2 sin(x/2) / x)`, the regular part of `Cl'` on `[-π, π]`.
pub fn clausen_regular_part(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-4 {
        let x2 = x * x;
        x2 / 24.0 + x2 * x2 / 2880.0
    } else {
        -(2.0 * (ax / 2.0).sin() / ax).ln()
    }
}

struct ClausenTable {
    integral: ChebSeries<f64>,
    at_zero: f64,
}

fn table() -> &'static ClausenTable {
    static TABLE: OnceLock<ClausenTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let fit = ChebSeries::fit_truncated(clausen_regular_part, -PI, PI, CLAUSEN_ORDER, CLAUSEN_TRUNCATION)
            .expect("static Chebyshev fit");
        let integral = fit.integrate().expect("static Chebyshev integral");
        let at_zero = integral.eval(0.0).expect("0 lies in [-π, π]");
        ClausenTable { integral, at_zero }
    })
}

/// The fitted series of `h` on `[-π, π]` (shared, computed once).
pub fn clausen_series() -> &'static ChebSeries<f64> {
    &table().integral
}

/// Reduces `x` modulo `2π` into `(-π, π]`.
pub fn reduce_angle<T: Scalar>(x: T) -> T {
    let two_pi = T::TAU();
    let mut r = x - two_pi * (x / two_pi).round();
    if r <= -T::PI() {
        r = r + two_pi;
    }
    if r > T::PI() {
        r = r - two_pi;
    }
    r
}

/// Clausen's integral, accurate to about `1e-15` absolute in `f64`.
pub fn clausen<T: Scalar>(x: T) -> T {
    let r = reduce_angle(x);
    if r == T::zero() {
        return T::zero();
    }
    let t = table();
    let (a, b) = t.integral.interval();
    let c = t.integral.coefficients();
    let clamped = r.max(T::lit(a)).min(T::lit(b));
    let smooth = clenshaw_f64(c, a, b, clamped) - T::lit(t.at_zero);
    smooth - r * (r.abs().ln() - T::one())
}

/// Derivative of Clausen's integral, `-log|2 sin(x/2)|`.
pub fn clausen_prime<T: Scalar>(x: T) -> T {
    -(T::lit(2.0) * (x / T::lit(2.0)).sin()).abs().ln()
}
