mod common;

use std::f64::consts::PI;

use circlepat::specfun::{clausen, clausen_prime, f_theta, f_theta_inv, f_theta_prime, im_li, im_li_symmetric, ChebSeries};
use common::{central_difference, clausen_fourier, gauss_legendre, rel_err, CATALAN};
use num_complex::Complex;
use proptest::prelude::*;

#[test]
fn clausen_matches_fourier_series_on_grid() {
    let n = 10_000;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let x = -3.0 * PI + 6.0 * PI * (i as f64 + 0.5) / n as f64;
        worst = worst.max((clausen(x) - clausen_fourier(x)).abs());
    }
    assert!(worst <= 1e-12, "max deviation {worst:e}");
}

#[test]
fn clausen_special_values() {
    assert_eq!(clausen(0.0), 0.0);
    assert!(clausen(PI).abs() < 1e-15);
    assert!((clausen(PI / 2.0) - CATALAN).abs() < 1e-12);
    assert!((clausen(PI / 3.0) - 1.014_941_606_409_653_6).abs() < 1e-12);
}

#[test]
fn clausen_double_angle() {
    for i in 1..400 {
        let x = -PI + 2.0 * PI * i as f64 / 400.0;
        assert!((0.5 * clausen(2.0 * x) - clausen(x) + clausen(PI - x)).abs() < 1e-12, "x = {x}");
    }
}

#[test]
fn clausen_in_f32() {
    let x = 1.3f32;
    assert!((clausen(x) as f64 - clausen(1.3f64)).abs() < 1e-5);
}

#[test]
fn chebyshev_examples() {
    let fit = ChebSeries::fit(f64::cos, -PI, PI, 32).unwrap();
    assert!((fit.eval(0.0).unwrap() - 1.0).abs() < 1e-14);
    let integral = fit.integrate().unwrap();
    let rise = integral.eval(PI / 2.0).unwrap() - integral.eval(0.0).unwrap();
    assert!((rise - 1.0).abs() < 1e-12);
    assert!(fit.eval(4.0).is_err());
    let h = ChebSeries::fit(|x: f64| -(2.0 * (x / 2.0).sin() / x).ln(), -PI, PI, 32).unwrap();
    for (j, c) in h.coefficients().iter().enumerate() {
        if j % 2 == 1 {
            assert!(c.abs() < 1e-15, "odd coefficient {j}: {c:e}");
        }
    }
}

/// `(log(1 - e^{ξ-iθ}) - log(1 - e^{ξ+iθ})) / 2i` with principal logarithms,
/// the integrand of the dilogarithm ray integral.
fn ray_integrand(xi: f64, theta: f64) -> f64 {
    let one = Complex::new(1.0, 0.0);
    let a = (one - Complex::from_polar(xi.exp(), -theta)).ln();
    let b = (one - Complex::from_polar(xi.exp(), theta)).ln();
    ((a - b) / Complex::new(0.0, 2.0)).re
}

#[test]
fn im_li_matches_quadrature() {
    for (x, theta) in [(0.7, PI / 3.0), (-0.7, PI / 3.0), (0.2, 0.75 * PI)] {
        let q = gauss_legendre(|xi| ray_integrand(xi, theta), -60.0, x, 4000);
        let v = im_li(x, theta).unwrap();
        assert!((v - q).abs() < 1e-10, "({x}, {theta}): {v} vs {q}");
    }
}

#[test]
fn im_li_limits() {
    for theta in [0.3f64, 1.5, 2.9] {
        assert!((im_li(0.0, theta).unwrap() - clausen(theta)).abs() < 1e-14);
        assert!(im_li(-60.0, theta).unwrap().abs() < 1e-20);
    }
    assert!(im_li(0.0, 0.0).is_err());
}

#[test]
fn f_theta_examples() {
    for theta in [0.1, 1.0, 2.5] {
        assert!((f_theta(theta, 0.0) - (PI - theta) / 2.0).abs() < 1e-15);
        assert!(f_theta(theta, -800.0).abs() < 1e-300);
        assert!((f_theta(theta, 800.0) - (PI - theta)).abs() < 1e-15);
    }
}

#[test]
fn f_theta_inverse_round_trip() {
    let mut rng = common::rng(11);
    use rand::Rng;
    for _ in 0..2000 {
        let theta = rng.gen_range(1e-3..PI - 1e-3);
        let x = rng.gen_range(-20.0..20.0);
        let y = f_theta(theta, x);
        if y <= 0.0 || y >= PI - theta {
            continue;
        }
        let back = f_theta_inv(theta, y).unwrap();
        // The inverse loses accuracy where f_θ saturates.
        let slope = f_theta_prime(theta, x);
        assert!((back - x).abs() * slope <= 1e-12 * (1.0 + x.abs()), "θ={theta} x={x} back={back}");
    }
}

proptest! {
    #[test]
    fn f_theta_symmetry(theta in 0.01..PI - 0.01, x in -50.0..50.0f64) {
        prop_assert!((f_theta(theta, x) + f_theta(theta, -x) - (PI - theta)).abs() < 1e-13);
    }

    #[test]
    fn f_theta_is_monotone(theta in 0.01..PI - 0.01, x in -30.0..30.0f64, dx in 1e-6..1.0f64) {
        prop_assert!(f_theta(theta, x + dx) >= f_theta(theta, x));
    }

    #[test]
    fn f_theta_prime_matches_difference(theta in 0.05..PI - 0.05, x in -8.0..8.0f64) {
        let fd = central_difference(|v| f_theta(theta, v[0]), &[x], 0, 1e-5);
        prop_assert!(rel_err(f_theta_prime(theta, x), fd) < 1e-6);
    }

    #[test]
    fn im_li_derivative_is_f_theta(theta in 0.05..PI - 0.05, x in -8.0..8.0f64) {
        let fd = central_difference(|v| im_li(v[0], theta).unwrap(), &[x], 0, 1e-5);
        prop_assert!(rel_err(f_theta(theta, x), fd) < 1e-6);
    }

    #[test]
    fn im_li_symmetric_agrees(theta in 0.05..PI - 0.05, x in -8.0..8.0f64) {
        let pair = im_li(x, theta).unwrap() + im_li(-x, theta).unwrap();
        prop_assert!((im_li_symmetric(x, theta).unwrap() - pair).abs() < 1e-12);
    }

    #[test]
    fn clausen_derivative(x in 0.05..2.0 * PI - 0.05) {
        let fd = central_difference(|v| clausen(v[0]), &[x], 0, 1e-5);
        prop_assert!(rel_err(clausen_prime(x), fd) < 1e-6);
    }

    #[test]
    fn clausen_odd_and_periodic(x in -10.0..10.0f64) {
        prop_assert!((clausen(-x) + clausen(x)).abs() < 1e-13);
        prop_assert!((clausen(x + 2.0 * PI) - clausen(x)).abs() < 1e-13);
    }
}
