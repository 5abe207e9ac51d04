mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use circlepat::coherent::{angles_from_rho, validate_angles};
use circlepat::energy::{radius_from_rho, s_hat};
use circlepat::solver::{minimize, minimize_with, solve_spherical, SolveOptions};
use circlepat::surface::{cube, dodecahedron, icosahedron, octahedron, quad_torus, tetrahedron};
use circlepat::{Geometry, Problem, SolveStatus};
use common::*;
use rand::Rng;

/// A problem for which `rho` solves the Euler–Lagrange equations.
fn planted(r: &mut impl Rng, geometry: Geometry, closed_only: bool, lo: f64, hi: f64) -> (Problem, Vec<f64>) {
    loop {
        let p = random_problem(r, geometry, closed_only);
        let rho = random_rho(r, p.num_faces(), lo, hi);
        let sums = angles_from_rho(&p, &rho).unwrap().face_sums(&p);
        if sums.iter().all(|&s| s > 0.1) {
            let q = Problem::new(p.surface().clone(), geometry, p.theta().to_vec(), sums, 1e-10).unwrap();
            return (q, rho);
        }
    }
}

fn centered(v: &[f64]) -> Vec<f64> {
    let m = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|x| x - m).collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn nonincreasing(history: &[f64]) -> bool {
    history.windows(2).all(|w| w[1] <= w[0] + 16.0 * f64::EPSILON * (1.0 + w[0].abs()))
}

#[test]
fn euclidean_torus() {
    let p = Problem::uniform(quad_torus(2, 2), Geometry::Euclidean, FRAC_PI_2, 2.0 * PI).unwrap();
    let mut r = rng(41);
    let sol = minimize(&p, &random_rho(&mut r, 4, -1.0, 1.0)).unwrap();
    assert_eq!(sol.status, SolveStatus::Converged);
    assert!(sol.rho.iter().all(|x| x.abs() < 1e-10));
    assert!(sol.gradient_inf_norm <= p.tolerance());
}

#[test]
fn hyperbolic_torus() {
    let p = Problem::uniform(quad_torus(2, 2), Geometry::Hyperbolic, FRAC_PI_3, 2.0 * PI).unwrap();
    let sol = minimize(&p, &[0.0; 4]).unwrap();
    assert_eq!(sol.status, SolveStatus::Converged);
    let want = 0.5 * (2.0 - 3f64.sqrt()).ln();
    assert!(sol.rho.iter().all(|x| (x - want).abs() < 1e-9 && *x < 0.0));
    assert!(nonincreasing(&sol.history));
}

#[test]
fn spherical_cube() {
    let p = Problem::uniform(cube(), Geometry::Spherical, 2.0 * FRAC_PI_3, 2.0 * PI).unwrap();
    let sol = solve_spherical(&p, &[0.0; 6]).unwrap();
    assert_eq!(sol.status, SolveStatus::Converged);
    assert!(sol.gradient_inf_norm < 1e-7);
    let g = p.energy_eval(&sol.rho).unwrap();
    assert!(g.gradient_inf_norm < 1e-7);
    let radius = (1.0 / 3f64.sqrt()).acos();
    for &x in &sol.rho {
        assert!((radius_from_rho(Geometry::Spherical, x) - radius).abs() < 1e-6);
    }
    assert!(nonincreasing(&sol.history));
}

#[test]
fn spherical_cube_perturbed_start() {
    let p = Problem::uniform(cube(), Geometry::Spherical, 2.0 * FRAC_PI_3, 2.0 * PI).unwrap();
    let mut rho0 = [0.0; 6];
    rho0[0] = -1.0;
    let sol = solve_spherical(&p, &rho0).unwrap();
    assert_eq!(sol.status, SolveStatus::Converged);
    assert!(p.energy_eval(&sol.rho).unwrap().gradient_inf_norm <= 1e-8);
    assert!(validate_angles(&p, &angles_from_rho(&p, &sol.rho).unwrap()).unwrap().max_face_residual < 1e-8);
    assert!(p.area_defect(&sol.rho).unwrap().abs() < 1e-8);
}

#[test]
fn spherical_platonic_patterns() {
    let mut r = rng(42);
    let pool = [tetrahedron(), cube(), octahedron(), icosahedron(), dodecahedron()];
    for i in 0..20 {
        let s = pool[i % 5].clone();
        let theta = balanced_thetas(&mut r, &s, 0.3);
        let p = Problem::new(s, Geometry::Spherical, theta, vec![2.0 * PI; pool[i % 5].num_faces()], 1e-10).unwrap();
        let start = random_rho(&mut r, p.num_faces(), -1.0, 0.0);
        let sol = solve_spherical(&p, &start).unwrap();
        assert_eq!(sol.status, SolveStatus::Converged, "{:?}", sol.diagnostic);
        assert!(p.energy_eval(&sol.rho).unwrap().gradient_inf_norm < 1e-8);
        assert!(p.area_defect(&sol.rho).unwrap().abs() < 1e-8);
        assert!(nonincreasing(&sol.history));
    }
}

#[test]
fn spherical_needs_closed_surface_and_geometry() {
    let p = Problem::uniform(cube(), Geometry::Spherical, 2.0 * FRAC_PI_3, 2.0 * PI).unwrap();
    assert!(minimize(&p, &[0.0; 6]).is_err());
    let h = p.with_geometry(Geometry::Hyperbolic);
    assert!(solve_spherical(&h, &[0.0; 6]).is_err());
}

#[test]
fn planted_solutions_are_recovered() {
    let mut r = rng(43);
    for g in [Geometry::Euclidean, Geometry::Hyperbolic] {
        for _ in 0..25 {
            let (p, rho) = planted(&mut r, g, false, -1.5, -0.2);
            let start = random_rho(&mut r, p.num_faces(), -1.0, 1.0);
            let sol = minimize(&p, &start).unwrap();
            assert_eq!(sol.status, SolveStatus::Converged, "{g}: {:?}", sol.diagnostic);
            assert!(sol.gradient_inf_norm <= p.tolerance());
            assert!(p.energy_eval(&sol.rho).unwrap().gradient_inf_norm <= 1e-9);
            assert!(nonincreasing(&sol.history), "{g}");
            match g {
                Geometry::Euclidean => {
                    assert!(sol.rho.iter().sum::<f64>().abs() < 1e-9);
                    assert!(max_diff(&sol.rho, &centered(&rho)) < 1e-8);
                }
                _ => {
                    assert!(sol.rho.iter().all(|x| *x < 0.0));
                    assert!(max_diff(&sol.rho, &rho) < 1e-8);
                }
            }
        }
    }
}

#[test]
fn euclidean_gauge_invariance() {
    let mut r = rng(44);
    for _ in 0..20 {
        let (p, _) = planted(&mut r, Geometry::Euclidean, false, -1.0, 1.0);
        let start = random_rho(&mut r, p.num_faces(), -1.0, 1.0);
        let shifted: Vec<f64> = start.iter().map(|x| x + 2.5).collect();
        let a = minimize(&p, &start).unwrap();
        let b = minimize(&p, &shifted).unwrap();
        assert!(max_diff(&a.rho, &b.rho) <= 10.0 * p.tolerance().max(1e-10) * 10.0);
    }
}

#[test]
fn independent_starts_agree() {
    let mut r = rng(45);
    for g in [Geometry::Euclidean, Geometry::Hyperbolic] {
        for _ in 0..15 {
            let (p, _) = planted(&mut r, g, false, -1.2, -0.2);
            let n = p.num_faces();
            let a = minimize(&p, &random_rho(&mut r, n, -2.0, 1.0)).unwrap();
            let b = minimize(&p, &random_rho(&mut r, n, -2.0, 1.0)).unwrap();
            assert!(max_diff(&a.rho, &b.rho) < 1e-8, "{g}");
        }
    }
}

#[test]
fn legendre_certificate() {
    let mut r = rng(46);
    for g in [Geometry::Euclidean, Geometry::Hyperbolic] {
        for _ in 0..15 {
            let (p, _) = planted(&mut r, g, false, -1.2, -0.2);
            let sol = minimize(&p, &vec![-0.5; p.num_faces()]).unwrap();
            let phi = angles_from_rho(&p, &sol.rho).unwrap();
            let gap = s_hat(&p, &phi).unwrap() - sol.value;
            assert!(gap.abs() < 1e-8, "{g}: {gap}");
        }
    }
}

#[test]
fn euclidean_scale_defect_is_detected() {
    let mut phi = vec![2.0 * PI; 4];
    phi[0] += 0.3;
    let p = Problem::new(quad_torus(2, 2), Geometry::Euclidean, vec![FRAC_PI_2; 8], phi, 1e-10).unwrap();
    let sol = minimize(&p, &[0.0; 4]).unwrap();
    assert_eq!(sol.status, SolveStatus::InfeasibleDetected);
    assert!(sol.diagnostic.is_some());
}

#[test]
fn hyperbolic_divergence_is_reported() {
    // cone angles exceed the edge budget: the functional is unbounded below
    let p = Problem::uniform(quad_torus(2, 2), Geometry::Hyperbolic, 2.0 * FRAC_PI_3, 2.0 * PI).unwrap();
    let sol = minimize(&p, &[0.0; 4]).unwrap();
    assert_eq!(sol.status, SolveStatus::MaxIter);
    assert!(sol.diagnostic.as_deref().unwrap_or("").contains("unbounded"), "{:?}", sol.diagnostic);
}

#[test]
fn iteration_cap_is_respected() {
    let mut r = rng(47);
    let (p, _) = planted(&mut r, Geometry::Hyperbolic, false, -1.5, -0.2);
    let opts = SolveOptions { max_iter: 1, ..SolveOptions::default() };
    let sol = minimize_with(&p, &vec![0.5; p.num_faces()], &opts).unwrap();
    assert!(sol.iterations <= 1);
    assert_eq!(sol.status, SolveStatus::MaxIter);
}

#[test]
fn f32_solve() {
    let s = quad_torus(2, 2);
    let p = circlepat::PatternProblem::<f32>::new(s, Geometry::Hyperbolic, vec![std::f32::consts::FRAC_PI_3; 8], vec![std::f32::consts::TAU; 4], 1e-5)
        .unwrap();
    let sol = minimize(&p, &[0.0f32; 4]).unwrap();
    assert_eq!(sol.status, SolveStatus::Converged);
    assert!(sol.rho.iter().all(|x| (x + 0.658_479).abs() < 1e-4));
}
