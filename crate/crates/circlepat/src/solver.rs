//! Minimization of the pattern functionals by nonlinear conjugate gradients.
//!
//! Euclidean problems are solved on the subspace `Σρ = 0`; hyperbolic ones on
//! all of `ℝ^F`. Spherical problems minimize the reduced functional, whose
//! gradient is the ordinary gradient at the maximizing shift.

use serde::Serialize;

use crate::energy::{inf_norm, Geometry, PatternProblem};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    InfeasibleDetected,
    MaxIter,
    InnerBracketFailure,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolveStatus::Converged => "converged",
            SolveStatus::InfeasibleDetected => "infeasible_detected",
            SolveStatus::MaxIter => "max_iter",
            SolveStatus::InnerBracketFailure => "inner_bracket_failure",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult<T> {
    /// Final variables. For spherical problems the maximizing shift is
    /// already added, so these are the radii variables of the pattern.
    pub rho: Vec<T>,
    pub value: T,
    /// Sup norm of the (projected) gradient.
    pub gradient_inf_norm: T,
    pub iterations: usize,
    pub status: SolveStatus,
    /// Objective after each accepted step, starting with the initial value.
    pub history: Vec<T>,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub max_iter: usize,
    /// Armijo constant.
    pub c1: f64,
    /// Curvature constant.
    pub c2: f64,
    /// Iterates leaving this sup-norm ball count as divergence.
    pub divergence_radius: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { max_iter: 10_000, c1: 1e-4, c2: 0.1, divergence_radius: 50.0 }
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

fn project<T: Scalar>(v: &mut [T]) {
    if v.is_empty() {
        return;
    }
    let mean = v.iter().fold(T::zero(), |s, &x| s + x) / T::from_count(v.len());
    v.iter_mut().for_each(|x| *x = *x - mean);
}

enum Stop {
    Bracket,
    Other(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::BracketFailure { .. } => Stop::Bracket,
            e => Stop::Other(e),
        }
    }
}

/// Objective with gradient, evaluated through a problem.
struct Objective<'a, T> {
    problem: &'a PatternProblem<T>,
    gauge: bool,
}

struct Point<T> {
    x: Vec<T>,
    value: T,
    grad: Vec<T>,
    shift: T,
}

impl<T: Scalar> Objective<'_, T> {
    fn eval(&self, x: Vec<T>) -> std::result::Result<Point<T>, Stop> {
        let (value, mut grad, shift) = match self.problem.geometry() {
            Geometry::Spherical => {
                let t = self.problem.spherical_shift(&x)?;
                let shifted: Vec<T> = x.iter().map(|&r| r + t).collect();
                let r = self.problem.energy_eval(&shifted)?;
                (r.value, r.gradient, t)
            }
            _ => {
                let r = self.problem.energy_eval(&x)?;
                (r.value, r.gradient, T::zero())
            }
        };
        if self.gauge {
            project(&mut grad);
        }
        Ok(Point { x, value, grad, shift })
    }
}

struct LineSearch<T> {
    c1: T,
    c2: T,
}

impl<T: Scalar> LineSearch<T> {
    /// Strong Wolfe search along `d`. A step whose value lies within rounding
    /// noise of the start is also accepted when the curvature condition holds.
    fn search(
        &self,
        obj: &Objective<'_, T>,
        start: &Point<T>,
        d: &[T],
        alpha0: T,
    ) -> std::result::Result<(Option<(Point<T>, T)>, bool), Stop> {
        let f0 = start.value;
        let d0 = dot(&start.grad, d);
        let noise = T::lit(16.0) * T::epsilon() * (T::one() + f0.abs());
        // A trial point without a maximizing shift counts as a step too long.
        let lost = std::cell::Cell::new(false);
        let at = |a: T| -> std::result::Result<Option<(Point<T>, T)>, Stop> {
            let x = start.x.iter().zip(d).map(|(&x, &di)| x + a * di).collect();
            match obj.eval(x) {
                Ok(p) => {
                    let slope = dot(&p.grad, d);
                    Ok(Some((p, slope)))
                }
                Err(Stop::Bracket) => {
                    lost.set(true);
                    Ok(None)
                }
                Err(e) => Err(e),
            }
        };
        let sufficient = |f: T, a: T| f <= f0 + self.c1 * a * d0;
        let curvature = |s: T| s.abs() <= -self.c2 * d0;
        let acceptable = |f: T, a: T, s: T| curvature(s) && (sufficient(f, a) || f <= f0 + noise);

        let (mut a_prev, mut f_prev, mut s_prev) = (T::zero(), f0, d0);
        let mut a = alpha0;
        let mut lo_hi = None;
        let mut furthest = None;
        for i in 0..40 {
            let Some((p, s)) = at(a)? else {
                lo_hi = Some(((a_prev, f_prev, s_prev), (a, T::infinity(), T::nan())));
                break;
            };
            let f = p.value;
            if !f.is_finite() || !sufficient(f, a) && !(f <= f0 + noise && s < T::zero()) || (i > 0 && f >= f_prev) {
                lo_hi = Some(((a_prev, f_prev, s_prev), (a, f, s)));
                break;
            }
            if acceptable(f, a, s) {
                return Ok((Some((p, a)), false));
            }
            if s >= T::zero() {
                lo_hi = Some(((a, f, s), (a_prev, f_prev, s_prev)));
                break;
            }
            furthest = Some((p, a));
            a_prev = a;
            f_prev = f;
            s_prev = s;
            a = a * T::lit(2.0);
        }
        // The slope never turned: take the longest step with sufficient decrease.
        let Some(((mut lo, mut flo, mut slo), (mut hi, mut fhi, mut shi))) = lo_hi else {
            return Ok((furthest, lost.get()));
        };
        for _ in 0..60 {
            let width = (hi - lo).abs();
            if width <= T::epsilon() * (T::one() + lo.abs()) {
                break;
            }
            // Secant on the slope, kept away from the ends.
            let mut a = if slo != shi && fhi.is_finite() { lo - slo * (hi - lo) / (shi - slo) } else { T::nan() };
            let (left, right) = if lo < hi { (lo, hi) } else { (hi, lo) };
            let margin = T::lit(0.1) * width;
            if !(a > left + margin && a < right - margin) {
                a = (lo + hi) / T::lit(2.0);
            }
            let Some((p, s)) = at(a)? else {
                hi = a;
                fhi = T::infinity();
                shi = T::nan();
                continue;
            };
            let f = p.value;
            if !f.is_finite() || !sufficient(f, a) && !(f <= f0 + noise) || f >= flo && !(f <= f0 + noise) {
                hi = a;
                fhi = f;
                shi = s;
                continue;
            }
            if acceptable(f, a, s) {
                return Ok((Some((p, a)), false));
            }
            if s * (hi - lo) >= T::zero() {
                hi = lo;
                fhi = flo;
                shi = slo;
            }
            lo = a;
            flo = f;
            slo = s;
        }
        let _ = fhi;
        Ok((None, lost.get()))
    }
}

/// Minimizes the euclidean or hyperbolic functional from `rho0` with default options.
pub fn minimize<T: Scalar>(problem: &PatternProblem<T>, rho0: &[T]) -> Result<SolveResult<T>> {
    minimize_with(problem, rho0, &SolveOptions::default())
}

pub fn minimize_with<T: Scalar>(problem: &PatternProblem<T>, rho0: &[T], options: &SolveOptions) -> Result<SolveResult<T>> {
    match problem.geometry() {
        Geometry::Spherical => {
            return Err(Error::InvalidProblem("use solve_spherical for spherical problems".into()));
        }
        Geometry::Euclidean if !problem.is_scale_invariant() => {
            let mut rho = rho0.to_vec();
            project(&mut rho);
            let r = problem.energy_eval(&rho)?;
            let mut g = r.gradient;
            project(&mut g);
            return Ok(SolveResult {
                rho,
                value: r.value,
                gradient_inf_norm: inf_norm(&g),
                iterations: 0,
                status: SolveStatus::InfeasibleDetected,
                history: vec![r.value],
                diagnostic: Some(format!(
                    "ΣΦ - Σ2(π - θ) = {} is not zero, so the functional is unbounded along constants",
                    problem.scale_defect()
                )),
            });
        }
        _ => {}
    }
    run(problem, rho0, options)
}

/// Minimizes the reduced spherical functional on `Σρ = 0` with default options.
pub fn solve_spherical<T: Scalar>(problem: &PatternProblem<T>, rho0: &[T]) -> Result<SolveResult<T>> {
    solve_spherical_with(problem, rho0, &SolveOptions::default())
}

pub fn solve_spherical_with<T: Scalar>(
    problem: &PatternProblem<T>,
    rho0: &[T],
    options: &SolveOptions,
) -> Result<SolveResult<T>> {
    if problem.geometry() != Geometry::Spherical {
        return Err(Error::InvalidProblem("solve_spherical needs a spherical problem".into()));
    }
    if !problem.surface().is_closed() {
        return Err(Error::BoundaryPresent);
    }
    run(problem, rho0, options)
}

fn run<T: Scalar>(problem: &PatternProblem<T>, rho0: &[T], options: &SolveOptions) -> Result<SolveResult<T>> {
    if rho0.len() != problem.num_faces() {
        return Err(Error::LengthMismatch { expected: problem.num_faces(), got: rho0.len() });
    }
    let gauge = problem.geometry() != Geometry::Hyperbolic;
    let obj = Objective { problem, gauge };
    let ls = LineSearch { c1: T::lit(options.c1), c2: T::lit(options.c2) };
    let tol = problem.tolerance();
    let radius = T::lit(options.divergence_radius);
    let mut x0 = rho0.to_vec();
    if gauge {
        project(&mut x0);
    }
    let finish = |p: &Point<T>, iterations, status, history: Vec<T>, diagnostic| SolveResult {
        rho: p.x.iter().map(|&r| r + p.shift).collect(),
        value: p.value,
        gradient_inf_norm: inf_norm(&p.grad),
        iterations,
        status,
        history,
        diagnostic,
    };
    let mut cur = match obj.eval(x0.clone()) {
        Ok(p) => p,
        Err(Stop::Bracket) => {
            return Ok(SolveResult {
                rho: x0,
                value: T::nan(),
                gradient_inf_norm: T::nan(),
                iterations: 0,
                status: SolveStatus::InnerBracketFailure,
                history: Vec::new(),
                diagnostic: Some("no maximizing shift at the start point".to_string()),
            });
        }
        Err(Stop::Other(e)) => return Err(e),
    };
    let mut history = vec![cur.value];
    let n = problem.num_faces().max(1);
    let mut d: Vec<T> = cur.grad.iter().map(|&g| -g).collect();
    let mut alpha = T::one().min(T::one() / (inf_norm(&cur.grad) + T::epsilon()));
    let mut since_restart = 0;
    for it in 0..options.max_iter {
        if inf_norm(&cur.grad) <= tol {
            return Ok(finish(&cur, it, SolveStatus::Converged, history, None));
        }
        if inf_norm(&cur.x) > radius {
            let msg = format!("|ρ|∞ exceeded {radius}; the functional appears unbounded below");
            return Ok(finish(&cur, it, SolveStatus::MaxIter, history, Some(msg)));
        }
        let mut slope = dot(&cur.grad, &d);
        if !(slope < T::zero()) {
            d = cur.grad.iter().map(|&g| -g).collect();
            slope = dot(&cur.grad, &d);
            since_restart = 0;
        }
        let (step, lost) = match ls.search(&obj, &cur, &d, alpha) {
            Ok(s) => s,
            Err(Stop::Bracket) => (None, true),
            Err(Stop::Other(e)) => return Err(e),
        };
        let (next, a) = match step {
            Some(s) => s,
            None if since_restart > 0 => {
                d = cur.grad.iter().map(|&g| -g).collect();
                since_restart = 0;
                alpha = T::one().min(T::one() / (inf_norm(&cur.grad) + T::epsilon()));
                continue;
            }
            None if lost => {
                let msg = "inner maximization failed to bracket during the line search".to_string();
                return Ok(finish(&cur, it, SolveStatus::InnerBracketFailure, history, Some(msg)));
            }
            None => {
                let msg = "line search failed along steepest descent".to_string();
                return Ok(finish(&cur, it, SolveStatus::MaxIter, history, Some(msg)));
            }
        };
        history.push(next.value);
        // Polak–Ribière+, restarted every |F| steps.
        let gg = dot(&cur.grad, &cur.grad);
        let beta = if since_restart + 1 >= n {
            T::zero()
        } else {
            let y: Vec<T> = next.grad.iter().zip(&cur.grad).map(|(&a, &b)| a - b).collect();
            (dot(&next.grad, &y) / gg).max(T::zero())
        };
        since_restart = if beta == T::zero() { 0 } else { since_restart + 1 };
        d = next.grad.iter().zip(&d).map(|(&g, &di)| -g + beta * di).collect();
        let new_slope = dot(&next.grad, &d);
        alpha = if new_slope < T::zero() { (a * slope / new_slope).min(T::lit(1e3) * a).max(T::epsilon()) } else { T::one() };
        cur = next;
    }
    let converged = inf_norm(&cur.grad) <= tol;
    let status = if converged { SolveStatus::Converged } else { SolveStatus::MaxIter };
    Ok(finish(&cur, options.max_iter, status, history, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{cube, quad_torus};
    use std::f64::consts::PI;

    #[test]
    fn euclidean_torus() {
        let p = PatternProblem::uniform(quad_torus(2, 2), Geometry::Euclidean, PI / 2.0, 2.0 * PI).unwrap();
        let r = minimize(&p, &[0.3, -0.9, 0.5, 0.1]).unwrap();
        assert_eq!(r.status, SolveStatus::Converged);
        assert!(r.rho.iter().all(|x| x.abs() < 1e-10));
    }

    #[test]
    fn hyperbolic_torus() {
        let p = PatternProblem::uniform(quad_torus(2, 2), Geometry::Hyperbolic, PI / 3.0, 2.0 * PI).unwrap();
        let r = minimize(&p, &[0.0; 4]).unwrap();
        assert_eq!(r.status, SolveStatus::Converged);
        let expect = 0.5 * (2.0 - 3f64.sqrt()).ln();
        assert!(r.rho.iter().all(|x| (x - expect).abs() < 1e-9), "{:?}", r.rho);
    }

    #[test]
    fn spherical_cube() {
        let p = PatternProblem::uniform(cube(), Geometry::Spherical, 2.0 * PI / 3.0, 2.0 * PI).unwrap();
        let r = solve_spherical(&p, &[0.0; 6]).unwrap();
        assert_eq!(r.status, SolveStatus::Converged);
        let expect = 0.5 * (2.0 - 3f64.sqrt()).ln();
        assert!(r.rho.iter().all(|x| (x - expect).abs() < 1e-9), "{:?}", r.rho);
    }

    #[test]
    fn euclidean_defect_is_reported() {
        let p = PatternProblem::uniform(quad_torus(2, 2), Geometry::Euclidean, PI / 2.0, 2.0 * PI + 0.1).unwrap();
        assert_eq!(minimize(&p, &[0.0; 4]).unwrap().status, SolveStatus::InfeasibleDetected);
    }
}
