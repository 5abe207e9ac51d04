//! Coherent angle systems and the network-flow solvability test.

mod flow;

use serde::Serialize;

use crate::energy::{kite_unchecked, Geometry, PatternProblem};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use flow::{feasibility, FeasibilityReport, Witness};

/// Half-angles on oriented interior edges.
///
/// Entry `2i` belongs to oriented edge `4k` and entry `2i+1` to `4k+2`, where
/// `k` is the `i`-th interior edge; each is half the kite angle at the center
/// of the face to the left of that oriented edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleSystem<T> {
    phi: Vec<T>,
}

impl<T: Scalar> AngleSystem<T> {
    pub fn new(phi: Vec<T>) -> Self {
        Self { phi }
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.phi
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.phi
    }

    /// Both half-angles of the `i`-th interior edge.
    pub fn pair(&self, i: usize) -> (T, T) {
        (self.phi[2 * i], self.phi[2 * i + 1])
    }

    /// `Σ 2φ` per face.
    pub fn face_sums(&self, problem: &PatternProblem<T>) -> Vec<T> {
        let two = T::lit(2.0);
        let mut sums = vec![T::zero(); problem.num_faces()];
        for (i, e) in problem.interior().iter().enumerate() {
            sums[e.left] = sums[e.left] + two * self.phi[2 * i];
            sums[e.right] = sums[e.right] + two * self.phi[2 * i + 1];
        }
        sums
    }
}

/// Kite half-angles of the pattern with variables `rho`.
pub fn angles_from_rho<T: Scalar>(problem: &PatternProblem<T>, rho: &[T]) -> Result<AngleSystem<T>> {
    if rho.len() != problem.num_faces() {
        return Err(Error::LengthMismatch { expected: problem.num_faces(), got: rho.len() });
    }
    let g = problem.geometry();
    let mut phi = Vec::with_capacity(2 * problem.interior().len());
    for e in problem.interior() {
        let theta = problem.theta()[e.edge];
        phi.push(kite_unchecked(g, theta, rho[e.left], rho[e.right]));
        phi.push(kite_unchecked(g, theta, rho[e.right], rho[e.left]));
    }
    Ok(AngleSystem::new(phi))
}

/// Which coherence conditions fail.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport<T> {
    pub geometry: Geometry,
    /// Interior-edge positions violating the per-edge condition.
    pub edge_violations: Vec<usize>,
    /// Faces whose angle sum differs from `Φ`.
    pub face_violations: Vec<usize>,
    /// `max |Σ2φ - Φ|` over faces.
    pub max_face_residual: T,
    /// `max |φ + φ' - θ*|` over edges (meaningful for euclidean systems).
    pub max_pair_residual: T,
}

impl<T> ValidationReport<T> {
    pub fn is_coherent(&self) -> bool {
        self.edge_violations.is_empty() && self.face_violations.is_empty()
    }
}

/// Checks the edge conditions of the problem's geometry and the face sums,
/// with equalities tested to the problem tolerance.
pub fn validate_angles<T: Scalar>(problem: &PatternProblem<T>, phi: &AngleSystem<T>) -> Result<ValidationReport<T>> {
    let expected = 2 * problem.interior().len();
    if phi.len() != expected {
        return Err(Error::LengthMismatch { expected, got: phi.len() });
    }
    let tol = problem.tolerance();
    let (zero, pi) = (T::zero(), T::PI());
    let mut edge_violations = Vec::new();
    let mut max_pair_residual = zero;
    for (i, e) in problem.interior().iter().enumerate() {
        let (a, b) = phi.pair(i);
        let ts = pi - problem.theta()[e.edge];
        let pair = (a + b - ts).abs();
        max_pair_residual = max_pair_residual.max(pair);
        let ok = match problem.geometry() {
            Geometry::Euclidean => a > zero && b > zero && pair <= tol,
            Geometry::Hyperbolic => a > zero && b > zero && a + b < ts,
            Geometry::Spherical => {
                a > zero && b > zero && a < pi && b < pi && a + b > ts && a + b < T::TAU() - ts && (a - b).abs() < ts
            }
        };
        if !ok {
            edge_violations.push(i);
        }
    }
    let sums = phi.face_sums(problem);
    let mut face_violations = Vec::new();
    let mut max_face_residual = zero;
    for (f, (&s, &target)) in sums.iter().zip(problem.phi()).enumerate() {
        let r = (s - target).abs();
        max_face_residual = max_face_residual.max(r);
        if r > tol {
            face_violations.push(f);
        }
    }
    Ok(ValidationReport {
        geometry: problem.geometry(),
        edge_violations,
        face_violations,
        max_face_residual,
        max_pair_residual,
    })
}

/// Intersection angles `(θ₀₁, θ₀₂, θ₀₃)` for the three new edges when a
/// triangular hole is filled with a vertex, so that every vertex sum is `2π`.
pub fn hole_fill_angles<T: Scalar>(t12: T, t23: T, t31: T) -> Result<(T, T, T)> {
    let half = T::lit(0.5);
    let pi = T::PI();
    let t01 = pi - half * (t12 - t23 + t31);
    let t02 = pi - half * (t12 + t23 - t31);
    let t03 = pi - half * (t23 + t31 - t12);
    for (name, t) in [("θ₀₁", t01), ("θ₀₂", t02), ("θ₀₃", t03)] {
        if !(t > T::zero() && t < pi) {
            return Err(Error::Domain(format!("{name} = {t} not in (0, π)")));
        }
    }
    Ok((t01, t02, t03))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::quad_torus;
    use std::f64::consts::PI;

    #[test]
    fn torus_quarter_angles() {
        let p = PatternProblem::uniform(quad_torus(2, 2), Geometry::Euclidean, PI / 2.0, 2.0 * PI).unwrap();
        let phi = angles_from_rho(&p, &[0.0; 4]).unwrap();
        assert!(phi.as_slice().iter().all(|&x| (x - PI / 4.0).abs() < 1e-15));
        assert!(validate_angles(&p, &phi).unwrap().is_coherent());
    }

    #[test]
    fn perturbation_flags_one_pair_and_one_face() {
        let p = PatternProblem::uniform(quad_torus(2, 2), Geometry::Euclidean, PI / 2.0, 2.0 * PI).unwrap();
        let mut phi = angles_from_rho(&p, &[0.0; 4]).unwrap();
        phi.as_mut_slice()[0] += 0.1;
        let r = validate_angles(&p, &phi).unwrap();
        assert_eq!(r.edge_violations, vec![0]);
        assert_eq!(r.face_violations, vec![p.interior()[0].left]);
    }

    #[test]
    fn hole_fill() {
        let (a, b, c) = hole_fill_angles(PI / 2.0, PI / 2.0, PI / 2.0).unwrap();
        for t in [a, b, c] {
            assert!((t - 0.75 * PI).abs() < 1e-15);
        }
        assert!(hole_fill_angles(0.1, 3.0, 0.1).is_err());
        let (a, b, c) = hole_fill_angles(1.0, 2.0, 1.5).unwrap();
        assert!((a + b + 1.0 - 2.0 * PI).abs() < 1e-15);
        assert!((b + c + 2.0 - 2.0 * PI).abs() < 1e-15);
        assert!((a + c + 1.5 - 2.0 * PI).abs() < 1e-15);
    }
}
