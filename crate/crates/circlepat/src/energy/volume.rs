//! The angle functional `Ŝ`, Leibon's functional and hyperbolic volumes.

use super::{Geometry, PatternProblem};
use crate::coherent::AngleSystem;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specfun::{check_theta, clausen};
use crate::surface::{CellularSurface, SENTINEL};

/// Volume of the ideal polyhedron `P_θ(φ₁, φ₂)` with the regime it was computed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeP<T> {
    pub regime: Geometry,
    pub volume: T,
}

fn four_clausen<T: Scalar>(ts: T, p1: T, p2: T) -> T {
    let two = T::lit(2.0);
    clausen(ts + p1 - p2) + clausen(ts - p1 + p2) + clausen(ts + p1 + p2) + clausen(ts - p1 - p2)
        - two * clausen(two * ts)
}

fn check_angles<T: Scalar>(problem: &PatternProblem<T>, phi: &AngleSystem<T>) -> Result<()> {
    let expected = 2 * problem.interior().len();
    if phi.len() != expected {
        return Err(Error::LengthMismatch { expected, got: phi.len() });
    }
    Ok(())
}

/// `Ŝ(φ)`: the four-Clausen sum per interior edge.
pub fn s_hat<T: Scalar>(problem: &PatternProblem<T>, phi: &AngleSystem<T>) -> Result<T> {
    check_angles(problem, phi)?;
    Ok(problem.interior().iter().enumerate().fold(T::zero(), |acc, (i, e)| {
        let (p1, p2) = phi.pair(i);
        acc + four_clausen(T::PI() - problem.theta()[e.edge], p1, p2)
    }))
}

/// `Σ Cl(2φ) + Cl(2φ') - Cl(2θ*)`, equal to [`s_hat`] on euclidean coherent systems.
pub fn s_hat_euclidean<T: Scalar>(problem: &PatternProblem<T>, phi: &AngleSystem<T>) -> Result<T> {
    check_angles(problem, phi)?;
    let two = T::lit(2.0);
    Ok(problem.interior().iter().enumerate().fold(T::zero(), |acc, (i, e)| {
        let (p1, p2) = phi.pair(i);
        let ts = T::PI() - problem.theta()[e.edge];
        acc + clausen(two * p1) + clausen(two * p2) - clausen(two * ts)
    }))
}

/// Volume of `P_θ(φ₁, φ₂)`; the regime follows the sign of `φ₁ + φ₂ - θ*`
/// with a `1e-12` band counted as euclidean.
pub fn volume_p<T: Scalar>(theta: T, phi1: T, phi2: T) -> Result<VolumeP<T>> {
    check_theta(theta)?;
    let (zero, half, two) = (T::zero(), T::lit(0.5), T::lit(2.0));
    let ts = T::PI() - theta;
    let s = phi1 + phi2 - ts;
    let bad = || Error::Domain(format!("(φ₁, φ₂) = ({phi1}, {phi2}) admissible in no geometry for θ = {theta}"));
    if !(phi1 > zero && phi2 > zero) {
        return Err(bad());
    }
    let band = T::lit(1e-12);
    if s.abs() <= band {
        return Ok(VolumeP { regime: Geometry::Euclidean, volume: half * (clausen(two * phi1) + clausen(two * phi2)) });
    }
    if s < zero {
        return Ok(VolumeP { regime: Geometry::Hyperbolic, volume: four_clausen(ts, phi1, phi2) });
    }
    if phi1 + phi2 < T::TAU() - ts && (phi1 - phi2).abs() < ts {
        return Ok(VolumeP { regime: Geometry::Spherical, volume: half * four_clausen(ts, phi1, phi2) });
    }
    Err(bad())
}

/// Leibon's seven-Clausen volume `V(α₁, α₂, α₃)`.
pub fn leibon_v<T: Scalar>(a1: T, a2: T, a3: T) -> T {
    let two = T::lit(2.0);
    let pi = T::PI();
    T::lit(0.5)
        * (clausen(two * a1)
            + clausen(two * a2)
            + clausen(two * a3)
            + clausen(pi + a1 - a2 - a3)
            + clausen(pi - a1 + a2 - a3)
            + clausen(pi - a1 - a2 + a3)
            + clausen(pi - a1 - a2 - a3))
}

/// Index of oriented edge `x` in a per-side array of length `2·num_edges`.
#[inline]
pub fn side_index(x: i32) -> usize {
    let k = (x >> 2) as usize;
    2 * k + ((x ^ (x >> 1)) & 1) as usize
}

/// `H(α) = Σ V(α₁, α₂, α₃)` over the triangles. `α` holds one angle per edge
/// side, indexed by [`side_index`].
pub fn leibon_h<T: Scalar>(surface: &CellularSurface, alpha: &[T]) -> Result<T> {
    let expected = 2 * surface.num_edges();
    if alpha.len() != expected {
        return Err(Error::LengthMismatch { expected, got: alpha.len() });
    }
    let mut h = T::zero();
    for (f, row) in surface.rows().iter().enumerate() {
        if row.len() != 3 || row.contains(&SENTINEL) {
            return Err(Error::InvalidProblem(format!("face {} is not a triangle", 2 * f)));
        }
        h = h + leibon_v(alpha[side_index(row[0])], alpha[side_index(row[1])], alpha[side_index(row[2])]);
    }
    Ok(h)
}

/// Volume of a triply orthogonal tetrahedron with one ideal vertex.
pub fn orthoscheme_volume<T: Scalar>(alpha: T, beta: T) -> Result<T> {
    if !(alpha > T::zero() && alpha <= beta && beta < T::FRAC_PI_2()) {
        return Err(Error::Domain(format!("orthoscheme angles ({alpha}, {beta}) need 0 < α ≤ β < π/2")));
    }
    let two = T::lit(2.0);
    Ok(T::lit(0.125)
        * (two * clausen(T::PI() - two * alpha) + clausen(two * alpha - two * beta) + clausen(two * alpha + two * beta)))
}
