//! Circle pattern functionals in the three geometries.
//!
//! All sums run over interior edges in ascending order and then over faces in
//! ascending order, so values are reproducible bit for bit.

mod volume;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specfun::{check_theta, f_theta, f_theta_prime, im_li_unchecked};
use crate::surface::CellularSurface;

pub use volume::{leibon_h, leibon_v, orthoscheme_volume, s_hat, s_hat_euclidean, side_index, volume_p, VolumeP};

/// Geometry of the circle pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Euclidean,
    Hyperbolic,
    Spherical,
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Geometry::Euclidean => "euclidean",
            Geometry::Hyperbolic => "hyperbolic",
            Geometry::Spherical => "spherical",
        })
    }
}

impl std::str::FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Geometry::Euclidean),
            "hyperbolic" => Ok(Geometry::Hyperbolic),
            "spherical" => Ok(Geometry::Spherical),
            _ => Err(Error::InvalidProblem(format!("unknown geometry {s:?}"))),
        }
    }
}

/// An interior edge with the faces on its two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InteriorEdge {
    /// Unoriented edge index.
    pub edge: usize,
    /// Face to the left of oriented edge `4·edge`.
    pub left: usize,
    /// Face to the left of oriented edge `4·edge + 2`.
    pub right: usize,
}

/// Surface, geometry, intersection angles per edge and cone angles per face.
#[derive(Debug, Clone)]
pub struct PatternProblem<T> {
    surface: CellularSurface,
    geometry: Geometry,
    theta: Vec<T>,
    phi: Vec<T>,
    tolerance: T,
    interior: Vec<InteriorEdge>,
}

/// Value and gradient of a functional.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport<T> {
    pub value: T,
    pub gradient: Vec<T>,
    pub gradient_inf_norm: T,
}

/// Output of [`rho_from_half_angles`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HalfAngleInverse<T> {
    /// `(ρ₁, ρ₂)` for hyperbolic and spherical kites.
    Radii(T, T),
    /// `ρ₂ - ρ₁` for euclidean kites, where only differences are determined.
    Difference(T),
}

pub(crate) fn inf_norm<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

impl<T: Scalar> PatternProblem<T> {
    /// Validates and assembles a problem. `theta` has one entry per edge,
    /// `phi` one per face.
    pub fn new(surface: CellularSurface, geometry: Geometry, theta: Vec<T>, phi: Vec<T>, tolerance: T) -> Result<Self> {
        if theta.len() != surface.num_edges() {
            return Err(Error::LengthMismatch { expected: surface.num_edges(), got: theta.len() });
        }
        if phi.len() != surface.num_faces() {
            return Err(Error::LengthMismatch { expected: surface.num_faces(), got: phi.len() });
        }
        for (k, &t) in theta.iter().enumerate() {
            check_theta(t).map_err(|_| Error::InvalidProblem(format!("θ[{k}] = {t} not in (0, π)")))?;
        }
        for (f, &p) in phi.iter().enumerate() {
            if !(p > T::zero()) || !p.is_finite() {
                return Err(Error::InvalidProblem(format!("Φ[{f}] = {p} is not positive")));
            }
        }
        if !(tolerance > T::zero()) {
            return Err(Error::InvalidProblem(format!("tolerance {tolerance} is not positive")));
        }
        let interior = surface
            .interior_edges()
            .into_iter()
            .map(|k| {
                let (l, r) = surface.edge_faces(k);
                InteriorEdge { edge: k, left: l as usize, right: r as usize }
            })
            .collect();
        Ok(Self { surface, geometry, theta, phi, tolerance, interior })
    }

    /// Problem with the same `θ` on every edge and the same `Φ` on every face.
    pub fn uniform(surface: CellularSurface, geometry: Geometry, theta: T, phi: T) -> Result<Self> {
        let (e, f) = (surface.num_edges(), surface.num_faces());
        Self::new(surface, geometry, vec![theta; e], vec![phi; f], T::lit(1e-10))
    }

    pub fn surface(&self) -> &CellularSurface {
        &self.surface
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn theta(&self) -> &[T] {
        &self.theta
    }

    pub fn phi(&self) -> &[T] {
        &self.phi
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: T) -> Result<Self> {
        if !(tolerance > T::zero()) {
            return Err(Error::InvalidProblem(format!("tolerance {tolerance} is not positive")));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn with_geometry(mut self, geometry: Geometry) -> Self {
        self.geometry = geometry;
        self
    }

    pub fn num_faces(&self) -> usize {
        self.phi.len()
    }

    /// Interior edges in ascending order.
    pub fn interior(&self) -> &[InteriorEdge] {
        &self.interior
    }

    /// `ΣΦ - Σ 2θ*` over interior edges; zero exactly when the euclidean
    /// functional is invariant under `ρ ↦ ρ + h·1`.
    pub fn scale_defect(&self) -> T {
        let two = T::lit(2.0);
        let phi_sum = self.phi.iter().fold(T::zero(), |a, &p| a + p);
        let theta_sum = self.interior.iter().fold(T::zero(), |a, e| a + two * (T::PI() - self.theta[e.edge]));
        phi_sum - theta_sum
    }

    /// True when the scale defect vanishes up to rounding.
    pub fn is_scale_invariant(&self) -> bool {
        let scale = T::from_count(self.interior.len() + self.phi.len() + 1) * T::TAU();
        self.scale_defect().abs() <= T::lit(64.0) * T::epsilon() * scale
    }

    fn check_len(&self, v: &[T]) -> Result<()> {
        if v.len() != self.num_faces() {
            return Err(Error::LengthMismatch { expected: self.num_faces(), got: v.len() });
        }
        Ok(())
    }

    /// The functional value and gradient `Φ_f - 2Σφ`.
    pub fn energy_eval(&self, rho: &[T]) -> Result<EnergyReport<T>> {
        self.check_len(rho)?;
        let mut gradient = self.phi.clone();
        let mut value = T::zero();
        let two = T::lit(2.0);
        for e in &self.interior {
            let theta = self.theta[e.edge];
            let (rj, rk) = (rho[e.left], rho[e.right]);
            let x = rk - rj;
            let s = rj + rk;
            let ts = T::PI() - theta;
            let term = match self.geometry {
                Geometry::Euclidean => im_li_unchecked(x, theta) + im_li_unchecked(-x, theta) - ts * s,
                Geometry::Hyperbolic => {
                    im_li_unchecked(x, theta)
                        + im_li_unchecked(-x, theta)
                        + im_li_unchecked(s, theta)
                        + im_li_unchecked(-s, theta)
                }
                Geometry::Spherical => {
                    im_li_unchecked(x, theta) + im_li_unchecked(-x, theta)
                        - im_li_unchecked(s, ts)
                        - im_li_unchecked(-s, ts)
                        - T::PI() * s
                }
            };
            value = value + term;
            gradient[e.left] = gradient[e.left] - two * kite_unchecked(self.geometry, theta, rj, rk);
            gradient[e.right] = gradient[e.right] - two * kite_unchecked(self.geometry, theta, rk, rj);
        }
        for (&p, &r) in self.phi.iter().zip(rho) {
            value = value + p * r;
        }
        let gradient_inf_norm = inf_norm(&gradient);
        Ok(EnergyReport { value, gradient, gradient_inf_norm })
    }

    /// The second differential of the functional at `rho` applied to `direction` twice.
    pub fn hessian_form(&self, rho: &[T], direction: &[T]) -> Result<T> {
        self.check_len(rho)?;
        self.check_len(direction)?;
        let two = T::lit(2.0);
        let mut q = T::zero();
        for e in &self.interior {
            let theta = self.theta[e.edge];
            let (rj, rk) = (rho[e.left], rho[e.right]);
            let (dj, dk) = (direction[e.left], direction[e.right]);
            let diff = dk - dj;
            let sum = dj + dk;
            q = q + two * f_theta_prime(theta, rk - rj) * diff * diff;
            match self.geometry {
                Geometry::Euclidean => {}
                Geometry::Hyperbolic => q = q + two * f_theta_prime(theta, rj + rk) * sum * sum,
                Geometry::Spherical => q = q - two * f_theta_prime(T::PI() - theta, rj + rk) * sum * sum,
            }
        }
        Ok(q)
    }

    /// `d/dt S_sph(ρ + t·1)`; strictly decreasing in `t`.
    fn shift_slope(&self, rho: &[T], t: T) -> (T, T) {
        let (two, four) = (T::lit(2.0), T::lit(4.0));
        let mut slope = self.phi.iter().fold(T::zero(), |a, &p| a + p);
        let mut dslope = T::zero();
        for e in &self.interior {
            let theta = self.theta[e.edge];
            let ts = T::PI() - theta;
            let s = rho[e.left] + rho[e.right] + two * t;
            slope = slope + two * theta - T::TAU() - four * f_theta(ts, s);
            dslope = dslope - T::lit(8.0) * f_theta_prime(ts, s);
        }
        (slope, dslope)
    }

    /// Maximizes `t ↦ S_sph(ρ + t·1)` and returns `(S̃_sph(ρ), t*)`.
    pub fn spherical_reduced(&self, rho: &[T]) -> Result<(T, T)> {
        if self.geometry != Geometry::Spherical {
            return Err(Error::InvalidProblem("reduced functional needs a spherical problem".into()));
        }
        let t = self.spherical_shift(rho)?;
        let shifted: Vec<T> = rho.iter().map(|&r| r + t).collect();
        Ok((self.energy_eval(&shifted)?.value, t))
    }

    /// Root of the shift slope on `[-40, 40]` by safeguarded Newton.
    pub fn spherical_shift(&self, rho: &[T]) -> Result<T> {
        self.check_len(rho)?;
        let (mut lo, mut hi) = (T::lit(-40.0), T::lit(40.0));
        let (slo, _) = self.shift_slope(rho, lo);
        let (shi, _) = self.shift_slope(rho, hi);
        if slo < T::zero() || shi > T::zero() {
            return Err(Error::BracketFailure { lo: -40.0, hi: 40.0 });
        }
        let mut t = T::zero();
        for _ in 0..200 {
            let (v, dv) = self.shift_slope(rho, t);
            if v == T::zero() {
                return Ok(t);
            }
            if v > T::zero() {
                lo = t;
            } else {
                hi = t;
            }
            let mut next = t - v / dv;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = (lo + hi) / T::lit(2.0);
            }
            if (next - t).abs() <= T::lit(4.0) * T::epsilon() * (T::one() + t.abs()) || hi - lo <= T::epsilon() {
                return Ok(next);
            }
            t = next;
        }
        Ok(t)
    }

    /// `A - A^(ρ)`: Gauss–Bonnet area minus the total kite area.
    pub fn area_defect(&self, rho: &[T]) -> Result<T> {
        if self.geometry != Geometry::Spherical {
            return Err(Error::InvalidProblem("area defect needs a spherical problem".into()));
        }
        if !self.surface.is_closed() {
            return Err(Error::BoundaryPresent);
        }
        self.check_len(rho)?;
        Ok(self.shift_slope(rho, T::zero()).0)
    }

    /// Total area `A = ΣΦ + Σ2θ - 2π|E|` forced by Gauss–Bonnet.
    pub fn gauss_bonnet_area(&self) -> T {
        let phi_sum = self.phi.iter().fold(T::zero(), |a, &p| a + p);
        self.interior.iter().fold(phi_sum, |a, e| a + T::lit(2.0) * self.theta[e.edge] - T::TAU())
    }

    /// Sum of kite areas `Σ 4 f_{θ*}(ρ_j + ρ_k)`.
    pub fn kite_area(&self, rho: &[T]) -> Result<T> {
        self.check_len(rho)?;
        Ok(self.interior.iter().fold(T::zero(), |a, e| {
            a + T::lit(4.0) * f_theta(T::PI() - self.theta[e.edge], rho[e.left] + rho[e.right])
        }))
    }

    /// Radius of the circle of face `f` in the problem's geometry.
    pub fn radius(&self, rho_f: T) -> T {
        radius_from_rho(self.geometry, rho_f)
    }
}

/// `r = e^ρ`, `2 artanh e^ρ` or `2 arctan e^ρ`.
pub fn radius_from_rho<T: Scalar>(geometry: Geometry, rho: T) -> T {
    let two = T::lit(2.0);
    match geometry {
        Geometry::Euclidean => rho.exp(),
        Geometry::Hyperbolic => two * rho.exp().atanh(),
        Geometry::Spherical => two * rho.exp().atan(),
    }
}

/// Inverse of [`radius_from_rho`].
pub fn rho_from_radius<T: Scalar>(geometry: Geometry, r: T) -> Result<T> {
    let two = T::lit(2.0);
    let ok = match geometry {
        Geometry::Euclidean | Geometry::Hyperbolic => r > T::zero(),
        Geometry::Spherical => r > T::zero() && r < T::PI(),
    };
    if !ok {
        return Err(Error::Domain(format!("radius {r} not admissible in {geometry} geometry")));
    }
    Ok(match geometry {
        Geometry::Euclidean => r.ln(),
        Geometry::Hyperbolic => (r / two).tanh().ln(),
        Geometry::Spherical => (r / two).tan().ln(),
    })
}

pub(crate) fn kite_unchecked<T: Scalar>(geometry: Geometry, theta: T, rho_left: T, rho_right: T) -> T {
    let x = rho_right - rho_left;
    let s = rho_right + rho_left;
    match geometry {
        Geometry::Euclidean => f_theta(theta, x),
        Geometry::Hyperbolic => f_theta(theta, x) - f_theta(theta, s),
        Geometry::Spherical => f_theta(theta, x) + f_theta(T::PI() - theta, s),
    }
}

/// Half the angle of the kite at the center of the left circle.
pub fn kite_half_angle<T: Scalar>(geometry: Geometry, theta: T, rho_left: T, rho_right: T) -> Result<T> {
    check_theta(theta)?;
    Ok(kite_unchecked(geometry, theta, rho_left, rho_right))
}

fn rho_hyp_sph<T: Scalar>(sign: T, ts: T, p1: T, p2: T) -> T {
    let h = T::lit(0.5);
    let num = sign * ((ts - p1 - p2) * h).sin() * ((ts - p1 + p2) * h).sin();
    let den = ((ts + p1 + p2) * h).sin() * ((ts + p1 - p2) * h).sin();
    h * (num / den).ln()
}

/// Recovers the radii variables of a kite from its two half-angles.
pub fn rho_from_half_angles<T: Scalar>(geometry: Geometry, theta: T, phi1: T, phi2: T) -> Result<HalfAngleInverse<T>> {
    check_theta(theta)?;
    let ts = T::PI() - theta;
    let zero = T::zero();
    let bad = || Error::Domain(format!("half-angles ({phi1}, {phi2}) not admissible for {geometry} θ = {theta}"));
    match geometry {
        Geometry::Euclidean => {
            if !(phi1 > zero && phi1 < ts) {
                return Err(bad());
            }
            Ok(HalfAngleInverse::Difference((phi1.sin() / (phi1 + theta).sin()).ln()))
        }
        Geometry::Hyperbolic => {
            if !(phi1 > zero && phi2 > zero && phi1 + phi2 < ts) {
                return Err(bad());
            }
            let one = T::one();
            Ok(HalfAngleInverse::Radii(rho_hyp_sph(one, ts, phi1, phi2), rho_hyp_sph(one, ts, phi2, phi1)))
        }
        Geometry::Spherical => {
            let s = phi1 + phi2;
            if !(phi1 > zero && phi2 > zero && s > ts && s < T::TAU() - ts && (phi1 - phi2).abs() < ts) {
                return Err(bad());
            }
            let m = -T::one();
            Ok(HalfAngleInverse::Radii(rho_hyp_sph(m, ts, phi1, phi2), rho_hyp_sph(m, ts, phi2, phi1)))
        }
    }
}
