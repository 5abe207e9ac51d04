//! Points, maps and circles of the complex projective line.

use num_complex::Complex;

use crate::energy::Geometry;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Homogeneous coordinates `(z₁ : z₂)`; the affine value is `z₁ / z₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint<T> {
    pub z1: Complex<T>,
    pub z2: Complex<T>,
}

impl<T: Scalar> ProjectivePoint<T> {
    /// Rescaled so the larger coordinate has modulus one.
    pub fn new(z1: Complex<T>, z2: Complex<T>) -> Result<Self> {
        let m = z1.norm().max(z2.norm());
        if !(m > T::zero()) || !m.is_finite() {
            return Err(Error::Domain("homogeneous coordinates must be finite and not both zero".into()));
        }
        Ok(Self { z1: z1 / m, z2: z2 / m })
    }

    pub fn from_complex(z: Complex<T>) -> Self {
        Self::new(z, Complex::new(T::one(), T::zero())).unwrap_or_else(|_| Self::infinity())
    }

    pub fn infinity() -> Self {
        Self { z1: Complex::new(T::one(), T::zero()), z2: Complex::new(T::zero(), T::zero()) }
    }

    /// Affine coordinate, or `None` at infinity.
    pub fn to_complex(&self) -> Option<Complex<T>> {
        if self.z2.norm() <= T::epsilon() * self.z1.norm() {
            None
        } else {
            Some(self.z1 / self.z2)
        }
    }

    /// Chordal distance on the Riemann sphere of diameter one.
    pub fn chordal_distance(&self, other: &Self) -> T {
        let num = (self.z1 * other.z2 - self.z2 * other.z1).norm();
        let a = (self.z1.norm_sqr() + self.z2.norm_sqr()).sqrt();
        let b = (other.z1.norm_sqr() + other.z2.norm_sqr()).sqrt();
        num / (a * b)
    }
}

/// Projective map `z ↦ (az + b) / (cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

impl<T: Scalar> MoebiusMap<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self> {
        let m = Self { a, b, c, d };
        if !(m.det().norm() > T::zero()) {
            return Err(Error::Domain("Möbius map must have nonzero determinant".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()));
        Self { a: o, b: z, c: z, d: o }
    }

    pub fn det(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    /// Same map scaled to determinant one.
    pub fn normalized(&self) -> Self {
        let s = self.det().sqrt();
        Self { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s }
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
        .normalized()
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }.normalized()
    }

    pub fn apply(&self, p: &ProjectivePoint<T>) -> ProjectivePoint<T> {
        let z1 = self.a * p.z1 + self.b * p.z2;
        let z2 = self.c * p.z1 + self.d * p.z2;
        ProjectivePoint::new(z1, z2).unwrap_or(*p)
    }

    /// Rotation by `alpha` about `0`, an isometry in every model.
    pub fn rotation(alpha: T) -> Self {
        let h = alpha / T::lit(2.0);
        let e = Complex::from_polar(T::one(), h);
        let z = Complex::new(T::zero(), T::zero());
        Self { a: e, b: z, c: z, d: e.conj() }
    }

    /// Isometry moving `0` a distance `dist` along the positive real axis.
    pub fn translation(geometry: Geometry, dist: T) -> Self {
        let h = dist / T::lit(2.0);
        let r = |x: T| Complex::new(x, T::zero());
        match geometry {
            Geometry::Euclidean => Self { a: r(T::one()), b: r(dist), c: r(T::zero()), d: r(T::one()) },
            Geometry::Hyperbolic => Self { a: r(h.cosh()), b: r(h.sinh()), c: r(h.sinh()), d: r(h.cosh()) },
            Geometry::Spherical => Self { a: r(h.cos()), b: r(h.sin()), c: r(-h.sin()), d: r(h.cos()) },
        }
    }

    /// Isometry of the model taking `0` to `p`.
    pub fn moving_origin_to(geometry: Geometry, p: &ProjectivePoint<T>) -> Result<Self> {
        let (p1, p2) = (p.z1, p.z2);
        let m = match geometry {
            Geometry::Euclidean => Self { a: p2, b: p1, c: Complex::new(T::zero(), T::zero()), d: p2 },
            Geometry::Hyperbolic => {
                if !(p1.norm() < p2.norm()) {
                    return Err(Error::Domain("hyperbolic point must lie inside the unit disk".into()));
                }
                Self { a: p2.conj(), b: p1, c: p1.conj(), d: p2 }
            }
            Geometry::Spherical => Self { a: p2.conj(), b: p1, c: -p1.conj(), d: p2 },
        };
        if !(m.det().norm() > T::zero()) {
            return Err(Error::Domain("point at infinity is not in the euclidean plane".into()));
        }
        Ok(m.normalized())
    }

    /// `max(|a - d̄|, |b + c̄|)`, zero for rotations of the sphere.
    pub fn spherical_defect(&self) -> T {
        let m = self.normalized();
        (m.a - m.d.conj()).norm().max((m.b + m.c.conj()).norm())
    }

    /// `max(|a - d̄|, |b - c̄|)`, zero for isometries of the disk.
    pub fn hyperbolic_defect(&self) -> T {
        let m = self.normalized();
        (m.a - m.d.conj()).norm().max((m.b - m.c.conj()).norm())
    }

    /// Entrywise distance in `PSL(2, ℂ)`, relative to the size of `self`.
    pub fn distance(&self, other: &Self) -> T {
        let (p, q) = (self.normalized(), other.normalized());
        let diff = |s: T| {
            [(p.a, q.a), (p.b, q.b), (p.c, q.c), (p.d, q.d)]
                .iter()
                .fold(T::zero(), |m, &(x, y)| m.max((x - y * s).norm()))
        };
        let size = [p.a, p.b, p.c, p.d].iter().fold(T::one(), |m, x| m.max(x.norm()));
        diff(T::one()).min(diff(-T::one())) / size
    }
}

/// A circle `{z : z* H z = 0}` with `det H < 0`. Points with negative form
/// value lie inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianCircle<T> {
    pub h11: T,
    pub h12: Complex<T>,
    pub h22: T,
}

impl<T: Scalar> HermitianCircle<T> {
    pub fn new(h11: T, h12: Complex<T>, h22: T) -> Result<Self> {
        let c = Self { h11, h12, h22 };
        if !(c.det() < T::zero()) {
            return Err(Error::Domain(format!("Hermitian matrix has determinant {} >= 0", c.det())));
        }
        Ok(c)
    }

    pub fn det(&self) -> T {
        self.h11 * self.h22 - self.h12.norm_sqr()
    }

    /// `z* H z`.
    pub fn form(&self, p: &ProjectivePoint<T>) -> T {
        self.h11 * p.z1.norm_sqr() + T::lit(2.0) * (self.h12 * p.z1.conj() * p.z2).re + self.h22 * p.z2.norm_sqr()
    }

    /// Image under `m`, that is `M⁻* H M⁻¹`.
    pub fn transform(&self, m: &MoebiusMap<T>) -> Self {
        let n = m.inverse();
        // Columns of n: (a, c) and (b, d).
        let col = |x: Complex<T>, y: Complex<T>, u: Complex<T>, v: Complex<T>| {
            let h12c = self.h12.conj();
            x.conj() * (u * self.h11 + v * self.h12) + y.conj() * (u * h12c + v * self.h22)
        };
        Self {
            h11: col(n.a, n.c, n.a, n.c).re,
            h12: col(n.a, n.c, n.b, n.d),
            h22: col(n.b, n.d, n.b, n.d).re,
        }
    }

    /// Euclidean center and radius in the affine chart, or `None` for a line.
    pub fn euclidean_center_radius(&self) -> Option<(Complex<T>, T)> {
        let scale = self.h11.abs().max(self.h12.norm()).max(self.h22.abs());
        if self.h11.abs() <= T::lit(1e-12) * scale {
            return None;
        }
        let center = -self.h12 / self.h11;
        Some((center, (-self.det()).sqrt() / self.h11.abs()))
    }
}

/// Circle with the given center and radius, measured in the geometry.
pub fn circle_from_center_radius<T: Scalar>(
    geometry: Geometry,
    center: &ProjectivePoint<T>,
    radius: T,
) -> Result<HermitianCircle<T>> {
    let s = match geometry {
        Geometry::Euclidean if radius > T::zero() && radius.is_finite() => radius,
        Geometry::Hyperbolic if radius > T::zero() && radius.is_finite() => (radius / T::lit(2.0)).tanh(),
        Geometry::Spherical if radius > T::zero() && radius < T::PI() => (radius / T::lit(2.0)).tan(),
        _ => return Err(Error::Domain(format!("radius {radius} not admissible in {geometry} geometry"))),
    };
    let base = HermitianCircle { h11: T::one(), h12: Complex::new(T::zero(), T::zero()), h22: -s * s };
    Ok(base.transform(&MoebiusMap::moving_origin_to(geometry, center)?))
}

/// Exterior intersection angle in `[0, π]`, invariant under Möbius maps.
pub fn intersection_angle<T: Scalar>(c1: &HermitianCircle<T>, c2: &HermitianCircle<T>) -> Result<T> {
    let num = c1.h11 * c2.h22 + c1.h22 * c2.h11 - T::lit(2.0) * (c1.h12 * c2.h12.conj()).re;
    let den = T::lit(2.0) * (c1.det() * c2.det()).sqrt();
    let cos = -num / den;
    let slack = T::lit(1e-12);
    if !(cos.abs() <= T::one() + slack) {
        return Err(Error::Domain("circles do not intersect".into()));
    }
    Ok(cos.max(-T::one()).min(T::one()).acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn unit_circle() {
        let h = circle_from_center_radius(Geometry::Euclidean, &ProjectivePoint::from_complex(c(0.0, 0.0)), 1.0).unwrap();
        for k in 0..8 {
            let p = ProjectivePoint::from_complex(Complex::from_polar(1.0, k as f64));
            assert!(h.form(&p).abs() < 1e-15);
        }
    }

    #[test]
    fn equator_from_north_pole() {
        let h = circle_from_center_radius(Geometry::Spherical, &ProjectivePoint::infinity(), PI / 2.0).unwrap();
        let (center, r) = h.euclidean_center_radius().unwrap();
        assert!(center.norm() < 1e-15 && (r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hyperbolic_radius() {
        let h = circle_from_center_radius(Geometry::Hyperbolic, &ProjectivePoint::from_complex(c(0.0, 0.0)), 1.3).unwrap();
        let (_, r) = h.euclidean_center_radius().unwrap();
        assert!((r - (0.65f64).tanh()).abs() < 1e-15);
    }

    #[test]
    fn angles() {
        let o = ProjectivePoint::from_complex(c(0.0, 0.0));
        let a = circle_from_center_radius(Geometry::Euclidean, &o, 1.0).unwrap();
        let b = circle_from_center_radius(Geometry::Euclidean, &ProjectivePoint::from_complex(c(2f64.sqrt(), 0.0)), 1.0).unwrap();
        assert!((intersection_angle(&a, &b).unwrap() - PI / 2.0).abs() < 1e-14);
        let t = circle_from_center_radius(Geometry::Euclidean, &ProjectivePoint::from_complex(c(2.0, 0.0)), 1.0).unwrap();
        assert!((intersection_angle(&a, &t).unwrap() - PI).abs() < 1e-7);
        let far = circle_from_center_radius(Geometry::Euclidean, &ProjectivePoint::from_complex(c(3.0, 0.0)), 1.0).unwrap();
        assert!(intersection_angle(&a, &far).is_err());
    }

    #[test]
    fn generators_are_isometries() {
        let r = MoebiusMap::rotation(0.7);
        let s = MoebiusMap::translation(Geometry::Spherical, 1.1).compose(&r);
        let h = MoebiusMap::translation(Geometry::Hyperbolic, 1.1).compose(&r);
        assert!(s.spherical_defect() < 1e-15);
        assert!(h.hyperbolic_defect() < 1e-15);
        let p = MoebiusMap::translation(Geometry::Hyperbolic, 0.8).apply(&ProjectivePoint::from_complex(c(0.0, 0.0)));
        assert!((p.to_complex().unwrap().re - 0.4f64.tanh()).abs() < 1e-15);
    }
}
