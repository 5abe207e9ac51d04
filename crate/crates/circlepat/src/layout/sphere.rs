//! Stereographic projection and the barycentric normalization of point sets.

use num_complex::Complex;

use super::moebius::{MoebiusMap, ProjectivePoint};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `(x₁, x₂, x₃) ↦ (x₁ + i x₂) / (1 - x₃)`; the north pole goes to infinity.
pub fn sphere_to_plane<T: Scalar>(x: [T; 3]) -> ProjectivePoint<T> {
    let w = Complex::new(x[0], x[1]);
    let (p, q) = if x[2] <= T::zero() {
        (w, Complex::new(T::one() - x[2], T::zero()))
    } else {
        (Complex::new(T::one() + x[2], T::zero()), w.conj())
    };
    ProjectivePoint::new(p, q).unwrap_or_else(|_| ProjectivePoint::infinity())
}

/// Inverse of [`sphere_to_plane`].
pub fn plane_to_sphere<T: Scalar>(p: &ProjectivePoint<T>) -> [T; 3] {
    let two = T::lit(2.0);
    let w = p.z1 * p.z2.conj();
    let (a, b) = (p.z1.norm_sqr(), p.z2.norm_sqr());
    let n = a + b;
    [two * w.re / n, two * w.im / n, (a - b) / n]
}

fn norm3<T: Scalar>(v: [T; 3]) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn centroid<T: Scalar>(points: &[[T; 3]]) -> [T; 3] {
    let mut c = [T::zero(); 3];
    for p in points {
        for i in 0..3 {
            c[i] = c[i] + p[i];
        }
    }
    c
}

/// Hyperbolic isometry of the ball taking the point `x` to the center.
fn boost_to_origin<T: Scalar>(x: [T; 3]) -> MoebiusMap<T> {
    let t = norm3(x);
    if t == T::zero() {
        return MoebiusMap::identity();
    }
    let u = [x[0] / t, x[1] / t, x[2] / t];
    let q = sphere_to_plane(u);
    // Rotation taking u to the south pole, where z = 0.
    let rot = MoebiusMap { a: q.z2, b: -q.z1, c: q.z1.conj(), d: q.z2.conj() }.normalized();
    let k = ((T::one() + t) / (T::one() - t)).sqrt();
    let zero = Complex::new(T::zero(), T::zero());
    let dilate = MoebiusMap { a: Complex::new(k, T::zero()), b: zero, c: zero, d: Complex::new(T::one() / k, T::zero()) };
    rot.inverse().compose(&dilate).compose(&rot)
}

/// Möbius map `T` with `Σ T(vⱼ) = 0`, found by Newton steps on the sum of
/// Busemann functions over the ball.
pub fn normalize_moebius<T: Scalar>(points: &[[T; 3]]) -> Result<MoebiusMap<T>> {
    if points.len() < 3 {
        return Err(Error::Domain(format!("need at least 3 points, got {}", points.len())));
    }
    for (i, p) in points.iter().enumerate() {
        if (norm3(*p) - T::one()).abs() > T::lit(1e-9) {
            return Err(Error::Domain(format!("point {i} is not on the unit sphere")));
        }
        for q in &points[..i] {
            if norm3([p[0] - q[0], p[1] - q[1], p[2] - q[2]]) < T::lit(1e-12) {
                return Err(Error::Domain("points are not distinct".into()));
            }
        }
    }
    let n = T::from_count(points.len());
    let mut map = MoebiusMap::identity();
    for _ in 0..200 {
        let moved: Vec<[T; 3]> = points.iter().map(|&v| plane_to_sphere(&map.apply(&sphere_to_plane(v)))).collect();
        let s = centroid(&moved);
        if norm3(s) <= T::lit(1e-13) * n {
            return Ok(map);
        }
        // Hessian 4(nI - Σ v vᵀ) and gradient -2Σv at the origin.
        let mut h = [[T::zero(); 3]; 3];
        for (i, row) in h.iter_mut().enumerate() {
            for (j, hij) in row.iter_mut().enumerate() {
                let outer = moved.iter().fold(T::zero(), |acc, v| acc + v[i] * v[j]);
                let id = if i == j { n } else { T::zero() };
                *hij = T::lit(4.0) * (id - outer);
            }
        }
        let rhs = [s[0] * T::lit(2.0), s[1] * T::lit(2.0), s[2] * T::lit(2.0)];
        let mut x = solve3(h, rhs).ok_or_else(|| Error::Domain("points lie on a line through the center".into()))?;
        let len = norm3(x);
        let cap = T::lit(0.5);
        if len > cap {
            x = [x[0] * cap / len, x[1] * cap / len, x[2] * cap / len];
        }
        map = boost_to_origin(x).compose(&map);
    }
    Err(Error::Domain("normalization did not converge".into()))
}

fn det3<T: Scalar>(m: &[[T; 3]; 3]) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Cramer's rule.
fn solve3<T: Scalar>(m: [[T; 3]; 3], b: [T; 3]) -> Option<[T; 3]> {
    let d = det3(&m);
    if d.abs() <= T::epsilon() {
        return None;
    }
    let mut x = [T::zero(); 3];
    for (k, xk) in x.iter_mut().enumerate() {
        let mut mk = m;
        for i in 0..3 {
            mk[i][k] = b[i];
        }
        *xk = det3(&mk) / d;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poles_and_equator() {
        assert!(sphere_to_plane([0.0, 0.0, 1.0]).to_complex().is_none());
        let z = sphere_to_plane([1.0, 0.0, 0.0]).to_complex().unwrap();
        assert!((z - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn equator_triple() {
        let pts = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]];
        let m = normalize_moebius(&pts).unwrap();
        let s = centroid(&pts.map(|v| plane_to_sphere(&m.apply(&sphere_to_plane(v)))));
        assert!(norm3(s) < 1e-9);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(normalize_moebius(&[[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]).is_err());
        assert!(normalize_moebius(&[[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]).is_err());
    }
}
