//! Independent checks of a solved and laid-out pattern.

use std::f64::consts::PI;

use circlepat::coherent::{angles_from_rho, validate_angles};
use circlepat::energy::{s_hat, volume_p};
use circlepat::layout::intersection_angle;
use circlepat::specfun::clausen;
use circlepat::{Circle, Geometry, Layout, Problem};
use num_complex::Complex;
use serde::Serialize;

pub const CHECK_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub geometry: Geometry,
    pub checks: Vec<Check>,
    /// Quantities reported but not checked, with the reason.
    pub skipped: Vec<(&'static str, String)>,
    pub pass: bool,
}

impl Report {
    fn push(&mut self, name: &'static str, value: f64) {
        let pass = value.is_finite() && value <= CHECK_TOLERANCE;
        self.checks.push(Check { name, value, tolerance: CHECK_TOLERANCE, pass });
    }
}

/// Like `f64::max`, but a NaN on either side wins.
fn worse(acc: f64, x: f64) -> f64 {
    if acc.is_nan() || x.is_nan() {
        f64::NAN
    } else {
        acc.max(x)
    }
}

/// Intersection points of two circles of the affine plane.
fn meet(h1: &Circle, h2: &Circle) -> Option<[Complex<f64>; 2]> {
    let (c1, r1) = h1.euclidean_center_radius()?;
    let (c2, r2) = h2.euclidean_center_radius()?;
    let d = (c2 - c1).norm();
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let u = (c2 - c1) / d;
    let base = c1 + u * a;
    Some([base + u * Complex::new(0.0, h), base - u * Complex::new(0.0, h)])
}

fn adjacent_angle_error(p: &Problem, l: &Layout) -> f64 {
    let s = p.surface();
    let mut worst: f64 = 0.0;
    for x in 0..s.num_oriented_edges() as i32 {
        let (Some(a), Some(b)) = (&l.circles[s.left_face(x) as usize], &l.across[x as usize]) else { continue };
        let got = intersection_angle(a, b).unwrap_or(f64::NAN);
        worst = worse(worst, (got - p.theta()[(x >> 2) as usize]).abs());
    }
    worst
}

/// Kite angles at each center, measured in the face's own frame where the
/// center sits at the origin, against `Φ_f`.
fn kite_closure_error(p: &Problem, l: &Layout) -> f64 {
    let s = p.surface();
    let mut worst: f64 = 0.0;
    for f in 0..2 * s.num_faces() as i32 {
        let (Some(frame), Some(circle)) = (&l.frames[f as usize], &l.circles[f as usize]) else { continue };
        let back = frame.inverse();
        let own = circle.transform(&back);
        let mut total = 0.0;
        for x in s.face_boundary(f) {
            let Some(other) = &l.across[x as usize] else { continue };
            let other = other.transform(&back);
            let (Some(points), Some((toward, _))) = (meet(&own, &other), other.euclidean_center_radius()) else {
                return f64::NAN;
            };
            total += 2.0 * (points[0] / toward).arg().abs();
        }
        worst = worse(worst, (total - p.phi()[(f >> 1) as usize]).abs());
    }
    worst
}

/// Angles at each vertex point against `Θ_v`.
fn vertex_closure_error(p: &Problem, l: &Layout) -> f64 {
    let s = p.surface();
    let mut worst: f64 = 0.0;
    for v in 0..2 * s.num_vertices() as i32 {
        let (mut measured, mut want) = (0.0, 0.0);
        for x in s.vertex_star(v) {
            let (Some(a), Some(b)) = (&l.circles[s.left_face(x) as usize], &l.across[x as usize]) else { continue };
            measured += intersection_angle(a, b).unwrap_or(f64::NAN);
            want += p.theta()[(x >> 2) as usize];
        }
        worst = worse(worst, (measured - want).abs());
    }
    worst
}

pub fn verify(p: &Problem, rho: &[f64], layout: &Layout) -> circlepat::Result<Report> {
    let mut report = Report { geometry: p.geometry(), checks: Vec::new(), skipped: Vec::new(), pass: false };
    let eval = p.energy_eval(rho)?;
    report.push("euler_lagrange_residual", eval.gradient_inf_norm);

    let phi = angles_from_rho(p, rho)?;
    let v = validate_angles(p, &phi)?;
    report.push("face_angle_sums", v.max_face_residual);
    if p.geometry() == Geometry::Euclidean {
        report.push("edge_angle_pairs", v.max_pair_residual);
    }

    match p.geometry() {
        Geometry::Spherical => {
            report.skipped.push(("duality_gap", "no angle functional for spherical patterns".into()));
            report.skipped.push(("volume_identity", "no prism volumes for spherical patterns".into()));
            report.push("area_defect", p.area_defect(rho)?.abs());
        }
        g => {
            let shat = s_hat(p, &phi)?;
            report.push("duality_gap", (shat - eval.value).abs());
            let mut volumes = 0.0;
            for (i, e) in p.interior().iter().enumerate() {
                let (a, b) = phi.pair(i);
                volumes += volume_p(p.theta()[e.edge], a, b)?.volume;
            }
            let want = match g {
                Geometry::Euclidean => {
                    0.5 * (shat + p.interior().iter().map(|e| clausen(2.0 * (PI - p.theta()[e.edge]))).sum::<f64>())
                }
                _ => shat,
            };
            report.push("volume_identity", (volumes - want).abs());
        }
    }

    report.push("intersection_angles", adjacent_angle_error(p, layout));
    report.push("kite_closure", kite_closure_error(p, layout));
    report.push("vertex_closure", vertex_closure_error(p, layout));
    let flat = p.phi().iter().all(|x| (x - 2.0 * PI).abs() <= p.tolerance().max(1e-12));
    if flat {
        report.push("holonomy", layout.holonomy_residual);
    } else {
        report.skipped.push(("holonomy", format!("{:e}; cone angles at face centers", layout.holonomy_residual)));
    }
    report.pass = report.checks.iter().all(|c| c.pass);
    Ok(report)
}
