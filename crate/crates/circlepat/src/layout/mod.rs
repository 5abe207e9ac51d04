//! Development of a solved pattern into the model space.
//!
//! Every oriented face gets a frame, a Möbius isometry taking the standard
//! position (center at `0`, first kite vertex on the positive real axis) to
//! its place in the model. Frames are propagated breadth first across
//! interior edges. Coordinates are affine coordinates of the plane, the
//! Poincaré disk, or the stereographic image of the unit sphere.

mod moebius;
mod sphere;

use std::collections::VecDeque;

use num_complex::Complex;

use crate::energy::{kite_unchecked, Geometry, PatternProblem};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::surface::SENTINEL;

pub use moebius::{circle_from_center_radius, intersection_angle, HermitianCircle, MoebiusMap, ProjectivePoint};
pub use sphere::{normalize_moebius, plane_to_sphere, sphere_to_plane};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutOptions {
    /// Largest admissible Euler–Lagrange residual of the input.
    pub residual_tolerance: f64,
}

impl Default for LayoutOptions {
    fn default() -> Self {
        Self { residual_tolerance: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutResult<T> {
    pub geometry: Geometry,
    /// Indexed by oriented face.
    pub centers: Vec<Option<ProjectivePoint<T>>>,
    /// Indexed by oriented vertex.
    pub vertices: Vec<Option<ProjectivePoint<T>>>,
    /// Indexed by oriented face.
    pub circles: Vec<Option<HermitianCircle<T>>>,
    /// Frame of each reached oriented face.
    pub frames: Vec<Option<MoebiusMap<T>>>,
    /// Indexed by oriented edge: the circle of the right face developed
    /// across the edge from the frame of the left face. On simply connected
    /// surfaces it equals the stored circle of the right face.
    pub across: Vec<Option<HermitianCircle<T>>>,
    /// Largest deviation of the transition maps composed around a vertex
    /// from the rotation about that vertex by its total angle `Θ_v`.
    /// Meaningful when every face around the vertex has `Φ_f = 2π`; a cone
    /// at a face center adds a rotation about that center to the loop.
    pub holonomy_residual: T,
    /// Maps `D` with `D·M = M′` for each non-tree adjacency, where `M` is the
    /// stored frame and `M′` the one arriving along the other path. They are
    /// the identity on simply connected surfaces and deck transformations
    /// otherwise.
    pub deck: Vec<MoebiusMap<T>>,
    /// Unoriented faces never reached from the seed.
    pub unreached_faces: Vec<usize>,
}

struct Frames<'a, T> {
    problem: &'a PatternProblem<T>,
    rho: &'a [T],
    /// Per oriented edge: the direction of its initial vertex in the frame of
    /// its left face, or `None` for edges without a kite.
    alpha: Vec<Option<T>>,
    /// Per oriented edge: kite half-angle at its left face.
    phi: Vec<T>,
}

impl<'a, T: Scalar> Frames<'a, T> {
    fn new(problem: &'a PatternProblem<T>, rho: &'a [T]) -> Self {
        let s = problem.surface();
        let n = s.num_oriented_edges();
        let mut alpha = vec![None; n];
        let mut phi = vec![T::zero(); n];
        let g = problem.geometry();
        for x in 0..n as i32 {
            let (l, r) = (s.left_face(x), s.right_face(x));
            if l != SENTINEL && r != SENTINEL {
                let theta = problem.theta()[(x >> 2) as usize];
                phi[x as usize] = kite_unchecked(g, theta, rho[(l >> 1) as usize], rho[(r >> 1) as usize]);
            }
        }
        for f in 0..2 * s.num_faces() as i32 {
            let mut acc = T::zero();
            for x in s.face_boundary(f) {
                if s.right_face(x) == SENTINEL {
                    continue;
                }
                alpha[x as usize] = Some(acc);
                acc = acc + T::lit(2.0) * phi[x as usize];
            }
        }
        Self { problem, rho, alpha, phi }
    }

    fn radius(&self, f: i32) -> T {
        self.problem.radius(self.rho[(f >> 1) as usize])
    }

    /// Center distance across the kite of edge `x`.
    fn distance(&self, x: i32) -> T {
        let s = self.problem.surface();
        let (r1, r2) = (self.radius(s.left_face(x)), self.radius(s.right_face(x)));
        let c = self.problem.theta()[(x >> 2) as usize].cos();
        match self.problem.geometry() {
            Geometry::Euclidean => (r1 * r1 + r2 * r2 - T::lit(2.0) * r1 * r2 * c).max(T::zero()).sqrt(),
            Geometry::Hyperbolic => (r1.cosh() * r2.cosh() - r1.sinh() * r2.sinh() * c).max(T::one()).acosh(),
            Geometry::Spherical => {
                (r1.cos() * r2.cos() + r1.sin() * r2.sin() * c).max(-T::one()).min(T::one()).acos()
            }
        }
    }

    /// Transition `T` with `M_right = M_left · T` across interior edge `x`.
    fn transition(&self, x: i32) -> Option<MoebiusMap<T>> {
        let y = x ^ 2;
        let (a, b) = (self.alpha[x as usize]?, self.alpha[y as usize]?);
        let g = self.problem.geometry();
        let m = MoebiusMap::rotation(a + self.phi[x as usize])
            .compose(&MoebiusMap::translation(g, self.distance(x)))
            .compose(&MoebiusMap::rotation(T::PI() - b - self.phi[y as usize]));
        Some(m)
    }

    /// Affine model coordinate of a point at distance `r_f` from the center.
    fn model_radius(&self, f: i32) -> T {
        self.rho[(f >> 1) as usize].exp()
    }
}

/// Lays out the pattern of `rho` with default options.
pub fn layout_pattern<T: Scalar>(problem: &PatternProblem<T>, rho: &[T]) -> Result<LayoutResult<T>> {
    layout_pattern_with(problem, rho, &LayoutOptions::default())
}

pub fn layout_pattern_with<T: Scalar>(
    problem: &PatternProblem<T>,
    rho: &[T],
    options: &LayoutOptions,
) -> Result<LayoutResult<T>> {
    let report = problem.energy_eval(rho)?;
    if !(report.gradient_inf_norm <= T::lit(options.residual_tolerance)) {
        return Err(Error::Layout(format!(
            "Euler–Lagrange residual {} exceeds {}",
            report.gradient_inf_norm, options.residual_tolerance
        )));
    }
    let s = problem.surface();
    let geometry = problem.geometry();
    let frames = Frames::new(problem, rho);
    let nf = 2 * s.num_faces();
    let Some(seed) = (0..s.num_oriented_edges() as i32).find(|&x| frames.alpha[x as usize].is_some()) else {
        return Err(Error::Layout("surface has no interior edge".into()));
    };
    let mut frame: Vec<Option<MoebiusMap<T>>> = vec![None; nf];
    let f0 = s.left_face(seed);
    frame[f0 as usize] = Some(MoebiusMap::rotation(-frames.alpha[seed as usize].unwrap_or(T::zero())));
    let mut deck = Vec::new();
    let mut queue = VecDeque::from([f0]);
    while let Some(f) = queue.pop_front() {
        let mf = frame[f as usize].expect("queued faces have frames");
        for x in s.face_boundary(f) {
            let Some(t) = frames.transition(x) else { continue };
            let g = s.right_face(x);
            let candidate = mf.compose(&t);
            match frame[g as usize] {
                None => {
                    frame[g as usize] = Some(candidate);
                    queue.push_back(g);
                }
                Some(mg) => {
                    if x < (x ^ 2) || f == g {
                        deck.push(candidate.compose(&mg.inverse()));
                    }
                }
            }
        }
    }

    let base = |f: i32| {
        let s0 = frames.model_radius(f);
        HermitianCircle { h11: T::one(), h12: Complex::new(T::zero(), T::zero()), h22: -s0 * s0 }
    };
    let mut centers = vec![None; nf];
    let mut circles = vec![None; nf];
    let origin = ProjectivePoint::from_complex(Complex::new(T::zero(), T::zero()));
    for f in 0..nf {
        let Some(m) = frame[f] else { continue };
        centers[f] = Some(m.apply(&origin));
        circles[f] = Some(base(f as i32).transform(&m));
    }
    let mut across = vec![None; s.num_oriented_edges()];
    for x in 0..s.num_oriented_edges() as i32 {
        let (Some(t), Some(m)) = (frames.transition(x), frame[s.left_face(x) as usize]) else { continue };
        across[x as usize] = Some(base(s.right_face(x)).transform(&m.compose(&t)));
    }
    let mut vertices = vec![None; 2 * s.num_vertices()];
    for x in 0..s.num_oriented_edges() as i32 {
        let (Some(a), f) = (frames.alpha[x as usize], s.left_face(x)) else { continue };
        let Some(m) = frame[f as usize] else { continue };
        let v = s.initial_vertex(x) as usize;
        if vertices[v].is_none() {
            let p = Complex::from_polar(frames.model_radius(f), a);
            vertices[v] = Some(m.apply(&ProjectivePoint::from_complex(p)));
        }
    }

    let mut holonomy_residual = T::zero();
    for v in 0..2 * s.num_vertices() as i32 {
        let star = s.vertex_star(v);
        if star.is_empty() {
            continue;
        }
        let mut product = MoebiusMap::identity();
        let mut closed = true;
        for &x in &star {
            let y = s.prev_left(x);
            match (y != SENTINEL).then(|| frames.transition(y)).flatten() {
                Some(t) => product = product.compose(&t),
                None => {
                    closed = false;
                    break;
                }
            }
        }
        let x0 = star[0];
        if !closed || frame[s.left_face(x0) as usize].is_none() {
            continue;
        }
        // Going around the vertex rotates about it by the total angle Θ_v.
        let cone = star.iter().fold(T::zero(), |acc, &x| acc + problem.theta()[(s.prev_left(x) >> 2) as usize]);
        let Some(a) = frames.alpha[x0 as usize] else { continue };
        let at = ProjectivePoint::from_complex(Complex::from_polar(frames.model_radius(s.left_face(x0)), a));
        let to_vertex = MoebiusMap::moving_origin_to(geometry, &at)?;
        let expected = to_vertex.compose(&MoebiusMap::rotation(cone)).compose(&to_vertex.inverse());
        holonomy_residual = holonomy_residual.max(product.distance(&expected));
    }

    let mut reached = vec![false; s.num_faces()];
    for f in 0..nf {
        if frame[f].is_some() {
            reached[f >> 1] = true;
        }
    }
    let unreached_faces = (0..s.num_faces()).filter(|&f| !reached[f]).collect();
    Ok(LayoutResult {
        geometry,
        centers,
        vertices,
        circles,
        frames: frame,
        across,
        holonomy_residual,
        deck,
        unreached_faces,
    })
}
