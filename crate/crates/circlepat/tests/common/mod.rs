//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::PI;

use circlepat::coherent::angles_from_rho;
use circlepat::surface::{cube, dodecahedron, hexgrid, octahedron, projectivized_cube, quad_torus, quadmesh, tetrahedron, triangulated_torus};
use circlepat::{Angles, CellularSurface, Geometry, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Surfaces with at most 12 faces.
pub fn small_surfaces() -> Vec<(&'static str, CellularSurface)> {
    vec![
        ("tetrahedron", tetrahedron()),
        ("cube", cube()),
        ("octahedron", octahedron()),
        ("dodecahedron", dodecahedron()),
        ("projectivized_cube", projectivized_cube()),
        ("quad_torus_2x2", quad_torus(2, 2)),
        ("quad_torus_2x3", quad_torus(2, 3)),
        ("quad_torus_3x3", quad_torus(3, 3)),
        ("triangulated_torus_2x3", triangulated_torus(2, 3)),
        ("quadmesh_2x2", quadmesh(2, 2)),
        ("hexgrid_0", hexgrid(0)),
    ]
}

/// Closed surfaces with at most 12 faces.
pub fn small_closed_surfaces() -> Vec<(&'static str, CellularSurface)> {
    small_surfaces().into_iter().filter(|(_, s)| s.is_closed()).collect()
}

pub fn random_thetas(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.2..PI - 0.2)).collect()
}

/// Random problem; the cone angles are arbitrary positive numbers.
pub fn random_problem(rng: &mut impl Rng, geometry: Geometry, closed_only: bool) -> Problem {
    let pool = if closed_only { small_closed_surfaces() } else { small_surfaces() };
    let (_, s) = pool[rng.gen_range(0..pool.len())].clone();
    let theta = random_thetas(rng, s.num_edges());
    let phi = (0..s.num_faces()).map(|_| rng.gen_range(0.5..2.0 * PI)).collect();
    Problem::new(s, geometry, theta, phi, 1e-10).unwrap()
}

pub fn random_rho(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..hi)).collect()
}

pub fn random_direction(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Central difference of `f` at `x` in coordinate `i`.
pub fn central_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], i: usize, h: f64) -> f64 {
    let mut a = x.to_vec();
    let mut b = x.to_vec();
    a[i] += h;
    b[i] -= h;
    (f(&a) - f(&b)) / (2.0 * h)
}

/// Directional central difference.
pub fn directional_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], d: &[f64], h: f64) -> f64 {
    let a: Vec<f64> = x.iter().zip(d).map(|(x, d)| x + h * d).collect();
    let b: Vec<f64> = x.iter().zip(d).map(|(x, d)| x - h * d).collect();
    (f(&a) - f(&b)) / (2.0 * h)
}

/// Relative error with the denominator floored at one.
pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

/// Faces on the two sides of each interior edge, `(edge, left, right)`.
pub fn interior_sides(s: &CellularSurface) -> Vec<(usize, usize, usize)> {
    (0..s.num_edges())
        .filter_map(|k| {
            let l = s.face_table()[4 * k];
            let r = s.face_table()[4 * k + 2];
            (l >= 0 && r >= 0).then_some((k, (l >> 1) as usize, (r >> 1) as usize))
        })
        .collect()
}

/// Exhaustive check of the solvability inequality over all nonempty face
/// subsets. Equality is required at the full set for euclidean problems.
pub fn brute_force_feasible(p: &Problem) -> bool {
    let nf = p.num_faces();
    assert!(nf <= 20);
    let sides = interior_sides(p.surface());
    let tol = p.tolerance();
    for mask in 1u32..(1u32 << nf) {
        let inside = |f: usize| mask >> f & 1 == 1;
        let phi: f64 = (0..nf).filter(|&f| inside(f)).map(|f| p.phi()[f]).sum();
        let theta: f64 = sides
            .iter()
            .filter(|&&(_, l, r)| inside(l) || inside(r))
            .map(|&(k, _, _)| 2.0 * (PI - p.theta()[k]))
            .sum();
        let slack = theta - phi;
        let full = mask == (1u32 << nf) - 1;
        let ok = match (p.geometry(), full) {
            (Geometry::Euclidean, true) => slack.abs() <= tol,
            _ => slack > tol,
        };
        if !ok {
            return false;
        }
    }
    true
}

/// `Σ_{k≤N} sin(kx)/k²` for `x ∈ [1, π]` with the first Abel-summation tail
/// term `cos((N+½)x) / (2 sin(x/2) (N+1)²)` added.
fn fourier_block(x: f64) -> f64 {
    const N: usize = 20_000;
    let step = num_complex::Complex::from_polar(1.0, x);
    let mut z = num_complex::Complex::new(1.0, 0.0);
    let mut s = 0.0;
    for k in 1..=N {
        z *= step;
        if k % 256 == 0 {
            z = num_complex::Complex::from_polar(1.0, k as f64 * x);
        }
        s += z.im / (k * k) as f64;
    }
    let n = N as f64;
    s + ((n + 0.5) * x).cos() / (2.0 * (x / 2.0).sin() * (n + 1.0) * (n + 1.0))
}

/// Clausen's integral from its Fourier series. Arguments are folded into
/// `[0, π]` by oddness and periodicity; arguments below one are lifted with
/// `Cl(x) = ½Cl(2x) + Cl(π - x)` until the series converges quickly.
pub fn clausen_fourier(x: f64) -> f64 {
    let tau = 2.0 * PI;
    let mut y = x.rem_euclid(tau);
    let mut sign = 1.0;
    if y > PI {
        y = tau - y;
        sign = -1.0;
    }
    if y == 0.0 || y == PI {
        return 0.0;
    }
    let mut total = 0.0;
    let mut weight = 1.0;
    while y < 1.0 {
        total += weight * fourier_block(PI - y);
        weight *= 0.5;
        y *= 2.0;
    }
    sign * (total + weight * fourier_block(y))
}

pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

/// Composite Gauss–Legendre quadrature on `[a, b]` with `panels` panels.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 5] = [0.0, -0.538_469_310_105_683_1, 0.538_469_310_105_683_1, -0.906_179_845_938_664, 0.906_179_845_938_664];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + h / 2.0;
        for (x, w) in X.iter().zip(W) {
            total += w * f(mid + x * h / 2.0);
        }
    }
    total * h / 2.0
}

/// Intersection angles summing to `2π` around every vertex: the regular value
/// `2π/deg` plus a random perturbation projected onto the balanced subspace.
/// Every vertex must have the same degree.
pub fn balanced_thetas(rng: &mut impl Rng, s: &CellularSurface, spread: f64) -> Vec<f64> {
    let ne = s.num_edges();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in 0..s.num_vertices() {
        let mut row = vec![0.0; ne];
        for x in s.vertex_star(2 * v as i32) {
            row[(x >> 2) as usize] += 1.0;
        }
        for b in &basis {
            let c = dot(&row, b);
            row.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let n = dot(&row, &row).sqrt();
        if n > 1e-9 {
            basis.push(row.iter().map(|x| x / n).collect());
        }
    }
    let mut v: Vec<f64> = (0..ne).map(|_| rng.gen_range(-spread..spread)).collect();
    for b in &basis {
        let c = dot(&v, b);
        v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
    }
    let deg = s.vertex_star(0).len() as f64;
    v.iter().map(|x| 2.0 * PI / deg + x).collect()
}

/// Random problem whose cone angles sum to `scale · Σ2θ*`.
pub fn scaled_problem(r: &mut impl Rng, geometry: Geometry, scale: f64) -> Problem {
    let pool = small_surfaces();
    let (_, s) = pool[r.gen_range(0..pool.len())].clone();
    let theta = random_thetas(r, s.num_edges());
    let budget: f64 = interior_sides(&s).iter().map(|&(k, _, _)| 2.0 * (PI - theta[k])).sum();
    let weights: Vec<f64> = (0..s.num_faces()).map(|_| r.gen_range(0.2..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let phi = weights.iter().map(|w| scale * budget * w / total).collect();
    Problem::new(s, geometry, theta, phi, 1e-10).unwrap()
}

/// A problem for which `rho` is a critical point, with its angle system.
pub fn critical_problem(p: &Problem, rho: &[f64]) -> Option<(Problem, Angles)> {
    let phi = angles_from_rho(p, rho).unwrap();
    let sums = phi.face_sums(p);
    if sums.iter().any(|&s| s <= 0.0) {
        return None;
    }
    let q = Problem::new(p.surface().clone(), p.geometry(), p.theta().to_vec(), sums, 1e-10).unwrap();
    Some((q, phi))
}

/// Projection of `v` onto the tangent space of coherent angle systems: pair
/// sums and face sums held fixed.
pub fn coherent_projection(p: &Problem, v: &[f64]) -> Vec<f64> {
    let m = v.len();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for i in 0..p.interior().len() {
        let mut row = vec![0.0; m];
        row[2 * i] = 1.0;
        row[2 * i + 1] = 1.0;
        rows.push(row);
    }
    for f in 0..p.num_faces() {
        let mut row = vec![0.0; m];
        for (i, e) in p.interior().iter().enumerate() {
            if e.left == f {
                row[2 * i] += 1.0;
            }
            if e.right == f {
                row[2 * i + 1] += 1.0;
            }
        }
        rows.push(row);
    }
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut row in rows {
        for b in &basis {
            let c = dot(&row, b);
            row.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let n = dot(&row, &row).sqrt();
        if n > 1e-9 {
            basis.push(row.iter().map(|x| x / n).collect());
        }
    }
    let mut out = v.to_vec();
    for b in &basis {
        let c = dot(&out, b);
        out.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
    }
    out
}

/// Z₂ rank by Gaussian elimination on dense rows.
pub fn rank_gf2(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] == 1 {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn betti_oracle(s: &CellularSurface) -> (usize, usize, usize) {
    let (f, e, v) = (s.num_faces(), s.num_edges(), s.num_vertices());
    let mut d1 = vec![vec![0u8; v]; e];
    for (k, row) in d1.iter_mut().enumerate() {
        let (a, b) = s.edge_vertices(k);
        row[a] ^= 1;
        row[b] ^= 1;
    }
    let mut d2 = vec![vec![0u8; e]; f];
    for (x, &face) in s.face_table().iter().enumerate() {
        if face >= 0 && face % 2 == 0 {
            d2[(face / 2) as usize][x / 4] ^= 1;
        }
    }
    let (r1, r2) = (rank_gf2(d1), rank_gf2(d2));
    (v - r1, e - r1 - r2, f - r2)
}

/// Regions cut out by a graph, counted independently of the library.
pub fn regions_oracle(s: &CellularSurface, edges: &BTreeSet<usize>) -> usize {
    let mut parent: Vec<usize> = (0..s.num_faces()).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for k in (0..s.num_edges()).filter(|k| !edges.contains(k)) {
        let (a, b) = s.edge_faces(k);
        let (ra, rb) = (root(&mut parent, a as usize), root(&mut parent, b as usize));
        parent[ra] = rb;
    }
    (0..s.num_faces()).filter(|&f| root(&mut parent, f) == f).count()
}
