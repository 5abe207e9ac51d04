//! Named example surfaces.

use std::collections::HashMap;

use super::CellularSurface;
use crate::error::{Error, Result};

/// The combinatorial cube.
pub fn cube() -> CellularSurface {
    CellularSurface::build_from_face_boundaries(&[
        vec![0, 4, 8, 12],
        vec![2, 16, 32, 22],
        vec![6, 20, 36, 26],
        vec![10, 24, 40, 30],
        vec![14, 28, 44, 18],
        vec![34, 46, 42, 38],
    ])
    .expect("cube rows are valid")
}

/// The cube with antipodal points identified; non-orientable.
pub fn projectivized_cube() -> CellularSurface {
    CellularSurface::build_from_face_boundaries(&[vec![0, 4, 8, 12], vec![2, 16, 9, 22], vec![6, 20, 13, 17]])
        .expect("projectivized cube rows are valid")
}

/// Builds an orientable surface from faces given as counterclockwise vertex cycles.
///
/// Each unordered vertex pair becomes one edge, numbered in order of first
/// appearance; the first traversal direction gets the index `4k`.
pub fn from_polygons(polygons: &[Vec<usize>]) -> Result<CellularSurface> {
    let mut ids: HashMap<(usize, usize), (usize, (usize, usize))> = HashMap::new();
    let mut rows = Vec::with_capacity(polygons.len());
    for poly in polygons {
        if poly.is_empty() {
            return Err(Error::MalformedSurface("empty polygon".into()));
        }
        let mut row = Vec::with_capacity(poly.len());
        for i in 0..poly.len() {
            let (u, v) = (poly[i], poly[(i + 1) % poly.len()]);
            let next = ids.len();
            let (k, first) = *ids.entry((u.min(v), u.max(v))).or_insert((next, (u, v)));
            row.push(4 * k as i32 + if first == (u, v) { 0 } else { 2 });
        }
        rows.push(row);
    }
    CellularSurface::build_from_face_boundaries(&rows)
}

pub fn tetrahedron() -> CellularSurface {
    from_polygons(&[vec![0, 2, 1], vec![0, 1, 3], vec![0, 3, 2], vec![1, 2, 3]]).expect("tetrahedron")
}

pub fn octahedron() -> CellularSurface {
    cube().poincare_dual().expect("cube is closed")
}

pub fn icosahedron() -> CellularSurface {
    from_polygons(&[
        vec![0, 11, 5],
        vec![0, 5, 1],
        vec![0, 1, 7],
        vec![0, 7, 10],
        vec![0, 10, 11],
        vec![1, 5, 9],
        vec![5, 11, 4],
        vec![11, 10, 2],
        vec![10, 7, 6],
        vec![7, 1, 8],
        vec![3, 9, 4],
        vec![3, 4, 2],
        vec![3, 2, 6],
        vec![3, 6, 8],
        vec![3, 8, 9],
        vec![4, 9, 5],
        vec![2, 4, 11],
        vec![6, 2, 10],
        vec![8, 6, 7],
        vec![9, 8, 1],
    ])
    .expect("icosahedron")
}

pub fn dodecahedron() -> CellularSurface {
    icosahedron().poincare_dual().expect("icosahedron is closed")
}

/// The cube with every vertex cut off: 6 octagons and 8 triangles.
pub fn truncated_cube() -> CellularSurface {
    let c = cube();
    // vertex of the truncated cube = (even oriented cube edge) >> 1, placed near its tail
    let mut polys: Vec<Vec<usize>> = Vec::new();
    for f in (0..2 * c.num_faces() as i32).step_by(2) {
        let mut poly = Vec::new();
        for e in c.face_boundary(f) {
            poly.push((e >> 1) as usize);
            poly.push(((e ^ 2) >> 1) as usize);
        }
        polys.push(poly);
    }
    for v in (0..2 * c.num_vertices() as i32).step_by(2) {
        polys.push(c.vertex_star(v).iter().map(|&e| (e >> 1) as usize).collect());
    }
    from_polygons(&polys).expect("truncated cube")
}

/// An `m × n` grid of quadrilaterals with periodic identifications (a torus).
///
/// Face `(i, j)` is row `j·m + i`; horizontal edge `(i, j)` has index `j·m + i`
/// and vertical edge `(i, j)` has index `m·n + j·m + i`.
pub fn quad_torus(m: usize, n: usize) -> CellularSurface {
    assert!(m >= 1 && n >= 1, "quad torus needs a nonempty grid");
    let h = |i: usize, j: usize| ((j % n) * m + (i % m)) as i32;
    let v = |i: usize, j: usize| (m * n + (j % n) * m + (i % m)) as i32;
    let mut rows = Vec::with_capacity(m * n);
    for j in 0..n {
        for i in 0..m {
            rows.push(vec![4 * h(i, j), 4 * v(i + 1, j), 4 * h(i, j + 1) + 2, 4 * v(i, j) + 2]);
        }
    }
    CellularSurface::build_from_face_boundaries(&rows).expect("quad torus rows are valid")
}

/// The quad torus with one diagonal per square: `2mn` triangles.
pub fn triangulated_torus(m: usize, n: usize) -> CellularSurface {
    assert!(m >= 1 && n >= 1, "triangulated torus needs a nonempty grid");
    let h = |i: usize, j: usize| ((j % n) * m + (i % m)) as i32;
    let v = |i: usize, j: usize| (m * n + (j % n) * m + (i % m)) as i32;
    let d = |i: usize, j: usize| (2 * m * n + (j % n) * m + (i % m)) as i32;
    let mut rows = Vec::with_capacity(2 * m * n);
    for j in 0..n {
        for i in 0..m {
            rows.push(vec![4 * h(i, j), 4 * v(i + 1, j), 4 * d(i, j) + 2]);
            rows.push(vec![4 * d(i, j), 4 * h(i, j + 1) + 2, 4 * v(i, j) + 2]);
        }
    }
    CellularSurface::build_from_face_boundaries(&rows).expect("triangulated torus rows are valid")
}

/// Hexagonal torus, the dual of [`triangulated_torus`].
pub fn hex_torus(m: usize, n: usize) -> CellularSurface {
    triangulated_torus(m, n).poincare_dual().expect("torus is closed")
}

/// Rectangular `m × n` grid of quadrilaterals forming a disc, surrounded by a
/// ring of boundary faces (no boundary edges).
pub fn quadmesh(m: usize, n: usize) -> CellularSurface {
    assert!(m >= 1 && n >= 1, "quadmesh needs a nonempty grid");
    let (mm, nn) = (m + 2, n + 2);
    let torus = quad_torus(mm, nn);
    let interior: Vec<bool> = (0..mm * nn)
        .map(|f| {
            let (i, j) = (f % mm, f / mm);
            (1..=m).contains(&i) && (1..=n).contains(&j)
        })
        .collect();
    restrict_to_faces(&torus, &interior).expect("grid patch is a disc")
}

/// Disc of hexagons within combinatorial distance `radius` of a central
/// hexagon, surrounded by boundary faces (no boundary edges).
pub fn hexgrid(radius: usize) -> CellularSurface {
    let size = 2 * radius + 4;
    let torus = hex_torus(size, size);
    let dist = face_distances(&torus, 0);
    let interior: Vec<bool> = dist.iter().map(|&d| d <= radius).collect();
    restrict_to_faces(&torus, &interior).expect("hexagon patch is a disc")
}

fn face_distances(s: &CellularSurface, start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; s.num_faces()];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for e in s.face_boundary(2 * f as i32) {
            let g = s.right_face(e);
            if g >= 0 && dist[(g >> 1) as usize] == usize::MAX {
                dist[(g >> 1) as usize] = dist[f] + 1;
                queue.push_back((g >> 1) as usize);
            }
        }
    }
    dist
}

/// Keeps the marked faces as interior faces together with their neighbours as
/// boundary faces; every edge without a marked face on either side is dropped.
pub fn restrict_to_faces(s: &CellularSurface, interior: &[bool]) -> Result<CellularSurface> {
    if interior.len() != s.num_faces() {
        return Err(Error::LengthMismatch { expected: s.num_faces(), got: interior.len() });
    }
    let keep_edge: Vec<bool> = (0..s.num_edges())
        .map(|k| {
            let (a, b) = s.edge_faces(k);
            (a >= 0 && interior[a as usize]) || (b >= 0 && interior[b as usize])
        })
        .collect();
    let (rows, _) = super::puncture::drop_edges(s.rows(), &keep_edge);
    let rows: Vec<Vec<i32>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    CellularSurface::build_from_face_boundaries(&rows)
}

/// Looks up a named example surface.
pub fn named(name: &str) -> Option<CellularSurface> {
    Some(match name {
        "cube" => cube(),
        "projectivized_cube" => projectivized_cube(),
        "tetrahedron" => tetrahedron(),
        "octahedron" => octahedron(),
        "icosahedron" => icosahedron(),
        "dodecahedron" => dodecahedron(),
        "truncated_cube" => truncated_cube(),
        "quad_torus" => quad_torus(2, 2),
        "triangulated_torus" => triangulated_torus(3, 3),
        "hex_torus" => hex_torus(3, 3),
        "quadmesh" => quadmesh(4, 4),
        "hexgrid" => hexgrid(2),
        _ => return None,
    })
}

/// Names accepted by [`named`].
pub const NAMED_SURFACES: &[&str] = &[
    "cube",
    "projectivized_cube",
    "tetrahedron",
    "octahedron",
    "icosahedron",
    "dodecahedron",
    "truncated_cube",
    "quad_torus",
    "triangulated_torus",
    "hex_torus",
    "quadmesh",
    "hexgrid",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(s: &CellularSurface) -> (usize, usize, usize) {
        (s.num_faces(), s.num_edges(), s.num_vertices())
    }

    #[test]
    fn platonic_counts() {
        assert_eq!(counts(&tetrahedron()), (4, 6, 4));
        assert_eq!(counts(&octahedron()), (8, 12, 6));
        assert_eq!(counts(&icosahedron()), (20, 30, 12));
        assert_eq!(counts(&dodecahedron()), (12, 30, 20));
        assert_eq!(counts(&truncated_cube()), (14, 36, 24));
    }

    #[test]
    fn tori() {
        assert_eq!(counts(&quad_torus(2, 2)), (4, 8, 4));
        assert_eq!(counts(&triangulated_torus(3, 3)), (18, 27, 9));
        assert_eq!(counts(&hex_torus(3, 3)), (9, 27, 18));
        for s in [quad_torus(3, 2), triangulated_torus(3, 4)] {
            assert_eq!(s.euler_characteristic(), 0);
        }
    }

    #[test]
    fn discs() {
        let q = quadmesh(3, 2);
        assert_eq!(q.interior_edges().len(), q.num_edges());
        // 6 interior faces and a ring of 10 boundary faces
        assert_eq!(q.num_faces(), 6 + 10);
        assert_eq!(q.num_vertices(), 12);
        let h = hexgrid(1);
        assert_eq!(h.num_faces(), 7 + 12);
        assert!(!q.is_closed() && !h.is_closed());
    }

    #[test]
    fn all_names_resolve() {
        for name in NAMED_SURFACES {
            assert!(named(name).is_some(), "{name}");
        }
        assert!(named("klein_bottle").is_none());
    }
}
