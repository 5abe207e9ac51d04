//! Removing a vertex together with its star, leaving boundary faces.

use super::{CellularSurface, SENTINEL};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Result of [`CellularSurface::puncture_at_vertex`].
#[derive(Debug, Clone)]
pub struct Punctured<T> {
    pub surface: CellularSurface,
    /// Prescribed covered angle per remaining face.
    pub phi: Vec<T>,
    /// Intersection angles restricted to the remaining edges.
    pub theta: Vec<T>,
    /// Old unoriented face index to new one.
    pub face_map: Vec<Option<usize>>,
    /// Old unoriented edge index to new one.
    pub edge_map: Vec<Option<usize>>,
}

/// Replaces dropped edges by [`SENTINEL`], merges adjacent sentinels and
/// renumbers the kept edges compactly. Rows that lose all edges disappear.
pub(crate) fn drop_edges(rows: &[Vec<i32>], keep: &[bool]) -> (Vec<Vec<i32>>, Vec<Option<usize>>) {
    let mut edge_map = vec![None; keep.len()];
    let mut next = 0usize;
    for (k, &kept) in keep.iter().enumerate() {
        if kept {
            edge_map[k] = Some(next);
            next += 1;
        }
    }
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mapped: Vec<i32> = row
            .iter()
            .map(|&e| match e {
                SENTINEL => SENTINEL,
                e => match edge_map[(e >> 2) as usize] {
                    Some(k) => 4 * k as i32 + (e & 3),
                    None => SENTINEL,
                },
            })
            .collect();
        let Some(cut) = mapped.iter().position(|&e| e == SENTINEL) else {
            out.push(mapped);
            continue;
        };
        let n = mapped.len();
        let mut collapsed: Vec<i32> = Vec::with_capacity(n);
        for i in 1..=n {
            let e = mapped[(cut + i) % n];
            if e == SENTINEL && collapsed.last().is_none_or(|&l| l == SENTINEL) {
                continue;
            }
            collapsed.push(e);
        }
        if !collapsed.is_empty() {
            if collapsed.last() != Some(&SENTINEL) {
                collapsed.push(SENTINEL);
            }
            out.push(collapsed);
        } else {
            out.push(Vec::new());
        }
    }
    (out, edge_map)
}

impl CellularSurface {
    /// Removes the unoriented vertex `u`, its incident faces and every edge
    /// touching them. Remaining faces that lost edges become boundary faces
    /// with `Φ = 2π - Σ 2θ*` over the lost edges; the others get `Φ = 2π`.
    pub fn puncture_at_vertex<T: Scalar>(&self, u: usize, theta: &[T]) -> Result<Punctured<T>> {
        if !self.is_closed() {
            return Err(Error::BoundaryPresent);
        }
        if u >= self.num_vertices {
            return Err(Error::OutOfRange { index: u as i64, limit: self.num_vertices });
        }
        if theta.len() != self.num_edges {
            return Err(Error::LengthMismatch { expected: self.num_edges, got: theta.len() });
        }
        let mut removed_face = vec![false; self.num_faces];
        for e in self.vertex_star(2 * u as i32) {
            removed_face[(self.left_face(e) >> 1) as usize] = true;
        }
        let keep: Vec<bool> = (0..self.num_edges)
            .map(|k| {
                let (a, b) = self.edge_faces(k);
                !removed_face[a as usize] && !removed_face[b as usize]
            })
            .collect();
        let (rows, edge_map) = drop_edges(&self.rows, &keep);
        let mut face_map = vec![None; self.num_faces];
        let mut kept_rows = Vec::new();
        let mut phi = Vec::new();
        let two_pi = T::TAU();
        for (f, row) in rows.into_iter().enumerate() {
            if removed_face[f] || row.is_empty() {
                continue;
            }
            let mut p = two_pi;
            for &e in self.rows[f].iter().filter(|&&e| e >= 0) {
                let k = (e >> 2) as usize;
                if !keep[k] {
                    p = p - (T::PI() - theta[k]) * T::lit(2.0);
                }
            }
            face_map[f] = Some(kept_rows.len());
            kept_rows.push(row);
            phi.push(p);
        }
        if kept_rows.len() < 2 {
            return Err(Error::MalformedSurface(format!(
                "puncturing vertex {u} leaves {} face(s), need at least 2",
                kept_rows.len()
            )));
        }
        let surface = Self::build_from_face_boundaries(&kept_rows)?;
        let theta = (0..self.num_edges).filter(|&k| keep[k]).map(|k| theta[k]).collect();
        Ok(Punctured { surface, phi, theta, face_map, edge_map })
    }
}
