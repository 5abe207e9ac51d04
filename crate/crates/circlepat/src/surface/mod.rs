//! Winged-edge model of cell decompositions of compact surfaces.
//!
//! Oriented edges live on the oriented double cover and are numbered
//! `0 .. 4·num_edges`. The quadruple `4k .. 4k+3` is the unoriented edge `k`;
//! `ι(n) = n ^ 2` reverses an edge and `τ(n) = n ^ 1` swaps the sheets.
//! `σ` maps an oriented edge to the next edge of its left face and may be
//! partial when boundary faces are present. Faces `2n`/`2n+1` and vertices
//! `2n`/`2n+1` are τ-images of each other.

mod dual;
mod homology;
mod library;
mod moves;
mod puncture;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dual::{canonical_form, is_isomorphic, CanonicalForm};
pub use homology::{Betti, GeneralEulerReport, HomologyReport, Subcomplex};
pub use library::*;
pub use moves::Move;
pub use puncture::Punctured;

/// Reserved index meaning "no element".
pub const SENTINEL: i32 = -1;

/// Reversal of an oriented edge.
#[inline]
pub fn iota(e: i32) -> i32 {
    e ^ 2
}

/// Sheet swap of an oriented edge.
#[inline]
pub fn tau(e: i32) -> i32 {
    e ^ 1
}

/// Navigation queries of [`CellularSurface::navigate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Query {
    NextLeft,
    PrevLeft,
    NextRight,
    PrevRight,
    LeftFace,
    RightFace,
    InitialVertex,
    TerminalVertex,
}

/// Cell decomposition of a compact surface in winged-edge form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellularSurface {
    num_edges: usize,
    rows: Vec<Vec<i32>>,
    sigma: Vec<i32>,
    sigma_inv: Vec<i32>,
    face_of: Vec<i32>,
    vertex_of: Vec<i32>,
    num_faces: usize,
    num_vertices: usize,
}

/// JSON surface description `{ "faces": [[...], ...], "name": ... }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub faces: Vec<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl CellularSurface {
    /// The empty surface.
    pub fn empty() -> Self {
        Self::build_from_face_boundaries(&[]).expect("empty surface")
    }

    /// Builds a surface from face boundary rows.
    ///
    /// Row `k` lists the boundary of face `2k` in order; consecutive entries are
    /// linked by `σ` cyclically, and a [`SENTINEL`] breaks the cycle. Face `2k+1`
    /// consists of the `τι`-images of row `k` in reverse order.
    pub fn build_from_face_boundaries(rows: &[Vec<i32>]) -> Result<Self> {
        let mut max_index: i64 = -1;
        for (k, row) in rows.iter().enumerate() {
            if row.iter().all(|&n| n == SENTINEL) {
                return Err(Error::MalformedSurface(format!("row {k} has no edges")));
            }
            for &n in row {
                if n < SENTINEL {
                    return Err(Error::MalformedSurface(format!(
                        "index parity violation: negative index {n} in row {k}"
                    )));
                }
                max_index = max_index.max(n as i64);
            }
        }
        let num_edges = if max_index < 0 { 0 } else { (max_index / 4 + 1) as usize };
        let n_oriented = 4 * num_edges;

        let mut position: Vec<Option<usize>> = vec![None; n_oriented];
        for (k, row) in rows.iter().enumerate() {
            for &n in row.iter().filter(|&&n| n >= 0) {
                let slot = &mut position[n as usize];
                if slot.is_some() {
                    return Err(Error::MalformedSurface(format!("duplicate edge {n} in boundaries")));
                }
                *slot = Some(k);
            }
        }
        for (n, slot) in position.iter().enumerate() {
            if slot.is_some() && position[n ^ 3].is_some() {
                return Err(Error::MalformedSurface(format!(
                    "index parity violation: edges {} and {} both appear in boundaries",
                    n.min(n ^ 3),
                    n.max(n ^ 3)
                )));
            }
        }
        for k in 0..num_edges {
            if (0..4).all(|j| position[4 * k + j].is_none()) {
                return Err(Error::MalformedSurface(format!(
                    "orphan edge {k}: none of the oriented edges {}..{} appears in a boundary",
                    4 * k,
                    4 * k + 3
                )));
            }
        }

        let mut sigma = vec![SENTINEL; n_oriented];
        let mut face_of = vec![SENTINEL; n_oriented];
        for (k, row) in rows.iter().enumerate() {
            let len = row.len();
            for i in 0..len {
                let a = row[i];
                if a < 0 {
                    continue;
                }
                face_of[a as usize] = (2 * k) as i32;
                face_of[(a ^ 3) as usize] = (2 * k + 1) as i32;
                let b = row[(i + 1) % len];
                if b >= 0 {
                    sigma[a as usize] = b;
                    sigma[(b ^ 3) as usize] = a ^ 3;
                }
            }
        }
        Self::assemble(num_edges, rows.to_vec(), sigma, face_of, rows.len())
    }

    fn assemble(
        num_edges: usize,
        rows: Vec<Vec<i32>>,
        sigma: Vec<i32>,
        face_of: Vec<i32>,
        num_faces: usize,
    ) -> Result<Self> {
        let n_oriented = 4 * num_edges;
        let mut sigma_inv = vec![SENTINEL; n_oriented];
        for (e, &s) in sigma.iter().enumerate() {
            if s >= 0 {
                sigma_inv[s as usize] = e as i32;
            }
        }
        let mut uf = UnionFind::new(n_oriented);
        for e in 0..n_oriented {
            let p = sigma_inv[e];
            if p >= 0 {
                uf.union(e, (p ^ 2) as usize);
            }
        }
        let mut vertex_of = vec![SENTINEL; n_oriented];
        let mut id_of_root = vec![SENTINEL; n_oriented];
        let mut m = 0usize;
        for e in 0..n_oriented {
            let r = uf.find(e);
            if id_of_root[r] == SENTINEL {
                let rt = uf.find(e ^ 1);
                if rt == r {
                    return Err(Error::MalformedSurface(format!(
                        "vertex at edge {e} coincides with its sheet swap"
                    )));
                }
                id_of_root[r] = (2 * m) as i32;
                id_of_root[rt] = (2 * m + 1) as i32;
                m += 1;
            }
            vertex_of[e] = id_of_root[r];
        }
        let s = Self {
            num_edges,
            rows,
            sigma,
            sigma_inv,
            face_of,
            vertex_of,
            num_faces,
            num_vertices: m,
        };
        s.check_conjugation()?;
        Ok(s)
    }

    /// Rebuilds a surface from a full `σ` table and face membership flags.
    pub(crate) fn from_sigma(num_edges: usize, sigma: &[i32], member: &[bool]) -> Result<Self> {
        let n = 4 * num_edges;
        debug_assert_eq!(sigma.len(), n);
        let mut sigma_inv = vec![SENTINEL; n];
        for (e, &s) in sigma.iter().enumerate() {
            if s >= 0 {
                if !member[e] || !member[s as usize] {
                    return Err(Error::MalformedSurface(format!("σ({e}) = {s} links a non-face edge")));
                }
                if sigma_inv[s as usize] != SENTINEL {
                    return Err(Error::MalformedSurface(format!("σ is not injective at {s}")));
                }
                sigma_inv[s as usize] = e as i32;
            }
        }
        let mut visited = vec![false; n];
        let mut rows = Vec::new();
        for e in 0..n {
            if !member[e] || visited[e] {
                continue;
            }
            let mut head = e as i32;
            loop {
                let p = sigma_inv[head as usize];
                if p == SENTINEL || p == e as i32 {
                    break;
                }
                head = p;
            }
            let cyclic = sigma_inv[head as usize] != SENTINEL;
            let mut row = Vec::new();
            let mut x = head;
            loop {
                row.push(x);
                visited[x as usize] = true;
                visited[(x ^ 3) as usize] = true;
                let nx = sigma[x as usize];
                if nx == SENTINEL {
                    row.push(SENTINEL);
                    break;
                }
                if nx == head {
                    break;
                }
                if visited[nx as usize] && !cyclic {
                    return Err(Error::MalformedSurface(format!("σ chain through {nx} revisits an edge")));
                }
                x = nx;
            }
            rows.push(row);
        }
        let mut out = Self::build_from_face_boundaries(&rows)?;
        if out.num_edges < num_edges {
            return Err(Error::MalformedSurface("trailing edges are not part of any face".into()));
        }
        if out.sigma != sigma {
            return Err(Error::MalformedSurface("σ violates the τ conjugation law".into()));
        }
        out.num_edges = num_edges;
        Ok(out)
    }

    fn check_conjugation(&self) -> Result<()> {
        for x in 0..self.sigma.len() as i32 {
            let lhs = self.sigma[(x ^ 1) as usize];
            let p = self.sigma_inv[(x ^ 2) as usize];
            let rhs = if p == SENTINEL { SENTINEL } else { p ^ 3 };
            if lhs != rhs {
                return Err(Error::MalformedSurface(format!("τ conjugation law fails at edge {x}")));
            }
        }
        Ok(())
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_faces(&self) -> usize {
        self.num_faces
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Number of oriented edges of the double cover, `4·num_edges`.
    pub fn num_oriented_edges(&self) -> usize {
        4 * self.num_edges
    }

    pub fn rows(&self) -> &[Vec<i32>] {
        &self.rows
    }

    pub fn sigma(&self) -> &[i32] {
        &self.sigma
    }

    pub fn sigma_inv(&self) -> &[i32] {
        &self.sigma_inv
    }

    pub fn face_table(&self) -> &[i32] {
        &self.face_of
    }

    pub fn vertex_table(&self) -> &[i32] {
        &self.vertex_of
    }

    /// `|F| - |E| + |V|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_faces as i64 - self.num_edges as i64 + self.num_vertices as i64
    }

    /// True when `σ` is total, i.e. there are no boundary faces.
    pub fn is_closed(&self) -> bool {
        self.sigma.iter().all(|&s| s != SENTINEL)
    }

    fn check_edge(&self, e: i32) -> Result<usize> {
        if e < 0 || e as usize >= self.sigma.len() {
            return Err(Error::OutOfRange { index: e as i64, limit: self.sigma.len() });
        }
        Ok(e as usize)
    }

    #[inline]
    fn at(table: &[i32], e: i32) -> i32 {
        if e < 0 {
            SENTINEL
        } else {
            table[e as usize]
        }
    }

    /// `σ(e)`, or [`SENTINEL`].
    pub fn next_left(&self, e: i32) -> i32 {
        Self::at(&self.sigma, e)
    }

    /// `σ⁻¹(e)`, or [`SENTINEL`].
    pub fn prev_left(&self, e: i32) -> i32 {
        Self::at(&self.sigma_inv, e)
    }

    /// `ισ⁻¹ι(e)`, or [`SENTINEL`].
    pub fn next_right(&self, e: i32) -> i32 {
        let p = Self::at(&self.sigma_inv, iota_checked(e));
        iota_checked(p)
    }

    /// `ισι(e)`, or [`SENTINEL`].
    pub fn prev_right(&self, e: i32) -> i32 {
        let p = Self::at(&self.sigma, iota_checked(e));
        iota_checked(p)
    }

    pub fn left_face(&self, e: i32) -> i32 {
        Self::at(&self.face_of, e)
    }

    pub fn right_face(&self, e: i32) -> i32 {
        Self::at(&self.face_of, iota_checked(e))
    }

    pub fn initial_vertex(&self, e: i32) -> i32 {
        Self::at(&self.vertex_of, e)
    }

    pub fn terminal_vertex(&self, e: i32) -> i32 {
        Self::at(&self.vertex_of, iota_checked(e))
    }

    /// Checked navigation.
    pub fn navigate(&self, query: Query, e: i32) -> Result<i32> {
        self.check_edge(e)?;
        Ok(match query {
            Query::NextLeft => self.next_left(e),
            Query::PrevLeft => self.prev_left(e),
            Query::NextRight => self.next_right(e),
            Query::PrevRight => self.prev_right(e),
            Query::LeftFace => self.left_face(e),
            Query::RightFace => self.right_face(e),
            Query::InitialVertex => self.initial_vertex(e),
            Query::TerminalVertex => self.terminal_vertex(e),
        })
    }

    /// Oriented edges of the double-cover face `f` in `σ` order, starting at the
    /// head of the chain (or the smallest edge of a cycle).
    pub fn face_boundary(&self, f: i32) -> Vec<i32> {
        let members: Vec<i32> = (0..self.face_of.len() as i32).filter(|&e| self.face_of[e as usize] == f).collect();
        let Some(&first) = members.first() else {
            return Vec::new();
        };
        let mut head = first;
        loop {
            let p = self.sigma_inv[head as usize];
            if p == SENTINEL || p == first {
                break;
            }
            head = p;
        }
        let mut out = Vec::with_capacity(members.len());
        let mut x = head;
        loop {
            out.push(x);
            let nx = self.sigma[x as usize];
            if nx == SENTINEL || nx == head {
                break;
            }
            x = nx;
        }
        if out.len() < members.len() {
            // a boundary face split into several chains
            for &e in &members {
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        out
    }

    /// Outgoing oriented edges at the double-cover vertex `v`, ordered by `ισ⁻¹`.
    pub fn vertex_star(&self, v: i32) -> Vec<i32> {
        let members: Vec<i32> =
            (0..self.vertex_of.len() as i32).filter(|&e| self.vertex_of[e as usize] == v).collect();
        let Some(&first) = members.first() else {
            return Vec::new();
        };
        let step_back = |e: i32| -> i32 {
            // inverse of ισ⁻¹ is σι
            self.sigma[(e ^ 2) as usize]
        };
        let mut head = first;
        loop {
            let p = step_back(head);
            if p == SENTINEL || p == first {
                break;
            }
            head = p;
        }
        let mut out = Vec::with_capacity(members.len());
        let mut x = head;
        loop {
            out.push(x);
            let p = self.sigma_inv[x as usize];
            if p == SENTINEL {
                break;
            }
            let nx = p ^ 2;
            if nx == head {
                break;
            }
            x = nx;
        }
        out
    }

    /// True when unoriented edge `k` has faces on both sides.
    pub fn is_interior_edge(&self, k: usize) -> bool {
        self.face_of[4 * k] != SENTINEL && self.face_of[4 * k + 2] != SENTINEL
    }

    /// Unoriented indices of interior edges in ascending order.
    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.num_edges).filter(|&k| self.is_interior_edge(k)).collect()
    }

    /// Unoriented faces on the two sides of edge `k` (`4k` side first).
    pub fn edge_faces(&self, k: usize) -> (i32, i32) {
        let l = self.face_of[4 * k];
        let r = self.face_of[4 * k + 2];
        (if l < 0 { l } else { l >> 1 }, if r < 0 { r } else { r >> 1 })
    }

    /// Unoriented end vertices of edge `k`.
    pub fn edge_vertices(&self, k: usize) -> (usize, usize) {
        ((self.vertex_of[4 * k] >> 1) as usize, (self.vertex_of[4 * k + 2] >> 1) as usize)
    }

    /// Degree of unoriented vertex `u`.
    pub fn vertex_degree(&self, u: usize) -> usize {
        self.vertex_of.iter().filter(|&&v| v == (2 * u) as i32).count()
    }

    pub fn to_file(&self, name: Option<String>) -> SurfaceFile {
        SurfaceFile { faces: self.rows.clone(), name }
    }

    pub fn from_file(file: &SurfaceFile) -> Result<Self> {
        Self::build_from_face_boundaries(&file.faces)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SurfaceFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedSurface(format!("invalid JSON: {e}")))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file(None)).expect("surface serializes")
    }
}

#[inline]
fn iota_checked(e: i32) -> i32 {
    if e < 0 {
        SENTINEL
    } else {
        e ^ 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_counts() {
        let c = cube();
        assert_eq!((c.num_faces(), c.num_edges(), c.num_vertices()), (6, 12, 8));
        assert!(c.is_closed());
        assert_eq!(c.next_left(0), 4);
        assert_eq!(c.right_face(0), 2);
    }

    #[test]
    fn disc_tables() {
        let d = CellularSurface::build_from_face_boundaries(&[vec![0, 4, 8]]).unwrap();
        let left: Vec<i32> = (0..12).map(|e| d.left_face(e)).collect();
        let right: Vec<i32> = (0..12).map(|e| d.right_face(e)).collect();
        assert_eq!(left, vec![0, -1, -1, 1, 0, -1, -1, 1, 0, -1, -1, 1]);
        assert_eq!(right, vec![-1, 1, 0, -1, -1, 1, 0, -1, -1, 1, 0, -1]);
        assert_eq!((d.num_faces(), d.num_edges(), d.num_vertices()), (1, 3, 3));
    }

    #[test]
    fn empty_surface() {
        let e = CellularSurface::empty();
        assert_eq!((e.num_faces(), e.num_edges(), e.num_vertices()), (0, 0, 0));
    }

    #[test]
    fn projectivized_cube_counts() {
        let p = projectivized_cube();
        assert_eq!((p.num_faces(), p.num_edges(), p.num_vertices()), (3, 6, 4));
        assert_eq!(p.euler_characteristic(), 1);
    }

    #[test]
    fn cube_with_boundary_face() {
        let rows = vec![vec![0, 4, 8, 12], vec![2, 16, -1, 22], vec![6, 20, -1, 26], vec![10, 24, -1, 30], vec![
            14, 28, -1, 18,
        ]];
        let s = CellularSurface::build_from_face_boundaries(&rows).unwrap();
        assert_eq!((s.num_faces(), s.num_edges(), s.num_vertices()), (5, 8, 8));
        for e in [16, 20, 24, 28, 17, 21, 25, 29] {
            assert_eq!(s.next_left(e), SENTINEL, "edge {e}");
        }
        assert!(!s.is_closed());
    }

    #[test]
    fn build_errors() {
        let dup = CellularSurface::build_from_face_boundaries(&[vec![0, 4, 8], vec![0, 6]]);
        assert!(matches!(dup, Err(Error::MalformedSurface(m)) if m.contains("duplicate")));
        let parity = CellularSurface::build_from_face_boundaries(&[vec![0, 4, 8], vec![3, 6]]);
        assert!(matches!(parity, Err(Error::MalformedSurface(m)) if m.contains("parity")));
        let neg = CellularSurface::build_from_face_boundaries(&[vec![0, -2]]);
        assert!(matches!(neg, Err(Error::MalformedSurface(m)) if m.contains("parity")));
        let orphan = CellularSurface::build_from_face_boundaries(&[vec![0, 8]]);
        assert!(matches!(orphan, Err(Error::MalformedSurface(m)) if m.contains("orphan")));
    }

    #[test]
    fn navigate_checks_range() {
        let c = cube();
        assert!(c.navigate(Query::NextLeft, 48).is_err());
        assert!(c.navigate(Query::NextLeft, -1).is_err());
        assert_eq!(c.navigate(Query::NextRight, 0).unwrap(), c.next_right(0));
    }

    #[test]
    fn json_round_trip() {
        let c = cube();
        let back = CellularSurface::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.rows(), c.rows());
    }

    #[test]
    fn from_sigma_reproduces_sigma() {
        for s in [cube(), projectivized_cube(), quad_torus(2, 3)] {
            let member: Vec<bool> = s.face_table().iter().map(|&f| f != SENTINEL).collect();
            let t = CellularSurface::from_sigma(s.num_edges(), s.sigma(), &member).unwrap();
            assert_eq!(t.sigma(), s.sigma());
            assert_eq!(t.num_vertices(), s.num_vertices());
        }
    }

    #[test]
    fn vertex_star_is_orbit() {
        let c = cube();
        for v in 0..(2 * c.num_vertices()) as i32 {
            let star = c.vertex_star(v);
            assert_eq!(star.len(), 3);
            for &e in &star {
                assert_eq!(c.initial_vertex(e), v);
            }
        }
    }
}
