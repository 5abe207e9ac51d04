//! Simple moves. Every move returns a new surface; the input is untouched.

use super::{CellularSurface, SENTINEL};
use crate::error::{Error, Result};

/// Local modifications of a cellular surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// Slide both ends of an oriented edge forward along its faces.
    SlideEdgeLeft,
    /// Inverse of [`Move::SlideEdgeLeft`].
    SlideEdgeRight,
    /// Double an edge, adding a digon face.
    SplitEdgeAlong,
    /// Subdivide an edge with a new vertex.
    SplitEdgeAcross,
    /// Collapse a non-loop edge, merging its end vertices.
    ContractEdge,
    /// Replace a vertex of degree `d` by a `d`-gon.
    TruncateVertex,
}

struct Editor {
    sigma: Vec<i32>,
    member: Vec<bool>,
}

impl Editor {
    fn new(s: &CellularSurface, extra_edges: usize) -> Self {
        let mut sigma = s.sigma.clone();
        let mut member: Vec<bool> = s.face_of.iter().map(|&f| f != SENTINEL).collect();
        sigma.resize(sigma.len() + 4 * extra_edges, SENTINEL);
        member.resize(member.len() + 4 * extra_edges, true);
        Self { sigma, member }
    }

    /// `σ(x) = y` together with the mirrored `σ(τιy) = τιx`.
    fn set(&mut self, x: i32, y: i32) {
        self.sigma[x as usize] = y;
        self.sigma[(y ^ 3) as usize] = x ^ 3;
    }

    fn finish(self) -> Result<CellularSurface> {
        let num_edges = self.sigma.len() / 4;
        CellularSurface::from_sigma(num_edges, &self.sigma, &self.member)
            .map_err(|e| Error::InapplicableMove(format!("move produces an invalid surface: {e}")))
    }
}

fn inapplicable(msg: impl Into<String>) -> Error {
    Error::InapplicableMove(msg.into())
}

fn distinct(xs: &[i32]) -> bool {
    xs.iter().enumerate().all(|(i, a)| xs[i + 1..].iter().all(|b| a != b))
}

impl CellularSurface {
    /// Applies `mv` at `target` (an oriented edge, or a vertex for
    /// [`Move::TruncateVertex`]). Returns the new surface and, where the move
    /// creates one, the index of a new oriented edge.
    pub fn apply_move(&self, mv: Move, target: i32) -> Result<(Self, Option<i32>)> {
        match mv {
            Move::SlideEdgeLeft => self.slide_edge_left(target).map(|s| (s, None)),
            Move::SlideEdgeRight => self.slide_edge_right(target).map(|s| (s, None)),
            Move::SplitEdgeAlong => self.split_edge_along(target).map(|(s, n)| (s, Some(n))),
            Move::SplitEdgeAcross => self.split_edge_across(target).map(|(s, n)| (s, Some(n))),
            Move::ContractEdge => self.contract_edge(target).map(|s| (s, None)),
            Move::TruncateVertex => self.truncate_vertex(target).map(|(s, n)| (s, Some(n))),
        }
    }

    fn defined(&self, xs: &[i32]) -> bool {
        xs.iter().all(|&x| x != SENTINEL)
    }

    fn same_counts(&self, other: &Self) -> bool {
        (self.num_faces, self.num_edges, self.num_vertices) == (other.num_faces, other.num_edges, other.num_vertices)
    }

    pub fn slide_edge_left(&self, e: i32) -> Result<Self> {
        self.check_edge(e)?;
        let eb = e ^ 2;
        let (a, b, c, d) = (self.prev_left(e), self.next_left(e), self.prev_left(eb), self.next_left(eb));
        if !self.defined(&[a, b, c, d]) || !self.defined(&[self.next_left(b), self.next_left(d)]) {
            return Err(inapplicable(format!("slide of edge {e} needs both faces closed around it")));
        }
        let (l, r) = (self.left_face(e), self.left_face(eb));
        if l == r || l == (r ^ 1) || !distinct(&[a, b, c, d, e, eb]) {
            return Err(inapplicable(format!("degenerate slide of edge {e}")));
        }
        let (sb, sd) = (self.next_left(b), self.next_left(d));
        let mut ed = Editor::new(self, 0);
        ed.set(a, d);
        ed.set(d, e);
        ed.set(e, sb);
        ed.set(c, b);
        ed.set(b, eb);
        ed.set(eb, sd);
        let out = ed.finish()?;
        if !self.same_counts(&out) {
            return Err(inapplicable(format!("slide of edge {e} changes the cell counts")));
        }
        Ok(out)
    }

    pub fn slide_edge_right(&self, e: i32) -> Result<Self> {
        self.check_edge(e)?;
        let eb = e ^ 2;
        let (p, s) = (self.prev_left(e), self.prev_left(eb));
        let (q, t) = (self.prev_left(p), self.prev_left(s));
        let (r, u) = (self.next_left(e), self.next_left(eb));
        if !self.defined(&[p, q, r, s, t, u]) {
            return Err(inapplicable(format!("slide of edge {e} needs both faces closed around it")));
        }
        let (l, rf) = (self.left_face(e), self.left_face(eb));
        if l == rf || l == (rf ^ 1) || !distinct(&[p, q, s, t, e, eb]) {
            return Err(inapplicable(format!("degenerate slide of edge {e}")));
        }
        let mut ed = Editor::new(self, 0);
        ed.set(q, e);
        ed.set(e, s);
        ed.set(s, r);
        ed.set(t, eb);
        ed.set(eb, p);
        ed.set(p, u);
        let out = ed.finish()?;
        if !self.same_counts(&out) {
            return Err(inapplicable(format!("slide of edge {e} changes the cell counts")));
        }
        Ok(out)
    }

    pub fn split_edge_along(&self, e: i32) -> Result<(Self, i32)> {
        self.check_edge(e)?;
        let (a, b) = (self.prev_left(e), self.next_left(e));
        if !self.defined(&[a, b]) {
            return Err(inapplicable(format!("edge {e} has no closed left face")));
        }
        if a == e {
            return Err(inapplicable(format!("left face of edge {e} is a monogon")));
        }
        let n = self.sigma.len() as i32;
        let mut ed = Editor::new(self, 1);
        ed.set(a, n);
        ed.set(n, b);
        ed.set(e, n ^ 2);
        ed.set(n ^ 2, e);
        Ok((ed.finish()?, n))
    }

    pub fn split_edge_across(&self, e: i32) -> Result<(Self, i32)> {
        self.check_edge(e)?;
        let eb = e ^ 2;
        let (b, c) = (self.next_left(e), self.prev_left(eb));
        if !self.defined(&[b, c]) {
            return Err(inapplicable(format!("edge {e} needs faces on both sides")));
        }
        let n = self.sigma.len() as i32;
        let mut ed = Editor::new(self, 1);
        ed.set(e, n);
        ed.set(n, if b == eb { n ^ 2 } else { b });
        ed.set(n ^ 2, eb);
        ed.set(if c == e { n } else { c }, n ^ 2);
        Ok((ed.finish()?, n))
    }

    pub fn contract_edge(&self, e: i32) -> Result<Self> {
        self.check_edge(e)?;
        if self.initial_vertex(e) >> 1 == self.terminal_vertex(e) >> 1 {
            return Err(inapplicable(format!("edge {e} is a loop")));
        }
        let k = (e >> 2) as usize;
        let mut sigma = self.sigma.clone();
        let mut sigma_inv = self.sigma_inv.clone();
        for x in 4 * k..4 * k + 4 {
            let (p, s) = (sigma_inv[x], sigma[x]);
            if p == x as i32 {
                return Err(inapplicable(format!("contracting edge {e} removes a face")));
            }
            if p != SENTINEL {
                sigma[p as usize] = s;
            }
            if s != SENTINEL {
                sigma_inv[s as usize] = p;
            }
            sigma[x] = SENTINEL;
            sigma_inv[x] = SENTINEL;
        }
        let last = self.num_edges - 1;
        let shift = |y: i32| -> i32 {
            if y != SENTINEL && (y >> 2) as usize == last {
                4 * k as i32 + (y & 3)
            } else {
                y
            }
        };
        let mut member: Vec<bool> = self.face_of.iter().map(|&f| f != SENTINEL).collect();
        if k != last {
            for j in 0..4 {
                sigma[4 * k + j] = sigma[4 * last + j];
                member[4 * k + j] = member[4 * last + j];
            }
        }
        sigma.truncate(4 * last);
        member.truncate(4 * last);
        for y in sigma.iter_mut() {
            *y = shift(*y);
        }
        let out = Self::from_sigma(last, &sigma, &member)
            .map_err(|err| inapplicable(format!("contracting edge {e}: {err}")))?;
        if out.num_faces != self.num_faces {
            return Err(inapplicable(format!("contracting edge {e} changes the face count")));
        }
        Ok(out)
    }

    /// Cuts off the oriented vertex `v`, replacing it by a new face.
    /// Returns an oriented edge of the new face.
    pub fn truncate_vertex(&self, v: i32) -> Result<(Self, i32)> {
        if v < 0 || v as usize >= 2 * self.num_vertices {
            return Err(Error::OutOfRange { index: v as i64, limit: 2 * self.num_vertices });
        }
        let star = self.vertex_star(v);
        let d = star.len();
        let closed = star.iter().all(|&x| self.prev_left(x) != SENTINEL && self.next_left(x ^ 2) != SENTINEL);
        if !closed {
            return Err(inapplicable(format!("vertex {v} lies on the boundary")));
        }
        let base = self.sigma.len() as i32;
        let t = |i: usize| base + 4 * (i % d) as i32;
        let mut ed = Editor::new(self, d);
        for i in 0..d {
            let inc = star[(i + 1) % d] ^ 2;
            ed.set(inc, t(i));
            ed.set(t(i), star[i]);
            ed.set(t(i) ^ 2, t(i + 1) ^ 2);
        }
        Ok((ed.finish()?, t(0) ^ 2))
    }
}
