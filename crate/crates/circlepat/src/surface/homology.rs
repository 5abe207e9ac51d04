//! Z₂-homology of cellular surfaces.

use std::collections::BTreeSet;

use super::{CellularSurface, UnionFind};
use crate::error::{Error, Result};

/// Betti numbers over Z₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Betti {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

/// A graph `Γ = (V₁, E₁)` in a surface, by unoriented indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Subcomplex {
    pub edges: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
}

/// Both sides of `r - |E₁| + |V₁| = |F| - |E| + |V| + Σ hⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralEulerReport {
    /// Number of regions `Γ` cuts the surface into.
    pub regions: usize,
    /// `Σ hⱼ` over the regions.
    pub region_h1: usize,
    pub lhs: i64,
    pub rhs: i64,
}

impl GeneralEulerReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Homology answer: Betti numbers and, when a graph was supplied, the
/// region report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub betti: Betti,
    pub general_euler: Option<GeneralEulerReport>,
}

/// Dense matrix over GF(2), rows packed in `u64` words.
struct BitMatrix {
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    fn new(nrows: usize, ncols: usize) -> Self {
        Self { rows: vec![vec![0; ncols.div_ceil(64)]; nrows] }
    }

    fn flip(&mut self, r: usize, c: usize) {
        self.rows[r][c / 64] ^= 1 << (c % 64);
    }

    fn rank(mut self) -> usize {
        let mut rank = 0;
        let words = self.rows.first().map_or(0, Vec::len);
        for col in 0..64 * words {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..self.rows.len()).find(|&r| self.rows[r][w] & bit != 0) else {
                continue;
            };
            self.rows.swap(rank, pivot);
            let pivot_row = self.rows[rank].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    row.iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
                }
            }
            rank += 1;
        }
        rank
    }
}

impl CellularSurface {
    /// Rank of the face-to-edge boundary map over Z₂.
    fn rank_d2(&self) -> usize {
        let mut m = BitMatrix::new(self.num_faces, self.num_edges);
        for (f, row) in self.rows.iter().enumerate() {
            for &e in row.iter().filter(|&&e| e >= 0) {
                m.flip(f, (e >> 2) as usize);
            }
        }
        m.rank()
    }

    /// Rank of the edge-to-vertex boundary map over Z₂.
    fn rank_d1(&self) -> usize {
        let mut m = BitMatrix::new(self.num_edges, self.num_vertices);
        for k in 0..self.num_edges {
            let (a, b) = self.edge_vertices(k);
            m.flip(k, a);
            m.flip(k, b);
        }
        m.rank()
    }

    /// Z₂-Betti numbers of a closed surface.
    pub fn betti(&self) -> Result<Betti> {
        if !self.is_closed() {
            return Err(Error::BoundaryPresent);
        }
        let (r1, r2) = (self.rank_d1(), self.rank_d2());
        Ok(Betti { h0: self.num_vertices - r1, h1: self.num_edges - r1 - r2, h2: self.num_faces - r2 })
    }

    /// Betti numbers, plus the region/handle report for `gamma` when given.
    pub fn homology(&self, gamma: Option<&Subcomplex>) -> Result<HomologyReport> {
        let betti = self.betti()?;
        let general_euler = gamma.map(|g| self.general_euler(g)).transpose()?;
        Ok(HomologyReport { betti, general_euler })
    }

    fn validate_subcomplex(&self, g: &Subcomplex) -> Result<()> {
        if g.vertices.is_empty() {
            return Err(Error::InvalidSubcomplex("graph has no vertices".into()));
        }
        if let Some(&v) = g.vertices.iter().find(|&&v| v >= self.num_vertices) {
            return Err(Error::InvalidSubcomplex(format!("vertex {v} out of range")));
        }
        for &k in &g.edges {
            if k >= self.num_edges {
                return Err(Error::InvalidSubcomplex(format!("edge {k} out of range")));
            }
            let (a, b) = self.edge_vertices(k);
            if !g.vertices.contains(&a) || !g.vertices.contains(&b) {
                return Err(Error::InvalidSubcomplex(format!("end vertex of edge {k} is missing")));
            }
        }
        Ok(())
    }

    /// Counts the regions of the complement of `gamma` and their first Betti
    /// numbers. The latter come from the dual complex spanned by all faces,
    /// the edges outside `gamma` and the vertices outside `gamma`.
    pub fn general_euler(&self, gamma: &Subcomplex) -> Result<GeneralEulerReport> {
        if !self.is_closed() {
            return Err(Error::BoundaryPresent);
        }
        self.validate_subcomplex(gamma)?;
        let free_edges: Vec<usize> = (0..self.num_edges).filter(|k| !gamma.edges.contains(k)).collect();
        let mut uf = UnionFind::new(self.num_faces);
        for &k in &free_edges {
            let (a, b) = self.edge_faces(k);
            uf.union(a as usize, b as usize);
        }
        let regions = (0..self.num_faces).filter(|&f| uf.find(f) == f).count();

        let column: Vec<Option<usize>> = {
            let mut c = vec![None; self.num_edges];
            for (i, &k) in free_edges.iter().enumerate() {
                c[k] = Some(i);
            }
            c
        };
        let mut d1 = BitMatrix::new(free_edges.len(), self.num_faces);
        for (i, &k) in free_edges.iter().enumerate() {
            let (a, b) = self.edge_faces(k);
            d1.flip(i, a as usize);
            d1.flip(i, b as usize);
        }
        let free_vertices: Vec<usize> = (0..self.num_vertices).filter(|v| !gamma.vertices.contains(v)).collect();
        let mut d2 = BitMatrix::new(free_vertices.len(), free_edges.len());
        for (i, &v) in free_vertices.iter().enumerate() {
            for e in self.vertex_star(2 * v as i32) {
                let c = column[(e >> 2) as usize].expect("edges at a free vertex are free");
                d2.flip(i, c);
            }
        }
        let region_h1 = free_edges.len() - d1.rank() - d2.rank();
        let lhs = regions as i64 - gamma.edges.len() as i64 + gamma.vertices.len() as i64;
        let rhs = self.euler_characteristic() + region_h1 as i64;
        Ok(GeneralEulerReport { regions, region_h1, lhs, rhs })
    }
}
