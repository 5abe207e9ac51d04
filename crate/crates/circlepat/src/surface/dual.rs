//! Poincaré dual, medial decomposition and canonical forms.

use std::collections::VecDeque;

use super::{CellularSurface, SENTINEL};
use crate::error::{Error, Result};

/// Relabeling that turns `ι∘τ` into the sheet swap of the dual.
#[inline]
fn relabel(e: i32) -> i32 {
    e ^ ((e & 1) << 1)
}

impl CellularSurface {
    /// The Poincaré dual: faces and vertices swap roles, `σ* = ι∘σ⁻¹`.
    ///
    /// Oriented edge `n` of the dual corresponds to edge `n` of the input for
    /// even `n` and to its reversal for odd `n`.
    pub fn poincare_dual(&self) -> Result<Self> {
        if !self.is_closed() {
            return Err(Error::BoundaryPresent);
        }
        let n = self.sigma.len();
        let sigma: Vec<i32> = (0..n as i32)
            .map(|x| relabel(self.sigma_inv[relabel(x) as usize] ^ 2))
            .collect();
        Self::from_sigma(self.num_edges, &sigma, &vec![true; n])
    }

    /// The medial decomposition: one face per face and per vertex of the
    /// input, one 4-valent vertex per input edge.
    pub fn medial(&self) -> Result<Self> {
        if !self.is_closed() {
            return Err(Error::BoundaryPresent);
        }
        let n = self.sigma.len();
        // corner (x, σx) becomes a medial edge; its mirror corner is τισx
        let mut m = vec![SENTINEL; n];
        let mut next = 0i32;
        for x in 0..n {
            if m[x] != SENTINEL {
                continue;
            }
            let partner = (self.sigma[x] ^ 3) as usize;
            m[x] = 4 * next;
            m[partner] = 4 * next + 3;
            next += 1;
        }
        let mut sigma = vec![SENTINEL; 2 * n];
        for x in 0..n {
            let sx = self.sigma[x] as usize;
            sigma[m[x] as usize] = m[sx];
            let back = (self.sigma_inv[x ^ 2]) as usize;
            sigma[(m[x] ^ 2) as usize] = m[back] ^ 2;
        }
        Self::from_sigma(next as usize, &sigma, &vec![true; 2 * n])
    }
}

/// Relabeling-invariant code of a surface, one entry per connected component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<Vec<i32>>);

fn code_from(s: &CellularSurface, start: usize, label: &mut [i32], order: &mut Vec<usize>) -> Vec<i32> {
    label.fill(SENTINEL);
    order.clear();
    label[start] = 0;
    order.push(start);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let xi = x as i32;
        for y in [s.sigma[x], s.sigma_inv[x], xi ^ 2, xi ^ 1] {
            if y != SENTINEL && label[y as usize] == SENTINEL {
                label[y as usize] = order.len() as i32;
                order.push(y as usize);
                queue.push_back(y as usize);
            }
        }
    }
    let lab = |y: i32| if y == SENTINEL { SENTINEL } else { label[y as usize] };
    let mut code = Vec::with_capacity(3 * order.len());
    for &x in order.iter() {
        code.push(lab(s.sigma[x]));
        code.push(lab(x as i32 ^ 2));
        code.push(lab(x as i32 ^ 1));
    }
    code
}

/// Breadth-first relabeling code, minimized over all start edges of each
/// component, with components sorted.
pub fn canonical_form(s: &CellularSurface) -> CanonicalForm {
    let n = s.sigma.len();
    let mut label = vec![SENTINEL; n];
    let mut order = Vec::new();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        code_from(s, root, &mut label, &mut order);
        let members = order.clone();
        for &x in &members {
            seen[x] = true;
        }
        let best = members
            .iter()
            .map(|&x| code_from(s, x, &mut label, &mut order))
            .min()
            .unwrap_or_default();
        components.push(best);
    }
    components.sort();
    CanonicalForm(components)
}

/// True when the two surfaces agree up to relabeling of oriented edges.
pub fn is_isomorphic(a: &CellularSurface, b: &CellularSurface) -> bool {
    a.num_edges == b.num_edges
        && a.num_faces == b.num_faces
        && a.num_vertices == b.num_vertices
        && canonical_form(a) == canonical_form(b)
}
