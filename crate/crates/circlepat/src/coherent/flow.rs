//! Feasible-flow test for the existence of a coherent angle system.
//!
//! Nodes are the faces, the interior edges and a hub `⊠`. Each oriented
//! interior edge contributes one branch from its left face to its edge; a
//! branch's flow is the half-angle at that side. Lower bounds are removed by
//! the usual reduction and the remaining transport problem is solved with
//! Edmonds–Karp, scanning arcs in insertion order.

use std::collections::VecDeque;

use serde::Serialize;

use super::AngleSystem;
use crate::energy::{Geometry, PatternProblem};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Certificate attached to a [`FeasibilityReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness<T> {
    /// A feasible flow, one value per network branch.
    Flow {
        /// `⊠ → f`, per face.
        hub_to_face: Vec<T>,
        /// `f → e`, in [`AngleSystem`] order.
        face_to_edge: AngleSystem<T>,
        /// `e → ⊠`, per interior edge position.
        edge_to_hub: Vec<T>,
    },
    /// A face subset `F′` violating the solvability inequality.
    Subset {
        faces: Vec<usize>,
        /// Unoriented interior edges incident to `F′`.
        edges: Vec<usize>,
        /// `Σ_{F′} Φ`.
        phi_sum: T,
        /// `Σ_{E′} 2(π - θ)`.
        theta_sum: T,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport<T> {
    pub geometry: Geometry,
    pub feasible: bool,
    /// Lower bound used on face-to-edge branches.
    pub epsilon: T,
    /// Set when the network is infeasible at `epsilon` but feasible with a
    /// zero lower bound, so the answer depends on `epsilon`.
    pub undetermined: bool,
    pub witness: Witness<T>,
}

impl<T: Scalar> FeasibilityReport<T> {
    /// Largest node imbalance of a flow witness for `problem`; `None` for
    /// subset witnesses.
    pub fn kirchhoff_residual(&self, problem: &PatternProblem<T>) -> Option<T> {
        let Witness::Flow { hub_to_face, face_to_edge, edge_to_hub } = &self.witness else {
            return None;
        };
        let mut face_out = vec![T::zero(); hub_to_face.len()];
        let mut edge_in = vec![T::zero(); edge_to_hub.len()];
        for (i, e) in problem.interior().iter().enumerate() {
            let (a, b) = face_to_edge.pair(i);
            face_out[e.left] = face_out[e.left] + a;
            face_out[e.right] = face_out[e.right] + b;
            edge_in[i] = edge_in[i] + a + b;
        }
        let mut worst = T::zero();
        for (&x, &y) in hub_to_face.iter().zip(&face_out) {
            worst = worst.max((x - y).abs());
        }
        for (&x, &y) in edge_to_hub.iter().zip(&edge_in) {
            worst = worst.max((x - y).abs());
        }
        let hub_in = edge_to_hub.iter().fold(T::zero(), |s, &x| s + x);
        let hub_out = hub_to_face.iter().fold(T::zero(), |s, &x| s + x);
        Some(worst.max((hub_in - hub_out).abs()))
    }
}

/// Slack `Σ_{E′} 2θ* - Σ_{F′} Φ` of a face subset together with `E′`.
fn subset_sums<T: Scalar>(problem: &PatternProblem<T>, in_subset: &[bool]) -> (Vec<usize>, T, T) {
    let two = T::lit(2.0);
    let mut edges = Vec::new();
    let mut theta_sum = T::zero();
    for e in problem.interior() {
        if in_subset[e.left] || in_subset[e.right] {
            edges.push(e.edge);
            theta_sum = theta_sum + two * (T::PI() - problem.theta()[e.edge]);
        }
    }
    let phi_sum = problem
        .phi()
        .iter()
        .zip(in_subset)
        .filter(|(_, &b)| b)
        .fold(T::zero(), |s, (&p, _)| s + p);
    (edges, phi_sum, theta_sum)
}

fn subset_witness<T: Scalar>(problem: &PatternProblem<T>, in_subset: &[bool]) -> Witness<T> {
    let (edges, phi_sum, theta_sum) = subset_sums(problem, in_subset);
    let faces = (0..in_subset.len()).filter(|&f| in_subset[f]).collect();
    Witness::Subset { faces, edges, phi_sum, theta_sum }
}

/// Whether `F′` violates the inequality, with the equality at `F′ = F`
/// required in the euclidean case and excluded in the hyperbolic case.
fn violates<T: Scalar>(problem: &PatternProblem<T>, in_subset: &[bool]) -> bool {
    let count = in_subset.iter().filter(|&&b| b).count();
    if count == 0 {
        return false;
    }
    let (_, phi_sum, theta_sum) = subset_sums(problem, in_subset);
    let slack = theta_sum - phi_sum;
    let tol = problem.tolerance();
    if problem.geometry() == Geometry::Euclidean && count == in_subset.len() {
        slack.abs() > tol
    } else {
        slack <= tol
    }
}

struct Arc<T> {
    to: usize,
    cap: T,
}

/// Residual network with paired arcs `2j`, `2j+1`.
struct Network<T> {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc<T>>,
}

impl<T: Scalar> Network<T> {
    fn new(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n], arcs: Vec::new() }
    }

    fn add(&mut self, from: usize, to: usize, cap: T) -> usize {
        let j = self.arcs.len();
        self.adj[from].push(j);
        self.adj[to].push(j + 1);
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: T::zero() });
        j
    }

    fn flow(&self, j: usize) -> T {
        self.arcs[j + 1].cap
    }

    /// Edmonds–Karp. Residuals at or below `floor` count as saturated.
    fn max_flow(&mut self, s: usize, t: usize, floor: T) -> T {
        let mut total = T::zero();
        let mut pred = vec![usize::MAX; self.adj.len()];
        loop {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                for &j in &self.adj[u] {
                    let v = self.arcs[j].to;
                    if !seen[v] && self.arcs[j].cap > floor {
                        seen[v] = true;
                        pred[v] = j;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = T::infinity();
            let mut v = t;
            while v != s {
                let j = pred[v];
                push = push.min(self.arcs[j].cap);
                v = self.arcs[j ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let j = pred[v];
                self.arcs[j].cap = self.arcs[j].cap - push;
                self.arcs[j ^ 1].cap = self.arcs[j ^ 1].cap + push;
                v = self.arcs[j ^ 1].to;
            }
            total = total + push;
        }
    }

    fn reachable(&self, s: usize, floor: T) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &j in &self.adj[u] {
                let v = self.arcs[j].to;
                if !seen[v] && self.arcs[j].cap > floor {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

enum Outcome<T> {
    Flow(Witness<T>),
    /// Faces on the source side of a minimum cut.
    Cut(Vec<bool>),
}

/// Solves the reduced transport problem with lower bound `eps`.
fn run<T: Scalar>(problem: &PatternProblem<T>, eps: T) -> Outcome<T> {
    let nf = problem.num_faces();
    let interior = problem.interior();
    let half = T::lit(0.5);
    let mut degree = vec![0usize; nf];
    for e in interior {
        degree[e.left] += 1;
        degree[e.right] += 1;
    }
    let supply: Vec<T> = (0..nf).map(|f| half * problem.phi()[f] - eps * T::from_count(degree[f])).collect();
    let margin = match problem.geometry() {
        Geometry::Hyperbolic => eps,
        _ => T::zero(),
    };
    let capacity: Vec<T> = interior
        .iter()
        .map(|e| T::PI() - problem.theta()[e.edge] - margin - eps - eps)
        .collect();
    if let Some(f) = supply.iter().position(|&x| x < T::zero()) {
        let mut cut = vec![false; nf];
        cut[f] = true;
        return Outcome::Cut(cut);
    }
    if let Some(i) = capacity.iter().position(|&x| x < T::zero()) {
        let mut cut = vec![false; nf];
        cut[interior[i].left] = true;
        cut[interior[i].right] = true;
        return Outcome::Cut(cut);
    }
    let total = supply.iter().fold(T::zero(), |s, &x| s + x);
    let big = total + T::one();
    let (s, t) = (0, nf + interior.len() + 1);
    let mut net = Network::new(t + 1);
    let source_arcs: Vec<usize> = (0..nf).map(|f| net.add(s, 1 + f, supply[f])).collect();
    let mut branch_arcs = Vec::with_capacity(2 * interior.len());
    for (i, e) in interior.iter().enumerate() {
        branch_arcs.push(net.add(1 + e.left, 1 + nf + i, big));
        branch_arcs.push(net.add(1 + e.right, 1 + nf + i, big));
    }
    for (i, &c) in capacity.iter().enumerate() {
        net.add(1 + nf + i, t, c);
    }
    let floor = T::lit(1e-14) * big;
    let value = net.max_flow(s, t, floor);
    if total - value > T::lit(1e-12) * big {
        let seen = net.reachable(s, floor);
        return Outcome::Cut(seen[1..=nf].to_vec());
    }
    let phi: Vec<T> = branch_arcs.iter().map(|&j| eps + net.flow(j)).collect();
    let edge_to_hub = (0..interior.len()).map(|i| phi[2 * i] + phi[2 * i + 1]).collect();
    let hub_to_face = source_arcs
        .iter()
        .enumerate()
        .map(|(f, &j)| net.flow(j) + eps * T::from_count(degree[f]))
        .collect();
    Outcome::Flow(Witness::Flow { hub_to_face, face_to_edge: AngleSystem::new(phi), edge_to_hub })
}

/// Decides whether a coherent angle system exists for a euclidean or
/// hyperbolic problem.
///
/// Subsets whose slack is within the problem tolerance of zero are treated as
/// violating strictness. The lower bound is
/// `ε = min(1e-9, s / (4|E| + 4))`, where `s` is the global slack for
/// hyperbolic problems and the smallest slack of `F ∖ {f}` for euclidean ones.
pub fn feasibility<T: Scalar>(problem: &PatternProblem<T>) -> Result<FeasibilityReport<T>> {
    let geometry = problem.geometry();
    if geometry == Geometry::Spherical {
        return Err(Error::InvalidProblem("the flow test applies to euclidean and hyperbolic problems".into()));
    }
    let nf = problem.num_faces();
    let infeasible = |mask: Vec<bool>, epsilon: T| FeasibilityReport {
        geometry,
        feasible: false,
        epsilon,
        undetermined: false,
        witness: subset_witness(problem, &mask),
    };
    let all = vec![true; nf];
    if nf == 0 {
        return Err(Error::InvalidProblem("surface has no faces".into()));
    }
    if violates(problem, &all) {
        return Ok(infeasible(all, T::zero()));
    }
    let slack = |mask: &[bool]| {
        let (_, p, t) = subset_sums(problem, mask);
        t - p
    };
    let s = match geometry {
        Geometry::Hyperbolic => slack(&all),
        _ => {
            let mut best = T::infinity();
            for f in 0..nf {
                if nf == 1 {
                    break;
                }
                let mut mask = all.clone();
                mask[f] = false;
                if violates(problem, &mask) {
                    return Ok(infeasible(mask, T::zero()));
                }
                best = best.min(slack(&mask));
            }
            best
        }
    };
    let edges = T::from_count(4 * problem.surface().num_edges() + 4);
    let epsilon = T::lit(1e-9).min(s / edges);
    match run(problem, epsilon) {
        Outcome::Flow(witness) => Ok(FeasibilityReport { geometry, feasible: true, epsilon, undetermined: false, witness }),
        Outcome::Cut(cut) => {
            let complement: Vec<bool> = cut.iter().map(|&b| !b).collect();
            let mask = [cut.clone(), complement]
                .into_iter()
                .find(|m| violates(problem, m))
                .unwrap_or(cut);
            let undetermined = matches!(run(problem, T::zero()), Outcome::Flow(_));
            Ok(FeasibilityReport { undetermined, ..infeasible(mask, epsilon) })
        }
    }
}
