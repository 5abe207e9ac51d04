//! Pipeline behind the `circlepat` binary: load a problem, decide
//! feasibility, solve, lay out, verify and render.

pub mod problem;
pub mod render;
pub mod verify;

use circlepat::coherent::feasibility;
use circlepat::layout::{layout_pattern_with, LayoutOptions};
use circlepat::solver::{minimize, solve_spherical};
use circlepat::{Geometry, Layout, Problem, Solution, SolveStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

pub use problem::{load, Loaded, Overrides};
pub use render::{render_svg, Style, View};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Library(#[from] circlepat::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => exit::MALFORMED,
            _ => exit::FAILED,
        }
    }
}

pub mod exit {
    pub const OK: u8 = 0;
    /// Runtime failure, or `verify` found a violated invariant.
    pub const FAILED: u8 = 1;
    pub const MALFORMED: u8 = 2;
    pub const INFEASIBLE: u8 = 3;
    pub const NOT_CONVERGED: u8 = 4;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Decide solvability by the network flow test.
    Check,
    /// Minimize the functional and print the solver result.
    Solve,
    /// Solve and print the developed circles.
    Layout,
    /// Solve, lay out and check the result independently.
    Verify,
    /// Solve, lay out and draw an SVG.
    Render,
}

/// Text to emit and the exit status that goes with it.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn json(value: &impl serde::Serialize, code: u8) -> Self {
        let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
        text.push('\n');
        Output { text, code }
    }
}

/// Starting point: zeros, or uniform on `[-1, 0]` when a seed is given.
pub fn start_point(n: usize, seed: Option<u64>) -> Vec<f64> {
    match seed {
        None => vec![0.0; n],
        Some(s) => {
            let mut r = ChaCha8Rng::seed_from_u64(s);
            (0..n).map(|_| r.gen_range(-1.0..0.0)).collect()
        }
    }
}

/// Runs the flow test where it applies; `Err` carries the infeasibility
/// report to print.
fn precheck(p: &Problem) -> Result<(), Output> {
    if p.geometry() == Geometry::Spherical {
        return Ok(());
    }
    match feasibility(p) {
        Ok(report) if !report.feasible && !report.undetermined => Err(Output::json(&report, exit::INFEASIBLE)),
        _ => Ok(()),
    }
}

fn solve(loaded: &Loaded) -> Result<Result<Solution, Output>, CliError> {
    let p = &loaded.problem;
    if let Err(out) = precheck(p) {
        return Ok(Err(out));
    }
    let rho0 = start_point(p.num_faces(), loaded.seed);
    let sol = match p.geometry() {
        Geometry::Spherical => solve_spherical(p, &rho0)?,
        _ => minimize(p, &rho0)?,
    };
    Ok(match sol.status {
        SolveStatus::Converged => Ok(sol),
        SolveStatus::InfeasibleDetected => Err(Output::json(&sol, exit::INFEASIBLE)),
        _ => Err(Output::json(&sol, exit::NOT_CONVERGED)),
    })
}

fn develop(p: &Problem, sol: &Solution) -> Result<Layout, CliError> {
    let options = LayoutOptions { residual_tolerance: LayoutOptions::default().residual_tolerance.max(10.0 * p.tolerance()) };
    Ok(layout_pattern_with(p, &sol.rho, &options)?)
}

fn pair(p: &Option<circlepat::Point>) -> Value {
    match p {
        Some(p) => json!([p.z1.re, p.z1.im, p.z2.re, p.z2.im]),
        None => Value::Null,
    }
}

/// Layout in the documented exchange format. Points are homogeneous pairs
/// `[re z₁, im z₁, re z₂, im z₂]`, circles `[h₁₁, re h₁₂, im h₁₂, h₂₂]`.
pub fn layout_json(layout: &Layout) -> Value {
    json!({
        "centers": layout.centers.iter().map(pair).collect::<Vec<_>>(),
        "vertices": layout.vertices.iter().map(pair).collect::<Vec<_>>(),
        "circles": layout
            .circles
            .iter()
            .map(|c| match c {
                Some(h) => json!([h.h11, h.h12.re, h.h12.im, h.h22]),
                None => Value::Null,
            })
            .collect::<Vec<_>>(),
        "holonomy_residual": layout.holonomy_residual,
    })
}

pub fn execute(command: Command, loaded: &Loaded, style: &Style) -> Result<Output, CliError> {
    let p = &loaded.problem;
    if command == Command::Check {
        let report = feasibility(p)?;
        let code = if report.feasible { exit::OK } else { exit::INFEASIBLE };
        return Ok(Output::json(&report, code));
    }
    let sol = match solve(loaded)? {
        Ok(sol) => sol,
        Err(out) => return Ok(out),
    };
    if command == Command::Solve {
        return Ok(Output::json(&sol, exit::OK));
    }
    let layout = develop(p, &sol)?;
    match command {
        Command::Layout => Ok(Output::json(&layout_json(&layout), exit::OK)),
        Command::Verify => {
            let report = verify::verify(p, &sol.rho, &layout)?;
            let code = if report.pass { exit::OK } else { exit::FAILED };
            Ok(Output::json(&report, code))
        }
        Command::Render => Ok(Output { text: render_svg(&layout, style)?, code: exit::OK }),
        Command::Check | Command::Solve => unreachable!(),
    }
}
