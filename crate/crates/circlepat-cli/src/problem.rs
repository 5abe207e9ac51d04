//! Problem files: a surface, a geometry and broadcastable angle data.
//!
//! ```json
//! { "surface": "cube", "geometry": "spherical", "theta": "2pi/3", "phi": "2pi" }
//! ```
//!
//! `surface` is a library name or `{ "faces": [[...], ...] }` in the
//! winged-edge row format. `theta` and `phi` are a single angle or a list
//! with one entry per edge (per face). Angles are numbers or strings such
//! as `"pi/2"`, `"2pi/3"` or `"1.25"`.

use std::path::Path;

use circlepat::surface::{named, SurfaceFile, NAMED_SURFACES};
use circlepat::{CellularSurface, Geometry, Problem};
use serde::Deserialize;

use crate::CliError;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SurfaceSpec {
    Named(String),
    Rows(SurfaceFile),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Angle {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AngleData {
    One(Angle),
    Many(Vec<Angle>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub surface: SurfaceSpec,
    pub geometry: Option<Geometry>,
    pub theta: Option<AngleData>,
    pub phi: Option<AngleData>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
}

/// Values given on the command line; they take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub geometry: Option<Geometry>,
    pub theta: Option<String>,
    pub phi: Option<String>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
}

/// A loaded problem and the seed for random starts, if any.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub problem: Problem,
    pub seed: Option<u64>,
}

/// Parses `"pi"`, `"2pi/3"`, `"-pi/4"`, `"3*pi/2"` or a plain number.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Input(format!("cannot read {text:?} as an angle"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.to_string(), d.parse::<f64>().map_err(|_| bad())?),
        None => (s.clone(), 1.0),
    };
    let value = if let Some(coef) = num.strip_suffix("pi").or_else(|| num.strip_suffix('π')) {
        let coef = coef.trim_end_matches('*');
        let c = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| bad())?,
        };
        c * std::f64::consts::PI
    } else {
        num.parse::<f64>().map_err(|_| bad())?
    };
    let v = value / den;
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

fn angle_value(a: &Angle) -> Result<f64, CliError> {
    match a {
        Angle::Number(x) => Ok(*x),
        Angle::Text(s) => parse_angle(s),
    }
}

/// Expands scalar data to `n` entries and checks list lengths.
fn expand(data: &AngleData, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    match data {
        AngleData::One(a) => Ok(vec![angle_value(a)?; n]),
        AngleData::Many(list) => {
            if list.len() != n {
                return Err(CliError::Input(format!("{what} has {} entries, the surface needs {n}", list.len())));
            }
            list.iter().map(angle_value).collect()
        }
    }
}

/// Command-line angle data: one angle or a comma separated list.
fn override_data(text: &str) -> AngleData {
    let parts: Vec<Angle> = text.split(',').map(|p| Angle::Text(p.trim().to_string())).collect();
    if parts.len() == 1 {
        AngleData::One(parts.into_iter().next().unwrap())
    } else {
        AngleData::Many(parts)
    }
}

fn surface_from(source: &SurfaceSpec) -> Result<CellularSurface, CliError> {
    match source {
        SurfaceSpec::Named(name) => named(name).ok_or_else(|| {
            CliError::Input(format!("unknown surface {name:?}; known names: {}", NAMED_SURFACES.join(", ")))
        }),
        SurfaceSpec::Rows(file) => CellularSurface::from_file(file).map_err(|e| CliError::Input(e.to_string())),
    }
}

impl ProblemFile {
    pub fn build(&self, over: &Overrides) -> Result<Loaded, CliError> {
        let surface = surface_from(&self.surface)?;
        let geometry = over.geometry.or(self.geometry).ok_or_else(|| CliError::Input("no geometry given".into()))?;
        let theta = match (&over.theta, &self.theta) {
            (Some(t), _) => override_data(t),
            (None, Some(t)) => t.clone(),
            (None, None) => return Err(CliError::Input("no theta given".into())),
        };
        let phi = match (&over.phi, &self.phi) {
            (Some(p), _) => override_data(p),
            (None, Some(p)) => p.clone(),
            (None, None) => AngleData::One(Angle::Number(2.0 * std::f64::consts::PI)),
        };
        let theta = expand(&theta, surface.num_edges(), "theta")?;
        let phi = expand(&phi, surface.num_faces(), "phi")?;
        let tolerance = over.tolerance.or(self.tolerance).unwrap_or(DEFAULT_TOLERANCE);
        let problem = Problem::new(surface, geometry, theta, phi, tolerance).map_err(|e| CliError::Input(e.to_string()))?;
        Ok(Loaded { problem, seed: over.seed.or(self.seed) })
    }
}

/// Reads a problem from a JSON file. A bare library surface name is accepted
/// in place of a path; the angles then come from the overrides.
pub fn load(source: &str, over: &Overrides) -> Result<Loaded, CliError> {
    let file = if Path::new(source).exists() {
        let text = std::fs::read_to_string(source).map_err(|e| CliError::Input(format!("{source}: {e}")))?;
        serde_json::from_str::<ProblemFile>(&text).map_err(|e| CliError::Input(format!("{source}: {e}")))?
    } else if named(source).is_some() {
        ProblemFile { surface: SurfaceSpec::Named(source.into()), geometry: None, theta: None, phi: None, tolerance: None, seed: None }
    } else {
        return Err(CliError::Input(format!("{source}: no such file or library surface")));
    };
    file.build(over)
}
