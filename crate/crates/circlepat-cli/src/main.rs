use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use circlepat::Geometry;
use circlepat_cli::{exit, execute, load, CliError, Command, Overrides, Style, View};
use clap::Parser;

/// Circle patterns with prescribed intersection angles.
///
/// Exit status: 0 ok, 1 failure (including a failed `verify`), 2 malformed
/// input, 3 infeasible, 4 no convergence.
#[derive(Debug, Parser)]
#[command(name = "circlepat", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// Problem file (JSON), or the name of a library surface.
    problem: String,

    #[arg(long)]
    geometry: Option<String>,

    /// Intersection angle for every edge, or a comma separated list.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,

    /// Cone angle for every face, or a comma separated list.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,

    /// Gradient tolerance of the solver [default: 1e-10].
    #[arg(long)]
    tolerance: Option<f64>,

    /// Seed for a random starting point; zeros otherwise.
    #[arg(long)]
    seed: Option<u64>,

    /// Drawing view for `render`. Spherical patterns default to stereographic.
    #[arg(long, value_enum)]
    view: Option<View>,

    /// Half-width of the largest window the plane view may use.
    #[arg(long, default_value_t = 10.0)]
    extent: f64,

    /// Output file; standard output otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(args: Args) -> Result<u8, CliError> {
    let geometry = match &args.geometry {
        Some(g) => Some(g.parse::<Geometry>().map_err(|e| CliError::Input(e.to_string()))?),
        None => None,
    };
    if let Some(t) = args.tolerance {
        if t.is_nan() || t <= 0.0 {
            return Err(CliError::Input(format!("tolerance must be positive, got {t}")));
        }
    }
    let over = Overrides { geometry, theta: args.theta, phi: args.phi, tolerance: args.tolerance, seed: args.seed };
    let loaded = load(&args.problem, &over)?;
    let s = loaded.problem.surface();
    eprintln!("Surface has {} faces, {} edges, and {} vertices", s.num_faces(), s.num_edges(), s.num_vertices());

    let view = args.view.unwrap_or(match loaded.problem.geometry() {
        Geometry::Spherical => View::Stereographic,
        _ => View::Plane,
    });
    let output = execute(args.command, &loaded, &Style { view, extent: args.extent })?;
    match &args.out {
        Some(path) => std::fs::write(path, &output.text)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.text.as_bytes())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
        }
    }
    if output.code != exit::OK {
        eprintln!("{} exited with status {}", format!("{:?}", args.command).to_lowercase(), output.code);
    }
    Ok(output.code)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
