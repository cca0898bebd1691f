use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hilbert_lab::metric::{
    distance_by_quadrature, fundamental_tensor_fd, hilbert_distance, metric_data,
};
use hilbert_lab::spheres::{curvature_sweep, radius_grid, SphereFrame};
use hilbert_lab::suite::{parse_checks, sweep_csv};
use hilbert_lab::{normalize, parse_domain_config, run_suite, Error, Setup, SuiteOptions, Vec2};

#[derive(Parser)]
#[command(name = "hilbert-lab", version, about = "Hilbert geometry of planar convex domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a domain config and print its boundary statistics.
    Check { config: PathBuf },
    /// Hilbert distance between two points.
    Dist {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Fundamental tensor at a point and direction.
    Tensor {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Curvatures of circles about `o` over a radius grid, as CSV.
    Sweep {
        config: PathBuf,
        #[command(flatten)]
        radii: Radii,
        /// CSV file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Projective normalization at the distinguished boundary point, as JSON.
    Normalize {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        config: PathBuf,
        #[command(flatten)]
        radii: Radii,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Directory for report.txt, report.jsonl and sweep.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Radii {
    #[arg(long, default_value_t = 2.0)]
    r_min: f64,
    #[arg(long, default_value_t = 5.0)]
    r_max: f64,
    #[arg(long, default_value_t = 31)]
    steps: usize,
    /// Angle at `o` measured from the direction of the distinguished point.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi: f64,
}

impl Radii {
    fn options(&self) -> SuiteOptions {
        SuiteOptions {
            r_min: self.r_min,
            r_max: self.r_max,
            steps: self.steps,
            phi: self.phi,
            ..SuiteOptions::default()
        }
    }
}

fn load(path: &Path) -> Result<(hilbert_lab::DomainConfig, Setup), Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let config = parse_domain_config(&text)?;
    let setup = config.build()?;
    Ok((config, setup))
}

fn point(s: &str) -> Result<Vec2, Error> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("expected x,y, got '{s}'")))?;
    match v[..] {
        [x, y] if x.is_finite() && y.is_finite() => Ok(Vec2::new(x, y)),
        _ => Err(Error::InvalidInput(format!("expected x,y, got '{s}'"))),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Check { config } => {
            let (config, s) = load(&config)?;
            let st = s.domain.stats();
            println!("kind: {}", config.kind.name());
            println!("o: ({}, {})  phi_p: {}", s.o.x, s.o.y, s.phi_p);
            println!("radial function: min {} max {}", st.omega_min, st.omega_max);
            println!("curvature: min {} max {}", st.curvature_min, st.curvature_max);
            println!("ok");
        }
        Command::Dist { config, from, to } => {
            let (_, s) = load(&config)?;
            let (a, b) = (point(&from)?, point(&to)?);
            println!("distance: {:.17e}", hilbert_distance(&s.domain, a, b)?);
            println!("quadrature: {:.17e}", distance_by_quadrature(&s.domain, a, b)?);
        }
        Command::Tensor { config, x, y } => {
            let (_, s) = load(&config)?;
            let (x, y) = (point(&x)?, point(&y)?);
            let (f, fy, g) = metric_data(&s.domain, x, y)?;
            let fd = fundamental_tensor_fd(&s.domain, x, y)?;
            println!("F: {f:.17e}");
            println!("F_y: {:.17e} {:.17e}", fy.x, fy.y);
            println!("g11 g12 g22: {:.17e} {:.17e} {:.17e}", g.g11, g.g12, g.g22);
            println!("fd deviation: {:.3e}", g.relative_deviation(&fd));
        }
        Command::Sweep { config, radii, out } => {
            let (_, s) = load(&config)?;
            radii.options().validate()?;
            let frame = SphereFrame::new(&s.domain, s.o, s.phi_p)?;
            let grid = radius_grid(radii.r_min, radii.r_max, radii.steps);
            let table = curvature_sweep(&frame, &grid, radii.phi)?;
            emit(out.as_deref(), &sweep_csv(&table))?;
            if table.failures() > 0 {
                eprintln!("{} rows failed", table.failures());
                return Ok(1);
            }
        }
        Command::Normalize { config, out } => {
            let (_, s) = load(&config)?;
            let (_, _, report) = normalize(&s.domain, s.o, s.phi_p)?;
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::InvalidInput(e.to_string()))?;
            emit(out.as_deref(), &(json + "\n"))?;
        }
        Command::Verify {
            config,
            radii,
            seed,
            checks,
            out,
        } => {
            let (config, _) = load(&config)?;
            let checks = parse_checks(&checks)?;
            let options = SuiteOptions {
                seed,
                ..radii.options()
            };
            let result = run_suite(&config, &checks, &options, out.as_deref())?;
            print!("{}", result.report.render_text());
            return Ok(result.report.exit_code() as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
