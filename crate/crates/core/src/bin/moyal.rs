use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use moyal::commands::{cmd_grid, cmd_orbit, cmd_star, cmd_sweep, cmd_verify};
use moyal::config::RunConfig;
use moyal::geometry::SkewForm;
use moyal::suites::Suite;

#[derive(Parser)]
#[command(name = "moyal", version, about = "Deformed products over Lorentz orbits")]
struct Cli {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report wall-clock time in summaries (makes them non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample orbit points of σ₀ and their invariants.
    Orbit {
        #[arg(short, long, default_value_t = 10)]
        n: usize,
    },
    /// Write a Gaussian grid file.
    Grid {
        name: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0")]
        center: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        width: f64,
        /// Record σ = 0 in the sidecar so products reduce to pointwise ones.
        #[arg(long)]
        zero_form: bool,
    },
    /// Deformed product of two grid files.
    Star {
        f: PathBuf,
        g: PathBuf,
        /// Cross-check against adaptive quadrature on a sub-lattice.
        #[arg(long)]
        oracle: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Semiclassical sweep over a decreasing θ list.
    Sweep {
        #[arg(long, value_delimiter = ',')]
        theta: Option<Vec<f64>>,
    },
}

fn load_config(cli: &Cli) -> moyal::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_json(&std::fs::read_to_string(p)?)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(o) = &cli.out {
        cfg.output_dir = o.clone();
    }
    Ok(cfg)
}

fn run(cli: Cli) -> moyal::Result<bool> {
    let cfg = load_config(&cli)?;
    match cli.command {
        Command::Orbit { n } => {
            println!("{}", cmd_orbit(&cfg, n)?.display());
        }
        Command::Grid { name, center, width, zero_form } => {
            let zero = SkewForm::zero(center.len());
            let sigma = zero_form.then_some(&zero);
            println!("{}", cmd_grid(&cfg, &name, &center, width, sigma)?.display());
        }
        Command::Star { f, g, oracle } => {
            let (summary, path) = cmd_star(&cfg, &f, &g, oracle, cli.timing)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            eprintln!("wrote {}", path.display());
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let start = std::time::Instant::now();
            let (report, path) = cmd_verify(&cfg, suite)?;
            for c in &report.checks {
                println!("{c}");
            }
            eprintln!("wrote {} in {:.1}s", path.display(), start.elapsed().as_secs_f64());
            return Ok(report.pass);
        }
        Command::Sweep { theta } => {
            let thetas = theta.unwrap_or_else(|| cfg.thetas.clone());
            let (table, path) = cmd_sweep(&cfg, &thetas)?;
            print!("{}", table.to_csv());
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
