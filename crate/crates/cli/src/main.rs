use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperfront::experiment::{
    self, read_frames, write_csv, write_frames, write_state, EstimateRow, ExperimentConfig, TableKind,
};
use hyperfront::{Error, Result};

#[derive(Parser)]
#[command(name = "hyperfront", version, about = "Front speeds for hyperbolic bistable reaction-diffusion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// TOML file with flat `key = value` settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    tau: Option<f64>,
    #[arg(long, global = true)]
    sigma: Option<f64>,
    #[arg(long, global = true)]
    a: Option<f64>,
    /// Cubic reaction strength.
    #[arg(long, global = true)]
    kappa: Option<f64>,
    /// Piecewise affine reaction slope.
    #[arg(long, global = true)]
    m: Option<f64>,
    /// Comma-separated schemes: first-order, lienard, kinetic.
    #[arg(long, global = true)]
    scheme: Option<String>,
    #[arg(long, global = true)]
    dx: Option<f64>,
    #[arg(long, global = true)]
    dt: Option<f64>,
    #[arg(long = "L", global = true)]
    length: Option<f64>,
    #[arg(long = "T", global = true)]
    horizon: Option<f64>,
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// Any other configuration key, as KEY=VALUE.
    #[arg(long = "set", global = true, value_parser = parse_pair)]
    set: Vec<(String, String)>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form speeds over the α-grid.
    Exact,
    /// Phase-plane shooting over the α-grid.
    Shoot,
    /// Riemann run; writes the final profile, and every frame with --frames.
    Simulate {
        #[arg(long)]
        frames: Option<PathBuf>,
    },
    /// Scout&spot and LeVeque–Yee speeds from a frames file.
    Estimate {
        #[arg(long)]
        frames: PathBuf,
    },
    /// Error table for one reference experiment.
    Table {
        #[arg(long, value_parser = parse_table)]
        which: TableKind,
    },
    /// Speed curves against α, or shooter error against du.
    Sweep {
        #[arg(long, value_enum, default_value_t = SweepKind::Speeds)]
        kind: SweepKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Speeds,
    Order,
}

fn parse_pair(raw: &str) -> std::result::Result<(String, String), String> {
    raw.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected KEY=VALUE, got `{raw}`"))
}

fn parse_table(raw: &str) -> std::result::Result<TableKind, String> {
    raw.parse().map_err(|e: Error| e.to_string())
}

impl Common {
    fn overrides(&self) -> Vec<(String, String)> {
        let mut pairs = Vec::new();
        let numeric = [
            ("alpha", self.alpha),
            ("tau", self.tau),
            ("sigma", self.sigma),
            ("a", self.a),
            ("strength", self.kappa),
            ("strength", self.m),
            ("dx", self.dx),
            ("dt", self.dt),
            ("L", self.length),
            ("T", self.horizon),
            ("theta", self.theta),
        ];
        for (key, value) in numeric {
            if let Some(v) = value {
                pairs.push((key.to_string(), format!("{v:?}")));
            }
        }
        if self.m.is_some() && self.kappa.is_none() {
            pairs.push(("family".into(), "\"pwl\"".into()));
        }
        if let Some(list) = &self.scheme {
            let quoted: Vec<String> = list.split(',').map(|s| format!("\"{}\"", s.trim())).collect();
            pairs.push(("schemes".into(), format!("[{}]", quoted.join(","))));
        }
        pairs.extend(self.set.iter().cloned());
        pairs
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn execute(cli: Cli) -> Result<()> {
    let config = ExperimentConfig::load(cli.common.config.as_deref(), &cli.common.overrides())?;
    let out = cli.common.out.as_deref();
    match cli.command {
        Command::Exact => write_csv(&experiment::exact_rows(&config), sink(out)?),
        Command::Shoot => write_csv(&experiment::shoot_rows(&config)?, sink(out)?),
        Command::Simulate { frames } => {
            let scheme = *config
                .schemes
                .first()
                .ok_or_else(|| Error::InvalidConfig("no scheme selected".into()))?;
            let recorded = experiment::simulate(&config, scheme)?;
            if let Some(path) = frames {
                write_frames(&recorded, config.dx, BufWriter::new(File::create(path)?))?;
            }
            let last = recorded.last().expect("a run records its initial frame");
            write_state(&last.u, config.dx, sink(out)?)
        }
        Command::Estimate { frames } => {
            let recorded = read_frames(BufReader::new(File::open(&frames)?), config.dt)?;
            let grid = config.grid()?;
            if recorded.first().map(|f| f.u.len()) != Some(grid.nodes) {
                return Err(Error::InvalidConfig(format!(
                    "{} does not hold frames of a {}-node grid",
                    frames.display(),
                    grid.nodes
                )));
            }
            let (ss, ly) = experiment::estimate(&recorded, &config, config.theta_at(config.alpha))?;
            write_csv(&[EstimateRow::from(&ss), EstimateRow::from(&ly)], sink(out)?)
        }
        Command::Table { which } => write_csv(&experiment::table_rows(&config, which)?, sink(out)?),
        Command::Sweep { kind: SweepKind::Speeds } => write_csv(&experiment::speed_sweep(&config)?, sink(out)?),
        Command::Sweep { kind: SweepKind::Order } => write_csv(&experiment::order_sweep(&config)?, sink(out)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
