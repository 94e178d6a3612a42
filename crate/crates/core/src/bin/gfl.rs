use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use glauber_fock::cli::{run, Command, RunConfig};
use glauber_fock::lattice::{LatticeSpec, DEFAULT_LEAKAGE_TOL};
use glauber_fock::table::Format;

/// Deformed Glauber-Fock lattice simulator.
#[derive(Parser, Debug)]
#[command(name = "gfl", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Numerically propagate a launch state and write |E_m(z)|^2 with amplitudes.
    Simulate(Common),
    /// Write the closed-form Green function for a launch state.
    Green(Common),
    /// Tabulate the Wigner function of a state on a square grid.
    Wigner(Common),
    /// Compare closed-form and numerical propagation; exits nonzero above --tol.
    Compare(Common),
    /// Write a cat state and its displaced-Fock components.
    Cat(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Number of waveguides.
    #[arg(long, default_value_t = 64)]
    sites: usize,
    /// Coupling constant per unit length.
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Launch state: fock:<k>, coherent:<re>,<im>, coherent:n=<mean>,
    /// dfock:<re>,<im>,<k>, dfock:n=<|beta|^2>,<k>, cat:<re>,<im>[,<k>].
    #[arg(long, visible_alias = "state", default_value = "fock:0")]
    input: String,
    /// Propagation length.
    #[arg(long, default_value_t = 4.0)]
    zmax: f64,
    /// Number of z samples including both ends.
    #[arg(long, default_value_t = 400)]
    samples: usize,
    /// Output file; defaults to <command>_<input>.<format> in $GFL_OUTPUT_DIR or the current directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Half-width of the Wigner window.
    #[arg(long, default_value_t = 2.0)]
    range: f64,
    /// Wigner grid points per axis.
    #[arg(long, default_value_t = 41)]
    resolution: usize,
    /// Largest tolerated analytic/numeric difference for compare.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Largest tolerated population on the last five sites.
    #[arg(long = "leakage-tol", default_value_t = DEFAULT_LEAKAGE_TOL)]
    leakage_tol: f64,
}

fn config(command: Command, c: Common) -> glauber_fock::Result<RunConfig> {
    let spec = LatticeSpec::new(c.g, c.sites)?.with_leakage_tol(c.leakage_tol)?;
    let mut cfg = RunConfig::new(command, spec, &c.input);
    cfg.z_max = c.zmax;
    cfg.z_samples = c.samples;
    cfg.output_path = c.out;
    cfg.output_format = c.format.parse::<Format>()?;
    cfg.wigner_range = c.range;
    cfg.wigner_resolution = c.resolution;
    cfg.compare_tol = c.tol;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Cmd::Simulate(c) => (Command::Simulate, c),
        Cmd::Green(c) => (Command::Green, c),
        Cmd::Wigner(c) => (Command::Wigner, c),
        Cmd::Compare(c) => (Command::Compare, c),
        Cmd::Cat(c) => (Command::Cat, c),
    };
    let report = match config(command, common).and_then(|cfg| run(&cfg)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gfl: {e}");
            return ExitCode::from(1);
        }
    };
    for path in &report.outputs {
        println!("wrote {}", path.display());
    }
    for (k, v) in &report.summary {
        println!("{k}: {v}");
    }
    for b in &report.breaches {
        eprintln!("threshold breached: {b}");
    }
    ExitCode::from(report.exit_code() as u8)
}
