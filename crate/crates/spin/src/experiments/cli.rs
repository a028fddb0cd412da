//! Command-line front end. Exit codes: 0 on success, 2 on configuration
//! errors (bad flags, bad config file), 1 on runtime failures.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};

use super::config::{ExperimentSpec, Scenario};

#[derive(Parser, Debug)]
#[command(
    name = "spin",
    about = "Separate two structured signal components from noisy linear measurements",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Two sparse components in a pair of orthonormal bases, identity measurements
    PairsOfBases(CommonArgs),
    /// Shifted disk plus shifted square on a 2D grid, compressive measurements
    DiskSquare(CommonArgs),
    /// Shifted smooth pulse corrupted by sparse spikes, compressive measurements
    PulseImpulse(CommonArgs),
    /// Sweep measurement count against spike sparsity (grid of seeded trials)
    Montecarlo(CommonArgs),
    /// Sample incoherence / isometry / coherence diagnostics and emit a CSV
    EstimateGeometry(CommonArgs),
}

impl Command {
    fn scenario(&self) -> Scenario {
        match self {
            Command::PairsOfBases(_) => Scenario::PairsOfBases,
            Command::DiskSquare(_) => Scenario::DiskSquare,
            Command::PulseImpulse(_) => Scenario::PulseImpulse,
            Command::Montecarlo(_) => Scenario::MonteCarlo,
            Command::EstimateGeometry(_) => Scenario::EstimateGeometry,
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::PairsOfBases(a)
            | Command::DiskSquare(a)
            | Command::PulseImpulse(a)
            | Command::Montecarlo(a)
            | Command::EstimateGeometry(a) => a,
        }
    }
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Flat key=value config file; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed; trial t derives its own seed from (seed, t)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Measurement count (0 = identity operator)
    #[arg(long)]
    m: Option<usize>,
    /// Signal dimension
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k1: Option<usize>,
    #[arg(long)]
    k2: Option<usize>,
    #[arg(long)]
    kprime: Option<usize>,
    /// Noise level in dB; omit for noiseless
    #[arg(long)]
    snr_db: Option<f64>,
    /// Gradient step size
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Objective threshold; setting it switches to threshold stopping
    #[arg(long)]
    nu: Option<f64>,
    /// Output directory for CSV/PGM artifacts
    #[arg(long)]
    out: Option<PathBuf>,
    /// Squared-distance slack for the template projection
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    pulse_sigma: Option<f64>,
    #[arg(long)]
    disk_radius: Option<f64>,
    #[arg(long)]
    square_side: Option<usize>,
    #[arg(long)]
    blur_sigma: Option<f64>,
    /// 2D grid height (disk-square)
    #[arg(long)]
    height: Option<usize>,
    /// 2D grid width (disk-square)
    #[arg(long)]
    width: Option<usize>,
    /// Comma-separated sparsity grid (montecarlo)
    #[arg(long)]
    kprime_list: Option<String>,
    /// Comma-separated measurement grid (montecarlo)
    #[arg(long)]
    m_list: Option<String>,
    /// Sample count for geometry estimators
    #[arg(long)]
    samples: Option<usize>,
    /// Write truth/recovered component images as PGM
    #[arg(long)]
    save_images: bool,
}

fn build_spec(scenario: Scenario, args: &CommonArgs) -> Result<ExperimentSpec> {
    let mut spec = ExperimentSpec::defaults(scenario);
    if let Some(path) = &args.config {
        spec.apply_config_file(path)?;
    }
    macro_rules! set {
        ($field:expr, $value:expr) => {
            if let Some(v) = &$value {
                $field = v.clone();
            }
        };
    }
    set!(spec.master_seed, args.seed);
    set!(spec.trials, args.trials);
    set!(spec.m, args.m);
    set!(spec.n, args.n);
    set!(spec.k1, args.k1);
    set!(spec.k2, args.k2);
    set!(spec.kprime, args.kprime);
    if args.snr_db.is_some() {
        spec.snr_db = args.snr_db;
    }
    set!(spec.solver.eta, args.eta);
    set!(spec.solver.max_iters, args.max_iters);
    if let Some(nu) = args.nu {
        spec.solver.nu = nu;
        spec.solver.stop_rule = crate::solver::StopRule::PsiThreshold;
    }
    set!(spec.out_dir, args.out);
    set!(spec.gamma, args.gamma);
    if args.pulse_sigma.is_some() {
        spec.pulse_sigma = args.pulse_sigma;
    }
    set!(spec.disk_radius, args.disk_radius);
    set!(spec.square_side, args.square_side);
    set!(spec.blur_sigma, args.blur_sigma);
    set!(spec.height, args.height);
    set!(spec.width, args.width);
    if let Some(list) = &args.kprime_list {
        spec.apply_kv("kprime-list", list)?;
    }
    if let Some(list) = &args.m_list {
        spec.apply_kv("m-list", list)?;
    }
    set!(spec.samples, args.samples);
    if args.save_images {
        spec.save_images = true;
    }
    // The disk-square grid defines the dimension unless n was forced.
    if scenario == Scenario::DiskSquare && args.n.is_none() {
        spec.n = spec.height * spec.width;
    }
    spec.validate()?;
    Ok(spec)
}

/// Parses `argv` and runs the selected experiment.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are successes; anything else is a usage
            // error.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let scenario = cli.command.scenario();
    let spec = match build_spec(scenario, cli.command.args()) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("spin: configuration error: {e}");
            return 2;
        }
    };
    match super::run(&spec) {
        Ok(()) => {
            println!(
                "{}: wrote artifacts to {}",
                scenario.label(),
                spec.out_dir.display()
            );
            0
        }
        Err(Error::InvalidConfig(msg)) => {
            eprintln!("spin: configuration error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("spin: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_flag_exits_2() {
        let code = cli_main(["spin", "pulse-impulse", "--bogus-flag", "1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn missing_subcommand_exits_2() {
        assert_eq!(cli_main(["spin"]), 2);
    }

    #[test]
    fn bad_config_file_exits_2() {
        let dir = tempfile::tempdir().unwrap();
        let conf = dir.path().join("bad.conf");
        std::fs::write(&conf, "definitely not = = valid\n").unwrap();
        let code = cli_main([
            "spin",
            "pulse-impulse",
            "--config",
            conf.to_str().unwrap(),
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let conf = dir.path().join("exp.conf");
        std::fs::write(&conf, "n=4096\nkprime=5\n").unwrap();
        let out = dir.path().join("run");
        let code = cli_main([
            "spin",
            "pulse-impulse",
            "--config",
            conf.to_str().unwrap(),
            "--n",
            "400",
            "--m",
            "60",
            "--trials",
            "2",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let csv = std::fs::read_to_string(out.join("trials.csv")).unwrap();
        // n came from the flag, kprime from the file.
        assert!(csv.lines().nth(1).unwrap().contains(",400,60,,,5,"));
    }

    #[test]
    fn estimate_geometry_emits_csv() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("geo");
        let code = cli_main([
            "spin",
            "estimate-geometry",
            "--n",
            "32",
            "--k1",
            "2",
            "--k2",
            "2",
            "--m",
            "16",
            "--samples",
            "20",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let csv = std::fs::read_to_string(out.join("geometry.csv")).unwrap();
        assert!(csv.starts_with("kind,value,samples,seed\n"));
    }
}
