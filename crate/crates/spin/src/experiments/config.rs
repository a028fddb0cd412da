//! Experiment configuration: per-scenario defaults, a flat `key=value`
//! config-file format, and flag-style overrides. Keys in the file are exactly
//! the CLI flag names (e.g. `snr-db`, `max-iters`).

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::solver::{SpinConfig, StopRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    PairsOfBases,
    DiskSquare,
    PulseImpulse,
    MonteCarlo,
    EstimateGeometry,
}

impl Scenario {
    pub fn label(&self) -> &'static str {
        match self {
            Scenario::PairsOfBases => "pairs-of-bases",
            Scenario::DiskSquare => "disk-square",
            Scenario::PulseImpulse => "pulse-impulse",
            Scenario::MonteCarlo => "montecarlo",
            Scenario::EstimateGeometry => "estimate-geometry",
        }
    }
}

/// Full description of one experiment run. Fields not meaningful for a
/// scenario are simply ignored by its runner.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub scenario: Scenario,
    pub n: usize,
    pub height: usize,
    pub width: usize,
    pub k1: usize,
    pub k2: usize,
    pub kprime: usize,
    pub m: usize,
    pub snr_db: Option<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub solver: SpinConfig,
    /// Projection slack for the template component.
    pub gamma: f64,
    pub pulse_sigma: Option<f64>,
    pub disk_radius: f64,
    pub square_side: usize,
    pub blur_sigma: f64,
    /// Monte Carlo grid axes.
    pub kprime_list: Vec<usize>,
    pub m_list: Vec<usize>,
    /// Sample count for geometry estimators.
    pub samples: usize,
    pub out_dir: PathBuf,
    pub save_images: bool,
}

impl ExperimentSpec {
    /// Scenario defaults; every field can be overridden by config file or
    /// flags.
    pub fn defaults(scenario: Scenario) -> Self {
        let mut spec = ExperimentSpec {
            scenario,
            n: 256,
            height: 64,
            width: 64,
            k1: 4,
            k2: 4,
            kprime: 10,
            m: 0,
            snr_db: None,
            trials: 20,
            master_seed: 0,
            solver: SpinConfig::default(),
            gamma: 0.0,
            pulse_sigma: None,
            disk_radius: 8.0,
            square_side: 14,
            blur_sigma: 1.0,
            kprime_list: vec![5, 10, 20],
            m_list: (1..=16).map(|i| 25 * i).collect(),
            samples: 200,
            out_dir: PathBuf::from("out"),
            save_images: false,
        };
        match scenario {
            Scenario::PairsOfBases => {
                spec.n = 256;
                spec.trials = 50;
            }
            Scenario::DiskSquare => {
                spec.n = 64 * 64;
                spec.m = 50;
                spec.snr_db = Some(14.0);
            }
            Scenario::PulseImpulse => {
                spec.n = 10000;
                spec.m = 150;
            }
            Scenario::MonteCarlo => {
                spec.n = 2000;
                spec.trials = 50;
            }
            Scenario::EstimateGeometry => {
                spec.n = 64;
                spec.m = 32;
            }
        }
        spec
    }

    /// Effective pulse width: explicit value or `n / 200`.
    pub fn effective_pulse_sigma(&self) -> f64 {
        self.pulse_sigma.unwrap_or(self.n as f64 / 200.0)
    }

    /// Applies one `key=value` override. Keys match CLI flag names.
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad value {value:?} for key {key:?}")))
        }
        fn parse_list(key: &str, value: &str) -> Result<Vec<usize>> {
            value
                .split(',')
                .map(|s| {
                    s.trim().parse().map_err(|_| {
                        Error::InvalidConfig(format!("bad value {value:?} for key {key:?}"))
                    })
                })
                .collect()
        }
        match key {
            "n" => self.n = parse(key, value)?,
            "height" => self.height = parse(key, value)?,
            "width" => self.width = parse(key, value)?,
            "k1" => self.k1 = parse(key, value)?,
            "k2" => self.k2 = parse(key, value)?,
            "kprime" => self.kprime = parse(key, value)?,
            "m" => self.m = parse(key, value)?,
            "snr-db" => {
                self.snr_db = if value.eq_ignore_ascii_case("none") {
                    None
                } else {
                    Some(parse(key, value)?)
                }
            }
            "trials" => self.trials = parse(key, value)?,
            "seed" => self.master_seed = parse(key, value)?,
            "eta" => self.solver.eta = parse(key, value)?,
            "max-iters" => self.solver.max_iters = parse(key, value)?,
            "nu" => {
                self.solver.nu = parse(key, value)?;
                self.solver.stop_rule = StopRule::PsiThreshold;
            }
            "gamma" => self.gamma = parse(key, value)?,
            "pulse-sigma" => self.pulse_sigma = Some(parse(key, value)?),
            "disk-radius" => self.disk_radius = parse(key, value)?,
            "square-side" => self.square_side = parse(key, value)?,
            "blur-sigma" => self.blur_sigma = parse(key, value)?,
            "kprime-list" => self.kprime_list = parse_list(key, value)?,
            "m-list" => self.m_list = parse_list(key, value)?,
            "samples" => self.samples = parse(key, value)?,
            "out" => self.out_dir = PathBuf::from(value),
            "save-images" => self.save_images = parse(key, value)?,
            other => {
                return Err(Error::InvalidConfig(format!("unknown config key {other:?}")));
            }
        }
        Ok(())
    }

    /// Reads a flat `key=value` file. Blank lines and `#` comments are
    /// skipped.
    pub fn apply_config_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::InvalidConfig(format!(
                    "{}:{}: expected key=value, got {line:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            self.apply_kv(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.solver.validate()?;
        if self.n == 0 {
            return Err(Error::InvalidConfig("dimension must be positive".into()));
        }
        if self.scenario == Scenario::DiskSquare && self.height * self.width != self.n {
            return Err(Error::InvalidConfig(format!(
                "grid {}x{} does not match dimension {}",
                self.height, self.width, self.n
            )));
        }
        if self.kprime > self.n || self.k1 > self.n || self.k2 > self.n {
            return Err(Error::InvalidConfig("sparsity exceeds dimension".into()));
        }
        if self.gamma < 0.0 {
            return Err(Error::InvalidConfig("gamma must be nonnegative".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_per_scenario() {
        let p = ExperimentSpec::defaults(Scenario::PulseImpulse);
        assert_eq!(p.n, 10000);
        assert_eq!(p.m, 150);
        assert_eq!(p.kprime, 10);
        assert_eq!(p.effective_pulse_sigma(), 50.0);

        let d = ExperimentSpec::defaults(Scenario::DiskSquare);
        assert_eq!((d.height, d.width, d.m), (64, 64, 50));
        assert_eq!(d.snr_db, Some(14.0));

        let mc = ExperimentSpec::defaults(Scenario::MonteCarlo);
        assert_eq!(mc.m_list.len(), 16);
        assert_eq!(mc.m_list[0], 25);
        assert_eq!(*mc.m_list.last().unwrap(), 400);
    }

    #[test]
    fn key_value_overrides() {
        let mut spec = ExperimentSpec::defaults(Scenario::PulseImpulse);
        spec.apply_kv("n", "2000").unwrap();
        spec.apply_kv("snr-db", "12.5").unwrap();
        spec.apply_kv("m-list", "10, 20,30").unwrap();
        spec.apply_kv("save-images", "true").unwrap();
        assert_eq!(spec.n, 2000);
        assert_eq!(spec.snr_db, Some(12.5));
        assert_eq!(spec.m_list, vec![10, 20, 30]);
        assert!(spec.save_images);
        assert!(spec.apply_kv("bogus", "1").is_err());
        assert!(spec.apply_kv("n", "not-a-number").is_err());
    }

    #[test]
    fn config_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("exp.conf");
        std::fs::write(&path, "# comment\nn=512\neta = 0.55\nsnr-db=none\n").unwrap();
        let mut spec = ExperimentSpec::defaults(Scenario::DiskSquare);
        spec.apply_config_file(&path).unwrap();
        assert_eq!(spec.n, 512);
        assert_eq!(spec.solver.eta, 0.55);
        assert_eq!(spec.snr_db, None);

        std::fs::write(&path, "n 512\n").unwrap();
        assert!(spec.apply_config_file(&path).is_err());
    }
}
