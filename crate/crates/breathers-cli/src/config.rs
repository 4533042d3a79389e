//! Flat `key = value` experiment configuration. Unknown keys and malformed values are
//! configuration errors (exit code 2).

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use breathers::BreatherKind;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "BREATHERS_OUT";
pub const DEFAULT_OUT: &str = "breathers-out";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Generate,
    Verify,
    Spectrum,
    Family,
    Evolve,
    Certify,
    ReportAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Constant,
    Ab,
    Kmb,
    Prw,
}

impl Kind {
    pub fn breather_kind(self) -> BreatherKind {
        match self {
            Kind::Constant => BreatherKind::Constant,
            Kind::Ab => BreatherKind::Akhmediev,
            Kind::Kmb => BreatherKind::KuznetsovMa,
            Kind::Prw => BreatherKind::Peregrine,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BasisChoice {
    Periodic,
    Antiperiodic,
    Line,
}

fn token<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn parse_token<T: ValueEnum>(s: &str) -> Result<T, String> {
    T::from_str(s, true)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub kind: Kind,
    pub lambda0: Option<f64>,
    /// Sampling grid for generate/verify/family.
    pub nx: usize,
    pub nt: usize,
    pub basis: Option<BasisChoice>,
    /// Basis size for spectrum; 0 picks a default per basis.
    pub modes: usize,
    pub half_width: f64,
    pub t: f64,
    pub t_start: f64,
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
    pub wavenumber: Option<f64>,
    pub amplitude: f64,
    pub lambda0_ab: f64,
    pub lambda0_kmb: f64,
    pub export: bool,
    pub seed: u64,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            command: Command::Verify,
            kind: Kind::Ab,
            lambda0: Some(0.6),
            nx: 256,
            nt: 256,
            basis: None,
            modes: 0,
            half_width: 30.0,
            t: 0.0,
            t_start: 0.0,
            t_end: None,
            dt: None,
            wavenumber: None,
            amplitude: 1e-6,
            lambda0_ab: 0.6,
            lambda0_kmb: 1.25,
            export: false,
            seed: 7,
            output_dir: PathBuf::from(DEFAULT_OUT),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn num<T: FromStr>(key: &str, v: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    v.parse().map_err(|e| ConfigError(format!("{key} = {v}: {e}")))
}

fn opt_num<T: FromStr>(key: &str, v: &str) -> Result<Option<T>, ConfigError>
where
    T::Err: fmt::Display,
{
    if v == "none" {
        Ok(None)
    } else {
        num(key, v).map(Some)
    }
}

fn opt_str<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "none".into())
}

pub const KEYS: [&str; 20] = [
    "command", "kind", "lambda0", "nx", "nt", "basis", "modes", "half_width", "t", "t_start", "t_end", "dt",
    "wavenumber", "amplitude", "lambda0_ab", "lambda0_kmb", "export", "seed", "output_dir", "version",
];

impl ExperimentConfig {
    /// Sets one key from its text form.
    pub fn set(&mut self, key: &str, v: &str) -> Result<(), ConfigError> {
        let v = v.trim();
        let bad = |e: String| ConfigError(format!("{key} = {v}: {e}"));
        match key {
            "command" => self.command = parse_token(v).map_err(bad)?,
            "kind" => self.kind = parse_token(v).map_err(bad)?,
            "lambda0" => self.lambda0 = opt_num(key, v)?,
            "nx" => self.nx = num(key, v)?,
            "nt" => self.nt = num(key, v)?,
            "basis" => self.basis = if v == "none" { None } else { Some(parse_token(v).map_err(bad)?) },
            "modes" => self.modes = num(key, v)?,
            "half_width" => self.half_width = num(key, v)?,
            "t" => self.t = num(key, v)?,
            "t_start" => self.t_start = num(key, v)?,
            "t_end" => self.t_end = opt_num(key, v)?,
            "dt" => self.dt = opt_num(key, v)?,
            "wavenumber" => self.wavenumber = opt_num(key, v)?,
            "amplitude" => self.amplitude = num(key, v)?,
            "lambda0_ab" => self.lambda0_ab = num(key, v)?,
            "lambda0_kmb" => self.lambda0_kmb = num(key, v)?,
            "export" => self.export = num(key, v)?,
            "seed" => self.seed = num(key, v)?,
            "output_dir" => self.output_dir = PathBuf::from(v),
            // written for provenance, ignored on read
            "version" => {}
            _ => return Err(ConfigError(format!("unknown key '{key}' (known: {})", KEYS.join(", ")))),
        }
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key = value, got '{line}'", no + 1)))?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut c = Self::default();
        c.apply_text(text)?;
        Ok(c)
    }

    /// The flat text form; `parse(to_text())` reproduces `self` exactly.
    pub fn to_text(&self) -> String {
        let rows: [(&str, String); 19] = [
            ("command", token(&self.command)),
            ("kind", token(&self.kind)),
            ("lambda0", opt_str(&self.lambda0)),
            ("nx", self.nx.to_string()),
            ("nt", self.nt.to_string()),
            ("basis", self.basis.map(|b| token(&b)).unwrap_or_else(|| "none".into())),
            ("modes", self.modes.to_string()),
            ("half_width", self.half_width.to_string()),
            ("t", self.t.to_string()),
            ("t_start", self.t_start.to_string()),
            ("t_end", opt_str(&self.t_end)),
            ("dt", opt_str(&self.dt)),
            ("wavenumber", opt_str(&self.wavenumber)),
            ("amplitude", self.amplitude.to_string()),
            ("lambda0_ab", self.lambda0_ab.to_string()),
            ("lambda0_kmb", self.lambda0_kmb.to_string()),
            ("export", self.export.to_string()),
            ("seed", self.seed.to_string()),
            ("output_dir", self.output_dir.display().to_string()),
        ];
        let mut s = format!("# breathers {}\n", env!("CARGO_PKG_VERSION"));
        for (k, v) in rows {
            s.push_str(&format!("{k} = {v}\n"));
        }
        s
    }

    /// The breather named by `kind` and `lambda0`, validated.
    pub fn spec(&self) -> Result<breathers::Breather, ConfigError> {
        let l = match self.kind {
            Kind::Ab | Kind::Kmb => self.lambda0,
            _ => None,
        };
        breathers::Breather::new(self.kind.breather_kind(), l).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match self.command {
            Command::ReportAll => {
                breathers::checks::SuiteParams { lambda0_ab: self.lambda0_ab, lambda0_kmb: self.lambda0_kmb, seed: self.seed }
                    .validate()
                    .map_err(|e| ConfigError(e.to_string()))?;
            }
            _ => {
                self.spec()?;
            }
        }
        if self.nx < 2 || self.nt < 2 {
            return Err(ConfigError(format!("nx, nt must be at least 2 (got {}, {})", self.nx, self.nt)));
        }
        if !(self.half_width > 0.0) {
            return Err(ConfigError(format!("half_width must be positive (got {})", self.half_width)));
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0) {
                return Err(ConfigError(format!("dt must be positive (got {dt})")));
            }
        }
        if let Some(k) = self.wavenumber {
            if !(k > 0.0) {
                return Err(ConfigError(format!("wavenumber must be positive (got {k})")));
            }
        }
        if matches!(self.command, Command::Family) && !matches!(self.kind, Kind::Ab | Kind::Kmb) {
            return Err(ConfigError("family is defined about the ab and kmb breathers".into()));
        }
        if matches!(self.command, Command::Certify) && !matches!(self.kind, Kind::Ab | Kind::Kmb) {
            return Err(ConfigError("certify needs a Darboux-transformed breather (ab or kmb)".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut c = ExperimentConfig::default();
        c.set("kind", "kmb").unwrap();
        c.set("lambda0", "1.2500000000000002").unwrap();
        c.set("dt", "0.1").unwrap();
        c.set("basis", "line").unwrap();
        c.set("command", "report-all").unwrap();
        assert_eq!(ExperimentConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn unknown_key_and_bad_value() {
        assert!(ExperimentConfig::parse("colour = red").is_err());
        assert!(ExperimentConfig::parse("nx = many").is_err());
        assert!(ExperimentConfig::parse("just text").is_err());
        assert!(ExperimentConfig::parse("# only a comment\n\nnx = 8 # trailing").is_ok());
    }

    #[test]
    fn interval_is_reported() {
        let c = ExperimentConfig::parse("kind = ab\nlambda0 = 1.0").unwrap();
        let e = c.validate().unwrap_err();
        assert!(e.0.contains("(0, 1)"), "{e}");
    }
}
