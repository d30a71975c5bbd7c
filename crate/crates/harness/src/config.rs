//! Run configuration. Layers apply in order: defaults, a flat
//! `key = value` file, the `GZOT_SEED` environment variable, then flags.

use std::path::{Path, PathBuf};

use gzot_core::ot::{Instantiation, SessionId};
use gzot_core::{MaskBytes, RhoMode, SigmaMode};

use crate::error::{HarnessError, Result};

pub const SEED_ENV: &str = "GZOT_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Sender,
    Receiver,
}

/// Which words the smoothness suite hashes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordSource {
    /// The unchosen word `x_{1-b}` of an honest first flow.
    Unchosen,
    /// Uniform words of the ambient space.
    Uniform,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub inst: Instantiation,
    pub preset: String,
    pub sid: SessionId,
    pub role: Option<Role>,
    pub peer: String,
    /// Message length in bits; must match the preset for LWE.
    pub kappa: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub b: u8,
    pub m0: Option<MaskBytes>,
    pub m1: Option<MaskBytes>,
    pub sigma_mode: SigmaMode,
    pub rho_mode: RhoMode,
    pub words: WordSource,
    /// Per-slot mixing weight of the k-fold suite.
    pub mix: f64,
    pub timeout_secs: u64,
    pub report: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            inst: Instantiation::Dh,
            preset: "test".into(),
            sid: SessionId::default(),
            role: None,
            peer: "127.0.0.1:7878".into(),
            kappa: None,
            trials: 1000,
            seed: 0,
            b: 0,
            m0: None,
            m1: None,
            sigma_mode: SigmaMode::S0,
            rho_mode: RhoMode::R0,
            words: WordSource::Unchosen,
            mix: 0.5,
            timeout_secs: 30,
            report: None,
        }
    }
}

fn bad(key: &str, value: &str) -> HarnessError {
    HarnessError::Config(format!("invalid value {value:?} for {key}"))
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| bad(key, value))
}

impl RunConfig {
    /// Sets one key; keys are the long flag names with `-` or `_`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "inst" | "instantiation" => self.inst = value.parse().map_err(|_| bad(key, value))?,
            "preset" => self.preset = value.to_string(),
            "sid" => self.sid = SessionId::parse(value).map_err(|_| bad(key, value))?,
            "role" => {
                self.role = Some(match value {
                    "sender" => Role::Sender,
                    "receiver" => Role::Receiver,
                    _ => return Err(bad(key, value)),
                })
            }
            "peer" | "addr" => self.peer = value.to_string(),
            "kappa" => self.kappa = Some(num(key, value)?),
            "trials" => self.trials = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "b" => {
                self.b = match value {
                    "0" => 0,
                    "1" => 1,
                    _ => return Err(bad(key, value)),
                }
            }
            "m0" => self.m0 = Some(MaskBytes::from_hex(value).map_err(|_| bad(key, value))?),
            "m1" => self.m1 = Some(MaskBytes::from_hex(value).map_err(|_| bad(key, value))?),
            "sigma_mode" => self.sigma_mode = value.parse().map_err(|_| bad(key, value))?,
            "rho_mode" => self.rho_mode = value.parse().map_err(|_| bad(key, value))?,
            "words" => {
                self.words = match value {
                    "unchosen" => WordSource::Unchosen,
                    "uniform" => WordSource::Uniform,
                    _ => return Err(bad(key, value)),
                }
            }
            "mix" => {
                self.mix = num(key, value)?;
                if !(0.0..=1.0).contains(&self.mix) {
                    return Err(bad(key, value));
                }
            }
            "timeout" | "timeout_secs" => self.timeout_secs = num(key, value)?,
            "report" => self.report = Some(PathBuf::from(value)),
            other => return Err(HarnessError::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| HarnessError::Config(format!("line {}: expected key = value", no + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn apply_env_seed(&mut self, value: Option<&str>) -> Result<()> {
        match value {
            Some(v) => self.set("seed", v),
            None => Ok(()),
        }
    }

    /// Defaults, then `file`, then `GZOT_SEED`, then `flags` in order.
    pub fn layered<'a>(
        file: Option<&Path>,
        env_seed: Option<&str>,
        flags: impl IntoIterator<Item = (&'a str, String)>,
    ) -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(f) = file {
            cfg.apply_file(f)?;
        }
        cfg.apply_env_seed(env_seed)?;
        for (k, v) in flags {
            cfg.set(k, &v)?;
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_text() {
        let mut c = RunConfig::default();
        c.apply_text("inst = lwe\n# comment\npreset=toy  # trailing\nsid = 0000000000000009\nb = 1\nm0 = aa\n")
            .unwrap();
        assert_eq!(c.inst, Instantiation::Lwe);
        assert_eq!(c.preset, "toy");
        assert_eq!(c.sid, SessionId::from_u64(9));
        assert_eq!(c.b, 1);
        assert_eq!(c.m0.as_ref().unwrap().as_bytes(), &[0xAA]);
        assert!(c.apply_text("nonsense").is_err());
        assert!(c.apply_text("colour = red").is_err());
        assert!(c.apply_text("b = 2").is_err());
    }

    #[test]
    fn precedence_file_env_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "seed = 1\ntrials = 5\n").unwrap();
        let c = RunConfig::layered(Some(&path), None, []).unwrap();
        assert_eq!((c.seed, c.trials), (1, 5));
        let c = RunConfig::layered(Some(&path), Some("2"), []).unwrap();
        assert_eq!(c.seed, 2);
        let c = RunConfig::layered(Some(&path), Some("2"), [("seed", "3".to_string())]).unwrap();
        assert_eq!((c.seed, c.trials), (3, 5));
        assert!(RunConfig::layered(None, Some("x"), []).is_err());
    }
}
