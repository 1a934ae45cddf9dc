use std::path::{Path, PathBuf};

use clap::ValueEnum;
use coref_eval::io::{MetricSet, ReportFormat};
use coref_eval::XpsMode;

/// What to do when key and response list different mentions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum MismatchPolicy {
    /// Add each side's missing mentions as singletons and score anyway.
    #[default]
    Extend,
    /// Refuse to score.
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inputs {
    Pair { key: PathBuf, response: PathBuf },
    Manifest(PathBuf),
}

impl Inputs {
    pub fn pair(&self) -> anyhow::Result<(&Path, &Path)> {
        match self {
            Inputs::Pair { key, response } => Ok((key, response)),
            Inputs::Manifest(_) => anyhow::bail!("this command scores a key/response pair, not a manifest"),
        }
    }

    pub fn manifest(&self) -> anyhow::Result<&Path> {
        match self {
            Inputs::Manifest(path) => Ok(path),
            Inputs::Pair { .. } => anyhow::bail!("this command needs a manifest"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Inputs,
    pub metrics: MetricSet,
    pub format: ReportFormat,
    pub xps_mode: XpsMode,
    pub on_mismatch: MismatchPolicy,
    /// Standard output when `None`.
    pub output: Option<PathBuf>,
    /// Worker threads for batch scoring; rayon's default when `None`.
    pub jobs: Option<usize>,
}
