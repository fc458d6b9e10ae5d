//! Benchmark harness and replay checker behind the `dynhull` binary.

use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod bench;
pub mod subject;
pub mod verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    Ovl,
    Eilice,
    RankOvl,
    RankEilice,
    StaticOracle,
}

impl Structure {
    pub fn is_rank(self) -> bool {
        matches!(self, Structure::RankOvl | Structure::RankEilice)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Grow the set batch by batch, timing each batch.
    Construct,
    /// Time one extension batch at each power-of-two size.
    Extend,
    /// Time a shuffled mix of insertions and deletions at each size.
    Update,
    /// Time containment queries over the input's bounding box.
    Query,
}

/// `exact` runs on rationals, `inexact` on `f64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kernel {
    Exact,
    Inexact,
}

macro_rules! value_display {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
            }
        }
    )*};
}
value_display!(Structure, Mode, Kernel);

/// Full-size workload sizes. Desk runs divide them by `--scale`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preset {
    pub points: usize,
    pub construct_batch: usize,
    pub extension: usize,
    pub updates: usize,
    pub queries: usize,
}

impl Preset {
    pub const FULL: Preset =
        Preset { points: 1 << 20, construct_batch: 1 << 14, extension: 50_000, updates: 1000, queries: 1 << 20 };

    pub fn scaled(self, divisor: usize) -> Preset {
        let d = divisor.max(1);
        let s = |v: usize| (v / d).max(1);
        Preset {
            points: s(self.points),
            construct_batch: s(self.construct_batch),
            extension: s(self.extension),
            updates: s(self.updates).max(2),
            queries: s(self.queries),
        }
    }

    pub fn batch(&self, mode: Mode) -> usize {
        match mode {
            Mode::Construct => self.construct_batch,
            Mode::Extend => self.extension,
            Mode::Update => self.updates,
            Mode::Query => self.queries,
        }
    }
}

/// One CSV line. `ops_counter` counts bridge-search iterations inside the
/// timed section; static rebuilds report zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub mode: String,
    pub structure: String,
    pub kernel: String,
    pub dist: String,
    pub n: usize,
    pub batch: usize,
    pub wall_nanos: u64,
    pub ops_counter: u64,
    pub hull_size: usize,
}

pub const CSV_HEADER: &str = "mode,structure,kernel,dist,n,batch,wall_nanos,ops_counter,hull_size";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Points { path: PathBuf, source: dynhull::datagen::PointsError },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("script line {line}: {message}")]
    ScriptParse { line: usize, message: String },
    #[error("{0}")]
    Workload(String),
    #[error("query audit failed at n = {n}: {detail}")]
    AuditMismatch { n: usize, detail: String },
    #[error("structure failed: {0}")]
    Structure(#[from] dynhull::HullError),
}
