//! Benchmark point sets and the `.pts` text format.
//!
//! Streams come from xoshiro256++ seeded through splitmix64 (the reference
//! seeding of that generator). A uniform double is `(next >> 11) * 2^-53`;
//! normal deviates use the Box-Muller transform on two such doubles,
//! `sqrt(-2 ln(1 - u1)) * (cos, sin)(2 pi u2)`, taking both outputs in turn.
//! Every coordinate is rounded to the nearest multiple of `2^-20`, so floating
//! point and exact structures read identical inputs.

use std::collections::HashSet;
use std::f64::consts::TAU;
use std::fmt;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use thiserror::Error;

use crate::kernel::Point;
use crate::scalar::Scalar;

/// Grid resolution is `2^-GRID_BITS`.
pub const GRID_BITS: i32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistKind {
    /// Uniform in the square `[-s, s]^2`.
    Uniform,
    /// Uniform in the disk of radius `s`, by rejection from the square.
    Disk,
    /// Isotropic normal with standard deviation `s`.
    Bell,
    /// Uniform angle on the circle of radius `s`.
    Circle,
}

impl DistKind {
    pub const ALL: [DistKind; 4] = [DistKind::Uniform, DistKind::Disk, DistKind::Bell, DistKind::Circle];

    /// Default scale: half side 1000, radius 1000, sigma 1000/3.
    pub fn default_scale(self) -> f64 {
        match self {
            DistKind::Bell => 1000.0 / 3.0,
            _ => 1000.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DistKind::Uniform => "uniform",
            DistKind::Disk => "disk",
            DistKind::Bell => "bell",
            DistKind::Circle => "circle",
        }
    }
}

impl fmt::Display for DistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown distribution {0:?}")]
pub struct UnknownDistribution(pub String);

impl FromStr for DistKind {
    type Err = UnknownDistribution;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DistKind::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownDistribution(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Distribution {
    pub kind: DistKind,
    pub scale: f64,
    pub seed: u64,
}

impl Distribution {
    pub fn new(kind: DistKind, seed: u64) -> Self {
        Distribution { kind, scale: kind.default_scale(), seed }
    }
}

struct Sampler {
    rng: Xoshiro256PlusPlus,
    spare: Option<f64>,
}

impl Sampler {
    fn new(seed: u64) -> Self {
        Sampler { rng: Xoshiro256PlusPlus::seed_from_u64(seed), spare: None }
    }

    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (-53f64).exp2()
    }

    fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let radius = (-2.0 * (1.0 - self.uniform()).ln()).sqrt();
        let (sin, cos) = (TAU * self.uniform()).sin_cos();
        self.spare = Some(radius * sin);
        radius * cos
    }

    fn draw(&mut self, kind: DistKind, s: f64) -> (f64, f64) {
        match kind {
            DistKind::Uniform => (s * (2.0 * self.uniform() - 1.0), s * (2.0 * self.uniform() - 1.0)),
            DistKind::Disk => loop {
                let (x, y) = (2.0 * self.uniform() - 1.0, 2.0 * self.uniform() - 1.0);
                if x * x + y * y <= 1.0 {
                    break (s * x, s * y);
                }
            },
            DistKind::Bell => (s * self.normal(), s * self.normal()),
            DistKind::Circle => {
                let (sin, cos) = (TAU * self.uniform()).sin_cos();
                (s * cos, s * sin)
            }
        }
    }
}

fn snap(v: f64) -> f64 {
    let unit = f64::from(GRID_BITS).exp2();
    (v * unit).round() / unit
}

/// Nearest grid point that does not leave the disk of radius `r`.
fn snap_inside(x: f64, y: f64, r: f64) -> (f64, f64) {
    let (sx, sy) = (snap(x), snap(y));
    if sx * sx + sy * sy <= r * r {
        return (sx, sy);
    }
    let unit = f64::from(GRID_BITS).exp2();
    ((x * unit).trunc() / unit, (y * unit).trunc() / unit)
}

/// Raw samples in `f64` together with their snapped coordinates. Samples
/// whose snapped point repeats an earlier one are dropped and redrawn.
pub fn generate_with_raw(d: &Distribution, n: usize) -> Vec<((f64, f64), (f64, f64))> {
    let mut sampler = Sampler::new(d.seed);
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (x, y) = sampler.draw(d.kind, d.scale);
        let snapped = match d.kind {
            DistKind::Disk => snap_inside(x, y, d.scale),
            _ => (snap(x), snap(y)),
        };
        if seen.insert((snapped.0.to_bits(), snapped.1.to_bits())) {
            out.push(((x, y), snapped));
        }
    }
    out
}

/// `n` distinct points on the `2^-20` grid.
pub fn generate<S: Scalar>(d: &Distribution, n: usize) -> Vec<Point<S>> {
    generate_with_raw(d, n).into_iter().map(|(_, (x, y))| Point::from_f64(x, y)).collect()
}

#[derive(Debug, Error)]
pub enum PointsError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// One point per line as `x y`, both written without loss.
pub fn write_points<S: Scalar>(path: impl AsRef<Path>, points: &[Point<S>]) -> Result<(), PointsError> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    for p in points {
        writeln!(w, "{} {}", p.x.format_coord(), p.y.format_coord())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the format of [`write_points`]. Blank lines and lines starting
/// with `#` are skipped.
pub fn read_points<S: Scalar>(path: impl AsRef<Path>) -> Result<Vec<Point<S>>, PointsError> {
    parse_points(BufReader::new(fs::File::open(path)?))
}

pub fn parse_points<S: Scalar, R: BufRead>(reader: R) -> Result<Vec<Point<S>>, PointsError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let err = |message: String| PointsError::Parse { line: i + 1, message };
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [x, y] = fields[..] else {
            return Err(err(format!("expected two coordinates, found {}", fields.len())));
        };
        let coord = |s: &str| S::parse_coord(s).ok_or_else(|| err(format!("bad coordinate {s:?}")));
        out.push(Point::new(coord(x)?, coord(y)?));
    }
    Ok(out)
}
