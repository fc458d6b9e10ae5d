//! The four timed workloads.
//!
//! Every mode walks the input in order: the structure under test always
//! holds a prefix of it (plus, during an update batch, a few points beyond
//! the prefix). Static rows time one full hull computation per batch.

use std::cmp::Ordering;
use std::time::Instant;

use dynhull::oracle::{static_hull, NaiveMembership};
use dynhull::{Point, Scalar};
use rand::rngs::StdRng;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};

use crate::subject::{dynamic, Subject};
use crate::{CliError, Kernel, Mode, Row, Structure};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub mode: Mode,
    pub structure: Structure,
    pub kernel: Kernel,
    /// Label for the `dist` column.
    pub dist: String,
    pub batch: usize,
    /// Seeds update order and query points.
    pub seed: u64,
}

/// Smallest power of two at which extend, update and query rows start.
const FIRST_SIZE: usize = 256;

/// One in this many query answers is checked against the oracle.
const AUDIT_STRIDE: usize = 100;

/// Drops later copies of an input point (of a value, for rank structures).
pub fn dedupe<S: Scalar>(points: &[Point<S>], rank: bool) -> Vec<Point<S>> {
    let cmp = |a: &Point<S>, b: &Point<S>| if rank { a.y.total_cmp(&b.y) } else { a.lex_cmp(b) };
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| cmp(&points[a], &points[b]).then(a.cmp(&b)));
    let mut keep = vec![true; points.len()];
    for w in order.windows(2) {
        if cmp(&points[w[0]], &points[w[1]]) == Ordering::Equal {
            keep[w[1]] = false;
        }
    }
    points.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p.clone()).collect()
}

/// Powers of two from [`FIRST_SIZE`] with room for `need` more points, then
/// the largest size that still has that room.
pub fn sizes(total: usize, need: usize) -> Vec<usize> {
    let Some(cap) = total.checked_sub(need).filter(|&c| c > 0) else {
        return Vec::new();
    };
    let mut out: Vec<usize> = std::iter::successors(Some(FIRST_SIZE), |s| s.checked_mul(2))
        .take_while(|&s| s <= cap)
        .collect();
    if out.last() != Some(&cap) {
        out.push(cap);
    }
    out
}

fn embed<S: Scalar>(points: &[Point<S>], rank: bool) -> Vec<Point<S>> {
    if !rank {
        return points.to_vec();
    }
    let mut ys: Vec<S> = points.iter().map(|p| p.y.clone()).collect();
    ys.sort_by(|a, b| a.total_cmp(b));
    ys.into_iter().enumerate().map(|(i, y)| Point::new(S::from_usize(i), y)).collect()
}

struct Runner<'a, S: Scalar> {
    cfg: &'a BenchConfig,
    input: Vec<Point<S>>,
    rows: Vec<Row>,
}

impl<'a, S: Scalar + 'static> Runner<'a, S> {
    fn is_static(&self) -> bool {
        self.cfg.structure == Structure::StaticOracle
    }

    fn rank(&self) -> bool {
        self.cfg.structure.is_rank()
    }

    fn row(&mut self, n: usize, batch: usize, wall_nanos: u64, ops_counter: u64, hull_size: usize) {
        self.rows.push(Row {
            mode: self.cfg.mode.to_string(),
            structure: self.cfg.structure.to_string(),
            kernel: self.cfg.kernel.to_string(),
            dist: self.cfg.dist.clone(),
            n,
            batch,
            wall_nanos,
            ops_counter,
            hull_size,
        });
    }

    /// Times a static hull computation over `points`.
    fn rebuild(&self, points: &[Point<S>]) -> (u64, usize) {
        let start = Instant::now();
        let hull = static_hull(points);
        let nanos = start.elapsed().as_nanos() as u64;
        (nanos, hull.vertex_count(points.len()))
    }

    fn grow(&self, s: &mut dyn Subject<S>, range: std::ops::Range<usize>) -> Result<(), CliError> {
        for p in &self.input[range] {
            s.insert(p.clone())?;
        }
        Ok(())
    }

    fn hull_size(&self, s: &dyn Subject<S>, len: usize) -> usize {
        s.hull().vertex_count(len)
    }

    fn construct(&mut self) -> Result<(), CliError> {
        let batch = self.cfg.batch;
        let total = self.input.len();
        let mut s = dynamic::<S>(self.cfg.structure);
        let mut done = 0;
        while done < total {
            let end = (done + batch).min(total);
            if self.is_static() {
                let (nanos, h) = self.rebuild(&self.input[..end]);
                self.row(end, end - done, nanos, 0, h);
            } else {
                let before = s.iterations();
                let start = Instant::now();
                self.grow(s.as_mut(), done..end)?;
                let nanos = start.elapsed().as_nanos() as u64;
                let ops = s.iterations() - before;
                let h = self.hull_size(s.as_ref(), end);
                self.row(end, end - done, nanos, ops, h);
            }
            done = end;
        }
        Ok(())
    }

    fn extend(&mut self) -> Result<(), CliError> {
        let batch = self.cfg.batch;
        let mut s = dynamic::<S>(self.cfg.structure);
        let mut held = 0;
        for n in self.checked_sizes(batch)? {
            if self.is_static() {
                let (nanos, h) = self.rebuild(&self.input[..n + batch]);
                self.row(n, batch, nanos, 0, h);
                continue;
            }
            // The last size can sit below what is held when the batch is
            // larger than the gap between sizes.
            while held > n {
                held -= 1;
                s.delete(&self.input[held])?;
            }
            self.grow(s.as_mut(), held..n)?;
            let before = s.iterations();
            let start = Instant::now();
            self.grow(s.as_mut(), n..n + batch)?;
            let nanos = start.elapsed().as_nanos() as u64;
            let ops = s.iterations() - before;
            let h = self.hull_size(s.as_ref(), n + batch);
            self.row(n, batch, nanos, ops, h);
            held = n + batch;
        }
        Ok(())
    }

    fn update(&mut self) -> Result<(), CliError> {
        let batch = self.cfg.batch;
        let dels = batch / 2;
        let ins = batch - dels;
        let mut rng = StdRng::seed_from_u64(self.cfg.seed);
        let mut s = dynamic::<S>(self.cfg.structure);
        let mut held = 0;
        for n in self.checked_sizes(ins)?.into_iter().filter(|&n| n >= dels) {
            // `Some(i)` deletes input[i]; `None` inserts the next new point.
            let mut ops: Vec<Option<usize>> = index::sample(&mut rng, n, dels).into_iter().map(Some).collect();
            ops.extend(std::iter::repeat_n(None, ins));
            ops.shuffle(&mut rng);
            let deleted: Vec<usize> = ops.iter().flatten().copied().collect();

            if self.is_static() {
                let mut gone = vec![false; n];
                for &i in &deleted {
                    gone[i] = true;
                }
                let current: Vec<Point<S>> = (0..n + ins)
                    .filter(|&i| i >= n || !gone[i])
                    .map(|i| self.input[i].clone())
                    .collect();
                let (nanos, h) = self.rebuild(&current);
                self.row(n, batch, nanos, 0, h);
                continue;
            }

            self.grow(s.as_mut(), held..n)?;
            held = n;
            let before = s.iterations();
            let start = Instant::now();
            let mut next = n;
            for op in &ops {
                match op {
                    Some(i) => s.delete(&self.input[*i])?,
                    None => {
                        s.insert(self.input[next].clone())?;
                        next += 1;
                    }
                }
            }
            let nanos = start.elapsed().as_nanos() as u64;
            let ops_count = s.iterations() - before;
            let h = self.hull_size(s.as_ref(), n - dels + ins);
            self.row(n, batch, nanos, ops_count, h);
            // Restore the prefix before growing further.
            for p in &self.input[n..n + ins] {
                s.delete(p)?;
            }
            for &i in &deleted {
                s.insert(self.input[i].clone())?;
            }
        }
        Ok(())
    }

    fn query(&mut self) -> Result<(), CliError> {
        let batch = self.cfg.batch;
        let rank = self.rank();
        let mut rng = StdRng::seed_from_u64(self.cfg.seed);
        let (lo, hi) = bounding_box(&embed(&self.input, rank));
        let queries: Vec<Point<S>> = (0..batch)
            .map(|_| Point::from_f64(rng.random_range(lo.0..=hi.0), rng.random_range(lo.1..=hi.1)))
            .collect();
        let mut s = dynamic::<S>(self.cfg.structure);
        let mut held = 0;
        for n in self.checked_sizes(0)? {
            let current = embed(&self.input[..n], rank);
            let oracle = NaiveMembership::new(&current);
            let (answers, nanos, ops, h) = if self.is_static() {
                let start = Instant::now();
                let answers: Vec<bool> = queries.iter().map(|q| oracle.contains(q)).collect();
                let nanos = start.elapsed().as_nanos() as u64;
                (answers, nanos, 0, static_hull(&current).vertex_count(n))
            } else {
                self.grow(s.as_mut(), held..n)?;
                held = n;
                let before = s.iterations();
                let start = Instant::now();
                let answers: Vec<bool> = queries.iter().map(|q| s.query(q)).collect();
                let nanos = start.elapsed().as_nanos() as u64;
                (answers, nanos, s.iterations() - before, self.hull_size(s.as_ref(), n))
            };
            for (q, &got) in queries.iter().zip(&answers).step_by(AUDIT_STRIDE) {
                if oracle.contains(q) != got {
                    let (x, y) = (q.x.format_coord(), q.y.format_coord());
                    let detail = format!("query ({x}, {y}) answered {got}, oracle says {}", !got);
                    return Err(CliError::AuditMismatch { n, detail });
                }
            }
            self.row(n, batch, nanos, ops, h);
        }
        Ok(())
    }

    fn checked_sizes(&self, need: usize) -> Result<Vec<usize>, CliError> {
        let out = sizes(self.input.len(), need);
        if out.is_empty() {
            return Err(CliError::Workload(format!(
                "{} mode with batch {need} needs more than {need} distinct input points, got {}",
                self.cfg.mode,
                self.input.len()
            )));
        }
        Ok(out)
    }
}

fn bounding_box<S: Scalar>(points: &[Point<S>]) -> ((f64, f64), (f64, f64)) {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        let (x, y) = p.to_f64();
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    if points.is_empty() {
        return ((0.0, 0.0), (0.0, 0.0));
    }
    (lo, hi)
}

/// Runs one workload on `input` and returns its rows.
pub fn run<S: Scalar + 'static>(cfg: &BenchConfig, input: &[Point<S>]) -> Result<Vec<Row>, CliError> {
    if cfg.batch == 0 {
        return Err(CliError::Workload("batch must be positive".into()));
    }
    let mut r = Runner { cfg, input: dedupe(input, cfg.structure.is_rank()), rows: Vec::new() };
    match cfg.mode {
        Mode::Construct => r.construct()?,
        Mode::Extend => r.extend()?,
        Mode::Update => r.update()?,
        Mode::Query => r.query()?,
    }
    Ok(r.rows)
}
