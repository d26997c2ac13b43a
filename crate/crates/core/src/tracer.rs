//! Loops of monic polynomials and their wall-crossing words.
//!
//! A loop is a closed polygon in coefficient space: consecutive samples are joined
//! by straight segments and the last sample is joined back to the first. Walls are
//! detected through jumps of the real-root count, located by bisection.

use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::roots::{poly_from_factors, real_roots, root_pattern};
use crate::word::{base_cell, Letter, Sign, Word};

/// Crossings are refined until the parameter bracket is this narrow.
const BISECTION_WIDTH: f64 = 1e-12;
/// Segments whose count jump is not 2 are halved at most this many times.
const MAX_SUBDIVISION: usize = 30;
/// The merging pair must be this much closer than any other two adjacent roots.
const SEPARATION_RATIO: f64 = 1e-2;

#[derive(Deserialize)]
struct RawPath {
    d: usize,
    samples: Vec<Vec<f64>>,
}

/// A closed sampled loop `x^d + a_{d-1} x^{d-1} + ... + a0`; samples are `[a0, ..., a_{d-1}]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPath")]
pub struct CoefficientPath {
    d: usize,
    samples: Vec<Vec<f64>>,
}

impl TryFrom<RawPath> for CoefficientPath {
    type Error = Error;

    fn try_from(raw: RawPath) -> Result<Self> {
        CoefficientPath::new(raw.d, raw.samples)
    }
}

impl CoefficientPath {
    pub fn new(d: usize, samples: Vec<Vec<f64>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidPath("degree must be positive".into()));
        }
        if samples.len() < 3 {
            return Err(Error::InvalidPath(format!("need at least 3 samples, got {}", samples.len())));
        }
        for (k, s) in samples.iter().enumerate() {
            if s.len() != d {
                return Err(Error::InvalidPath(format!("sample {k} has {} coefficients, expected {d}", s.len())));
            }
            if s.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidPath(format!("sample {k} is not finite")));
            }
        }
        Ok(CoefficientPath { d, samples })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    /// Number of segments, counting the closing one.
    pub fn segments(&self) -> usize {
        self.samples.len()
    }

    /// The same loop traversed backwards from the same base sample.
    pub fn reversed(&self) -> CoefficientPath {
        let mut samples = vec![self.samples[0].clone()];
        samples.extend(self.samples[1..].iter().rev().cloned());
        CoefficientPath { d: self.d, samples }
    }

    /// Runs `self` and then `other`. Both loops should start at the same base sample.
    pub fn concat(&self, other: &CoefficientPath) -> Result<CoefficientPath> {
        if self.d != other.d {
            return Err(Error::InvalidPath(format!("degrees differ: {} and {}", self.d, other.d)));
        }
        let mut samples = self.samples.clone();
        samples.extend(other.samples.iter().cloned());
        Ok(CoefficientPath { d: self.d, samples })
    }

    /// Point at parameter `t` in `[0, 1]` along segment `seg`.
    pub fn at(&self, seg: usize, t: f64) -> Vec<f64> {
        let a = &self.samples[seg];
        let b = &self.samples[(seg + 1) % self.samples.len()];
        lerp(a, b, t)
    }
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrossingEvent {
    pub segment: usize,
    /// Refined crossing parameter within the segment.
    pub t: f64,
    pub i: usize,
    pub j: usize,
    pub sign: Sign,
}

impl CrossingEvent {
    pub fn letter(&self) -> Letter {
        Letter::new(self.i, self.j, self.sign)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceOptions {
    /// Relative root-clustering tolerance for the sample checks.
    pub tol: f64,
    /// Return the word of crossings as recorded, without free reduction.
    pub raw: bool,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions { tol: 1e-8, raw: false }
    }
}

struct Scanner<'a> {
    path: &'a CoefficientPath,
    seg: usize,
}

impl Scanner<'_> {
    fn count(&self, t: f64) -> usize {
        real_roots(&self.path.at(self.seg, t)).len()
    }

    fn not_generic(&self) -> Error {
        Error::NotGeneric { segment: self.seg }
    }

    fn scan(&self, lo: (f64, usize), hi: (f64, usize), depth: usize, out: &mut Vec<CrossingEvent>) -> Result<()> {
        match hi.1.abs_diff(lo.1) {
            0 => Ok(()),
            2 => {
                out.push(self.refine(lo, hi)?);
                Ok(())
            }
            _ if depth >= MAX_SUBDIVISION => Err(self.not_generic()),
            _ => {
                let t = 0.5 * (lo.0 + hi.0);
                let mid = (t, self.count(t));
                self.scan(lo, mid, depth + 1, out)?;
                self.scan(mid, hi, depth + 1, out)
            }
        }
    }

    fn refine(&self, (mut lo, clo): (f64, usize), (mut hi, chi): (f64, usize)) -> Result<CrossingEvent> {
        while hi - lo > BISECTION_WIDTH {
            let t = 0.5 * (lo + hi);
            match self.count(t) {
                c if c == clo => lo = t,
                c if c == chi => hi = t,
                _ => return Err(self.not_generic()),
            }
        }
        let (sign, t_more) = if chi > clo { (Sign::Plus, hi) } else { (Sign::Minus, lo) };
        let roots = real_roots(&self.path.at(self.seg, t_more));
        let mut gaps: Vec<(f64, usize)> = roots.windows(2).enumerate().map(|(k, w)| (w[1] - w[0], k)).collect();
        gaps.sort_by(|x, y| x.0.total_cmp(&y.0));
        let Some(&(closest, below)) = gaps.first() else {
            return Err(self.not_generic());
        };
        if gaps.get(1).is_some_and(|&(next, _)| closest > SEPARATION_RATIO * next) {
            return Err(self.not_generic());
        }
        Ok(CrossingEvent {
            segment: self.seg,
            t: 0.5 * (lo + hi),
            i: below,
            j: roots.len() - below - 2,
            sign,
        })
    }
}

/// All wall crossings of the loop, ordered by `(segment, t)`.
pub fn crossings(path: &CoefficientPath, tol: f64) -> Result<Vec<CrossingEvent>> {
    let base = Composition::ones(base_cell(path.d));
    let start = root_pattern(&path.samples[0], tol)?;
    if start != base {
        return Err(Error::BaseCondition(format!(
            "first sample has root pattern {start}, expected {base}"
        )));
    }
    for (k, s) in path.samples.iter().enumerate().skip(1) {
        if root_pattern(s, tol)?.reduced_norm() >= 2 {
            return Err(Error::NotGeneric { segment: k });
        }
    }
    let counts: Vec<usize> = path.samples.iter().map(|s| real_roots(s).len()).collect();
    let n = path.segments();
    let mut events = Vec::new();
    for seg in 0..n {
        let scanner = Scanner { path, seg };
        scanner.scan((0.0, counts[seg]), (1.0, counts[(seg + 1) % n]), 0, &mut events)?;
    }
    Ok(events)
}

/// The admissible word of the loop: reduced unless `opts.raw` is set.
pub fn trace(path: &CoefficientPath, opts: &TraceOptions) -> Result<Word> {
    let raw: Word = crossings(path, opts.tol)?.iter().map(CrossingEvent::letter).collect();
    Ok(if opts.raw { raw } else { raw.reduce() })
}

/// Distance of a fresh real pair from its centre, before it moves apart.
const DELTA: f64 = 0.1;
/// The quadratic term runs from `DELTA^2` to `-OVERSHOOT * DELTA^2`, so the crossing
/// sits at an irrational fraction of the move and never on a sample.
const OVERSHOOT: f64 = 0.618_033_988_749_894_8;

#[derive(Clone)]
struct Config {
    real: Vec<f64>,
    /// `(c, s)` for the factor `(x - c)^2 + s`.
    pairs: Vec<(f64, f64)>,
}

impl Config {
    fn canonical_real(n: usize) -> Vec<f64> {
        (0..n).map(|k| k as f64 - 0.5 * (n as f64 - 1.0)).collect()
    }

    fn canonical_pair(k: usize) -> (f64, f64) {
        let h = 1.0 + 0.5 * k as f64;
        (0.0, h * h)
    }

    fn canonical(n: usize, m: usize) -> Config {
        Config {
            real: Self::canonical_real(n),
            pairs: (0..m).map(Self::canonical_pair).collect(),
        }
    }

    fn coeffs(&self) -> Vec<f64> {
        poly_from_factors(&self.real, &self.pairs)
    }
}

struct Builder {
    samples: Vec<Vec<f64>>,
    pieces: usize,
}

impl Builder {
    /// Moves in a straight line to `next`; only one factor changes per call.
    fn go(&mut self, next: &Config, pieces: usize) {
        let from = self.samples.last().expect("path has a start").clone();
        let to = next.coeffs();
        for k in 1..=pieces {
            self.samples.push(lerp(&from, &to, k as f64 / pieces as f64));
        }
    }

    /// Slides real roots to the canonical positions one at a time without any overtaking.
    fn settle(&mut self, cfg: &mut Config) {
        let target = Config::canonical_real(cfg.real.len());
        let left = (0..cfg.real.len()).filter(|&k| target[k] < cfg.real[k]);
        let right = (0..cfg.real.len()).rev().filter(|&k| target[k] > cfg.real[k]);
        let order: Vec<usize> = left.chain(right).collect();
        for k in order {
            cfg.real[k] = target[k];
            self.go(cfg, 1);
        }
    }

    fn cross_up(&mut self, cfg: &mut Config, i: usize) {
        let n = cfg.real.len();
        let g = match (n, i) {
            (0, _) => 0.0,
            (_, 0) => cfg.real[0] - 0.5,
            (_, i) if i == n => cfg.real[n - 1] + 0.5,
            (_, i) => 0.5 * (cfg.real[i - 1] + cfg.real[i]),
        };
        let last = cfg.pairs.len() - 1;
        cfg.pairs[last] = (g, DELTA * DELTA);
        self.go(cfg, 1);
        cfg.pairs[last] = (g, -OVERSHOOT * DELTA * DELTA);
        self.go(cfg, self.pieces);
        cfg.pairs.pop();
        let e = DELTA * OVERSHOOT.sqrt();
        cfg.real.splice(i..i, [g - e, g + e]);
    }

    fn cross_down(&mut self, cfg: &mut Config, i: usize) {
        let g = 0.5 * (cfg.real[i] + cfg.real[i + 1]);
        let e = DELTA * OVERSHOOT.sqrt();
        cfg.real[i] = g - e;
        self.go(cfg, 1);
        cfg.real[i + 1] = g + e;
        self.go(cfg, 1);
        cfg.real.drain(i..i + 2);
        cfg.pairs.push((g, DELTA * DELTA));
        self.go(cfg, self.pieces);
        let k = cfg.pairs.len() - 1;
        cfg.pairs[k] = Config::canonical_pair(k);
        self.go(cfg, 1);
    }
}

/// A loop realizing the reduced admissible word `w`, with `samples_per_letter` samples
/// across each wall crossing. Between crossings, real roots rest at evenly spaced
/// positions and complex pairs sit above 0.
pub fn synthesize(w: &Word, d: usize, samples_per_letter: usize) -> Result<CoefficientPath> {
    w.validate(d)?;
    if !w.is_reduced() {
        return Err(Error::Word(format!("word {w} is not reduced")));
    }
    if !w.is_admissible(d)? {
        return Err(Error::Word(format!("word {w} is not admissible in degree {d}")));
    }
    if samples_per_letter < 2 {
        return Err(Error::InvalidPath("samples_per_letter must be at least 2".into()));
    }
    let n0 = base_cell(d);
    let mut cfg = Config::canonical(n0, (d - n0) / 2);
    let start = cfg.coeffs();
    let mut b = Builder { samples: vec![start.clone()], pieces: samples_per_letter };
    for l in w.letters() {
        match l.sign {
            Sign::Plus => b.cross_up(&mut cfg, l.i),
            Sign::Minus => b.cross_down(&mut cfg, l.i),
        }
        b.settle(&mut cfg);
    }
    let mut samples = b.samples;
    if samples.len() > 1 {
        let end = samples.pop().expect("nonempty");
        debug_assert!(end.iter().zip(&start).all(|(x, y)| (x - y).abs() < 1e-9));
    }
    while samples.len() < 3 {
        samples.push(start.clone());
    }
    CoefficientPath::new(d, samples)
}

/// Points `(psi, x)` with `x` a real root at loop parameter `psi` in `[0, 1)`;
/// each segment is sampled `resolution` times.
pub fn export_zero_locus(path: &CoefficientPath, resolution: usize) -> Vec<(f64, f64)> {
    let n = path.segments();
    let resolution = resolution.max(1);
    let mut out = Vec::new();
    for seg in 0..n {
        for k in 0..resolution {
            let t = k as f64 / resolution as f64;
            let psi = (seg as f64 + t) / n as f64;
            out.extend(real_roots(&path.at(seg, t)).into_iter().map(|x| (psi, x)));
        }
    }
    out
}

/// CSV with header `psi,x`.
pub fn zero_locus_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("psi,x\n");
    for (psi, x) in points {
        out.push_str(&format!("{psi},{x}\n"));
    }
    out
}
