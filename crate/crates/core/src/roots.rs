//! Real roots and root-multiplicity patterns of monic polynomials.
//!
//! A coefficient vector `[a0, ..., a_{d-1}]` stands for `x^d + a_{d-1} x^{d-1} + ... + a0`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::composition::Composition;
use crate::error::{Error, Result};

/// Roots closer than this (relative to scale) send `root_pattern` to exact arithmetic.
const CLOSE_ROOTS: f64 = 1e-4;
/// Imaginary parts below this (relative to scale) are treated as numerical noise.
const IM_NOISE: f64 = 1e-9;
/// A conjugate pair this close to the axis is counted as two real roots by [`real_roots`].
const COUNT_IM_TOL: f64 = 1e-7;

/// Monic coefficients of `prod (x - r) * prod ((x - c)^2 + s)`.
pub fn poly_from_factors(real: &[f64], quadratics: &[(f64, f64)]) -> Vec<f64> {
    let mut p = vec![1.0];
    let mul = |p: &mut Vec<f64>, f: &[f64]| {
        let mut out = vec![0.0; p.len() + f.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        *p = out;
    };
    for &r in real {
        mul(&mut p, &[-r, 1.0]);
    }
    for &(c, s) in quadratics {
        mul(&mut p, &[c * c + s, -2.0 * c, 1.0]);
    }
    p.pop();
    p
}

pub fn eval(a: &[f64], x: f64) -> f64 {
    a.iter().rev().fold(1.0, |acc, &c| acc * x + c)
}

fn eval_complex(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(1.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots, by simultaneous Aberth iteration; if that stalls, from the
/// eigenvalues of the companion matrix.
pub fn complex_roots(a: &[f64]) -> Vec<Complex64> {
    let d = a.len();
    if d == 0 {
        return Vec::new();
    }
    if let Some(z) = aberth(a) {
        return conjugate_closed(z);
    }
    let m = DMatrix::from_fn(d, d, |r, c| {
        if c == d - 1 {
            -a[r]
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    conjugate_closed(m.complex_eigenvalues().iter().copied().collect())
}

/// Forces the root list of a real polynomial to be closed under conjugation: each root,
/// taken in order of decreasing `|Im|`, is paired with the remaining root nearest its
/// conjugate when that one is closer than the axis, and is made real otherwise.
fn conjugate_closed(mut z: Vec<Complex64>) -> Vec<Complex64> {
    z.sort_by(|a, b| b.im.abs().total_cmp(&a.im.abs()));
    let mut out = Vec::with_capacity(z.len());
    let mut used = vec![false; z.len()];
    for k in 0..z.len() {
        if used[k] {
            continue;
        }
        used[k] = true;
        let target = z[k].conj();
        let partner = (k + 1..z.len())
            .filter(|&j| !used[j])
            .min_by(|&i, &j| (z[i] - target).norm().total_cmp(&(z[j] - target).norm()))
            .filter(|&j| (z[j] - target).norm() <= z[k].im.abs());
        match partner {
            Some(j) => {
                used[j] = true;
                let re = 0.5 * (z[k].re + z[j].re);
                let im = 0.5 * (z[k].im.abs() + z[j].im.abs());
                out.push(Complex64::new(re, im));
                out.push(Complex64::new(re, -im));
            }
            None => out.push(Complex64::new(z[k].re, 0.0)),
        }
    }
    out
}

fn aberth(a: &[f64]) -> Option<Vec<Complex64>> {
    let d = a.len();
    let bound = 1.0 + a.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(0.5 * bound, std::f64::consts::TAU * k as f64 / d as f64 + 0.4))
        .collect();
    let mut done = vec![false; d];
    for _ in 0..500 {
        for k in 0..d {
            if done[k] {
                continue;
            }
            let (p, dp) = eval_complex(a, z[k]);
            // backward error: residual at the rounding level of Horner's scheme
            let r = z[k].norm();
            let size = a.iter().rev().fold(1.0, |acc, c| acc * r + c.abs());
            if p.norm() <= 8.0 * f64::EPSILON * size {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
            }
        }
        if done.iter().all(|&x| x) {
            return Some(z);
        }
    }
    None
}

fn scale_of(roots: &[Complex64]) -> f64 {
    1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Sorted real roots. Conjugate pairs within `1e-7` of the axis (relative) count as
/// two coincident real roots; this is the count used to detect wall crossings.
pub fn real_roots(a: &[f64]) -> Vec<f64> {
    let roots = complex_roots(a);
    let scale = scale_of(&roots);
    let mut out: Vec<f64> = roots
        .iter()
        .filter(|z| z.im.abs() <= COUNT_IM_TOL * scale)
        .map(|z| z.re)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Real points with multiplicity. Conjugate pairs split by less than `tol * scale` are a
/// double real root; pairs split by `[tol, 2 tol) * scale` are ambiguous.
fn real_points(roots: &[Complex64], mult: usize, tol: f64, scale: f64) -> Result<Vec<(f64, usize)>> {
    let mut out = Vec::new();
    for z in roots {
        if z.im.abs() <= IM_NOISE * scale {
            out.push((z.re, mult));
        } else if z.im > 0.0 {
            let gap = 2.0 * z.im;
            if gap < tol * scale {
                out.push((z.re, 2 * mult));
            } else if gap < 2.0 * tol * scale {
                return Err(Error::Unresolved { tol });
            }
        }
    }
    Ok(out)
}

fn cluster(mut points: Vec<(f64, usize)>, tol: f64, scale: f64) -> Result<Composition> {
    points.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut parts: Vec<usize> = Vec::new();
    let mut last: Option<f64> = None;
    for (x, m) in points {
        match last {
            Some(prev) if x - prev < tol * scale => *parts.last_mut().expect("cluster open") += m,
            Some(prev) if x - prev < 2.0 * tol * scale => return Err(Error::Unresolved { tol }),
            _ => parts.push(m),
        }
        last = Some(x);
    }
    Composition::new(parts)
}

/// The real-root multiplicity pattern, clustering roots closer than `tol * (1 + max |root|)`.
///
/// When some roots are within `1e-4` of each other (relative), multiplicities come from an
/// exact square-free factorization of the given coefficients instead of eigenvalues alone.
pub fn root_pattern(a: &[f64], tol: f64) -> Result<Composition> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::InvalidTolerance(tol));
    }
    if a.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidPath("coefficients must be finite".into()));
    }
    let raw = complex_roots(a);
    let scale = scale_of(&raw);
    let close = raw
        .iter()
        .enumerate()
        .any(|(k, z)| raw[k + 1..].iter().any(|w| (z - w).norm() < CLOSE_ROOTS * scale));
    let points = if close {
        let mut points = Vec::new();
        for (mult, factor) in square_free_factors(a) {
            let monic: Vec<f64> = factor[..factor.len() - 1]
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect();
            let roots: Vec<Complex64> = complex_roots(&monic);
            points.extend(real_points(&roots, mult, tol, scale)?);
        }
        points
    } else {
        real_points(&raw, 1, tol, scale)?
    };
    cluster(points, tol, scale)
}

type QPoly = Vec<BigRational>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn make_monic(p: QPoly) -> QPoly {
    let p = trim(p);
    match p.last().cloned() {
        Some(lead) => p.into_iter().map(|c| c / &lead).collect(),
        None => p,
    }
}

fn derivative(p: &QPoly) -> QPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect(),
    )
}

fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)).collect())
}

fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let b = trim(b.clone());
    let lead = b.last().expect("division by the zero polynomial").clone();
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let coef = r.last().expect("nonempty") / &lead;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &coef * c;
        }
        q[shift] = coef;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    make_monic(a)
}

/// Yun's algorithm over the rationals: monic square-free `f_k` with `P = prod f_k^k`,
/// skipping constant factors. The input coefficients are taken exactly.
pub fn square_free_factors(a: &[f64]) -> Vec<(usize, QPoly)> {
    let mut p: QPoly = a
        .iter()
        .map(|&c| BigRational::from_float(c).expect("finite coefficient"))
        .collect();
    p.push(BigRational::one());
    let dp = derivative(&p);
    if dp.is_empty() {
        return Vec::new();
    }
    let g = gcd(&p, &dp);
    let mut b = divrem(&p, &g).0;
    let c = divrem(&dp, &g).0;
    let mut dd = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut k = 1;
    while b.len() > 1 {
        let f = gcd(&b, &dd);
        let nb = divrem(&b, &f).0;
        let nc = divrem(&dd, &f).0;
        dd = sub(&nc, &derivative(&nb));
        if f.len() > 1 {
            out.push((k, make_monic(f)));
        }
        b = nb;
        k += 1;
    }
    out
}
