//! Maximisation of F over the open simplex: projected gradient ascent from
//! quasi-random starts in f64, then Newton's method on the exact gradient at
//! high precision.

use rug::ops::Pow;
use rug::Float;

use super::objective::objective_f;
use super::poly::{Poly3, PolyF64};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OptimizeConfig {
    /// Number of Halton starts.
    pub starts: usize,
    /// Decimal digits kept while polishing.
    pub digits: u32,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        OptimizeConfig {
            starts: 1024,
            digits: 50,
        }
    }
}

/// Working precision in bits for `digits` decimal digits plus guard bits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64
}

/// A polished local maximum of F, reported with the x3 <-> x4 mirror image.
#[derive(Clone, Debug)]
pub struct FMaximum {
    /// The maximiser with the larger x3.
    pub argmax: [Float; 3],
    pub mirror: [Float; 3],
    pub max: Float,
    /// Largest |dF/dx_i| at `argmax`.
    pub gradient_residual: Float,
    /// Hessian at `argmax` is negative definite.
    pub negative_definite: bool,
    pub digits: u32,
    pub starts: usize,
    /// Ascent endpoints within 1e-6 of the reported basin or its mirror.
    pub starts_in_basin: usize,
}

fn halton(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// The i-th quasi-random point of the simplex, from sorted Halton coordinates.
pub fn simplex_start(i: usize) -> [f64; 3] {
    let mut u = [halton(i + 1, 2), halton(i + 1, 3), halton(i + 1, 5)];
    u.sort_by(f64::total_cmp);
    [u[0], u[1] - u[0], u[2] - u[1]]
}

/// Euclidean projection onto {x >= 0, x1 + x2 + x3 <= 1}.
fn project(x: [f64; 3]) -> [f64; 3] {
    let clipped = x.map(|v| v.max(0.0));
    if clipped.iter().sum::<f64>() <= 1.0 {
        return clipped;
    }
    // Projection onto the face x1 + x2 + x3 = 1, x >= 0.
    let mut s = x;
    s.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, v) in s.iter().enumerate() {
        cum += v;
        let t = (cum - 1.0) / (k + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    x.map(|v| (v - theta).max(0.0))
}

struct F64Objective {
    value: PolyF64,
    gradient: [PolyF64; 3],
}

impl F64Objective {
    fn new(f: &Poly3) -> Self {
        F64Objective {
            value: f.to_f64(),
            gradient: f.gradient().map(|g| g.to_f64()),
        }
    }

    fn grad(&self, x: &[f64; 3]) -> [f64; 3] {
        [0, 1, 2].map(|i| self.gradient[i].eval(x))
    }
}

/// Projected gradient ascent with Armijo backtracking.
fn ascend(obj: &F64Objective, mut x: [f64; 3]) -> ([f64; 3], f64) {
    let mut fx = obj.value.eval(&x);
    let mut step: f64 = 1.0;
    for _ in 0..5000 {
        let g = obj.grad(&x);
        step = (step * 2.0).min(1e6);
        let mut moved = None;
        for _ in 0..80 {
            let y = project([0, 1, 2].map(|i| x[i] + step * g[i]));
            let fy = obj.value.eval(&y);
            let ascent: f64 = (0..3).map(|i| g[i] * (y[i] - x[i])).sum();
            if fy >= fx + 1e-4 * ascent {
                moved = Some((y, fy));
                break;
            }
            step /= 2.0;
        }
        let Some((y, fy)) = moved else { break };
        let delta = (0..3).map(|i| (y[i] - x[i]).abs()).fold(0.0, f64::max);
        x = y;
        fx = fy;
        if delta < 1e-14 {
            break;
        }
    }
    (x, fx)
}

fn run_starts(obj: &F64Objective, starts: usize) -> Vec<([f64; 3], f64)> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..starts)
            .into_par_iter()
            .map(|i| ascend(obj, simplex_start(i)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..starts).map(|i| ascend(obj, simplex_start(i))).collect()
    }
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn solve3(mut a: [[Float; 3]; 3], mut b: [Float; 3]) -> Option<[Float; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].clone().abs().total_cmp(&a[j][col].clone().abs()))?;
        if a[pivot][col].is_zero() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let factor = Float::with_val(a[row][col].prec(), &a[row][col] / &a[col][col]);
            for k in col..3 {
                let sub = Float::with_val(factor.prec(), &factor * &a[col][k]);
                a[row][k] -= sub;
            }
            let sub = Float::with_val(factor.prec(), &factor * &b[col]);
            b[row] -= sub;
        }
    }
    let mut x = b.clone();
    for row in (0..3).rev() {
        for k in row + 1..3 {
            let sub = Float::with_val(x[k].prec(), &a[row][k] * &x[k]);
            x[row] -= sub;
        }
        x[row] /= &a[row][row];
    }
    Some(x)
}

fn max_abs(v: &[Float; 3]) -> Float {
    v.iter()
        .map(|g| g.clone().abs())
        .fold(Float::with_val(v[0].prec(), 0), |a, b| if b > a { b } else { a })
}

/// Newton's method on grad F = 0 at `bits` of precision.
fn polish(f: &Poly3, start: [f64; 3], bits: u32, tol: &Float) -> Result<([Float; 3], Float)> {
    let gradient = f.gradient();
    let hessian = f.hessian();
    let mut x = start.map(|v| Float::with_val(bits, v));
    let mut residual = Float::with_val(bits, f64::INFINITY);
    for _ in 0..200 {
        let g = [0, 1, 2].map(|i| gradient[i].eval_float(&x, bits));
        residual = max_abs(&g);
        if residual < *tol {
            return Ok((x, residual));
        }
        let h = [0, 1, 2].map(|i| [0, 1, 2].map(|j| hessian[i][j].eval_float(&x, bits)));
        let Some(dx) = solve3(h, g) else { break };
        for i in 0..3 {
            x[i] -= &dx[i];
        }
    }
    Err(Error::NoConvergence {
        residual: residual.to_f64(),
    })
}

fn negative_definite(f: &Poly3, x: &[Float; 3], bits: u32) -> bool {
    let h = f.hessian().map(|row| row.map(|p| p.eval_float(x, bits).to_f64()));
    let m1 = h[0][0];
    let m2 = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    let m3 = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
        + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    m1 < 0.0 && m2 > 0.0 && m3 < 0.0
}

fn mirror_of(x: &[Float; 3]) -> [Float; 3] {
    let prec = x[0].prec();
    let x4 = Float::with_val(prec, 1) - &x[0] - &x[1] - &x[2];
    [x[0].clone(), x[1].clone(), x4]
}

/// The best local maximum of F found from `config.starts` starts, polished
/// to `config.digits` digits.
pub fn maximize_objective_f(config: OptimizeConfig) -> Result<FMaximum> {
    if config.starts == 0 {
        return Err(Error::InvalidConstruction("at least one start is required".into()));
    }
    let f = objective_f();
    let obj = F64Objective::new(f);
    let results = run_starts(&obj, config.starts);
    // First index wins ties, so the reduction does not depend on scheduling.
    let (best, _) = results
        .iter()
        .fold(None::<&([f64; 3], f64)>, |acc, r| match acc {
            Some(a) if a.1 >= r.1 => Some(a),
            _ => Some(r),
        })
        .copied()
        .expect("nonempty");

    let bits = digits_to_bits(config.digits);
    let tol = Float::with_val(bits, 10u32).pow(5 - config.digits as i32);
    let (x, residual) = polish(f, best, bits, &tol)?;
    let mirror = mirror_of(&x);
    let (argmax, mirror) = if mirror[2] > x[2] { (mirror, x) } else { (x, mirror) };
    let near = |p: &[f64; 3], q: &[Float; 3]| (0..3).all(|i| (p[i] - q[i].to_f64()).abs() < 1e-6);
    let starts_in_basin = results
        .iter()
        .filter(|(p, _)| near(p, &argmax) || near(p, &mirror))
        .count();
    Ok(FMaximum {
        max: f.eval_float(&argmax, bits),
        negative_definite: negative_definite(f, &argmax, bits),
        gradient_residual: residual,
        argmax,
        mirror,
        digits: config.digits,
        starts: config.starts,
        starts_in_basin,
    })
}

/// 5! max F, with the maximum it came from.
pub fn lower_bound_a5(config: OptimizeConfig) -> Result<(Float, FMaximum)> {
    let m = maximize_objective_f(config)?;
    let bound = Float::with_val(m.max.prec(), &m.max * 120u32);
    Ok((bound, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starts_lie_in_the_simplex() {
        for i in 0..500 {
            let s = simplex_start(i);
            assert!(s.iter().all(|&v| v >= 0.0) && s.iter().sum::<f64>() <= 1.0);
        }
    }

    #[test]
    fn projection() {
        assert_eq!(project([0.2, 0.3, 0.1]), [0.2, 0.3, 0.1]);
        assert_eq!(project([-1.0, 0.5, 0.2]), [0.0, 0.5, 0.2]);
        let p = project([1.0, 1.0, 1.0]);
        assert!(p.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15));
        let p = project([2.0, 0.0, -1.0]);
        assert_eq!(p, [1.0, 0.0, 0.0]);
    }

    #[test]
    fn gaussian_elimination() {
        let m = |v: f64| Float::with_val(128, v);
        let a = [
            [m(0.0), m(2.0), m(1.0)],
            [m(1.0), m(1.0), m(0.0)],
            [m(3.0), m(0.0), m(1.0)],
        ];
        let x = solve3(a, [m(7.0), m(3.0), m(6.0)]).unwrap();
        for (xi, e) in x.iter().zip([1.0, 2.0, 3.0]) {
            assert!((xi.to_f64() - e).abs() < 1e-30);
        }
    }

    #[test]
    fn small_run_finds_the_maximum() {
        let m = maximize_objective_f(OptimizeConfig { starts: 64, digits: 30 }).unwrap();
        assert!((m.max.to_f64() - 0.002058929182).abs() < 1e-12);
        assert!(m.argmax[2] > m.mirror[2]);
        assert!(m.negative_definite);
    }
}
