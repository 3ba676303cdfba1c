//! The degree-16 integer polynomial whose root is 5! max F, and a numerical
//! check that a candidate value is that root.

use std::sync::OnceLock;

use rug::{Float, Integer};

use super::optimize::digits_to_bits;
use crate::error::{Error, Result};

const DATA: &str = include_str!("../../data/a5_minpoly.txt");

/// Digits demanded of a candidate before it is checked.
pub const MIN_CANDIDATE_DIGITS: u32 = 40;
/// A candidate passes when |p| / |p'| is below this.
pub const NEWTON_TOLERANCE: f64 = 1e-25;
/// Half-width of the sign-change bracket.
pub const BRACKET: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    /// Coefficient of x^k at index k.
    coeffs: Vec<Integer>,
}

fn parse(text: &str) -> MinimalPolynomial {
    let coeffs = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse::<Integer>().expect("integer coefficient"))
        .collect();
    MinimalPolynomial { coeffs }
}

impl MinimalPolynomial {
    pub fn get() -> &'static MinimalPolynomial {
        static P: OnceLock<MinimalPolynomial> = OnceLock::new();
        P.get_or_init(|| parse(DATA))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Integer] {
        &self.coeffs
    }

    /// p(x) by Horner's rule at `prec` bits.
    pub fn eval(&self, x: &Float, prec: u32) -> Float {
        let x = Float::with_val(prec, x);
        self.coeffs
            .iter()
            .rev()
            .fold(Float::with_val(prec, 0), |acc, c| acc * &x + c)
    }

    pub fn eval_derivative(&self, x: &Float, prec: u32) -> Float {
        let x = Float::with_val(prec, x);
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Float::with_val(prec, 0), |acc, (k, c)| {
                acc * &x + Integer::from(c * k as u32)
            })
    }
}

#[derive(Clone, Debug)]
pub struct MinpolyReport {
    /// |p(x)| / |p'(x)|, the length of the Newton step from x.
    pub newton_residual: Float,
    pub sign_below: i32,
    pub sign_above: i32,
    pub sign_change: bool,
    pub passes: bool,
}

fn sign(x: &Float) -> i32 {
    x.cmp0().map_or(0, |o| o as i32)
}

/// Checks that `candidate` is a root of the stored polynomial.
pub fn verify_minimal_polynomial(candidate: &Float) -> Result<MinpolyReport> {
    let needed = digits_to_bits(MIN_CANDIDATE_DIGITS) - 64;
    if candidate.prec() < needed {
        return Err(Error::InsufficientPrecision {
            bits: candidate.prec(),
            needed,
        });
    }
    let p = MinimalPolynomial::get();
    // Coefficients reach 69 digits; leave room for the cancellation.
    let prec = (candidate.prec() + 300).max(512);
    let value = p.eval(candidate, prec);
    let slope = p.eval_derivative(candidate, prec);
    let newton_residual = Float::with_val(prec, &value / &slope).abs();
    let delta = Float::with_val(prec, BRACKET);
    let below = p.eval(&Float::with_val(prec, candidate - &delta), prec);
    let above = p.eval(&Float::with_val(prec, candidate + &delta), prec);
    let (sign_below, sign_above) = (sign(&below), sign(&above));
    let sign_change = sign_below * sign_above < 0;
    Ok(MinpolyReport {
        passes: sign_change && newton_residual < NEWTON_TOLERANCE,
        newton_residual,
        sign_below,
        sign_above,
        sign_change,
    })
}
