//! Exact polynomials in three variables with rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Float, Rational};

/// Exponents of (x1, x2, x3).
pub type Monomial = [u32; 3];

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly3 {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3::default()
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        let mut p = Poly3::zero();
        p.add_term([0, 0, 0], c.into());
        p
    }

    /// The variable x_{i+1}.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        let mut p = Poly3::zero();
        p.add_term(e, Rational::from(1));
        p
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> Poly3 {
        (0..k).fold(Poly3::constant(1), |acc, _| &acc * self)
    }

    pub fn derivative(&self, i: usize) -> Poly3 {
        let mut out = Poly3::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = *e;
                d[i] -= 1;
                out.add_term(d, Rational::from(c * e[i]));
            }
        }
        out
    }

    pub fn gradient(&self) -> [Poly3; 3] {
        [self.derivative(0), self.derivative(1), self.derivative(2)]
    }

    pub fn hessian(&self) -> [[Poly3; 3]; 3] {
        let g = self.gradient();
        [0, 1, 2].map(|i| [0, 1, 2].map(|j| g[i].derivative(j)))
    }

    /// Substitutes polynomials for the three variables.
    pub fn compose(&self, args: &[Poly3; 3]) -> Poly3 {
        let mut out = Poly3::zero();
        for (e, c) in &self.terms {
            let term = &(&args[0].pow(e[0]) * &args[1].pow(e[1])) * &args[2].pow(e[2]);
            out = &out + &(&term * &Poly3::constant(c.clone()));
        }
        out
    }

    pub fn eval_rational(&self, x: &[Rational; 3]) -> Rational {
        let mut acc = Rational::new();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_float(&self, x: &[Float; 3], prec: u32) -> Float {
        let mut acc = Float::with_val(prec, 0);
        for (e, c) in &self.terms {
            let mut t = Float::with_val(prec, c);
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= Float::with_val(prec, xi.pow(k));
                }
            }
            acc += t;
        }
        acc
    }

    /// A fast f64 evaluator with the coefficients rounded once. Every
    /// exponent must be below [`PolyF64::MAX_EXP`].
    pub fn to_f64(&self) -> PolyF64 {
        let max_exp = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0) as usize;
        assert!(max_exp < PolyF64::MAX_EXP, "degree too high for the f64 evaluator");
        PolyF64 {
            terms: self.terms.iter().map(|(e, c)| (*e, c.to_f64())).collect(),
            max_exp,
        }
    }
}

impl Add for &Poly3 {
    type Output = Poly3;
    fn add(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: &Poly3) -> Poly3 {
        self + &(-rhs)
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(e, c)| (*e, Rational::from(-c))).collect(),
        }
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, Rational::from(ca * cb));
            }
        }
        out
    }
}

/// [`Poly3`] with f64 coefficients, for the multi-start search.
#[derive(Clone, Debug)]
pub struct PolyF64 {
    terms: Vec<(Monomial, f64)>,
    max_exp: usize,
}

impl PolyF64 {
    pub const MAX_EXP: usize = 8;

    pub fn eval(&self, x: &[f64; 3]) -> f64 {
        let mut table = [[1.0f64; Self::MAX_EXP]; 3];
        for (row, &xi) in table.iter_mut().zip(x) {
            for k in 1..=self.max_exp {
                row[k] = row[k - 1] * xi;
            }
        }
        self.terms
            .iter()
            .map(|(e, c)| c * table[0][e[0] as usize] * table[1][e[1] as usize] * table[2][e[2] as usize])
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn algebra() {
        let x = Poly3::var(0);
        let y = Poly3::var(1);
        let s = &x + &y;
        let sq = s.pow(2);
        // (x + y)^2 - x^2 - y^2 = 2xy
        let two_xy = &(&sq - &x.pow(2)) - &y.pow(2);
        assert_eq!(two_xy, &Poly3::constant(2) * &(&x * &y));
        assert_eq!(sq.degree(), 2);
        assert_eq!(sq.derivative(0), &Poly3::constant(2) * &s);
        assert_eq!((&x - &x), Poly3::zero());
    }

    #[test]
    fn evaluation_routes_agree() {
        let p = &(&Poly3::var(0).pow(3) * &Poly3::var(2)) - &Poly3::constant(q(1, 3));
        let r = [q(1, 2), q(1, 5), q(2, 3)];
        assert_eq!(p.eval_rational(&r), q(1, 12) - q(1, 3));
        let f = r.clone().map(|v| Float::with_val(200, &v));
        let diff = p.eval_float(&f, 200) - Float::with_val(200, &p.eval_rational(&r));
        assert!(diff.abs() < 1e-50);
        let v = p.to_f64().eval(&[0.5, 0.2, 2.0 / 3.0]);
        assert!((v - (1.0 / 12.0 - 1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn composition() {
        let x = Poly3::var(0);
        let one_minus = &Poly3::constant(1) - &Poly3::var(0);
        let args = [one_minus.clone(), Poly3::var(1), Poly3::var(2)];
        assert_eq!(x.pow(2).compose(&args), one_minus.pow(2));
    }
}
