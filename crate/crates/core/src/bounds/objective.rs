//! The two objectives behind the lower bounds: F(x1, x2, x3), the leading
//! coefficient of c(A5, S(n1, n2, n3, n4)) / n^5 with x_i = n_i / n, and
//! f(x), the limit density of Q4 in the two-branch ternary construction
//! divided by 4!.

use std::sync::OnceLock;

use rug::Rational;

use super::poly::Poly3;

fn c(num: i64, den: i64) -> Poly3 {
    Poly3::constant(Rational::from((num, den)))
}

fn build_f() -> Poly3 {
    let [x1, x2, x3] = [0, 1, 2].map(Poly3::var);
    let one = c(1, 1);
    let x4 = &(&(&one - &x1) - &x2) - &x3;
    let x34 = &x3 + &x4;
    let p4 = |p: &Poly3| p.pow(4);
    let mixed34 = &(&x3.pow(2) * &x4.pow(2)) * &c(14, 1);

    let fifth = &(&(&x1.pow(5) + &x2.pow(5)) + &x3.pow(5)) + &x4.pow(5);
    let mut quartic = &(&x3 * &p4(&x4)) + &(&x4 * &p4(&x3));
    let x2_term = &x2 * &(&(&p4(&x3) + &p4(&x4)) + &mixed34);
    quartic = &quartic + &x2_term;
    quartic = &quartic + &(&x34 * &p4(&x2));
    let x1_inner = &(&(&(&p4(&x2) + &p4(&x3)) + &p4(&x4)) + &mixed34) + &(&(&x2.pow(2) * &x34.pow(2)) * &c(14, 1));
    quartic = &quartic + &(&x1 * &x1_inner);
    quartic = &quartic + &(&(&(&x2 + &x3) + &x4) * &p4(&x1));
    &(&fifth * &c(1, 840)) + &(&quartic * &c(1, 56))
}

/// F as an exact polynomial in (x1, x2, x3), with x4 = 1 - x1 - x2 - x3.
pub fn objective_f() -> &'static Poly3 {
    static F: OnceLock<Poly3> = OnceLock::new();
    F.get_or_init(build_f)
}

/// Coefficients of 312 f(x), constant term first.
pub const SMALL_NUMERATOR: [i64; 5] = [1, 9, -33, 48, -24];
pub const SMALL_DENOMINATOR: i64 = 312;

fn eval_coeffs(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::new(), |acc, c| acc * x + c)
}

fn small_coeffs() -> Vec<Rational> {
    SMALL_NUMERATOR
        .iter()
        .map(|&a| Rational::from((a, SMALL_DENOMINATOR)))
        .collect()
}

/// f(x) = (1 + 9x - 33x^2 + 48x^3 - 24x^4) / 312.
pub fn eval_small(x: &Rational) -> Rational {
    eval_coeffs(&small_coeffs(), x)
}

/// Coefficients of f', constant term first.
pub fn small_derivative() -> Vec<Rational> {
    small_coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| Rational::from(a * k as u32))
        .collect()
}

/// Roots of f' in increasing order.
pub const SMALL_CRITICAL_POINTS: [(i64, i64); 3] = [(1, 4), (1, 2), (3, 4)];

/// (argmax, max) of f on (0, 1). The two maximisers 1/4 and 3/4 tie; the
/// smaller is returned.
pub fn maximize_small() -> (Rational, Rational) {
    let derivative = small_derivative();
    let mut best: Option<(Rational, Rational)> = None;
    for (p, q) in SMALL_CRITICAL_POINTS {
        let x = Rational::from((p, q));
        assert_eq!(eval_coeffs(&derivative, &x), 0, "f' vanishes at {x}");
        let v = eval_small(&x);
        if best.as_ref().is_none_or(|(_, bv)| v > *bv) {
            best = Some((x, v));
        }
    }
    let (x, v) = best.expect("three critical points");
    // Interior maximum beats both ends of the interval.
    assert!(v > eval_small(&Rational::new()) && v > eval_small(&Rational::from(1)));
    (x, v)
}

/// 4! max f = 59/416.
pub fn lower_bound_q4() -> Rational {
    maximize_small().1 * 24u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn f_is_quintic_with_pinned_values() {
        let f = objective_f();
        assert_eq!(f.degree(), 5);
        assert_eq!(f.eval_rational(&[q(1, 4), q(1, 4), q(1, 4)]), q(361, 215040));
        assert_eq!(f.eval_rational(&[q(1, 10), q(1, 5), q(3, 10)]), q(8339, 4_200_000));
    }

    #[test]
    fn f_symmetric_in_x3_and_x4() {
        let f = objective_f();
        let [x1, x2, x3] = [0, 1, 2].map(Poly3::var);
        let x4 = &(&(&Poly3::constant(1) - &x1) - &x2) - &x3;
        assert_eq!(f.compose(&[x1, x2, x4]), *f);
    }

    #[test]
    fn small_objective() {
        let (x, v) = maximize_small();
        assert_eq!(x, q(1, 4));
        assert_eq!(v, q(59, 9984));
        assert!(eval_small(&q(1, 2)) < v);
        assert_eq!(eval_small(&q(3, 4)), v);
        assert_eq!(lower_bound_q4(), q(59, 416));
    }

    #[test]
    fn small_derivative_factorises() {
        // f'(x) = -(2x - 1)(4x - 3)(4x - 1) / 104
        let d = small_derivative();
        for k in -5..=5 {
            let x = q(k, 7);
            let two = Rational::from(2);
            let four = Rational::from(4);
            let fac = -(Rational::from(&two * &x) - 1u32)
                * (Rational::from(&four * &x) - 3u32)
                * (Rational::from(&four * &x) - 1u32)
                / 104u32;
            assert_eq!(eval_coeffs(&d, &x), fac);
        }
    }
}
