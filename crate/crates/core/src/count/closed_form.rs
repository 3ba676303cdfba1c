//! Star and Q_k counts in complete d-ary trees.

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::binomial;

fn pow(d: usize, e: u32) -> Integer {
    Integer::from(d).pow(e)
}

/// c(S_k, CD^d_h) = C(d, k) (d^{kh} - d^h) / (d^k - d), for d >= 2, k >= 2.
pub fn count_sk_complete(d: usize, k: usize, h: u32) -> Integer {
    assert!(d >= 2 && k >= 2, "need d >= 2 and k >= 2");
    let k32 = k as u32;
    let num = pow(d, k32 * h) - pow(d, h);
    let den = pow(d, k32) - d;
    let (q, r) = num.div_rem(den);
    debug_assert_eq!(r, 0);
    binomial(d, k) * q
}

/// c(Q_k, CD^d_h) in closed form, for d >= 2, k >= 3, h >= 1.
pub fn count_qk_complete(d: usize, k: usize, h: u32) -> Integer {
    assert!(d >= 2 && k >= 3 && h >= 1, "need d >= 2, k >= 3, h >= 1");
    let k1 = (k - 1) as u32;
    let dk1 = pow(d, k1);
    let lead = Rational::from((Integer::from(d - 1) * binomial(d, k - 1), Integer::from(&dk1 - d)));
    let first = Rational::from((pow(d, k1 * h) - &dk1, dk1 - 1u32));
    let second = Rational::from((pow(d, h) - d, d - 1));
    let value = lead * pow(d, h) * (first - second);
    assert!(*value.denom() == 1, "closed form is integral");
    value.into_numer_denom().0
}

/// The same count via c(Q_k, CD^d_h) = d c(Q_k, CD^d_{h-1})
/// + 2 C(d, 2) d^{h-1} c(S_{k-1}, CD^d_{h-1}), starting from zero at h = 1.
pub fn count_qk_complete_recursive(d: usize, k: usize, h: u32) -> Integer {
    assert!(d >= 2 && k >= 3 && h >= 1, "need d >= 2, k >= 3, h >= 1");
    let mut q = Integer::new();
    for level in 2..=h {
        let cross = Integer::from(2) * binomial(d, 2) * pow(d, level - 1) * count_sk_complete(d, k - 1, level - 1);
        q = q * d + cross;
    }
    q
}

/// lim_h γ(Q_k, CD^d_h) = k! (d-1) C(d, k-1) / ((d^{k-1} - d)(d^{k-1} - 1)).
pub fn qk_complete_limit(d: usize, k: usize) -> Rational {
    assert!(d >= 2 && k >= 3, "need d >= 2 and k >= 3");
    let dk1 = pow(d, (k - 1) as u32);
    let num = Integer::from(Integer::factorial(k as u32)) * (d - 1) * binomial(d, k - 1);
    let den = Integer::from(&dk1 - d) * (dk1 - 1u32);
    Rational::from((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_values() {
        assert_eq!(count_sk_complete(3, 3, 1), 1);
        assert_eq!(count_sk_complete(3, 3, 2), 30);
        for h in 0..6 {
            assert_eq!(count_sk_complete(2, 3, h), 0);
        }
        assert_eq!(count_sk_complete(3, 2, 0), 0);
    }

    #[test]
    fn qk_values() {
        for d in 2..6 {
            for k in 3..6 {
                assert_eq!(count_qk_complete(d, k, 1), 0, "d={d} k={k}");
            }
        }
        assert_eq!(count_qk_complete(3, 4, 2), 18);
        assert_eq!(count_qk_complete(2, 5, 4), 0);
    }

    #[test]
    fn closed_form_matches_recursion() {
        for d in 2..=5 {
            for k in 3..=5 {
                for h in 1..=6 {
                    assert_eq!(
                        count_qk_complete(d, k, h),
                        count_qk_complete_recursive(d, k, h),
                        "d={d} k={k} h={h}"
                    );
                }
            }
        }
    }

    #[test]
    fn q4_ternary_limit() {
        assert_eq!(qk_complete_limit(3, 4), Rational::from((1, 13)));
    }
}
