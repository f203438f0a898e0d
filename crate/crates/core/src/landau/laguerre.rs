use num_traits::Zero;

use crate::calculus::field::{binomial, factorial};
use crate::calculus::Rational;

/// Coefficients `c_j` of `L^{(m)}_k(x) = Σ_j c_j x^j`, with `c_j = (-1)^j C(k+m, k-j) / j!`.
pub fn laguerre_coefficients(k: u32, m: u32) -> Vec<Rational> {
    (0..=k)
        .map(|j| {
            let c = Rational::new(binomial(k + m, k - j), factorial(j));
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Exact `L^{(m)}_k(x)`.
pub fn laguerre(k: u32, m: u32, x: &Rational) -> Rational {
    laguerre_coefficients(k, m)
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// `L^{(m)}_k(x)` in floating point via the three-term recurrence.
pub fn laguerre_f64(k: u32, m: u32, x: f64) -> f64 {
    let alpha = m as f64;
    let (mut prev, mut cur) = (0.0, 1.0);
    for j in 0..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - x) * cur - (jf + alpha) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
