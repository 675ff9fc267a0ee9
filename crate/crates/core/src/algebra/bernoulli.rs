//! Bernoulli numbers with the convention `B_1 = -1/2`, i.e. the Taylor
//! coefficients of `s / (e^s - 1) = sum_k B_k / k! * s^k`.

use std::sync::{Mutex, OnceLock};

use super::rational::{self, Rational};

fn cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![rational::one()]))
}

/// `B_k`, computed by inverting the series `(e^s - 1)/s = sum_j s^j/(j+1)!`
/// and memoized process-wide.
pub fn bernoulli(k: usize) -> Rational {
    let mut table = cache().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= k {
        let n = table.len();
        // Coefficient a_n = B_n / n! of the inverse series satisfies
        // sum_{j=0}^{n} a_{n-j} / (j+1)! = 0 for n >= 1.
        let mut acc = rational::zero();
        for j in 1..=n {
            let a = &table[n - j] / Rational::from_integer(rational::factorial((n - j) as u32));
            acc += a / Rational::from_integer(rational::factorial(j as u32 + 1));
        }
        let b = -acc * Rational::from_integer(rational::factorial(n as u32));
        table.push(b);
    }
    table[k].clone()
}

/// `B_k / k!`.
pub fn bernoulli_over_factorial(k: usize) -> Rational {
    bernoulli(k) / Rational::from_integer(rational::factorial(k as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};
    use num_traits::Zero;

    #[test]
    fn leading_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
    }

    #[test]
    fn odd_values_vanish() {
        for k in (3..30).step_by(2) {
            assert!(bernoulli(k).is_zero(), "B_{k}");
        }
    }

    /// sum_{k<=K} B_k/k! s^k * (e^s - 1)/s = 1 + O(s^(K+1)).
    #[test]
    fn defining_identity_up_to_twelve() {
        for big_k in 0..=12usize {
            for n in 0..=big_k {
                let mut c = rational::zero();
                for k in 0..=n {
                    let tail = rational::one()
                        / Rational::from_integer(rational::factorial((n - k) as u32 + 1));
                    c += bernoulli_over_factorial(k) * tail;
                }
                let expected = if n == 0 { int(1) } else { int(0) };
                assert_eq!(c, expected, "coefficient {n} for K = {big_k}");
            }
        }
    }
}
