//! Truncated expansions of the shifted Todd operator
//! `e^{-z} * prod_x x / (1 - e^{-x})`.

use num_bigint::BigInt;

use super::bernoulli::bernoulli_over_factorial;
use super::poly::{GradedSeries, Polynomial};
use super::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::matroid::VectorConfig;

/// `sum_{k <= cap} c_k * form^k` for a linear form.
fn series_in_form(form: &Polynomial, cap: u32, coeff: impl Fn(u32) -> Rational) -> GradedSeries {
    let n = form.nvars();
    let mut out = Polynomial::zero(n);
    let mut power = Polynomial::one(n);
    for k in 0..=cap {
        let c = coeff(k);
        out = &out + &power.scale(&c);
        if k < cap {
            power = &power * form;
        }
    }
    GradedSeries::new(&out, cap)
}

/// `e^{form}` truncated at degree `cap`.
pub fn exp_series(form: &Polynomial, cap: u32) -> GradedSeries {
    series_in_form(form, cap, |k| {
        Rational::new(BigInt::from(1), rational::factorial(k))
    })
}

/// `x / (1 - e^{-x}) = sum_k B_k/k! (-x)^k`; a zero column contributes `1`.
pub fn todd_factor(column: &[i64], cap: u32) -> GradedSeries {
    let neg: Vec<i64> = column.iter().map(|&c| -c).collect();
    let form = Polynomial::linear_form(&neg);
    if form.is_zero() {
        return GradedSeries::new(&Polynomial::one(column.len()), cap);
    }
    series_in_form(&form, cap, |k| bernoulli_over_factorial(k as usize))
}

/// The `z`-shifted Todd series of `config`, exact through degree `cap`.
pub fn todd_series(config: &VectorConfig, z: &[i64], cap: u32) -> Result<GradedSeries> {
    let d = config.dim();
    if z.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: z.len(),
        });
    }
    let neg_z: Vec<i64> = z.iter().map(|&c| -c).collect();
    let mut acc = exp_series(&Polynomial::linear_form(&neg_z), cap);
    for col in config.columns() {
        acc = acc.mul(&todd_factor(col, cap));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    fn univariate(entries: &[i64]) -> VectorConfig {
        VectorConfig::from_rows(&[entries.to_vec()]).unwrap()
    }

    fn coeffs(p: &Polynomial, upto: u32) -> Vec<Rational> {
        (0..=upto)
            .map(|k| {
                p.coeff(&crate::algebra::poly::Exponents::new(vec![k]))
            })
            .collect()
    }

    #[test]
    fn two_ones_shifted_by_one_has_no_linear_term() {
        let t = todd_series(&univariate(&[1, 1]), &[1], 1).unwrap();
        assert_eq!(coeffs(t.poly(), 1), vec![int(1), int(0)]);
    }

    #[test]
    fn three_ones_shifted_by_one() {
        let t = todd_series(&univariate(&[1, 1, 1]), &[1], 1).unwrap();
        assert_eq!(coeffs(t.poly(), 1), vec![int(1), ratio(1, 2)]);
    }

    /// The displayed non-unimodular product for X = (2, 1) is
    /// 2 (1 + 2 B_1 s)(1 - B_1 s); the Todd series itself at z = 2 is
    /// (2s/(e^{2s}-1)) (s/(1-e^{-s})) and carries constant term 1.
    #[test]
    fn non_unimodular_factor_expansion() {
        let t = todd_series(&univariate(&[2, 1]), &[2], 2).unwrap();
        // (1 - s + s^2/3)(1 + s/2 + s^2/12) = 1 - s/2 - 1/12 s^2 + ...
        assert_eq!(coeffs(t.poly(), 2), vec![int(1), ratio(-1, 2), ratio(-1, 12)]);
        let displayed = Polynomial::from_terms(1, [(vec![0], int(2)), (vec![1], int(-1)), (vec![2], int(-1))]).unwrap();
        assert_eq!(t.poly().truncate(1).scale(&int(2)), displayed.truncate(1));
    }

    #[test]
    fn loops_contribute_one() {
        let with_loop = VectorConfig::from_rows(&[vec![1, 0, 1]]).unwrap();
        let without = univariate(&[1, 1]);
        assert_eq!(
            todd_series(&with_loop, &[1], 4).unwrap(),
            todd_series(&without, &[1], 4).unwrap()
        );
    }

    #[test]
    fn shift_dimension_checked() {
        assert!(todd_series(&univariate(&[1]), &[1, 0], 2).is_err());
    }

    /// x * todd(X \ x, z) = todd(X, z) - todd(X, z + x), coefficientwise.
    #[test]
    fn deletion_identity_for_series() {
        let x = VectorConfig::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, -1]]).unwrap();
        let cap = 5;
        for i in 0..x.len() {
            let col = x.column(i).to_vec();
            let del = x.delete(i);
            for z in [[0i64, 0], [1, 1], [2, -1]] {
                let lhs = Polynomial::linear_form(&col)
                    .mul_truncated(todd_series(&del, &z, cap).unwrap().poly(), Some(cap));
                let zx = [z[0] + col[0], z[1] + col[1]];
                let rhs = todd_series(&x, &z, cap).unwrap().poly()
                    - todd_series(&x, &zx, cap).unwrap().poly();
                assert_eq!(lhs, rhs, "column {i}, z {z:?}");
            }
        }
    }
}
